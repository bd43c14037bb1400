import os

import hypothesis
import pytest

from models.scan import IntRange, ScanConfig

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def pair_config():
    """ScanConfig factory for square pair sweeps."""

    def build(bound, exponents, **overrides):
        return ScanConfig(
            a_range=IntRange(1, bound),
            b_range=IntRange(1, bound),
            exponents=tuple(exponents),
            **overrides,
        )

    return build


@pytest.fixture
def triple_config():
    def build(bound, exponents, **overrides):
        rng = IntRange(1, bound)
        return ScanConfig(a_range=rng, b_range=rng, c_range=rng, exponents=tuple(exponents), **overrides)

    return build
