from itertools import permutations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from models.arith import Valuation
from models.instance import Basis, Exactness
from models.trinomial import TrinomialInstance, TrinomialKind
from services import trinomial_service as ts
from services.errors import DomainError
from services.exact_arith import gcd, valuation


@pytest.mark.parametrize('a,b,c,n,U', [(1, 2, 3, 3, 180), (1, 1, 1, 3, 24), (1, 1, 2, 2, 10), (1, 3, 4, 4, 3758)])
def test_compute_U3_examples(a, b, c, n, U):
    assert ts.compute_U3(TrinomialInstance(a, b, c, n)) == U


@given(
    st.integers(min_value=1, max_value=500),
    st.integers(min_value=1, max_value=500),
    st.integers(min_value=1, max_value=500),
    st.integers(min_value=2, max_value=15),
)
def test_U3_and_its_valuation_are_permutation_invariant(a, b, c, n):
    values = {ts.compute_U3(TrinomialInstance(*perm, n)) for perm in permutations((a, b, c))}
    assert len(values) == 1
    measured = {str(ts.verify3(*perm, n, with_series=False).actual_valuation) for perm in permutations((a, b, c))}
    assert len(measured) == 1


def test_normalize3_divides_common_factor():
    inst = ts.normalize3(2, 4, 6, 3)
    assert (inst.a, inst.b, inst.c, inst.extracted_gcd) == (1, 2, 3, 2)


@pytest.mark.parametrize('args', [(0, 1, 1, 3), (1, 1, 1, 1), (1, -2, 1, 3)])
def test_normalize3_rejects_degenerate_input(args):
    with pytest.raises(DomainError):
        ts.normalize3(*args)


def test_classify3_rejects_all_residues_zero():
    with pytest.raises(DomainError):
        ts.classify3(TrinomialInstance(3, 6, 9, 3))


@pytest.mark.parametrize('a,b,c,n,kind', [
    (1, 1, 3, 3, TrinomialKind.T_CASE1),
    (1, 2, 3, 3, TrinomialKind.T_CASE2),
    (1, 1, 1, 3, TrinomialKind.UNCOVERED),
    (3, 1, 1, 3, TrinomialKind.UNCOVERED),
])
def test_classify3_examples(a, b, c, n, kind):
    assert ts.classify3(TrinomialInstance(a, b, c, n)).kind is kind


def test_classify3_records_component_cases():
    case = ts.classify3(TrinomialInstance(1, 2, 3, 3))
    assert case.pair_case.tag == 'case2-odd'
    assert case.carry_case is None
    assert case.to_dict()['carry_case'] is None


@pytest.mark.parametrize('a,b,c,n,bound,exactness,basis,measured', [
    (1, 1, 3, 3, 1, Exactness.LOWER_BOUND, Basis.TRINOMIAL_PRIME, 1),
    (1, 1, 4, 4, 0, Exactness.NO_GUARANTEE, Basis.TRINOMIAL_COMPOSITE, 0),
    (1, 2, 3, 3, 2, Exactness.LOWER_BOUND, Basis.TRINOMIAL_COMPLEMENTARY_ODD, 2),
    (1, 1, 2, 2, 1, Exactness.EXACT, Basis.COMPLEMENTARY_N2, 1),
    (1, 3, 4, 4, 0, Exactness.EXACT, Basis.TRINOMIAL_COMPLEMENTARY_EVEN, 0),
    (1, 1, 1, 3, 0, Exactness.NO_GUARANTEE, Basis.TRINOMIAL_UNCOVERED, 1),
])
def test_verify3_examples(a, b, c, n, bound, exactness, basis, measured):
    report = ts.verify3(a, b, c, n)
    assert report.prediction.guaranteed_lower_bound == bound
    assert report.prediction.exactness is exactness
    assert report.prediction.basis is basis
    assert report.actual_valuation == Valuation(measured)
    assert report.ok
    assert not report.exceptional


def test_verify3_report_dict():
    data = ts.verify3(2, 4, 6, 3).to_dict()
    assert (data['a'], data['b'], data['c'], data['extracted_gcd']) == ('1', '2', '3', '2')
    assert data['case'] == 't-case2'
    assert data['U'] == '180'
    assert data['valuation'] == '2'


def test_verify3_capped_without_fallback():
    report = ts.verify3(1, 2, 3, 3, cap=1, exact_fallback=False, with_series=False)
    assert report.actual_valuation == Valuation.at_least(2)
    assert report.U is None
    assert report.ok
    assert ts.verify3(1, 2, 3, 3, cap=1).actual_valuation == Valuation(2)


def test_capped_trinomial_valuation_agrees_with_exact():
    for n in range(2, 8):
        for a in range(1, 9):
            for b in range(1, 9):
                for c in range(1, 9):
                    inst = TrinomialInstance(a, b, c, n)
                    exact = valuation(ts.compute_U3(inst), n)
                    capped = ts.valuation_capped3(inst, 3)
                    assert capped == (Valuation(exact) if exact <= 3 else Valuation.at_least(4))


def test_every_prediction_holds_on_small_grid():
    for n in range(2, 10):
        for a in range(1, 13):
            for b in range(1, 13):
                for c in range(1, 13):
                    if gcd(gcd(a, b), c) != 1:
                        continue
                    report = ts.verify3(a, b, c, n, exact_fallback=False, with_series=False)
                    assert report.ok, report.to_dict()
