from dataclasses import dataclass

from services.errors import DomainError

# Arbitrary-precision nonnegative integer. Python ints already are.
Natural = int

_AT_LEAST_PREFIX = "ge:"


@dataclass(frozen=True)
class Valuation:
    """A measured valuation: exactly `value`, or at least `value` when the
    capped computation ran out of precision."""

    value: int
    exact: bool = True

    @classmethod
    def at_least(cls, value):
        return cls(value=value, exact=False)

    def meets(self, bound):
        return self.value >= bound

    def __str__(self):
        return str(self.value) if self.exact else f"{_AT_LEAST_PREFIX}{self.value}"

    @classmethod
    def parse(cls, text):
        text = str(text).strip()
        try:
            if text.startswith(_AT_LEAST_PREFIX):
                return cls.at_least(int(text[len(_AT_LEAST_PREFIX):]))
            return cls(int(text))
        except ValueError:
            raise DomainError(f"Invalid valuation text: {text!r}")
