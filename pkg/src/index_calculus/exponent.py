"""
Exact extended-real exponents.

Lebesgue exponents are positive rationals or the symbol INF, handled through their
reciprocals so that 1/INF = 0 holds exactly.
Follows SRP: Exponent arithmetic and parsing only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from src.common.errors import DomainError

RationalLike = Union[int, str, Fraction, float]


def parse_rational(value: RationalLike, field_name: str = "value") -> Fraction:
    """Parse ints, Fractions and 'a/b' strings exactly; floats through their decimal repr"""
    if isinstance(value, bool):
        raise DomainError(f"{field_name}: booleans are not rationals", field_name=field_name)
    try:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(repr(value))
        return Fraction(str(value).strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"{field_name}: cannot parse {value!r} as a rational ({e})", field_name=field_name)


@total_ordering
@dataclass(frozen=True)
class Exponent:
    """
    Positive exponent, exact.

    Passing criteria:
    - INF is represented by reciprocal 0
    - finite values are positive rationals
    - ordering is total with INF the largest element
    """

    reciprocal: Fraction

    def __post_init__(self):
        if self.reciprocal < 0:
            raise DomainError(f"exponent must be positive, got reciprocal {self.reciprocal}")

    @classmethod
    def of(cls, value: Union["Exponent", RationalLike]) -> "Exponent":
        """Build from a number, an 'a/b' string or 'inf'"""
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "+inf", "∞"):
            return INF
        if isinstance(value, float) and value == float("inf"):
            return INF
        v = parse_rational(value, "exponent")
        if v <= 0:
            raise DomainError(f"exponent must be positive, got {v}", field_name="exponent")
        return cls(1 / v)

    @classmethod
    def from_reciprocal(cls, reciprocal: RationalLike) -> "Exponent":
        return cls(parse_rational(reciprocal, "reciprocal"))

    @property
    def is_inf(self) -> bool:
        return self.reciprocal == 0

    @property
    def value(self) -> Fraction:
        if self.is_inf:
            raise DomainError("INF has no finite value")
        return 1 / self.reciprocal

    def scaled(self, factor: RationalLike) -> "Exponent":
        """factor · self (INF stays INF)"""
        f = parse_rational(factor, "factor")
        if f <= 0:
            raise DomainError(f"scale factor must be positive, got {f}")
        return Exponent(self.reciprocal / f)

    def conjugate(self) -> "Exponent":
        """Hoelder conjugate p' (1' = INF)"""
        if self.reciprocal > 1:
            raise DomainError(f"conjugate requires exponent >= 1, got {self}")
        return Exponent(1 - self.reciprocal)

    def require_at_least_one(self, field_name: str) -> None:
        if self.reciprocal > 1:
            raise DomainError(f"{field_name} must be >= 1, got {self}", field_name=field_name)

    def as_float(self) -> float:
        return float("inf") if self.is_inf else float(1 / self.reciprocal)

    def _key(self, other: object) -> Fraction:
        if isinstance(other, Exponent):
            return other.reciprocal
        return Exponent.of(other).reciprocal  # type: ignore[arg-type]

    def __lt__(self, other: object) -> bool:
        return self.reciprocal > self._key(other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Exponent):
            return self.reciprocal == other.reciprocal
        if isinstance(other, (int, Fraction, str)):
            try:
                return self.reciprocal == Exponent.of(other).reciprocal
            except DomainError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.reciprocal)

    def __str__(self) -> str:
        return "inf" if self.is_inf else str(1 / self.reciprocal)

    def __repr__(self) -> str:
        return f"Exponent({self})"

    def to_dict(self) -> str:
        return str(self)


INF = Exponent(Fraction(0))


def inv(e: Exponent) -> Fraction:
    """1/e with 1/INF = 0"""
    return e.reciprocal
