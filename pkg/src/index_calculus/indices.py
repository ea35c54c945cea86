"""
Index value types and the exact index calculus.

Lambda (translation-compatibility) and Omega (parabolic scaling) exponents,
the minimal angular exponents for global and local regularity, and the
scaling relation 2/s + n/p = 1 - alpha.
Follows SRP: Index arithmetic only, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from src.common.errors import DomainError
from src.common.types import CaseLabel
from src.index_calculus.exponent import INF, Exponent, RationalLike, inv, parse_rational


def _dimension(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}", field_name="n")
    return n


@dataclass(frozen=True)
class IndexTuple:
    """
    Criterion index set (n, alpha, s, p, ptilde).

    Passing criteria:
    - n >= 2
    - s, p, ptilde >= 1 (INF allowed)
    - alpha is an exact rational
    """

    n: int
    alpha: Fraction
    s: Exponent
    p: Exponent
    ptilde: Exponent

    def __post_init__(self):
        _dimension(self.n)
        for name in ("s", "p", "ptilde"):
            getattr(self, name).require_at_least_one(name)

    @classmethod
    def create(
        cls,
        n: int,
        alpha: RationalLike,
        s: Exponent | RationalLike,
        p: Exponent | RationalLike,
        ptilde: Exponent | RationalLike,
    ) -> "IndexTuple":
        """Create from loose inputs ('a/b', 'inf', ints)"""
        return cls(
            n=n,
            alpha=parse_rational(alpha, "alpha"),
            s=Exponent.of(s),
            p=Exponent.of(p),
            ptilde=Exponent.of(ptilde),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "alpha": str(self.alpha),
            "s": str(self.s),
            "p": str(self.p),
            "ptilde": str(self.ptilde),
        }


@dataclass(frozen=True)
class EstimateIndices:
    """
    Source/target indices (alpha, p, ptilde | beta, q, qtilde) of a kernel estimate.

    r is the target time exponent, s the source time exponent (Duhamel
    estimates only), eta the derivative order.
    """

    n: int
    alpha: Fraction
    p: Exponent
    ptilde: Exponent
    beta: Fraction
    q: Exponent
    qtilde: Exponent
    r: Exponent = INF
    eta: int = 0
    s: Exponent = INF

    def __post_init__(self):
        _dimension(self.n)
        if isinstance(self.eta, bool) or not isinstance(self.eta, int) or self.eta < 0:
            raise DomainError(f"eta must be an integer >= 0, got {self.eta!r}", field_name="eta")
        for name in ("p", "ptilde", "q", "qtilde", "r", "s"):
            getattr(self, name).require_at_least_one(name)

    @classmethod
    def create(
        cls,
        n: int,
        alpha: RationalLike,
        p: Exponent | RationalLike,
        ptilde: Exponent | RationalLike,
        beta: RationalLike,
        q: Exponent | RationalLike,
        qtilde: Exponent | RationalLike,
        r: Exponent | RationalLike = INF,
        eta: int = 0,
        s: Exponent | RationalLike = INF,
    ) -> "EstimateIndices":
        return cls(
            n=n,
            alpha=parse_rational(alpha, "alpha"),
            p=Exponent.of(p),
            ptilde=Exponent.of(ptilde),
            beta=parse_rational(beta, "beta"),
            q=Exponent.of(q),
            qtilde=Exponent.of(qtilde),
            r=Exponent.of(r),
            eta=eta,
            s=Exponent.of(s),
        )

    @classmethod
    def diagonal(
        cls,
        n: int,
        beta: RationalLike,
        q: Exponent | RationalLike,
        qtilde: Exponent | RationalLike,
        r: Exponent | RationalLike,
    ) -> "EstimateIndices":
        """Source equal to target: (beta, q, qtilde, r) on both sides"""
        return cls.create(n, beta, q, qtilde, beta, q, qtilde, r=r, eta=0, s=r)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "alpha": str(self.alpha),
            "p": str(self.p),
            "ptilde": str(self.ptilde),
            "beta": str(self.beta),
            "q": str(self.q),
            "qtilde": str(self.qtilde),
            "r": str(self.r),
            "eta": self.eta,
            "s": str(self.s),
        }


@dataclass
class Admissibility:
    """
    Verdict of a hypothesis check.

    Passing criteria:
    - admissible <=> violations is empty
    - violations are stable condition identifiers
    """

    case_label: CaseLabel
    violations: List[str] = field(default_factory=list)
    derived: Dict[str, Any] = field(default_factory=dict)

    @property
    def admissible(self) -> bool:
        return not self.violations

    def require(self, condition: bool, name: str) -> None:
        """Record a named violation when condition is false"""
        if not condition:
            self.violations.append(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "admissible": self.admissible,
            "case_label": self.case_label.value,
            "violations": list(self.violations),
            "derived": {k: _jsonable(v) for k, v in self.derived.items()},
        }


def _jsonable(v: Any) -> Any:
    if isinstance(v, (Fraction, Exponent)):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def lambda_index(alpha: RationalLike, p: Exponent, ptilde: Exponent, n: int) -> Fraction:
    """alpha + (n-1)/p - (n-1)/ptilde"""
    _dimension(n)
    a = parse_rational(alpha, "alpha")
    return a + (n - 1) * inv(p) - (n - 1) * inv(ptilde)


def omega_index(alpha: RationalLike, p: Exponent, s: Exponent, n: int) -> Fraction:
    """alpha + n/p + 2/s"""
    _dimension(n)
    a = parse_rational(alpha, "alpha")
    return a + n * inv(p) + 2 * inv(s)


def lambda_gap(e: EstimateIndices) -> Fraction:
    """Lambda(alpha,p,ptilde) - Lambda(beta,q,qtilde)"""
    return lambda_index(e.alpha, e.p, e.ptilde, e.n) - lambda_index(e.beta, e.q, e.qtilde, e.n)


def ptilde_global_formula(alpha: RationalLike, p: Exponent, n: int) -> Exponent:
    """(n-1)p / (alpha p + n - 1), INF when the denominator is not positive"""
    _dimension(n)
    denominator = parse_rational(alpha, "alpha") + (n - 1) * inv(p)
    if denominator <= 0:
        return INF
    return Exponent(denominator / (n - 1))


def ptilde_global(alpha: RationalLike, p: Exponent, n: int) -> Exponent:
    """Minimal angular exponent for global regularity"""
    a = parse_rational(alpha, "alpha")
    _dimension(n)
    if not (Fraction(1 - n, 2) < a < Fraction(1, 2)):
        raise DomainError(
            f"ptilde_G defined for alpha in ((1-n)/2, 1/2), got {a}", field_name="alpha"
        )
    ratio = ptilde_global_formula(a, p, n)
    if a < 0:
        # endpoint alpha p + n - 1 <= 0: angular L-infinity required
        return max(Exponent.of(2 * n), ratio)
    return ratio


def ptilde_local(alpha: RationalLike, p: Exponent, n: int) -> Exponent:
    """Minimal angular exponent for regularity at the weight center"""
    a = parse_rational(alpha, "alpha")
    _dimension(n)
    if not (Fraction(-1, 2) <= a < 1):
        raise DomainError(f"ptilde_L defined for alpha in [-1/2, 1), got {a}", field_name="alpha")
    leading = 2 * a + 1 if a < 0 else Fraction(1)
    return Exponent((leading + 2 * (n - 1) * inv(p)) / (2 * (n - 1)))


def check_scaling(t: IndexTuple) -> bool:
    """2/s + n/p = 1 - alpha"""
    return 2 * inv(t.s) + t.n * inv(t.p) == 1 - t.alpha
