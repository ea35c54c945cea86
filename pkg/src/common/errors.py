"""
Exception hierarchy for the radial-angular lab.

Follows SRP: Error types only.
"""

from typing import Any, Optional


class LabError(Exception):
    """Base error; carries the offending field when known"""

    def __init__(self, message: str, field_name: Optional[str] = None):
        self.message = message
        self.field_name = field_name
        super().__init__(message)


class DomainError(LabError):
    """Index or parameter outside the domain of a formula"""


class NonIntegrableWeightError(LabError):
    """Radial weight |x|^(alpha p) not integrable at the origin"""

    def __init__(self, alpha: Any, p: Any, n: int):
        self.alpha = alpha
        self.p = p
        self.n = n
        super().__init__(
            f"non-integrable weight: alpha*p + n <= 0 for alpha={alpha}, p={p}, n={n}",
            field_name="alpha",
        )


class GridError(LabError):
    """Invalid grid geometry, component layout or dilation"""


class InadmissibleIndicesError(LabError):
    """Estimate or criterion hypotheses not satisfied"""

    def __init__(self, admissibility: Any):
        self.admissibility = admissibility
        names = ", ".join(admissibility.violations)
        super().__init__(f"inadmissible indices: {names}")


class SnapshotFormatError(LabError):
    """Malformed NSRA1 snapshot file"""


class InsufficientDataError(LabError):
    """Not enough snapshots, or a window outside the trajectory"""


class ConfigError(LabError):
    """Malformed, missing or unknown configuration key"""
