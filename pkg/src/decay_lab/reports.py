"""
Decay report types and their CSV/JSON artifacts.

Follows SRP: Report data and serialization only.
"""

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from src.common.errors import DomainError
from src.common.types import EstimateKind, Verdict
from src.common.utils import safe_json_dumps
from src.index_calculus.indices import Admissibility, EstimateIndices

REPORT_CSV_HEADER = ["t", "lhs", "bound", "ratio"]


@dataclass(frozen=True)
class ParabolaMask:
    """Space-time region |x| / sqrt(t) <= R"""

    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise DomainError(f"parabola radius must be > 0, got {self.R}", field_name="R")

    def r_cut(self, t: float) -> float:
        return self.R * math.sqrt(t)

    def contains(self, radius: float, t: float) -> bool:
        return radius <= self.r_cut(t)


@dataclass
class DecayReport:
    """
    Measured weighted norms against the predicted bound.

    ratio(t) = lhs(t) t^rate / (rhs_scale * localized_factor); for integral and
    Duhamel reports t_samples holds the dilation factors and ratio the measured
    constant per dilation.
    """

    indices: EstimateIndices
    kind: EstimateKind
    admissibility: Admissibility
    t_samples: np.ndarray
    lhs: np.ndarray
    rhs_scale: float
    predicted_rate: Fraction
    fitted_slope: float = float("nan")
    slope_stderr: float = float("nan")
    ratio_sup: float = 0.0
    ratio_first: float = 0.0
    R: Optional[float] = None
    localized_factor: Optional[float] = None
    verdict: Verdict = Verdict.FAIL
    criteria: Dict[str, bool] = field(default_factory=dict)
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.t_samples = np.asarray(self.t_samples, dtype=float)
        self.lhs = np.asarray(self.lhs, dtype=float)
        if self.t_samples.shape != self.lhs.shape:
            raise DomainError("t_samples and lhs must have equal length")
        if np.any(np.diff(self.t_samples) <= 0):
            raise DomainError("t_samples must be strictly increasing", field_name="t_samples")
        if not np.all(np.isfinite(self.lhs)) or np.any(self.lhs < 0):
            raise DomainError("lhs values must be finite and >= 0", field_name="lhs")

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def scale(self) -> float:
        return self.rhs_scale * (self.localized_factor or 1.0)

    def bound_shape(self) -> np.ndarray:
        """rhs_scale * localized_factor * t^{-rate}"""
        return self.scale * self.t_samples ** (-float(self.predicted_rate))

    def ratios(self) -> np.ndarray:
        if self.scale == 0:
            return np.zeros_like(self.lhs)
        return self.lhs / self.bound_shape()

    def rows(self) -> List[List[float]]:
        return [[t, v, b, r] for t, v, b, r in zip(self.t_samples, self.lhs, self.bound_shape(), self.ratios())]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "indices": self.indices.to_dict(),
            "admissibility": self.admissibility.to_dict(),
            "predicted_rate": str(self.predicted_rate),
            "fitted_slope": _finite_or_str(self.fitted_slope),
            "slope_stderr": _finite_or_str(self.slope_stderr),
            "rhs_scale": self.rhs_scale,
            "ratio_sup": self.ratio_sup,
            "ratio_first": self.ratio_first,
            "R": self.R,
            "localized_factor": self.localized_factor,
            "verdict": self.verdict.value,
            "criteria": dict(sorted(self.criteria.items())),
            "extra": self.extra,
        }


def _finite_or_str(x: float) -> Any:
    return x if math.isfinite(x) else str(x)


def judge(report: DecayReport) -> DecayReport:
    """Set the verdict from the recorded criteria; every criterion must hold"""
    report.verdict = Verdict.PASS if report.criteria and all(report.criteria.values()) else Verdict.FAIL
    return report


def write_report_csv(path: Path, report: DecayReport) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_CSV_HEADER)
        for row in report.rows():
            writer.writerow([repr(float(x)) for x in row])
    return path


def write_report_json(path: Path, report: DecayReport) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(safe_json_dumps(report.to_dict()) + "\n")
    return path
