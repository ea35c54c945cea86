"""
Shared type definitions for the radial-angular lab.

Enums and small dataclasses used across modules.
Follows SRP: Single source of truth for shared vocabularies.
"""

from dataclasses import dataclass
from enum import Enum


class CaseLabel(Enum):
    """Which branch of a criterion licensed (or failed) a tuple"""
    NEG_ALPHA = "NEG_ALPHA"
    NONNEG_ALPHA = "NONNEG_ALPHA"
    YZ_MAIN = "YZ_MAIN"
    YZ_LINF = "YZ_LINF"
    YZ_SMALL = "YZ_SMALL"
    NONE = "NONE"


class EstimateKind(Enum):
    """Families of weighted kernel estimates"""
    HEAT_DECAY = "HEAT_DECAY"
    OSEEN_DECAY = "OSEEN_DECAY"
    LOCALIZED = "LOCALIZED"
    LOCALIZED_OSEEN = "LOCALIZED_OSEEN"
    INTEGRAL = "INTEGRAL"
    INTEGRAL_LOCALIZED = "INTEGRAL_LOCALIZED"
    DUHAMEL = "DUHAMEL"
    DUHAMEL_DIAGONAL = "DUHAMEL_DIAGONAL"


class CriterionKind(Enum):
    """Regularity criteria available to the index checkers"""
    GLOBAL = "global"
    LOCAL = "local"
    YZ = "yz"


class InitialDataVariant(Enum):
    """Refined initial-data conditions"""
    GLOBAL = "GLOBAL"
    LOCAL = "LOCAL"


class Normalization(Enum):
    """Angular measure normalization"""
    SURFACE_MEASURE = "SURFACE_MEASURE"
    PROBABILITY = "PROBABILITY"


class AngularMagnitude(Enum):
    """How vector values are reduced before the angular norm"""
    EUCLIDEAN = "EUCLIDEAN"
    COMPONENTWISE = "COMPONENTWISE"


class Verdict(Enum):
    """Outcome of a numerical experiment"""
    PASS = "PASS"
    FAIL = "FAIL"


class DatumKind(Enum):
    """Initial data families for the Picard solver"""
    GAUSSIAN_SOLENOIDAL = "GAUSSIAN_SOLENOIDAL"
    TAYLOR_GREEN_LOCALIZED = "TAYLOR_GREEN_LOCALIZED"
    FILE = "FILE"


class TimeGridKind(Enum):
    """Snapshot placement on [0, T]"""
    UNIFORM = "UNIFORM"
    CLUSTERED = "CLUSTERED"  # t_k = T (k/K)^2


class SolveStatus(Enum):
    """How a Picard run ended"""
    CONVERGED = "CONVERGED"
    MAX_ITERATIONS = "MAX_ITERATIONS"
    NON_CONTRACTIVE = "NON_CONTRACTIVE"


class Command(Enum):
    """CLI commands"""
    INDICES = "indices"
    NORMS = "norms"
    HEAT_DECAY = "heat-decay"
    OSEEN_DECAY = "oseen-decay"
    LOCALIZED_DECAY = "localized-decay"
    INTEGRAL = "integral"
    DUHAMEL = "duhamel"
    SIMULATE = "simulate"
    CKN = "ckn"


@dataclass
class RunMetrics:
    """Wall time and memory of one command"""
    execution_time: float
    memory_peak: float  # MB
