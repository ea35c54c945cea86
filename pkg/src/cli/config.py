"""
Run configuration for the command-line entry point.

A RunConfig names one command, the grid, run options and a params map that
is validated by the command's own parameter model. Unknown keys are errors at
every level.
Follows SRP: Config parsing and validation only.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.common.config import settings
from src.common.errors import ConfigError, LabError
from src.common.types import (
    AngularMagnitude,
    Command,
    CriterionKind,
    DatumKind,
    InitialDataVariant,
    Normalization,
    TimeGridKind,
)
from src.index_calculus.exponent import Exponent, parse_rational
from src.index_calculus.indices import EstimateIndices, IndexTuple

TOLERANCE_KEYS = frozenset(
    {
        "slope_tolerance",
        "ratio_growth_limit",
        "dilation_stability_factor",
        "localized_growth_slack",
        "box_time_divisor",
        "asymptotic_decades",
        "min_duhamel_snapshots",
        "contraction_tol",
    }
)
FIELD_KINDS = ("gaussian", "swirl", "swirl-tensor", "zero")

Loose = Union[int, float, str]


def _as_rational(value: Loose) -> str:
    text = str(value).strip()
    try:
        parse_rational(text)
    except LabError as e:
        raise ValueError(e.message)
    return text


def _as_exponent(value: Loose) -> str:
    text = str(value).strip()
    try:
        Exponent.of(text)
    except LabError as e:
        raise ValueError(e.message)
    return text


def _as_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridParams(StrictModel):
    """Cartesian box shared by every numerical command"""

    n: int = Field(default_factory=lambda: settings.dimension, ge=2, le=3)
    points: int = Field(default_factory=lambda: settings.grid_points, ge=4)
    half_width: float = Field(default_factory=lambda: settings.box_half_width, gt=0)

    @field_validator("points")
    @classmethod
    def _power_of_two(cls, v: int) -> int:
        if v & (v - 1):
            raise ValueError(f"grid points must be a power of two, got {v}")
        return v


class IndicesParams(StrictModel):
    """Criterion tuple (n, alpha, s, p, ptilde), optionally with initial-data exponents"""

    n: int = Field(default=3, ge=2)
    alpha: str
    s: str = "inf"
    p: str
    ptilde: str
    criterion: CriterionKind = CriterionKind.GLOBAL
    initial_data: Optional[InitialDataVariant] = None
    alpha0: Optional[str] = None
    p0: Optional[str] = None
    ptilde0: Optional[str] = None

    @field_validator("alpha", "alpha0", mode="before")
    @classmethod
    def _rationals(cls, v: Optional[Loose]) -> Optional[str]:
        return None if v is None else _as_rational(v)

    @field_validator("s", "p", "ptilde", "p0", "ptilde0", mode="before")
    @classmethod
    def _exponents(cls, v: Optional[Loose]) -> Optional[str]:
        return None if v is None else _as_exponent(v)

    def index_tuple(self) -> IndexTuple:
        return IndexTuple.create(self.n, self.alpha, self.s, self.p, self.ptilde)


class EstimateParams(StrictModel):
    """Source and target indices of a kernel estimate"""

    alpha: str = "0"
    p: str = "2"
    ptilde: str = "2"
    beta: str = "0"
    q: str = "6"
    qtilde: str = "6"
    r: str = "inf"
    s: str = "inf"
    eta: int = Field(default=0, ge=0)
    field: str = "gaussian"

    @field_validator("alpha", "beta", mode="before")
    @classmethod
    def _rationals(cls, v: Loose) -> str:
        return _as_rational(v)

    @field_validator("p", "ptilde", "q", "qtilde", "r", "s", mode="before")
    @classmethod
    def _exponents(cls, v: Loose) -> str:
        return _as_exponent(v)

    @field_validator("field")
    @classmethod
    def _known_field(cls, v: str) -> str:
        if v not in FIELD_KINDS:
            raise ValueError(f"field must be one of {FIELD_KINDS}, got {v!r}")
        return v

    def indices(self, n: int) -> EstimateIndices:
        return EstimateIndices.create(
            n, self.alpha, self.p, self.ptilde, self.beta, self.q, self.qtilde, r=self.r, eta=self.eta, s=self.s
        )


class NormsParams(StrictModel):
    """Angular exponent sweep of one weighted norm"""

    field: str = "gaussian"
    alpha: str = "0"
    p: str = "2"
    ptilde: List[str] = Field(default_factory=lambda: ["1", "2", "4", "inf"])
    magnitude: AngularMagnitude = AngularMagnitude.EUCLIDEAN
    normalization: Normalization = Normalization.SURFACE_MEASURE

    @field_validator("alpha", mode="before")
    @classmethod
    def _rational(cls, v: Loose) -> str:
        return _as_rational(v)

    @field_validator("p", mode="before")
    @classmethod
    def _exponent(cls, v: Loose) -> str:
        return _as_exponent(v)

    @field_validator("ptilde", mode="before")
    @classmethod
    def _exponents(cls, v: Any) -> List[str]:
        return [_as_exponent(item) for item in _as_list(v)]


class DecayParams(EstimateParams):
    """heat-decay, oseen-decay and localized-decay"""

    t_min: Optional[float] = Field(default=None, gt=0)
    t_max: Optional[float] = Field(default=None, gt=0)
    samples: int = Field(default=17, ge=3)
    R: Optional[float] = Field(default=None, gt=0)
    oseen: bool = False

    def t_grid(self) -> Optional[Tuple[float, float, int]]:
        if self.t_min is None or self.t_max is None:
            return None
        return self.t_min, self.t_max, self.samples


class IntegralParams(EstimateParams):
    r: str = "8/3"
    q: str = "4"
    qtilde: str = "4"
    t_start: float = Field(default=0.0, ge=0)
    t_stop: Optional[float] = Field(default=None, gt=0)
    R: Optional[float] = Field(default=None, gt=0)
    dilations: List[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0])
    samples: int = Field(default=33, ge=3)

    @field_validator("dilations", mode="before")
    @classmethod
    def _dilations(cls, v: Any) -> Any:
        return _as_list(v)


class TrajectoryParams(StrictModel):
    """Where a trajectory comes from: the heat flow of a field, a Picard run or a directory"""

    source: str = "heat"
    trajectory_dir: Optional[str] = None
    horizon: float = Field(default_factory=lambda: settings.horizon, gt=0)
    steps: int = Field(default_factory=lambda: settings.steps, ge=1)
    amplitude: float = Field(default=0.05, ge=0)
    datum: DatumKind = DatumKind.GAUSSIAN_SOLENOIDAL
    datum_path: Optional[str] = None
    picard_iters: int = Field(default_factory=lambda: settings.picard_iters, ge=1)
    time_grid: TimeGridKind = TimeGridKind.UNIFORM

    @field_validator("source")
    @classmethod
    def _known_source(cls, v: str) -> str:
        if v not in ("heat", "picard", "dir"):
            raise ValueError(f"source must be heat, picard or dir, got {v!r}")
        return v


class DuhamelParams(TrajectoryParams):
    alpha: str = "0"
    p: str = "5"
    ptilde: str = "5"
    beta: str = "0"
    q: str = "5"
    qtilde: str = "5"
    r: str = "5"
    s: str = "5"
    eta: int = Field(default=0, ge=0)
    diagonal: bool = False
    dilations: List[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0])

    @field_validator("alpha", "beta", mode="before")
    @classmethod
    def _rationals(cls, v: Loose) -> str:
        return _as_rational(v)

    @field_validator("p", "ptilde", "q", "qtilde", "r", "s", mode="before")
    @classmethod
    def _exponents(cls, v: Loose) -> str:
        return _as_exponent(v)
    @field_validator("dilations", mode="before")
    @classmethod
    def _dilations(cls, v: Any) -> Any:
        return _as_list(v)

    def indices(self, n: int) -> EstimateIndices:
        return EstimateIndices.create(
            n, self.alpha, self.p, self.ptilde, self.beta, self.q, self.qtilde, r=self.r, eta=self.eta, s=self.s
        )


class SimulateParams(TrajectoryParams):
    source: str = "picard"
    monitor: Optional[List[str]] = None  # alpha, s, p, ptilde

    @field_validator("monitor", mode="before")
    @classmethod
    def _four_entries(cls, v: Any) -> Any:
        v = _as_list(v)
        if v is not None and len(v) != 4:
            raise ValueError("monitor takes alpha, s, p, ptilde")
        return v


class CknParams(TrajectoryParams):
    t_bar: float = Field(default=1.0, gt=0)
    r_list: List[float] = Field(default_factory=lambda: [1.0, 0.5, 0.25, 0.125])
    horizon: float = Field(default=1.25, gt=0)
    steps: int = Field(default=40, ge=1)

    @field_validator("r_list", mode="before")
    @classmethod
    def _r_list(cls, v: Any) -> Any:
        return _as_list(v)


PARAMS: Dict[Command, Type[StrictModel]] = {
    Command.INDICES: IndicesParams,
    Command.NORMS: NormsParams,
    Command.HEAT_DECAY: DecayParams,
    Command.OSEEN_DECAY: DecayParams,
    Command.LOCALIZED_DECAY: DecayParams,
    Command.INTEGRAL: IntegralParams,
    Command.DUHAMEL: DuhamelParams,
    Command.SIMULATE: SimulateParams,
    Command.CKN: CknParams,
}


class RunConfig(StrictModel):
    """
    One CLI invocation.

    Passing criteria:
    - command is known and its params validate against the command's model
    - tolerance overrides name existing settings
    - seed defaults to 0
    """

    command: Command
    grid: GridParams = Field(default_factory=GridParams)
    params: Dict[str, Any] = Field(default_factory=dict)
    output_dir: str = Field(default_factory=lambda: settings.output_dir)
    seed: int = 0
    jobs: int = Field(default=1, ge=1)
    tolerances: Dict[str, float] = Field(default_factory=dict)

    @field_validator("tolerances")
    @classmethod
    def _known_tolerances(cls, v: Dict[str, float]) -> Dict[str, float]:
        unknown = sorted(set(v) - TOLERANCE_KEYS)
        if unknown:
            raise ValueError(f"unknown tolerance key(s): {', '.join(unknown)}")
        return v

    def command_params(self) -> StrictModel:
        return PARAMS[self.command].model_validate(self.params)

    def hash_payload(self) -> Dict[str, Any]:
        """Everything that determines the artifacts; output_dir and jobs excluded"""
        payload = self.model_dump(mode="json", exclude={"output_dir", "jobs"})
        payload["params"] = self.command_params().model_dump(mode="json")
        return payload


def _describe(error: ValidationError, prefix: str = "") -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(x) for x in (prefix, *item["loc"]) if x != "")
        if item["type"] == "extra_forbidden":
            parts.append(f"unknown key '{loc}'")
        elif item["type"] == "missing":
            parts.append(f"missing required key '{loc}'")
        else:
            parts.append(f"{loc}: {item['msg']}")
    return "; ".join(parts)


def parse_config(source: Union[str, Path, Dict[str, Any]]) -> RunConfig:
    """
    Validate a config file path or an already-built mapping.

    Raises ConfigError naming the offending key.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}", field_name="config")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(f"malformed config {path}: {e}", field_name="config")
    else:
        data = dict(source)

    try:
        cfg = RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(_describe(e))
    try:
        cfg.command_params()
    except ValidationError as e:
        raise ConfigError(_describe(e, "params"))
    except ValueError as e:
        raise ConfigError(str(e), field_name="params")
    return cfg
