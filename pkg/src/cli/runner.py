"""
Command dispatch for the lab CLI.

Each handler builds its inputs from the validated config, calls one module
operation and writes `<command>-<confighash>.{csv,json}` under output_dir.
Follows SRP: Dispatch and artifact emission only.
"""

import csv
import logging
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from src.cli.config import (
    CknParams,
    DecayParams,
    DuhamelParams,
    GridParams,
    IndicesParams,
    IntegralParams,
    NormsParams,
    RunConfig,
    SimulateParams,
    TrajectoryParams,
)
from src.common.config import settings, update_settings
from src.common.errors import ConfigError, LabError
from src.common.types import Command, CriterionKind, RunMetrics
from src.common.utils import config_hash, ensure_directory, safe_json_dumps
from src.decay_lab import (
    ckn_comparison,
    duhamel_estimate_report,
    heat_decay_report,
    integral_estimate_report,
    localized_decay_report,
    oseen_decay_report,
    write_report_csv,
    write_report_json,
)
from src.decay_lab.reports import DecayReport
from src.decay_lab.scaling import probe_tensor
from src.execution.metrics import MetricsCollector
from src.grids_norms.fields import CartesianField
from src.grids_norms.norms import mixed_norm
from src.grids_norms.polar import default_polar_grid
from src.grids_norms.resample import resample
from src.grids_norms.snapshot_io import NormRow, write_norm_table
from src.index_calculus.criteria import check_global_criterion, check_local_criterion, check_yz_criterion
from src.index_calculus.exponent import Exponent
from src.index_calculus.indices import IndexTuple
from src.index_calculus.initial_data import check_initial_data_conditions
from src.ns_duhamel import (
    SimConfig,
    Trajectory,
    energy_report,
    make_datum,
    max_defect,
    monitor_criterion,
    picard_solve,
    pressure_consistency,
    read_trajectory,
    write_trajectory,
)
from src.operators.multipliers import heat_evolve
from src.orchestrator.job_orchestrator import run_jobs
from src.orchestrator.logger import drop_run_logger, get_run_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED_ESTIMATE = 2

CRITERIA = {
    CriterionKind.GLOBAL: check_global_criterion,
    CriterionKind.LOCAL: check_local_criterion,
    CriterionKind.YZ: check_yz_criterion,
}


@dataclass
class RunOutcome:
    """What one invocation produced"""

    command: Command
    exit_code: int
    artifacts: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    metrics: Optional[RunMetrics] = None


class Artifacts:
    """Names `<command>-<hash>` files inside the output directory"""

    def __init__(self, cfg: RunConfig):
        self.directory = Path(cfg.output_dir)
        self.stem = f"{cfg.command.value}-{config_hash(cfg.hash_payload())}"
        self.written: List[Path] = []

    def path(self, suffix: str) -> Path:
        ensure_directory(self.directory)
        return self.directory / f"{self.stem}{suffix}"

    def json(self, payload: Dict[str, Any]) -> Path:
        path = self.path(".json")
        path.write_text(safe_json_dumps(payload) + "\n")
        self.written.append(path)
        return path

    def csv(self, header: List[str], rows: List[List[Any]]) -> Path:
        path = self.path(".csv")
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows([[repr(v) if isinstance(v, float) else v for v in row] for row in rows])
        self.written.append(path)
        return path

    def track(self, path: Path) -> Path:
        self.written.append(path)
        return path


@contextmanager
def overridden_settings(cfg: RunConfig) -> Iterator[None]:
    """Apply seed, jobs and tolerance overrides for the duration of a run"""
    overrides: Dict[str, Any] = {"seed": cfg.seed, "jobs": cfg.jobs, **cfg.tolerances}
    saved = {key: getattr(settings, key) for key in overrides}
    update_settings(**overrides)
    try:
        yield
    finally:
        update_settings(**saved)


def _gaussian(*xs):
    return np.exp(-sum(x**2 for x in xs))


def _swirl(*xs):
    g = _gaussian(*xs)
    rest = [0.0 * xs[0]] * (len(xs) - 2)
    return [-xs[1] * g, xs[0] * g, *rest]


def build_field(kind: str, grid: GridParams) -> CartesianField:
    """Named test fields: Gaussian scalar, Gaussian swirl, its self-interaction, zero"""
    if kind == "zero":
        return CartesianField.zeros(grid.n, grid.half_width, grid.points)
    if kind == "gaussian":
        return CartesianField.from_function(_gaussian, grid.n, grid.half_width, grid.points)
    swirl = CartesianField.from_function(_swirl, grid.n, grid.half_width, grid.points)
    return CartesianField.tensor_product(swirl) if kind == "swirl-tensor" else swirl


def sim_config(params: TrajectoryParams, grid: GridParams) -> SimConfig:
    return SimConfig(
        n=grid.n,
        points=grid.points,
        half_width=grid.half_width,
        horizon=params.horizon,
        steps=params.steps,
        picard_iters=params.picard_iters,
        datum=params.datum,
        amplitude=params.amplitude,
        datum_path=params.datum_path,
        time_grid=params.time_grid,
    )


def build_trajectory(params: TrajectoryParams, grid: GridParams) -> Trajectory:
    """Heat flow of the datum, a Picard run, or a trajectory directory on disk"""
    if params.source == "dir":
        if not params.trajectory_dir:
            raise ConfigError("source 'dir' needs trajectory_dir", field_name="trajectory_dir")
        return read_trajectory(params.trajectory_dir)
    cfg = sim_config(params, grid)
    if params.source == "picard":
        return picard_solve(cfg)
    u0 = make_datum(cfg)
    times = cfg.times()
    flows = run_jobs([partial(heat_evolve, u0, float(t)) for t in times], settings.jobs)
    return Trajectory([(float(t), u) for t, u in zip(times, flows)], cfg.descriptor())


def _report_outcome(artifacts: Artifacts, report: DecayReport, extra: Dict[str, Any]) -> Tuple[int, Dict[str, Any]]:
    artifacts.track(write_report_csv(artifacts.path(".csv"), report))
    artifacts.track(write_report_json(artifacts.path(".json"), report))
    summary = {"verdict": report.verdict.value, **extra}
    return (EXIT_OK if report.passed else EXIT_FAILED_ESTIMATE), summary


def run_indices(cfg: RunConfig, params: IndicesParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    t = params.index_tuple()
    adm = CRITERIA[params.criterion](t)
    payload: Dict[str, Any] = {
        "criterion": params.criterion.value,
        "tuple": t.to_dict(),
        "admissible": adm.admissible,
        "admissibility": adm.to_dict(),
    }
    if params.initial_data is not None:
        if params.alpha0 is None or params.p0 is None or params.ptilde0 is None:
            raise ConfigError("initial_data needs alpha0, p0 and ptilde0", field_name="initial_data")
        initial = check_initial_data_conditions(params.initial_data, params.alpha0, params.p0, params.ptilde0, t)
        payload["initial_data"] = initial.to_dict()
    artifacts.json(payload)
    return EXIT_OK, {"admissible": adm.admissible, "case_label": adm.case_label.value}


def run_norms(cfg: RunConfig, params: NormsParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    f = build_field(params.field, cfg.grid)
    grid = default_polar_grid(f.n, f.half_width, params.normalization)
    pf = resample(f, grid)
    rows = []
    for ptilde in params.ptilde:
        result = mixed_norm(pf, params.alpha, Exponent.of(params.p), Exponent.of(ptilde), params.magnitude, None, params.normalization)
        rows.append(NormRow(0.0, params.alpha, "inf", params.p, ptilde, result.value, result.quadrature_error_estimate))
    artifacts.track(write_norm_table(artifacts.path(".csv"), rows))
    artifacts.json({"field": params.field, "grid": grid.describe(), "rows": [asdict(r) for r in rows]})
    return EXIT_OK, {"values": [r.value for r in rows]}


def _decay_t_grid(params: DecayParams) -> Optional[np.ndarray]:
    span = params.t_grid()
    return None if span is None else np.geomspace(*span)


def run_heat_decay(cfg: RunConfig, params: DecayParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    report = heat_decay_report(build_field(params.field, cfg.grid), params.indices(cfg.grid.n), _decay_t_grid(params))
    return _report_outcome(artifacts, report, {"fitted_slope": report.fitted_slope})


def run_oseen_decay(cfg: RunConfig, params: DecayParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    F = probe_tensor(build_field(params.field, cfg.grid))
    report = oseen_decay_report(F, params.indices(cfg.grid.n), _decay_t_grid(params))
    return _report_outcome(artifacts, report, {"fitted_slope": report.fitted_slope})


def run_localized_decay(cfg: RunConfig, params: DecayParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    if params.R is None:
        raise ConfigError("localized-decay needs the parabola radius R", field_name="R")
    data = build_field(params.field, cfg.grid)
    if params.oseen:
        data = probe_tensor(data)
    report = localized_decay_report(data, params.indices(cfg.grid.n), params.R, _decay_t_grid(params), params.oseen)
    return _report_outcome(artifacts, report, {"R": params.R})


def run_integral(cfg: RunConfig, params: IntegralParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    u0 = build_field(params.field, cfg.grid)
    window = None if params.t_stop is None else (params.t_start, params.t_stop)
    report = integral_estimate_report(
        u0, params.indices(cfg.grid.n), window, params.R, tuple(params.dilations), params.samples
    )
    return _report_outcome(artifacts, report, {"ratio_sup": report.ratio_sup})


def run_duhamel(cfg: RunConfig, params: DuhamelParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    traj = build_trajectory(params, cfg.grid)
    report = duhamel_estimate_report(
        traj.snapshots, params.indices(traj.final.n), tuple(params.dilations), params.diagonal
    )
    return _report_outcome(artifacts, report, {"ratio_sup": report.ratio_sup})


def run_simulate(cfg: RunConfig, params: SimulateParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    traj = build_trajectory(params, cfg.grid)
    directory = artifacts.directory / artifacts.stem
    artifacts.track(write_trajectory(directory, traj))

    rows = energy_report(traj)
    payload: Dict[str, Any] = {
        "trajectory": traj.manifest(),
        "energy_defect": max_defect(rows),
        "pressure_gap": pressure_consistency(traj),
    }
    if params.monitor is not None:
        alpha, s, p, ptilde = params.monitor
        result, adm = monitor_criterion(traj, IndexTuple.create(traj.final.n, alpha, s, p, ptilde))
        payload["criterion"] = {"norm": result.to_dict(), "admissibility": adm.to_dict()}
    artifacts.csv(["t", "energy", "dissipation", "defect"], [[r.t, r.energy, r.dissipation, r.defect] for r in rows])
    artifacts.json(payload)
    # NON_CONTRACTIVE runs still complete; the status is in the manifest
    return EXIT_OK, {"status": traj.status.value, "iterations": traj.iterations}


def run_ckn(cfg: RunConfig, params: CknParams, artifacts: Artifacts) -> Tuple[int, Dict[str, Any]]:
    traj = build_trajectory(params, cfg.grid)
    table = ckn_comparison(traj.snapshots, params.t_bar, params.r_list)
    artifacts.csv(["r", "A", "B", "dominated"], [[row.r, row.A, row.B, row.dominated] for row in table.rows])
    artifacts.json({"datum": traj.datum, **table.to_dict()})
    return (EXIT_OK if table.dominated else EXIT_FAILED_ESTIMATE), {"dominated": table.dominated}


HANDLERS: Dict[Command, Callable[..., Tuple[int, Dict[str, Any]]]] = {
    Command.INDICES: run_indices,
    Command.NORMS: run_norms,
    Command.HEAT_DECAY: run_heat_decay,
    Command.OSEEN_DECAY: run_oseen_decay,
    Command.LOCALIZED_DECAY: run_localized_decay,
    Command.INTEGRAL: run_integral,
    Command.DUHAMEL: run_duhamel,
    Command.SIMULATE: run_simulate,
    Command.CKN: run_ckn,
}


def run(cfg: RunConfig) -> RunOutcome:
    """
    Execute one command.

    Exit codes: 0 on PASS or completion, 2 when an estimate ran and FAILED.
    LabErrors propagate; the entry point maps them to 1.
    """
    artifacts = Artifacts(cfg)
    journal = get_run_logger(artifacts.stem)
    journal.info("run started", command=cfg.command.value, config=cfg.hash_payload())
    params = cfg.command_params()
    try:
        with overridden_settings(cfg):
            (code, summary), metrics = MetricsCollector.measure_execution(
                HANDLERS[cfg.command], cfg, params, artifacts
            )
    except LabError as e:
        journal.error(e.message, field=e.field_name, error=type(e).__name__)
        raise
    finally:
        drop_run_logger(artifacts.stem)

    journal.info(
        "run finished",
        exit_code=code,
        execution_time=metrics.execution_time,
        memory_peak=metrics.memory_peak,
        **summary,
    )
    logger.info("%s finished with exit code %d in %.2fs", cfg.command.value, code, metrics.execution_time)
    return RunOutcome(cfg.command, code, list(artifacts.written), summary, metrics)
