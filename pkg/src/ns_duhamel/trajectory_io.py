"""
Trajectory directories: one NSRA1 file per snapshot plus manifest.json.

Follows SRP: Trajectory persistence only.
"""

import json
import logging
from pathlib import Path
from typing import Union

from src.common.errors import SnapshotFormatError
from src.common.types import SolveStatus
from src.common.utils import config_hash, ensure_directory, safe_json_dumps
from src.grids_norms.snapshot_io import read_snapshot, write_snapshot
from src.ns_duhamel.picard import Trajectory

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
PathLike = Union[str, Path]


def snapshot_name(k: int) -> str:
    return f"snapshot-{k:05d}.nsra1"


def write_trajectory(directory: PathLike, traj: Trajectory) -> Path:
    """Write every snapshot and the manifest; returns the manifest path"""
    root = ensure_directory(directory)
    for k, (t, u) in enumerate(traj.snapshots):
        write_snapshot(root / snapshot_name(k), u, t)
    manifest = traj.manifest()
    manifest["config_hash"] = config_hash(traj.datum)
    manifest["files"] = [snapshot_name(k) for k in range(len(traj))]
    path = root / MANIFEST
    path.write_text(safe_json_dumps(manifest) + "\n")
    logger.info("wrote %d snapshots to %s", len(traj), root)
    return path


def read_trajectory(directory: PathLike) -> Trajectory:
    root = Path(directory)
    path = root / MANIFEST
    if not path.exists():
        raise SnapshotFormatError(f"no {MANIFEST} in {root}", field_name="directory")
    manifest = json.loads(path.read_text())
    if len(manifest["files"]) != len(manifest["times"]):
        raise SnapshotFormatError("manifest files and times differ in length", field_name="files")
    snapshots = []
    for name, expected in zip(manifest["files"], manifest["times"]):
        u, t = read_snapshot(root / name)
        if t != expected:
            raise SnapshotFormatError(f"{name}: header time {t} disagrees with manifest {expected}")
        snapshots.append((t, u))
    return Trajectory(
        snapshots,
        manifest.get("datum", {}),
        int(manifest.get("iterations", 0)),
        [float(x) for x in manifest.get("contraction", [])],
        SolveStatus(manifest.get("status", SolveStatus.CONVERGED.value)),
    )
