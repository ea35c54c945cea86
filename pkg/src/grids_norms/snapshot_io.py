"""
Snapshot and norm-table files.

NSRA1 snapshot: one ASCII header line

    NSRA1 n=<n> N=<N> L=<L> m=<m> t=<time>

followed by m*N^n little-endian float64 values, component-major, x_1 fastest.
Follows SRP: File formats only.
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Tuple, Union

import numpy as np

from src.common.errors import SnapshotFormatError
from src.grids_norms.fields import CartesianField

logger = logging.getLogger(__name__)

MAGIC = "NSRA1"
NORM_TABLE_HEADER = ["t", "alpha", "s", "p", "ptilde", "value", "err"]
PathLike = Union[str, Path]


def _file_order(n: int) -> Tuple[int, ...]:
    # (m, x1, ..., xn) <-> (m, xn, ..., x1); the permutation is its own inverse
    return (0,) + tuple(range(n, 0, -1))


def encode_snapshot(f: CartesianField, t: float) -> bytes:
    header = f"{MAGIC} n={f.n} N={f.points} L={f.half_width!r} m={f.components} t={float(t)!r}\n"
    body = np.ascontiguousarray(np.transpose(f.values, _file_order(f.n)), dtype="<f8")
    return header.encode("ascii") + body.tobytes()


def decode_snapshot(data: bytes) -> Tuple[CartesianField, float]:
    newline = data.find(b"\n")
    if newline < 0:
        raise SnapshotFormatError("missing NSRA1 header line")
    try:
        fields = data[:newline].decode("ascii").split()
    except UnicodeDecodeError:
        raise SnapshotFormatError("header is not ASCII")
    if not fields or fields[0] != MAGIC:
        raise SnapshotFormatError(f"bad magic {fields[0] if fields else ''!r}, expected {MAGIC}")

    meta = dict(item.split("=", 1) for item in fields[1:] if "=" in item)
    try:
        n, points, comps = int(meta["n"]), int(meta["N"]), int(meta["m"])
        half_width, t = float(meta["L"]), float(meta["t"])
    except (KeyError, ValueError) as e:
        raise SnapshotFormatError(f"malformed NSRA1 header: {e}")

    body = data[newline + 1 :]
    expected = comps * points**n * 8
    if len(body) != expected:
        raise SnapshotFormatError(f"size mismatch: header promises {expected} bytes, found {len(body)}")

    raw = np.frombuffer(body, dtype="<f8").reshape((comps,) + (points,) * n)
    values = np.transpose(raw, _file_order(n)).astype(float)
    return CartesianField(n, half_width, values), t


def write_snapshot(path: PathLike, f: CartesianField, t: float) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_snapshot(f, t))
    logger.debug("wrote snapshot %s (t=%s)", path, t)
    return path


def read_snapshot(path: PathLike) -> Tuple[CartesianField, float]:
    path = Path(path)
    if not path.exists():
        raise SnapshotFormatError(f"snapshot not found: {path}", field_name="path")
    return decode_snapshot(path.read_bytes())


@dataclass(frozen=True)
class NormRow:
    """One line of a norm table"""

    t: float
    alpha: str
    s: str
    p: str
    ptilde: str
    value: float
    err: float

    def as_row(self) -> List[str]:
        return [repr(self.t), self.alpha, self.s, self.p, self.ptilde, repr(self.value), repr(self.err)]


def write_norm_table(path: PathLike, rows: Iterable[NormRow]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(NORM_TABLE_HEADER)
        for row in rows:
            writer.writerow(row.as_row())
    return path


def read_norm_table(path: PathLike) -> List[NormRow]:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != NORM_TABLE_HEADER:
            raise SnapshotFormatError(f"unexpected norm table header {reader.fieldnames}")
        return [
            NormRow(float(r["t"]), r["alpha"], r["s"], r["p"], r["ptilde"], float(r["value"]), float(r["err"]))
            for r in reader
        ]
