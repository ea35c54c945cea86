"""
Field containers on Cartesian and polar grids.

CartesianField samples a (vector/tensor) field on the periodic box [-L, L)^n,
PolarField holds values at the nodes of a PolarGrid.
Follows SRP: Field storage and pointwise geometry only.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Callable, List, Optional, Sequence, Union

import numpy as np

from src.common.errors import GridError
from src.common.utils import is_power_of_two

if TYPE_CHECKING:
    from src.grids_norms.polar import PolarGrid

ArrayFn = Callable[..., Union[np.ndarray, Sequence[np.ndarray]]]


@dataclass(frozen=True, eq=False)
class CartesianField:
    """
    Field sampled on a uniform periodic grid.

    values has shape (m, N, ..., N); axis 1 is x_1.

    Passing criteria:
    - n in {2, 3}
    - N is a power of two
    - every value is finite
    """

    n: int
    half_width: float
    values: np.ndarray

    def __post_init__(self):
        if self.n not in (2, 3):
            raise GridError(f"dimension must be 2 or 3, got {self.n}", field_name="n")
        if self.half_width <= 0:
            raise GridError("half_width must be positive", field_name="half_width")
        v = self.values
        if v.ndim != self.n + 1:
            raise GridError(f"values must have shape (m, N^{self.n}), got {v.shape}")
        points = v.shape[1]
        if any(size != points for size in v.shape[1:]) or not is_power_of_two(points):
            raise GridError(f"N must be a power of two on every axis, got {v.shape[1:]}")
        if not np.all(np.isfinite(v)):
            raise GridError("field values must be finite")

    @property
    def points(self) -> int:
        return self.values.shape[1]

    @property
    def components(self) -> int:
        return self.values.shape[0]

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    def axis(self) -> np.ndarray:
        """Grid coordinates x_j = -L + j h"""
        return -self.half_width + self.spacing * np.arange(self.points)

    def mesh(self) -> List[np.ndarray]:
        """Sparse broadcastable coordinate arrays"""
        return np.meshgrid(*([self.axis()] * self.n), indexing="ij", sparse=True)

    def radius(self) -> np.ndarray:
        return np.sqrt(sum(x**2 for x in self.mesh()))

    def magnitude(self) -> np.ndarray:
        """Euclidean magnitude across components"""
        return np.sqrt(np.sum(self.values**2, axis=0))

    def with_values(self, values: np.ndarray) -> "CartesianField":
        return replace(self, values=np.asarray(values, dtype=float))

    def scaled(self, factor: float) -> "CartesianField":
        return self.with_values(factor * self.values)

    def component(self, index: int) -> "CartesianField":
        return self.with_values(self.values[index : index + 1])

    @classmethod
    def zeros(cls, n: int, half_width: float, points: int, components: int = 1) -> "CartesianField":
        return cls(n, half_width, np.zeros((components,) + (points,) * n))

    @classmethod
    def from_function(
        cls, fn: ArrayFn, n: int, half_width: float, points: int
    ) -> "CartesianField":
        """Sample fn(x_1, ..., x_n); fn returns an array or a sequence of component arrays"""
        probe = cls.zeros(n, half_width, points)
        shape = (points,) * n
        comps = _components(fn(*probe.mesh()), shape)
        return cls(n, half_width, np.stack(comps).astype(float))

    @classmethod
    def tensor_product(cls, u: "CartesianField") -> "CartesianField":
        """u ⊗ u, component j*n + k = u_j u_k"""
        if u.components != u.n:
            raise GridError(f"u ⊗ u needs m = n, got m = {u.components}")
        v = u.values
        return u.with_values((v[:, None] * v[None, :]).reshape((u.n * u.n,) + v.shape[1:]))


def dilate(f: CartesianField, lam: float) -> CartesianField:
    """
    (S_lam f)(x) = f(x / lam) for lam = 2^k.

    The grid maps onto itself after the box is rescaled to half-width L*lam,
    so grid values are unchanged.
    """
    if not is_power_of_two(lam):
        raise GridError(f"dilation factor must be a power of two, got {lam}", field_name="lam")
    return replace(f, half_width=f.half_width * lam)


@dataclass(frozen=True, eq=False)
class PolarField:
    """
    Field values at polar nodes, shape (m, shells*nodes_per_shell, directions).

    coarse holds the same field on the half-resolution companion grid when
    available; it drives quadrature error estimates.
    """

    grid: "PolarGrid"
    values: np.ndarray
    coarse: Optional["PolarField"] = None

    def __post_init__(self):
        expected = (self.grid.radii.size, self.grid.directions.shape[0])
        if self.values.ndim != 3 or self.values.shape[1:] != expected:
            raise GridError(f"polar values must have shape (m, {expected[0]}, {expected[1]})")
        if not np.all(np.isfinite(self.values)):
            raise GridError("polar values must be finite")

    @property
    def components(self) -> int:
        return self.values.shape[0]

    def scaled(self, factor: float) -> "PolarField":
        coarse = self.coarse.scaled(factor) if self.coarse is not None else None
        return PolarField(self.grid, factor * self.values, coarse)

    @classmethod
    def from_function(cls, grid: "PolarGrid", fn: ArrayFn, with_coarse: bool = True) -> "PolarField":
        """Evaluate fn(x_1, ..., x_n) at every node"""
        pts = grid.points()
        comps = _components(fn(*[pts[..., d] for d in range(grid.n)]), pts.shape[:2])
        coarse = None
        if with_coarse and grid.coarse is not None:
            coarse = cls.from_function(grid.coarse, fn, with_coarse=False)
        return cls(grid, np.stack(comps).astype(float), coarse)


@dataclass(frozen=True)
class NormResult:
    """Norm value with a quadrature error estimate"""

    value: float
    quadrature_error_estimate: float = 0.0

    def __post_init__(self):
        if not self.value >= 0:
            raise GridError(f"norm value must be >= 0, got {self.value}")

    def to_dict(self) -> dict:
        return {"value": self.value, "err": self.quadrature_error_estimate}


def _components(out, shape) -> List[np.ndarray]:
    """Normalize fn output (scalar, array, stacked array or sequence) into component arrays"""
    if isinstance(out, (list, tuple)):
        return [np.broadcast_to(np.asarray(c, dtype=float), shape) for c in out]
    arr = np.asarray(out, dtype=float)
    if arr.ndim == len(shape) + 1:
        return [np.broadcast_to(c, shape) for c in arr]
    return [np.broadcast_to(arr, shape)]
