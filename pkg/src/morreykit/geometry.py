"""Axis-parallel closed cubes in R^d and the whole-space pseudo-cube."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


class DimensionError(ValueError):
    """Raised when points and cubes of different dimensions are mixed."""


def as_point(y, dim: int | None = None) -> tuple[float, ...]:
    if np.isscalar(y):
        coords = (float(y),)
    else:
        coords = tuple(float(t) for t in y)
    if not coords or not all(math.isfinite(t) for t in coords):
        raise ValueError(f"point coordinates must be finite, got {y!r}")
    if dim is not None and len(coords) != dim:
        raise DimensionError(f"expected a point in R^{dim}, got {len(coords)} coordinates")
    return coords


@dataclass(frozen=True)
class Cube:
    """Closed cube ``{y : |y - center|_inf <= side / 2}``."""

    center: tuple[float, ...]
    side: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        side = float(self.side)
        if not (side > 0 and math.isfinite(side)):
            raise ValueError(f"cube side must be positive and finite, got {self.side!r}")
        object.__setattr__(self, "side", side)

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def bounded(self) -> bool:
        return True

    @property
    def lower(self) -> np.ndarray:
        return np.asarray(self.center) - self.side / 2

    @property
    def upper(self) -> np.ndarray:
        return np.asarray(self.center) + self.side / 2

    def __repr__(self):
        c = ", ".join(f"{t:.6g}" for t in self.center)
        return f"Cube(center=({c}), side={self.side:.6g})"


class WholeSpace:
    """R^d itself, admitted as a cube when the measure is finite."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    bounded = False
    side = math.inf

    def __repr__(self):
        return "WholeSpace"

    def __reduce__(self):
        return (WholeSpace, ())


WHOLE_SPACE = WholeSpace()

AnyCube = Union[Cube, WholeSpace]


def _check_dim(Q: AnyCube, y: Sequence[float]):
    if isinstance(Q, Cube) and len(y) != Q.dim:
        raise DimensionError(f"cube lives in R^{Q.dim}, point has {len(y)} coordinates")


def chebyshev(x, y) -> float:
    """The sup-norm distance ``|x - y|_inf``."""
    x, y = as_point(x), as_point(y)
    if len(x) != len(y):
        raise DimensionError("points of different dimension")
    return max(abs(a - b) for a, b in zip(x, y))


def contains(Q: AnyCube, y) -> bool:
    y = as_point(y)
    if isinstance(Q, WholeSpace):
        return True
    _check_dim(Q, y)
    return chebyshev(Q.center, y) <= Q.side / 2


def dilate(Q: AnyCube, rho: float) -> AnyCube:
    """Concentric cube with side ``rho * side(Q)``; R^d dilates to itself."""
    rho = float(rho)
    if not math.isfinite(rho) or rho < 1:
        raise ValueError(f"dilation factor must be a finite number >= 1, got {rho!r}")
    if isinstance(Q, WholeSpace):
        return Q
    if rho == 1:
        return Q
    return Cube(Q.center, rho * Q.side)


def corners(Q: Cube) -> np.ndarray:
    """All ``2^d`` vertices of a bounded cube, one per row."""
    lo, hi = Q.lower, Q.upper
    grids = np.meshgrid(*[(a, b) for a, b in zip(lo, hi)], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def concentric_hull(Q: Cube, R: AnyCube) -> AnyCube:
    """Smallest cube concentric to ``Q`` that contains both ``Q`` and ``R``."""
    if not isinstance(Q, Cube):
        raise ValueError("the inner cube must be bounded")
    if isinstance(R, WholeSpace):
        return R
    if R.dim != Q.dim:
        raise DimensionError("cubes of different dimension")
    # the farthest point of R from z_Q in sup-norm is a corner, coordinatewise
    z = np.asarray(Q.center)
    reach = np.max(np.maximum(np.abs(R.lower - z), np.abs(R.upper - z)))
    return Cube(Q.center, max(Q.side, 2 * float(reach)))


def is_subset(Q: AnyCube, R: AnyCube) -> bool:
    if isinstance(R, WholeSpace):
        return True
    if isinstance(Q, WholeSpace):
        return False
    if Q.dim != R.dim:
        raise DimensionError("cubes of different dimension")
    return bool(np.all(R.lower <= Q.lower) and np.all(Q.upper <= R.upper))


def subdivide(Q: Cube) -> list[Cube]:
    """Split ``Q`` into its ``2^d`` congruent children of half the side."""
    offsets = corners(Cube(tuple(0.0 for _ in Q.center), Q.side / 2))
    z = np.asarray(Q.center)
    return [Cube(tuple(z + o), Q.side / 2) for o in offsets]
