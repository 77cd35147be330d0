"""Finite atomic measures on R^d."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import AnyCube, DimensionError, WholeSpace, as_point


@dataclass(frozen=True)
class StepProfile:
    """Right-continuous step function ``l -> mu(Q(z, l))``.

    ``masses[i]`` is the value on ``[breakpoints[i], breakpoints[i+1])``;
    below ``breakpoints[0]`` the value is 0.
    """

    breakpoints: np.ndarray
    masses: np.ndarray

    def __call__(self, l: float) -> float:
        i = np.searchsorted(self.breakpoints, l, side="right") - 1
        return 0.0 if i < 0 else float(self.masses[i])

    def values(self, ls: np.ndarray) -> np.ndarray:
        i = np.searchsorted(self.breakpoints, ls, side="right") - 1
        return np.where(i >= 0, self.masses[np.maximum(i, 0)], 0.0)


@dataclass(frozen=True, eq=False)
class MeasureSpace:
    """Sum of point masses ``mu = sum_i m_i delta_{x_i}`` in R^d.

    Parameters
    ----------
    positions : array_like, shape (N, d) or (N,)
        Atom locations. A flat array is read as ``d = 1``.
    masses : array_like, shape (N,)
        Strictly positive atom weights.
    growth_exponent : float, optional
        The exponent ``n`` in ``mu(Q(x, l)) <= C0 l^n``; must lie in ``(0, d]``.
        Defaults to ``d``.
    """

    positions: np.ndarray
    masses: np.ndarray
    growth_exponent: float | None = None
    _sort: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim == 1:
            pos = pos[:, None]
        if pos.ndim != 2 or pos.shape[0] == 0:
            raise ValueError("need at least one atom")
        m = np.asarray(self.masses, dtype=float).reshape(-1)
        if m.shape[0] != pos.shape[0]:
            raise ValueError("positions and masses have different lengths")
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(m))):
            raise ValueError("atom positions and masses must be finite")
        if np.any(m <= 0):
            raise ValueError("atom masses must be strictly positive")
        if len(np.unique(pos, axis=0)) != len(pos):
            raise ValueError("atom positions must be pairwise distinct")
        d = pos.shape[1]
        n = float(d if self.growth_exponent is None else self.growth_exponent)
        if not (0 < n <= d):
            raise ValueError(f"growth exponent must lie in (0, {d}], got {n}")
        pos.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "masses", m)
        object.__setattr__(self, "growth_exponent", n)
        object.__setattr__(self, "_sort", np.lexsort(pos.T[::-1]))

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    @property
    def n(self) -> float:
        return self.growth_exponent

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def atom(self, i: int) -> tuple[float, ...]:
        return tuple(float(t) for t in self.positions[i])

    def atom_index(self, x) -> int | None:
        """Index of the atom located exactly at ``x``, or None."""
        x = np.asarray(as_point(x, self.dim))
        hit = np.flatnonzero(np.all(self.positions == x, axis=1))
        return int(hit[0]) if hit.size else None

    def membership(self, Q: AnyCube) -> np.ndarray:
        """Boolean mask of atoms lying in the closed cube ``Q``."""
        if isinstance(Q, WholeSpace):
            return np.ones(self.size, dtype=bool)
        if Q.dim != self.dim:
            raise DimensionError(f"cube in R^{Q.dim} against a measure on R^{self.dim}")
        dist = np.max(np.abs(self.positions - np.asarray(Q.center)), axis=1)
        return dist <= Q.side / 2

    def membership_matrix(self, centers: np.ndarray, sides: np.ndarray) -> np.ndarray:
        """Vectorised membership for many bounded cubes: shape (M, N)."""
        centers = np.asarray(centers, dtype=float).reshape(-1, self.dim)
        sides = np.asarray(sides, dtype=float).reshape(-1)
        dist = np.max(np.abs(centers[:, None, :] - self.positions[None, :, :]), axis=2)
        return dist <= sides[:, None] / 2


def mass_of(mu: MeasureSpace, Q: AnyCube) -> float:
    if isinstance(Q, WholeSpace):
        return mu.total_mass
    return float(mu.masses[mu.membership(Q)].sum())


def radial_profile(mu: MeasureSpace, z) -> StepProfile:
    """Exact ``l -> mu(Q(z, l))``: jumps at ``l = 2 |x_i - z|_inf``."""
    z = np.asarray(as_point(z, mu.dim))
    radii = 2 * np.max(np.abs(mu.positions - z), axis=1)
    order = np.argsort(radii, kind="stable")
    r, cum = radii[order], np.cumsum(mu.masses[order])
    last = np.append(r[1:] != r[:-1], True)
    return StepProfile(r[last], cum[last])


def growth_constant(mu: MeasureSpace, l_min: float) -> float:
    """Smallest ``C0`` with ``mu(Q(x, l)) <= C0 l^n`` for atoms ``x`` and ``l >= l_min``.

    On each piece of a radial profile the mass is constant and ``l^-n`` is
    decreasing, so the supremum over a piece sits at its left end (clipped
    to ``l_min``).
    """
    l_min = float(l_min)
    if not (l_min > 0 and math.isfinite(l_min)):
        raise ValueError(f"l_min must be positive and finite, got {l_min!r}")
    n = mu.n
    # row i: radial profile about atom i, with repeated radii left as zero-length pieces
    radii = 2 * np.max(np.abs(mu.positions[:, None, :] - mu.positions[None, :, :]), axis=2)
    order = np.argsort(radii, axis=1, kind="stable")
    r = np.take_along_axis(radii, order, axis=1)
    cum = np.cumsum(mu.masses[order], axis=1)
    right = np.concatenate([r[:, 1:], np.full((mu.size, 1), np.inf)], axis=1)
    left = np.maximum(r, l_min)
    vals = np.where(right > l_min, cum / left**n, 0.0)
    return float(vals.max())
