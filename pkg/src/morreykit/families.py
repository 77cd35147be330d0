"""Finite cube families over which every supremum is evaluated.

The exact 1-d family carries one witness cube for every realizable
membership pattern of ``(Q, rho Q, ..., Q*)``; all cube-wise functionals
depend on a cube only through that pattern, so maxima over the family are
the true suprema over all cubes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np

from . import _cells
from .geometry import WHOLE_SPACE, AnyCube, Cube
from .measure import MeasureSpace, radial_profile

EXACT = "exact_1d"
HEURISTIC = "heuristic"


@dataclass(frozen=True)
class Exact1D:
    """Pattern enumeration (d = 1 only).

    ``extra`` dilations are resolved alongside ``k``; ``track_star`` refines
    cells until ``Q*`` is fixed so Campanato-type oscillations are exact too.
    """

    k: float = 2.0
    extra: tuple = (1.5, 2.0)
    track_star: bool = True

    @property
    def dilations(self) -> tuple:
        return tuple(sorted({float(self.k), *map(float, self.extra)}))


@dataclass(frozen=True)
class Dyadic:
    root: Cube
    depth: int


@dataclass(frozen=True)
class Breakpoints:
    """Cubes centred at atoms with sides just below and above every profile jump."""


@dataclass(frozen=True)
class Sampled:
    count: int
    seed: int = 0


@dataclass(frozen=True)
class Union_:
    parts: tuple


FamilySpec = Union[Exact1D, Dyadic, Breakpoints, Sampled, Union_]


class Pattern(NamedTuple):
    inner: tuple[int, int]
    outer: tuple[int, int]
    witness: Cube


@dataclass(eq=False)
class CubeFamily:
    """Explicit bounded cubes of positive measure, followed by R^d.

    Attributes
    ----------
    centers, sides : ndarray
        Bounded members, shapes (M, d) and (M,).
    completeness : str
        ``"exact_1d"`` or ``"heuristic"``.
    exact_dilations : tuple
        Dilation factors for which the exact family resolves ``rho Q``.
    """

    measure: MeasureSpace
    centers: np.ndarray
    sides: np.ndarray
    completeness: str = HEURISTIC
    k: float = 2.0
    exact_dilations: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.centers = np.asarray(self.centers, dtype=float).reshape(-1, self.measure.dim)
        self.sides = np.asarray(self.sides, dtype=float).reshape(-1)
        if len(self.centers) != len(self.sides):
            raise ValueError("centers and sides disagree in length")
        if np.any(~(self.sides > 0)) or not np.all(np.isfinite(self.sides)):
            raise ValueError("cube sides must be positive and finite")

    def __len__(self):
        return len(self.sides) + 1

    @property
    def n_bounded(self) -> int:
        return len(self.sides)

    def cube(self, i: int) -> AnyCube:
        if i == self.n_bounded or i == -1:
            return WHOLE_SPACE
        return Cube(tuple(self.centers[i]), self.sides[i])

    @property
    def cubes(self) -> list[AnyCube]:
        return [self.cube(i) for i in range(len(self))]

    def is_exact_for(self, *factors: float) -> bool:
        return self.completeness == EXACT and all(
            f == 1 or any(math.isclose(f, e) for e in self.exact_dilations) for f in factors
        )

    # -- cached per-family evaluation helpers (rows: bounded cubes, then R^d) --

    def members(self, rho: float = 1.0) -> np.ndarray:
        """Membership matrix of ``rho Q`` over all members, shape (len, N)."""
        key = ("members", float(rho))
        if key not in self._cache:
            mat = self.measure.membership_matrix(self.centers, self.sides * rho)
            whole = np.ones((1, self.measure.size), dtype=bool)
            self._cache[key] = np.vstack([mat, whole])
        return self._cache[key]

    def masses(self, rho: float = 1.0) -> np.ndarray:
        key = ("masses", float(rho))
        if key not in self._cache:
            self._cache[key] = self.members(rho) @ self.measure.masses
        return self._cache[key]

    def doubling_mask(self, k: float = 2.0, beta: float | None = None) -> np.ndarray:
        if beta is None:
            beta = 2.0 ** (self.measure.dim + 1)
        key = ("doubling", float(k), float(beta))
        if key not in self._cache:
            self._cache[key] = self.masses(k) <= beta * self.masses(1.0)
        return self._cache[key]

    def star_members(self) -> np.ndarray:
        """Membership of ``Q*`` (smallest doubling ``2^j Q``) for every member."""
        if "star" not in self._cache:
            beta = 2.0 ** (self.measure.dim + 1)
            mu = self.measure
            out = self.members(1.0).copy()
            todo = np.flatnonzero(~self.doubling_mask(2.0, beta))
            factor = 2.0
            while todo.size:
                nxt = mu.membership_matrix(self.centers[todo], self.sides[todo] * factor)
                nxt_mass = nxt @ mu.masses
                out[todo] = nxt
                big = mu.membership_matrix(self.centers[todo], self.sides[todo] * factor * 2)
                ok = big @ mu.masses <= beta * nxt_mass
                todo = todo[~ok]
                factor *= 2
            self._cache["star"] = out
        return self._cache["star"]


def _sorted_view(mu: MeasureSpace):
    if mu.dim != 1:
        raise ValueError("exact pattern enumeration is only available for d = 1")
    order = np.argsort(mu.positions[:, 0], kind="stable")
    return order, mu.positions[order, 0], mu.masses[order]


def enumerate_patterns_1d(mu: MeasureSpace, k: float) -> list[Pattern]:
    """Every realizable ``(atoms in Q, atoms in kQ)`` pair, as sorted-index ranges.

    Each pattern carries a witness cube in the interior of its feasible
    region in ``(left end, right end)`` coordinates.
    """
    k = float(k)
    if not k > 1:
        raise ValueError("k must exceed 1")
    _, x, m = _sorted_view(mu)
    out = {}
    for cell in _cells.enumerate_cells(x, m, dilations=(k,)):
        rng = dict(cell.ranges)
        key = (rng[1.0], rng[k])
        out.setdefault(key, Pattern(key[0], key[1], Cube((cell.center,), cell.side)))
    return sorted(out.values(), key=lambda p: (p.inner, p.outer))


def _exact_family(mu: MeasureSpace, spec: Exact1D) -> tuple[np.ndarray, np.ndarray]:
    _, x, m = _sorted_view(mu)
    cells = _cells.enumerate_cells(x, m, dilations=spec.dilations, track_star=spec.track_star)
    centers = np.array([c.center for c in cells])
    sides = np.array([c.side for c in cells])
    return centers.reshape(-1, 1), sides


def _dyadic(mu: MeasureSpace, spec: Dyadic):
    root = spec.root
    if root.dim != mu.dim:
        raise ValueError("dyadic root has the wrong dimension")
    centers, sides = [], []
    level = np.array([root.center])
    side = root.side
    offsets = np.array(np.meshgrid(*[(-0.25, 0.25)] * mu.dim, indexing="ij")).reshape(mu.dim, -1).T
    for _ in range(spec.depth + 1):
        centers.append(level)
        sides.append(np.full(len(level), side))
        level = (level[:, None, :] + offsets[None, :, :] * side).reshape(-1, mu.dim)
        side /= 2
    return np.vstack(centers), np.concatenate(sides)


def _min_gap(mu: MeasureSpace) -> float:
    if mu.size == 1:
        return 1.0
    diff = np.max(np.abs(mu.positions[:, None, :] - mu.positions[None, :, :]), axis=2)
    return float(diff[diff > 0].min())


def _breakpoints(mu: MeasureSpace):
    eps = _min_gap(mu) / 8
    centers, sides = [], []
    for i in range(mu.size):
        br = radial_profile(mu, mu.positions[i]).breakpoints
        br = br[br > 0]
        s = np.concatenate([[eps], br - eps, br + eps])
        centers.append(np.repeat(mu.positions[i][None, :], len(s), axis=0))
        sides.append(s)
    return np.vstack(centers), np.concatenate(sides)


def _sampled(mu: MeasureSpace, spec: Sampled):
    rng = np.random.default_rng(spec.seed)
    gap = _min_gap(mu)
    span = float(np.max(np.ptp(mu.positions, axis=0))) if mu.size > 1 else 1.0
    lo, hi = np.log(gap / 4), np.log(4 * (span + gap))
    sides = np.exp(rng.uniform(lo, hi, spec.count))
    anchor = mu.positions[rng.integers(0, mu.size, spec.count)]
    # offsetting an atom by less than half a side keeps it inside the cube
    offset = rng.uniform(-0.5, 0.5, (spec.count, mu.dim)) * sides[:, None]
    return anchor + offset, sides


def _collect(mu: MeasureSpace, spec) -> tuple[list, list, bool, tuple]:
    if isinstance(spec, Exact1D):
        c, s = _exact_family(mu, spec)
        return [c], [s], True, spec.dilations
    if isinstance(spec, Dyadic):
        c, s = _dyadic(mu, spec)
    elif isinstance(spec, Breakpoints):
        c, s = _breakpoints(mu)
    elif isinstance(spec, Sampled):
        c, s = _sampled(mu, spec)
    elif isinstance(spec, Union_):
        cs, ss, exact, dil = [], [], False, ()
        for part in spec.parts:
            c, s, e, d = _collect(mu, part)
            cs += c
            ss += s
            if e:
                exact, dil = True, tuple(sorted(set(dil) | set(d)))
        return cs, ss, exact, dil
    else:
        raise TypeError(f"unknown family spec {spec!r}")
    return [c], [s], False, ()


def build_family(mu: MeasureSpace, spec: FamilySpec, k: float | None = None) -> CubeFamily:
    """Materialise a family spec over ``mu``: drop empty cubes, dedupe, append R^d."""
    cs, ss, exact, dil = _collect(mu, spec)
    centers = np.vstack(cs) if cs else np.empty((0, mu.dim))
    sides = np.concatenate(ss) if ss else np.empty(0)
    keep = mu.membership_matrix(centers, sides).any(axis=1)
    centers, sides = centers[keep], sides[keep]
    if len(sides):
        # stable dedupe on exact coordinates, preserving first occurrence
        key = np.column_stack([centers, sides])
        _, first = np.unique(key, axis=0, return_index=True)
        first.sort()
        centers, sides = centers[first], sides[first]
    if k is None:
        k = spec.k if isinstance(spec, Exact1D) else 2.0
    return CubeFamily(
        mu, centers, sides, completeness=EXACT if exact else HEURISTIC, k=float(k), exact_dilations=dil
    )


def default_family(mu: MeasureSpace, k: float = 2.0, samples: int = 2000, seed: int = 0) -> CubeFamily:
    """Exact family in d = 1, a dyadic/breakpoint/sampled mix otherwise."""
    if mu.dim == 1:
        return build_family(mu, Exact1D(k=k))
    lo = mu.positions.min(axis=0)
    hi = mu.positions.max(axis=0)
    root = Cube(tuple((lo + hi) / 2), float(np.max(hi - lo)) * 1.01 + 1.0)
    spec = Union_((Dyadic(root, 5), Breakpoints(), Sampled(samples, seed)))
    return build_family(mu, spec, k=k)


def family_union(family: CubeFamily, cubes: Sequence[AnyCube]) -> CubeFamily:
    """Family extended by extra bounded cubes (R^d is always present already)."""
    extra = [Q for Q in cubes if isinstance(Q, Cube)]
    if not extra:
        return family
    c = np.vstack([family.centers, np.array([Q.center for Q in extra])])
    s = np.concatenate([family.sides, [Q.side for Q in extra]])
    keep = family.measure.membership_matrix(c, s).any(axis=1)
    return CubeFamily(
        family.measure, c[keep], s[keep], family.completeness, family.k, family.exact_dilations
    )
