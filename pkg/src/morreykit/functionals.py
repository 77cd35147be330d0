"""Morrey, Campanato, RBMO and sharp-maximal functionals over a cube family.

Every supremum is a maximum over an explicit :class:`CubeFamily`; whether
that maximum is the true supremum is a property of the family. Scalar
functions are the ``J = 1`` case of the vector-valued (``l^r``) ones and
share their code path.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .coefficients import DeltaIntegral, hull_sides
from .doubling import default_beta, lemma3_chain, q_star
from .families import CubeFamily, default_family
from .geometry import AnyCube, Cube, WholeSpace, as_point
from .measure import MeasureSpace


class SampledFunction:
    """Real values on the atoms of a measure, aligned by atom index."""

    def __init__(self, values, measure: MeasureSpace | None = None):
        v = np.asarray(values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ValueError("function values must be finite")
        if measure is not None and len(v) != measure.size:
            raise ValueError(f"{len(v)} values for {measure.size} atoms")
        v.setflags(write=False)
        self.values = v

    def __len__(self):
        return len(self.values)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


class VectorFunction:
    """``J`` scalar functions on the same atoms; row ``j`` is ``f_j``."""

    def __init__(self, components, measure: MeasureSpace | None = None):
        arr = np.atleast_2d(np.asarray([np.asarray(c, dtype=float) for c in components]))
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError("need at least one component")
        if not np.all(np.isfinite(arr)):
            raise ValueError("function values must be finite")
        if measure is not None and arr.shape[1] != measure.size:
            raise ValueError("components are not aligned with the atoms")
        arr.setflags(write=False)
        self.components = arr

    @property
    def J(self) -> int:
        return self.components.shape[0]


@dataclass(frozen=True)
class NormParams:
    """Exponents and dilation parameters; ``p = inf`` only for Campanato/RBMO."""

    p: float = 2.0
    q: float = 1.0
    k: float = 2.0
    beta: float | None = None
    r: float = 2.0

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (1 <= q <= p):
            raise ValueError(f"need 1 <= q <= p, got p={p}, q={q}")
        if not self.k > 1:
            raise ValueError("k must exceed 1")
        if self.beta is not None and not self.beta > 1:
            raise ValueError("beta must exceed 1")
        if not (1 < self.r < math.inf):
            raise ValueError("r must lie in (1, inf)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def inv_p(self) -> float:
        return 0.0 if math.isinf(self.p) else 1.0 / self.p

    def beta_for(self, d: int) -> float:
        return default_beta(d) if self.beta is None else float(self.beta)


@dataclass
class NormResult:
    value: float
    argmax: tuple = ()
    completeness: str = "heuristic"
    parts: dict = field(default_factory=dict)
    empty: bool = False


def _values(f, mu: MeasureSpace) -> np.ndarray:
    if isinstance(f, VectorFunction):
        arr = f.components
    elif isinstance(f, SampledFunction):
        arr = f.values[None, :]
    else:
        arr = np.asarray(f, dtype=float)
        arr = arr[None, :] if arr.ndim == 1 else arr
    if arr.shape[-1] != mu.size:
        raise ValueError(f"function has {arr.shape[-1]} values, measure has {mu.size} atoms")
    if not np.all(np.isfinite(arr)):
        raise ValueError("function values must be finite")
    return arr


def lr_norm(a: np.ndarray, r: float, axis: int = 0) -> np.ndarray:
    """``l^r`` norm along ``axis``; a single nonzero entry is returned unchanged."""
    a = np.abs(np.asarray(a, dtype=float))
    top = a.max(axis=axis)
    safe = np.where(top > 0, top, 1.0)
    ratio = a / np.expand_dims(safe, axis)
    return np.where(top > 0, top * np.sum(ratio**r, axis=axis) ** (1.0 / r), 0.0)


def _finite(x: float, what: str) -> float:
    if not math.isfinite(x):
        raise ArithmeticError(f"non-finite {what}")
    return float(x)


def _family(mu, family, k=2.0):
    if family is None:
        return default_family(mu, k=k)
    if family.measure is not mu:
        raise ValueError("family was built over a different measure")
    return family


def mean(mu: MeasureSpace, f, Q: AnyCube) -> float:
    """Mass-weighted average of ``f`` over the atoms in ``Q``."""
    v = _values(f, mu)
    if v.shape[0] != 1:
        raise ValueError("mean takes a scalar function")
    inside = mu.membership(Q)
    m = mu.masses[inside].sum()
    if m <= 0:
        raise ValueError("mean over a cube of zero measure")
    return float(np.dot(v[0, inside], mu.masses[inside]) / m)


# ---------------------------------------------------------------- Morrey


def _morrey_cubewise(mu, F, family, p, q, k, r):
    pointwise = lr_norm(F, r)
    integrals = family.members(1.0) @ (pointwise**q * mu.masses)
    weight = family.masses(k) ** (1.0 / p - 1.0 / q)
    return weight * integrals ** (1.0 / q)


def _doubling_cubewise(mu, F, family, p, q, k, beta, r):
    pointwise = lr_norm(F, r)
    integrals = family.members(1.0) @ (pointwise**q * mu.masses)
    vals = family.masses(1.0) ** (1.0 / p - 1.0 / q) * integrals ** (1.0 / q)
    return np.where(family.doubling_mask(k, beta), vals, -np.inf)


def _pick(vals: np.ndarray) -> tuple[float, int]:
    i = int(np.argmax(vals))
    return float(vals[i]), i


def _check_morrey(params: NormParams):
    if math.isinf(params.p):
        raise ValueError("Morrey norms need p < inf")


def morrey_result(mu, f, params: NormParams, family=None) -> NormResult:
    _check_morrey(params)
    family = _family(mu, family, params.k)
    F = _values(f, mu)
    v, i = _pick(_morrey_cubewise(mu, F, family, params.p, params.q, params.k, params.r))
    return NormResult(_finite(v, "Morrey norm"), (i,), _completeness(family, params.k))


def morrey_norm(mu: MeasureSpace, f, params: NormParams, family: CubeFamily | None = None) -> float:
    """``max_Q mu(kQ)^(1/p - 1/q) (int_Q |f|^q dmu)^(1/q)`` over the family."""
    return morrey_result(mu, f, params, family).value


def morrey_doubling_result(mu, f, params: NormParams, family=None) -> NormResult:
    _check_morrey(params)
    family = _family(mu, family, params.k)
    F = _values(f, mu)
    beta = params.beta_for(mu.dim)
    vals = _doubling_cubewise(mu, F, family, params.p, params.q, params.k, beta, params.r)
    if not np.any(np.isfinite(vals)):
        warnings.warn("no (k, beta)-doubling cube in the family", RuntimeWarning, stacklevel=3)
        return NormResult(0.0, (), _completeness(family, params.k), empty=True)
    v, i = _pick(vals)
    return NormResult(_finite(v, "doubling Morrey norm"), (i,), _completeness(family, params.k))


def morrey_norm_doubling(mu: MeasureSpace, f, params: NormParams, family: CubeFamily | None = None) -> float:
    """Same maximum restricted to (k, beta)-doubling members, weighted by ``mu(Q)``."""
    return morrey_doubling_result(mu, f, params, family).value


# ------------------------------------------------------------- Campanato


def _weighted_sums(mat, F, masses) -> np.ndarray:
    # one matrix-vector product per component keeps J = 1 and padded vectors bit-identical
    return np.stack([mat @ (row * masses) for row in F], axis=1)


def _star_means(mu, F, family) -> np.ndarray:
    star = family.star_members()
    mass = star @ mu.masses
    return _weighted_sums(star, F, mu.masses) / mass[:, None]


def _oscillations(mu, F, family, q, r) -> np.ndarray:
    """``int_Q ||f - m_{Q*} f||_r^q dmu`` for every member, shape (len(family),)."""
    centred = F.T[None, :, :] - _star_means(mu, F, family)[:, None, :]
    pointwise = lr_norm(centred, r, axis=2)
    return np.sum(family.members(1.0) * pointwise**q * mu.masses, axis=1)


def _oscillation_cubewise(mu, F, family, inv_p, q, k, r):
    weight = family.masses(k) ** (inv_p - 1.0 / q)
    return weight * _oscillations(mu, F, family, q, r) ** (1.0 / q)


@dataclass
class _Pairs:
    inner: np.ndarray
    outer: np.ndarray
    K: np.ndarray


def doubling_pairs(family: CubeFamily) -> _Pairs:
    """All pairs ``Q ⊂ R``, ``Q != R``, of (2, 2^(d+1))-doubling members with ``K_{Q,R}``."""
    if "pairs" in family._cache:
        return family._cache["pairs"]
    mu = family.measure
    dbl = np.flatnonzero(family.doubling_mask(2.0, default_beta(mu.dim)))
    whole = len(family) - 1
    bounded = dbl[dbl != whole]
    lo = family.centers - family.sides[:, None] / 2
    hi = family.centers + family.sides[:, None] / 2
    inner, outer, K = [], [], []
    for qi in bounded:
        Q = Cube(tuple(family.centers[qi]), family.sides[qi])
        cand = bounded[
            np.all(lo[bounded] <= lo[qi], axis=1) & np.all(hi[qi] <= hi[bounded], axis=1) & (bounded != qi)
        ]
        integral = DeltaIntegral(mu, Q)
        L = hull_sides(Q, family.centers[cand], family.sides[cand])
        inner.append(np.full(len(cand) + 1, qi))
        outer.append(np.append(cand, whole))
        K.append(1.0 + integral(np.append(L, np.inf)))
    if inner:
        out = _Pairs(np.concatenate(inner), np.concatenate(outer), np.concatenate(K))
    else:
        out = _Pairs(np.empty(0, int), np.empty(0, int), np.empty(0))
    family._cache["pairs"] = out
    return out


def _member_means(mu, F, family) -> np.ndarray:
    mem = family.members(1.0)
    return _weighted_sums(mem, F, mu.masses) / family.masses(1.0)[:, None]


def _pair_values(mu, F, family, inv_p, r) -> tuple[_Pairs, np.ndarray]:
    pairs = doubling_pairs(family)
    means = _member_means(mu, F, family)
    drift = lr_norm(means[pairs.inner] - means[pairs.outer], r, axis=1)
    weight = family.masses(1.0)[pairs.inner] ** inv_p
    return pairs, weight * drift / pairs.K


def campanato_result(mu, f, params: NormParams, family=None) -> NormResult:
    family = _family(mu, family, params.k)
    F = _values(f, mu)
    osc = _oscillation_cubewise(mu, F, family, params.inv_p, params.q, params.k, params.r)
    a, i = _pick(osc)
    pairs, vals = _pair_values(mu, F, family, params.inv_p, params.r)
    if len(vals):
        b, j = _pick(vals)
        pair = (int(pairs.inner[j]), int(pairs.outer[j]))
    else:
        b, pair = 0.0, ()
    return NormResult(
        _finite(a + b, "Campanato norm"),
        (i, *pair),
        _completeness(family, params.k),
        parts={"oscillation": a, "pair": b},
    )


def campanato_norm(mu: MeasureSpace, f, params: NormParams, family: CubeFamily | None = None) -> float:
    """Oscillation about ``m_{Q*}`` plus the doubling-pair drift ``mu(Q)^(1/p)|m_Q - m_R|/K``."""
    return campanato_result(mu, f, params, family).value


RBMO_PARAMS = dict(p=math.inf, q=1.0, k=1.5)


def rbmo_result(mu, f, family=None, r: float = 2.0) -> NormResult:
    return campanato_result(mu, f, NormParams(r=r, **RBMO_PARAMS), family)


def rbmo_norm(mu: MeasureSpace, f, family: CubeFamily | None = None) -> float:
    """``sup mu(3/2 Q)^-1 int_Q |f - m_{Q*}f| + sup |m_Q f - m_R f| / K_{Q,R}``."""
    return rbmo_result(mu, f, family).value


# ----------------------------------------------------------- sharp maximal


def sharp_maximal_all(mu: MeasureSpace, f, family: CubeFamily | None = None) -> np.ndarray:
    """``M# f_j(x)`` at every atom, shape (J, N)."""
    family = _family(mu, family)
    F = _values(f, mu)
    mem = family.members(1.0)
    weight = 1.0 / family.masses(1.5)
    pairs = doubling_pairs(family)
    means = _member_means(mu, F, family)
    out = np.zeros_like(F)
    for j in range(F.shape[0]):
        Fj = F[j : j + 1]
        osc = weight * _oscillations(mu, Fj, family, 1.0, 2.0)
        per_cube = osc.copy()
        best_pair = np.zeros(len(family))
        if len(pairs.K):
            drift = np.abs(means[pairs.inner, j] - means[pairs.outer, j]) / pairs.K
            np.maximum.at(best_pair, pairs.inner, drift)
        # the two suprema are taken separately, each over cubes containing x
        first = np.max(np.where(mem, per_cube[:, None], -np.inf), axis=0)
        second = np.max(np.where(mem, best_pair[:, None], 0.0), axis=0)
        out[j] = first + second
    return out


def _atom(mu, x) -> int:
    i = mu.atom_index(as_point(x, mu.dim))
    if i is None:
        raise ValueError(f"{x} is not an atom")
    return i


def sharp_maximal(mu: MeasureSpace, f, x, family: CubeFamily | None = None) -> float:
    v = _values(f, mu)
    if v.shape[0] != 1:
        raise ValueError("use sharp_maximal_lr for vector functions")
    return float(sharp_maximal_all(mu, v, family)[0, _atom(mu, x)])


def sharp_maximal_lr(mu: MeasureSpace, F, x, r: float, family: CubeFamily | None = None) -> float:
    """``||(M# f_j(x))_j||_r``."""
    return float(lr_norm(sharp_maximal_all(mu, F, family)[:, _atom(mu, x)], r))


def sup_sharp_maximal_lr(mu: MeasureSpace, F, r: float, family: CubeFamily | None = None) -> float:
    return float(np.max(lr_norm(sharp_maximal_all(mu, F, family), r, axis=0)))


# ------------------------------------------------------------ vector forms


def _lr_params(params: NormParams, r):
    return params if r is None else NormParams(params.p, params.q, params.k, params.beta, r)


def morrey_norm_lr(mu, F, params: NormParams, family=None, r=None) -> float:
    return morrey_norm(mu, F, _lr_params(params, r), family)


def morrey_norm_doubling_lr(mu, F, params: NormParams, family=None, r=None) -> float:
    return morrey_norm_doubling(mu, F, _lr_params(params, r), family)


def campanato_norm_lr(mu, F, params: NormParams, family=None, r=None) -> float:
    return campanato_norm(mu, F, _lr_params(params, r), family)


# --------------------------------------------------------------- net limit


def net_limit(mu: MeasureSpace, f, seed: AnyCube | None = None) -> float:
    """Limit of ``m_Q f`` along doubling cubes increasing to R^d.

    Follows the doubling chain from ``seed`` (default: ``Q*`` of a small cube
    at the first atom) until it reaches R^d and returns the last mean.
    """
    if seed is None:
        seed = q_star(mu, Cube(mu.atom(0), 1.0))
    elif isinstance(seed, Cube):
        seed = q_star(mu, seed)
    if isinstance(seed, WholeSpace):
        return mean(mu, f, seed)
    chain = lemma3_chain(mu, seed)
    return mean(mu, f, chain[-1])


def _completeness(family: CubeFamily, *factors) -> str:
    return family.completeness if family.is_exact_for(*factors) else "heuristic"
