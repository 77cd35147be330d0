"""Closed-form evaluation of delta(Q, R), K_{Q,R} and the dyadic variant K^(alpha)."""

from __future__ import annotations

import math

import numpy as np

from .geometry import AnyCube, Cube, WholeSpace, concentric_hull, dilate, is_subset
from .measure import MeasureSpace, mass_of, radial_profile


def c_n(n: float) -> float:
    """``sum_{k>=0} 2^(-n k)``."""
    return 1.0 / (1.0 - 2.0 ** (-n))


class DeltaIntegral:
    """``L -> int_{l(Q)}^{L} mu(Q(z_Q, l)) l^(-n) dl/l`` for a fixed bounded ``Q``.

    The radial profile is a step function, so the integral is a finite sum
    of ``m (a^-n - b^-n) / n`` terms. ``L = inf`` is allowed.
    """

    def __init__(self, mu: MeasureSpace, Q: Cube):
        if not isinstance(Q, Cube):
            raise ValueError("delta needs a bounded inner cube")
        self.n = n = mu.n
        self.lower = Q.side
        prof = radial_profile(mu, Q.center)
        later = prof.breakpoints[prof.breakpoints > Q.side]
        self.knots = np.concatenate([[Q.side], later])
        self.levels = prof.values(self.knots)
        if self.levels[0] <= 0:
            raise ValueError("delta needs mu(Q) > 0")
        pieces = self.levels[:-1] * (self.knots[:-1] ** -n - self.knots[1:] ** -n) / n
        self.cumulative = np.concatenate([[0.0], np.cumsum(pieces)])

    def __call__(self, upper):
        upper = np.asarray(upper, dtype=float)
        if np.any(upper < self.lower):
            raise ValueError("upper limit below l(Q)")
        j = np.searchsorted(self.knots, upper, side="right") - 1
        with np.errstate(divide="ignore"):
            tail = self.levels[j] * (self.knots[j] ** -self.n - upper ** -self.n) / self.n
        out = self.cumulative[j] + tail
        return float(out) if out.ndim == 0 else out


def _check_pair(mu: MeasureSpace, Q: AnyCube, R: AnyCube):
    if not isinstance(Q, Cube):
        raise ValueError("delta is only defined for a bounded inner cube")
    if not is_subset(Q, R):
        raise ValueError("delta(Q, R) requires Q contained in R")
    if mass_of(mu, Q) <= 0:
        raise ValueError("delta(Q, R) requires mu(Q) > 0")


def delta(mu: MeasureSpace, Q: Cube, R: AnyCube) -> float:
    _check_pair(mu, Q, R)
    hull = concentric_hull(Q, R)
    return DeltaIntegral(mu, Q)(hull.side)


def k_coeff(mu: MeasureSpace, Q: Cube, R: AnyCube) -> float:
    return 1.0 + delta(mu, Q, R)


def hull_sides(Q: Cube, centers: np.ndarray, sides: np.ndarray) -> np.ndarray:
    """Vectorised ``l(Q_R)`` for bounded ``R`` given by centers/sides."""
    z = np.asarray(Q.center)
    reach = np.max(np.abs(centers - z) + sides[:, None] / 2, axis=1)
    return np.maximum(Q.side, 2 * reach)


def dyadic_cover_index(Q: Cube, R: AnyCube) -> int:
    """Least ``j >= 0`` with ``2^j Q`` containing ``R``."""
    if isinstance(R, WholeSpace):
        raise ValueError("no dilate of a bounded cube contains R^d")
    j = 0
    while not is_subset(R, dilate(Q, 2.0**j)):
        j += 1
    return j


def k_alpha(mu: MeasureSpace, Q: Cube, R: AnyCube, alpha: float) -> float:
    """``1 + sum_{k=1}^{N} (mu(2^k Q) / l(2^k Q)^n)^((n - alpha) / n)``, ``N`` the dyadic cover index."""
    n = mu.n
    if not (0 < alpha < n):
        raise ValueError(f"alpha must lie in (0, {n})")
    if not isinstance(Q, Cube) or not isinstance(R, Cube):
        raise ValueError("K^(alpha) needs bounded cubes")
    if not is_subset(Q, R):
        raise ValueError("K^(alpha) requires Q contained in R")
    N = dyadic_cover_index(Q, R)
    expo = (n - alpha) / n
    total = 1.0
    for k in range(1, N + 1):
        big = dilate(Q, 2.0**k)
        total += (mass_of(mu, big) / big.side**n) ** expo
    if not math.isfinite(total):
        raise ArithmeticError("non-finite K^(alpha)")
    return total
