"""Exact cell decomposition of the space of 1-d cubes.

A cube ``[u, v]`` on the line is a point of the half plane ``u <= v``.  The
dilate ``rho Q`` has endpoints that are linear in ``(u, v)``, so the set of
cubes sharing a membership pattern is a convex polygon cut out by lines of
the form ``left_rho(u, v) = x_i`` and ``right_rho(u, v) = x_i``.  Cells are
produced by repeatedly clipping convex polygons; every cell keeps an
interior witness point.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

_SLIVER = 1e-13


def left_weights(rho: float) -> tuple[float, float]:
    return ((1 + rho) / 2, (1 - rho) / 2)


def right_weights(rho: float) -> tuple[float, float]:
    return ((1 - rho) / 2, (1 + rho) / 2)


# Polygons are short lists of (u, v) tuples; plain floats beat numpy at this size.


def clip(poly: list, w, t: float, below: bool) -> list:
    """Sutherland-Hodgman clip of a convex polygon against ``w.p <= t`` (or ``>=``)."""
    w0, w1 = w
    sign = 1.0 if below else -1.0
    s = [sign * (u * w0 + v * w1 - t) for u, v in poly]
    out = []
    k = len(poly)
    for i in range(k):
        p, sp = poly[i], s[i]
        j = (i + 1) % k
        q, sq = poly[j], s[j]
        if sp <= 0:
            out.append(p)
        if (sp < 0 < sq) or (sq < 0 < sp):
            f = sp / (sp - sq)
            out.append((p[0] + (q[0] - p[0]) * f, p[1] + (q[1] - p[1]) * f))
    return out


def area(poly: list) -> float:
    k = len(poly)
    if k < 3:
        return 0.0
    acc = 0.0
    for i in range(k):
        u0, v0 = poly[i]
        u1, v1 = poly[(i + 1) % k]
        acc += u0 * v1 - v0 * u1
    return 0.5 * abs(acc)


def _level(poly, w) -> float:
    return sum(u * w[0] + v * w[1] for u, v in poly) / len(poly)


def split(poly: list, w, thresholds: list, min_area: float):
    """Cut ``poly`` along ``w.p = t`` for each threshold.

    Yields ``(bin, piece)`` where ``bin = j`` means ``t[j-1] < w.p <= t[j]``
    on the piece's interior.
    """
    vals = [u * w[0] + v * w[1] for u, v in poly]
    lo, hi = min(vals), max(vals)
    i0 = bisect_right(thresholds, lo)
    i1 = bisect_left(thresholds, hi)
    rest = poly
    for idx in range(i0, i1):
        t = thresholds[idx]
        piece = clip(rest, w, t, below=True)
        rest = clip(rest, w, t, below=False)
        if area(piece) > min_area:
            yield bisect_left(thresholds, _level(piece, w)), piece
        if len(rest) < 3:
            return
    if area(rest) > min_area:
        yield bisect_left(thresholds, _level(rest, w)), rest


@dataclass(frozen=True)
class Cell:
    """One realizable membership pattern with an interior witness cube.

    ``ranges[rho]`` is the inclusive range ``(first, last)`` of sorted-atom
    indices inside ``rho Q``; ``star`` is the exponent ``j`` of ``Q* = 2^j Q``
    (or None when not tracked).
    """

    center: float
    side: float
    ranges: tuple
    star: int | None


def enumerate_cells(
    x: np.ndarray,
    masses: np.ndarray,
    dilations=(),
    track_star: bool = False,
    beta_star: float = 4.0,
) -> list[Cell]:
    """All realizable memberships of ``(Q, rho Q ...)`` for sorted atoms ``x``.

    With ``track_star`` the cells are refined along ``2Q, 4Q, ...`` until the
    first ``(2, beta_star)``-doubling dilate is determined.
    """
    x = np.asarray(x, dtype=float)
    masses = np.asarray(masses, dtype=float)
    N = len(x)
    if N == 0:
        return []
    if np.any(np.diff(x) <= 0):
        raise ValueError("atom positions must be strictly increasing")
    factors = sorted({float(r) for r in dilations if r != 1} | ({2.0} if track_star else set()))
    if any(r < 1 for r in factors):
        raise ValueError("dilation factors must be >= 1")
    span = float(x[-1] - x[0])
    probe = sorted(set(factors) | {1.0, 2.0, 4.0})
    min_diff = min(b - a for a, b in zip(probe, probe[1:]))
    # every vertex of the arrangement sits below this sidelength
    L = 2 * span / min_diff + 2 * span + 1.0
    min_area = _SLIVER * L * L
    xs = x.tolist()
    cum = np.concatenate([[0.0], np.cumsum(masses)])

    def mass(rng):
        return cum[rng[1] + 1] - cum[rng[0]]

    def refine(poly, rng, rho):
        a, b = rng
        for jl, pl in split(poly, left_weights(rho), xs[:a], min_area):
            for jr, pr in split(pl, right_weights(rho), xs[b + 1:], min_area):
                yield pr, (jl, b + jr)

    cells = []
    for a in range(N):
        lo = x[a - 1] if a > 0 else x[0] - L
        for b in range(a, N):
            hi = x[b + 1] if b + 1 < N else x[-1] + L
            xa, xb, lo, hi = float(x[a]), float(x[b]), float(lo), float(hi)
            rect = [(lo, xb), (xa, xb), (xa, hi), (lo, hi)]
            stack = [(rect, ((1.0, (a, b)),))]
            for rho in factors:
                nxt = []
                for poly, sig in stack:
                    prev = sig[-1][1]
                    for piece, rng in refine(poly, prev, rho):
                        nxt.append((piece, sig + ((rho, rng),)))
                stack = nxt
            for poly, sig in stack:
                ranges = dict(sig)
                if not track_star:
                    cells.append(_cell(poly, sig, None))
                    continue
                todo = [(poly, ranges[1.0], ranges[2.0], 0)]
                while todo:
                    p, inner, outer, j = todo.pop()
                    if mass(outer) <= beta_star * mass(inner):
                        cells.append(_cell(p, sig, j))
                        continue
                    for piece, rng in refine(p, outer, 2.0 ** (j + 2)):
                        todo.append((piece, outer, rng, j + 1))
    return cells


def _cell(poly, sig, star) -> Cell:
    u = sum(p[0] for p in poly) / len(poly)
    v = sum(p[1] for p in poly) / len(poly)
    return Cell(center=float((u + v) / 2), side=float(v - u), ranges=tuple(sig), star=star)
