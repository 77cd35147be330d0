"""Doubling cubes, Q*, the doubling chain construction and Besicovitch selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import WHOLE_SPACE, AnyCube, Cube, WholeSpace, as_point, dilate, is_subset
from .measure import MeasureSpace, mass_of


def default_beta(d: int) -> float:
    return 2.0 ** (d + 1)


def is_doubling(mu: MeasureSpace, Q: AnyCube, k: float = 2.0, beta: float | None = None) -> bool:
    """``mu(kQ) <= beta mu(Q)``; R^d always qualifies."""
    if beta is None:
        beta = default_beta(mu.dim)
    if isinstance(Q, WholeSpace):
        return True
    m = mass_of(mu, Q)
    if m <= 0:
        raise ValueError("doubling test needs mu(Q) > 0")
    return mass_of(mu, dilate(Q, k)) <= beta * m


def q_star(mu: MeasureSpace, Q: AnyCube) -> AnyCube:
    """Smallest ``2^j Q`` (``j >= 0``) that is (2, 2^(d+1))-doubling."""
    if isinstance(Q, WholeSpace):
        return Q
    if mass_of(mu, Q) <= 0:
        raise ValueError("Q* needs mu(Q) > 0")
    j = 0
    while not is_doubling(mu, dilate(Q, 2.0**j)):
        j += 1
    return dilate(Q, 2.0**j)


def largest_small_doubling(mu: MeasureSpace, x, Q: Cube, k: float, beta: float) -> tuple[Cube, int]:
    """``Q(x, k^-j l(Q))`` for the smallest ``j >= 1`` that is (k, beta)-doubling.

    Returns the cube and ``j``. Existence is guaranteed only at atoms: once
    the cube isolates ``x`` from the rest of the support it is doubling.
    """
    x = as_point(x, mu.dim)
    if mu.atom_index(x) is None:
        raise ValueError(f"{x} is not an atom of the measure")
    if not k > 1:
        raise ValueError("k must exceed 1")
    j = 1
    while True:
        R = Cube(x, Q.side * k ** (-j))
        if is_doubling(mu, R, k, beta):
            return R, j
        j += 1


def besicovitch_select(centers, side: float) -> list[int]:
    """Greedy lexicographic selection of equal cubes ``Q(c, side)``.

    A centre is kept iff its sup-distance to every kept centre exceeds
    ``side / 2``. Every input centre then lies in a kept cube, and kept
    cubes overlap at most ``2^d`` deep. Returns indices into ``centers``.
    """
    pts = np.asarray(centers, dtype=float)
    if pts.size == 0:
        return []
    if pts.ndim == 1:
        pts = pts[:, None]
    order = np.lexsort(pts.T[::-1])
    kept: list[int] = []
    for i in order:
        if all(np.max(np.abs(pts[i] - pts[j])) > side / 2 for j in kept):
            kept.append(int(i))
    return kept


@dataclass(frozen=True)
class DoublingChain:
    """Concentric doubling cubes ``R_1 ⊂ R_2 ⊂ ... ⊂ R_K``; ``R_K`` may be R^d."""

    cubes: tuple
    measure: MeasureSpace

    def __len__(self):
        return len(self.cubes)

    def __getitem__(self, i):
        return self.cubes[i]

    def masses(self) -> list[float]:
        return [mass_of(self.measure, R) for R in self.cubes]

    def locate(self, I: AnyCube) -> int | None:
        """Index ``k`` with ``R_k ⊂ I ⊂ R_{k+1}`` (0-based), if any."""
        for k in range(len(self.cubes) - 1):
            if is_subset(self.cubes[k], I) and is_subset(I, self.cubes[k + 1]):
                return k
        return None


def lemma3_chain(mu: MeasureSpace, R: Cube) -> DoublingChain:
    """Doubling cubes around ``R`` whose masses at least double at each step.

    ``R_{k+1}`` is the smallest doubling ``2^l R_k`` with ``l >= 3`` and
    ``mu > 2^k mu(R)``; once ``mu(R^d) <= 2^k mu(R)`` the chain ends with R^d.
    """
    if not isinstance(R, Cube):
        raise ValueError("the chain starts from a bounded cube")
    if mass_of(mu, R) <= 0 or not is_doubling(mu, R):
        raise ValueError("the chain must start from a doubling cube of positive measure")
    base = mass_of(mu, R)
    total = mu.total_mass
    cubes: list[AnyCube] = [R]
    k = 1
    while True:
        if total <= 2**k * base:
            cubes.append(WHOLE_SPACE)
            break
        cur = cubes[-1]
        l = 3
        while True:
            cand = dilate(cur, 2.0**l)
            if mass_of(mu, cand) > 2**k * base and is_doubling(mu, cand):
                break
            l += 1
        cubes.append(cand)
        k += 1
    return DoublingChain(tuple(cubes), mu)


def chain_is_nested(chain: DoublingChain) -> bool:
    return all(is_subset(a, b) for a, b in zip(chain.cubes, chain.cubes[1:]))
