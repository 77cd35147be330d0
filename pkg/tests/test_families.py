import itertools

import numpy as np
import pytest

from morreykit.doubling import q_star
from morreykit.families import (
    Breakpoints,
    Dyadic,
    Exact1D,
    Sampled,
    Union_,
    build_family,
    default_family,
    enumerate_patterns_1d,
    family_union,
)
from morreykit.geometry import WHOLE_SPACE, Cube, dilate
from morreykit.measure import MeasureSpace

from conftest import random_measure_1d
from oracles import pattern_lp


def _range(mask):
    idx = np.flatnonzero(mask)
    return (int(idx[0]), int(idx[-1])) if idx.size else None


@pytest.mark.parametrize("k", [1.5, 2.0, 3.0])
def test_patterns_match_linear_programming_oracle(k):
    rng = np.random.default_rng(int(k * 10))
    for _ in range(6):
        mu = random_measure_1d(rng, size=int(rng.integers(2, 6)))
        x = np.sort(mu.positions[:, 0])
        N = len(x)
        found = {(p.inner, p.outer) for p in enumerate_patterns_1d(mu, k)}
        feasible = set()
        for i, j in itertools.combinations_with_replacement(range(N), 2):
            for a in range(i + 1):
                for c in range(j, N):
                    if pattern_lp(x, (i, j), (a, c), k) > 1e-9:
                        feasible.add(((i, j), (a, c)))
        assert found == feasible


def test_patterns_cover_random_cubes_and_witnesses_realise_them():
    rng = np.random.default_rng(5)
    for _ in range(10):
        mu = random_measure_1d(rng)
        order = np.argsort(mu.positions[:, 0])
        pats = enumerate_patterns_1d(mu, 2.0)
        found = {(p.inner, p.outer) for p in pats}
        for p in pats:
            Q = p.witness
            assert _range(mu.membership(Q)[order]) == p.inner
            assert _range(mu.membership(dilate(Q, 2.0))[order]) == p.outer
        centers = rng.uniform(-5, 25, 3000)
        sides = np.exp(rng.uniform(np.log(1e-3), np.log(60), 3000))
        for c, s in zip(centers, sides):
            Q = Cube((c,), s)
            inner = _range(mu.membership(Q)[order])
            if inner is not None:
                assert (inner, _range(mu.membership(dilate(Q, 2.0))[order])) in found


def _signature(mu, Q, order):
    sig = [_range(mu.membership(dilate(Q, r))[order]) for r in (1.0, 1.5, 2.0)]
    sig.append(_range(mu.membership(q_star(mu, Q))[order]) if not q_star(mu, Q) is WHOLE_SPACE else "all")
    return tuple(sig)


def test_exact_family_covers_star_patterns():
    rng = np.random.default_rng(8)
    for _ in range(6):
        mu = random_measure_1d(rng)
        order = np.argsort(mu.positions[:, 0])
        fam = build_family(mu, Exact1D(k=2.0))
        sigs = {_signature(mu, fam.cube(i), order) for i in range(fam.n_bounded)}
        for c, s in zip(rng.uniform(-5, 25, 1500), np.exp(rng.uniform(np.log(1e-3), np.log(60), 1500))):
            Q = Cube((c,), s)
            if mu.membership(Q).any():
                assert _signature(mu, Q, order) in sigs


def test_star_members_agree_with_direct_search():
    rng = np.random.default_rng(2)
    mu = random_measure_1d(rng, size=7)
    fam = build_family(mu, Exact1D(k=2.0))
    star = fam.star_members()
    for i in range(fam.n_bounded):
        assert np.array_equal(star[i], mu.membership(q_star(mu, fam.cube(i))))


def test_family_rows_and_completeness():
    mu = MeasureSpace([0.0, 1.0, 3.0], [1.0, 2.0, 4.0])
    fam = build_family(mu, Exact1D(k=2.0))
    assert fam.cube(len(fam) - 1) is WHOLE_SPACE
    assert fam.members(1.0)[-1].all()
    assert fam.is_exact_for(2.0, 1.5) and not fam.is_exact_for(3.0)
    assert np.all(fam.masses(1.0)[:-1] > 0)


def test_heuristic_families_are_marked_and_nonempty():
    rng = np.random.default_rng(0)
    mu = MeasureSpace(rng.uniform(0, 10, (6, 2)), rng.uniform(1, 2, 6))
    fam = default_family(mu, samples=300)
    assert fam.completeness == "heuristic" and not fam.is_exact_for(2.0)
    assert np.all(fam.masses(1.0) > 0)
    root = Cube((5.0, 5.0), 12.0)
    for spec in (Dyadic(root, 3), Breakpoints(), Sampled(100, 1), Union_((Breakpoints(), Sampled(50))) ):
        f = build_family(mu, spec)
        assert f.n_bounded > 0 and np.all(f.masses(1.0) > 0)


def test_exact_family_refuses_higher_dimensions():
    mu = MeasureSpace([[0.0, 0.0], [1.0, 1.0]], [1.0, 1.0])
    with pytest.raises(ValueError):
        build_family(mu, Exact1D())


def test_family_union_appends_cubes():
    mu = MeasureSpace([0.0, 1.0, 3.0], [1.0, 2.0, 4.0])
    fam = build_family(mu, Exact1D(k=2.0))
    extra = Cube((0.0,), 1234.0)
    bigger = family_union(fam, [extra, WHOLE_SPACE, Cube((100.0,), 1.0)])
    assert bigger.n_bounded == fam.n_bounded + 1
    assert bigger.completeness == fam.completeness
