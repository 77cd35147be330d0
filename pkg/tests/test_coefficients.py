import numpy as np
import pytest

from morreykit.coefficients import (
    DeltaIntegral,
    c_n,
    delta,
    dyadic_cover_index,
    hull_sides,
    k_alpha,
    k_coeff,
)
from morreykit.geometry import WHOLE_SPACE, Cube, concentric_hull
from morreykit.measure import MeasureSpace

from oracles import quad_delta

MU = MeasureSpace([0.0, 0.9], [1.0, 10.0], 1.0)


def test_delta_examples():
    one = MeasureSpace([0.0], [1.0], 1.0)
    assert delta(one, Cube((0.0,), 1.0), Cube((0.0,), 2.0)) == pytest.approx(0.5, rel=1e-12)
    assert k_coeff(one, Cube((0.0,), 1.0), Cube((0.0,), 2.0)) == pytest.approx(1.5, rel=1e-12)
    d = delta(MU, Cube((0.0,), 1.0), Cube((0.0,), 4.0))
    assert d == pytest.approx(4 / 9 + 11 * (1 / 1.8 - 1 / 4), rel=1e-12)
    assert d == pytest.approx(3.805556, abs=5e-7)
    assert k_coeff(MU, Cube((0.0,), 1.0), Cube((0.0,), 4.0)) == pytest.approx(4.805556, abs=5e-7)
    assert delta(MU, Cube((0.0,), 1.0), Cube((0.0,), 1.0)) == 0.0


def test_delta_against_quadrature():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = float(rng.choice([0.5, 1.0]))
        pos = np.unique(rng.uniform(0, 10, 6).round(3))
        mu = MeasureSpace(pos, rng.uniform(0.1, 5, len(pos)), n)
        Q = Cube(mu.atom(int(rng.integers(mu.size))), float(rng.uniform(0.05, 4)))
        if rng.uniform() < 0.2:
            R = WHOLE_SPACE
        else:
            off = float(rng.uniform(-3, 3))
            R = Cube((Q.center[0] + off,), Q.side + 2 * abs(off) + float(rng.uniform(0, 20)))
        assert delta(mu, Q, R) == pytest.approx(quad_delta(mu, Q, R), rel=1e-9, abs=1e-300)


def test_delta_integral_vectorised():
    Q = Cube((0.0,), 1.0)
    I = DeltaIntegral(MU, Q)
    Ls = np.array([1.0, 1.5, 1.8, 4.0, np.inf])
    vals = I(Ls)
    for L, v in zip(Ls[:-1], vals[:-1]):
        assert v == pytest.approx(delta(MU, Q, Cube((0.0,), L)), rel=1e-14, abs=0)
    assert vals[-1] == pytest.approx(delta(MU, Q, WHOLE_SPACE), rel=1e-14)


def test_hull_sides_match_scalar_hull():
    rng = np.random.default_rng(1)
    Q = Cube((0.3, -0.2), 0.7)
    c = rng.uniform(-5, 5, (40, 2))
    s = rng.uniform(0.1, 6, 40)
    got = hull_sides(Q, c, s)
    for ci, si, g in zip(c, s, got):
        assert g == pytest.approx(concentric_hull(Q, Cube(tuple(ci), si)).side, rel=1e-14)


def test_delta_preconditions():
    with pytest.raises(ValueError):
        delta(MU, Cube((0.0,), 4.0), Cube((0.0,), 1.0))
    with pytest.raises(ValueError):
        delta(MU, Cube((50.0,), 1.0), Cube((50.0,), 4.0))


def test_k_alpha_examples():
    one = MeasureSpace([0.0], [1.0], 1.0)
    Q = Cube((0.0,), 1.0)
    assert k_alpha(one, Q, Cube((0.0,), 4.0), 0.5) == pytest.approx(1 + 0.5**0.5 + 0.25**0.5, rel=1e-12)
    assert k_alpha(one, Q, Cube((0.0,), 4.0), 0.5) == pytest.approx(2.207107, abs=5e-7)
    assert k_alpha(one, Q, Q, 0.5) == 1.0
    assert k_alpha(one, Q, Cube((0.0,), 4.0), 1 - 1e-12) == pytest.approx(3.0, rel=1e-9)
    assert dyadic_cover_index(Q, Cube((0.6,), 0.1)) == 1


def test_c_n():
    assert c_n(1.0) == 2.0
