"""Acceptance criteria, one test each, at the stated tolerances.

Each test appends a PASS/FAIL line to ``RESULTS``; the lines are printed in
the terminal summary (see conftest.py) and when this file is run directly.
"""

import math

import numpy as np
import pytest

from morreykit import functionals as fn
from morreykit.coefficients import delta, k_alpha
from morreykit.doubling import lemma3_chain, q_star
from morreykit.families import Exact1D, Sampled, build_family
from morreykit.geometry import WHOLE_SPACE, Cube
from morreykit.measure import MeasureSpace
from morreykit.verify import baselines as bl
from morreykit.verify.corpus import make_corpus
from morreykit.verify.suites import check_besicovitch, check_lemma2, run_suite, theorem1_constant

from oracles import quad_delta

RESULTS = {}
SEED = bl.REFERENCE_SEED
COUNT = 500
# seeds other than the reference, fixed before any comparison was made
OTHER_SEEDS = (1, 2, 3)

_cache = {}


def _suite(name):
    if name not in _cache:
        _cache[name] = run_suite(name, SEED, COUNT)
    return _cache[name]


def record(number, ok, detail):
    RESULTS[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, RESULTS[number]


def _records(rep, prefix):
    return [r for r in rep.records if r.identifier.startswith(prefix)]


def test_criterion_01_doubling_norm_left_bound():
    rep = _suite("theorem1")
    left = _records(rep, "left")
    bad = [r for r in left if not r.passed]
    ok = len(left) == COUNT and not bad
    record(1, ok, f"||f||_d <= sqrt(5) ||f:M||, {len(left)} instances, {len(bad)} violations (slack 1e-9)")


def test_criterion_02_doubling_norm_right_bound():
    rep = _suite("theorem1")
    right = _records(rep, "right")
    bad = [r for r in right if not r.passed]
    C = theorem1_constant(1, 2, 1, 2, 5)
    worst = max(r.ratio for r in right) * C
    ok = len(right) == COUNT and not bad and abs(C - 67.78) < 0.01
    record(2, ok, f"||f:M||/||f||_d <= {C:.4f}, {len(right)} instances, worst ratio {worst:.4g}, {len(bad)} violations")


def test_criterion_03_delta_growth_items():
    rep = _suite("lemma2")
    items = [r for r in rep.records if r.identifier in ("item1", "item2", "item3")]
    draws = len([r for r in items if r.identifier == "item1"])
    bad = [r for r in items if not r.passed]
    ok = draws >= 2000 and not bad
    record(3, ok, f"items (1)-(3) over {draws} random (Q, rho) draws, {len(bad)} failures (slack 1e-9)")


def test_criterion_04_quasi_additivity_baseline():
    key = "lemma2.item4_defect_over_C0"
    packaged = bl.load()[key]["value"]
    ref = _suite("lemma2").observed[key]
    finite = all(math.isfinite(r.lhs) for r in _records(_suite("lemma2"), "item4"))
    others = {s: check_lemma2(make_corpus(s, COUNT, exponents=(0.5, 0.75, 1.0))).observed[key] for s in OTHER_SEEDS}
    worst = max(v / packaged for v in others.values())
    ok = finite and ref == packaged and worst <= 1 + bl.TOLERANCE
    shown = ", ".join(f"seed {s}: {v:.4f}" for s, v in others.items())
    record(4, ok, f"defect/C0 baseline {packaged:.4f} (seed {SEED}); {shown}; worst excess {100 * (worst - 1):+.1f}%")


def _signatures(x, m, centers, sides, factors=(1.0, 1.5, 2.0)):
    """Sorted-index ranges of rho Q for each factor plus Q*, one row per cube."""
    cols = []
    for rho in factors:
        mask = np.abs(x[None, :] - centers[:, None]) <= rho * sides[:, None] / 2
        cols.append(_ranges(mask))
    cols.append(_star_ranges(x, m, centers, sides))
    return np.hstack(cols)


def _ranges(mask):
    N = mask.shape[1]
    first = np.where(mask.any(axis=1), mask.argmax(axis=1), -1)
    last = np.where(mask.any(axis=1), N - 1 - mask[:, ::-1].argmax(axis=1), -1)
    return np.stack([first, last], axis=1)


def _star_ranges(x, m, centers, sides):
    out = np.zeros((len(sides), 2), dtype=int)
    factor = np.ones(len(sides))
    todo = np.arange(len(sides))
    while todo.size:
        a = np.abs(x[None, :] - centers[todo, None]) <= factor[todo, None] * sides[todo, None] / 2
        b = np.abs(x[None, :] - centers[todo, None]) <= 2 * factor[todo, None] * sides[todo, None] / 2
        done = b @ m <= 4 * (a @ m)
        out[todo[done]] = _ranges(a)[done]
        factor[todo[~done]] *= 2
        todo = todo[~done]
    return out



def test_criterion_05_exact_family_optimality():
    corpus = make_corpus(SEED, 100, J=3)
    bad_value, bad_pattern, equal = [], 0, 0
    total = 0
    for inst in corpus:
        mu = inst.measure
        order = np.argsort(mu.positions[:, 0])
        x, m = mu.positions[order, 0], mu.masses[order]
        exact = build_family(mu, Exact1D(k=2.0))
        sampled = build_family(mu, Sampled(100_000, inst.index))
        total += sampled.n_bounded
        sig_exact = {tuple(r) for r in _signatures(x, m, exact.centers[:, 0], exact.sides)}
        sig_sampled = _signatures(x, m, sampled.centers[:, 0], sampled.sides)
        bad_pattern += sum(tuple(r) not in sig_exact for r in np.unique(sig_sampled, axis=0))
        F, f = inst.values, inst.values[0]
        P = fn.NormParams(2.0, 1.0, 2.0, 5.0)
        checks = {
            "morrey": lambda fam: fn.morrey_norm(mu, f, P, fam),
            "doubling": lambda fam: fn.morrey_norm_doubling(mu, f, P, fam),
            "morrey_lr": lambda fam: fn.morrey_norm_lr(mu, F, P, fam),
            "campanato_osc": lambda fam: float(np.max(fn._oscillation_cubewise(mu, F[:1], fam, 0.5, 1.0, 2.0, 2.0))),
            "rbmo_osc": lambda fam: float(np.max(fn._oscillation_cubewise(mu, F[:1], fam, 0.0, 1.0, 1.5, 2.0))),
        }
        for name, g in checks.items():
            e, s = g(exact), g(sampled)
            if s > e * (1 + 1e-12):
                bad_value.append((inst.index, name, e, s))
            equal += s == pytest.approx(e, rel=1e-12)
    ok = not bad_value and bad_pattern == 0
    record(
        5,
        ok,
        f"100 instances x 1e5 sampled cubes: {len(bad_value)} value excesses, {bad_pattern} unseen patterns, "
        f"sampled max reached exact value in {equal}/500 norm evaluations",
    )


def test_criterion_06_chain_inequality_and_invariants():
    rep = _suite("theorem2")
    steps = _records(rep, "chain_step")
    inv = _records(rep, "lemma3")
    bad = [r for r in steps + inv if not r.passed]
    ok = steps and inv and not bad
    record(6, ok, f"{len(steps)} chain steps, {len(inv)} chain invariants, {len(bad)} failures (slack 1e-9)")


def test_criterion_07_net_limit_and_equivalence_constants():
    rep = _suite("prop1")
    nets = _records(rep, "net_limit")
    bad = [r for r in nets if not r.passed]
    t2 = _suite("theorem2").observed
    t3 = _suite("theorem3").observed
    keys = ["theorem2.morrey_over_campanato", "theorem2.campanato_over_morrey",
            "theorem3.morrey_over_campanato", "theorem3.campanato_over_morrey"]
    vals = {**t2, **t3}
    stored = bl.load()
    finite = all(math.isfinite(vals[k]) and k in stored for k in keys)
    ok = nets and not bad and finite
    shown = ", ".join(f"{k.split('.')[0]} {vals[k]:.3g}" for k in keys)
    record(7, ok, f"net limit = global mean to 1e-12 on {len(nets)} seeds ({len(bad)} off); constants {shown}")


def test_criterion_08_besicovitch():
    rep = check_besicovitch(SEED, 1000)
    thm = _suite("theorem1")
    card = _records(thm, "besicovitch.cardinality")
    other = _records(thm, "besicovitch")
    bad = rep.failures() + [r for r in other if not r.passed]
    ok = rep.count == 1000 and card and not bad
    record(8, ok, f"1000 random center sets + {len(card)} replicated levels: {len(bad)} failures")


def test_criterion_09_pair_terms_and_reductions():
    rep = _suite("prop3")
    b6 = [r for r in rep.records if r.identifier.startswith("b6")]
    bad = [r for r in b6 if not r.passed]
    mismatches = 0
    for inst in make_corpus(SEED, 20):
        mu, f = inst.measure, inst.values[0]
        fam = build_family(mu, Exact1D(k=2.0))
        P = fn.NormParams(2.0, 1.0, 2.0, 5.0)
        F3 = np.vstack([f, np.zeros_like(f), np.zeros_like(f)])
        for scalar, vector in ((fn.morrey_norm, fn.morrey_norm_lr), (fn.campanato_norm, fn.campanato_norm_lr),
                               (fn.morrey_norm_doubling, fn.morrey_norm_doubling_lr)):
            s = scalar(mu, f, P, fam)
            mismatches += vector(mu, f[None, :], P, fam) != s
            mismatches += vector(mu, F3, P, fam) != s
        s = fn.sharp_maximal_all(mu, f, fam)[0]
        mismatches += np.any(fn.lr_norm(fn.sharp_maximal_all(mu, F3, fam), 2.0, axis=0) != np.abs(s))
    ok = b6 and not bad and mismatches == 0
    record(9, ok, f"{len(b6)} pair-vs-sharp checks with c = 1, {len(bad)} failures; {mismatches} reduction mismatches")


def test_criterion_10_delta_against_quadrature():
    rng = np.random.default_rng(SEED)
    worst, count = 0.0, 0
    while count < 1000:
        n = float(rng.choice([0.5, 0.75, 1.0]))
        pos = np.unique(np.round(rng.uniform(0, 100, int(rng.integers(1, 13))), 4))
        mu = MeasureSpace(pos, 10 ** rng.uniform(-2, 2, len(pos)), n)
        Q = Cube(mu.atom(int(rng.integers(mu.size))), float(np.exp(rng.uniform(np.log(0.01), np.log(50)))))
        if count % 5 == 0:
            R = WHOLE_SPACE
        else:
            off = float(rng.uniform(-20, 20))
            R = Cube((Q.center[0] + off,), Q.side + 2 * abs(off) + float(rng.exponential(20)))
        got, want = delta(mu, Q, R), quad_delta(mu, Q, R)
        worst = max(worst, abs(got - want) / max(abs(want), 1e-300))
        count += 1
    ok = worst <= 1e-9
    record(10, ok, f"closed-form delta vs adaptive quadrature on 1000 pairs (200 with R = R^d): worst rel. error {worst:.2e}")


def test_criterion_11_worked_examples():
    two = MeasureSpace([0.0, 1.0], [1.0, 1.0])
    P = fn.NormParams(2.0, 1.0, 2.0, 5.0)
    mu = MeasureSpace([0.0, 0.9], [1.0, 10.0], 1.0)
    single = MeasureSpace([0.0], [1.0], 1.0)
    three = MeasureSpace([0.0, 10.0, 100.0], [1.0, 1.0, 1.0])
    checks = {
        "Morrey 3/sqrt2": math.isclose(fn.morrey_norm(two, [1.0, 2.0], P), 3 / math.sqrt(2), rel_tol=1e-12),
        "Q* side 2": q_star(mu, Cube((0.0,), 1.0)) == Cube((0.0,), 2.0),
        "delta 3.805556": abs(delta(mu, Cube((0.0,), 1.0), Cube((0.0,), 4.0)) - 3.805556) < 5e-7,
        "K_alpha 2.207107": abs(k_alpha(single, Cube((0.0,), 1.0), Cube((0.0,), 4.0), 0.5) - 2.207107) < 5e-7,
        "chain": list(lemma3_chain(three, Cube((0.0,), 1.0)).cubes) == [Cube((0.0,), 1.0), Cube((0.0,), 256.0), WHOLE_SPACE],
    }
    failed = [k for k, v in checks.items() if not v]
    record(11, not failed, "pinned: " + ", ".join(f"{k} {'ok' if v else 'WRONG'}" for k, v in checks.items()))


if __name__ == "__main__":
    import sys

    for name, test in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                test()
            except AssertionError:
                pass
    print("\n".join(RESULTS[k] for k in sorted(RESULTS)))
    sys.exit(0 if all(" PASS " in v for v in RESULTS.values()) else 1)
