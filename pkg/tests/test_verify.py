import json

import numpy as np
import pytest

from morreykit.verify import baselines as bl
from morreykit.verify.corpus import make_corpus
from morreykit.verify.report import VerificationReport, merge, within
from morreykit.verify.suites import (
    SUITES,
    beta_threshold,
    check_besicovitch,
    check_lemma2,
    run_suite,
    theorem1_constant,
    theorem1_proof_constant,
)


def test_theorem1_constant_for_default_params():
    t = 2 * 5**-0.5
    assert theorem1_constant(1, 2, 1, 2, 5) == pytest.approx(8 * t / (1 - t), rel=1e-12)
    assert theorem1_constant(1, 2, 1, 2, 5) == pytest.approx(67.78, abs=0.01)
    assert theorem1_proof_constant(1, 2, 1, 2, 5) > theorem1_constant(1, 2, 1, 2, 5)
    assert beta_threshold(1, 2, 1, 2) == 4.0
    with pytest.raises(ValueError):
        theorem1_constant(1, 2, 1, 2, 4)


def test_within_relative_slack():
    assert within(1.0, 1.0)
    assert within(1.0 + 1e-10, 1.0)
    assert not within(1.0 + 1e-8, 1.0)
    assert within(0.0, 0.0)


def test_corpus_is_deterministic():
    a = make_corpus(5, 10)
    b = make_corpus(5, 10)
    for x, y in zip(a, b):
        assert np.array_equal(x.measure.positions, y.measure.positions)
        assert np.array_equal(x.values, y.values)
    means = make_corpus(5, 10, mean_zero=True)
    for inst in means:
        assert abs(inst.values @ inst.measure.masses) < 1e-9


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_on_a_small_corpus(name):
    rep = run_suite(name, seed=7, count=6)
    assert rep.passed, rep.lines()


def test_reports_are_reproducible():
    a = run_suite("theorem2", seed=3, count=4).to_json()
    b = run_suite("theorem2", seed=3, count=4).to_json()
    assert a == b


def test_single_atom_corpus_lemma2():
    corpus = make_corpus(0, 5, atoms=(1, 1))
    rep = check_lemma2(corpus)
    assert rep.passed and rep.summary()["exact_checks"] > 0


def test_besicovitch_two_dimensional():
    rep = check_besicovitch(seed=1, count=100, dim=2)
    assert rep.passed and rep.observed["besicovitch.max_overlap"] <= 4


def test_baseline_regression_detected(tmp_path):
    rep = VerificationReport("x", seed=42, count=1)
    rep.observe("ratio", 2.0)
    table = {}
    assert bl.compare(rep, table) == ["ratio"]
    path = tmp_path / "b.json"
    bl.save(table, path)
    later = VerificationReport("x", seed=1, count=1)
    later.observe("ratio", 2.09)
    bl.compare(later, bl.load(path))
    assert later.passed
    worse = VerificationReport("x", seed=1, count=1)
    worse.observe("ratio", 2.2)
    bl.compare(worse, bl.load(path))
    assert not worse.passed and worse.regressions


def test_report_exports():
    rep = VerificationReport("x", seed=1, count=2)
    rep.exact("a", 1.0, 2.0, instance=0)
    rep.exact("a", 3.0, 2.0, instance=1)
    rep.info("b", 0.0, 0.0)
    assert len(rep.failures()) == 1 and not rep.passed
    data = json.loads(rep.to_json())
    assert data["exact_failures"] == 1 and len(data["records"]) == 3
    csv = rep.to_csv().splitlines()
    assert csv[0].startswith("identifier") and len(csv) == 4
    merged = merge("all", [rep, VerificationReport("y", seed=1)])
    assert merged.count == 2 and not merged.passed


def test_packaged_baselines_cover_every_suite():
    table = bl.load()
    for key in ("theorem1.ratio", "lemma2.item4_defect_over_C0", "theorem2.morrey_over_campanato"):
        assert key in table and table[key]["seed"] == bl.REFERENCE_SEED
