"""Inequality suites, corpora, reports and regression baselines."""

from .baselines import compare, load as load_baselines
from .corpus import Corpus, CorpusInstance, make_corpus
from .report import CheckRecord, VerificationReport, merge, within
from .suites import SUITES, run_suite

__all__ = [
    "SUITES",
    "CheckRecord",
    "Corpus",
    "CorpusInstance",
    "VerificationReport",
    "compare",
    "load_baselines",
    "make_corpus",
    "merge",
    "run_suite",
    "within",
]
