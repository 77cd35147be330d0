from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

EXACT = "exact"
BASELINE = "baseline"
INFO = "info"

REL_TOL = 1e-9


def within(lhs: float, rhs: float, rel: float = REL_TOL) -> bool:
    """``lhs <= rhs`` up to a relative slack ``rel * max(|lhs|, |rhs|, tiny)``."""
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return lhs <= rhs + rel * scale


def ratio(lhs: float, rhs: float) -> float | None:
    if rhs > 0:
        return lhs / rhs
    return 0.0 if lhs == 0 else None


@dataclass
class CheckRecord:
    identifier: str
    lhs: float
    rhs: float
    constant: float | None = None
    ratio: float | None = None
    passed: bool = True
    kind: str = EXACT
    instance: int | None = None
    note: str = ""

    @property
    def degenerate(self) -> bool:
        return self.ratio is None


@dataclass
class VerificationReport:
    suite: str
    seed: int | None = None
    count: int = 0
    records: list[CheckRecord] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    observed: dict = field(default_factory=dict)
    baselines: dict = field(default_factory=dict)
    regressions: list[str] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def exact(self, identifier, lhs, rhs, constant=None, instance=None, rel=REL_TOL, note=""):
        lhs, rhs = float(lhs), float(rhs)
        rec = CheckRecord(identifier, lhs, rhs, constant, ratio(lhs, rhs), within(lhs, rhs, rel), EXACT, instance, note)
        self.records.append(rec)
        return rec

    def info(self, identifier, lhs, rhs, constant=None, instance=None, note=""):
        lhs, rhs = float(lhs), float(rhs)
        rec = CheckRecord(identifier, lhs, rhs, constant, ratio(lhs, rhs), True, INFO, instance, note)
        self.records.append(rec)
        return rec

    def observe(self, key: str, value: float | None):
        """Track the running maximum of a quantity checked against a baseline."""
        if value is None or not math.isfinite(value):
            return
        self.observed[key] = max(self.observed.get(key, -math.inf), float(value))

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.kind == EXACT and not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures() and not self.regressions

    def summary(self) -> dict:
        exact = [r for r in self.records if r.kind == EXACT]
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "exact_checks": len(exact),
            "exact_failures": len(self.failures()),
            "skipped": len(self.skipped),
            "observed": dict(sorted(self.observed.items())),
            "regressions": list(self.regressions),
            "passed": self.passed,
        }

    def to_dict(self) -> dict:
        out = self.summary()
        out["baselines"] = dict(sorted(self.baselines.items()))
        out["extras"] = self.extras
        out["skipped_detail"] = list(self.skipped)
        out["records"] = [asdict(r) for r in self.records]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, allow_nan=False, default=_jsonable)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["identifier", "instance", "kind", "lhs", "rhs", "constant", "ratio", "passed", "note"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in self.records:
            w.writerow({c: getattr(r, c) for c in cols})
        return buf.getvalue()

    def lines(self) -> list[str]:
        out = []
        for key, val in sorted(self.observed.items()):
            base = self.baselines.get(key)
            tag = "" if base is None else f" (baseline {base:.6g})"
            out.append(f"  {key} = {val:.6g}{tag}")
        for f in self.failures()[:10]:
            out.append(f"  FAIL {f.identifier} #{f.instance}: {f.lhs:.12g} > {f.rhs:.12g}")
        for r in self.regressions:
            out.append(f"  REGRESSION {r}")
        return out


def _jsonable(x):
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def merge(suite: str, reports: list[VerificationReport]) -> VerificationReport:
    out = VerificationReport(suite, reports[0].seed if reports else None)
    for rep in reports:
        out.count = max(out.count, rep.count)
        out.records += rep.records
        out.skipped += [f"{rep.suite}: {s}" for s in rep.skipped]
        for k, v in rep.observed.items():
            out.observe(k, v)
        out.baselines.update(rep.baselines)
        out.regressions += rep.regressions
        out.extras[rep.suite] = rep.extras
    return out
