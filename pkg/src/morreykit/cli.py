"""Command line front-end: ``morreykit gen | norms | coeff | verify``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import functionals as fn
from . import io
from .coefficients import delta, k_alpha, k_coeff
from .families import Breakpoints, Dyadic, Exact1D, Sampled, build_family
from .geometry import Cube, WholeSpace
from .verify import baselines as bl
from .verify.corpus import Corpus, CorpusInstance, random_measure, random_values
from .verify.report import merge
from .verify.suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

NORMS = ("morrey", "morrey-doubling", "campanato", "rbmo", "sharp-maximal", "net-limit")
# norms whose equivalence with the Morrey norm needs p > q
GATED = ("morrey-doubling",)


class InputError(Exception):
    pass


def _fmt_cube(Q) -> str:
    if isinstance(Q, WholeSpace):
        return "R^d"
    lo = ", ".join(f"{v:.10g}" for v in Q.lower)
    hi = ", ".join(f"{v:.10g}" for v in Q.upper)
    c = ", ".join(f"{v:.10g}" for v in Q.center)
    return f"[{lo}] .. [{hi}] (center ({c}), side {Q.side:.10g})"


# --------------------------------------------------------------------- gen


def cmd_gen(args) -> int:
    if args.atoms < 1:
        raise InputError("--atoms must be at least 1")
    if args.dim < 1:
        raise InputError("--dim must be at least 1")
    rng = np.random.default_rng(args.seed)
    mu = random_measure(rng, args.atoms, args.dim)
    vals = random_values(rng, mu, args.components)
    fam = {"kind": "exact"} if args.dim == 1 else {"kind": "sampled", "samples": 2000, "seed": args.seed}
    params = {"p": 2.0, "q": 1.0, "k": 2.0, "beta": 5.0, "r": 2.0}
    inst = io.Instance(mu, {"f": vals[0].tolist() if args.components == 1 else vals.tolist()}, params, fam)
    text = io.dumps(inst)
    if args.output:
        try:
            io.save(inst, args.output)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ------------------------------------------------------------------- norms


def _params(inst: io.Instance, args) -> dict:
    out = dict(inst.params)
    for key in ("p", "q", "k", "beta", "r", "alpha"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    return out


def _family(inst: io.Instance, args, k: float):
    mu = inst.measure
    kind = args.family
    if kind is None:
        spec = io.family_spec(inst.family, mu.dim, k)
        if isinstance(spec, Exact1D):
            spec = Exact1D(k=k, extra=tuple(sorted({*spec.extra, 1.5, 2.0})))
    elif kind == "exact":
        if mu.dim != 1:
            raise InputError("the exact family exists only in dimension 1")
        spec = Exact1D(k=k)
    elif kind == "dyadic":
        lo, hi = mu.positions.min(axis=0), mu.positions.max(axis=0)
        root = Cube(tuple((lo + hi) / 2), float(np.max(hi - lo)) * 1.01 + 1.0)
        spec = Dyadic(root, args.depth)
    elif kind == "sampled":
        spec = Sampled(args.samples, args.seed)
    else:
        spec = Breakpoints()
    return build_family(mu, spec, k=k)


def cmd_norms(args) -> int:
    inst = io.load(args.input)
    P = _params(inst, args)
    try:
        F = inst.function(args.function)
        p = float(P.get("p", 2.0))
        q = float(P.get("q", 1.0))
        np_params = fn.NormParams(p, q, float(P.get("k", 2.0)), P.get("beta"), float(P.get("r", 2.0)))
    except (ValueError, io.InstanceError) as exc:
        raise InputError(str(exc)) from exc
    mu = inst.measure
    if args.norm in GATED and p == q:
        print(
            "diagnostic: p = q; the doubling-restricted norm is computed, but it need not be "
            "equivalent to the Morrey norm unless p > q",
            file=sys.stderr,
        )
    fam = _family(inst, args, np_params.k)
    record = {"norm": args.norm, "components": int(F.shape[0])}
    if args.norm == "morrey":
        res = fn.morrey_result(mu, F, np_params, fam)
    elif args.norm == "morrey-doubling":
        res = fn.morrey_doubling_result(mu, F, np_params, fam)
        record["beta"] = np_params.beta_for(mu.dim)
    elif args.norm == "campanato":
        res = fn.campanato_result(mu, F, np_params, fam)
    elif args.norm == "rbmo":
        res = fn.rbmo_result(mu, F, fam, np_params.r)
    elif args.norm == "sharp-maximal":
        vals = fn.lr_norm(fn.sharp_maximal_all(mu, F, fam), np_params.r, axis=0)
        i = int(np.argmax(vals))
        res = fn.NormResult(float(vals[i]), (), fam.completeness)
        record["at_atom"] = mu.positions[i].tolist()
        record["pointwise"] = vals.tolist()
    else:
        if F.shape[0] != 1:
            raise InputError("net-limit takes a scalar function")
        res = fn.NormResult(fn.net_limit(mu, F[0]), (), "exact")
    cubes = [fam.cube(i) for i in res.argmax]
    record.update(value=res.value, completeness=res.completeness)
    if res.parts:
        record["parts"] = res.parts
    if res.empty:
        record["note"] = "no qualifying cube in the family"
    print(f"norm: {args.norm}")
    print(f"value: {res.value!r}")
    print(f"completeness: {res.completeness}")
    for key, val in res.parts.items():
        print(f"{key}: {val!r}")
    for role, Q in zip(_roles(args.norm, len(cubes)), cubes):
        print(f"argmax {role}: {_fmt_cube(Q)}")
    if "at_atom" in record:
        print(f"at atom: {record['at_atom']}")
    if args.output:
        record["argmax"] = [None if isinstance(Q, WholeSpace) else {"center": list(Q.center), "side": Q.side} for Q in cubes]
        bl.atomic_write(Path(args.output), json.dumps(record, indent=2) + "\n")
    return EXIT_OK


def _roles(norm: str, n: int) -> list[str]:
    if norm in ("campanato", "rbmo") and n == 3:
        return ["oscillation cube", "pair inner", "pair outer"]
    return ["cube"] * n


# ------------------------------------------------------------------- coeff


def _parse_cube(text: str, dim: int):
    if text.lower() in ("whole", "r^d", "inf"):
        from .geometry import WHOLE_SPACE

        return WHOLE_SPACE
    try:
        *center, side = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(f"cube must be 'c1,...,cd,side', got {text!r}") from exc
    if len(center) != dim:
        raise InputError(f"cube {text!r} does not have {dim} center coordinates")
    return Cube(tuple(center), side)


def cmd_coeff(args) -> int:
    inst = io.load(args.input)
    mu = inst.measure
    Q = _parse_cube(args.inner, mu.dim)
    R = _parse_cube(args.outer, mu.dim)
    alpha = args.alpha if args.alpha is not None else inst.params.get("alpha")
    try:
        print(f"delta: {delta(mu, Q, R)!r}")
        print(f"K: {k_coeff(mu, Q, R)!r}")
        if alpha is not None:
            print(f"K_alpha: {k_alpha(mu, Q, R, float(alpha))!r}")
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


# ------------------------------------------------------------------ verify


def _file_corpus(path: Path, seed: int) -> Corpus:
    files = sorted(path.glob("*.json")) if path.is_dir() else [path]
    if not files:
        raise InputError(f"no instance files under {path}")
    out = []
    for i, f in enumerate(files):
        inst = io.load(f)
        P = inst.params
        params = fn.NormParams(P.get("p", 2.0), P.get("q", 1.0), P.get("k", 2.0), P.get("beta", 5.0), P.get("r", 2.0))
        out.append(CorpusInstance(inst.measure, inst.function(), params, i))
    return Corpus(seed, out, {"source": str(path), "dim": out[0].measure.dim})


def _run_one(name, seed, count, dim):
    return run_suite(name, seed, count, dim)


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.input:
        corpus = _file_corpus(Path(args.input), args.seed)
        reports = [_suite_on_corpus(n, corpus) for n in names]
    elif args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            futs = [pool.submit(_run_one, n, args.seed, args.count, args.dim) for n in names]
            reports = [f.result() for f in futs]
    else:
        reports = [_run_one(n, args.seed, args.count, args.dim) for n in names]
    report = reports[0] if len(reports) == 1 else merge("all", reports)
    table = bl.load(args.baseline_path)
    added = bl.compare(report, table, record_missing=args.baseline_path is not None)
    if args.baseline_path and added:
        bl.save(table, args.baseline_path)
    s = report.summary()
    print(f"suite {args.suite}: {'PASS' if report.passed else 'FAIL'}")
    print(f"  exact checks {s['exact_checks']}, failures {s['exact_failures']}, skipped {s['skipped']}")
    for rep in reports:
        for key in ("constant", "proof_constant"):
            if key in rep.extras:
                print(f"  {rep.suite} {key} = {rep.extras[key]:.6g}")
    for line in report.lines():
        print(line)
    if added:
        print(f"  recorded {len(added)} new baseline(s) in {args.baseline_path}")
    if args.output:
        bl.atomic_write(Path(args.output), report.to_json() + "\n")
    if args.csv:
        bl.atomic_write(Path(args.csv), report.to_csv())
    return EXIT_OK if report.passed else EXIT_FAIL


def _suite_on_corpus(name: str, corpus: Corpus):
    from .verify import suites as S

    table = {
        "theorem1": S.check_theorem1,
        "k-equivalence": S.check_k_equivalence,
        "lemma2": S.check_lemma2,
        "theorem2": S.check_theorem2,
        "prop1": S.check_prop1,
        "claim1": S.check_claim1,
        "campanato-b2": S.check_campanato_k_equivalence,
        "lemma1": S.check_lemma1,
        "lemma4": S.check_lemma4,
        "prop3": S.check_prop3,
        "theorem3": S.check_theorem3,
    }
    if name == "besicovitch":
        return S.check_besicovitch(corpus.seed, len(corpus), corpus.descriptor.get("dim", 1))
    return table[name](corpus)


# ------------------------------------------------------------------ parser


def _positive(kind):
    def conv(text):
        val = kind(text)
        if not val > 0:
            raise argparse.ArgumentTypeError(f"{text} is not positive")
        return val

    return conv


def _exponent(text):
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morreykit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random instance file")
    g.add_argument("--atoms", type=int, required=True)
    g.add_argument("--dim", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--components", type=_positive(int), default=1)
    g.add_argument("--output")
    g.set_defaults(run=cmd_gen)

    def add_params(p):
        p.add_argument("--p", type=_exponent)
        p.add_argument("--q", type=float)
        p.add_argument("--k", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--r", type=float)
        p.add_argument("--alpha", type=float)

    n = sub.add_parser("norms", help="evaluate one norm on an instance file")
    n.add_argument("--input", required=True)
    n.add_argument("--norm", choices=NORMS, default="morrey")
    n.add_argument("--function")
    add_params(n)
    n.add_argument("--family", choices=("exact", "dyadic", "sampled", "breakpoints"))
    n.add_argument("--depth", type=int, default=4)
    n.add_argument("--samples", type=_positive(int), default=10000)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--output")
    n.set_defaults(run=cmd_norms)

    c = sub.add_parser("coeff", help="delta, K and K^alpha for a pair of cubes")
    c.add_argument("--input", required=True)
    c.add_argument("--inner", required=True, help="c1,...,cd,side")
    c.add_argument("--outer", required=True, help="c1,...,cd,side or 'whole'")
    c.add_argument("--alpha", type=float)
    c.set_defaults(run=cmd_coeff)

    v = sub.add_parser("verify", help="run an inequality suite")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--seed", type=int, default=bl.REFERENCE_SEED)
    v.add_argument("--count", type=_positive(int), default=500)
    v.add_argument("--dim", type=int, default=1)
    v.add_argument("--input", help="instance file or directory of instance files")
    v.add_argument("--output", help="JSON report path")
    v.add_argument("--csv", help="CSV table of check records")
    v.add_argument("--baseline-path", help="baseline file; missing entries are recorded into it")
    v.add_argument("--jobs", type=_positive(int), default=1)
    v.set_defaults(run=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (InputError, io.InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
