"""Instance files: one measure, named functions on its atoms, parameters, a family spec.

Files are JSON with every real written as a decimal literal.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .families import Breakpoints, Dyadic, Exact1D, Sampled, Union_
from .geometry import Cube
from .measure import MeasureSpace

FORMAT = "morreykit-instance/1"
PARAM_KEYS = ("p", "q", "k", "beta", "r", "alpha")


class InstanceError(ValueError):
    """Malformed or invalid instance file."""


@dataclass
class Instance:
    measure: MeasureSpace
    functions: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    family: dict = field(default_factory=lambda: {"kind": "exact"})

    def function(self, name: str | None = None) -> np.ndarray:
        """Values of a named function; rows are components."""
        if not self.functions:
            raise InstanceError("instance has no functions")
        if name is None:
            name = next(iter(self.functions))
        if name not in self.functions:
            raise InstanceError(f"no function named {name!r}")
        return np.atleast_2d(np.asarray(self.functions[name], dtype=float))


def _real(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InstanceError(f"{what} must be a number, got {x!r}")
    if not math.isfinite(x):
        raise InstanceError(f"{what} must be finite")
    return float(x)


def from_dict(data: dict) -> Instance:
    try:
        d = int(data["dimension"])
        n = _real(data.get("growth_exponent", d), "growth_exponent")
        atoms = data["atoms"]
        pos = [[_real(c, "atom position") for c in np.atleast_1d(a["position"])] for a in atoms]
        mass = [_real(a["mass"], "atom mass") for a in atoms]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"missing or malformed field: {exc}") from exc
    if any(len(p) != d for p in pos):
        raise InstanceError("atom positions do not match the dimension")
    try:
        mu = MeasureSpace(np.array(pos).reshape(-1, d), mass, n)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    functions = {}
    for name, vals in (data.get("functions") or {}).items():
        arr = np.atleast_2d(np.asarray(vals, dtype=float))
        if arr.shape[1] != mu.size:
            raise InstanceError(f"function {name!r} is not aligned with the {mu.size} atoms")
        if not np.all(np.isfinite(arr)):
            raise InstanceError(f"function {name!r} has non-finite values")
        functions[name] = vals
    params = {}
    for key, val in (data.get("params") or {}).items():
        if key not in PARAM_KEYS:
            raise InstanceError(f"unknown parameter {key!r}")
        params[key] = None if val is None else _real(val, key)
    family = data.get("family") or {"kind": "exact"}
    family_spec(family, mu.dim)
    return Instance(mu, functions, params, family)


def to_dict(inst: Instance) -> dict:
    mu = inst.measure
    atoms = []
    for i in range(mu.size):
        pos = [float(t) for t in mu.positions[i]]
        atoms.append({"position": pos[0] if mu.dim == 1 else pos, "mass": float(mu.masses[i])})
    return {
        "format": FORMAT,
        "dimension": mu.dim,
        "growth_exponent": mu.n,
        "atoms": atoms,
        "functions": {k: _plain(v) for k, v in inst.functions.items()},
        "params": dict(inst.params),
        "family": dict(inst.family),
    }


def _plain(v):
    arr = np.asarray(v, dtype=float)
    return arr.tolist()


def dumps(inst: Instance) -> str:
    return json.dumps(to_dict(inst), indent=2) + "\n"


def load(path) -> Instance:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceError("instance file must hold a JSON object")
    return from_dict(data)


def save(inst: Instance, path):
    from .verify.baselines import atomic_write

    atomic_write(Path(path), dumps(inst))


def family_spec(desc: dict, dim: int, k: float = 2.0):
    """Translate ``{"kind": ...}`` into a family spec object."""
    kind = desc.get("kind", "exact")
    if kind == "exact":
        if dim != 1:
            raise InstanceError("the exact family exists only in dimension 1")
        extra = tuple(desc.get("extra", (1.5, 2.0)))
        return Exact1D(k=float(desc.get("k", k)), extra=extra)
    if kind == "dyadic":
        root = desc.get("root")
        if root is None:
            raise InstanceError("dyadic family needs a root cube")
        return Dyadic(Cube(tuple(np.atleast_1d(root["center"])), root["side"]), int(desc.get("depth", 4)))
    if kind == "breakpoints":
        return Breakpoints()
    if kind == "sampled":
        return Sampled(int(desc.get("samples", 10000)), int(desc.get("seed", 0)))
    if kind == "union":
        return Union_(tuple(family_spec(p, dim, k) for p in desc.get("parts", [])))
    raise InstanceError(f"unknown family kind {kind!r}")
