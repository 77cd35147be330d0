"""Seeded random corpora of atomic measures and functions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..families import CubeFamily, Exact1D, build_family, default_family
from ..functionals import NormParams
from ..io import Instance
from ..measure import MeasureSpace

POSITION_RANGE = (0.0, 100.0)
MASS_DECADES = (-2.0, 2.0)
ATOM_RANGE = (3, 12)


def _round_sig(x: np.ndarray, digits: int = 6) -> np.ndarray:
    return np.array([float(f"{v:.{digits}g}") for v in x])


def random_measure(rng: np.random.Generator, atoms: int, dim: int = 1, n: float | None = None) -> MeasureSpace:
    """Positions uniform in [0, 100]^d (4 decimals), masses log-uniform in [1e-2, 1e2]."""
    while True:
        pos = np.round(rng.uniform(*POSITION_RANGE, size=(atoms, dim)), 4)
        if len(np.unique(pos, axis=0)) == atoms:
            break
    masses = _round_sig(10 ** rng.uniform(*MASS_DECADES, size=atoms))
    return MeasureSpace(pos, masses, dim if n is None else n)


def random_values(rng: np.random.Generator, mu: MeasureSpace, J: int = 1, mean_zero: bool = False) -> np.ndarray:
    vals = np.round(rng.normal(size=(J, mu.size)), 6)
    if mean_zero:
        vals = vals - (vals @ mu.masses / mu.total_mass)[:, None]
    return vals


@dataclass
class CorpusInstance:
    measure: MeasureSpace
    values: np.ndarray
    params: NormParams
    index: int = 0
    extras: dict = field(default_factory=dict)
    _families: dict = field(default_factory=dict, repr=False)

    def family(self, spec=None) -> CubeFamily:
        """Cached family; default is exact in d = 1, heuristic mix otherwise."""
        key = spec
        if key not in self._families:
            if spec is None:
                fam = default_family(self.measure, k=self.params.k)
            else:
                fam = build_family(self.measure, spec)
            self._families[key] = fam
        return self._families[key]

    def to_instance(self) -> Instance:
        p = self.params
        params = {"p": p.p, "q": p.q, "k": p.k, "beta": p.beta, "r": p.r}
        return Instance(self.measure, {"f": self.values.tolist()}, params, {"kind": "exact"})


@dataclass
class Corpus:
    seed: int
    instances: list
    descriptor: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)


def make_corpus(
    seed: int,
    count: int,
    dim: int = 1,
    atoms: tuple[int, int] = ATOM_RANGE,
    J: int = 1,
    mean_zero: bool = False,
    params: NormParams | None = None,
    exponents: tuple | None = None,
) -> Corpus:
    """Reproducible corpus: identical arguments give identical instances.

    ``exponents`` optionally lists growth exponents to draw ``n`` from.
    """
    rng = np.random.default_rng(seed)
    params = params or NormParams(2.0, 1.0, 2.0, 5.0)
    out = []
    for i in range(count):
        N = int(rng.integers(atoms[0], atoms[1] + 1))
        n = None if exponents is None else float(rng.choice(exponents))
        mu = random_measure(rng, N, dim, n)
        vals = random_values(rng, mu, J, mean_zero)
        out.append(CorpusInstance(mu, vals, params, i))
    desc = {"seed": seed, "count": count, "dim": dim, "atoms": list(atoms), "J": J, "mean_zero": mean_zero}
    return Corpus(seed, out, desc)


def exact_spec(*dilations: float, track_star: bool = True) -> Exact1D:
    dil = tuple(sorted(set(float(d) for d in dilations)))
    return Exact1D(k=dil[0], extra=dil, track_star=track_star)
