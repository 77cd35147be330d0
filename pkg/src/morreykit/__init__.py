"""Morrey, Campanato and RBMO type norms over finite atomic measures.

Every supremum over cubes becomes a maximum over a finite family of cubes.
In dimension one the family is exact; elsewhere it is a heuristic mix and
the reported norms are lower bounds.
"""

from .coefficients import delta, k_alpha, k_coeff
from .doubling import DoublingChain, besicovitch_select, is_doubling, lemma3_chain, q_star
from .families import CubeFamily, Dyadic, Exact1D, Sampled, Breakpoints, build_family, default_family
from .functionals import (
    NormParams,
    NormResult,
    SampledFunction,
    VectorFunction,
    campanato_norm,
    campanato_norm_lr,
    mean,
    morrey_norm,
    morrey_norm_doubling,
    morrey_norm_doubling_lr,
    morrey_norm_lr,
    net_limit,
    rbmo_norm,
    sharp_maximal,
    sharp_maximal_lr,
)
from .geometry import WHOLE_SPACE, Cube, WholeSpace, dilate
from .measure import MeasureSpace, growth_constant, mass_of

__version__ = "0.1.0"

__all__ = [
    "WHOLE_SPACE",
    "Breakpoints",
    "Cube",
    "CubeFamily",
    "DoublingChain",
    "Dyadic",
    "Exact1D",
    "MeasureSpace",
    "NormParams",
    "NormResult",
    "Sampled",
    "SampledFunction",
    "VectorFunction",
    "WholeSpace",
    "besicovitch_select",
    "build_family",
    "campanato_norm",
    "campanato_norm_lr",
    "default_family",
    "delta",
    "dilate",
    "growth_constant",
    "is_doubling",
    "k_alpha",
    "k_coeff",
    "lemma3_chain",
    "mass_of",
    "mean",
    "morrey_norm",
    "morrey_norm_doubling",
    "morrey_norm_doubling_lr",
    "morrey_norm_lr",
    "net_limit",
    "q_star",
    "rbmo_norm",
    "sharp_maximal",
    "sharp_maximal_lr",
]
