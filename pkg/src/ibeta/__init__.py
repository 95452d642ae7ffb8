"""Exact symbolic dynamics of intermediate beta-transformations over Q(beta)."""

from .algebraic import AlgebraicNumber, FieldElement, classify, compare, make_beta
from .dynamics import Side, SystemParams, expand, orbit, preper_test
from .kneading import classify_shift, entropy, kneading_pair, subshift_graph
from .lorenz import LorenzParams, search_sft_alpha
from .measure import parry_density
from .regions import interval_Ink, transitivity

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "FieldElement",
    "LorenzParams",
    "Side",
    "SystemParams",
    "classify",
    "classify_shift",
    "compare",
    "entropy",
    "expand",
    "interval_Ink",
    "kneading_pair",
    "make_beta",
    "orbit",
    "parry_density",
    "preper_test",
    "search_sft_alpha",
    "subshift_graph",
    "transitivity",
]
