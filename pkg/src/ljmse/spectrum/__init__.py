"""The subsystem calculi and the maps between them."""
from . import lam, lj, ljm, ljms
from .base import SearchCapHit, SpecStep, reaches, search
from .maps import (
    EMBEDDINGS, embed_J, embed_e, embed_m, embed_s, map_circ, map_sharp, mu_nf,
)

CALCULI = {"lambda": lam, "lj": lj, "ljm": ljm, "ljms": ljms}

__all__ = [
    "lam", "lj", "ljm", "ljms", "CALCULI", "EMBEDDINGS", "SpecStep", "SearchCapHit",
    "search", "reaches", "embed_J", "embed_m", "embed_s", "embed_e",
    "map_sharp", "map_circ", "mu_nf",
]
