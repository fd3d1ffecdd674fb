"""Cohomology and K-theory classes of regular Hessenberg varieties."""

__version__ = "0.1.0"

from .perms import HessFn, Perm, build_wh, essential_set, hessenberg_functions, rank_matrix, reduced_word  # noqa: E402
from .polyring import Grading, MultiPoly, VarSet  # noqa: E402

__all__ = [
    "Grading",
    "HessFn",
    "MultiPoly",
    "Perm",
    "VarSet",
    "build_wh",
    "essential_set",
    "hessenberg_functions",
    "rank_matrix",
    "reduced_word",
]
