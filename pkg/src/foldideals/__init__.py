"""Exact computations for ideals generated by a-fold products of linear forms."""

__version__ = "0.1.0"

from .linalg import QQ, PrimeField, ExactMatrix, RowSpace  # noqa: E402
from .sigma import FormCollection, build_collection, code_profile  # noqa: E402
from .fold import fold_generators, FoldIdeal  # noqa: E402
from .decomp import cor24_decomposition, lemma21_components, verify_cor24  # noqa: E402
from .star import StarConfig, MonomialStarModel, verify_ghm, resurgence_search  # noqa: E402
from .betti import koszul_tor_dims, hochster_oracle, is_linear_resolution, regularity  # noqa: E402

__all__ = [
    "__version__",
    "QQ",
    "PrimeField",
    "ExactMatrix",
    "RowSpace",
    "FormCollection",
    "build_collection",
    "code_profile",
    "fold_generators",
    "FoldIdeal",
    "cor24_decomposition",
    "lemma21_components",
    "verify_cor24",
    "StarConfig",
    "MonomialStarModel",
    "verify_ghm",
    "resurgence_search",
    "koszul_tor_dims",
    "hochster_oracle",
    "is_linear_resolution",
    "regularity",
]
