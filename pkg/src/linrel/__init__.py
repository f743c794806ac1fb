"""Exact calculus of linear relations on C^n over the Gaussian rationals."""

from .dualpair import DualPair, NotADualPair, analyze, hypotheses, new_dual_pair
from .errors import ConsistencyError, HypothesisError, PreconditionError
from .extension import ProperExtension, make_extension, quotient_profile
from .gaussian import GaussianRational, gq
from .linalg import Subspace, vector
from .relation import LinearRelation, adjoint, arens_decompose, from_matrix, from_pairs

__all__ = [
    "GaussianRational",
    "gq",
    "Subspace",
    "vector",
    "LinearRelation",
    "from_pairs",
    "from_matrix",
    "adjoint",
    "arens_decompose",
    "DualPair",
    "NotADualPair",
    "new_dual_pair",
    "hypotheses",
    "analyze",
    "ProperExtension",
    "make_extension",
    "quotient_profile",
    "ConsistencyError",
    "HypothesisError",
    "PreconditionError",
]

__version__ = "0.1.0"
