"""Exact decision procedures for order projections and bands on polyhedral cones."""

__version__ = "0.1.0"

from .band import (  # noqa: E402
    BandCertificate,
    ProjectionMatrix,
    certify_projection_band,
    corollary_check,
    is_order_projection,
)
from .cone import ConeSpace, contains, leq  # noqa: E402
from .lp import LinearProgram, solve_lp  # noqa: E402
from .order import is_disjoint, is_infimum_zero  # noqa: E402

__all__ = [
    "__version__",
    "BandCertificate",
    "ConeSpace",
    "LinearProgram",
    "ProjectionMatrix",
    "certify_projection_band",
    "contains",
    "corollary_check",
    "is_disjoint",
    "is_infimum_zero",
    "is_order_projection",
    "leq",
    "solve_lp",
]
