"""Quermassintegral symmetrization and quantitative inequalities for k-Hessian problems."""
from hessian_symm.geometry import (
    Ball,
    ConvexBody,
    Ellipsoid,
    FourierBody2D,
    ParallelBody,
    Polygon,
    Polytope3D,
    hausdorff_distance,
    homothety,
    minkowski_add_ball,
    shape_summary,
    support,
)
from hessian_symm.kernels import BACKEND
from hessian_symm.khessian import (
    HessianSpectrum,
    SourceField,
    fd_laplace_eigen,
    hk_energy,
    radial_eigen,
    radial_solution,
    s_k_eval,
    schwarz_rearrange,
    torsional_rigidity,
)
from hessian_symm.quermass import hausdorff_asymmetry, mean_radius, quermassintegrals, steiner_volume_check
from hessian_symm.report import DeficitReport
from hessian_symm.stability import constants_table, gs_bound_check, half_power_bound, propagation_check
from hessian_symm.symmetrize import (
    ConeOverBody,
    QuadraticOnEllipsoid,
    RadialOnBall,
    RadialProfile,
    cone_minorant_check,
    sublevel_profile,
    symmetrand,
)
from hessian_symm.verify import (
    faber_krahn_report,
    hk_comparison_report,
    pointwise_tso_check,
    polya_szego_report,
    saint_venant_report,
    talenti_gap_report,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Ball",
    "ConeOverBody",
    "ConvexBody",
    "DeficitReport",
    "Ellipsoid",
    "FourierBody2D",
    "HessianSpectrum",
    "ParallelBody",
    "Polygon",
    "Polytope3D",
    "QuadraticOnEllipsoid",
    "RadialOnBall",
    "RadialProfile",
    "SourceField",
    "cone_minorant_check",
    "constants_table",
    "faber_krahn_report",
    "fd_laplace_eigen",
    "gs_bound_check",
    "half_power_bound",
    "hausdorff_asymmetry",
    "hausdorff_distance",
    "hk_comparison_report",
    "hk_energy",
    "homothety",
    "mean_radius",
    "minkowski_add_ball",
    "pointwise_tso_check",
    "polya_szego_report",
    "propagation_check",
    "quermassintegrals",
    "radial_eigen",
    "radial_solution",
    "s_k_eval",
    "saint_venant_report",
    "schwarz_rearrange",
    "shape_summary",
    "steiner_volume_check",
    "sublevel_profile",
    "support",
    "symmetrand",
    "talenti_gap_report",
    "torsional_rigidity",
]
