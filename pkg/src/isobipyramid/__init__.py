"""Convex bipyramids whose nonconvex isometric twins enclose arbitrarily more volume.

``p(t)`` is a convex oblique triangular bipyramid, ``q(t)`` a nonconvex one
glued from congruent pieces of the same surface.  As ``t -> 0+`` the volume
of ``p(t)`` vanishes while that of ``q(t)`` tends to ``50 sqrt(23)``.
"""

from .closed_forms import (
    Alpha,
    SeriesCoeffs,
    alpha_of_AE,
    existence_interval,
    maclaurin_check,
    vol_p_closed,
    vol_q_closed,
    vol_q_closed_of_AE,
)
from .geometry import (
    T0,
    construct_p,
    construct_q,
    length_AC,
    length_AE,
    measured_edge_lengths,
    prescribed_edge_table,
)
from .mesh import EdgeTable, LabeledMesh
from .solver import RatioTarget, SweepRecord, find_t_star, ratio, sweep, theorem_witness
from .verification import (
    ConvexityReport,
    IsometryCertificate,
    certify_isometry,
    combinatorics_check,
    convexity,
    mesh_volume,
)

__version__ = "0.1.0"

__all__ = [
    "Alpha", "ConvexityReport", "EdgeTable", "IsometryCertificate", "LabeledMesh",
    "RatioTarget", "SeriesCoeffs", "SweepRecord", "T0",
    "alpha_of_AE", "certify_isometry", "combinatorics_check", "construct_p", "construct_q",
    "convexity", "existence_interval", "find_t_star", "length_AC", "length_AE",
    "maclaurin_check", "measured_edge_lengths", "mesh_volume", "prescribed_edge_table",
    "ratio", "sweep", "theorem_witness", "vol_p_closed", "vol_q_closed", "vol_q_closed_of_AE",
]
