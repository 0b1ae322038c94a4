"""Coordinate realizations of the two bipyramid families.

``p(t)`` is convex with apexes B, D over the equator A E F; ``q(t)`` is
nonconvex with apexes E', F' over the regular equator A'B'D'.  Both are
given in fixed frames whose two mirror planes are coordinate planes:

* p: C (midpoint of EF) at the origin, EF on the z axis, A on the x axis,
  mirror planes z = 0 (plane ABD) and y = 0 (plane AEF).
* q: A' at the origin, C' (midpoint of B'D') on the x axis, B'D' parallel
  to y, mirror planes z = 0 (plane A'B'D') and y = 0 (plane A'E'F').
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConstructionError, DegenerateError, DomainError
from .mesh import EdgeTable, LabeledMesh, host_edge, segment_key, single_marker

T0 = math.pi / 6
SQRT3 = math.sqrt(3.0)

# fixed lengths of p(t)
AB = 10.0
BE = 13.0
EF = 24.0
BC = 5.0
CE = 12.0

P_LABELS = ("A", "B", "D", "E", "F")
Q_LABELS = ("A'", "B'", "D'", "E'", "F'")

P_FACES = (("A", "B", "E"), ("A", "F", "B"), ("A", "E", "D"),
           ("A", "D", "F"), ("B", "F", "E"), ("D", "E", "F"))
Q_FACES = (("A'", "E'", "B'"), ("A'", "D'", "E'"), ("A'", "B'", "F'"),
           ("A'", "F'", "D'"), ("B'", "E'", "D'"), ("B'", "D'", "F'"))

CONSTRUCTION_RTOL = 1e-12


def check_param(t, *, closed: bool = True):
    """Validate ``t`` against [0, pi/6] (or the open interval) and return it as an array."""
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"t must be finite, got {t!r}")
    if np.any(arr < 0.0) or np.any(arr > T0):
        raise DomainError(f"t must lie in [0, pi/6 ~ {T0:.4f}], got {t!r}")
    if not closed and (np.any(arr == 0.0) or np.any(arr == T0)):
        raise DegenerateError(f"t = {t!r} is an endpoint of (0, pi/6); the surface degenerates")
    return arr


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _ac_radicand(t):
    # 100 cos^2 t - 75 == 100 sin(pi/6 - t) sin(pi/6 + t); exact zero at t = pi/6
    return 100.0 * np.sin(T0 - t) * np.sin(T0 + t)


def _ac(t):
    return 10.0 * np.cos(t) + np.sqrt(_ac_radicand(t))


def _ae(t):
    c = np.cos(t)
    return np.sqrt(69.0 + 200.0 * c * c + 20.0 * c * np.sqrt(_ac_radicand(t)))


def length_AC(t):
    """Distance from A to the midpoint C of EF in p(t).

    Cosine law in ABC gives ``10 cos t +- sqrt(100 cos^2 t - 75)``; the
    larger root is taken.  The smaller one places B, D so that the
    quadrilateral ABCD is reflex at C, which would make p(t) nonconvex.

    Accepts scalars or arrays.  Raises :class:`DomainError` outside [0, pi/6].
    """
    arr = check_param(t)
    return _scalar(_ac(arr))


def length_AE(t):
    """``|AE| = |AF|`` of p(t); strictly decreasing from 3*sqrt(41) to sqrt(219)."""
    arr = check_param(t)
    return _scalar(_ae(arr))


def prescribed_edge_table(t: float, shape: str = "p") -> EdgeTable:
    """Edge lengths p(t) / q(t) are required to have.

    For ``shape="p"`` the table holds the nine edges of p plus the marker
    segments BC, CD, CE, CF and the interior segment AC.  For ``"q"`` the
    transferred lengths are identical and EF is replaced by the edge
    B'D' = B'C' + C'D' = 10.
    """
    t = float(check_param(t))
    ae = float(_ae(t))
    common = {
        "AB": AB, "AD": AB, "AE": ae, "AF": ae,
        "BE": BE, "BF": BE, "DE": BE, "DF": BE,
        "BC": BC, "CD": BC, "CE": CE, "CF": CE,
    }
    if shape == "p":
        return EdgeTable({**common, "EF": EF, "AC": float(_ac(t))})
    if shape == "q":
        return EdgeTable({**common, "BD": 2.0 * BC}, primed=True)
    raise ValueError(f"shape must be 'p' or 'q', got {shape!r}")


def _check_realization(mesh: LabeledMesh, table: EdgeTable, rtol: float):
    worst, where = 0.0, None
    for key, value in measured_edge_lengths(mesh).lengths.items():
        err = abs(value - table[key]) / table[key]
        if err > worst:
            worst, where = err, key
    if worst > rtol:
        raise ConstructionError(
            f"{mesh.name}: |{where}| deviates from its prescribed length by {worst:.3g} (relative)"
        )


def _check_faces(mesh: LabeledMesh, area_tol: float = 1e-12):
    pts = mesh.points[mesh.face_index]
    areas = 0.5 * np.linalg.norm(np.cross(pts[:, 1] - pts[:, 0], pts[:, 2] - pts[:, 0]), axis=1)
    scale = np.max(np.ptp(mesh.points, axis=0)) ** 2
    if np.any(areas <= area_tol * scale):
        i = int(np.argmin(areas))
        raise DegenerateError(f"{mesh.name}: face {mesh.faces[i]} collapsed (area {areas[i]:.3g})")


def construct_p(t: float, *, allow_degenerate: bool = False,
                rtol: float = CONSTRUCTION_RTOL) -> LabeledMesh:
    """Build the convex bipyramid p(t) with marker C.

    Parameters
    ----------
    t : float
        Angle BAC in radians, ``0 < t < pi/6``.  With
        ``allow_degenerate=True`` the closed interval is accepted; p(0) is a
        flat doubly covered surface of zero volume.
    rtol : float
        Relative tolerance for the edge-length self-check.

    Raises
    ------
    DomainError
        ``t`` outside [0, pi/6].
    DegenerateError
        Endpoint without ``allow_degenerate``, or a collapsed face.
    ConstructionError
        A realized length misses its prescribed value.
    """
    check_param(t, closed=allow_degenerate)
    t = float(t)
    ac = float(_ac(t))
    # same as (ac^2 - 75) / (2 ac) and sqrt(25 - x_b^2), but free of cancellation
    x_b = math.sqrt(float(_ac_radicand(t)))
    y_b = AB * math.sin(t)
    half = EF / 2
    mesh = LabeledMesh(
        vertices={
            "A": (ac, 0.0, 0.0),
            "B": (x_b, y_b, 0.0),
            "D": (x_b, -y_b, 0.0),
            "E": (0.0, 0.0, half),
            "F": (0.0, 0.0, -half),
        },
        faces=P_FACES,
        markers={"C": (0.0, 0.0, 0.0)},
        name=f"p({t!r})",
    )
    _check_faces(mesh)
    _check_realization(mesh, prescribed_edge_table(t, "p"), rtol)
    return mesh


def construct_q(t: float, *, allow_degenerate: bool = False,
                rtol: float = CONSTRUCTION_RTOL) -> LabeledMesh:
    """Build the nonconvex bipyramid q(t) with marker C'.

    The apex E' sits in the plane y = 0 at distance |AE|(t) from A' and
    angle alpha above the A'C' axis; F' is its mirror image in z = 0.

    Raises
    ------
    ExistenceError
        |A'E'| violates ``12 - 5 sqrt 3 < |A'E'| < 12 + 5 sqrt 3``.
    DomainError, DegenerateError, ConstructionError
        As for :func:`construct_p`.
    """
    from .closed_forms import alpha_of_AE

    check_param(t, closed=allow_degenerate)
    t = float(t)
    ae = float(_ae(t))
    alpha = alpha_of_AE(ae)
    s = 5.0 * SQRT3
    ex, ez = ae * alpha.cos, ae * alpha.sin
    mesh = LabeledMesh(
        vertices={
            "A'": (0.0, 0.0, 0.0),
            "B'": (s, BC, 0.0),
            "D'": (s, -BC, 0.0),
            "E'": (ex, 0.0, ez),
            "F'": (ex, 0.0, -ez),
        },
        faces=Q_FACES,
        markers={"C'": (s, 0.0, 0.0)},
        name=f"q({t!r})",
    )
    _check_faces(mesh)
    _check_realization(mesh, prescribed_edge_table(t, "q"), rtol)
    return mesh


def measured_edge_lengths(mesh: LabeledMesh) -> EdgeTable:
    """Measure all edges plus the four segments from the midpoint marker.

    The marker segments run to both ends of the edge the marker bisects and
    to the opposite vertices of the two faces on that edge (BC, CD, CE, CF
    for p; B'C', C'D', C'E', C'F' for q).
    """
    marker = single_marker(mesh)
    u, v = host_edge(mesh, marker)
    lengths = {segment_key(a, b): mesh.distance(a, b) for a, b in mesh.edges()}
    ends = {u, v}
    for f in mesh.faces:
        if {u, v} <= set(f):
            ends |= set(f)
    for w in sorted(ends):
        lengths[segment_key(marker, w)] = mesh.distance(marker, w)
    return EdgeTable(lengths, primed=marker.endswith(("'", "′")))


def mirror_z(mesh: LabeledMesh) -> dict[str, np.ndarray]:
    """Vertex and marker coordinates reflected in the plane z = 0."""
    flip = np.array([1.0, 1.0, -1.0])
    return {k: mesh.point(k) * flip for k in (*mesh.vertices, *mesh.markers)}


def mirror_y(mesh: LabeledMesh) -> dict[str, np.ndarray]:
    """Vertex and marker coordinates reflected in the plane y = 0."""
    flip = np.array([1.0, -1.0, 1.0])
    return {k: mesh.point(k) * flip for k in (*mesh.vertices, *mesh.markers)}
