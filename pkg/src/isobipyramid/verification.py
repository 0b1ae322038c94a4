"""Mesh-side checks: volume oracle, convexity, isometry certificate, combinatorics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFaceError, GluingMismatchError, OpenMeshError
from .mesh import LabeledMesh, base_label, host_edge, segment_key, single_marker

CONVEXITY_TOL = 1e-9
ISOMETRY_TOL = 1e-9


def mesh_volume(mesh: LabeledMesh) -> float:
    """Signed enclosed volume, ``(1/6) sum a . (b x c)`` over faces (a, b, c).

    Positive for outward orientation.  Flipping every face as
    ``(a, b, c) -> (a, c, b)`` negates each term, hence the total, exactly.

    Raises
    ------
    OpenMeshError
        If some edge is not shared by exactly two faces.
    """
    bad = [tuple(e) for e, fs in mesh.edge_faces().items() if len(fs) != 2]
    if bad:
        raise OpenMeshError(f"{mesh.name or 'mesh'} is not closed; bad edges {bad}")
    tri = mesh.points[mesh.face_index]
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    return float(np.einsum("ij,ij->i", a, np.cross(b, c)).sum() / 6.0)


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of the vertex / face-plane half-space test.

    ``worst_violation`` is the largest signed distance of a vertex to the
    outer side of a face plane (negative when everything is strictly inside).
    """

    is_convex: bool
    worst_violation: float
    worst_face: tuple[str, str, str]
    worst_vertex: str
    reflex_edges: tuple[tuple[str, str], ...]
    tol: float


def _unit_normals(mesh: LabeledMesh, area_tol: float) -> np.ndarray:
    tri = mesh.points[mesh.face_index]
    n = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
    norm = np.linalg.norm(n, axis=1)
    scale = max(float(np.max(np.ptp(mesh.points, axis=0))), 1e-300) ** 2
    small = norm <= 2.0 * area_tol * scale
    if np.any(small):
        i = int(np.argmax(small))
        raise DegenerateFaceError(f"face {mesh.faces[i]} has near-zero area {0.5 * norm[i]:.3g}")
    return n / norm[:, None]


def convexity(mesh: LabeledMesh, tol: float = CONVEXITY_TOL, area_tol: float = 1e-12) -> ConvexityReport:
    """Decide convexity of a closed outward-oriented mesh.

    Every vertex is tested against every face plane; the surface is convex
    iff none lies more than ``tol`` (absolute length units) outside.  An
    edge is reported reflex when the far vertex of one adjacent face lies
    outside the plane of the other, i.e. the interior dihedral angle
    exceeds pi.
    """
    normals = _unit_normals(mesh, area_tol)
    labels = mesh.labels
    pts = mesh.points
    idx = mesh.face_index
    # dist[f, v] = signed distance of vertex v above plane of face f
    dist = np.einsum("fk,fvk->fv", normals, pts[None, :, :] - pts[idx[:, 0]][:, None, :])
    for f, face in enumerate(idx):
        dist[f, face] = -np.inf
    f_w, v_w = np.unravel_index(int(np.argmax(dist)), dist.shape)
    worst = float(dist[f_w, v_w])

    order = {k: i for i, k in enumerate(labels)}
    reflex = []
    for edge, fs in mesh.edge_faces().items():
        if len(fs) != 2:
            continue
        f1, f2 = fs
        (opp2,) = set(mesh.faces[f2]) - edge
        (opp1,) = set(mesh.faces[f1]) - edge
        if dist[f1, order[opp2]] > tol or dist[f2, order[opp1]] > tol:
            reflex.append(tuple(sorted(edge, key=order.__getitem__)))
    reflex.sort(key=lambda e: (order[e[0]], order[e[1]]))
    return ConvexityReport(
        is_convex=worst <= tol,
        worst_violation=worst,
        worst_face=mesh.faces[f_w],
        worst_vertex=labels[v_w],
        reflex_edges=tuple(reflex),
        tol=tol,
    )


@dataclass(frozen=True)
class IsometryCertificate:
    """Common refinement of two surfaces with matched side lengths.

    ``pairs`` lists corresponding triangles (labels on each surface);
    ``sides`` maps each glued side (base labels, e.g. ``"AE"``) to its
    length on the first and second surface.
    """

    pairs: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]
    sides: dict[str, tuple[float, float]]
    gluing: dict[str, tuple[str, str]]
    max_discrepancy: float
    tol: float

    @property
    def valid(self) -> bool:
        return self.max_discrepancy < self.tol

    def discrepancies(self) -> dict[str, float]:
        return {k: abs(a - b) for k, (a, b) in self.sides.items()}

    def offending_sides(self) -> list[str]:
        return [k for k, d in self.discrepancies().items() if d >= self.tol]


def refine_at_marker(mesh: LabeledMesh) -> list[tuple[str, str, str]]:
    """Split the two faces on the marker's host edge, keeping orientation.

    A face ``(u, v, w)`` with host edge ``u -> v`` becomes ``(u, m, w)`` and
    ``(m, v, w)``.
    """
    marker = single_marker(mesh)
    ends = set(host_edge(mesh, marker))
    out = []
    for face in mesh.faces:
        if not ends <= set(face):
            out.append(face)
            continue
        for i in range(3):
            u, v, w = face[i], face[(i + 1) % 3], face[(i + 2) % 3]
            if {u, v} == ends:
                out.extend([(u, marker, w), (marker, v, w)])
                break
    return out


def _key(tri) -> str:
    return "".join(sorted(base_label(x) for x in tri))


def _gluing(tris) -> dict[str, tuple[str, str]]:
    sides: dict[str, list[str]] = {}
    for tri in tris:
        a, b, c = tri
        for u, v in ((a, b), (b, c), (c, a)):
            sides.setdefault(segment_key(u, v), []).append(_key(tri))
    return {k: tuple(sorted(v)) for k, v in sides.items()}


def certify_isometry(mesh_p: LabeledMesh, mesh_q: LabeledMesh, tol: float = ISOMETRY_TOL) -> IsometryCertificate:
    """Certify that two marked surfaces are intrinsically isometric.

    Each surface is refined at its midpoint marker.  The resulting
    triangles must correspond label-for-label (primes ignored) and be glued
    along the same sides; then every side is measured on both surfaces.
    Congruent triangles glued identically give a piecewise-linear,
    length-preserving bijection, so a discrepancy below ``tol`` certifies
    the isometry.

    Raises
    ------
    MissingMarkerError, RefinementError
        A surface lacks its marker or the marker is not an edge midpoint.
    GluingMismatchError
        The refinements differ combinatorially.
    """
    tris_p = refine_at_marker(mesh_p)
    tris_q = refine_at_marker(mesh_q)
    by_key_p = {_key(t): t for t in tris_p}
    by_key_q = {_key(t): t for t in tris_q}
    if set(by_key_p) != set(by_key_q) or len(by_key_p) != len(tris_p) or len(by_key_q) != len(tris_q):
        raise GluingMismatchError(
            f"refined triangles differ: {sorted(set(by_key_p) ^ set(by_key_q))}"
        )
    glue_p, glue_q = _gluing(tris_p), _gluing(tris_q)
    if glue_p != glue_q:
        diff = sorted(k for k in set(glue_p) | set(glue_q) if glue_p.get(k) != glue_q.get(k))
        raise GluingMismatchError(f"gluing patterns differ along {diff}")
    if any(len(v) != 2 for v in glue_p.values()):
        raise GluingMismatchError("refinement is not a closed surface")

    lookup_p = {base_label(x): x for x in (*mesh_p.vertices, *mesh_p.markers)}
    lookup_q = {base_label(x): x for x in (*mesh_q.vertices, *mesh_q.markers)}
    sides = {}
    for key in glue_p:
        u, v = key[0], key[1]
        sides[key] = (
            mesh_p.distance(lookup_p[u], lookup_p[v]),
            mesh_q.distance(lookup_q[u], lookup_q[v]),
        )
    worst = max(abs(a - b) for a, b in sides.values())
    pairs = tuple((by_key_p[k], by_key_q[k]) for k in sorted(by_key_p))
    return IsometryCertificate(pairs, sides, glue_p, float(worst), tol)


def is_bipyramid(mesh: LabeledMesh) -> bool:
    """Closed surface with V, E, F = 5, 9, 6, two degree-3 apexes and three degree-4 vertices."""
    if (mesh.n_vertices, mesh.n_edges, mesh.n_faces) != (5, 9, 6):
        return False
    if not mesh.is_closed():
        return False
    return sorted(mesh.degree(v) for v in mesh.vertices) == [3, 3, 4, 4, 4]


def combinatorics_check(mesh_p: LabeledMesh, mesh_q: LabeledMesh) -> bool:
    """Both surfaces are bipyramids; apex labels need not coincide."""
    return is_bipyramid(mesh_p) and is_bipyramid(mesh_q)
