"""Labeled triangle meshes and edge-length tables.

Vertices and markers are addressed by string labels.  The primed labels of
the nonconvex family (``"A'"``, ``"C'"`` ...) share a *base label* with their
unprimed counterparts, which is how segments on the two surfaces are paired.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .errors import MalformedMeshError, MissingMarkerError, RefinementError

LABEL_ORDER = "ABCDEF"

Face = tuple[str, str, str]
Edge = tuple[str, str]


def base_label(label: str) -> str:
    """Strip prime marks: ``"E'"`` -> ``"E"``."""
    return label.rstrip("'′")


def _rank(label: str) -> tuple[int, str]:
    b = base_label(label)
    return (LABEL_ORDER.index(b) if b in LABEL_ORDER else len(LABEL_ORDER), b)


def segment_key(u: str, v: str) -> str:
    """Order-free name of the segment ``uv`` in base labels, e.g. ``"AE"``."""
    a, b = sorted((u, v), key=_rank)
    return base_label(a) + base_label(b)


def _readonly(point) -> np.ndarray:
    arr = np.array(point, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise MalformedMeshError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MalformedMeshError(f"non-finite coordinate {arr}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LabeledMesh:
    """Closed oriented triangle surface with named vertices.

    Parameters
    ----------
    vertices : mapping
        Label -> 3-vector.  Insertion order fixes the vertex index order
        used by exporters.
    faces : iterable of label triples
        Counter-clockwise when seen from outside.
    markers : mapping, optional
        Label -> 3-vector for auxiliary points that are *not* vertices
        (the midpoints C / C').
    name : str
        Free-form tag, e.g. ``"p(0.2)"``.
    """

    vertices: Mapping[str, np.ndarray]
    faces: tuple[Face, ...]
    markers: Mapping[str, np.ndarray] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        verts = {str(k): _readonly(v) for k, v in dict(self.vertices).items()}
        marks = {str(k): _readonly(v) for k, v in dict(self.markers).items()}
        faces = tuple(tuple(str(x) for x in f) for f in self.faces)
        if len(verts) < 3:
            raise MalformedMeshError(f"need at least 3 vertices, got {len(verts)}")
        if not faces:
            raise MalformedMeshError("mesh has no faces")
        clash = set(verts) & set(marks)
        if clash:
            raise MalformedMeshError(f"labels used both as vertex and marker: {sorted(clash)}")
        for f in faces:
            if len(f) != 3 or len(set(f)) != 3:
                raise MalformedMeshError(f"face {f} is not a triangle of distinct vertices")
            missing = [x for x in f if x not in verts]
            if missing:
                raise MalformedMeshError(f"face {f} references unknown vertices {missing}")
        if len({frozenset(f) for f in faces}) != len(faces):
            raise MalformedMeshError("duplicate face")
        object.__setattr__(self, "vertices", MappingProxyType(verts))
        object.__setattr__(self, "markers", MappingProxyType(marks))
        object.__setattr__(self, "faces", faces)

    # -- basic views -----------------------------------------------------

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.vertices)

    @property
    def points(self) -> np.ndarray:
        """Vertex coordinates, shape ``(V, 3)``, in label order."""
        return np.array([self.vertices[k] for k in self.vertices])

    @property
    def face_index(self) -> np.ndarray:
        """Faces as 0-based index triples, shape ``(F, 3)``."""
        idx = {k: i for i, k in enumerate(self.vertices)}
        return np.array([[idx[x] for x in f] for f in self.faces], dtype=np.intp)

    def point(self, label: str) -> np.ndarray:
        """Coordinates of a vertex or a marker."""
        if label in self.vertices:
            return self.vertices[label]
        if label in self.markers:
            return self.markers[label]
        raise KeyError(label)

    def distance(self, u: str, v: str) -> float:
        return float(np.linalg.norm(self.point(u) - self.point(v)))

    # -- combinatorics ---------------------------------------------------

    def edge_faces(self) -> dict[frozenset, list[int]]:
        """Undirected edge -> indices of the faces containing it."""
        out: dict[frozenset, list[int]] = {}
        for i, (a, b, c) in enumerate(self.faces):
            for u, v in ((a, b), (b, c), (c, a)):
                out.setdefault(frozenset((u, v)), []).append(i)
        return out

    def edges(self) -> list[Edge]:
        """Undirected edges as label pairs, sorted in label order."""
        order = {k: i for i, k in enumerate(self.vertices)}
        pairs = [tuple(sorted(e, key=order.__getitem__)) for e in self.edge_faces()]
        return sorted(pairs, key=lambda p: (order[p[0]], order[p[1]]))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edge_faces())

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def degree(self, label: str) -> int:
        return sum(1 for e in self.edge_faces() if label in e)

    def is_closed(self) -> bool:
        """True when every edge borders exactly two faces."""
        return all(len(fs) == 2 for fs in self.edge_faces().values())

    def is_consistently_oriented(self) -> bool:
        """Each directed edge occurs at most once (neighbours traverse it oppositely)."""
        seen = set()
        for a, b, c in self.faces:
            for d in ((a, b), (b, c), (c, a)):
                if d in seen:
                    return False
                seen.add(d)
        return True

    # -- derived meshes --------------------------------------------------

    def reversed(self) -> "LabeledMesh":
        """Same surface with every face flipped; ``(a, b, c) -> (a, c, b)``."""
        return LabeledMesh(
            self.vertices, tuple((a, c, b) for a, b, c in self.faces), self.markers, self.name
        )

    def translated(self, offset) -> "LabeledMesh":
        off = np.asarray(offset, dtype=float)
        return LabeledMesh(
            {k: v + off for k, v in self.vertices.items()},
            self.faces,
            {k: v + off for k, v in self.markers.items()},
            self.name,
        )

    def without_face(self, index: int) -> "LabeledMesh":
        faces = self.faces[:index] + self.faces[index + 1 :]
        return LabeledMesh(self.vertices, faces, self.markers, self.name)

    def moved(self, label: str, delta) -> "LabeledMesh":
        """Displace one vertex; midpoint markers riding on its edges follow along."""
        hosts = {m: host_edge(self, m) for m in self.markers if _try_host(self, m)}
        verts = dict(self.vertices)
        verts[label] = verts[label] + np.asarray(delta, dtype=float)
        marks = dict(self.markers)
        for m, (u, v) in hosts.items():
            if label in (u, v):
                marks[m] = 0.5 * (verts[u] + verts[v])
        return LabeledMesh(verts, self.faces, marks, self.name)


def host_edge(mesh: LabeledMesh, marker: str, rtol: float = 1e-9) -> Edge:
    """Return the edge whose midpoint is ``marker``.

    Raises
    ------
    MissingMarkerError
        If the mesh carries no such marker.
    RefinementError
        If the marker is not the midpoint of any edge within ``rtol``
        (relative to the edge length).
    """
    if marker not in mesh.markers:
        raise MissingMarkerError(f"mesh {mesh.name!r} has no marker {marker!r}")
    m = mesh.markers[marker]
    best = None
    for u, v in mesh.edges():
        pu, pv = mesh.vertices[u], mesh.vertices[v]
        err = np.linalg.norm(0.5 * (pu + pv) - m) / max(np.linalg.norm(pu - pv), 1e-300)
        if best is None or err < best[0]:
            best = (err, (u, v))
    if best is None or best[0] > rtol:
        raise RefinementError(f"marker {marker!r} is not the midpoint of an edge (rel. err {best[0]:.3g})")
    return best[1]


def _try_host(mesh: LabeledMesh, marker: str) -> bool:
    try:
        host_edge(mesh, marker)
    except RefinementError:
        return False
    return True


def single_marker(mesh: LabeledMesh) -> str:
    if len(mesh.markers) != 1:
        raise MissingMarkerError(
            f"expected exactly one midpoint marker on {mesh.name!r}, found {list(mesh.markers)}"
        )
    return next(iter(mesh.markers))


@dataclass(frozen=True)
class EdgeTable:
    """Segment lengths keyed by base-label pair (``"AE"``, ``"BC"`` ...).

    Lookup accepts primed or reversed names: ``table["E'A'"] == table["AE"]``.
    """

    lengths: Mapping[str, float]
    primed: bool = False

    def __post_init__(self):
        norm = {}
        for k, v in dict(self.lengths).items():
            labels = _split_key(k)
            norm[segment_key(*labels)] = float(v)
        object.__setattr__(self, "lengths", MappingProxyType(norm))

    def __getitem__(self, key: str) -> float:
        return self.lengths[segment_key(*_split_key(key))]

    def __contains__(self, key: str) -> bool:
        return segment_key(*_split_key(key)) in self.lengths

    def __len__(self) -> int:
        return len(self.lengths)

    def keys(self) -> Iterable[str]:
        return self.lengths.keys()

    def common_keys(self, other: "EdgeTable") -> list[str]:
        return [k for k in self.lengths if k in other.lengths]

    def max_discrepancy(self, other: "EdgeTable", rel: bool = False) -> float:
        """Largest difference over the segments both tables carry."""
        worst = 0.0
        for k in self.common_keys(other):
            d = abs(self.lengths[k] - other.lengths[k])
            if rel:
                d /= abs(other.lengths[k])
            worst = max(worst, d)
        return worst


def _split_key(key: str) -> tuple[str, str]:
    toks = [c for c in key if c not in "'′"]
    if len(toks) != 2:
        raise KeyError(key)
    return toks[0], toks[1]
