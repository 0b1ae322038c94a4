"""OBJ / OFF mesh files and the sweep CSV.

Vertex labels and midpoint markers travel as ``#`` comments so a file
written here reads back as the same :class:`LabeledMesh`; other readers
simply ignore them.  Coordinates are written with 17 significant digits,
which round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .errors import MalformedMeshError
from .mesh import LabeledMesh, host_edge

FORMATS = ("obj", "off")
SWEEP_HEADER = ("t", "vol_p_closed", "vol_p_mesh", "vol_q_closed", "vol_q_mesh",
                "ratio", "p_convex", "q_convex", "iso_discrepancy")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _comment_lines(mesh: LabeledMesh) -> list[str]:
    lines = []
    if mesh.name:
        lines.append(f"# name {mesh.name}")
    lines.append("# labels " + " ".join(mesh.labels))
    for m, p in mesh.markers.items():
        u, v = host_edge(mesh, m)
        lines.append(f"# marker {m} midpoint {u} {v} " + " ".join(_fmt(x) for x in p))
    return lines


def format_obj(mesh: LabeledMesh) -> str:
    lines = _comment_lines(mesh)
    lines += ["v " + " ".join(_fmt(x) for x in mesh.vertices[k]) for k in mesh.labels]
    lines += ["f " + " ".join(str(i + 1) for i in f) for f in mesh.face_index]
    return "\n".join(lines) + "\n"


def format_off(mesh: LabeledMesh) -> str:
    lines = ["OFF", *_comment_lines(mesh), f"{mesh.n_vertices} {mesh.n_faces} {mesh.n_edges}"]
    lines += [" ".join(_fmt(x) for x in mesh.vertices[k]) for k in mesh.labels]
    lines += ["3 " + " ".join(str(i) for i in f) for f in mesh.face_index]
    return "\n".join(lines) + "\n"


def export_mesh(mesh: LabeledMesh, fmt: str, path) -> Path:
    """Write ``mesh`` as ``"obj"`` or ``"off"``; I/O failures name the path."""
    fmt = fmt.lower()
    if fmt not in FORMATS:
        raise ValueError(f"unknown mesh format {fmt!r}; expected one of {FORMATS}")
    text = format_obj(mesh) if fmt == "obj" else format_off(mesh)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {fmt.upper()} file {path}: {exc.strerror or exc}") from exc
    return path


def _parse_comments(comments: list[str]):
    name, labels, markers = "", None, []
    for c in comments:
        tok = c.split()
        if not tok:
            continue
        if tok[0] == "name":
            name = c.split(None, 1)[1] if len(tok) > 1 else ""
        elif tok[0] == "labels":
            labels = tok[1:]
        elif tok[0] == "marker" and len(tok) >= 5 and tok[2] == "midpoint":
            markers.append((tok[1], tok[3], tok[4]))
    return name, labels, markers


def _assemble(points, faces, comments) -> LabeledMesh:
    name, labels, markers = _parse_comments(comments)
    if labels is None:
        labels = [f"V{i + 1}" for i in range(len(points))]
    if len(labels) != len(points):
        raise MalformedMeshError(f"{len(labels)} labels for {len(points)} vertices")
    verts = dict(zip(labels, points))
    for f in faces:
        if min(f) < 0 or max(f) >= len(points):
            raise MalformedMeshError(f"face {f} indexes past the vertex list")
    tri = [tuple(labels[i] for i in f) for f in faces]
    # markers are rebuilt as midpoints, not read back
    marks = {m: 0.5 * (np.asarray(verts[u]) + np.asarray(verts[v])) for m, u, v in markers}
    return LabeledMesh(verts, tri, marks, name)


def parse_obj(text: str) -> LabeledMesh:
    points, faces, comments = [], [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        tok = line.split()
        if tok[0] == "v":
            points.append([float(x) for x in tok[1:4]])
        elif tok[0] == "f":
            idx = [int(x.split("/")[0]) for x in tok[1:]]
            if len(idx) != 3:
                raise MalformedMeshError(f"only triangles supported, got {line!r}")
            faces.append([i - 1 if i > 0 else len(points) + i for i in idx])
    return _assemble(points, faces, comments)


def parse_off(text: str) -> LabeledMesh:
    comments, body = [], []
    for raw in text.splitlines():
        line, _, comment = raw.partition("#")
        if comment.strip():
            comments.append(comment.strip())
        if line.strip():
            body.extend(line.split())
    if not body or body[0] != "OFF":
        raise MalformedMeshError("missing OFF header")
    try:
        nv, nf = int(body[1]), int(body[2])
        pos = 4
        points = []
        for _ in range(nv):
            points.append([float(x) for x in body[pos:pos + 3]])
            pos += 3
        faces = []
        for _ in range(nf):
            k = int(body[pos])
            if k != 3:
                raise MalformedMeshError(f"only triangles supported, got a {k}-gon")
            faces.append([int(x) for x in body[pos + 1:pos + 4]])
            pos += 1 + k
    except (IndexError, ValueError) as exc:
        if isinstance(exc, MalformedMeshError):
            raise
        raise MalformedMeshError(f"truncated or invalid OFF body: {exc}") from exc
    return _assemble(points, faces, comments)


def read_mesh(path) -> LabeledMesh:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".off" or text.lstrip().startswith("OFF"):
        return parse_off(text)
    return parse_obj(text)


def write_sweep_csv(records, path) -> Path:
    """One row per record; floats via ``repr`` (shortest exact form)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_HEADER)
        for r in records:
            row = r.as_dict() if hasattr(r, "as_dict") else dict(r)
            w.writerow([_csv_value(row[k]) for k in SWEEP_HEADER])
    return path


def _csv_value(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    x = float(x)
    return "nan" if math.isnan(x) else repr(x)


def read_sweep_csv(path) -> list[dict]:
    out = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            out.append({k: (v == "true") if k in ("p_convex", "q_convex") else float(v)
                        for k, v in row.items()})
    return out
