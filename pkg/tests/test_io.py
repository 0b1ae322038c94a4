import re

import numpy as np
import pytest

from isobipyramid.errors import MalformedMeshError
from isobipyramid.geometry import construct_p, construct_q
from isobipyramid.io import (
    SWEEP_HEADER,
    export_mesh,
    format_obj,
    parse_obj,
    parse_off,
    read_mesh,
    read_sweep_csv,
    write_sweep_csv,
)
from isobipyramid.solver import sweep
from isobipyramid.verification import certify_isometry, mesh_volume


def test_obj_structure(tmp_path):
    path = export_mesh(construct_p(0.2), "obj", tmp_path / "p.obj")
    lines = path.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 5
    assert sum(l.startswith("f ") for l in lines) == 6
    assert "# marker C midpoint E F 0 0 0" in lines


def test_obj_vertex_order_and_indexing():
    text = format_obj(construct_p(0.2))
    assert "# labels A B D E F" in text
    faces = [l.split()[1:] for l in text.splitlines() if l.startswith("f ")]
    assert faces[0] == ["1", "2", "4"]  # A B E, 1-indexed
    assert min(int(i) for f in faces for i in f) == 1


@pytest.mark.parametrize("fmt", ["obj", "off"])
@pytest.mark.parametrize("make", [construct_p, construct_q])
def test_round_trip_exact(tmp_path, fmt, make):
    m = make(0.2)
    back = read_mesh(export_mesh(m, fmt, tmp_path / f"m.{fmt}"))
    assert back.labels == m.labels
    assert back.faces == m.faces
    np.testing.assert_array_equal(back.points, m.points)
    for k in m.markers:
        np.testing.assert_array_equal(back.markers[k], m.markers[k])
    assert mesh_volume(back) == mesh_volume(m)
    assert back.name == m.name


def test_round_trip_keeps_isometry(tmp_path):
    p = read_mesh(export_mesh(construct_p(0.3), "obj", tmp_path / "p.obj"))
    q = read_mesh(export_mesh(construct_q(0.3), "off", tmp_path / "q.off"))
    assert certify_isometry(p, q).max_discrepancy < 1e-12


_NUM = r"[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?"


def test_off_grammar(tmp_path):
    text = export_mesh(construct_q(0.2), "off", tmp_path / "q.off").read_text()
    body = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    assert body[0] == "OFF"
    nv, nf, ne = map(int, body[1].split())
    assert (nv, nf, ne) == (5, 6, 9)
    for line in body[2:2 + nv]:
        assert re.fullmatch(rf"{_NUM} {_NUM} {_NUM}", line)
    for line in body[2 + nv:]:
        n, *idx = map(int, line.split())
        assert n == 3 and all(0 <= i < nv for i in idx)
    assert len(body) == 2 + nv + nf


def test_plain_obj_without_labels():
    m = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 1 3 2\nf 1 2 4\nf 1 4 3\nf 2 3 4\n")
    assert m.labels == ("V1", "V2", "V3", "V4")
    assert mesh_volume(m) == pytest.approx(1 / 6)


def test_obj_quads_rejected():
    with pytest.raises(MalformedMeshError):
        parse_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n")


def test_off_truncated():
    with pytest.raises(MalformedMeshError):
        parse_off("OFF\n4 4 6\n0 0 0\n1 0 0\n")


def test_off_missing_header():
    with pytest.raises(MalformedMeshError):
        parse_off("4 4 6\n")


def test_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        export_mesh(construct_p(0.2), "stl", tmp_path / "p.stl")


def test_write_error_names_path(tmp_path):
    target = tmp_path / "missing" / "p.obj"
    with pytest.raises(OSError, match="missing"):
        export_mesh(construct_p(0.2), "obj", target)


def test_sweep_csv(tmp_path):
    rows = sweep(0.05, 0.4, 6)
    path = write_sweep_csv(rows, tmp_path / "s.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_HEADER)
    assert len(lines) == 7
    back = read_sweep_csv(path)
    for r, b in zip(rows, back):
        # repr round-trips doubles exactly
        assert b["vol_q_mesh"] == r.vol_q_mesh
        assert b["ratio"] == r.ratio
        assert b["p_convex"] is True and b["q_convex"] is False
