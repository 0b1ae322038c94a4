"""Exit criteria, one test (or parametrized family) per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from isobipyramid.closed_forms import (
    AE_LOWER,
    AE_UPPER,
    maclaurin_check,
    vol_p_closed,
    vol_q_closed,
)
from isobipyramid.geometry import T0, construct_p, construct_q, length_AE
from isobipyramid.solver import find_t_star, ratio
from isobipyramid.verification import (
    certify_isometry,
    combinatorics_check,
    convexity,
    mesh_volume,
)


def record(tag, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
    return ok


def test_c1_vol_q_limit():
    err = abs(vol_q_closed(1e-4) - 50 * math.sqrt(23))
    assert record("1 vol q -> 50 sqrt 23", err < 1e-3, f"|vol_q(1e-4) - 50 sqrt23| = {err:.3e} < 1e-3")


def test_c2_vol_p_slope():
    err = abs(vol_p_closed(1e-4) / 1e-4 - 1200)
    assert record("2 vol p slope 1200", err < 1e-2, f"|vol_p(1e-4)/1e-4 - 1200| = {err:.3e} < 1e-2")


SERIES = [
    ("AE", 0, 3 * math.sqrt(41)),
    ("AE", 2, -117 / (2 * math.sqrt(41))),
    ("vol_p", 1, 1200.0),
    ("vol_p", 3, -1400.0),
    ("vol_q", 0, 50 * math.sqrt(23)),
    ("vol_q", 2, 3750 / math.sqrt(23)),
]


@pytest.mark.parametrize("fn_id,power,quoted", SERIES, ids=[f"{f}-t{k}" for f, k, _ in SERIES])
def test_c3_series_coefficients(fn_id, power, quoted):
    start = time.perf_counter()
    est = maclaurin_check(fn_id).estimated[power]
    elapsed = time.perf_counter() - start
    rel = abs(est - quoted) / abs(quoted)
    ok = rel <= 1e-5 and elapsed < 1.0
    assert record(
        f"3 series {fn_id} t^{power}", ok,
        f"numeric {est:+.10g} vs quoted {quoted:+.10g}, rel.err {rel:.2e} (<= 1e-5), {elapsed:.3f}s",
    )


def test_c4_oracle_equivalence():
    start = time.perf_counter()
    worst = 0.0
    for t in np.linspace(0.01, T0 - 0.01, 100):
        worst = max(
            worst,
            abs(mesh_volume(construct_p(t)) / vol_p_closed(t) - 1),
            abs(mesh_volume(construct_q(t)) / vol_q_closed(t) - 1),
        )
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 5.0
    assert record("4 mesh vs closed-form volumes", ok,
                  f"max rel. diff {worst:.2e} < 1e-9 over 100 t, {elapsed:.2f}s")


def test_c5_theorem_end_to_end():
    start = time.perf_counter()
    details = []
    ok = True
    for c in (1, 10, 100, 1e3, 1e4):
        t = find_t_star(c)
        p, q = construct_p(t), construct_q(t)
        rq = convexity(q)
        cert = certify_isometry(p, q)
        checks = {
            "ratio": ratio(t) > c,
            "p convex": convexity(p).is_convex,
            "q nonconvex at B'D'": (not rq.is_convex) and rq.reflex_edges == (("B'", "D'"),),
            "isometry": cert.valid and cert.max_discrepancy < 1e-12,
            "V,E,F": combinatorics_check(p, q)
            and all((m.n_vertices, m.n_edges, m.n_faces) == (5, 9, 6) for m in (p, q)),
        }
        ok &= all(checks.values())
        details.append(f"c={c:g}: t*={t:.4e} ratio={ratio(t):.4g} disc={cert.max_discrepancy:.1e}")
        if not all(checks.values()):
            details.append(f"  failed {[k for k, v in checks.items() if not v]}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10.0
    assert record("5 end-to-end ratio ladder", ok, "; ".join(details) + f" ({elapsed:.2f}s)")


def test_c6_existence_inequality():
    ts = np.linspace(0, T0, 10_001)
    ae = length_AE(ts)
    bounds_ok = (abs(AE_LOWER - 3.3397) < 1e-4 and abs(AE_UPPER - 20.6603) < 1e-4
                 and bool(np.all((ae > AE_LOWER) & (ae < AE_UPPER))))
    x = 12 - 5 * math.sqrt(3)
    resid = abs(438 * x**2 - x**4 - 69**2)
    ok = bounds_ok and resid < 1e-9
    assert record("6 existence inequality", ok,
                  f"|A'E'| in [{ae.min():.4f}, {ae.max():.4f}] inside ({AE_LOWER:.4f}, {AE_UPPER:.4f}); "
                  f"boundary residual {resid:.1e} < 1e-9")


def test_c7_endpoint_coincidence():
    target = 200 * math.sqrt(3)
    ep = abs(vol_p_closed(T0) / target - 1)
    eq = abs(vol_q_closed(T0) / target - 1)
    ok = ep < 1e-12 and eq < 1e-12
    assert record("7 endpoint coincidence", ok, f"rel. err p {ep:.1e}, q {eq:.1e} vs 200 sqrt3 (< 1e-12)")


@pytest.mark.parametrize("label", ["A'", "B'", "D'", "E'", "F'"])
def test_c8_negative_control(label):
    p, q = construct_p(0.2), construct_q(0.2)
    cert = certify_isometry(p, q.moved(label, [1e-3, 0.0, 0.0]))
    ok = (not cert.valid) and cert.max_discrepancy >= 5e-4
    assert record(f"8 perturb {label} by 1e-3 along x", ok,
                  f"discrepancy {cert.max_discrepancy:.3e} (>= 5e-4), valid={cert.valid}")
