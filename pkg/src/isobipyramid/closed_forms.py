"""Closed-form volumes, the apex angle of q, and their Maclaurin series.

Everything here is mesh-free.  Closed forms accept the closed interval
[0, pi/6] and return the degenerate limits there; only the mesh
constructors insist on the open interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ExistenceError
from .geometry import SQRT3, T0, _ac, _ac_radicand, _ae, _scalar, check_param

AE_LOWER = 12.0 - 5.0 * SQRT3
AE_UPPER = 12.0 + 5.0 * SQRT3
AREA_ABD_Q = 25.0 * SQRT3

# series coefficients quoted with the construction, keyed by power of t
QUOTED_SERIES = {
    "AE": {0: 3.0 * math.sqrt(41.0), 2: -117.0 / (2.0 * math.sqrt(41.0))},
    "vol_p": {1: 1200.0, 3: -1400.0},
    "vol_q": {0: 50.0 * math.sqrt(23.0), 2: 3750.0 / math.sqrt(23.0)},
}


def vol_p_closed(t):
    """Volume of p(t): ``80 (10 cos t + sqrt(100 cos^2 t - 75)) sin t``."""
    arr = check_param(t)
    return _scalar(80.0 * _ac(arr) * np.sin(arr))


def vol_p_two_tetra(t):
    """Same volume as two tetrahedra over ABC: ``(2/3) |EF| area(ABC)``."""
    arr = check_param(t)
    area_abc = 0.5 * 10.0 * _ac(arr) * np.sin(arr)
    return _scalar(2.0 / 3.0 * 24.0 * area_abc)


def _sin_radicand(ae):
    """``438 x^2 - x^4 - 69^2``, evaluated in factored form.

    It equals ``(x^2 - lo^2)(hi^2 - x^2)`` with lo, hi = 12 -+ 5 sqrt 3,
    which keeps the zero at the boundary exact instead of a cancellation.
    """
    x = np.asarray(ae, dtype=float)
    return (x - AE_LOWER) * (x + AE_LOWER) * (AE_UPPER - x) * (AE_UPPER + x)


def existence_margin(ae):
    """Signed distance of ``|A'E'|`` inside the open interval (12 - 5 sqrt 3, 12 + 5 sqrt 3)."""
    x = np.asarray(ae, dtype=float)
    return _scalar(np.minimum(x - AE_LOWER, AE_UPPER - x))


@dataclass(frozen=True)
class Alpha:
    """Angle of triangle A'C'E' at A', with the cosine and sine it was built from."""

    value: float
    cos: float
    sin: float


def alpha_of_AE(ae: float) -> Alpha:
    """Apex angle of q for a given ``|A'E'|``.

    ``cos a = (x^2 - 69) / (10 sqrt3 x)`` and
    ``sin a = sqrt(438 x^2 - x^4 - 69^2) / (10 sqrt3 x)``.

    Raises
    ------
    ExistenceError
        The radicand is negative, i.e. no triangle A'C'E' exists.
    """
    x = float(ae)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"|A'E'| must be positive and finite, got {ae!r}")
    rad = float(_sin_radicand(x))
    if rad < 0.0:
        raise ExistenceError(
            f"|A'E'| = {x!r} outside ({AE_LOWER:.4f}, {AE_UPPER:.4f}); triangle A'C'E' does not exist"
        )
    denom = 10.0 * SQRT3 * x
    c = (x * x - 69.0) / denom
    s = math.sqrt(rad) / denom
    return Alpha(math.atan2(s, c), c, s)


def vol_q_closed_of_AE(ae):
    """Volume of q as a function of ``|A'E'|``: ``(5/3) sqrt(438 x^2 - x^4 - 69^2)``."""
    rad = _sin_radicand(ae)
    if np.any(rad < 0.0):
        raise ExistenceError(f"|A'E'| = {ae!r} violates the existence bounds")
    return _scalar(5.0 / 3.0 * np.sqrt(rad))


def vol_q_apex_height(ae: float) -> float:
    """Volume of q as a double cone: ``(1/3) |E'F'| area(A'B'D')`` with ``|E'F'| = 2 x sin a``."""
    alpha = alpha_of_AE(ae)
    return (2.0 * float(ae) * alpha.sin) * AREA_ABD_Q / 3.0


def vol_q_closed(t):
    """Volume of q(t), i.e. :func:`vol_q_closed_of_AE` composed with ``|AE|(t)``."""
    arr = check_param(t)
    return vol_q_closed_of_AE(_ae(arr))


def _face_slack(t):
    """Smallest strict triangle-inequality slack over all faces of p(t), q(t) and their refinements."""
    ae = _ae(t)
    triples = [
        (10.0, 13.0, ae),    # ABE ABF ADE ADF and primed copies
        (13.0, 13.0, 24.0),  # BEF, DEF
        (13.0, 13.0, 10.0),  # B'D'E', B'D'F'
        (5.0, 12.0, 13.0),   # BCE ... after splitting at C / C'
    ]
    slack = np.inf
    for a, b, c in triples:
        a, b, c = (np.asarray(v, dtype=float) for v in (a, b, c))
        slack = np.minimum(slack, np.minimum(np.minimum(a + b - c, b + c - a), c + a - b))
    return slack


def existence_interval(grid: int = 10_000) -> tuple[float, float]:
    """Open interval of t on which both p(t) and q(t) are non-degenerate.

    The right end of p's range is where ``100 cos^2 t = 75``.  q needs
    ``|AE|(t)`` inside (12 - 5 sqrt 3, 12 + 5 sqrt 3); if that failed
    somewhere below, the first failure would be bracketed on the grid and
    bisected.  All face triangle inequalities are checked on the same grid
    and at both analytic endpoints.
    """
    t0 = math.acos(math.sqrt(0.75))  # root of the |AC| radicand
    t0 = min(t0, T0)
    ts = np.linspace(0.0, t0, grid + 2)
    ok = (existence_margin(_ae(ts)) > 0.0) & (_face_slack(ts) > 0.0) & (_ac_radicand(ts) >= 0.0)
    t_hi = t0
    if not np.all(ok):
        k = int(np.argmin(ok))
        if k == 0:
            raise ExistenceError("construction fails already at t = 0")
        lo, hi = float(ts[k - 1]), float(ts[k])
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if existence_margin(_ae(mid)) > 0.0 and _face_slack(mid) > 0.0:
                lo = mid
            else:
                hi = mid
        t_hi = lo
    return 0.0, float(t_hi)


# -- series checks -------------------------------------------------------

_FUNCS = {
    # unchecked kernels: analytic on |t| < pi/6, needed for the negative stencil points
    "AE": _ae,
    "vol_p": lambda t: 80.0 * _ac(t) * np.sin(t),
    "vol_q": lambda t: 5.0 / 3.0 * np.sqrt(_sin_radicand(_ae(t))),
}


def _central(f, k: int, h: float) -> float:
    """k-th derivative at 0 by the standard second-order central stencils."""
    if k == 0:
        return float(f(0.0))
    if k == 1:
        return float((f(h) - f(-h)) / (2 * h))
    if k == 2:
        return float((f(h) - 2 * f(0.0) + f(-h)) / h**2)
    if k == 3:
        return float((f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h**3))
    raise ValueError(f"derivative order {k} not supported (0..3)")


def richardson(values, p: int = 2, r: float = 2.0) -> float:
    """Richardson table on estimates at steps h, h/r, h/r^2 ... with error O(h^p)."""
    vals = [float(v) for v in values]
    for j in range(1, len(vals)):
        factor = r ** (p * j)
        vals = [(factor * vals[i + 1] - vals[i]) / (factor - 1.0) for i in range(len(vals) - 1)]
    return vals[0]


@dataclass(frozen=True)
class SeriesCoeffs:
    """Numerically estimated Maclaurin coefficients beside the quoted ones.

    ``estimated[k]`` is the coefficient of ``t**k`` for ``k <= order``.
    ``quoted`` maps powers to the analytic values printed with the
    construction.
    """

    fn_id: str
    order: int
    estimated: tuple[float, ...]
    quoted: dict[int, float] = field(default_factory=dict)

    def rel_error(self, k: int) -> float:
        q = self.quoted[k]
        return abs(self.estimated[k] - q) / abs(q)

    def agrees(self, rtol: float = 1e-5) -> dict[int, bool]:
        return {k: self.rel_error(k) <= rtol for k in self.quoted}

    @property
    def c0(self) -> float:
        return self.estimated[0]

    @property
    def c2(self) -> float:
        return self.estimated[2]


def maclaurin_check(fn_id: str, order: int = 3, h: float = 1e-3, levels: int = 2) -> SeriesCoeffs:
    """Estimate Maclaurin coefficients of ``AE``, ``vol_p`` or ``vol_q`` at t = 0.

    Central differences at steps ``h`` and ``h/2`` combined by one
    Richardson step (``levels=2``).
    """
    if fn_id not in _FUNCS:
        raise ValueError(f"fn_id must be one of {sorted(_FUNCS)}, got {fn_id!r}")
    if not 0 <= order <= 3:
        raise ValueError("order must be between 0 and 3")
    f = _FUNCS[fn_id]
    coeffs = []
    for k in range(order + 1):
        if k == 0:
            coeffs.append(float(f(0.0)))
            continue
        ests = [_central(f, k, h / 2**j) for j in range(levels)]
        coeffs.append(richardson(ests) / math.factorial(k))
    quoted = {k: v for k, v in QUOTED_SERIES[fn_id].items() if k <= order}
    return SeriesCoeffs(fn_id, order, tuple(coeffs), quoted)
