"""Pick t* with vol q(t*) / vol p(t*) > c and check the resulting pair.

The ratio blows up like ``50 sqrt(23) / (1200 t)`` as t -> 0+, so any finite
target can be met.  The search is seeded with that leading-order estimate
and refined by bisection on the closed-form ratio; it never assumes the
ratio is monotone, only that each bracket end it uses has been evaluated.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .closed_forms import existence_interval, vol_p_closed, vol_q_closed
from .errors import BoundsError, DegenerateError, DomainError, UnderflowError, VerificationError
from .geometry import T0, check_param, construct_p, construct_q
from .verification import (
    ISOMETRY_TOL,
    ConvexityReport,
    IsometryCertificate,
    certify_isometry,
    combinatorics_check,
    convexity,
    mesh_volume,
)

VOL_Q_AT_ZERO = 50.0 * math.sqrt(23.0)
VOL_P_SLOPE = 1200.0
T_FLOOR = 1e-12
MESH_FLOOR = 1e-6  # below this the mesh oracle is not consulted
VOLUME_RTOL = 1e-9


@dataclass(frozen=True)
class RatioTarget:
    """Requested volume ratio ``c`` and the safety factor applied to it."""

    c: float
    margin: float = 2.0

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise DomainError(f"c must be finite and positive, got {self.c!r}")
        if not (math.isfinite(self.margin) and self.margin >= 1.0):
            raise DomainError(f"margin must be >= 1, got {self.margin!r}")

    @property
    def goal(self) -> float:
        return self.c * self.margin


def ratio(t: float) -> float:
    """``vol q(t) / vol p(t)`` from the closed forms, for ``0 < t <= pi/6``."""
    arr = check_param(t)
    if np.any(arr == 0.0):
        raise DegenerateError("vol p(0) = 0; the ratio is unbounded at t = 0")
    q, p = vol_q_closed(arr), vol_p_closed(arr)
    return q / p


def leading_order_t(goal: float) -> float:
    """``t`` at which the leading-order ratio ``50 sqrt23 / (1200 t)`` equals ``goal``."""
    return VOL_Q_AT_ZERO / (VOL_P_SLOPE * goal)


def find_t_star(target: RatioTarget | float, *, floor: float = T_FLOOR,
                verify: bool = True, rtol: float = 1e-12) -> float:
    """Return t* inside the existence interval with ``ratio(t*) >= margin * c``.

    The leading-order guess is clamped into the interval.  If it falls
    short it is halved until feasible; then the feasible end is pushed
    right by doubling and the infeasible bracket bisected, returning the
    largest feasible point found.  With ``verify`` the full witness (see
    :func:`theorem_witness`) must hold for the plain target ``c``.

    Raises
    ------
    UnderflowError
        If t* would have to fall below ``floor``.
    VerificationError
        If ``verify`` is set and the witness fails.
    """
    if not isinstance(target, RatioTarget):
        target = RatioTarget(float(target))
    goal = target.goal
    lo_end, hi_end = existence_interval()
    hi_cap = 0.999 * hi_end

    def feasible(t):
        return ratio(t) >= goal

    t = min(leading_order_t(goal), hi_cap)
    while not feasible(t):
        t *= 0.5
        if t < floor:
            raise UnderflowError(f"t* for c = {target.c!r} would fall below the floor {floor!r}")

    lo, hi = t, None
    while hi is None:
        nxt = min(2.0 * lo, hi_cap)
        if not feasible(nxt):
            hi = nxt
        elif nxt == hi_cap:
            lo = nxt
            break
        else:
            lo = nxt
    if hi is not None:
        while hi - lo > rtol * lo:
            mid = 0.5 * (lo + hi)
            if feasible(mid):
                lo = mid
            else:
                hi = mid
    t_star = lo
    assert lo_end < t_star < hi_end

    if verify:
        w = theorem_witness(t_star)
        if not w.holds(target.c):
            raise VerificationError(f"witness at t* = {t_star!r} failed: {w.failures(target.c)}")
    return t_star


@dataclass(frozen=True)
class TheoremWitness:
    """Everything checked about the pair p(t), q(t)."""

    t: float
    vol_p: float
    vol_q: float
    ratio: float
    vol_p_mesh: float | None
    vol_q_mesh: float | None
    p_convexity: ConvexityReport
    q_convexity: ConvexityReport
    certificate: IsometryCertificate
    combinatorics_ok: bool
    volume_rtol: float = VOLUME_RTOL

    @property
    def volumes_agree(self) -> bool:
        if self.vol_p_mesh is None:
            return True
        return (abs(self.vol_p_mesh - self.vol_p) <= self.volume_rtol * self.vol_p
                and abs(self.vol_q_mesh - self.vol_q) <= self.volume_rtol * self.vol_q)

    def failures(self, c: float) -> list[str]:
        out = []
        if not self.vol_p > 0:
            out.append("vol p is not positive")
        if not self.ratio > c:
            out.append(f"ratio {self.ratio:.6g} <= c = {c:.6g}")
        if not self.p_convexity.is_convex:
            out.append("p is not convex")
        if self.q_convexity.is_convex:
            out.append("q is convex")
        if not self.certificate.valid:
            out.append(f"isometry discrepancy {self.certificate.max_discrepancy:.3g}")
        if not self.combinatorics_ok:
            out.append("not a pair of bipyramids")
        if not self.volumes_agree:
            out.append("mesh and closed-form volumes disagree")
        return out

    def holds(self, c: float) -> bool:
        return not self.failures(c)


def theorem_witness(t: float, *, mesh_floor: float = MESH_FLOOR,
                    iso_tol: float = ISOMETRY_TOL, convex_tol: float | None = None,
                    volume_rtol: float = VOLUME_RTOL) -> TheoremWitness:
    """Build p(t), q(t) and run every check on them."""
    p = construct_p(t)
    q = construct_q(t)
    kw = {} if convex_tol is None else {"tol": convex_tol}
    vp, vq = vol_p_closed(t), vol_q_closed(t)
    use_mesh = t >= mesh_floor
    return TheoremWitness(
        t=float(t),
        vol_p=vp,
        vol_q=vq,
        ratio=vq / vp,
        vol_p_mesh=mesh_volume(p) if use_mesh else None,
        vol_q_mesh=mesh_volume(q) if use_mesh else None,
        p_convexity=convexity(p, **kw),
        q_convexity=convexity(q, **kw),
        certificate=certify_isometry(p, q, tol=iso_tol),
        combinatorics_ok=combinatorics_check(p, q),
        volume_rtol=volume_rtol,
    )


@dataclass(frozen=True)
class SweepRecord:
    t: float
    vol_p_closed: float
    vol_p_mesh: float
    vol_q_closed: float
    vol_q_mesh: float
    ratio: float
    p_convex: bool
    q_convex: bool
    iso_discrepancy: float

    @property
    def valid(self) -> bool:
        if math.isnan(self.vol_p_mesh):
            return True
        return (abs(self.vol_p_mesh - self.vol_p_closed) <= VOLUME_RTOL * self.vol_p_closed
                and abs(self.vol_q_mesh - self.vol_q_closed) <= VOLUME_RTOL * self.vol_q_closed)

    def as_dict(self) -> dict:
        return asdict(self)


SWEEP_FIELDS = tuple(SweepRecord.__dataclass_fields__)


def sweep_row(t: float, mesh_floor: float = MESH_FLOOR) -> SweepRecord:
    w = theorem_witness(t, mesh_floor=mesh_floor)
    return SweepRecord(
        t=w.t,
        vol_p_closed=w.vol_p,
        vol_p_mesh=math.nan if w.vol_p_mesh is None else w.vol_p_mesh,
        vol_q_closed=w.vol_q,
        vol_q_mesh=math.nan if w.vol_q_mesh is None else w.vol_q_mesh,
        ratio=w.ratio,
        p_convex=w.p_convexity.is_convex,
        q_convex=w.q_convexity.is_convex,
        iso_discrepancy=w.certificate.max_discrepancy,
    )


def sweep(t_min: float, t_max: float, steps: int) -> list[SweepRecord]:
    """Evaluate ``steps`` uniformly spaced parameters in ``[t_min, t_max]``."""
    if not (0.0 < t_min < t_max < T0):
        raise BoundsError(f"need 0 < t_min < t_max < pi/6, got t_min={t_min!r}, t_max={t_max!r}")
    if int(steps) != steps or steps < 2:
        raise BoundsError(f"steps must be an integer >= 2, got {steps!r}")
    return [sweep_row(float(t)) for t in np.linspace(t_min, t_max, int(steps))]
