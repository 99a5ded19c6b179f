"""The model space of regular annulus metrics.

A regular annulus metric is the quotient of a symmetric neighborhood of a
geodesic in the hyperbolic plane, normalized so both boundary circles have
length eps0.  A point is coordinatized by the dimensionless twist t and the
core length l; the space embeds in the upper half plane as (t, 1/l).

Arc classes crossing the core once are indexed by an integer winding n
relative to the reference perpendicular arc at twist zero; their geodesic
lengths are computed exactly in Fermi coordinates about the core.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MismatchedSpace
from .estimates import ADDITIVE, TRUNCATION, MetricEstimate
from .hyptrig import EPS0, collar_half_width, fermi_distance


@dataclass(frozen=True)
class AnnulusPoint:
    """Regular annulus metric in (twist, core length) coordinates."""

    t: float
    l: float
    eps0: float = EPS0

    def __post_init__(self):
        if not 0.0 < self.l < self.eps0:
            raise ValueError(f"core length {self.l} not in (0, {self.eps0})")

    def half_plane_coords(self):
        return (self.t, 1.0 / self.l)


def arc_length(rho: AnnulusPoint, n):
    """Geodesic length of the class with winding n; n=None is the core.

    The arc runs between the feet of the two boundary perpendiculars, offset
    by u = |n - t| * l along the core axis.
    """
    if n is None:
        return rho.l
    d = collar_half_width(rho.l, rho.eps0)
    u = abs(n - rho.t) * rho.l
    return fermi_distance(d, -d, u)


def _log_ratio_deriv(rho1, rho2, x):
    """d/dx of log(len1(x)/len2(x)) for the continuous winding variable x."""
    total = 0.0
    for rho, sign in ((rho1, 1.0), (rho2, -1.0)):
        d = collar_half_width(rho.l, rho.eps0)
        u = (x - rho.t) * rho.l
        ch, sh = math.cosh(d), math.sinh(d)
        length = fermi_distance(d, -d, abs(u))
        # cosh(len) = cosh^2 d cosh u + sinh^2 d
        if abs(u) > 350.0:
            dlen_du = math.copysign(1.0, u)
        else:
            dlen_du = ch * ch * math.sinh(u) / math.sinh(length)
        total += sign * rho.l * dlen_du / length
    return total


def _tail_critical_points(rho1, rho2, lo, hi):
    """Integer neighbors of critical points of the log length ratio on
    [lo, hi], located by sign-change bisection on a geometric sample grid."""
    if hi - lo < 4:
        return set()
    xs = [lo]
    step = 1.0
    while lo + step < hi:
        xs.append(lo + step)
        step *= 2.0
    xs.append(hi)
    out = set()
    prev_x, prev_d = xs[0], _log_ratio_deriv(rho1, rho2, xs[0])
    for x in xs[1:]:
        cur = _log_ratio_deriv(rho1, rho2, x)
        if prev_d == 0.0 or (prev_d < 0.0) != (cur < 0.0):
            a, b = prev_x, x
            for _ in range(80):
                mid = 0.5 * (a + b)
                if (_log_ratio_deriv(rho1, rho2, mid) < 0.0) == (prev_d < 0.0):
                    a = mid
                else:
                    b = mid
            out.add(math.floor(a))
            out.add(math.ceil(b))
        prev_x, prev_d = x, cur
    return out


def winding_candidates(rho1, rho2, n_max):
    """Winding integers where the length-ratio sup over |n| <= n_max can occur.

    Between the two twists the log ratio is strictly monotone in n (one
    length grows while the other shrinks), so its extrema there sit at the
    integers nearest each twist.  On the two tails the ratio can have flat
    interior critical points; those are located by bisection on the exact
    derivative.  Range endpoints complete the set.
    """
    out = set()
    for c in (0.0, rho1.t, rho2.t):
        base = round(c)
        for j in (-2, -1, 0, 1, 2):
            out.add(base + j)
    t_lo = min(rho1.t, rho2.t)
    t_hi = max(rho1.t, rho2.t)
    out |= _tail_critical_points(rho1, rho2, t_hi + 1.0, float(n_max))
    # mirror the left tail onto an increasing interval via x -> -x
    neg1 = AnnulusPoint(-rho1.t, rho1.l, rho1.eps0)
    neg2 = AnnulusPoint(-rho2.t, rho2.l, rho2.eps0)
    out |= {-n for n in _tail_critical_points(neg1, neg2, -t_lo + 1.0, float(n_max))}
    out.add(n_max)
    out.add(-n_max)
    return sorted(n for n in out if abs(n) <= n_max)


def dLA_bruteforce(rho1: AnnulusPoint, rho2: AnnulusPoint, n_max=None):
    """Sup of |log length ratio| over the core and windings |n| <= n_max.

    With n_max=None the cutoff doubles until the value is stable to 1e-9
    (guaranteed since lengths grow linearly in the winding).  The result is
    a lower bound for the sup over the full class family.
    """
    if rho1.eps0 != rho2.eps0:
        raise MismatchedSpace(f"boundary lengths differ: {rho1.eps0} vs {rho2.eps0}")
    if n_max is not None:
        return _dLA_at_cutoff(rho1, rho2, n_max)
    n = 16
    prev = _dLA_at_cutoff(rho1, rho2, n)
    while True:
        n *= 2
        cur = _dLA_at_cutoff(rho1, rho2, n)
        if abs(cur.value - prev.value) < 1e-9 and n > 4 * (abs(rho1.t) + abs(rho2.t) + 1):
            return cur
        prev = cur


def _dLA_at_cutoff(rho1, rho2, n_max):
    # Fold in the candidate sets of all halved cutoffs so the value is
    # monotone non-decreasing along doubling chains of n_max.
    windings = set()
    m = n_max
    while m >= 1:
        windings.update(winding_candidates(rho1, rho2, m))
        m //= 2
    best = abs(math.log(rho1.l / rho2.l))
    witness = "core"
    for n in sorted(windings):
        r = abs(math.log(arc_length(rho1, n) / arc_length(rho2, n)))
        if r > best:
            best, witness = r, f"winding={n}"
    return MetricEstimate(best, TRUNCATION, witness)


def dLA_estimate(rho1: AnnulusPoint, rho2: AnnulusPoint):
    """Closed-form two-case estimate of the annulus distance.

    After swapping so l1 <= l2: if |t1-t2| l1 <= log(1/l1) the distance is
    log(l2/l1) (case i), otherwise log(|t1-t2| l2 / log(1/l1)) (case ii),
    each up to a uniform additive constant.
    """
    if rho1.eps0 != rho2.eps0:
        raise MismatchedSpace(f"boundary lengths differ: {rho1.eps0} vs {rho2.eps0}")
    if rho1.l > rho2.l:
        rho1, rho2 = rho2, rho1
    l1, l2 = rho1.l, rho2.l
    dt = abs(rho1.t - rho2.t)
    if dt * l1 <= math.log(1.0 / l1):
        return MetricEstimate(math.log(l2 / l1), ADDITIVE, "case=i")
    return MetricEstimate(
        math.log(dt * l2 / math.log(1.0 / l1)), ADDITIVE, "case=ii"
    )


def half_plane_distance(z1, z2):
    """Exact hyperbolic distance between (t, 1/l) points of the half plane."""
    (t1, y1), (t2, y2) = z1, z2
    arg = 1.0 + ((t1 - t2) ** 2 + (y1 - y2) ** 2) / (2.0 * y1 * y2)
    return math.acosh(max(arg, 1.0))


def half_plane_estimate(z1, z2):
    """Two-case estimate of the half-plane distance in (t, 1/l) coordinates."""
    (t1, y1), (t2, y2) = z1, z2
    l1, l2 = 1.0 / y1, 1.0 / y2
    if l1 > l2:
        l1, l2 = l2, l1
    dt = abs(t1 - t2)
    if dt * l1 <= 1.0:
        return math.log(l2 / l1)
    return math.log(l2 / l1) + 2.0 * math.log(dt * l1)
