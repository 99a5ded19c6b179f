"""Hyperbolic-plane and hyperbolic-trigonometry primitives.

Everything here is a pure function on real numbers or on 2x2 determinant-one
matrices.  Lengths beyond LOG_SPACE_THRESHOLD are handled through log-space
asymptotics of cosh/sinh so that products such as cosh(a)cosh(w) never
overflow double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CollarEmpty, Degenerate, NotHyperbolic, PantsCase

#: Margulis constant for hyperbolic surfaces (Yamada's bound).
MARGULIS = 0.2629

#: Default collar boundary length and thin-part threshold (eps0/eps1 > 2).
EPS0 = 0.2
EPS1 = 0.05

#: Above this, cosh/sinh are computed in log space (overflow is near 710).
LOG_SPACE_THRESHOLD = 600.0

#: |trace| must exceed 2 by this much to classify as hyperbolic.
TRACE_TOL = 1e-10

LOG2 = math.log(2.0)


def log_cosh(x):
    """log(cosh x), safe for arbitrarily large |x|."""
    x = abs(x)
    if x > LOG_SPACE_THRESHOLD:
        return x - LOG2
    return math.log(math.cosh(x))


def log_sinh(x):
    """log(sinh x) for x > 0, safe for arbitrarily large x."""
    if x > LOG_SPACE_THRESHOLD:
        return x - LOG2
    return math.log(math.sinh(x))


def acosh_from_log(log_x):
    """acosh(exp(log_x)) for log_x >= 0, safe for huge arguments."""
    if log_x > 40.0:
        # acosh(x) = log(2x) up to O(x^-2); error < 1e-35 here
        return log_x + LOG2
    x = math.exp(log_x)
    if x < 1.0:
        x = 1.0
    return math.acosh(x)


def _acosh_clamped(arg, tol=1e-12):
    """acosh with clamping of arguments within tol below 1."""
    if arg < 1.0:
        if arg < 1.0 - tol:
            raise Degenerate(f"acosh argument {arg} < 1")
        arg = 1.0
    return math.acosh(arg)


@dataclass(frozen=True)
class Isometry:
    """Orientation-preserving isometry of H^2 as a 2x2 real matrix.

    Determinant is renormalized to one after every composition; the matrix
    is only meaningful up to global sign.
    """

    a: float
    b: float
    c: float
    d: float

    @staticmethod
    def identity():
        return Isometry(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def from_rows(row0, row1):
        return Isometry(row0[0], row0[1], row1[0], row1[1])

    @staticmethod
    def diagonal(half_length):
        """Translation of length 2*half_length along the imaginary axis."""
        e = math.exp(half_length)
        return Isometry(e, 0.0, 0.0, 1.0 / e)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __matmul__(self, other):
        m = Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
        return m.renormalized()

    def renormalized(self):
        """Rescale so the determinant is exactly one (it must be near one)."""
        det = self.det()
        if not det > 0.0:
            raise ValueError(f"determinant {det} not positive")
        s = 1.0 / math.sqrt(det)
        return Isometry(self.a * s, self.b * s, self.c * s, self.d * s)

    def inverse(self):
        return Isometry(self.d, -self.b, -self.c, self.a)

    def classify(self, tol=TRACE_TOL):
        t = abs(self.trace())
        if t > 2.0 + tol:
            return "hyperbolic"
        if t >= 2.0 - tol:
            return "parabolic"
        return "elliptic"

    def apply(self, z):
        """Moebius action on a point of the upper half plane."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def axis_endpoints(self):
        """Fixed points on the real line of a hyperbolic isometry."""
        if self.classify() != "hyperbolic":
            raise NotHyperbolic("axis is only defined for hyperbolic isometries")
        if self.c == 0.0:
            # axis is the vertical line through the finite fixed point
            return (self.b / (self.d - self.a), math.inf)
        disc = math.sqrt(self.trace() ** 2 - 4.0)
        x1 = (self.a - self.d - disc) / (2.0 * self.c)
        x2 = (self.a - self.d + disc) / (2.0 * self.c)
        return (x1, x2)


def hyp_distance(z1, z2):
    """Hyperbolic distance between two points of the upper half plane."""
    arg = 1.0 + abs(z1 - z2) ** 2 / (2.0 * z1.imag * z2.imag)
    return _acosh_clamped(arg)


def trace_length(m: Isometry, tol=TRACE_TOL):
    """Translation length of a hyperbolic isometry: 2*acosh(|tr|/2)."""
    t = abs(m.trace())
    if t <= 2.0 + tol:
        raise NotHyperbolic(f"|trace| = {t} <= 2 + tol")
    return 2.0 * math.acosh(t / 2.0)


def hexagon_opposite(a, a2, w):
    """Side opposite the total-perpendicular side of a right-angled hexagon.

    For a right-angled hexagon with alternating sides (a, w, a2, *, c, *):
    cosh c + cosh a cosh a2 = sinh a sinh a2 cosh w.
    """
    if not (a > 0.0 and a2 > 0.0 and w > 0.0):
        raise ValueError("hexagon sides must be positive")
    if max(a, a2, w) > LOG_SPACE_THRESHOLD:
        pos = log_sinh(a) + log_sinh(a2) + log_cosh(w)
        neg = log_cosh(a) + log_cosh(a2)
        if neg >= pos:
            raise Degenerate("no right-angled hexagon with these sides")
        log_arg = pos + math.log1p(-math.exp(neg - pos))
        if log_arg < 0.0:
            raise Degenerate("no right-angled hexagon with these sides")
        return acosh_from_log(log_arg)
    arg = math.sinh(a) * math.sinh(a2) * math.cosh(w) - math.cosh(a) * math.cosh(a2)
    return _acosh_clamped(arg)


def hexagon_residual(a, a2, w, c):
    """Residual of the right-angled hexagon relation at (a, a2, w, c)."""
    return abs(
        math.cosh(c)
        + math.cosh(a) * math.cosh(a2)
        - math.sinh(a) * math.sinh(a2) * math.cosh(w)
    )


def pentagon_side(u, a):
    """Side c of a right-angled pentagon with cosh c = sinh u sinh a."""
    if not (u > 0.0 and a > 0.0):
        raise ValueError("pentagon sides must be positive")
    if max(u, a) > LOG_SPACE_THRESHOLD:
        log_arg = log_sinh(u) + log_sinh(a)
        if log_arg < 0.0:
            raise Degenerate("no right-angled pentagon with these sides")
        return acosh_from_log(log_arg)
    arg = math.sinh(u) * math.sinh(a)
    return _acosh_clamped(arg)


def pentagon_residual(u, a, c):
    return abs(math.cosh(c) - math.sinh(u) * math.sinh(a))


def collar_half_width(l, eps0=EPS0):
    """Distance d with l*cosh(d) = eps0: the equidistant curve at distance d
    from a geodesic of length l has length eps0."""
    if not l > 0.0:
        raise ValueError("core length must be positive")
    if l >= eps0:
        raise CollarEmpty(f"core length {l} >= boundary length {eps0}")
    return math.acosh(eps0 / l)


def fermi_distance(d1, d2, du):
    """Distance between points in Fermi coordinates about a geodesic.

    d1, d2 are signed perpendicular offsets (left of the oriented axis is
    positive), du >= 0 is the displacement along the axis between the feet:
    cosh D = cosh d1 cosh d2 cosh du - sinh d1 sinh d2.
    """
    if du < 0.0:
        raise ValueError("axis displacement must be non-negative")
    if du > LOG_SPACE_THRESHOLD or abs(d1) > LOG_SPACE_THRESHOLD or abs(d2) > LOG_SPACE_THRESHOLD:
        pos = log_cosh(d1) + log_cosh(d2) + log_cosh(du)
        cross = math.tanh(d1) * math.tanh(d2) / math.cosh(min(du, LOG_SPACE_THRESHOLD))
        if du > LOG_SPACE_THRESHOLD:
            cross = 0.0  # suppressed by e^{-du}
        log_arg = pos + math.log1p(-cross)
        return acosh_from_log(log_arg)
    arg = math.cosh(d1) * math.cosh(d2) * math.cosh(du) - math.sinh(d1) * math.sinh(d2)
    return _acosh_clamped(arg)


def arc_to_curve_bound(case, lengths, eps0=EPS0):
    """Length of the closed curve replacing a perpendicular arc, plus the gap.

    case "two-boundary": lengths = (a, a2, b) with a, a2 the half lengths of
    the two (distinct) boundary geodesics and b the arc length; the curve is
    computed from the hexagon relation and gap = |c_hat/2 - b|, bounded by
    2*log(1/eps0) + 4*log 2.

    case "one-boundary": lengths = (l_gamma, a, b) with l_gamma the boundary
    geodesic length, a in [l_gamma/4, l_gamma/2] the pentagon edge along it,
    and b the arc length; the curve comes from the pentagon relation and
    gap = |c_hat/2 - b/2|, bounded by log(1/eps0) + 4*log 2.
    """
    if case == "pants":
        raise PantsCase("pair-of-pants components must be handled by the caller")
    if case == "two-boundary":
        a, a2, b = lengths
        if not b > 0.0:
            raise ValueError("arc length must be positive")
        if 2.0 * a > eps0 / 2.0 or 2.0 * a2 > eps0 / 2.0:
            raise ValueError("boundary lengths must be below eps0/2")
        d = collar_half_width(2.0 * a, eps0)
        d2 = collar_half_width(2.0 * a2, eps0)
        c = hexagon_opposite(a, a2, b + d + d2)
        gap = abs(c - b)
        bound = 2.0 * math.log(1.0 / eps0) + 4.0 * LOG2
    elif case == "one-boundary":
        l_gamma, a, b = lengths
        if not b > 0.0:
            raise ValueError("arc length must be positive")
        if l_gamma > eps0 / 2.0:
            raise ValueError("boundary length must be below eps0/2")
        if not (l_gamma / 4.0 <= a <= l_gamma / 2.0):
            raise ValueError("pentagon edge must lie in [l/4, l/2]")
        d = collar_half_width(l_gamma, eps0)
        c = pentagon_side(b / 2.0 + d, a)
        gap = abs(c - b / 2.0)
        bound = math.log(1.0 / eps0) + 4.0 * LOG2
    else:
        raise ValueError(f"unknown case {case!r}")
    assert gap <= bound + 1e-9, f"arc-to-curve gap {gap} exceeds bound {bound}"
    return 2.0 * c, gap
