"""Holonomy representations from Fenchel-Nielsen coordinates on the
once-punctured torus, and geodesic length computation.

The gluing recipe: the slope (1,0) curve is represented by the diagonal
matrix X with tr X = 2 cosh(l/2), acting along the imaginary axis.  At zero
twist the slope (0,1) generator is the symmetric matrix Y0 translating along
the unit semicircle, with cosh of its half-length equal to coth(l/2); this is
exactly the condition tr[X, Y] = -2 (cusp relation).  The twist s slides Y
along the axis of X: Y(s) = diag(e^{-s/2}, e^{s/2}) Y0, normalized so that
s -> s + l acts on the length spectrum as one Dehn twist along (1,0).

Words for other slopes come from the Stern-Brocot (continued fraction) walk;
runs of equal steps are collapsed into matrix powers so that slopes with
astronomically large entries (Dehn-twist images) cost O(log) multiplies.
All matrix products carry an explicit log-scale factor, so translation
lengths in the thousands remain representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .curves import Marking, Slope, SurfaceSig, dehn_twist, intersection_number
from .errors import InsufficientCandidates, InvalidFN, NotHyperbolic, Unsupported
from .hyptrig import MARGULIS, Isometry, acosh_from_log


@dataclass(frozen=True)
class FNPoint:
    """A point of Teichmuller space in Fenchel-Nielsen coordinates."""

    sig: SurfaceSig
    lengths: tuple
    twists: tuple

    def __post_init__(self):
        xi = self.sig.complexity
        if len(self.lengths) != xi or len(self.twists) != xi:
            raise InvalidFN(f"need {xi} length/twist pairs for {self.sig}")
        if any(not l > 0.0 for l in self.lengths):
            raise InvalidFN("pants curve lengths must be positive")
        object.__setattr__(self, "lengths", tuple(float(l) for l in self.lengths))
        object.__setattr__(self, "twists", tuple(float(s) for s in self.twists))

    @staticmethod
    def torus(l, s=0.0):
        """Convenience constructor on the once-punctured torus."""
        return FNPoint(SurfaceSig(1, 1), (l,), (s,))

    @property
    def l(self):
        return self.lengths[0]

    @property
    def s(self):
        return self.twists[0]

    def serialize(self):
        return ";".join(
            f"l={l!r},s={s!r}" for l, s in zip(self.lengths, self.twists)
        )

    @staticmethod
    def parse(text, sig=SurfaceSig(1, 1)):
        lengths, twists = [], []
        for chunk in text.split(";"):
            lpart, spart = chunk.split(",")
            lengths.append(float(lpart.removeprefix("l=")))
            twists.append(float(spart.removeprefix("s=")))
        return FNPoint(sig, tuple(lengths), tuple(twists))


# Row-scaled 2x2 matrices: (a, b, c, d, r0, r1, ls) represents
#   e^{ls} * [[a e^{r0}, b e^{r0}], [c e^{r1}, d e^{r1}]].
# Per-row log scales are essential: words on a deeply twisted thin surface
# have entries spanning a dynamic range of e^{|s|}, far beyond what a single
# overall scale factor can hold in double precision.

def _scaled(m: Isometry):
    return (m.a, m.b, m.c, m.d, 0.0, 0.0, 0.0)


def _smul(t1, t2):
    a1, b1, c1, d1, ra0, ra1, la = t1
    e, f, g, h, rb0, rb1, lb = t2
    out = []
    rscales = (ra0, ra1)
    new_r = []
    for i, (u, v) in enumerate(((a1, b1), (c1, d1))):
        cands = []
        if u != 0.0:
            cands.append(rb0 + math.log(abs(u)))
        if v != 0.0:
            cands.append(rb1 + math.log(abs(v)))
        if not cands:
            raise ValueError("zero matrix row")
        m = max(cands)
        # coefficients e^{rb_k - m} never exceed 1/|entry|, so no overflow
        cu = math.copysign(math.exp(math.log(abs(u)) + rb0 - m), u) if u != 0.0 else 0.0
        cv = math.copysign(math.exp(math.log(abs(v)) + rb1 - m), v) if v != 0.0 else 0.0
        p0 = cu * e + cv * g
        p1 = cu * f + cv * h
        mm = max(abs(p0), abs(p1))
        if mm == 0.0:
            raise ValueError("zero matrix row")
        out.append((p0 / mm, p1 / mm))
        new_r.append(rscales[i] + m + math.log(mm))
    return (out[0][0], out[0][1], out[1][0], out[1][1], new_r[0], new_r[1], la + lb)


def _spow(t, k):
    if k < 1:
        raise ValueError("power must be >= 1")
    result = None
    base = t
    while k:
        if k & 1:
            result = base if result is None else _smul(result, base)
        k >>= 1
        if k:
            base = _smul(base, base)
    return result


@dataclass
class Representation:
    """Discrete faithful representation of the (1,1) surface group.

    Generators are stored as scaled matrices so that astronomically large
    twists (entries of size e^{s/2}/l) stay representable.
    """

    sig: SurfaceSig
    fn: FNPoint
    x: tuple
    xinv: tuple
    y: tuple
    yinv: tuple
    _length_cache: dict = field(default_factory=dict, repr=False)

    def commutator_trace(self):
        k = _smul(_smul(self.x, self.y), _smul(self.xinv, self.yinv))
        a, _, _, d, r0, r1, ls = k
        m = max(r0, r1)
        return (a * math.exp(r0 - m) + d * math.exp(r1 - m)) * math.exp(m + ls)

    def slope_matrix(self, c: Slope):
        """Scaled matrix representing the slope c (up to conjugacy)."""
        return _slope_word(c.p, c.q, self.fn.l, self.y)

    def length(self, c: Slope):
        """Translation length of the holonomy of slope c."""
        if c == Slope(1, 0):
            return self.fn.l
        cached = self._length_cache.get(c)
        if cached is not None:
            return cached
        log_half = _log_half_trace(self.slope_matrix(c), c)
        if log_half <= math.log1p(1e-10):
            raise NotHyperbolic(f"slope {c} is not hyperbolic")
        val = 2.0 * acosh_from_log(log_half)
        self._length_cache[c] = val
        return val


def _log_half_trace(t, c=None):
    """log(|trace|/2) of a row-scaled matrix."""
    a, _, _, d, r0, r1, ls = t
    m = max(r0, r1)
    tr = a * math.exp(r0 - m) + d * math.exp(r1 - m)
    if tr == 0.0:
        raise NotHyperbolic(f"slope {c} has zero half-trace")
    return math.log(abs(tr) / 2.0) + m + ls


def _xpow_scaled(l, j):
    """Scaled matrix for X^j = diag(e^{jl/2}, e^{-jl/2}), computed from the
    product j*l directly.

    Powering a stored matrix entry e^{l/2} would round l/2 to the ulp of 1
    first, which ruins the exponent for |j*l| large while l is tiny (deeply
    twisted slopes on a thin surface).  Exact in the row scales.
    """
    u = 0.5 * (j * l)
    return (1.0, 0.0, 0.0, 1.0, u, -u, 0.0)


def _slope_word(p, q, l, y):
    """Stern-Brocot walk computing the primitive word of slope (p, q).

    Mediant convention: W(left + right) = W(right) @ W(left) with the walk
    started at left = (0,1) -> Y and right = (1,0) -> X, so W(1,1) = X @ Y.
    Runs of equal steps are collapsed with matrix powers; as long as the
    right endpoint is still a pure power of the diagonal X its powers are
    taken exactly in the exponent.
    """
    if q == 0:
        return _xpow_scaled(l, 1)  # canonical form has p == 1
    if p == 0:
        return y
    sgn = 1
    if p < 0:
        sgn, p = -1, -p
    a, b, left = 0, 1, y
    c, d = 1, 0
    right = None  # None: right endpoint is still X^sgn
    while True:
        r = p * b - q * a  # target is r/s of the way above left
        s = q * c - p * d
        if r > s:
            j, rem = divmod(r, s)
            pw = _xpow_scaled(l, sgn * j) if right is None else _spow(right, j)
            word = _smul(pw, left)
            if rem == 0:
                return word
            left = word
            a, b = a + j * c, b + j * d
        else:
            j, rem = divmod(s, r)
            base = _xpow_scaled(l, sgn) if right is None else right
            word = _smul(base, _spow(left, j))
            if rem == 0:
                return word
            right = word
            c, d = c + j * a, d + j * b


def build_representation(sigma: FNPoint) -> Representation:
    """Holonomy representation realizing the FN point on the (1,1) surface."""
    if not sigma.sig.is_once_punctured_torus():
        raise Unsupported(f"no exact holonomy for signature {sigma.sig}")
    l, s = sigma.l, sigma.s
    x = _xpow_scaled(l, 1)
    xinv = _xpow_scaled(l, -1)
    ch = 1.0 / math.tanh(l / 2.0)  # cosh of the Y0 half-length
    sh = 1.0 / math.sinh(l / 2.0)
    # Y = diag(e^{-s/2}, e^{s/2}) Y0: the twist slide lives in the row scales
    y = (ch, sh, sh, ch, -s / 2.0, s / 2.0, 0.0)
    # Y^{-1} = Y0^{-1} diag(e^{s/2}, e^{-s/2}) has per-column scales; build
    # it as a product so genuinely negligible entries may underflow to zero
    yinv = _smul((ch, -sh, -sh, ch, 0.0, 0.0, 0.0), _xpow_scaled(s, 1))
    return Representation(sigma.sig, sigma, x, xinv, y, yinv)


_REP_CACHE = {}


def representation(sigma: FNPoint) -> Representation:
    """Cached build_representation (FN points are immutable)."""
    rep = _REP_CACHE.get(sigma)
    if rep is None:
        rep = build_representation(sigma)
        if len(_REP_CACHE) > 4096:
            _REP_CACHE.clear()
        _REP_CACHE[sigma] = rep
    return rep


def curve_length(sigma: FNPoint, c: Slope):
    """Hyperbolic length of the geodesic representative of c at sigma."""
    return representation(sigma).length(c)


def fn_along(sigma: FNPoint, gamma: Slope):
    """Fenchel-Nielsen (length, twist) coordinates of sigma with respect to
    a pants decomposition whose pants curve is gamma.

    Recovered from trace identities: with pants curve of length l and twist s,
    a dual curve delta has cosh(L_delta/2) = coth(l/2) cosh(s/2), and the
    once-twisted dual has cosh(L/2) = coth(l/2) cosh((s - l)/2).  The first
    identity gives |s|; the second resolves the sign.  The overall sign
    convention depends on the dual chosen, but is a function of gamma alone,
    so twist differences between points are consistent.
    """
    if gamma == Slope(1, 0):
        return sigma.l, sigma.s
    rep = representation(sigma)
    l = rep.length(gamma)
    # dual with |p_g*b - q_g*a| = 1 via the extended Euclidean algorithm
    g = math.gcd(abs(gamma.p), abs(gamma.q))
    assert g == 1
    a, b = _bezout_dual(gamma.p, gamma.q)
    delta = Slope(a, b)
    log_cosh_half_delta = _log_cosh_half_length(rep, delta)
    log_arg = log_cosh_half_delta + math.log(math.tanh(l / 2.0))
    s_abs = 2.0 * acosh_from_log(max(log_arg, 0.0))
    if s_abs == 0.0:
        return l, 0.0
    twisted = dehn_twist(delta, gamma, 1)
    measured = _log_cosh_half_length(rep, twisted)
    log_coth = math.log(1.0 / math.tanh(l / 2.0))
    errs = []
    for s in (s_abs, -s_abs):
        predicted = log_coth + _log_cosh((s - l) / 2.0)
        errs.append((abs(predicted - measured), s))
    return l, min(errs)[1]


def _bezout_dual(p, q):
    """Integers (a, b) with p*b - q*a = 1 (a dual slope for (p, q))."""
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        j = old_r // r
        old_r, r = r, old_r - j * r
        old_s, s = s, old_s - j * s
        old_t, t = t, old_t - j * t
    # old_s * p + old_t * q == old_r == +-gcd
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    # p * b - q * a = 1 with (a, b) = (-old_t, old_s)
    return -old_t, old_s


def _log_cosh(x):
    ax = abs(x)
    if ax > 350.0:
        return ax - math.log(2.0)
    return math.log(math.cosh(x))


def _log_cosh_half_length(rep, c):
    return _log_half_trace(rep.slope_matrix(c), c)


def short_marking(sigma: FNPoint, candidates):
    """Greedy shortest pants curve, then shortest dual among the candidates.

    Ties are broken by canonical slope order (q, then p).
    """
    candidates = list(candidates)
    if not candidates:
        raise InsufficientCandidates("no candidate curves")
    rep = representation(sigma)
    pants = min(candidates, key=lambda c: (rep.length(c), c.sort_key()))
    duals = [c for c in candidates if intersection_number(c, pants) == 1]
    if not duals:
        raise InsufficientCandidates(f"no dual candidate for pants curve {pants}")
    dual = min(duals, key=lambda c: (rep.length(c), c.sort_key()))
    return Marking((pants,), (dual,))


def thin_curves(sigma: FNPoint, eps, candidates):
    """Candidates of length at most eps (eps must not exceed the Margulis
    constant, so the result is automatically disjoint)."""
    if eps > MARGULIS:
        raise ValueError(f"threshold {eps} exceeds the Margulis constant")
    rep = representation(sigma)
    out = [c for c in candidates if rep.length(c) <= eps]
    out.sort(key=Slope.sort_key)
    return out
