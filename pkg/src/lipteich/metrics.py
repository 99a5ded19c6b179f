"""Distances and estimators on Teichmuller space.

The one-sided stretch factor is the sup of hyperbolic length ratios over
simple closed curves; its symmetrized log is the Lipschitz distance.  All
suprema over infinite curve families are truncated to finite candidate sets
and tagged with their guarantee class.  The flat torus carries both metrics
exactly (via extremal lengths and flat lengths of slopes) and serves as the
exact testbed.  Thin-part points project to the regular-annulus model where
the product-region sup formulas apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .annulus import (
    AnnulusPoint,
    dLA_estimate,
    half_plane_distance,
    winding_candidates,
)
from .curves import Marking, Slope, dehn_twist, enumerate_slopes, marking_intersection
from .errors import NotThin, Overflow
from .estimates import ADDITIVE, EXACT, TRUNCATION, MetricEstimate
from .holonomy import (
    FNPoint,
    fn_along,
    representation,
    short_marking,
    thin_curves,
)
from .hyptrig import EPS0, EPS1


@dataclass(frozen=True)
class FlatTorus:
    """Unit-area flat torus with modulus tau in the upper half plane."""

    tau: complex

    def __post_init__(self):
        if not self.tau.imag > 0.0:
            raise ValueError("modulus must have positive imaginary part")


# ---------------------------------------------------------------------------
# Lipschitz metric via length-ratio suprema


def lipschitz_sup(sigma: FNPoint, tau: FNPoint, candidates) -> MetricEstimate:
    """Truncated one-sided stretch factor: max over candidates of
    l_tau(c) / l_sigma(c).  Not symmetric in its arguments."""
    rep_s = representation(sigma)
    rep_t = representation(tau)
    best, witness = -math.inf, None
    for c in candidates:
        r = rep_t.length(c) / rep_s.length(c)
        if r > best:
            best, witness = r, c
    if witness is None:
        raise ValueError("empty candidate family")
    return MetricEstimate(best, TRUNCATION, f"witness={witness}")


def dL(sigma: FNPoint, tau: FNPoint, candidates=None) -> MetricEstimate:
    """Symmetrized Lipschitz distance log max of the two one-sided sups."""
    if candidates is None:
        candidates = adaptive_candidates(sigma, tau)
    fwd = lipschitz_sup(sigma, tau, candidates)
    bwd = lipschitz_sup(tau, sigma, candidates)
    if fwd.value >= bwd.value:
        return MetricEstimate(math.log(fwd.value), TRUNCATION, fwd.detail)
    return MetricEstimate(math.log(bwd.value), TRUNCATION, bwd.detail)


def candidate_family(sigma: FNPoint, tau: FNPoint, n, eps1=EPS1, eps0=EPS0):
    """Slope family for stretch suprema: the slope box of cutoff n, both
    short markings, and Dehn-twist images along any thin curve.

    Twist powers along a shared thin curve are taken from the annulus-model
    winding search, which locates where length-ratio suprema of crossing
    curves can occur; those powers are applied to a dual of the thin curve
    with a small window around each.
    """
    base = enumerate_slopes(n)
    extra = set()
    seeds = set(base[:16])
    for point in (sigma, tau):
        mu = short_marking(point, base)
        seeds.update(mu.curves())
        extra.update(mu.curves())
    gamma = Slope(1, 0)
    thin = set(thin_curves(sigma, eps1, [gamma]) + thin_curves(tau, eps1, [gamma]))
    for g in thin:
        l_s, s_s = fn_along(sigma, g)
        l_t, s_t = fn_along(tau, g)
        t_s, t_t = s_s / l_s, s_t / l_t
        r1 = AnnulusPoint(t_s, min(l_s, 0.5 * eps0), eps0)
        r2 = AnnulusPoint(t_t, min(l_t, 0.5 * eps0), eps0)
        n_max = 4 * (math.ceil(abs(t_s)) + math.ceil(abs(t_t)) + 4)
        windings = winding_candidates(r1, r2, n_max)
        ks = {0, round(t_t - t_s), -round(t_t - t_s)}
        for w in windings:
            for j in (-2, -1, 0, 1, 2):
                ks.add(w + j)
                ks.add(-w + j)
        for c in seeds:
            for k in ks:
                if k != 0:
                    extra.add(dehn_twist(c, g, k))
    out = list(base) + sorted(extra.difference(base), key=Slope.sort_key)
    return out


def adaptive_candidates(sigma, tau, start_n=8, tol=1e-7, max_n=32, eps1=EPS1):
    """Grow the slope cutoff until both one-sided sups are stable to tol."""
    n = start_n
    fam = candidate_family(sigma, tau, n, eps1)
    fwd = lipschitz_sup(sigma, tau, fam).value
    bwd = lipschitz_sup(tau, sigma, fam).value
    while n < max_n:
        n *= 2
        fam2 = candidate_family(sigma, tau, n, eps1)
        fwd2 = lipschitz_sup(sigma, tau, fam2).value
        bwd2 = lipschitz_sup(tau, sigma, fam2).value
        stable = abs(fwd2 - fwd) < tol and abs(bwd2 - bwd) < tol
        fam, fwd, bwd = fam2, fwd2, bwd2
        if stable:
            break
    return fam


def thick_quantity(sigma: FNPoint, tau: FNPoint, which, candidates) -> MetricEstimate:
    """Marking-based distance estimators for thick pairs.

    which=3: log max over the sigma short marking of l_tau/l_sigma.
    which=4: log max over the tau short marking of l_sigma/l_tau.
    A pair that is not thick gets a 'not-thick' tag but is still computed.
    """
    if which not in (3, 4):
        raise ValueError("which must be 3 or 4")
    if which == 4:
        sigma, tau = tau, sigma
    mu = short_marking(sigma, candidates)
    rep_s = representation(sigma)
    rep_t = representation(tau)
    best, witness = -math.inf, None
    for c in mu.curves():
        r = rep_t.length(c) / rep_s.length(c)
        if r > best:
            best, witness = r, c
    detail = f"witness={witness}"
    gamma = Slope(1, 0)
    if thin_curves(sigma, EPS1, [gamma]) or thin_curves(tau, EPS1, [gamma]):
        detail += ",not-thick"
    return MetricEstimate(math.log(best), ADDITIVE, detail)


# ---------------------------------------------------------------------------
# Flat torus testbed


def _slope_arrays(n):
    slopes = enumerate_slopes(n)
    p = np.array([c.p for c in slopes], dtype=float)
    q = np.array([c.q for c in slopes], dtype=float)
    return slopes, p, q


def _extremal_lengths(torus: FlatTorus, p, q):
    tau = torus.tau
    return ((p + q * tau.real) ** 2 + (q * tau.imag) ** 2) / tau.imag


def flat_torus_dT(t1: FlatTorus, t2: FlatTorus, n) -> MetricEstimate:
    """Half log of the sup of extremal-length ratios over slopes up to n."""
    slopes, p, q = _slope_arrays(n)
    e1 = _extremal_lengths(t1, p, q)
    e2 = _extremal_lengths(t2, p, q)
    fwd = e2 / e1
    bwd = e1 / e2
    i_f, i_b = int(np.argmax(fwd)), int(np.argmax(bwd))
    if fwd[i_f] >= bwd[i_b]:
        best, witness = fwd[i_f], slopes[i_f]
    else:
        best, witness = bwd[i_b], slopes[i_b]
    return MetricEstimate(0.5 * math.log(best), TRUNCATION, f"witness={witness}")


def flat_torus_dL(t1: FlatTorus, t2: FlatTorus, n) -> MetricEstimate:
    """Log of the sup of flat-length ratios (unit area) over slopes up to n."""
    slopes, p, q = _slope_arrays(n)
    l1 = np.sqrt(_extremal_lengths(t1, p, q))
    l2 = np.sqrt(_extremal_lengths(t2, p, q))
    fwd = l2 / l1
    bwd = l1 / l2
    i_f, i_b = int(np.argmax(fwd)), int(np.argmax(bwd))
    if fwd[i_f] >= bwd[i_b]:
        best, witness = fwd[i_f], slopes[i_f]
    else:
        best, witness = bwd[i_b], slopes[i_b]
    return MetricEstimate(math.log(best), TRUNCATION, f"witness={witness}")


def wolpert_check(t1: FlatTorus, t2: FlatTorus, n):
    """Check the stretch factor against exp(2 d_T); returns (ok, margin)."""
    slopes, p, q = _slope_arrays(n)
    l1 = np.sqrt(_extremal_lengths(t1, p, q))
    l2 = np.sqrt(_extremal_lengths(t2, p, q))
    stretch = float(np.max(l2 / l1))
    k_hat = math.exp(2.0 * flat_torus_dT(t1, t2, n).value)
    margin = k_hat - stretch
    return margin >= -1e-9, margin


# ---------------------------------------------------------------------------
# Thin part: projection and product-region distances


def project_thin(sigma: FNPoint, gammas, eps1=EPS1, eps0=EPS0):
    """Project a thin point to per-curve annulus coordinates.

    Each annulus keeps the core length and gets the dimensionless twist
    s/l; on the once-punctured torus the pinched base surface is a thrice
    punctured sphere, whose Teichmuller space is a point (base = None).
    """
    annuli = []
    for g in gammas:
        l, s = fn_along(sigma, g)
        if l > eps1:
            raise NotThin(f"curve {g} has length {l} > {eps1}")
        annuli.append(AnnulusPoint(s / l, l, eps0))
    return None, annuli


def dL_gamma(sigma: FNPoint, tau: FNPoint, gammas, eps1=EPS1, eps0=EPS0) -> MetricEstimate:
    """Sup of the base Lipschitz distance (trivial on (1,1)) and the
    per-annulus closed-form distances."""
    _, ann_s = project_thin(sigma, gammas, eps1, eps0)
    _, ann_t = project_thin(tau, gammas, eps1, eps0)
    best, detail = 0.0, "base"
    for g, a1, a2 in zip(gammas, ann_s, ann_t):
        est = dLA_estimate(a1, a2)
        if est.value > best:
            best, detail = est.value, f"annulus={g},{est.detail}"
    return MetricEstimate(best, ADDITIVE, detail)


def dT_gamma(sigma: FNPoint, tau: FNPoint, gammas, eps1=EPS1, eps0=EPS0) -> MetricEstimate:
    """Sup of the base Teichmuller estimate (trivial on (1,1)) and half the
    hyperbolic half-plane distance per annulus."""
    _, ann_s = project_thin(sigma, gammas, eps1, eps0)
    _, ann_t = project_thin(tau, gammas, eps1, eps0)
    best, detail = 0.0, "base"
    for g, a1, a2 in zip(gammas, ann_s, ann_t):
        v = 0.5 * half_plane_distance(a1.half_plane_coords(), a2.half_plane_coords())
        if v > best:
            best, detail = v, f"annulus={g}"
    return MetricEstimate(best, ADDITIVE, detail)


# ---------------------------------------------------------------------------
# The divergence construction


def divergent_pair(p_exp, q_exp, eps1=EPS1):
    """The twisted pair: core length e^{-P}, and the second point obtained
    by round(e^{P+q}) full Dehn twists along the core curve."""
    if not (p_exp > 0.0 and q_exp > 0.0):
        raise ValueError("P and q must be positive")
    if p_exp + q_exp > 700.0:
        raise Overflow("e^{P+q} exceeds double precision")
    l = math.exp(-p_exp)
    if l > eps1:
        raise NotThin(f"core length {l} > {eps1}")
    twists = round(math.exp(p_exp + q_exp))
    sigma = FNPoint.torus(l, 0.0)
    tau = FNPoint.torus(l, twists * l)
    return sigma, tau


def theorem1_closed_form(p_exp, q_exp):
    """Reference value log((2P + e^q) / (2P)) for the twisted-pair family."""
    return math.log1p(math.exp(q_exp) / (2.0 * p_exp))


# ---------------------------------------------------------------------------
# Marking distance and classification


def marking_distance(m1: Marking, m2: Marking):
    """log of the total marking intersection number (log 0 mapped to 0)."""
    i = marking_intersection(m1, m2)
    return math.log(i) if i > 0 else 0.0


@dataclass(frozen=True)
class ComparabilityReport:
    classification: str  # both-thick | disjoint-thin-sets | shared-thin-curve
    comparable: bool
    dL: float
    q3: float
    q4: float
    dL_gamma: float | None
    dT_gamma: float | None


def comparability_check(sigma: FNPoint, tau: FNPoint, candidates=None,
                        eps1=EPS1, eps0=EPS0) -> ComparabilityReport:
    """Classify a pair by its shared thin curves and report the estimators.

    Pairs with no thin curve in common are comparable; a shared thin curve
    is the one configuration where the two metrics can diverge.
    """
    if candidates is None:
        candidates = adaptive_candidates(sigma, tau, eps1=eps1)
    thin_s = set(thin_curves(sigma, eps1, candidates))
    thin_t = set(thin_curves(tau, eps1, candidates))
    shared = sorted(thin_s & thin_t, key=Slope.sort_key)
    if not thin_s and not thin_t:
        classification, comparable = "both-thick", True
    elif shared:
        classification, comparable = "shared-thin-curve", False
    else:
        classification, comparable = "disjoint-thin-sets", True
    d = dL(sigma, tau, candidates).value
    q3 = thick_quantity(sigma, tau, 3, candidates).value
    q4 = thick_quantity(sigma, tau, 4, candidates).value
    dlg = dtg = None
    if shared:
        dlg = dL_gamma(sigma, tau, shared, eps1, eps0).value
        dtg = dT_gamma(sigma, tau, shared, eps1, eps0).value
    return ComparabilityReport(classification, comparable, d, q3, q4, dlg, dtg)
