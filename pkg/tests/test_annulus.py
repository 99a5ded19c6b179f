"""Tests for the regular-annulus model space.

The oracle for the accelerated winding search is plain exhaustive
enumeration of every winding class up to the cutoff.
"""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipteich.annulus import (
    AnnulusPoint,
    arc_length,
    dLA_bruteforce,
    dLA_estimate,
    half_plane_distance,
    half_plane_estimate,
    winding_candidates,
)
from lipteich.errors import MismatchedSpace
from lipteich.estimates import ADDITIVE, TRUNCATION
from lipteich.hyptrig import EPS0, collar_half_width, fermi_distance


def exhaustive_sup(r1, r2, n_max):
    best = abs(math.log(r1.l / r2.l))
    for n in range(-n_max, n_max + 1):
        best = max(best, abs(math.log(arc_length(r1, n) / arc_length(r2, n))))
    return best


# ---------------------------------------------------------------------------
# points and arcs


def test_point_validation():
    with pytest.raises(ValueError):
        AnnulusPoint(0.0, 0.3)  # not shorter than the boundary
    with pytest.raises(ValueError):
        AnnulusPoint(0.0, 0.0)


def test_half_plane_coords():
    rho = AnnulusPoint(2.5, 0.01)
    assert rho.half_plane_coords() == (2.5, 100.0)


def test_arc_length_none_is_core():
    rho = AnnulusPoint(1.0, 0.02)
    assert arc_length(rho, None) == 0.02


def test_arc_length_zero_winding_at_zero_twist():
    # the reference arc is the double collar width crossing
    rho = AnnulusPoint(0.0, 0.01)
    d = collar_half_width(0.01, EPS0)
    assert arc_length(rho, 0) == pytest.approx(fermi_distance(d, -d, 0.0))
    assert arc_length(rho, 0) == pytest.approx(2.0 * d, abs=1e-12)


def test_arc_length_grows_linearly_in_winding():
    rho = AnnulusPoint(0.0, 0.01)
    big1 = arc_length(rho, 10**6)
    big2 = arc_length(rho, 2 * 10**6)
    assert big2 - big1 == pytest.approx(10**6 * rho.l, rel=1e-6)


def test_arc_length_symmetric_about_twist():
    rho = AnnulusPoint(3.0, 0.015)
    assert arc_length(rho, 5) == pytest.approx(arc_length(rho, 1), abs=1e-12)


# ---------------------------------------------------------------------------
# the winding search against exhaustive enumeration


@settings(max_examples=40, deadline=None)
@given(
    t1=st.floats(-80.0, 80.0),
    t2=st.floats(-80.0, 80.0),
    l1=st.floats(1e-4, 0.04),
    l2=st.floats(1e-4, 0.04),
    n_max=st.integers(400, 1200),
)
def test_search_matches_exhaustive(t1, t2, l1, l2, n_max):
    r1 = AnnulusPoint(t1, l1)
    r2 = AnnulusPoint(t2, l2)
    got = dLA_bruteforce(r1, r2, n_max).value
    assert got == pytest.approx(exhaustive_sup(r1, r2, n_max), abs=1e-12)


def test_search_random_heavy():
    rnd = random.Random(42)
    for _ in range(60):
        r1 = AnnulusPoint(rnd.uniform(-150, 150), rnd.uniform(1e-5, 0.04))
        r2 = AnnulusPoint(rnd.uniform(-150, 150), rnd.uniform(1e-5, 0.04))
        n_max = rnd.randint(600, 2000)
        got = dLA_bruteforce(r1, r2, n_max).value
        assert got == pytest.approx(exhaustive_sup(r1, r2, n_max), abs=1e-12)


def test_winding_candidates_within_range():
    r1 = AnnulusPoint(10.0, 0.01)
    r2 = AnnulusPoint(-40.0, 0.02)
    cands = winding_candidates(r1, r2, 500)
    assert all(abs(n) <= 500 for n in cands)
    assert 500 in cands and -500 in cands


def test_bruteforce_monotone_in_cutoff():
    r1 = AnnulusPoint(7.3, 0.004)
    r2 = AnnulusPoint(-21.8, 0.018)
    values = [dLA_bruteforce(r1, r2, n).value for n in (16, 32, 64, 128, 256)]
    assert values == sorted(values)


def test_bruteforce_adaptive_converges():
    r1 = AnnulusPoint(3.0, 0.01)
    r2 = AnnulusPoint(-5.0, 0.02)
    auto = dLA_bruteforce(r1, r2).value
    fixed = dLA_bruteforce(r1, r2, 10**5).value
    assert auto == pytest.approx(fixed, abs=1e-8)


def test_bruteforce_guarantee_tag():
    r1 = AnnulusPoint(0.0, 0.01)
    est = dLA_bruteforce(r1, r1, 32)
    assert est.guarantee == TRUNCATION
    assert est.value == 0.0


def test_mismatched_boundary_lengths():
    with pytest.raises(MismatchedSpace):
        dLA_bruteforce(AnnulusPoint(0.0, 0.01, 0.2), AnnulusPoint(0.0, 0.01, 0.1))
    with pytest.raises(MismatchedSpace):
        dLA_estimate(AnnulusPoint(0.0, 0.01, 0.2), AnnulusPoint(0.0, 0.01, 0.1))


# ---------------------------------------------------------------------------
# metric-like properties of the search value


def test_search_symmetry_and_identity():
    r1 = AnnulusPoint(4.0, 0.01)
    r2 = AnnulusPoint(-3.0, 0.03)
    assert dLA_bruteforce(r1, r2, 500).value == pytest.approx(
        dLA_bruteforce(r2, r1, 500).value, abs=1e-14
    )
    assert dLA_bruteforce(r1, r1, 500).value == 0.0


def test_search_triangle_inequality_on_shared_cutoff():
    rnd = random.Random(5)
    for _ in range(20):
        pts = [
            AnnulusPoint(rnd.uniform(-20, 20), rnd.uniform(1e-4, 0.04))
            for _ in range(3)
        ]
        n = 400
        d01 = exhaustive_sup(pts[0], pts[1], n)
        d12 = exhaustive_sup(pts[1], pts[2], n)
        d02 = exhaustive_sup(pts[0], pts[2], n)
        assert d02 <= d01 + d12 + 1e-12


# ---------------------------------------------------------------------------
# the two-case estimate


def test_estimate_case_i_identity():
    # small relative twist: the estimate is exactly the log length ratio
    r1 = AnnulusPoint(0.0, 0.001)
    r2 = AnnulusPoint(1.0, 0.01)
    est = dLA_estimate(r1, r2)
    assert est.guarantee == ADDITIVE
    assert est.detail == "case=i"
    assert est.value == pytest.approx(math.log(0.01 / 0.001), abs=1e-15)


def test_estimate_case_ii_identity():
    # algebraic identity of the second case
    l1, l2, dt = 0.001, 0.01, 10**6
    r1 = AnnulusPoint(0.0, l1)
    r2 = AnnulusPoint(dt, l2)
    est = dLA_estimate(r1, r2)
    assert est.detail == "case=ii"
    assert est.value == pytest.approx(
        math.log(dt * l2 / math.log(1.0 / l1)), abs=1e-12
    )


def test_estimate_swaps_to_shorter_core():
    r1 = AnnulusPoint(0.0, 0.02)
    r2 = AnnulusPoint(0.0, 0.002)
    assert dLA_estimate(r1, r2).value == dLA_estimate(r2, r1).value


def test_estimate_tracks_bruteforce_on_grid():
    worst = 0.0
    for l1 in np.exp(np.linspace(math.log(1e-5), math.log(0.04), 4)):
        for dt in (0.0, 10.0, 1e4, 1e7):
            r1 = AnnulusPoint(0.0, float(l1))
            r2 = AnnulusPoint(dt, 0.02)
            diff = abs(
                dLA_bruteforce(r1, r2).value - dLA_estimate(r1, r2).value
            )
            worst = max(worst, diff)
    assert worst < 1.0  # uniform additive constant, empirically ~0.62


# ---------------------------------------------------------------------------
# half-plane comparison


def test_half_plane_distance_formula():
    # vertical segment: distance is the log ratio of heights
    assert half_plane_distance((0.0, 1.0), (0.0, math.e)) == pytest.approx(
        1.0, abs=1e-12
    )


def test_half_plane_estimate_cases():
    z1, z2 = (0.0, 1000.0), (0.0, 10.0)
    assert half_plane_estimate(z1, z2) == pytest.approx(math.log(100.0))
    z3 = (10**7, 1000.0)
    direct = half_plane_distance(z1, z3)
    est = half_plane_estimate(z1, z3)
    assert est == pytest.approx(direct, abs=3.0)


def test_growth_one_vs_two_log():
    # annulus estimate grows like log dt; half-plane like 2 log dt
    l = 1e-4
    r = AnnulusPoint(0.0, l)
    vals_ann, vals_hp = [], []
    for dt in (1e6, 1e8):
        r2 = AnnulusPoint(dt, l)
        vals_ann.append(dLA_estimate(r, r2).value)
        vals_hp.append(
            half_plane_distance(r.half_plane_coords(), r2.half_plane_coords())
        )
    dlog = math.log(1e8) - math.log(1e6)
    assert (vals_ann[1] - vals_ann[0]) / dlog == pytest.approx(1.0, rel=0.05)
    assert (vals_hp[1] - vals_hp[0]) / dlog == pytest.approx(2.0, rel=0.05)
