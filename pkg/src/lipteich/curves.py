"""Simple closed curves, markings, intersections, and Dehn twists.

Curve classes are exact only on the once-punctured torus, where an isotopy
class of an essential simple closed curve is a coprime slope (p, q) taken up
to sign.  The canonical representative has q > 0, or q = 0 and p = 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import Unsupported


@dataclass(frozen=True)
class SurfaceSig:
    """Topological type of a finite-type surface."""

    genus: int
    punctures: int

    def __post_init__(self):
        if self.complexity < 1:
            raise ValueError(f"complexity {self.complexity} < 1")

    @property
    def complexity(self):
        return 3 * self.genus - 3 + self.punctures

    def is_once_punctured_torus(self):
        return self.genus == 1 and self.punctures == 1


ONCE_PUNCTURED_TORUS = SurfaceSig(1, 1)


@dataclass(frozen=True)
class Slope:
    """Isotopy class of an essential simple closed curve on the (1,1) surface."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if (p, q) == (0, 0):
            raise ValueError("slope (0, 0) is not a curve")
        if math.gcd(abs(p), abs(q)) != 1:
            raise ValueError(f"slope ({p}, {q}) is not primitive")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __str__(self):
        return f"{self.p}/{self.q}"

    @staticmethod
    def parse(text):
        p, q = text.strip().split("/")
        return Slope(int(p), int(q))

    def sort_key(self):
        return (self.q, self.p)


@dataclass(frozen=True)
class Marking:
    """Pants curves plus one dual curve per pants curve."""

    pants_curves: tuple
    duals: tuple

    def __post_init__(self):
        if len(self.pants_curves) != len(self.duals):
            raise ValueError("need one dual per pants curve")
        for gamma, delta in zip(self.pants_curves, self.duals):
            if intersection_number(gamma, delta) != 1:
                raise ValueError(f"dual {delta} does not meet {gamma} once")

    def curves(self):
        return tuple(self.pants_curves) + tuple(self.duals)

    def to_json(self):
        return json.dumps(
            [[str(c) for c in self.pants_curves], [str(c) for c in self.duals]]
        )

    @staticmethod
    def from_json(text):
        pants, duals = json.loads(text)
        return Marking(
            tuple(Slope.parse(s) for s in pants),
            tuple(Slope.parse(s) for s in duals),
        )


def enumerate_slopes(n):
    """All canonical coprime slopes (p, q) with |p| <= n and 0 <= q <= n.

    Deterministic order: sorted by (q, p).
    """
    if n < 1:
        raise ValueError("cutoff must be >= 1")
    out = [Slope(1, 0)]
    for q in range(1, n + 1):
        for p in range(-n, n + 1):
            if math.gcd(abs(p), q) == 1:
                out.append(Slope(p, q))
    out.sort(key=Slope.sort_key)
    return out


def algebraic_pairing(c1: Slope, c2: Slope):
    """Determinant pairing <c1, c2> = q1*p2 - p1*q2."""
    return c1.q * c2.p - c1.p * c2.q


def intersection_number(c1: Slope, c2: Slope):
    """Geometric intersection number on the once-punctured torus."""
    return abs(c1.p * c2.q - c1.q * c2.p)


def marking_intersection(m1: Marking, m2: Marking):
    """Total intersections between the curves of two markings."""
    return sum(
        intersection_number(c1, c2) for c1 in m1.curves() for c2 in m2.curves()
    )


def dehn_twist(c: Slope, along: Slope, k: int):
    """Image of c under the k-th power of the twist along `along`.

    Convention: c -> c + k * <c, along> * along with the determinant pairing,
    so that one positive twist of (0,1) along (1,0) is (1,1).
    """
    coeff = k * algebraic_pairing(c, along)
    return Slope(c.p + coeff * along.p, c.q + coeff * along.q)


def require_once_punctured_torus(sig: SurfaceSig):
    if not sig.is_once_punctured_torus():
        raise Unsupported(f"signature {sig} is not supported; only (1,1) is exact")
