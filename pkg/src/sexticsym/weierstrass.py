"""Exact fiber analysis of trigonal curves y^3 + g2(x) y + g3(x) = 0 in
the k-th Hirzebruch surface.

All computations are over Q.  Places are multiplicity classes of the
discriminant (no root isolation): a squarefree factor class is split by
gcd towers until the orders (a, b, d) of g2, g3, Delta are constant on
each class, which is enough to type the fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .dessins import NON_SIMPLE, FiberType
from .exactcore import RatPoly, poly_gcd, reduce_rational_function, squarefree_partition

INF = 10**9  # order of the zero polynomial at any place

INFINITY = "Infinity"


class ZeroDiscriminant(ValueError):
    """The cubic has a persistent multiple root (Delta vanishes identically)."""


@dataclass(frozen=True)
class WeierstrassCurve:
    k: int
    g2: RatPoly
    g3: RatPoly

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Hirzebruch index must be >= 1")
        if self.g2.degree > 2 * self.k or self.g3.degree > 3 * self.k:
            raise ValueError("degree bounds deg g2 <= 2k, deg g3 <= 3k violated")
        if self.g2.is_zero() and self.g3.is_zero():
            raise ValueError("g2 and g3 cannot both vanish")


def curve_from_json(data: dict) -> WeierstrassCurve:
    lead = Fraction(data.get("lead", 1))
    if lead == 0:
        raise ValueError("leading coefficient must be nonzero")
    g2 = RatPoly([Fraction(c) / lead for c in data["g2"]])
    g3 = RatPoly([Fraction(c) / lead for c in data["g3"]])
    return WeierstrassCurve(int(data["k"]), g2, g3)


def discriminant(c: WeierstrassCurve) -> RatPoly:
    return 4 * c.g2 ** 3 + 27 * c.g3 ** 2


def j_invariant(c: WeierstrassCurve) -> Tuple[RatPoly, RatPoly]:
    delta = discriminant(c)
    if delta.is_zero():
        raise ZeroDiscriminant("discriminant vanishes identically")
    return reduce_rational_function(4 * c.g2 ** 3, delta)


@dataclass(frozen=True)
class FiberReport:
    place: Union[RatPoly, str]  # squarefree monic factor, or INFINITY
    count: int  # number of geometric points in the class (deg place, or 1)
    mults: Tuple[int, int, int]  # (a, b, d); INF marks an identically-zero g
    type: FiberType
    milnor: int  # per point


def _classify(a: int, b: int, d: int) -> FiberType:
    if d >= 12:
        return NON_SIMPLE
    if a == 0:
        return FiberType("A", 0, 1) if d == 1 else FiberType("A", d - 1)
    if a >= 1 and b == 1 and d == 2:
        return FiberType("A", 0, 2)
    if a == 1 and b >= 2 and d == 3:
        return FiberType("A", 1, 1)
    if a >= 2 and b == 2 and d == 4:
        return FiberType("A", 2, 1)
    if a >= 2 and b >= 3 and d == 6:
        return FiberType("D", 4)
    if a == 2 and b == 3 and d >= 7:
        return FiberType("D", d - 2)
    if a >= 3 and b == 4 and d == 8:
        return FiberType("E", 6)
    if a == 3 and b >= 5 and d == 9:
        return FiberType("E", 7)
    if a >= 4 and b == 5 and d == 10:
        return FiberType("E", 8)
    return NON_SIMPLE


def _split_by_order(places: List[Tuple[RatPoly, int]], f: RatPoly):
    """Refine squarefree classes by the order of f at their roots.

    Yields (class, order); order is INF when f is identically zero.
    """
    out = []
    for g, _ in places:
        if f.is_zero():
            out.append((g, INF))
            continue
        remaining = g
        cur = f
        order = 0
        while remaining.degree >= 1:
            nxt = poly_gcd(remaining, cur)
            lower = remaining // nxt  # roots with order exactly `order`
            if lower.degree >= 1:
                out.append((lower.monic(), order))
            if nxt.degree < 1:
                break
            remaining = nxt.monic()
            cur = cur // remaining
            order += 1
        else:
            continue
    return out


def fiber_analysis(c: WeierstrassCurve) -> List[FiberReport]:
    delta = discriminant(c)
    if delta.is_zero():
        raise ZeroDiscriminant("discriminant vanishes identically")
    reports: List[FiberReport] = []
    for g, d in squarefree_partition(delta):
        refined = []
        for h, a in _split_by_order([(g, 0)], c.g2):
            for h2, b in _split_by_order([(h, 0)], c.g3):
                refined.append((h2, a, b))
        for h, a, b in refined:
            t = _classify(a, b, d)
            mil = t.milnor() if t is not NON_SIMPLE else -1
            reports.append(FiberReport(h, h.degree, (a, b, d), t, mil))
    a_inf = INF if c.g2.is_zero() else 2 * c.k - c.g2.degree
    b_inf = INF if c.g3.is_zero() else 3 * c.k - c.g3.degree
    d_inf = 6 * c.k - delta.degree
    if d_inf >= 1:
        t = _classify(a_inf, b_inf, d_inf)
        mil = t.milnor() if t is not NON_SIMPLE else -1
        reports.append(FiberReport(INFINITY, 1, (a_inf, b_inf, d_inf), t, mil))
    reports.sort(key=lambda r: (r.place is INFINITY, str(r.place)))
    return reports


def fiber_types(c: WeierstrassCurve) -> List[FiberType]:
    out: List[FiberType] = []
    for r in fiber_analysis(c):
        out.extend([r.type] * r.count)
    return out


def milnor(c: WeierstrassCurve) -> int:
    total = 0
    for r in fiber_analysis(c):
        if r.type is NON_SIMPLE:
            raise ValueError("Milnor number undefined with non-simple fibers")
        total += r.count * r.milnor
    return total


def is_isotrivial(c: WeierstrassCurve) -> bool:
    num, den = j_invariant(c)
    return num.degree <= 0 and den.degree <= 0


def is_stable(c: WeierstrassCurve) -> bool:
    return all(r.type.family != "J" and r.type.is_stable for r in fiber_analysis(c))


def _ramification_profile(num: RatPoly, den: RatPoly):
    """Ramification indices of the map num/den over 0, 1 and Infinity."""
    degj = max(num.degree, den.degree)
    profiles = {}
    for key, poly in (("0", num), ("1", num - den), ("inf", den)):
        es: List[int] = []
        if poly.degree >= 1:
            for g, m in squarefree_partition(poly):
                es.extend([m] * g.degree)
        deficit = degj - max(poly.degree, 0)
        if poly.is_zero():
            raise ZeroDiscriminant("degenerate j-map")
        if deficit >= 1:
            es.append(deficit)
        assert sum(es) == degj
        profiles[key] = sorted(es, reverse=True)
    return degj, profiles


def is_maximal(c: WeierstrassCurve) -> bool:
    """No critical values outside {0, 1, Infinity}, ramification at most 3
    over 0 and at most 2 over 1, and no 4-fold-symmetric or non-simple
    fibers; certified by exact Riemann-Hurwitz saturation."""
    if is_isotrivial(c):
        return False
    for r in fiber_analysis(c):
        if r.type == FiberType("D", 4) or r.type is NON_SIMPLE:
            return False
    num, den = j_invariant(c)
    degj, prof = _ramification_profile(num, den)
    if any(e > 3 for e in prof["0"]) or any(e > 2 for e in prof["1"]):
        return False
    total = sum(e - 1 for es in prof.values() for e in es)
    return total == 2 * degj - 2
