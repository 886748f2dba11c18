"""Skeletons of trigonal curves: bipartite genus-0 combinatorial maps,
their singular-fiber content, monodromy component counts, and the
elementary-transformation bookkeeping.

A skeleton is stored as a full bipartite map: rotation sigma (counter-
clockwise dart order at each vertex), pairing alpha (fixed-point-free
involution matching the two darts of each edge), and a color per dart
(the vertex it is based at).  Bivalent white vertices on black-black
adjacencies are always materialized, so the edge count equals the degree
of the j-map (12 for curves in the second Hirzebruch surface).
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple


# ---------------------------------------------------------------------------
# fiber types


@dataclass(frozen=True, order=True)
class FiberType:
    family: str  # A | D | E | J
    index: int
    stars: int = 0  # A0*, A0**, A1*, A2* carry 1 or 2 stars

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.index >= 1 and self.stars == 0)
            or (self.family == "A" and (self.index, self.stars) in ((0, 1), (0, 2), (1, 1), (2, 1)))
            or (self.family == "D" and self.index >= 4 and self.stars == 0)
            or (self.family == "E" and self.index in (6, 7, 8) and self.stars == 0)
            or (self.family == "J" and self.stars == 0)  # NonSimple marker
        )
        if not ok:
            raise ValueError(f"invalid fiber type {self.family}{self.index}{'*' * self.stars}")

    def label(self) -> str:
        if self.family == "J":
            return "NonSimple"
        if self.stars:
            return f"{self.family}{self.index}" + "*" * self.stars
        return f"{self.family}{self.index}~"

    @property
    def is_stable(self) -> bool:
        return not (self.family == "A" and self.stars and (self.index, self.stars) != (0, 1))

    def discriminant_degree(self) -> int:
        if self.family == "A":
            if self.stars:
                return {(0, 1): 1, (0, 2): 2, (1, 1): 3, (2, 1): 4}[(self.index, self.stars)]
            return self.index + 1
        if self.family == "D":
            return self.index + 2
        if self.family == "E":
            return self.index + 2
        raise ValueError("no degree for non-simple fibers")

    def milnor(self) -> int:
        if self.family == "A":
            if self.stars:
                return {(0, 1): 0, (0, 2): 0, (1, 1): 1, (2, 1): 2}[(self.index, self.stars)]
            return self.index
        if self.family in ("D", "E"):
            return self.index
        raise ValueError("Milnor number undefined for non-simple fibers")


NON_SIMPLE = FiberType("J", 0)

_FIBER_RE = re.compile(r"^(\d*)([ADE])(\d+)(~|\*{1,2})$")


def parse_fibers(text: str) -> Tuple[FiberType, ...]:
    out: List[FiberType] = []
    for term in text.replace(" ", "").split("+"):
        m = _FIBER_RE.match(term)
        if not m:
            raise ValueError(f"bad fiber term {term!r}")
        count = int(m.group(1)) if m.group(1) else 1
        fam, idx, deco = m.group(2), int(m.group(3)), m.group(4)
        stars = 0 if deco == "~" else len(deco)
        out.extend([FiberType(fam, idx, stars)] * count)
    return fiber_multiset_sorted(out)


_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2, "J": 3}


def fiber_multiset_sorted(fibers: Iterable[FiberType]) -> Tuple[FiberType, ...]:
    return tuple(sorted(fibers, key=lambda f: (_FAMILY_ORDER[f.family], -f.index, f.stars)))


def print_fibers(fibers: Sequence[FiberType]) -> str:
    terms = []
    for f, grp in itertools.groupby(fiber_multiset_sorted(fibers)):
        c = len(list(grp))
        terms.append((str(c) if c > 1 else "") + f.label())
    return "+".join(terms)


# ---------------------------------------------------------------------------
# skeletons


@dataclass(frozen=True)
class Skeleton:
    sigma: Tuple[int, ...]
    alpha: Tuple[int, ...]
    color: Tuple[str, ...]  # per dart: 'b' or 'w'

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    def validate(self) -> None:
        n = self.n_darts
        if sorted(self.sigma) != list(range(n)):
            raise ValueError("sigma is not a permutation")
        for d in range(n):
            if self.alpha[d] == d or self.alpha[self.alpha[d]] != d:
                raise ValueError("alpha is not a fixed-point-free involution")
            if self.color[d] == self.color[self.alpha[d]]:
                raise ValueError("an edge joins two vertices of one color")
        for cyc in self.vertex_cycles():
            if len({self.color[d] for d in cyc}) != 1:
                raise ValueError("vertex with mixed dart colors")
            if self.color[cyc[0]] == "b" and len(cyc) > 3:
                raise ValueError("black valency above 3")
            if self.color[cyc[0]] == "w" and len(cyc) > 2:
                raise ValueError("white valency above 2")
        if not self.is_connected():
            raise ValueError("skeleton not connected")
        v = len(self.vertex_cycles())
        e = self.n_darts // 2
        f = len(self.faces())
        if v - e + f != 2:
            raise ValueError("skeleton not of genus 0")

    def vertex_cycles(self) -> List[Tuple[int, ...]]:
        return _cycles(self.sigma)

    def is_connected(self) -> bool:
        n = self.n_darts
        if n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    def faces(self) -> List[Tuple[int, ...]]:
        """Orbits of sigma composed with alpha."""
        phi = tuple(self.sigma[self.alpha[d]] for d in range(self.n_darts))
        return _cycles(phi)

    def unstable_vertices(self) -> List[Tuple[str, int]]:
        """(kind, valency) of each unstable vertex: black of valency <= 2
        or white of valency 1."""
        out = []
        for cyc in self.vertex_cycles():
            col, val = self.color[cyc[0]], len(cyc)
            if col == "b" and val <= 2:
                out.append(("b", val))
            elif col == "w" and val == 1:
                out.append(("w", val))
        return out

    def canonical_form(self) -> Tuple:
        """Lexicographically minimal breadth-first relabeling, over all
        starting darts (orientation preserving)."""
        n = self.n_darts
        best = None
        for start in range(n):
            if self.color[start] != "b":
                continue
            lab = {start: 0}
            order = [start]
            i = 0
            while i < len(order):
                d = order[i]
                i += 1
                for e in (self.sigma[d], self.alpha[d]):
                    if e not in lab:
                        lab[e] = len(lab)
                        order.append(e)
            sig = [0] * n
            alp = [0] * n
            col = [""] * n
            for d in range(n):
                sig[lab[d]] = lab[self.sigma[d]]
                alp[lab[d]] = lab[self.alpha[d]]
                col[lab[d]] = self.color[d]
            cand = (tuple(sig), tuple(alp), tuple(col))
            if best is None or cand < best:
                best = cand
        return best

    def mirror(self) -> "Skeleton":
        inv = [0] * self.n_darts
        for d in range(self.n_darts):
            inv[self.sigma[d]] = d
        return Skeleton(tuple(inv), self.alpha, self.color)

    def is_mirror_symmetric(self) -> bool:
        return self.canonical_form() == self.mirror().canonical_form()

    def to_json(self) -> dict:
        return {
            "darts": self.n_darts,
            "sigma": [list(c) for c in self.vertex_cycles()],
            "alpha": sorted([d, self.alpha[d]] for d in range(self.n_darts) if d < self.alpha[d]),
            "color": {str(c[0]): self.color[c[0]] for c in self.vertex_cycles()},
        }


def _cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for d in range(len(perm)):
        if seen[d]:
            continue
        cyc = []
        e = d
        while not seen[e]:
            seen[e] = True
            cyc.append(e)
            e = perm[e]
        out.append(tuple(cyc))
    return out


# ---------------------------------------------------------------------------
# enumeration


def _reduced_to_skeleton(rot: List[Tuple[int, ...]], matching: List[Tuple[int, int]],
                         pendants: List[int]) -> Skeleton:
    """Build the full bipartite map from black rotations, a matching of
    black darts (edges through implicit bivalent whites) and pendant black
    darts (edges to 1-valent whites)."""
    nb = sum(len(c) for c in rot)
    # white darts appended after the black ones
    white_of: Dict[int, int] = {}
    sigma = [0] * nb
    color = ["b"] * nb
    alpha = [0] * nb
    for cyc in rot:
        for i, d in enumerate(cyc):
            sigma[d] = cyc[(i + 1) % len(cyc)]
    nxt = nb
    sig_extra: List[int] = []
    for a, b in matching:
        wa, wb = nxt, nxt + 1
        nxt += 2
        sig_extra.extend([wb, wa])  # bivalent white: (wa wb)
        alpha[a] = wa
        alpha[b] = wb
        alpha.extend([0, 0])
        alpha[wa] = a
        alpha[wb] = b
        color.extend(["w", "w"])
    for d in pendants:
        w = nxt
        nxt += 1
        sig_extra.append(w)  # univalent white: fixed by sigma
        alpha[d] = w
        alpha.append(d)
        color.append("w")
    return Skeleton(tuple(sigma + sig_extra), tuple(alpha), tuple(color))


def enumerate_skeletons(k: int, max_unstable: int) -> List[Skeleton]:
    """All genus-0 skeletons for curves in the k-th Hirzebruch surface with
    at most max_unstable unstable vertices, up to orientation-preserving
    isomorphism.  2k = b1 + 2 b2 + b3 + w1 over the vertex valencies."""
    if k not in (1, 2):
        raise ValueError("only k = 1 and k = 2 are supported")
    results: Dict[Tuple, Skeleton] = {}
    for b1 in range(2 * k + 1):
        for b2 in range((2 * k - b1) // 2 + 1):
            for w1 in range(2 * k - b1 - 2 * b2 + 1):
                b3 = 2 * k - b1 - 2 * b2 - w1
                if b1 + b2 + w1 > max_unstable:
                    continue
                if b1 + b2 + b3 == 0:
                    continue
                # black darts, valency-grouped
                rot: List[Tuple[int, ...]] = []
                pos = 0
                for val, cnt in ((3, b3), (2, b2), (1, b1)):
                    for _ in range(cnt):
                        rot.append(tuple(range(pos, pos + val)))
                        pos += val
                ndarts = pos
                if ndarts < w1 or (ndarts - w1) % 2 != 0:
                    continue
                for pend in itertools.combinations(range(ndarts), w1):
                    rest = [d for d in range(ndarts) if d not in pend]
                    for matching in _perfect_matchings(rest):
                        sk = _reduced_to_skeleton(rot, matching, list(pend))
                        if not sk.is_connected():
                            continue
                        v = len(sk.vertex_cycles())
                        e = sk.n_darts // 2
                        f = len(sk.faces())
                        if v - e + f != 2:
                            continue
                        key = sk.canonical_form()
                        if key not in results:
                            sk.validate()
                            results[key] = sk
    return [results[key] for key in sorted(results)]


def _perfect_matchings(darts: List[int]) -> Iterable[List[Tuple[int, int]]]:
    if not darts:
        yield []
        return
    first, rest = darts[0], darts[1:]
    for i, other in enumerate(rest):
        for sub in _perfect_matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + sub


# ---------------------------------------------------------------------------
# fibers of a skeleton


def fiber_multiset(s: Skeleton) -> Tuple[FiberType, ...]:
    fibers: List[FiberType] = []
    for face in s.faces():
        p = sum(1 for d in face if s.color[d] == "b")
        fibers.append(FiberType("A", 0, 1) if p == 1 else FiberType("A", p - 1))
    for kind, val in s.unstable_vertices():
        if kind == "b" and val == 1:
            fibers.append(FiberType("A", 0, 2))
        elif kind == "b" and val == 2:
            fibers.append(FiberType("A", 2, 1))
        else:
            fibers.append(FiberType("A", 1, 1))
    return fiber_multiset_sorted(fibers)


def component_count(s: Skeleton) -> int:
    """Number of irreducible components of a trigonal curve with this
    skeleton, from the monodromy of the induced 3-sheeted cover."""
    # edges = alpha-orbits; index by the black-based dart
    black_darts = [d for d in range(s.n_darts) if s.color[d] == "b"]
    edge_idx = {d: i for i, d in enumerate(black_darts)}
    ne = len(black_darts)
    g_b = [edge_idx[s.sigma[d]] for d in black_darts]
    g_w = list(range(ne))
    for cyc in s.vertex_cycles():
        if s.color[cyc[0]] == "w" and len(cyc) == 2:
            a, b = edge_idx[s.alpha[cyc[0]]], edge_idx[s.alpha[cyc[1]]]
            g_w[a], g_w[b] = b, a
    # sheets permuted by (123) around 0 and (12) around 1
    rho0 = {1: 2, 2: 3, 3: 1}
    rho1 = {1: 2, 2: 1, 3: 3}
    parent: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for e in range(ne):
        for sheet in (1, 2, 3):
            union((e, sheet), (g_b[e], rho0[sheet]))
            union((e, sheet), (g_w[e], rho1[sheet]))
    roots = {find((e, sh)) for e in range(ne) for sh in (1, 2, 3)}
    return len(roots)


# ---------------------------------------------------------------------------
# elementary transformations and the stable-maximal table


_CONTRACTION = {
    FiberType("A", 0, 1): FiberType("D", 5),
    FiberType("A", 0, 2): FiberType("E", 6),
    FiberType("A", 1, 1): FiberType("E", 7),
    FiberType("A", 2, 1): FiberType("E", 8),
}


def elementary_transform(fibers: Sequence[FiberType], target: FiberType) -> Tuple[FiberType, ...]:
    """Contract one copy of target: stable A-fibers gain four Milnor units
    and become D-fibers, unstable fibers become E-fibers."""
    fibers = list(fiber_multiset_sorted(fibers))
    if target not in fibers:
        raise ValueError(f"fiber {target.label()} not present")
    if target in _CONTRACTION:
        repl = _CONTRACTION[target]
    elif target.family == "A" and target.stars == 0:
        repl = FiberType("D", 4 + target.index + 1)
    else:
        raise ValueError(f"fiber {target.label()} cannot be contracted")
    fibers.remove(target)
    fibers.append(repl)
    return fiber_multiset_sorted(fibers)


_ISOTRIVIAL_DEGENERATION = {
    FiberType("E", 8): FiberType("A", 0, 2),
    FiberType("E", 7): FiberType("A", 1, 1),
    FiberType("E", 6): FiberType("A", 2, 1),
}


@dataclass(frozen=True)
class Table1Row:
    fibers: Tuple[FiberType, ...]
    irreducible: bool
    isotrivial_degeneration: Optional[Tuple[FiberType, ...]]

    def label(self) -> str:
        return print_fibers(self.fibers)


def table1() -> List[Table1Row]:
    """Fiber multisets of stable maximal trigonal curves in the second
    Hirzebruch surface, with irreducibility flags."""
    rows: Dict[Tuple[FiberType, ...], Table1Row] = {}

    def add(fibers, irreducible):
        fibers = fiber_multiset_sorted(fibers)
        # curves with an E-type fiber (and only these) degenerate
        # isotrivially, to the two-fiber set E~n plus its companion
        degen = None
        for f in fibers:
            if f in _ISOTRIVIAL_DEGENERATION:
                degen = fiber_multiset_sorted([f, _ISOTRIVIAL_DEGENERATION[f]])
        if fibers not in rows:
            rows[fibers] = Table1Row(fibers, irreducible, degen)
        elif rows[fibers].irreducible != irreducible:
            raise AssertionError("conflicting irreducibility for one multiset")

    for sk in enumerate_skeletons(2, 0):
        add(fiber_multiset(sk), component_count(sk) == 1)
    for sk in enumerate_skeletons(1, 1):
        fibers = fiber_multiset(sk)
        irr = component_count(sk) == 1
        unstable = [f for f in fibers if not f.is_stable]
        if unstable:
            add(elementary_transform(fibers, unstable[0]), irr)
        else:
            for target in sorted(set(fibers)):
                add(elementary_transform(fibers, target), irr)
    out = list(rows.values())
    out.sort(key=lambda r: r.fibers)
    return out
