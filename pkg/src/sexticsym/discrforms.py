"""Finite quadratic forms of even nondegenerate lattices.

A form lives on a finite abelian group written as a fixed direct sum of
cyclic groups Z_{d_i}; elements are integer coordinate tuples reduced mod
the orders.  Bilinear values are Fractions reduced into [0, 1), quadratic
values into [0, 2).  Subgroups are stored as explicitly sorted element
tuples, which makes equality and hashing trivial at the group sizes that
occur here (<= 3^9).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exactcore import (
    IntMatrix,
    _snf_extended,
    det,
    lattice_basis,
    mat_vec,
    rational_inverse,
    solve_integer,
)


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _mod2(x: Fraction) -> Fraction:
    f = x / 2
    return 2 * (f - (f.numerator // f.denominator))


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Finite abelian group with Q/Z bilinear and Q/2Z quadratic form.

    blocks partitions the coordinate indices by originating component
    (one block per direct summand); a single-component form has one block.
    """

    orders: Tuple[int, ...]
    bilinear: Tuple[Tuple[Fraction, ...], ...]
    quadratic: Tuple[Fraction, ...]
    blocks: Tuple[Tuple[int, ...], ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.blocks is None:
            object.__setattr__(self, "blocks", (tuple(range(len(self.orders))),))

    @property
    def rank(self) -> int:
        return len(self.orders)

    def order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def reduce(self, x: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(c) % d for c, d in zip(x, self.orders))

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.rank

    def add(self, x, y) -> Tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x) -> Tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def sub(self, x, y) -> Tuple[int, ...]:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.orders))

    def elements(self) -> Iterable[Tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.orders))

    def b(self, x, y) -> Fraction:
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.bilinear[i]
                for j, yj in enumerate(y):
                    if yj:
                        acc += xi * yj * row[j]
        return _mod1(acc)

    def q(self, x) -> Fraction:
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                acc += xi * xi * self.quadratic[i]
                row = self.bilinear[i]
                for j in range(i + 1, len(x)):
                    if x[j]:
                        acc += 2 * xi * x[j] * row[j]
        return _mod2(acc)

    def validate(self) -> None:
        for i, d in enumerate(self.orders):
            if d < 2:
                raise ValueError("orders must be >= 2")
            for j in range(self.rank):
                if self.bilinear[i][j] != self.bilinear[j][i]:
                    raise ValueError("bilinear form not symmetric")
                if _mod1(d * self.bilinear[i][j]) != 0:
                    raise ValueError("bilinear value incompatible with order")
            if _mod1(self.quadratic[i]) != _mod1(self.bilinear[i][i]):
                raise ValueError("q(e_i) must lift b(e_i, e_i)")


@dataclass(frozen=True)
class Subgroup:
    """Subgroup stored as its sorted tuple of elements."""

    elements: Tuple[Tuple[int, ...], ...]

    @classmethod
    def spanned(cls, form: FiniteQuadraticForm, gens: Iterable[Sequence[int]]) -> "Subgroup":
        seen = {form.zero()}
        frontier = [form.reduce(g) for g in gens]
        seen.update(frontier)
        while frontier:
            nxt = []
            for x in frontier:
                for g in list(seen):
                    s = form.add(x, g)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return cls(tuple(sorted(seen)))

    @classmethod
    def trivial(cls, form: FiniteQuadraticForm) -> "Subgroup":
        return cls((form.zero(),))

    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return tuple(x) in self._set

    @property
    def _set(self):
        s = getattr(self, "_cached_set", None)
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def generators(self, form: FiniteQuadraticForm) -> List[Tuple[int, ...]]:
        """A small generating set, greedily extracted."""
        gens: List[Tuple[int, ...]] = []
        have = {form.zero()}
        for x in self.elements:
            if x not in have:
                gens.append(x)
                have = set(Subgroup.spanned(form, gens).elements)
                if len(have) == len(self.elements):
                    break
        return gens

    def is_subgroup_of(self, form: FiniteQuadraticForm) -> bool:
        s = self._set
        if form.zero() not in s:
            return False
        for x in s:
            if form.neg(x) not in s:
                return False
            for y in s:
                if form.add(x, y) not in s:
                    return False
        return True


@dataclass(frozen=True)
class Automorphism:
    """Automorphism given by generator images (rows: image of e_i)."""

    images: Tuple[Tuple[int, ...], ...]

    def apply(self, form: FiniteQuadraticForm, x: Sequence[int]) -> Tuple[int, ...]:
        acc = form.zero()
        for xi, im in zip(x, self.images):
            if xi:
                acc = form.add(acc, tuple((xi * c) % d for c, d in zip(im, form.orders)))
        return acc

    def compose(self, form: FiniteQuadraticForm, other: "Automorphism") -> "Automorphism":
        """self after other."""
        return Automorphism(tuple(self.apply(form, im) for im in other.images))

    def is_identity(self, form: FiniteQuadraticForm) -> bool:
        return all(self.apply(form, g) == g for g in _generators(form))

    def preserves_form(self, form: FiniteQuadraticForm) -> bool:
        gens = _generators(form)
        for i, g in enumerate(gens):
            if form.q(self.apply(form, g)) != form.q(g):
                return False
            for h in gens[i:]:
                if form.b(self.apply(form, g), self.apply(form, h)) != form.b(g, h):
                    return False
        return True


def _generators(form: FiniteQuadraticForm) -> List[Tuple[int, ...]]:
    n = form.rank
    return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]


def identity_automorphism(form: FiniteQuadraticForm) -> Automorphism:
    return Automorphism(tuple(_generators(form)))


def minus_identity(form: FiniteQuadraticForm) -> Automorphism:
    return Automorphism(tuple(form.neg(g) for g in _generators(form)))


def apply_automorphism(form: FiniteQuadraticForm, a: Automorphism, x):
    """Image of an element or Subgroup under a."""
    if isinstance(x, Subgroup):
        return Subgroup(tuple(sorted(a.apply(form, e) for e in x.elements)))
    return a.apply(form, x)


# ---------------------------------------------------------------------------
# discriminant form of an even lattice


@dataclass(frozen=True)
class DiscriminantData:
    """discriminant form plus the coordinate maps.

    proj: rows of the projection Z^n (dual-basis coords) -> canonical coords.
    lifts: representative dual-coordinate vectors of the canonical generators.
    """

    form: FiniteQuadraticForm
    proj: Tuple[Tuple[int, ...], ...]
    lifts: Tuple[Tuple[int, ...], ...]

    def project(self, x: Sequence[int]) -> Tuple[int, ...]:
        return self.form.reduce(mat_vec([list(r) for r in self.proj], list(x)))

    def lift(self, c: Sequence[int]) -> List[int]:
        n = len(self.lifts[0]) if self.lifts else 0
        acc = [0] * n
        for ci, lv in zip(c, self.lifts):
            for k in range(n):
                acc[k] += ci * lv[k]
        return acc


def discriminant_form(gram: IntMatrix) -> DiscriminantData:
    """Discriminant quadratic form of an even nondegenerate Gram matrix."""
    n = len(gram)
    for i in range(n):
        if gram[i][i] % 2 != 0:
            raise ValueError("Gram matrix must be even")
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    if det(gram) == 0:
        raise ValueError("Gram matrix must be nondegenerate")

    d, u, _, uinv, _ = _snf_extended(gram)
    ginv = rational_inverse(gram)
    nontrivial = [i for i in range(n) if d[i][i] > 1]
    orders = tuple(d[i][i] for i in nontrivial)
    proj = tuple(tuple(u[i][j] for j in range(n)) for i in nontrivial)
    lifts = tuple(tuple(uinv[r][i] for r in range(n)) for i in nontrivial)

    def pair(x, y) -> Fraction:
        acc = Fraction(0)
        for i in range(n):
            if x[i]:
                row = ginv[i]
                for j in range(n):
                    if y[j]:
                        acc += x[i] * row[j] * y[j]
        return acc

    bil = tuple(
        tuple(_mod1(pair(lifts[i], lifts[j])) for j in range(len(orders)))
        for i in range(len(orders))
    )
    quad = tuple(_mod2(pair(lifts[i], lifts[i])) for i in range(len(orders)))
    form = FiniteQuadraticForm(orders, bil, quad)
    form.validate()
    return DiscriminantData(form, proj, lifts)


def direct_sum(parts: Sequence[FiniteQuadraticForm]) -> FiniteQuadraticForm:
    """Orthogonal direct sum; each summand becomes one coordinate block."""
    orders: List[int] = []
    blocks: List[Tuple[int, ...]] = []
    for p in parts:
        start = len(orders)
        orders.extend(p.orders)
        blocks.append(tuple(range(start, start + p.rank)))
    n = len(orders)
    bil = [[Fraction(0)] * n for _ in range(n)]
    quad: List[Fraction] = []
    for p, blk in zip(parts, blocks):
        for a, i in enumerate(blk):
            quad.append(p.quadratic[a])
            for b, j in enumerate(blk):
                bil[i][j] = p.bilinear[a][b]
    return FiniteQuadraticForm(
        tuple(orders), tuple(tuple(r) for r in bil), tuple(quad), tuple(blocks)
    )


# ---------------------------------------------------------------------------
# subgroup operations


def orthogonal_complement(form: FiniteQuadraticForm, h: Subgroup) -> Subgroup:
    if not h.is_subgroup_of(form):
        raise ValueError("h is not closed under the group law")
    gens = h.generators(form) or [form.zero()]
    out = [x for x in form.elements() if all(form.b(x, g) == 0 for g in gens)]
    return Subgroup(tuple(sorted(out)))


def is_isotropic(form: FiniteQuadraticForm, k: Subgroup) -> bool:
    return all(form.q(x) == 0 for x in k.elements)


@dataclass(frozen=True)
class QuotientData:
    """Quadratic form on K^perp/K with the projection map."""

    form: FiniteQuadraticForm
    reps: Tuple[Tuple[int, ...], ...]  # ambient representatives of generators
    _basis: Tuple[Tuple[int, ...], ...]  # A matrix (columns = basis of lifted K^perp)
    _u: Tuple[Tuple[int, ...], ...]
    _ambient_orders: Tuple[int, ...]
    _nontrivial: Tuple[int, ...]

    def project(self, x: Sequence[int]) -> Tuple[int, ...]:
        a = [list(r) for r in self._basis]
        y = solve_integer(a, list(x))
        u = [list(r) for r in self._u]
        full = mat_vec(u, y)
        return self.form.reduce([full[i] for i in self._nontrivial])


def quotient_form(form: FiniteQuadraticForm, k: Subgroup) -> QuotientData:
    if not is_isotropic(form, k):
        raise ValueError("kernel subgroup is not isotropic")
    n = form.rank
    kperp = orthogonal_complement(form, k)
    dvecs = [[form.orders[i] if j == i else 0 for j in range(n)] for i in range(n)]
    a = lattice_basis([list(g) for g in kperp.generators(form)] + dvecs, n)
    bmat = lattice_basis([list(g) for g in k.generators(form)] + dvecs, n)
    # c = a^{-1} b, integral since K subset of K^perp
    ct = [solve_integer(a, [bmat[i][j] for i in range(n)]) for j in range(n)]
    c = [[ct[j][i] for j in range(n)] for i in range(n)]
    d, u, _, uinv, _ = _snf_extended(c)
    nontrivial = tuple(i for i in range(n) if d[i][i] > 1)
    orders = tuple(d[i][i] for i in nontrivial)
    reps = []
    for i in nontrivial:
        vec = [sum(a[r][t] * uinv[t][i] for t in range(n)) for r in range(n)]
        reps.append(form.reduce(vec))
    bil = tuple(
        tuple(_mod1(form.b(reps[i], reps[j])) for j in range(len(reps)))
        for i in range(len(reps))
    )
    quad = tuple(form.q(r) for r in reps)
    qf = FiniteQuadraticForm(orders, bil, quad)
    qf.validate()
    expected = form.order() // (k.order() ** 2)
    if qf.order() != expected:
        raise AssertionError("quotient order mismatch")
    return QuotientData(
        qf,
        tuple(reps),
        tuple(tuple(r) for r in a),
        tuple(tuple(r) for r in u),
        form.orders,
        nontrivial,
    )


# ---------------------------------------------------------------------------
# isotropic (Z_p)^rank subgroups with full support


@dataclass(frozen=True)
class TorsionSpace:
    """The p-torsion of a form as an F_p quadratic space.

    basis[i] is the ambient element (order p) behind coordinate i;
    qvec[i] in F_p encodes q(basis[i]) = 2*qvec[i]/p mod 2 (p odd);
    bmat[i][j] in F_p encodes b as p*b(basis[i], basis[j]) mod p.
    """

    p: int
    basis: Tuple[Tuple[int, ...], ...]
    qvec: Tuple[int, ...]
    bmat: Tuple[Tuple[int, ...], ...]
    coord_block: Tuple[int, ...]  # block index of each torsion coordinate


def torsion_space(form: FiniteQuadraticForm, p: int) -> TorsionSpace:
    if p == 2:
        raise ValueError("only odd p supported (kernels are free of 2-torsion)")
    idx = [i for i in range(form.rank) if form.orders[i] % p == 0]
    basis = []
    for i in idx:
        v = [0] * form.rank
        v[i] = form.orders[i] // p
        basis.append(tuple(v))
    inv2 = pow(2, -1, p)
    qvec = []
    for t in basis:
        qv = form.q(t)  # = 2a/p mod 2 for some a
        a = (qv * p / 2)
        if a.denominator != 1:
            raise AssertionError("unexpected q denominator on p-torsion")
        qvec.append(a.numerator % p)
    bmat = []
    for t in basis:
        row = []
        for s in basis:
            bv = form.b(t, s) * p
            if bv.denominator != 1:
                raise AssertionError("unexpected b denominator on p-torsion")
            row.append(bv.numerator % p)
        bmat.append(tuple(row))
    block_of = {}
    for bi, blk in enumerate(form.blocks):
        for i in blk:
            block_of[i] = bi
    return TorsionSpace(p, tuple(basis), tuple(qvec), tuple(bmat), tuple(block_of[i] for i in idx))


def _rref_mod_p(rows: np.ndarray, p: int) -> np.ndarray:
    a = rows.copy() % p
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(nrows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        r += 1
        if r == nrows:
            break
    return a


def isotropic_subspaces(space: TorsionSpace, rank: int, full_support: bool = True) -> np.ndarray:
    """All totally isotropic rank-dim F_p subspaces, as RREF basis matrices.

    Returns an array of shape (N, rank, m).  With full_support, every block
    of the ambient form must receive a nonzero projection.
    """
    p, m = space.p, len(space.basis)
    if rank == 0:
        return np.zeros((1, 0, m), dtype=np.int64)
    if m < rank:
        return np.zeros((0, rank, m), dtype=np.int64)
    nblocks = max(space.coord_block) + 1 if space.coord_block else 0
    vecs = np.array(list(itertools.product(range(p), repeat=m)), dtype=np.int64)
    B = np.array(space.bmat, dtype=np.int64)
    qdiag = np.array(space.qvec, dtype=np.int64)
    # Q(x) = sum x_i^2 q_i + sum_{i<j} x_i x_j B_ij  (B symmetric, diag 2q_i)
    quad = ((vecs @ B) * vecs).sum(axis=1) % p  # = x B x^T = 2*Q(x) mod p
    iso_mask = quad == 0
    # normalized: leading coefficient 1
    lead_ok = np.zeros(len(vecs), dtype=bool)
    piv = np.full(len(vecs), m, dtype=np.int64)
    for r in range(len(vecs)):
        nz = np.nonzero(vecs[r])[0]
        if len(nz):
            piv[r] = nz[0]
            lead_ok[r] = vecs[r, nz[0]] == 1
    cand = iso_mask & lead_ok
    I = vecs[cand]
    Ipiv = piv[cand]
    coord_block = np.array(space.coord_block, dtype=np.int64)

    results: List[np.ndarray] = []
    block_count = np.zeros((len(I), nblocks), dtype=np.int64)
    for bi in range(nblocks):
        block_count[:, bi] = (I[:, coord_block == bi] != 0).any(axis=1)

    def candidates(rows: List[np.ndarray], pivots: List[int], mask: np.ndarray) -> np.ndarray:
        cm = mask.copy()
        if pivots:
            cm &= Ipiv > pivots[-1]
            cm &= (I[:, pivots] == 0).all(axis=1)
            stacked = np.stack(rows)
            cm &= (stacked[:, Ipiv] == 0).all(axis=0)
        return cm

    def extend(rows: List[np.ndarray], pivots: List[int], mask: np.ndarray):
        cm = candidates(rows, pivots, mask)
        if len(rows) == rank - 1:
            # vectorized final level
            idxs = np.nonzero(cm)[0]
            if len(idxs) == 0:
                return
            if full_support:
                sup = np.zeros(nblocks, dtype=bool)
                for r in rows:
                    for bi in set(coord_block[r != 0].tolist()):
                        sup[bi] = True
                need = ~sup
                if need.any():
                    ok = (block_count[idxs][:, need] != 0).all(axis=1)
                    idxs = idxs[ok]
            for t in idxs:
                results.append(np.stack(rows + [I[t]]))
            return
        for t in np.nonzero(cm)[0]:
            v = I[t]
            new_mask = cm & ((I @ ((B @ v) % p)) % p == 0)
            extend(rows + [v], pivots + [int(Ipiv[t])], new_mask)

    if rank == 1 and full_support:
        ok = (block_count != 0).all(axis=1)
        for t in np.nonzero(ok)[0]:
            results.append(I[t : t + 1])
    elif rank == 1:
        for t in range(len(I)):
            results.append(I[t : t + 1])
    else:
        extend([], [], np.ones(len(I), dtype=bool))
    if not results:
        return np.zeros((0, rank, m), dtype=np.int64)
    return np.stack(results)


def subspace_elements(space: TorsionSpace, basis_rows: np.ndarray,
                      form: FiniteQuadraticForm) -> Subgroup:
    """Materialize an F_p subspace (RREF basis) as an ambient Subgroup."""
    p = space.p
    r = basis_rows.shape[0]
    combos = np.array(list(itertools.product(range(p), repeat=r)), dtype=np.int64)
    coords = combos @ basis_rows % p
    elems = set()
    for row in coords:
        acc = form.zero()
        for ci, t in zip(row, space.basis):
            if ci:
                acc = form.add(acc, tuple((int(ci) * x) % d for x, d in zip(t, form.orders)))
        elems.add(acc)
    return Subgroup(tuple(sorted(elems)))


def isotropic_subgroups(form: FiniteQuadraticForm, p: int, rank: int,
                        full_support: bool = True) -> List[Subgroup]:
    """All isotropic (Z_p)^rank subgroups, optionally with full block support.

    Deterministic order (sorted by element lists).  For very large searches
    prefer working with isotropic_subspaces directly.
    """
    space = torsion_space(form, p)
    if rank >= 1 and full_support:
        hit = set(space.coord_block)
        if hit != set(range(len(form.blocks))):
            return []
    bases = isotropic_subspaces(space, rank, full_support=full_support)
    subs = {subspace_elements(space, b, form) for b in bases}
    return sorted(subs, key=lambda s: s.elements)
