import itertools
from fractions import Fraction as F

import pytest

from sexticsym.discrforms import (
    Automorphism,
    Subgroup,
    apply_automorphism,
    direct_sum,
    discriminant_form,
    identity_automorphism,
    is_isotropic,
    isotropic_subgroups,
    minus_identity,
    orthogonal_complement,
    quotient_form,
    torsion_space,
)
from sexticsym.rootsystems import ADEType, DynkinGraph, component_discr, graph_discr


def _mod2(x: F) -> F:
    return x % 2


def q_multiset(form):
    return sorted(form.q(x) for x in form.elements())


def cyclic_q_multiset(n: int, alpha: F):
    """q-values of Z_n with q(g) = alpha."""
    return sorted(_mod2(alpha * k * k) for k in range(n))


def klein_q_multiset(beta: F):
    """q-values of Z2 x Z2 with spinor classes of value beta; the vector
    class always has q = 1."""
    return sorted([F(0), _mod2(beta), _mod2(beta), F(1)])


# ---------------------------------------------------------------------------
# closed forms of the ADE discriminant forms


@pytest.mark.parametrize("p", range(1, 20))
def test_a_series_closed_form(p):
    form = component_discr(ADEType("A", p)).form
    assert form.order() == p + 1
    assert form.orders == (p + 1,)
    gen = (1,)
    assert form.q(gen) == _mod2(F(-p, p + 1))
    assert q_multiset(form) == cyclic_q_multiset(p + 1, F(-p, p + 1))


@pytest.mark.parametrize("r", range(4, 20))
def test_d_series_closed_form(r):
    form = component_discr(ADEType("D", r)).form
    assert form.order() == 4
    if r % 2 == 0:
        assert sorted(form.orders) == [2, 2]
        assert q_multiset(form) == klein_q_multiset(_mod2(F(-r, 4)))
    else:
        assert form.orders == (4,)
        assert q_multiset(form) == cyclic_q_multiset(4, _mod2(F(-r, 4)))


def test_e_series_closed_form():
    e6 = component_discr(ADEType("E", 6)).form
    assert e6.orders == (3,)
    assert q_multiset(e6) == cyclic_q_multiset(3, _mod2(F(-4, 3)))
    e7 = component_discr(ADEType("E", 7)).form
    assert e7.orders == (2,)
    assert q_multiset(e7) == cyclic_q_multiset(2, _mod2(F(-3, 2)))
    e8 = component_discr(ADEType("E", 8)).form
    assert e8.order() == 1
    assert e8.rank == 0


def test_d4_all_involutions_look_alike():
    # the three nonzero classes of discr D4 all have q = 1
    form = component_discr(ADEType("D", 4)).form
    assert sorted(form.q(x) for x in form.elements() if any(x)) == [1, 1, 1]
    xs = [x for x in form.elements() if any(x)]
    for x, y in itertools.combinations(xs, 2):
        assert form.b(x, y) == F(1, 2)


# ---------------------------------------------------------------------------
# generic form axioms


@pytest.mark.parametrize(
    "gram, order",
    [
        ([[-2]], 2),
        ([[-2, 1], [1, -2]], 3),
        ([[0, 1], [1, 0]], 1),
        ([[-2, 1, 0], [1, -2, 1], [0, 1, -2]], 4),
        ([[-4]], 4),
    ],
)
def test_discriminant_form_order(gram, order):
    data = discriminant_form(gram)
    assert data.form.order() == order
    data.form.validate()


def test_discriminant_form_rejects_singular():
    with pytest.raises(ValueError):
        discriminant_form([[2, 0], [0, 0]])


@pytest.mark.parametrize(
    "types",
    [
        (ADEType("A", 5), ADEType("A", 2)),
        (ADEType("D", 5),),
        (ADEType("E", 6), ADEType("A", 2)),
    ],
)
def test_q_b_compatibility(types):
    form = graph_discr(DynkinGraph(types))
    form.validate()
    els = list(form.elements())
    for x in els:
        assert _mod2(form.q(x)) == form.q(x)
        assert form.q(form.neg(x)) == form.q(x)
    for x, y in itertools.product(els, els):
        lhs = _mod2(form.q(form.add(x, y)) - form.q(x) - form.q(y))
        assert lhs == _mod2(2 * form.b(x, y))


def test_direct_sum_blocks_and_order():
    a2 = component_discr(ADEType("A", 2)).form
    e7 = component_discr(ADEType("E", 7)).form
    e8 = component_discr(ADEType("E", 8)).form
    s = direct_sum([a2, e7, e8])
    assert s.order() == 6
    # E8 contributes an empty block, still tracked for support bookkeeping
    assert len(s.blocks) == 3
    assert s.blocks[2] == ()
    assert s.q((1, 0)) == a2.q((1,))
    assert s.q((0, 1)) == e7.q((1,))
    assert s.b((1, 1), (1, 0)) == a2.b((1,), (1,))


# ---------------------------------------------------------------------------
# subgroups, complements, quotients


def three_e6():
    return graph_discr(DynkinGraph((ADEType("E", 6),) * 3))


def test_subgroup_spanned():
    form = three_e6()
    k = Subgroup.spanned(form, [(1, 1, 1)])
    assert k.order() == 3
    assert (2, 2, 2) in k
    assert (1, 2, 0) not in k
    assert k.is_subgroup_of(form)
    assert Subgroup.trivial(form).order() == 1


def test_isotropy_and_complement_3e6():
    form = three_e6()
    k = Subgroup.spanned(form, [(1, 1, 1)])
    assert is_isotropic(form, k)
    perp = orthogonal_complement(form, k)
    assert perp.order() == 9
    for x in k.elements:
        assert x in perp  # isotropic subgroups sit inside their complement
    assert not is_isotropic(form, Subgroup.spanned(form, [(1, 0, 0)]))


def test_quotient_form_orders():
    form = three_e6()
    k = Subgroup.spanned(form, [(1, 1, 1)])
    quo = quotient_form(form, k)
    assert quo.form.order() == form.order() // k.order()**2  # 27 / 9
    quo.form.validate()
    # quotient of the trivial kernel is the form itself
    quo0 = quotient_form(form, Subgroup.trivial(form))
    assert quo0.form.order() == 27
    assert q_multiset(quo0.form) == q_multiset(form)


def test_quotient_a17_is_order_two():
    form = graph_discr(DynkinGraph((ADEType("A", 17),)))
    assert form.orders == (18,)
    k = Subgroup.spanned(form, [(6,)])
    assert k.order() == 3 and is_isotropic(form, k)
    quo = quotient_form(form, k)
    assert quo.form.order() == 2
    gen = next(x for x in quo.form.elements() if any(x))
    assert quo.form.q(gen) == F(3, 2)


def test_quotient_rejects_anisotropic_kernel():
    form = three_e6()
    with pytest.raises(ValueError):
        quotient_form(form, Subgroup.spanned(form, [(1, 0, 0)]))


# ---------------------------------------------------------------------------
# automorphisms


def test_minus_identity_preserves_form():
    form = three_e6()
    m = minus_identity(form)
    assert m.preserves_form(form)
    assert not m.is_identity(form)
    assert m.compose(form, m).is_identity(form)
    assert apply_automorphism(form, m, (1, 2, 0)) == (2, 1, 0)
    assert identity_automorphism(form).is_identity(form)


def test_automorphism_must_preserve_form():
    form = graph_discr(DynkinGraph((ADEType("A", 4),)))  # Z5, q = -4/5
    # multiplication by 2 sends q(g) = -4/5 to -16/5 != -4/5 mod 2
    bad = Automorphism(((2,),))
    assert not bad.preserves_form(form)
    # multiplication by -1 is fine
    assert Automorphism(((4,),)).preserves_form(form)


# ---------------------------------------------------------------------------
# torsion spaces and isotropic subgroup enumeration


def test_torsion_space_3e6():
    form = three_e6()
    sp = torsion_space(form, 3)
    assert len(sp.basis) == 3
    assert sp.coord_block == (0, 1, 2)
    # q(e) = 2/3 = 2*1/3 -> qvec entry 1
    assert sp.qvec == (1, 1, 1)
    with pytest.raises(ValueError):
        torsion_space(form, 2)


def test_isotropic_subgroups_3e6():
    form = three_e6()
    subs = isotropic_subgroups(form, 3, 1)
    assert len(subs) == 4
    gens = {min(x for x in s.elements if any(x)) for s in subs}
    assert (1, 1, 1) in {g for g in gens} or any((1, 1, 1) in s for s in subs)
    for s in subs:
        assert s.order() == 3
        assert is_isotropic(form, s)
    # without the support constraint, partial-support subgroups appear too
    assert len(isotropic_subgroups(form, 3, 1, full_support=False)) == 4


def test_isotropic_subgroups_3a2_rank2_empty():
    # a^2+b^2+c^2 on F_3^3 has no totally isotropic plane
    form = graph_discr(DynkinGraph((ADEType("A", 2),) * 3))
    assert isotropic_subgroups(form, 3, 2) == []
    assert len(isotropic_subgroups(form, 3, 1)) == 4


def test_isotropic_subgroups_3a6():
    form = graph_discr(DynkinGraph((ADEType("A", 6),) * 3))
    subs = isotropic_subgroups(form, 7, 1)
    assert len(subs) == 8
    assert any((1, 2, 3) in s for s in subs)


def test_isotropic_subgroups_no_torsion():
    form = graph_discr(
        DynkinGraph((ADEType("E", 8), ADEType("E", 8), ADEType("A", 3)))
    )
    assert isotropic_subgroups(form, 3, 1) == []


def test_isotropic_subgroups_deterministic():
    form = three_e6()
    a = isotropic_subgroups(form, 3, 1)
    b = isotropic_subgroups(form, 3, 1)
    assert a == b
