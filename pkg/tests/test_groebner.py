import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_groebner_mod_p
from ramvf.mpoly.groebner import (
    MonomialOrder,
    groebner,
    ideal_intersection,
    ideal_membership,
    normal_form,
    radical_membership,
)
from ramvf.mpoly.poly import Ideal, Ring, T, parse, random_poly
from ramvf.rvf import CLASSICAL, SCALED, ab_polynomials, apply, discriminant, ideal_Ip, make_ramanujan, vp_components
from strategies import polys

F5 = T.mod(5)
F7 = T.mod(7)


def P(s, ring=F5):
    return parse(s, ring)


def test_membership_examples():
    I = Ideal([P("t_2 - 1"), P("t_3 - t_1")])
    assert ideal_membership(P("t_2 - 1"), I)
    assert not ideal_membership(P("t_1"), Ideal([P("t_2"), P("t_3")]))
    v = make_ramanujan(SCALED, 5)
    A, _ = ab_polynomials(5, SCALED)
    assert ideal_membership(apply(v, A - 1), ideal_Ip(5, SCALED))


def test_unit_ideal():
    gb = groebner(Ideal([P("t_1"), P("t_1 + 1")]))
    assert gb.is_unit() and len(gb) == 1


def test_grevlex_basis_against_sympy():
    I = [P("t_1^2 + t_2*t_3 + 1"), P("t_2^2 - t_1*t_3"), P("t_1*t_2 + t_3^2 + t_3")]
    assert set(groebner(I).polys) == sympy_groebner_mod_p(I, 5)


@pytest.mark.parametrize("seed", range(6))
def test_random_bases_against_sympy(seed):
    rng = random.Random(seed)
    R = T.mod(7)
    gens = [random_poly(R, rng, max_degree=3, nterms=4) for _ in range(3)]
    gens = [g for g in gens if g]
    assert set(groebner(gens).polys) == sympy_groebner_mod_p(gens, 7)


def test_ideal_Ip_basis_against_sympy():
    for p in (7, 11, 13):
        gens = list(ideal_Ip(p, CLASSICAL).gens)
        assert set(groebner(gens).polys) == sympy_groebner_mod_p(gens, p)


def _test_ideals():
    v = make_ramanujan(CLASSICAL, 7)
    return [
        Ideal([P("t_2 - 1", F7), P("t_3 - t_1", F7)]),
        Ideal([P("t_1^2 - t_2", F7), P("t_1^3 - t_3", F7)]),
        Ideal(vp_components(v)[:1] + vp_components(v)[2:]) if vp_components(v)[2] else Ideal(vp_components(v)[:2]),
        ideal_Ip(7, SCALED),
    ]


IDEALS = _test_ideals()


@given(st.sampled_from(range(len(IDEALS))), polys(7, 4), polys(7, 4))
def test_normal_form_vs_membership(i, f, g):
    I = IDEALS[i]
    gb = groebner(I)
    h = f * I.gens[0] + g * I.gens[-1]
    assert normal_form(h, gb).is_zero()
    assert gb.contains(h)
    r = normal_form(f, gb)
    # f and its normal form differ by an ideal element; the normal form is fully reduced
    assert gb.contains(f - r)
    assert normal_form(r, gb) == r
    assert gb.contains(f) == r.is_zero()


@pytest.mark.parametrize("i", range(len(IDEALS)))
def test_groebner_idempotent(i):
    gb = groebner(IDEALS[i])
    assert groebner(Ideal(gb.polys)) == gb


def test_weighted_order_same_ideal():
    I = ideal_Ip(11, CLASSICAL)
    gw = groebner(I, "wgrevlex", weights=(2, 4, 6))
    g0 = groebner(I)
    assert all(g0.contains(g) for g in gw.polys)
    assert all(gw.contains(g) for g in g0.polys)


def test_intersection_examples():
    t2, t3 = F5.gen(1), F5.gen(2)
    X = ideal_intersection(Ideal([t2]), Ideal([t3]))
    assert set(groebner(X).polys) == {t2 * t3}
    X = ideal_intersection(Ideal([t2]), Ideal([t2, t3]))
    assert set(groebner(X).polys) == {t2}


@pytest.mark.parametrize("i", range(len(IDEALS)))
def test_self_intersection(i):
    I = IDEALS[i]
    X = ideal_intersection(I, I)
    gI, gX = groebner(I), groebner(X)
    assert all(gI.contains(g) for g in X.gens)
    assert all(gX.contains(g) for g in I.gens)


def test_intersection_contained_in_both():
    I, J, K = IDEALS[0], IDEALS[1], Ideal([P("t_1 + 2", F7)])
    X = ideal_intersection(I, J, K)
    for C in (I, J, K):
        gb = groebner(C)
        assert all(gb.contains(g) for g in X.gens)
    # products lie in the intersection
    gX = groebner(X)
    assert gX.contains(I.gens[0] * J.gens[1] * K.gens[0])


def test_radical_membership_examples():
    t1, t2, t3 = F5.gens()
    assert radical_membership(t2, Ideal([t2 ** 2]))
    assert not radical_membership(t1, Ideal([t2, t3]))
    v = make_ramanujan(CLASSICAL, 5)
    w = [x for x in vp_components(v) if x]
    assert radical_membership(discriminant(CLASSICAL, 5), Ideal(w))


# hand-built squarefree principal ideals at p = 5 with known factorizations
FACTORS = [
    ["t_1", "t_2 + 1"],
    ["t_1^2 + 2", "t_3"],
    ["t_1 + t_2", "t_1 - t_2", "t_3 + 1"],
    ["t_2^2 + t_3 + 1"],
]


@pytest.mark.parametrize("factors", FACTORS)
@given(polys(5, 3))
def test_rabinowitsch_principal(factors, f):
    fs = [P(s) for s in factors]
    g = F5.one()
    for x in fs:
        g = g * x
    from ramvf.mpoly.poly import divides

    expected = all(divides(x, f)[0] for x in fs)
    assert radical_membership(f, Ideal([g])) == expected


def test_radical_weighted_order_agrees():
    t1, t2, t3 = F5.gens()
    I = Ideal([t2 ** 3 - t3 ** 2])
    for f in (t2 ** 3 - t3 ** 2, t2, t1 * (t2 ** 3 - t3 ** 2)):
        assert radical_membership(f, I) == radical_membership(f, I, "wgrevlex", (2, 4, 6))


def test_orders():
    o = MonomialOrder.grevlex(3)
    assert o.key((2, 0, 0)) > o.key((1, 1, 0)) > o.key((0, 2, 0)) > o.key((1, 0, 1))
    w = MonomialOrder.wgrevlex((2, 4, 6))
    # weight beats total degree; equal weights fall back to revlex
    assert w.key((0, 0, 1)) > w.key((2, 0, 0))
    assert w.key((1, 1, 0)) > w.key((0, 0, 1))
    e = MonomialOrder.elimination(4, 1)
    assert e.key((1, 0, 0, 0)) > e.key((0, 5, 5, 5))


def test_other_ring():
    R = Ring(("x", "y"), 5)
    x, y = R.gens()
    gb = groebner([x * y - 1, x ** 2 - y])
    assert gb.contains(y ** 3 - 1)
