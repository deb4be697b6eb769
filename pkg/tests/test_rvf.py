import logging
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from oracles import from_sympy, sympy_derivation
from ramvf.errors import FirstIntegralFails
from ramvf.exactnum import primes_in
from ramvf.mpoly.groebner import groebner
from ramvf.mpoly.linalg import inverse, matmul, matpow, matsub, parallel, rank
from ramvf.mpoly.poly import T, divides, is_homogeneous, parse, random_poly, weighted_degree
from ramvf.qexp import eisenstein, eval_at_eisenstein
from ramvf import rvf
from ramvf.rvf import (
    CLASSICAL,
    SCALED,
    REMARK1_J,
    REMARK1_S,
    ab_over_q,
    ab_polynomials,
    apply,
    check_commutation,
    discriminant,
    eisenstein_solution,
    first_integral,
    ideal_Ip,
    iterate,
    iterate_p,
    linear_part_at,
    make_ramanujan,
    ode_solve,
    p_integrality_report,
    regular_first_integral_check,
    sing_v_ideal,
    vp_components,
)
from strategies import polys

t1, t2, t3 = T.gens()
SMALL = [5, 7, 11, 13]


def test_components():
    vs = make_ramanujan(SCALED)
    assert vs.components[1] == 4 * t1 * t2 - 6 * t3
    vc = make_ramanujan(CLASSICAL)
    assert vc.components[2] == (t1 * t3 - t2 ** 2) * Fraction(1, 2)
    v5 = make_ramanujan(CLASSICAL, 5)
    assert str(v5.components[0]) == "3*t_1^2 + 2*t_2"
    for v in (vs, vc):
        for i, c in enumerate(v.components):
            assert is_homogeneous(c) and weighted_degree(c) == 2 * (i + 1) + 2


def test_discriminant_invariant():
    for norm, factor in ((SCALED, 12 * t1), (CLASSICAL, t1)):
        v = make_ramanujan(norm)
        D = discriminant(norm)
        assert apply(v, D) == factor * D
        assert from_sympy(sympy_derivation(v.components, D)) == factor * D
    assert apply(make_ramanujan(SCALED), T.one()).is_zero()


@given(polys(max_terms=4))
def test_apply_matches_sympy(f):
    for norm in (SCALED, CLASSICAL):
        v = make_ramanujan(norm)
        assert apply(v, f) == from_sympy(sympy_derivation(v.components, f))


@given(polys(7, 4), polys(7, 4))
def test_apply_is_derivation(f, g):
    v = make_ramanujan(CLASSICAL, 7)
    assert apply(v, f * g) == apply(v, f) * g + f * apply(v, g)


@given(polys(11, 4))
def test_iterate_dense_matches_sparse(f):
    v = make_ramanujan(SCALED, 11)
    g = f
    for _ in range(4):
        g = apply(v, g)
    assert iterate(v, f, 4) == g


def test_iterate_p_examples():
    v = make_ramanujan(CLASSICAL, 5)
    w1 = iterate_p(v, v.ring.gen(0))
    assert divides(discriminant(CLASSICAL, 5), w1)[0]
    assert iterate_p(v, v.ring.one()).is_zero()
    gb = groebner(ideal_Ip(5, CLASSICAL))
    for w, c in zip(vp_components(v), v.components):
        assert gb.contains(w - c)
    with pytest.raises(ValueError):
        iterate_p(make_ramanujan(CLASSICAL), t1)
    with pytest.raises(ValueError):
        iterate_p(v, v.ring.gen(0), 7)


def test_vp_is_a_derivation_in_char_p():
    p = 7
    v = make_ramanujan(CLASSICAL, p)
    R = v.ring
    rng = random.Random(1)
    f, g = random_poly(R, rng, 2, 3), random_poly(R, rng, 2, 3)
    lhs = iterate_p(v, f * g)
    assert lhs == iterate_p(v, f) * g + f * iterate_p(v, g)


def test_ab_examples():
    A, B = ab_polynomials(5, CLASSICAL)
    assert (str(A), str(B)) == ("t_2", "t_3")
    A, B = ab_polynomials(7, CLASSICAL)
    assert (str(A), str(B)) == ("t_3", "t_2^2")
    A, _ = ab_polynomials(13, CLASSICAL)
    assert A == parse("6*t_2^3 + 8*t_3^2", T.mod(13))


@pytest.mark.parametrize("p", primes_in(5, 61))
def test_ab_homogeneous_and_reduce(p):
    # reduction never hits a p in a denominator
    for norm in (SCALED, CLASSICAL):
        A, B = ab_polynomials(p, norm)
        assert weighted_degree(A) == p - 1 and is_homogeneous(A)
        assert weighted_degree(B) == p + 1 and is_homogeneous(B)
        assert A.degree_in(0) == 0 and B.degree_in(0) == 0


@pytest.mark.parametrize("p", SMALL)
def test_A_series_oracle(p):
    A, B = ab_over_q(p, CLASSICAL)
    assert eval_at_eisenstein(A, CLASSICAL, 40) == eisenstein(p - 1, 40)
    assert eval_at_eisenstein(B, CLASSICAL, 40) == eisenstein(p + 1, 40)


@pytest.mark.parametrize("p", SMALL)
@pytest.mark.parametrize("norm", [SCALED, CLASSICAL])
def test_ideal_generators_vanish(p, norm):
    for g in ideal_Ip(p, norm).gens:
        assert eval_at_eisenstein(g, norm, 40).is_zero()


def test_ideal_examples():
    I = ideal_Ip(5, CLASSICAL)
    assert [str(g) for g in I.gens] == ["t_2 + 4", "4*t_1 + t_3"]
    F5 = T.mod(5)
    gb = groebner(ideal_Ip(5, SCALED))
    expected = groebner([parse("12*t_2 - 1", F5), parse("-216*t_3 + 12*t_1", F5)])
    assert gb == expected


@pytest.mark.parametrize("p", SMALL)
@pytest.mark.parametrize("norm", [SCALED, CLASSICAL])
def test_prop7_invariance_and_derivation(p, norm):
    v = make_ramanujan(norm, p)
    I = ideal_Ip(p, norm)
    gb = groebner(I)
    for g in I.gens:
        assert gb.contains(apply(v, g))
    for w, c in zip(vp_components(v), v.components):
        assert gb.contains(w - c)


def test_first_integral_examples():
    F5, F7 = T.mod(5), T.mod(7)
    assert first_integral(5, CLASSICAL) == parse("t_3 - t_1*t_2", F5)
    assert first_integral(7, CLASSICAL) == parse("t_2^2 - t_1*t_3", F7)
    assert weighted_degree(first_integral(5, CLASSICAL)) == 6


@pytest.mark.parametrize("p", primes_in(5, 31))
def test_first_integral(p, caplog):
    for norm in (SCALED, CLASSICAL):
        with caplog.at_level(logging.WARNING):
            f = first_integral(p, norm)
        assert not caplog.records, "stated sign should hold"
        v = make_ramanujan(norm, p)
        assert apply(v, f).is_zero()
        assert is_homogeneous(f) and weighted_degree(f) == p + 1


def test_first_integral_failure(monkeypatch):
    monkeypatch.setattr(rvf, "first_integral_candidate", lambda p, norm, sign: T.mod(p).gen(0))
    with pytest.raises(FirstIntegralFails):
        first_integral(5, CLASSICAL)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_regular_first_integral(p):
    for norm in (SCALED, CLASSICAL):
        r = regular_first_integral_check(p, norm)
        assert r["vA_in_radical_f"] and r["curve_equals_Ip"]


def test_ode_initial_data():
    sol = ode_solve(10)
    assert sol[0, 0] == Fraction(-1, 12) and sol[0, 1] == 2
    assert sol[1, 1] == 20 and sol[2, 1] == Fraction(7, 3)
    assert sol[0, 2] == 6
    with pytest.raises(ValueError):
        ode_solve(1)


@pytest.mark.parametrize("norm", [SCALED, CLASSICAL])
def test_ode_matches_divisor_sums(norm):
    assert ode_solve(100, norm) == eisenstein_solution(100, norm)


def test_ode_bad_tangent(monkeypatch):
    from ramvf.errors import RecursionInconsistent

    monkeypatch.setitem(rvf.TANGENT, SCALED, (Fraction(1), Fraction(20), Fraction(7, 3)))
    with pytest.raises(RecursionInconsistent):
        ode_solve(5)


def test_p_integrality():
    sol = ode_solve(50)
    rep = p_integrality_report(sol, [2, 5, 97])
    assert rep[5]["p_integral"] and rep[97]["p_integral"]
    assert rep[2]["min_ord"] < 0
    assert rep[5]["min_ord"] == 0


def test_theorem3_third_series_denominator():
    # t_3 = -E_6/216 has t_{3,n} = 7 sigma_5(n) / 3: p-integral for p >= 5, not integral
    sol = ode_solve(20)
    assert sol[2, 1] == Fraction(7, 3)
    assert all(sol[2, n] == Fraction(7, 3) * sum(d ** 5 for d in range(1, n + 1) if n % d == 0) for n in range(1, 20))


def test_linear_part_and_remark1():
    L = linear_part_at(make_ramanujan(CLASSICAL), (1, 1, 1))
    assert L == [
        [Fraction(1, 6), Fraction(-1, 12), 0],
        [Fraction(1, 3), Fraction(1, 3), Fraction(-1, 3)],
        [Fraction(1, 2), -1, Fraction(1, 2)],
    ]
    assert matmul(matmul(REMARK1_S, REMARK1_J), inverse(REMARK1_S)) == L
    # sympy's Jordan form agrees
    P, J = sympy.Matrix(L).jordan_form()
    assert sorted(J[i, i] for i in range(3)) == [0, 0, 1]
    for p in (5, 7, 11):
        Lp = [[x % p if isinstance(x, int) else x.numerator * pow(x.denominator, -1, p) % p for x in row] for row in L]
        assert rank(matsub(matpow(Lp, p, p), Lp, p), p) == 1


@pytest.mark.parametrize("p", SMALL)
def test_tangent_at_base_point(p):
    from ramvf.mpoly.linalg import jacobian_rank_at_point

    I = ideal_Ip(p, SCALED)
    a = rvf.point_mod_p(rvf.BASE_POINT[SCALED], p)
    b = rvf.point_mod_p(rvf.TANGENT[SCALED], p)
    r, ker = jacobian_rank_at_point(I.gens, a)
    assert r == 2 and parallel(ker[0], b, p)


COMMUTE = [t1, t2, t3, t1 * t2, t2 * t3, T.const(3)]


@pytest.mark.parametrize("f", COMMUTE, ids=str)
@pytest.mark.parametrize("norm", [SCALED, CLASSICAL])
def test_commutation(f, norm):
    assert check_commutation(make_ramanujan(norm), f, 30)


def test_commutation_random_cubic():
    rng = random.Random(7)
    f = random_poly(T, rng, max_degree=3, nterms=6)
    assert check_commutation(make_ramanujan(SCALED), f, 30)


def test_commutation_fails_with_wrong_field():
    from ramvf.rvf import VectorField

    v = make_ramanujan(SCALED)
    bad = VectorField((v.components[0] + t1, v.components[1], v.components[2]), SCALED)
    assert not check_commutation(bad, t1, 10)


def test_sing_v():
    I = sing_v_ideal()
    vc = make_ramanujan(CLASSICAL).components
    a, b = I.gens  # t1^2 - t2, t1^3 - t3
    # explicit cofactors
    assert vc[0] == a * Fraction(1, 12)
    assert vc[1] == (t1 * (t2 - t1 ** 2) + (t1 ** 3 - t3)) * Fraction(1, 3)
    assert vc[2] == (t1 * (t3 - t1 ** 3) + (t1 ** 2 - t2) * (t1 ** 2 + t2)) * Fraction(1, 2)
    sing_v_ideal(5)
