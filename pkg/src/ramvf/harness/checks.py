"""Verification procedures, one per (check, prime)."""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable

from ..cartier import find_points_on_Ip, verify_prop8_symbolic, verify_thm2_point
from ..errors import NoPointsFound, RamvfError
from ..exactnum import bernoulli, check_prime, mod_p
from ..mpoly.groebner import groebner, ideal_intersection, radical_membership
from ..mpoly.linalg import jacobian_rank_at_point, matpow, matsub, minors_2x2, parallel, rank
from ..mpoly.poly import Ideal, MPoly, T, divides, is_homogeneous, weighted_degree
from ..qexp import eisenstein, eval_at_eisenstein, isobaric_representation, minimal_integral_multiplier
from ..rvf import (
    BASE_POINT,
    CLASSICAL,
    SCALED,
    TANGENT,
    VectorField,
    ab_polynomials,
    apply,
    check_commutation,
    discriminant,
    eisenstein_solution,
    first_integral,
    ideal_Ip,
    linear_part_at,
    make_ramanujan,
    ode_solve,
    p_integrality_report,
    point_mod_p,
    regular_first_integral_check,
    sing_v_ideal,
    vp_components,
)
from .report import VerificationReport

CHECK_NAMES = (
    "prop6", "prop7", "prop8", "thm2", "thm3", "thm4",
    "conj10-1", "conj10-2", "conj10-3", "conj11", "conj9", "aux",
)

#: largest prime each Groebner-heavy check runs at unless overridden
DEFAULT_CEILINGS = {
    "conj10-1": 31,
    "conj10-2": 11,
    "conj10-3": 31,
    "aux": 31,
}

N_CAP = 10
F2_DENOMINATOR = 103680
BRUTE_FORCE_MAX_P = 23

_CHECKS: dict[str, Callable[..., tuple[bool, dict]]] = {}


def _register(name):
    def deco(fn):
        _CHECKS[name] = fn
        return fn
    return deco


def run_check(name: str, p: int, *, terms: int | None = None, samples: int | None = None,
              seed: int = 0, ceiling: int | None = None) -> VerificationReport:
    """Run one check at one prime; library errors become a failing report."""
    if name not in _CHECKS:
        raise KeyError(f"unknown check {name!r}")
    t0 = time.perf_counter()
    cap = ceiling if ceiling is not None else DEFAULT_CEILINGS.get(name)
    try:
        check_prime(p)
        if cap is not None and p > cap:
            status, details = "skipped", {"reason": f"p above ceiling {cap}"}
        else:
            opts = {"terms": terms, "samples": samples, "seed": seed}
            ok, details = _CHECKS[name](p, **{k: v for k, v in opts.items() if v is not None})
            status = "pass" if ok else "fail"
    except NoPointsFound as e:
        status, details = "skipped", {"reason": str(e)}
    except (RamvfError, ValueError) as e:
        status, details = "fail", {"error": f"{type(e).__name__}: {e}"}
    return VerificationReport(name, p, status, details, (time.perf_counter() - t0) * 1000)


# -- Bernoulli and isobaric data ------------------------------------------------

PROP6_LIST = (1, 1, 1, 1, 1, 691, 1, 3617, 43867, 174611, 77683, 236364091)


def bernoulli_numerator_over_k(k: int) -> int:
    return abs((bernoulli(k) / k).numerator)


def prop6_table(max_k: int = 24) -> list[dict]:
    """Minimal integral multipliers for 2k = 2 .. max_k next to |num(B_2k / 2k)|.

    E_2 is not in Q[E4, E6]; its entry carries the Bernoulli numerator only.
    """
    rows = []
    for k in range(2, max_k + 1, 2):
        expected = bernoulli_numerator_over_k(k)
        if k == 2:
            rows.append({"weight": k, "multiplier": expected, "bernoulli_numerator": expected,
                         "note": "quasi-modular; Bernoulli numerator"})
            continue
        m = minimal_integral_multiplier(k)
        rows.append({"weight": k, "multiplier": m, "bernoulli_numerator": expected})
    return rows


@_register("prop6")
def _prop6(p: int, terms: int = 40, **_) -> tuple[bool, dict]:
    ok = True
    details = {}
    for k in (p - 1, p + 1):
        m = minimal_integral_multiplier(k)
        num = bernoulli_numerator_over_k(k)
        P = isobaric_representation(k, eisenstein(k, max(terms, k // 12 + 2)))
        entry = {"multiplier": m, "bernoulli_numerator": num, "p_divides": m % p == 0,
                 "terms": len(P)}
        ok &= m == num and m % p != 0
        details[f"k={k}"] = entry
    return ok, details


# -- invariance of I_p and commutation ------------------------------------------

@_register("prop7")
def _prop7(p: int, terms: int = 40, **_) -> tuple[bool, dict]:
    details = {}
    ok = True
    for norm in (SCALED, CLASSICAL):
        v = make_ramanujan(norm, p)
        I = ideal_Ip(p, norm)
        gb = groebner(I)
        vanish = all(eval_at_eisenstein(g, norm, terms).is_zero() for g in I.gens)
        invariant = all(gb.contains(apply(v, g)) for g in I.gens)
        vp = vp_components(v)
        derivation = all(gb.contains(w - c) for w, c in zip(vp, v.components))
        a = point_mod_p(BASE_POINT[norm], p)
        on_curve = all(not g.evaluate(list(a)) for g in I.gens)
        r, kernel = jacobian_rank_at_point(I.gens, a)
        b = point_mod_p(TANGENT[norm], p)
        tangent = r == 2 and len(kernel) == 1 and parallel(kernel[0], b, p)
        sub = {
            "generators_vanish_on_solution": vanish,
            "generator_invariance": invariant,
            "vp_minus_v_in_Ip": derivation,
            "base_point_on_curve": on_curve,
            "jacobian_rank": r,
            "kernel_parallel_to_tangent": tangent,
        }
        ok &= vanish and invariant and derivation and on_curve and tangent
        details[norm.value] = sub
    t1, t2, t3 = T.gens()
    samples = (t1, t2, t3, t1 * t2, t2 * t3)
    comm = all(check_commutation(make_ramanujan(n), f, 30) for n in (SCALED, CLASSICAL) for f in samples)
    details["commutation"] = comm
    return ok and comm, details


# -- Cartier --------------------------------------------------------------------

@_register("prop8")
def _prop8(p: int, **_) -> tuple[bool, dict]:
    r = verify_prop8_symbolic(p)
    return r["ok"], {k: v for k, v in r.items() if k != "prime"}


@_register("thm2")
def _thm2(p: int, samples: int = 3, seed: int = 0, **_) -> tuple[bool, dict]:
    points = find_points_on_Ip(p, max_count=samples, seed=seed)
    results = [verify_thm2_point(p, pt) for pt in points]
    return all(results), {"points": points, "cartier_ok": results}


# -- the field and its solution -------------------------------------------------

@_register("thm3")
def _thm3(p: int, terms: int = 100, **_) -> tuple[bool, dict]:
    sol = ode_solve(terms, SCALED)
    matches = sol == eisenstein_solution(terms, SCALED)
    rep = p_integrality_report(sol, [p])[p]
    I = ideal_Ip(p, SCALED)
    a = point_mod_p(BASE_POINT[SCALED], p)
    b = point_mod_p(TANGENT[SCALED], p)
    v = make_ramanujan(SCALED, p)
    va_zero = all(not c.evaluate(list(a)) for c in v.components)
    r, kernel = jacobian_rank_at_point(I.gens, a)
    smooth = r == 2
    tangent = smooth and len(kernel) == 1 and parallel(kernel[0], b, p)
    # the linear part maps b to -b (so the series parameter has a(q) = -q)
    L = [[mod_p(x, p) for x in row] for row in linear_part_at(v, a)]
    Lb = [sum(L[i][j] * b[j] for j in range(3)) % p for i in range(3)]
    eigen = Lb == [(-x) % p for x in b]
    ok = matches and rep["p_integral"] and va_zero and smooth and tangent and eigen
    return ok, {
        "terms": terms,
        "ode_matches_divisor_sums": matches,
        "min_ord": rep["min_ord"],
        "p_integral": rep["p_integral"],
        "v_vanishes_at_a": va_zero,
        "smooth_at_a": smooth,
        "tangent_parallel_b": tangent,
        "linear_part_b_is_minus_b": eigen,
    }


@_register("thm4")
def _thm4(p: int, **_) -> tuple[bool, dict]:
    ok = True
    details = {}
    for norm in (SCALED, CLASSICAL):
        v = make_ramanujan(norm, p)
        f = first_integral(p, norm)
        sub = {
            "first_integral": str(f),
            "v_f_zero": apply(v, f).is_zero(),
            "homogeneous": is_homogeneous(f),
            "weighted_degree": weighted_degree(f),
        }
        reg = regular_first_integral_check(p, norm)
        sub.update({k: reg[k] for k in ("vA_in_radical_f", "curve_equals_Ip")})
        ok &= (sub["v_f_zero"] and sub["homogeneous"] and sub["weighted_degree"] == p + 1
               and reg["vA_in_radical_f"] and reg["curve_equals_Ip"])
        details[norm.value] = sub
    return ok, details


# -- v^p, p-closedness, collinearity --------------------------------------------

def _nonzero(polys) -> list[MPoly]:
    return [g for g in polys if g]


@_register("conj10-1")
def _conj10_1(p: int, **_) -> tuple[bool, dict]:
    v = make_ramanujan(CLASSICAL, p)
    w = vp_components(v)
    D = discriminant(CLASSICAL, p)
    divisible = [divides(D, x)[0] for x in w]
    I = Ideal(_nonzero(w)) if any(w) else None
    in_radical = I is not None and radical_membership(D, I)
    minimal_n = None
    if I is not None:
        gb = groebner(I)
        power = D
        for n in range(1, N_CAP + 1):
            if gb.contains(power):
                minimal_n = n
                break
            power = power * D
    return all(divisible) and in_radical, {
        "delta": str(D),
        "delta_divides_vp_t": divisible,
        "delta_in_radical": in_radical,
        "minimal_N": minimal_n if minimal_n is not None else f">= {N_CAP}",
        "vp_t": [str(x) for x in w],
    }


def conj10_components(p: int) -> tuple[Ideal, Ideal, Ideal]:
    """<A - 1, B - t1>, <A + 1, B + t1>, Sing(v) in the classical normalization.

    The second curve is the image of the first under t -> (k t1, k^2 t2, k^3 t3)
    with k a quadratic non-residue, which multiplies A and B by -1.
    """
    A, B = ab_polynomials(p, CLASSICAL)
    t1 = A.ring.gen(0)
    return Ideal([A - 1, B - t1]), Ideal([A + 1, B + t1]), sing_v_ideal(p)


@_register("conj10-2")
def _conj10_2(p: int, **_) -> tuple[bool, dict]:
    v = make_ramanujan(CLASSICAL, p)
    K = Ideal([w - c for w, c in zip(vp_components(v), v.components)])
    comps = conj10_components(p)
    contained = [all(groebner(C).contains(g) for g in K.gens) for C in comps]
    X = ideal_intersection(*comps)
    radical = [radical_membership(g, K) for g in X.gens]
    A, B = ab_polynomials(p, CLASSICAL)
    t1 = A.ring.gen(0)
    literal = groebner(Ideal([A - 1, B + t1]))
    return all(contained) and all(radical), {
        "certificate": "radical-level only",
        "components": [[str(g) for g in C.gens] for C in comps],
        "K_in_components": contained,
        "intersection_in_radical_K": all(radical),
        "intersection_generators": len(X.gens),
        "K_in_A_minus_1_B_plus_t1": all(literal.contains(g) for g in K.gens),
    }


def collinearity_minors(v: VectorField) -> tuple[MPoly, MPoly, MPoly]:
    return minors_2x2(v.components, vp_components(v))


@_register("conj10-3")
def _conj10_3(p: int, **_) -> tuple[bool, dict]:
    v = make_ramanujan(CLASSICAL, p)
    m = collinearity_minors(v)
    A, B = ab_polynomials(p, CLASSICAL)
    t1 = A.ring.gen(0)
    g = discriminant(CLASSICAL, p) * (B - t1 * A)
    divisible = [divides(g, x)[0] for x in m]
    nz = _nonzero(m)
    in_radical = bool(nz) and radical_membership(g, Ideal(nz))
    return all(divisible) and in_radical, {
        "g": str(g),
        "g_divides_minors": divisible,
        "g_in_radical": in_radical,
        "minors_nonzero": bool(nz),
    }


def control_field(p: int) -> VectorField:
    """t1 d/dt1, which is p-closed: v^p t1 = t1."""
    R = T.mod(p)
    t1 = R.gen(0)
    return VectorField((t1, R.zero(), R.zero()))


def is_p_closed(v: VectorField) -> bool:
    return not any(collinearity_minors(v))


@_register("conj11")
def _conj11(p: int, **_) -> tuple[bool, dict]:
    m = collinearity_minors(make_ramanujan(CLASSICAL, p))
    witness = next((i for i, x in enumerate(m) if x), None)
    control = is_p_closed(control_field(p))
    return witness is not None and control, {
        "p_closed": witness is None,
        "nonzero_minor": None if witness is None else ("12", "13", "23")[witness],
        "nonzero_minor_terms": None if witness is None else len(m[witness]),
        "control_flagged_p_closed": control,
    }


@_register("conj9")
def _conj9(p: int, samples: int = 10, seed: int = 0, **_) -> tuple[bool, dict]:
    m = collinearity_minors(make_ramanujan(CLASSICAL, p))
    generic = any(m)
    rng = random.Random(f"conj9:{seed}:{p}")
    points = []
    while len(points) < samples:
        a = (rng.randrange(p), rng.randrange(p), rng.randrange(p))
        if (a[1] ** 3 - a[2] ** 2) % p:
            points.append(a)
    noncollinear = sum(1 for a in points if any(x.evaluate(list(a)) for x in m if x))
    return generic and noncollinear >= 1, {
        "minors_not_all_zero": generic,
        "samples": samples,
        "non_collinear": noncollinear,
        "fraction": Fraction(noncollinear, samples) if samples else None,
    }


@_register("aux")
def _aux(p: int, **_) -> tuple[bool, dict]:
    A, B = ab_polynomials(p, CLASSICAL)
    R = A.ring
    t1, t2, t3 = R.gens()
    AB = Ideal([A, B])
    t_in_radical = [radical_membership(t2, AB), radical_membership(t3, AB)]
    T23 = Ideal([t2, t3])
    gb23 = groebner(T23)
    ab_in_t = [gb23.contains(A), gb23.contains(B)]
    S = sing_v_ideal(p)
    gbS = groebner(S)
    J = Ideal([discriminant(CLASSICAL, p), B - t1 * A])
    J_in_both = all(gb23.contains(g) and gbS.contains(g) for g in J.gens)
    X = ideal_intersection(T23, S)
    back = all(radical_membership(g, J) for g in X.gens)
    ok = all(t_in_radical) and all(ab_in_t) and J_in_both and back
    return ok, {
        "t2_t3_in_radical_AB": t_in_radical,
        "A_B_in_t2_t3": ab_in_t,
        "J_in_intersection": J_in_both,
        "intersection_in_radical_J": back,
        "certificate": "radical-level only",
    }


# -- linear part at (1,1,1) ------------------------------------------------------

def remark1_report(primes=(5, 7, 11)) -> dict:
    from ..mpoly.linalg import inverse, matmul
    from ..rvf import REMARK1_J, REMARK1_S

    L = linear_part_at(make_ramanujan(CLASSICAL), BASE_POINT[CLASSICAL])
    paper = [[Fraction(1, 6), Fraction(-1, 12), 0], [Fraction(1, 3), Fraction(1, 3), Fraction(-1, 3)],
             [Fraction(1, 2), Fraction(-1), Fraction(1, 2)]]
    S, J = REMARK1_S, REMARK1_J
    conj = matmul(matmul(S, J), inverse(S))
    ranks = {}
    for p in primes:
        Lp = [[mod_p(x, p) for x in row] for row in L]
        ranks[p] = rank(matsub(matpow(Lp, p, p), Lp, p), p)
    return {
        "linear_part": L,
        "matches_matrix": L == paper,
        "similar_to_jordan": conj == L,
        "rank_frobenius_defect": ranks,
    }


# -- F2 exploration -------------------------------------------------------------

def f2_polynomial(p: int) -> MPoly:
    """(10 B^3 - 6 B t2 - 4 t3) / 103680 over F_p (classical B)."""
    _, B = ab_polynomials(p, CLASSICAL)
    _, t2, t3 = B.ring.gens()
    num = 10 * B ** 3 - 6 * B * t2 - 4 * t3
    return num.scale(pow(F2_DENOMINATOR, -1, p))


def curve_points(p: int) -> list[tuple[int, int, int]]:
    """F_p points of Zero(I_p), classical: A(t2, t3) = 1 and t1 = B(t2, t3)."""
    A, B = ab_polynomials(p, CLASSICAL)
    pts = []
    for t2 in range(p):
        for t3 in range(p):
            if A.evaluate([0, t2, t3]).value == 1:
                pts.append((B.evaluate([0, t2, t3]).value, t2, t3))
    return sorted(pts)


def curve_points_brute_force(p: int) -> list[tuple[int, int, int]]:
    gens = ideal_Ip(p, CLASSICAL).gens
    return [
        (a, b, c)
        for a in range(p)
        for b in range(p)
        for c in range(p)
        if all(not g.evaluate([a, b, c]) for g in gens)
    ]


def explore_f2(p: int) -> VerificationReport:
    t0 = time.perf_counter()
    check_prime(p)
    pts = curve_points(p)
    details: dict = {"points": len(pts)}
    if p <= BRUTE_FORCE_MAX_P:
        details["brute_force_points"] = len(curve_points_brute_force(p))
    D = discriminant(CLASSICAL, p)
    details["points_on_discriminant"] = sum(1 for x in pts if not D.evaluate(list(x)))
    ok = details.get("brute_force_points", len(pts)) == len(pts)
    if F2_DENOMINATOR % p == 0:
        details["reason"] = f"p divides {F2_DENOMINATOR}"
        status = "skipped" if ok else "fail"
    else:
        P = f2_polynomial(p)
        zeros = [x for x in pts if not P.evaluate(list(x))]
        details.update({"P": str(P), "zeros": zeros, "zero_count": len(zeros)})
        status = "pass" if ok else "fail"
    return VerificationReport("explore-f2", p, status, details, (time.perf_counter() - t0) * 1000)
