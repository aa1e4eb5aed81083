from fractions import Fraction

import pytest

from ffbsd.curve import Curve, UnsupportedCurveError
from ffbsd.ff import FieldSpec, Fq
from ffbsd.funcfield import Place, Poly, enumerate_places, factor
from ffbsd.localred import (
    all_local_data,
    conductor_degree,
    count_reduced_points,
    euler_factor,
    local_data,
    scan_places,
    verify_special_value,
)
from conftest import random_curves


@pytest.fixture(scope="module")
def fq():
    return Fq.from_spec(FieldSpec(5))


@pytest.fixture(scope="module")
def vt(fq):
    return Place.finite(Poly.gen(fq))


def test_e3_type_iii(e3, vt):
    # v(Delta) = 3, v(c4) = 1 at (t)
    ld = local_data(e3, vt)
    assert (ld.kodaira, ld.f, ld.c, ld.v_delta_min) == ("III", 2, 2, 3)


def test_e1_multiplicative_place(e1, fq):
    # Delta = -16(27t^2 + 4), one I1 at the irreducible t^2 + 2
    fac = factor(e1.delta)
    assert [(g.degree, m) for g, m in fac] == [(2, 1)]
    v = Place.finite(fac[0][0])
    # square-freeness of Delta at the place, checked via gcd with derivative
    assert e1.delta.gcd(e1.delta.derivative()).degree == 0
    ld = local_data(e1, v)
    assert (ld.kodaira, ld.f, ld.c) == ("I1", 1, 1)


def test_e1_infinity_ii_star(e1, fq):
    ld = local_data(e1, Place.infinity(fq.spec))
    assert (ld.kodaira, ld.f, ld.c) == ("II*", 2, 1)
    assert ld.v_delta_min == 10
    assert ld.v_omega == 1


def test_good_place_trivial_data(e1, vt):
    ld = local_data(e1, vt)
    assert ld.kodaira == "I0" and ld.f == 0 and ld.c == 1 and ld.v_omega == 0


def test_count_examples(e1, e3, vt, legendre):
    # good fiber y^2 = x^3 + x over F_5 has 4 points
    assert count_reduced_points(e1, vt, 1) == 4
    # additive fiber: N points (G_a)
    assert count_reduced_points(e3, vt, 1) == 5
    # split multiplicative: N - 1 (G_m)
    curve, _ = legendre
    ld = local_data(curve, vt)
    assert ld.kodaira == "I2" and ld.mult_split
    assert count_reduced_points(curve, vt, 1) == 4
    assert count_reduced_points(curve, vt, 2) == 24


def test_nonsplit_multiplicative(fq):
    # y^2 = x^3 - 3x + (2 + t): node at x = 1 over (t) with nonsquare
    # tangent discriminant; -c6bar = 864*2 = 3 mod 5, a nonsquare
    t = Poly.gen(fq)
    c = Curve(Poly.const(fq, -3), Poly.const(fq, 2) + t)
    vt = Place.finite(t)
    ld = local_data(c, vt)
    assert (ld.kodaira, ld.mult_split, ld.c) == ("I1", False, 1)
    assert count_reduced_points(c, vt, 1) == 6  # nonsplit torus: N + 1
    assert euler_factor(ld, c) == (1, 1)
    # split after a quadratic extension of the residue field
    assert count_reduced_points(c, vt, 2) == 24


def test_i0_star_component_counts(fq):
    t = Poly.gen(fq)
    vt = Place.finite(t)
    # residual cubic T^3 + T has all three roots in F_5
    c4roots = Curve(t * t, Poly.zero(fq))
    ld = local_data(c4roots, vt)
    assert (ld.kodaira, ld.c) == ("I0*", 4)
    # T^3 + T + 1 has no roots mod 5
    c0roots = Curve(t * t, t**3)
    ld = local_data(c0roots, vt)
    assert (ld.kodaira, ld.c) == ("I0*", 1)
    # T^3 + T + 2 = (T+1)(T^2 - T + 2): exactly one root mod 5
    c1root = Curve(t * t, (t**3).scale(2))
    ld = local_data(c1root, vt)
    assert (ld.kodaira, ld.c) == ("I0*", 2)


def test_starred_chain(fq):
    # hand-worked subloop examples at (t)
    t = Poly.gen(fq)
    vt = Place.finite(t)
    i1 = Curve((t * t).scale(2), (t**3).scale(2) + t**4)
    ld = local_data(i1, vt)
    assert (ld.kodaira, ld.c, ld.f) == ("I1*", 4, 2)
    i2 = Curve((t * t).scale(2), (t**3).scale(2) + t**5)
    ld = local_data(i2, vt)
    assert (ld.kodaira, ld.c) == ("I2*", 2)


def test_iv_and_iv_star(fq):
    t = Poly.gen(fq)
    vt = Place.finite(t)
    # y^2 = x^3 + t^2: IV with b/pi^2 = 1 a square: c = 3
    ld = local_data(Curve(Poly.zero(fq), t * t), vt)
    assert (ld.kodaira, ld.c) == ("IV", 3)
    # y^2 = x^3 + 2t^2: chi(2) = -1: c = 1
    ld = local_data(Curve(Poly.zero(fq), (t * t).scale(2)), vt)
    assert (ld.kodaira, ld.c) == ("IV", 1)
    # y^2 = x^3 + t^4: IV* with chi(1) = 1: c = 3
    ld = local_data(Curve(Poly.zero(fq), t**4), vt)
    assert (ld.kodaira, ld.c) == ("IV*", 3)
    ld = local_data(Curve(Poly.zero(fq), (t**4).scale(2)), vt)
    assert (ld.kodaira, ld.c) == ("IV*", 1)


def test_euler_factor_examples(e1, vt):
    assert euler_factor(local_data(e1, vt), e1) == (1, -2, 5)
    v_inf = Place.infinity(e1.spec)
    assert euler_factor(local_data(e1, v_inf), e1) == (1,)


def test_special_value_identity_examples(e1, e3, vt):
    sv = verify_special_value(e1, vt)
    assert sv.ok and sv.euler_value == Fraction(4, 5)
    # additive: both sides equal 1
    sv = verify_special_value(e3, vt)
    assert sv.ok and sv.euler_value == 1


def test_special_value_all_scan_places_corpus(e1, e2, e3, legendre):
    for curve in (e1, e2, e3, legendre[0]):
        for v in scan_places(curve):
            assert verify_special_value(curve, v).ok, (curve, v)
        for v in enumerate_places(curve.spec, 1):
            assert verify_special_value(curve, v).ok, (curve, v)


def test_special_value_randomized_batch():
    for curve in random_curves(FieldSpec(5), 10, seed=2024):
        for v in scan_places(curve):
            assert verify_special_value(curve, v).ok


def test_conductor_degrees(e1, e2, e3, legendre):
    assert conductor_degree(e1) == 4
    assert conductor_degree(e2) == 5
    assert conductor_degree(e3) == 4  # local data is fine on isotrivial curves
    assert conductor_degree(legendre[0]) == 4


def test_everywhere_good_rejected(fq):
    # y^2 = x^3 + t^6 is good at every place; the class is rejected
    t = Poly.gen(fq)
    c = Curve(Poly.zero(fq), t**6)
    with pytest.raises(UnsupportedCurveError, match="conductor degree"):
        conductor_degree(c)


def test_nonminimal_place_and_stability(fq):
    # y^2 = x^3 + t^4 x + t^6: non-minimal at (t); the minimal model is
    # y^2 = x^3 + x + 1 there (good), with v(omega) = -1
    t = Poly.gen(fq)
    c = Curve(t**4, t**6)
    vt = Place.finite(t)
    ld = local_data(c, vt)
    assert ld.kodaira == "I0" and ld.rescale_k == 1 and ld.v_omega == -1
    assert verify_special_value(c, vt).ok
    # the rescaled model is stable: k = 0 on rerun
    rescaled = Curve(Poly.one(fq), Poly.one(fq))
    assert local_data(rescaled, vt).rescale_k == 0
    # sum over places weights v_omega back to deg(Delta_min)/12
    lds = all_local_data(c)
    deg_omega = sum(v.degree * l.v_omega for v, l in lds.items())
    deg_dmin = sum(v.degree * l.v_delta_min for v, l in lds.items())
    assert 12 * deg_omega == deg_dmin


def test_omega_degree_identity_corpus(e1, e2, e3, legendre):
    for curve in (e1, e2, e3, legendre[0]):
        lds = all_local_data(curve)
        deg_omega = sum(v.degree * l.v_omega for v, l in lds.items())
        deg_dmin = sum(v.degree * l.v_delta_min for v, l in lds.items())
        assert 12 * deg_omega == deg_dmin


def test_table_consistency_multiplicative_counts():
    # splitness read from the table must match the smooth count at the place
    for curve in random_curves(FieldSpec(5), 12, seed=77):
        for v, ld in all_local_data(curve).items():
            if not ld.is_multiplicative or v.norm() > 5**4:
                continue
            count = count_reduced_points(curve, v, 1)
            expected = v.norm() - 1 if ld.mult_split else v.norm() + 1
            assert count == expected
            n = ld.n_component_chain
            assert ld.c == (n if ld.mult_split else (2 if n % 2 == 0 else 1))


def test_starred_chain_at_degree_two_place(fq):
    # the subprocedure runs in k(v) = F_25: a = 2 pi^2, b = 2 pi^3 + pi^4
    # translates to a6 = pi^4 with unit residue 1, a square, so c = 4
    t = Poly.gen(fq)
    pi = t * t + Poly.const(fq, 2)
    c = Curve((pi * pi).scale(2), (pi**3).scale(2) + pi**4)
    v = Place.finite(pi)
    ld = local_data(c, v)
    assert (ld.kodaira, ld.c, ld.f) == ("I1*", 4, 2)
    assert verify_special_value(c, v).ok


def test_multiplicative_counts_across_levels():
    # split over F_{N^k} iff split at k(v) or k even; counts must follow
    found_split = found_nonsplit = False
    for curve in random_curves(FieldSpec(5), 20, seed=13):
        for v, ld in all_local_data(curve).items():
            if not ld.is_multiplicative or v.degree > 2:
                continue
            for k in (1, 2):
                if v.norm() ** k > 5**4:
                    continue
                n = v.norm() ** k
                split_here = ld.mult_split or k % 2 == 0
                expected = n - 1 if split_here else n + 1
                assert count_reduced_points(curve, v, k) == expected
            found_split |= bool(ld.mult_split)
            found_nonsplit |= not ld.mult_split
        if found_split and found_nonsplit:
            break
    assert found_split and found_nonsplit


def test_v_delta_matches_type_table():
    from ffbsd.localred import VDELTA_OF_TYPE

    for curve in random_curves(FieldSpec(5), 15, seed=5):
        for v, ld in all_local_data(curve).items():
            kod = ld.kodaira
            n = ld.n_component_chain
            if kod in VDELTA_OF_TYPE:
                assert ld.v_delta_min == VDELTA_OF_TYPE[kod]
                assert 0 <= ld.v_delta_min < 12
            elif kod.endswith("*"):
                assert ld.v_delta_min == n + 6
            else:
                assert ld.v_delta_min == n
            assert ld.f == (0 if kod == "I0" else 1 if ld.is_multiplicative else 2)


def test_deg2_additive_place(fq):
    # additive reduction at a degree-2 place: y^2 = x^3 + (t^2+2) x
    t = Poly.gen(fq)
    pi = t * t + Poly.const(fq, 2)
    c = Curve(pi, Poly.zero(fq))
    v = Place.finite(pi)
    ld = local_data(c, v)
    assert ld.kodaira == "III" and ld.f == 2 and v.degree == 2
    assert verify_special_value(c, v).ok
    assert count_reduced_points(c, v, 1) == 25
