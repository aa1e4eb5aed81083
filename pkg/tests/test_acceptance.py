"""Acceptance suite: one test per criterion, exact tolerances throughout.

Desk scale: q in {5, 7}, conductor degree <= 10.  Random corpora are seeded
and fixed; each criterion prints a single PASS line with its runtime.

The randomized rank-0 sub-corpus for the calibration guard combines the
generic draws having vanishing-order zero with draws from the stratum
(a constant, b linear), which always lands on conductor degree 4 (D = 0);
generic draws essentially never do, and the integral-square assertion would
otherwise be vacuous.
"""

import random
import time
from fractions import Fraction

import pytest

from ffbsd.bsd import (
    assemble_report,
    global_invariants,
    measure_identity_trace,
    riemann_roch_check,
)
from ffbsd.cli import CountCache
from ffbsd.curve import (
    Curve,
    KPoint,
    MWInput,
    UnsupportedCurveError,
    canonical_height,
    height_pairing,
    torsion_bound,
)
from ffbsd.ff import FieldSpec, Fq
from ffbsd.funcfield import Place, Poly, RationalFunction, enumerate_places
from ffbsd.localred import (
    all_local_data,
    conductor_degree,
    local_data,
    scan_places,
    verify_special_value,
)
from ffbsd.lseries import assemble_L_euler, assemble_L_exp, trace_sum
from ffbsd.bsd import good_places_for_bounds
from conftest import make_e1, make_e2, make_e3, make_legendre, random_curves

SEED = 20260810


def _passline(criterion, started, detail):
    print(f"[criterion {criterion}] PASS ({time.time() - started:.1f}s): {detail}")


@pytest.fixture(scope="module")
def cache(tmp_path_factory):
    return CountCache(str(tmp_path_factory.mktemp("trace-cache")))


@pytest.fixture(scope="module")
def corpus(fq5):
    legendre, torsion = make_legendre(fq5)
    return {
        "E1": make_e1(fq5),
        "E2": make_e2(fq5),
        "E3": make_e3(fq5),
        "Legendre": legendre,
        "_legendre_torsion": torsion,
    }


@pytest.fixture(scope="module")
def rand5():
    return random_curves(FieldSpec(5), 50, seed=SEED)


@pytest.fixture(scope="module")
def rand7():
    # 32 draws reach the first D = 5 and D = 6 curves of this seed
    return random_curves(FieldSpec(7), 32, seed=SEED)


def eligible_degree(curve):
    try:
        return conductor_degree(curve) - 4
    except UnsupportedCurveError:
        return None


@pytest.fixture(scope="module")
def dual_lseries(corpus, rand5, rand7, cache):
    """Both L assemblies for every corpus/random curve with D <= 6.

    Returns (results, elapsed_seconds); the elapsed time is the dual-method
    criterion's runtime.
    """
    started = time.time()
    out = {}
    for curve in [corpus["E1"], corpus["E2"], corpus["Legendre"], *rand5, *rand7]:
        D = eligible_degree(curve)
        if D is None or D > 6:
            continue
        out[curve] = (assemble_L_exp(curve, cache), assemble_L_euler(curve))
    return out, time.time() - started


def stratum_d0_curves(spec: FieldSpec, count: int, seed: int):
    """Seeded draws with constant a and linear b: conductor degree 4 exactly."""
    fq = Fq.from_spec(spec)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = Poly.const(fq, rng.randrange(1, spec.q))
        b = Poly.from_ints(fq, [rng.randrange(spec.q), rng.randrange(1, spec.q)])
        try:
            c = Curve(a, b)
        except UnsupportedCurveError:
            continue
        if c.is_isotrivial():
            continue
        out.append(c)
    return out


def test_criterion_1_special_value_identity(corpus, rand5):
    """P_v(1/N) = #A0(k(v))/N at every place of the corpus and 50 F_5 draws.

    "Every place" is realized as every factor of the discriminant together
    with infinity (where all the content lives) plus every good place of
    degree <= 2; at the remaining good places both sides are built from the
    same count and the identity is formal.
    """
    started = time.time()
    checked = 0
    named = [corpus["E1"], corpus["E2"], corpus["E3"]]
    for curve in named + list(rand5):
        places = scan_places(curve) + [
            v for v in enumerate_places(curve.spec, 2)
        ]
        for v in set(places):
            sv = verify_special_value(curve, v)
            assert sv.ok, (curve, v, sv)
            checked += 1
    elapsed = time.time() - started
    assert elapsed < 60, f"criterion 1 exceeded its 60s budget: {elapsed:.1f}s"
    _passline(1, started, f"exact at {checked} places across 53 curves")


def test_criterion_2_dual_method_oracle(dual_lseries):
    """assemble_L_exp == assemble_L_euler exactly, with L(0)=1 and the FE."""
    started = time.time()
    results, compute_seconds = dual_lseries
    ds = []
    for curve, (by_exp, by_euler) in results.items():
        assert by_exp.coeffs == by_euler.coeffs, curve
        assert all(isinstance(c, int) for c in by_exp.coeffs)
        assert by_exp.coeffs[0] == 1
        q, D = curve.q, by_exp.D
        for i in range(D // 2 + 1):
            assert by_exp.coeffs[D - i] == by_exp.epsilon * q ** (D - 2 * i) * by_exp.coeffs[i]
        ds.append((q, D))
    assert any(q == 7 and D >= 5 for q, D in ds), "F_7 deep corpus missing"
    assert any(q == 5 and D == 6 for q, D in ds)
    assert compute_seconds < 300, (
        f"criterion 2 exceeded its 300s budget: {compute_seconds:.1f}s"
    )
    _passline(
        2,
        started,
        f"{len(ds)} curves bit-identical between routes in {compute_seconds:.1f}s "
        f"(D histogram {sorted(set((q, D) for q, D in ds))})",
    )


def test_criterion_3_e1_end_to_end(corpus, cache):
    started = time.time()
    e1 = corpus["E1"]
    assert conductor_degree(e1) == 4
    lser = assemble_L_exp(e1, cache)
    assert lser.D == 0 and lser.coeffs == (1,)
    for n in (1, 2, 3):
        assert trace_sum(e1, n, cache).total == 0
    local = all_local_data(e1)
    inv = global_invariants(e1, local)
    assert inv.chi_lie == 0 and inv.tamagawa == 1
    assert lser.r_an == 0
    rep = assemble_report(e1, lser, inv, local)
    assert rep.sha_analytic == rep.torsion_order**2 == 1
    assert rep.torsion_bound % rep.torsion_order == 0
    elapsed = time.time() - started
    assert elapsed < 30, f"criterion 3 exceeded its 30s budget: {elapsed:.1f}s"
    _passline(3, started, "E1: deg n = 4, D = 0, L = 1, A_1..3 = 0, Sha_an = tau^2")


def test_criterion_4_measure_identity_trace(corpus):
    started = time.time()
    for name in ("E1", "E2", "E3", "Legendre"):
        curve = corpus[name]
        local = all_local_data(curve)
        inv = global_invariants(curve, local)
        mit = measure_identity_trace(curve, inv, local)
        assert mit.ok, (name, mit)
        goods = [
            v
            for v in enumerate_places(curve.spec, 1)
            if v not in local and local_data(curve, v).is_good
        ]
        for k in (1, 2, 3):
            enlarged = measure_identity_trace(curve, inv, local, tuple(goods[:k]))
            assert enlarged.ok, (name, k)
    _passline(4, started, "identities (i)-(iv) exact; invariant under enlarging U by 1..3 places")


def test_criterion_5_riemann_roch(corpus):
    started = time.time()
    for name in ("E1", "E2", "E3", "Legendre"):
        curve = corpus[name]
        inv = global_invariants(curve, all_local_data(curve))
        rr = riemann_roch_check(inv)
        assert rr.ok and rr.chi == 1 - inv.deg_omega, name
    _passline(5, started, "chi(O(-deg omega)) = 1 - deg omega on all corpus curves")


def test_criterion_6_height_suite(corpus, fq5):
    started = time.time()
    e2 = corpus["E2"]
    one = RationalFunction(Poly.one(fq5))
    P = KPoint.affine(one, one)
    # x(2P) = (t^2 - 6t + 1)/4, i.e. 4t^2 + t + 4 over F_5
    assert e2.add(P, P).x == RationalFunction(Poly.from_ints(fq5, [4, 1, 4]))
    tam = global_invariants(e2, all_local_data(e2)).tamagawa
    h = canonical_height(e2, P, tam)
    assert canonical_height(e2, e2.mul(2, P), tam) == 4 * h
    assert canonical_height(e2, e2.neg(P), tam) == h
    # parallelogram on (P, 2P)
    h3 = canonical_height(e2, e2.mul(3, P), tam)
    assert h3 + h == 2 * h + 2 * canonical_height(e2, e2.mul(2, P), tam)
    # unimodular basis change leaves the regulator fixed
    assert height_pairing(e2, [P], tam).determinant() == \
        height_pairing(e2, [e2.neg(P)], tam).determinant()
    Q = e2.mul(2, P)
    assert height_pairing(e2, [P, Q], tam).determinant() == \
        height_pairing(e2, [e2.add(P, Q), Q], tam).determinant()
    elapsed = time.time() - started
    assert elapsed < 60, f"criterion 6 exceeded its 60s budget: {elapsed:.1f}s"
    _passline(6, started, f"E2 heights exact after rounding; h(P) = {h}")


def test_criterion_7_formula_path_consistency(corpus, cache):
    started = time.time()
    e1, e2, leg = corpus["E1"], corpus["E2"], corpus["Legendre"]
    one = RationalFunction(Poly.one(e1.ctx))
    cases = [
        (e1, None),
        (e2, MWInput(generators=[KPoint.affine(one, one)])),
        (
            leg,
            MWInput(
                torsion_points=corpus["_legendre_torsion"],
                claimed_torsion_order=4,
            ),
        ),
    ]
    for curve, mw in cases:
        local = all_local_data(curve)
        inv = global_invariants(curve, local)
        lser = assemble_L_exp(curve, cache)
        rep = assemble_report(curve, lser, inv, local, mw)
        # the two separately coded routes must meet exactly
        assert rep.special_value_restated_ok, curve
        assert rep.chi_weil_etale_inv == (
            (rep.sha_analytic * rep.regulator * inv.tamagawa)
            / rep.torsion_order**2
        )
    _passline(7, started, "leading-coefficient route == Weil-etale route on all corpus curves")


def test_criterion_8_calibration_guard(corpus, rand5, rand7, dual_lseries, cache):
    started = time.time()
    results, _ = dual_lseries
    # randomized rank-0 sub-corpus: generic draws with r_an = 0, plus the
    # (a constant, b linear) stratum which realizes D = 0
    d0_stratum = stratum_d0_curves(FieldSpec(5), 8, SEED) + stratum_d0_curves(
        FieldSpec(7), 4, SEED
    )
    members = []
    for curve in list(results) + d0_stratum:
        lser = (
            results[curve][0]
            if curve in results
            else assemble_L_exp(curve, cache)
        )
        if lser.r_an != 0:
            continue
        members.append((curve, lser))
    assert members
    counts = {"A": 0, "B": 0}
    total = 0
    d0_all_ok = {"A": True, "B": True}
    saw_d0 = 0
    for curve, lser in members:
        local = all_local_data(curve)
        inv = global_invariants(curve, local)
        # no generators are supplied; the torsion order is estimated by the
        # good-place gcd bound (an overshoot only rescales Sha_an by a square)
        bound = torsion_bound(curve, good_places_for_bounds(curve))
        mw = MWInput(claimed_torsion_order=bound)
        total += 1
        for norm in ("A", "B"):
            rep = assemble_report(curve, lser, inv, local, mw, normalization=norm)
            assert rep.sha_analytic is not None and rep.sha_analytic > 0
            ok = rep.flags["sha_integral"] and rep.flags["sha_square"]
            counts[norm] += ok
            if lser.D == 0:
                d0_all_ok[norm] &= ok
        if lser.D == 0:
            saw_d0 += 1
    # the named D = 0 curves participate with their exact expected orders
    for name, mw, expected in [
        ("E1", None, Fraction(1)),
        (
            "Legendre",
            MWInput(
                torsion_points=corpus["_legendre_torsion"],
                claimed_torsion_order=4,
            ),
            Fraction(1),
        ),
    ]:
        curve = corpus[name]
        local = all_local_data(curve)
        inv = global_invariants(curve, local)
        lser = assemble_L_exp(curve, cache)
        saw_d0 += 1
        for norm in ("A", "B"):
            rep = assemble_report(curve, lser, inv, local, mw, normalization=norm)
            assert rep.sha_analytic == expected, (name, norm)
            d0_all_ok[norm] &= rep.flags["sha_integral"] and rep.flags["sha_square"]
    assert saw_d0 >= 14
    frac_a = f"{counts['A']}/{total}"
    frac_b = f"{counts['B']}/{total}"
    # rank 0 leaves no regulator for the normalization to act on, so the two
    # fractions agree; the guard is that some normalization cleans up D = 0
    assert d0_all_ok["A"] or d0_all_ok["B"], (
        "no height normalization yields integral square Sha_an on all D = 0 curves"
    )
    _passline(
        8,
        started,
        f"rank-0 sub-corpus integral-square fractions: A {frac_a}, B {frac_b}; "
        f"all {saw_d0} D = 0 members integral squares",
    )
