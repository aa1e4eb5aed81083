"""Per-place reduction data in residue characteristic >= 5.

Because the reduction is tame, the Kodaira type is a pure function of the
minimal valuation triple (v(c4), v(c6), v(Delta)); the component counts c_v
need residue-field tests on top: the node tangent square class for I_n, the
residual cubic's rational roots for I0*, single square classes for IV/IV*,
and the alternating quadratic subprocedure for I_n* (n >= 1).  All residue
work happens in pi-adic coefficient series over k(v), so places of any
degree and the chart at infinity go through one code path.

`count_reduced_points` counts smooth points of the reduced minimal model
over extensions of k(v); `verify_special_value` checks the exact identity

    P_v(1/N(v)) = #(smooth fiber)(k(v)) / N(v)

between the local Euler factor and that count at every place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import counting
from .curve import Curve, UnsupportedCurveError
from .ff import FqExt, build_tower
from .funcfield import (
    Place,
    Poly,
    expand_at,
    factor,
    place_ring,
    _ser_mul,
    _ser_add,
    _ser_scale,
)


class InternalCheckError(AssertionError):
    """An exact internal cross-check failed; indicates a bug, not bad input."""


# v(Delta_min) for each additive type; I_n is n and I_n* is n + 6.
VDELTA_OF_TYPE = {"I0": 0, "II": 2, "III": 3, "IV": 4, "I0*": 6,
                  "IV*": 8, "III*": 9, "II*": 10}


@dataclass(frozen=True)
class LocalData:
    place: Place
    kodaira: str
    f: int  # conductor exponent: 0 good, 1 multiplicative, 2 additive
    c: int  # Tamagawa number #pi_0(k(v))
    v_delta_min: int
    v_omega: int  # (v(Delta_min) - v(Delta_input))/12
    mult_split: bool | None  # multiplicative places only
    rescale_k: int
    abar: int  # reduced minimal a, as a place_ring(place) element index
    bbar: int  # reduced minimal b, likewise

    @property
    def is_good(self) -> bool:
        return self.kodaira == "I0"

    @property
    def is_multiplicative(self) -> bool:
        return self.f == 1

    @property
    def is_additive(self) -> bool:
        return self.f == 2

    @property
    def n_component_chain(self) -> int:
        """n for I_n and I_n*, else 0."""
        k = self.kodaira
        if k.startswith("I") and k[1:].rstrip("*").isdigit():
            return int(k[1:].rstrip("*"))
        return 0


def _rpolmulmod(ext: FqExt, a, b, m):
    """Product of polynomials over ext (index-coefficient lists) mod monic m."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = ext.add(out[i + j], ext.mul(ai, bj))
    dm = len(m) - 1
    while len(out) - 1 >= dm and out:
        c = out[-1]
        if c:
            shift = len(out) - 1 - dm
            for i, mi in enumerate(m):
                out[shift + i] = ext.sub(out[shift + i], ext.mul(c, mi))
        while out and out[-1] == 0:
            out.pop()
    return out


def _rpolgcd_degree(ext: FqExt, a, b) -> int:
    """Degree of gcd of two polynomials over ext."""

    def mod(x, y):
        x = list(x)
        inv = ext.inv(y[-1])
        dy = len(y) - 1
        while x and len(x) - 1 >= dy:
            c = ext.mul(x[-1], inv)
            shift = len(x) - 1 - dy
            for i, yi in enumerate(y):
                x[shift + i] = ext.sub(x[shift + i], ext.mul(c, yi))
            while x and x[-1] == 0:
                x.pop()
        return x

    a, b = list(a), list(b)
    while b:
        a, b = b, mod(a, b)
    return len(a) - 1


def _cubic_rational_roots(ext: FqExt, a2bar: int, b3bar: int) -> int:
    """Number of roots of the separable cubic T^3 + a T + b in ext.

    deg gcd(cubic, T^Q - T), via T^Q mod cubic by square-and-multiply; no
    tables and no element enumeration, so any residue degree is cheap.
    """
    cubic = [b3bar, a2bar, 0, 1]
    xq = [0, 1]
    k = ext.Q
    acc = [1]
    base = list(xq)
    while k:
        if k & 1:
            acc = _rpolmulmod(ext, acc, base, cubic)
        base = _rpolmulmod(ext, base, base, cubic)
        k >>= 1
    # acc = T^Q mod cubic; subtract T
    acc = acc + [0] * (2 - len(acc))
    acc[1] = ext.sub(acc[1], 1)
    while acc and acc[-1] == 0:
        acc.pop()
    if not acc:
        return 3
    return _rpolgcd_degree(ext, cubic, acc)


def _chart_valuations(curve: Curve, place: Place):
    """(va, vb, vd, v_delta_input) of the working chart; None means +infinity."""
    a, b, d = curve.a, curve.b, curve.delta
    if place.is_infinite:
        va = None if a.is_zero() else 4 - a.degree
        vb = None if b.is_zero() else 6 - b.degree
        vd = 12 - d.degree
        return va, vb, vd, -d.degree
    pi = place.pi
    va = None if a.is_zero() else a.multiplicity(pi)
    vb = None if b.is_zero() else b.multiplicity(pi)
    vd = d.multiplicity(pi)
    return va, vb, vd, vd


def _minimal_series(curve: Curve, place: Place, k: int, nterms: int):
    """pi-adic coefficient series of the minimal model's (a, b) at the place."""
    a, b = curve.a, curve.b
    if place.is_infinite:
        # series of u^(w - deg f) * reversed(f), shifted down by w*k
        def ser(f: Poly, w: int):
            if f.is_zero():
                return [0] * nterms
            shift = (w - f.degree) - w * k
            rev = list(f.reversed().coeffs)
            if shift < 0:  # pragma: no cover - minimality forces shift >= 0
                raise InternalCheckError("negative shift in minimal chart model")
            out = [0] * shift + rev
            return (out + [0] * nterms)[:nterms]
        return ser(a, 4), ser(b, 6)
    pi = place.pi
    am = a if a.is_zero() else a // pi ** (4 * k)
    bm = b if b.is_zero() else b // pi ** (6 * k)
    return expand_at(am, place, nterms), expand_at(bm, place, nterms)


def _classify(va_m, vb_m, vd_m) -> str:
    if vd_m == 0:
        return "I0"
    if va_m == 0:
        return f"I{vd_m}"
    if vd_m == 2:
        return "II"
    if vd_m == 3:
        return "III"
    if vd_m == 4:
        return "IV"
    if vd_m == 6:
        return "I0*"
    if va_m == 2 and vd_m >= 7:
        return f"I{vd_m - 6}*"
    if vd_m == 8:
        return "IV*"
    if vd_m == 9:
        return "III*"
    if vd_m == 10:
        return "II*"
    raise InternalCheckError(
        f"impossible minimal triple (v(c4), v(c6), v(Delta)) = "
        f"({va_m}, {vb_m}, {vd_m})"
    )


def _starred_chain_data(ext: FqExt, Aser, Bser, vd_m):
    """Kodaira chain length and Tamagawa number for I_n*, n >= 1.

    Alternating quadratic tests on a shifted model y^2 = x^3+a2x^2+a4x+a6:
    the first nondegenerate quadratic stops the chain; its root field gives
    c in {2, 4}.
    """
    nterms = len(Aser)
    a2bar, b3bar = Aser[2], Bser[3]
    if Aser[0] or Aser[1] or Bser[0] or Bser[1] or Bser[2]:
        raise InternalCheckError("I_n* entered with wrong valuations")
    # double root of T^3 + a2bar*T + b3bar
    t0 = ext.neg(
        ext.mul(ext.mul(ext.from_int(3), b3bar),
                ext.inv(ext.mul(ext.from_int(2), a2bar)))
    )
    # cubic and derivative must vanish at t0
    cub = ext.add(ext.add(ext.pow(t0, 3), ext.mul(a2bar, t0)), b3bar)
    der = ext.add(ext.mul(ext.from_int(3), ext.mul(t0, t0)), a2bar)
    if cub != 0 or der != 0:
        raise InternalCheckError("residual cubic double root mismatch")
    # shift x -> x + t0*pi:  a2 = 3 t0 pi, a4 = 3 t0^2 pi^2 + A,
    # a6 = t0^3 pi^3 + t0 pi A + B
    a2 = [0] * nterms
    a2[1] = ext.mul(ext.from_int(3), t0)
    a4 = _ser_add(ext, [0, 0, ext.mul(ext.from_int(3), ext.mul(t0, t0))], Aser)
    shiftA = [0] + _ser_scale(ext, t0, Aser)[: nterms - 1]
    a6 = _ser_add(ext, _ser_add(ext, [0, 0, 0, ext.pow(t0, 3)], shiftA), Bser)
    a4 = (a4 + [0] * nterms)[:nterms]
    a6 = (a6 + [0] * nterms)[:nterms]

    n_max = vd_m - 6
    s = 1
    while s <= n_max:
        if s % 2 == 1:
            i6 = s + 3
            if any(a6[j] for j in range(i6)):
                raise InternalCheckError("I_n* loop lost its valuation invariant")
            if a6[i6] != 0:
                c = 2 + 2 * (ext.char(a6[i6]) == 1)
                break
        else:
            i4, i6 = s // 2 + 2, s + 3
            alpha = a2[1]
            if any(a4[j] for j in range(i4)) or any(a6[j] for j in range(i6)):
                raise InternalCheckError("I_n* loop lost its valuation invariant")
            A4, A6 = a4[i4], a6[i6]
            disc = ext.sub(
                ext.mul(A4, A4),
                ext.mul(ext.from_int(4), ext.mul(alpha, A6)),
            )
            if disc != 0:
                c = 2 + 2 * (ext.char(disc) == 1)
                break
            # double root r of alpha X^2 + A4 X + A6; translate x -> x + r pi^(s/2+1)
            r = ext.neg(ext.mul(A4, ext.inv(ext.mul(ext.from_int(2), alpha))))
            shift = [0] * nterms
            shift[s // 2 + 1] = r
            c2s = _ser_mul(ext, shift, shift, nterms)
            a6 = _ser_add(
                ext,
                a6,
                _ser_add(
                    ext,
                    _ser_mul(ext, a4, shift, nterms),
                    _ser_add(
                        ext,
                        _ser_mul(ext, a2, c2s, nterms),
                        _ser_mul(ext, c2s, shift, nterms),
                    ),
                ),
            )
            a4 = _ser_add(
                ext,
                a4,
                _ser_add(
                    ext,
                    _ser_scale(ext, ext.from_int(2), _ser_mul(ext, a2, shift, nterms)),
                    _ser_scale(ext, ext.from_int(3), c2s),
                ),
            )
            a2 = _ser_add(ext, a2, _ser_scale(ext, ext.from_int(3), shift))
        s += 1
    else:
        raise InternalCheckError("I_n* subprocedure overran v(Delta) - 6")
    if s != n_max:
        raise InternalCheckError(
            f"I_n* chain length {s} disagrees with v(Delta)-6 = {n_max}"
        )
    return s, c


def local_data(curve: Curve, place: Place) -> LocalData:
    """Minimal model data, Kodaira type, f_v, c_v and v(omega) at one place."""
    cached = curve._local_cache.get(place)
    if cached is not None:
        return cached
    va, vb, vd, vd_input = _chart_valuations(curve, place)
    ks = [vd // 12]
    if va is not None:
        ks.append(va // 4)
    if vb is not None:
        ks.append(vb // 6)
    k = min(ks)
    va_m = None if va is None else va - 4 * k
    vb_m = None if vb is None else vb - 6 * k
    vd_m = vd - 12 * k
    v_omega = (vd_m - vd_input) // 12
    if (vd_m - vd_input) % 12:
        raise InternalCheckError("v(Delta_min) - v(Delta_input) not divisible by 12")
    kod = _classify(va_m if va_m is not None else 10**9, vb_m, vd_m)

    ext = place_ring(place)
    nterms = vd_m + 4
    Aser, Bser = _minimal_series(curve, place, k, nterms)
    abar, bbar = Aser[0], Bser[0]
    mult_split = None
    is_mult = kod[0] == "I" and kod[1:].isdigit() and kod != "I0"
    if kod == "I0":
        f, c = 0, 1
    elif kod.endswith("*"):
        f = 2
        if kod == "I0*":
            # c = 1 + number of k(v)-rational roots of the residual cubic
            c = 1 + _cubic_rational_roots(ext, Aser[2], Bser[3])
        elif kod in ("IV*",):
            c = 3 if ext.char(Bser[4]) == 1 else 1
        elif kod == "III*":
            c = 2
        elif kod == "II*":
            c = 1
        else:
            n, c = _starred_chain_data(ext, Aser, Bser, vd_m)
    elif is_mult:
        # multiplicative: split iff -c6bar = 864*bbar is a square in k(v)
        f = 1
        n = vd_m
        neg_c6 = ext.mul(ext.from_int(864), bbar)
        mult_split = ext.char(neg_c6) == 1
        if mult_split:
            c = n
        else:
            c = 2 if n % 2 == 0 else 1
    else:
        f = 2
        if kod == "II":
            c = 1
        elif kod == "III":
            c = 2
        else:  # IV
            c = 3 if ext.char(Bser[2]) == 1 else 1
    data = LocalData(
        place=place,
        kodaira=kod,
        f=f,
        c=c,
        v_delta_min=vd_m,
        v_omega=v_omega,
        mult_split=mult_split,
        rescale_k=k,
        abar=abar,
        bbar=bbar,
    )
    curve._local_cache[place] = data
    return data


def scan_places(curve: Curve) -> list[Place]:
    """Places where anything can happen: factors of Delta, plus infinity.

    All other places are good with v(omega) = 0.
    """
    places = [Place.finite(pi) for pi, _ in factor(curve.delta)]
    places.append(Place.infinity(curve.spec))
    return places


def all_local_data(curve: Curve) -> dict[Place, LocalData]:
    return {v: local_data(curve, v) for v in scan_places(curve)}


def reduced_model_in(curve: Curve, place: Place, tower: FqExt) -> tuple[int, int]:
    """Image of the reduced minimal (a, b) inside a tower containing k(v).

    The quotient-ring residues map through the least root of pi_v in the
    tower; at infinity k(v) = F_q sits inside every tower unchanged.
    """
    data = local_data(curve, place)
    if place.is_infinite:
        return data.abar, data.bbar
    if tower.n % place.degree:
        raise ValueError("tower does not contain the residue field")
    theta = tower.roots_of(list(place.pi.coeffs))[0]
    ring = place_ring(place)
    a_img = tower.eval_coeff_vector(ring.coeff_vector(data.abar), theta)
    b_img = tower.eval_coeff_vector(ring.coeff_vector(data.bbar), theta)
    return a_img, b_img


def count_reduced_points(
    curve: Curve, place: Place, n: int = 1, formula_fallback: bool = False
) -> int:
    """#A^0 of the reduced minimal fiber over F_{N(v)^n}.

    Smooth points of the reduced minimal Weierstrass model plus the point at
    infinity: the full group for good fibers, G_m or its twist for nodes,
    G_a for cusps.  Counting is brute force; past the table scale, bad
    fibers can still be answered from the classified type when
    ``formula_fallback`` is set (the value is exact either way), while good
    fibers have no formula and raise.
    """
    from .ff import COUNT_TABLE_LIMIT

    data = local_data(curve, place)
    nv_n = place.norm() ** n
    if nv_n > COUNT_TABLE_LIMIT:
        if formula_fallback and not data.is_good:
            if data.is_additive:
                return nv_n
            split_here = data.mult_split or n % 2 == 0
            return nv_n - 1 if split_here else nv_n + 1
        raise UnsupportedCurveError(
            f"residue field of size {nv_n} at {place!r} is beyond counting scale"
        )
    ext = build_tower(curve.spec, place.degree * n)
    a_img, b_img = reduced_model_in(curve, place, ext)
    s = counting.char_sum(ext, a_img, b_img)
    if data.is_good:
        return ext.Q + 1 + s
    # singular models: drop the singular point, keep the point at infinity
    return ext.Q + s


def euler_factor(data: LocalData, curve: Curve) -> tuple[int, ...]:
    """P_v as integer coefficients in X = T^{deg v}, constant term 1."""
    if data.is_good:
        nv = data.place.norm()
        count = count_reduced_points(curve, data.place, 1)
        a_v = nv + 1 - count
        return (1, -a_v, nv)
    if data.is_multiplicative:
        return (1, -1) if data.mult_split else (1, 1)
    return (1,)


@dataclass(frozen=True)
class SpecialValueCheck:
    place: Place
    kodaira: str
    euler_value: Fraction  # P_v(1/N(v))
    count_ratio: Fraction  # #A^0(k(v)) / N(v)

    @property
    def ok(self) -> bool:
        return self.euler_value == self.count_ratio


def verify_special_value(curve: Curve, place: Place) -> SpecialValueCheck:
    """Exact check that P_v(1/N) equals the smooth-point count over N."""
    data = local_data(curve, place)
    nv = place.norm()
    coeffs = euler_factor(data, curve)
    value = sum(Fraction(c, nv**i) for i, c in enumerate(coeffs))
    count = count_reduced_points(curve, place, 1)
    return SpecialValueCheck(place, data.kodaira, value, Fraction(count, nv))


def conductor_degree(curve: Curve) -> int:
    """deg n = sum f_v deg(v); rejects the isotrivial/degenerate class."""
    total = sum(ld.f * v.degree for v, ld in all_local_data(curve).items())
    if total < 4:
        raise UnsupportedCurveError(
            f"unsupported curve class (conductor degree {total} < 4; "
            "the L-degree would be negative)"
        )
    return total
