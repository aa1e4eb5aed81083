"""The rational function field K = F_q(t) and the places of P^1.

Polynomials are immutable little-endian coefficient tuples of packed F_q
indices.  Places are monic irreducible polynomials plus one place at
infinity; the infinite place is always handled through the chart t = 1/u, so
no completion type exists.  Residue maps land in the deterministic towers of
:mod:`ffbsd.ff`, evaluating at the lexicographically least root of the place
polynomial.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .ff import Fq, FqExt, FieldSpec, build_tower


def _last_nonzero(arr) -> int:
    nz = np.flatnonzero(arr)
    return int(nz[-1]) + 1 if nz.size else 0


class Poly:
    """Polynomial over F_q; canonical form has no trailing zero coefficients."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Fq, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(ctx: Fq) -> "Poly":
        return Poly(ctx, ())

    @staticmethod
    def one(ctx: Fq) -> "Poly":
        return Poly(ctx, (1,))

    @staticmethod
    def gen(ctx: Fq) -> "Poly":
        """The coordinate t."""
        return Poly(ctx, (0, 1))

    @staticmethod
    def const(ctx: Fq, n: int) -> "Poly":
        return Poly(ctx, (n % ctx.p if isinstance(n, int) else n,))

    @staticmethod
    def from_ints(ctx: Fq, ints) -> "Poly":
        """Little-endian integer coefficients, reduced into the prime field."""
        return Poly(ctx, (ctx.from_int(n) for n in ints))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        fq = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, bi in enumerate(b):
            out[i] = fq.add(out[i], bi)
        return Poly(fq, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        fq = self.ctx
        return Poly(fq, (fq.neg(c) for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        fq = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(fq)
        if fq.e == 1 and len(a) > 16 and len(b) > 16:
            prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
            return Poly(fq, (prod % fq.p).tolist())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = fq.add(out[i + j], fq.mul(ai, bj))
        return Poly(fq, out)

    def scale(self, c: int) -> "Poly":
        fq = self.ctx
        return Poly(fq, (fq.mul(c, x) for x in self.coeffs))

    def __pow__(self, k: int) -> "Poly":
        r, b = Poly.one(self.ctx), self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        fq = self.ctx
        if fq.e == 1 and self.degree > 64 and other.degree >= 1:
            return self._divmod_np(other)
        rem = list(self.coeffs)
        dm = other.degree
        inv_lead = fq.inv(other.lead)
        quot = [0] * max(0, len(rem) - dm)
        while len(rem) - 1 >= dm and rem:
            c = fq.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - dm
            quot[shift] = c
            for i, oi in enumerate(other.coeffs):
                rem[shift + i] = fq.sub(rem[shift + i], fq.mul(c, oi))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(fq, quot), Poly(fq, rem)

    def _divmod_np(self, other: "Poly") -> tuple["Poly", "Poly"]:
        # prime-field path with vectorized row updates; canonical heights
        # push polynomial degrees into the thousands
        fq = self.ctx
        p = fq.p
        rem = np.array(self.coeffs, dtype=np.int64)
        div = np.array(other.coeffs, dtype=np.int64)
        dm = other.degree
        inv_lead = pow(int(div[-1]), p - 2, p)
        qlen = max(0, len(rem) - dm)
        quot = np.zeros(qlen, dtype=np.int64)
        for shift in range(qlen - 1, -1, -1):
            c = rem[shift + dm] * inv_lead % p
            if c:
                quot[shift] = c
                rem[shift : shift + dm + 1] = (
                    rem[shift : shift + dm + 1] - c * div
                ) % p
        return Poly(fq, quot.tolist()), Poly(fq, rem[:dm].tolist())

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lead))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        if self.ctx.e == 1 and max(self.degree, other.degree) > 64:
            return self._gcd_np(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def _gcd_np(self, other: "Poly") -> "Poly":
        # keep coefficient arrays across the whole Euclid loop; the tuple
        # round trips dominate otherwise
        fq = self.ctx
        p = fq.p
        a = np.array(self.coeffs, dtype=np.int64)
        b = np.array(other.coeffs, dtype=np.int64)
        while b.size:
            dm = b.size - 1
            inv_lead = pow(int(b[-1]), p - 2, p)
            for shift in range(a.size - 1 - dm, -1, -1):
                c = a[shift + dm] * inv_lead % p
                if c:
                    a[shift : shift + dm + 1] = (a[shift : shift + dm + 1] - c * b) % p
            a = a[:dm]
            a = a[: _last_nonzero(a)]
            a, b = b, a
        out = Poly(fq, a.tolist())
        return out.monic()

    def derivative(self) -> "Poly":
        fq = self.ctx
        return Poly(
            fq,
            (fq.mul(fq.from_int(i), c) for i, c in enumerate(self.coeffs) if i >= 1),
        )

    def reversed(self, at_degree: int | None = None) -> "Poly":
        """Coefficients reversed: t^d * f(1/t) for d = at_degree (default deg f)."""
        d = self.degree if at_degree is None else at_degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        out = [0] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly(self.ctx, out)

    def multiplicity(self, pi: "Poly") -> int:
        """Exact power of pi dividing self (self nonzero)."""
        if self.is_zero():
            raise ValueError("valuation of the zero polynomial")
        v, cur = 0, self
        while True:
            q, r = cur.divmod(pi)
            if not r.is_zero():
                return v
            v, cur = v + 1, q

    def eval_fq(self, x: int) -> int:
        """Evaluate at an element of F_q (packed index)."""
        fq = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = fq.add(fq.mul(acc, x), c)
        return acc

    def eval_ext(self, ext: FqExt, x: int) -> int:
        """Evaluate at an element of F_{q^n}; coefficients embed unchanged."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = ext.add(ext.mul(acc, x), c)
        return acc

    # -- dunder plumbing -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ctx.spec == other.ctx.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.spec, self.coeffs))

    def __repr__(self):
        return format_poly(self)


def format_poly(f: Poly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
    return " + ".join(parts)


class RationalFunction:
    """f = num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.ctx)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        if not den.is_monic():
            c = num.ctx.inv(den.lead)
            num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @staticmethod
    def const(ctx: Fq, n: int) -> "RationalFunction":
        return RationalFunction(Poly.const(ctx, n))

    @property
    def ctx(self) -> Fq:
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction(self.den**-k, self.num**-k)
        return RationalFunction(self.num**k, self.den**k)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def as_rational(f) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, Poly):
        return RationalFunction(f)
    raise TypeError(f"cannot interpret {f!r} as a rational function")


# ---------------------------------------------------------------------------
# Places


@dataclass(frozen=True)
class Place:
    """A closed point of P^1 over F_q: a monic irreducible, or infinity."""

    spec: FieldSpec
    pi: Poly | None  # None encodes the place at infinity

    def __post_init__(self):
        if self.pi is not None:
            if not self.pi.is_monic() or self.pi.degree < 1:
                raise ValueError("finite place needs a monic polynomial of degree >= 1")

    @staticmethod
    def finite(pi: Poly) -> "Place":
        return Place(pi.ctx.spec, pi.monic())

    @staticmethod
    def infinity(spec: FieldSpec) -> "Place":
        return Place(spec, None)

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    def norm(self) -> int:
        """N(v) = q^deg(v), the size of the residue field."""
        return self.spec.q**self.degree

    def __repr__(self):
        return "Place(inf)" if self.pi is None else f"Place({self.pi!r})"


def valuation(f, place: Place) -> int:
    """Order of vanishing of a nonzero f in K at the place.

    At infinity this is deg(den) - deg(num).
    """
    f = as_rational(f)
    if f.is_zero():
        raise ValueError("valuation of the zero function is undefined")
    if place.is_infinite:
        return f.den.degree - f.num.degree
    return f.num.multiplicity(place.pi) - f.den.multiplicity(place.pi)


@functools.lru_cache(maxsize=None)
def _place_root(spec: FieldSpec, pi_coeffs: tuple) -> int:
    """Least root of pi inside the canonical tower of its degree."""
    ext = build_tower(spec, len(pi_coeffs) - 1)
    roots = ext.roots_of(list(pi_coeffs))
    if not roots:  # pragma: no cover
        raise AssertionError("irreducible place polynomial has no root in its tower")
    return roots[0]


@functools.lru_cache(maxsize=None)
def _quotient_field(spec: FieldSpec, pi_coeffs: tuple) -> FqExt:
    return FqExt(Fq.from_spec(spec), len(pi_coeffs) - 1, pi_coeffs)


def place_ring(place: Place) -> FqExt:
    """k(v) presented as F_q[u]/(pi_v), so the class of u is the residue of t.

    Unlike :func:`residue`, which lands in the canonical tower via a root
    scan, this presentation costs nothing at any degree; local reduction
    works here and converts to the tower only when point counting needs it.
    """
    if place.is_infinite:
        return build_tower(place.spec, 1)
    return _quotient_field(place.spec, place.pi.coeffs)


def place_root(place: Place) -> int:
    """Index of the canonical root of the place polynomial in F_{q^deg v}."""
    if place.is_infinite:
        return 0  # chart coordinate u vanishes at infinity
    return _place_root(place.spec, place.pi.coeffs)


def residue(f, place: Place):
    """Reduction of f (valuation >= 0) into the residue field F_{q^deg v}.

    Returned as an :class:`~ffbsd.ff.ExtFieldElement` of the canonical tower.
    Finite places evaluate at the stored root of pi; infinity evaluates the
    rewrite f(1/u) at u = 0.
    """
    from .ff import ExtFieldElement

    f = as_rational(f)
    ext = build_tower(place.spec, place.degree)
    if f.is_zero():
        return ExtFieldElement(ext, 0)
    if valuation(f, place) < 0:
        raise ValueError(f"pole at place {place!r}")
    if place.is_infinite:
        dn, dd = f.num.degree, f.den.degree
        if dn < dd:
            return ExtFieldElement(ext, 0)
        # equal degrees: ratio of leading coefficients
        fq = f.num.ctx
        return ExtFieldElement(ext, fq.mul(f.num.lead, fq.inv(f.den.lead)))
    pi = place.pi
    num, den = f.num, f.den
    # in lowest terms with valuation >= 0 the denominator is a unit at pi
    theta = place_root(place)
    nv = num.eval_ext(ext, theta)
    dv = den.eval_ext(ext, theta)
    return ExtFieldElement(ext, ext.mul(nv, ext.inv(dv)))


# ---------------------------------------------------------------------------
# Enumeration and factorization


@functools.lru_cache(maxsize=None)
def monic_irreducibles(spec: FieldSpec, degree: int) -> tuple[Poly, ...]:
    """All monic irreducibles of exact degree, by sieve over monic polynomials."""
    fq = Fq.from_spec(spec)
    q = fq.q
    if degree == 1:
        return tuple(Poly(fq, (c, 1)) for c in range(q))
    composite = np.zeros(q**degree, dtype=bool)
    # mark products (irreducible of degree a <= degree/2) * (monic of degree degree-a)
    for a in range(1, degree // 2 + 1):
        for p_small in monic_irreducibles(spec, a):
            b = degree - a
            for k in range(q**b):
                coeffs = []
                kk = k
                for _ in range(b):
                    coeffs.append(kk % q)
                    kk //= q
                prod = p_small * Poly(fq, coeffs + [1])
                idx = 0
                for c in reversed(prod.coeffs[:-1]):
                    idx = idx * q + c
                composite[idx] = True
    out = []
    for k in range(q**degree):
        if not composite[k]:
            coeffs = []
            kk = k
            for _ in range(degree):
                coeffs.append(kk % q)
                kk //= q
            out.append(Poly(fq, coeffs + [1]))
    return tuple(out)


def enumerate_places(spec: FieldSpec, max_degree: int) -> list[Place]:
    """All places of degree <= max_degree: finite ones plus infinity."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    out = [Place.infinity(spec)]
    for d in range(1, max_degree + 1):
        out.extend(Place.finite(pi) for pi in monic_irreducibles(spec, d))
    return out


def count_irreducibles(q: int, m: int) -> int:
    """Necklace count (1/m) * sum_{k|m} mu(k) q^(m/k)."""

    def mu(n):
        out, d = 1, 2
        while d * d <= n:
            if n % d == 0:
                n //= d
                if n % d == 0:
                    return 0
                out = -out
            d += 1
        return -out if n > 1 else out

    total = sum(mu(k) * q ** (m // k) for k in range(1, m + 1) if m % k == 0)
    return total // m


def squarefree_part(f: Poly) -> Poly:
    return (f // f.gcd(f.derivative())).monic()


def is_irreducible(f: Poly) -> bool:
    from .ff import _is_irreducible_over_fq

    return f.degree >= 1 and _is_irreducible_over_fq(f.ctx, list(f.coeffs))


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Irreducible factorization of a nonzero polynomial (monic factors).

    Distinct-degree splitting followed by a deterministic equal-degree split
    (candidate polynomials tried in a fixed enumeration order), so repeated
    runs factor identically.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    acc: dict[Poly, int] = {}
    _factor_into(f.monic(), 1, acc)
    out = sorted(acc.items(), key=lambda pm: (pm[0].degree, pm[0].coeffs))
    return out


def _factor_into(f: Poly, weight: int, acc: dict):
    """Accumulate factors of monic f, each multiplicity scaled by weight."""
    fq = f.ctx
    if f.degree <= 0:
        return
    fp = f.derivative()
    if fp.is_zero():
        # f is a p-th power: f = r(t)^p with r's coefficients the unique
        # p-th roots (Frobenius is bijective on F_q)
        p, e = fq.p, fq.e
        root = Poly(
            fq,
            (fq.pow(f.coeffs[p * i], p ** (e - 1))
             for i in range((f.degree // p) + 1)),
        )
        _factor_into(root, weight * p, acc)
        return
    sqf = (f // f.gcd(fp)).monic()
    leftover = f
    for g in _factor_squarefree(sqf):
        m = f.multiplicity(g)
        acc[g] = acc.get(g, 0) + weight * m
        leftover = leftover // g**m
    if leftover.degree > 0:
        # multiplicities divisible by p escape the derivative; recurse
        _factor_into(leftover.monic(), weight, acc)


def _factor_squarefree(f: Poly) -> list[Poly]:
    fq = f.ctx
    if f.degree <= 0:
        return []
    if f.degree == 1:
        return [f.monic()]
    factors: list[Poly] = []
    x = Poly.gen(fq)
    # distinct-degree: gcd with x^(q^d) - x peels off the degree-d part
    rem = f.monic()
    xq = x
    d = 0
    while rem.degree > 0:
        d += 1
        if 2 * d > rem.degree:
            factors.append(rem)
            break
        xq = _powmod(xq, fq.q, rem)
        g = (xq - x % rem).gcd(rem)
        if g.degree > 0:
            factors.extend(_equal_degree(g, d))
            rem = rem // g
            xq = xq % rem
    return factors


def _powmod(a: Poly, k: int, m: Poly) -> Poly:
    r = Poly.one(a.ctx)
    a = a % m
    while k:
        if k & 1:
            r = (r * a) % m
        a = (a * a) % m
        k >>= 1
    return r


def _equal_degree(f: Poly, d: int) -> list[Poly]:
    """Split a squarefree product of degree-d irreducibles (odd q)."""
    fq = f.ctx
    if f.degree == d:
        return [f.monic()]
    exponent = (fq.q**d - 1) // 2
    # deterministic candidate sweep in the fixed coefficient order; degree
    # up to 2d covers all residue pairs modulo any two factors
    width = min(f.degree, 2 * d)
    for k in range(1, fq.q**width):
        coeffs = []
        kk = k
        for _ in range(width):
            coeffs.append(kk % fq.q)
            kk //= fq.q
        cand = Poly(fq, coeffs)
        if cand.degree < 1:
            continue
        g = cand.gcd(f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f // g, d)
        h = _powmod(cand, exponent, f) - Poly.one(fq)
        g = h.gcd(f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f // g, d)
    raise AssertionError("equal-degree splitting failed")  # pragma: no cover


# ---------------------------------------------------------------------------
# pi-adic expansions at a place (equal characteristic: O_v == k(v)[[pi]])


@functools.lru_cache(maxsize=None)
def _hensel_coordinate(spec: FieldSpec, pi_coeffs: tuple, nterms: int) -> tuple:
    """Series T(pi) in k(v)[[pi]] with pi_v(T) = pi and T(0) = class of t.

    Gives the embedding F_q[t] -> k(v)[[pi]] in the quotient presentation of
    k(v); requires pi_v separable, which holds for irreducibles over a
    finite field.
    """
    ext = _quotient_field(spec, pi_coeffs)
    theta = ext.u  # pi_v(u) = 0 by construction
    pi_emb = [c for c in pi_coeffs]  # F_q indices embed unchanged
    dpi = [
        ext.mul(ext.from_int(i), pi_emb[i]) for i in range(1, len(pi_emb))
    ]
    T = [theta]
    prec = 1
    while prec < nterms:
        prec = min(2 * prec, nterms)
        Tp = T + [0] * (prec - len(T))
        val = _ser_poly_eval(ext, pi_emb, Tp, prec)
        val[1] = ext.sub(val[1], 1)  # pi_v(T) - pi
        dval = _ser_poly_eval(ext, dpi, Tp, prec)
        T = _ser_sub(ext, Tp, _ser_mul(ext, val, _ser_inv(ext, dval, prec), prec))
        T = T[:prec]
    return tuple(T)


def _ser_mul(ext: FqExt, a, b, n):
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[: n - i]):
                if bj:
                    out[i + j] = ext.add(out[i + j], ext.mul(ai, bj))
    return out


def _ser_add(ext: FqExt, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [ext.add(x, y) for x, y in zip(a, b)]


def _ser_sub(ext: FqExt, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [ext.sub(x, y) for x, y in zip(a, b)]


def _ser_scale(ext: FqExt, c, a):
    return [ext.mul(c, x) for x in a]


def _ser_inv(ext: FqExt, a, n):
    if a[0] == 0:
        raise ZeroDivisionError("series inversion needs a unit constant term")
    out = [0] * n
    inv0 = ext.inv(a[0])
    out[0] = inv0
    for k in range(1, n):
        acc = 0
        for i in range(1, k + 1):
            if i < len(a) and a[i]:
                acc = ext.add(acc, ext.mul(a[i], out[k - i]))
        out[k] = ext.neg(ext.mul(inv0, acc))
    return out


def _ser_poly_eval(ext: FqExt, poly_coeffs, T, n):
    """Evaluate a polynomial (k(v)-index coefficients) at the series T."""
    acc = [0] * n
    for c in reversed(poly_coeffs):
        acc = _ser_mul(ext, acc, T, n)
        acc[0] = ext.add(acc[0], c)
    return acc


def expand_at(f: Poly, place: Place, nterms: int) -> list[int]:
    """First nterms pi-adic coefficients of f at a finite place.

    Coefficients are element indices of ``place_ring(place)``.
    """
    if place.is_infinite:
        raise ValueError("expansion at infinity goes through the u-chart")
    if f.is_zero():
        return [0] * nterms
    if place.degree == 1 and place.pi.coeffs[0] == 0:
        # place (t): expansion = coefficients themselves
        return [f.coeffs[i] if i < len(f.coeffs) else 0 for i in range(nterms)]
    ext = _quotient_field(place.spec, place.pi.coeffs)
    T = list(_hensel_coordinate(place.spec, place.pi.coeffs, nterms))
    T += [0] * (nterms - len(T))
    return _ser_poly_eval(ext, list(f.coeffs), T, nterms)
