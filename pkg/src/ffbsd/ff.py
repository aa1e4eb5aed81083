"""Exact arithmetic in F_q and its extensions F_{q^n}.

The base field F_q (q = p^e, p >= 5 prime) is the quotient F_p[x]/(m) for a
deterministically chosen monic irreducible m.  Extensions F_{q^n} are built as
single-step quotients F_q[u]/(m_n), never as towers of towers, so that every
element has one canonical representation.

Elements are stored as packed integer indices: the coefficient vector over
F_p, read little-endian in base p.  This makes the embedding F_q -> F_{q^n}
the identity on indices and lets the point-counting kernels work on flat
numpy arrays.  Each extension context can lazily build discrete-log, Zech
logarithm and quadratic-character tables (only when q^n is small enough);
all arithmetic also works without tables.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

# Character/Zech tables are only built for fields up to this size; beyond it
# the quadratic character falls back to exponentiation.
TABLE_LIMIT = 1 << 20
# The point-counting kernels may force tables somewhat past that (the largest
# residue field a degree-9 discriminant factor over F_5 can produce).
COUNT_TABLE_LIMIT = 2_200_000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Raw polynomial arithmetic over F_p (coefficients as plain int lists,
# little-endian).  Only used to bootstrap field contexts.


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _fp_trim(a)
    return a


def _fp_powmod(a, k, m, p):
    r = [1]
    a = _fp_mod(a, m, p)
    while k:
        if k & 1:
            r = _fp_mod(_fp_mul(r, a, p), m, p)
        a = _fp_mod(_fp_mul(a, a, p), m, p)
        k >>= 1
    return r


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _fp_irreducible(f, p) -> bool:
    # Rabin's test: x^(p^d) == x mod f, and x^(p^(d/r)) - x coprime to f
    # for every prime r dividing d.
    d = len(f) - 1
    if d < 1:
        return False
    x = [0, 1]
    if _fp_powmod(x, p**d, f, p) != _fp_mod(x, f, p):
        return False
    for r in _prime_factors(d):
        g = _fp_powmod(x, p ** (d // r), f, p)
        g = [(gi - xi) % p for gi, xi in _zip_pad(g, x, p)]
        _fp_trim(g)
        if len(_fp_gcd(g, f, p)) > 1:
            return False
    return True


def _zip_pad(a, b, p):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _first_irreducible_fp(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of given degree over F_p.

    Enumeration order: the constant coefficient varies fastest (poly index k
    maps to the base-p digits of k).
    """
    for k in range(p**degree):
        coeffs = []
        kk = k
        for _ in range(degree):
            coeffs.append(kk % p)
            kk //= p
        f = coeffs + [1]
        if _fp_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible found")  # impossible


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """A base field F_q, q = p^e, with its deterministic defining modulus."""

    p: int
    e: int = 1
    base_modulus: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.p in (2, 3):
            raise ValueError(
                "residue characteristic < 5 unsupported (tame reduction only)"
            )
        if self.e < 1:
            raise ValueError("extension degree e must be >= 1")
        object.__setattr__(
            self, "base_modulus", _first_irreducible_fp(self.p, self.e)
        )

    @property
    def q(self) -> int:
        return self.p**self.e

    @staticmethod
    def from_q(q: int) -> "FieldSpec":
        """Recover (p, e) from a prime power q."""
        for p in range(2, q + 1):
            if q % p == 0:
                e = 0
                m = q
                while m % p == 0:
                    m //= p
                    e += 1
                if m != 1:
                    raise ValueError(f"q = {q} is not a prime power")
                return FieldSpec(p, e)
        raise ValueError(f"bad q = {q}")


class Fq:
    """Arithmetic context for the base field F_q, elements as packed indices."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.q = spec.q
        self.modulus = spec.base_modulus

    @staticmethod
    @functools.lru_cache(maxsize=None)
    def from_spec(spec: FieldSpec) -> "Fq":
        return Fq(spec)

    # -- index <-> digit helpers ------------------------------------------

    def digits(self, idx: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(idx % self.p)
            idx //= self.p
        return out

    def pack(self, digs) -> int:
        out = 0
        for d in reversed(list(digs)):
            out = out * self.p + (d % self.p)
        return out

    # -- arithmetic on indices --------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self.pack(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        return self.pack(x - y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self.pack(-x for x in self.digits(a))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _fp_mul(self.digits(a), self.digits(b), self.p)
        return self.pack(_fp_mod(prod, list(self.modulus), self.p) + [0] * self.e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in F_q")
        return self.pow(a, self.q - 2)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        r, b = 1, a
        while k:
            if k & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            k >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the rational integer n in F_q (prime subfield)."""
        return n % self.p

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"Fq(p={self.p}, e={self.e})"


class FqExt:
    """Arithmetic context for F_{q^n} = F_q[u]/(m_n), elements as packed indices.

    Indices pack the full F_p coefficient vector (length n*e) little-endian in
    base p, so F_q sits inside F_{q^n} with unchanged indices.
    """

    def __init__(self, base: Fq, n: int, modulus: tuple[int, ...]):
        self.base = base
        self.n = n
        self.modulus = modulus  # tuple of Fq indices, little-endian, monic
        self.p = base.p
        self.w = base.e * n  # number of F_p digits per element
        self.Q = base.q**n
        self.M = self.Q - 1
        self._tables = None
        self._roots_cache: dict[tuple, tuple[int, ...]] = {}

    # -- representation -----------------------------------------------------

    def coeff_vector(self, idx: int) -> list[int]:
        """Element as a vector of n Fq-indices (coefficients of u^i)."""
        q = self.base.q
        out = []
        for _ in range(self.n):
            out.append(idx % q)
            idx //= q
        return out

    def pack_coeffs(self, coeffs) -> int:
        q = self.base.q
        out = 0
        for c in reversed(list(coeffs)):
            out = out * q + c
        return out

    def fp_digits(self, idx: int) -> list[int]:
        out = []
        for _ in range(self.w):
            out.append(idx % self.p)
            idx //= self.p
        return out

    @property
    def u(self) -> int:
        """The residue class of the extension variable."""
        if self.n == 1:
            # F_q[u]/(u + c): u = -c
            return self.base.neg(self.modulus[0])
        return self.pack_coeffs([0, 1] + [0] * (self.n - 2))

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        out, mult = 0, 1
        for _ in range(self.w):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        p = self.p
        out, mult = 0, 1
        for _ in range(self.w):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def mul(self, a: int, b: int) -> int:
        fq = self.base
        av, bv = self.coeff_vector(a), self.coeff_vector(b)
        prod = [0] * (2 * self.n - 1)
        for i, ai in enumerate(av):
            if ai:
                for j, bj in enumerate(bv):
                    if bj:
                        prod[i + j] = fq.add(prod[i + j], fq.mul(ai, bj))
        # reduce mod m_n (monic)
        for top in range(len(prod) - 1, self.n - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for i in range(self.n):
                    prod[top - self.n + i] = fq.sub(
                        prod[top - self.n + i], fq.mul(c, self.modulus[i])
                    )
        return self.pack_coeffs(prod[: self.n])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        r, b = 1, a
        while k:
            if k & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            k >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in F_{q^n}")
        return self.pow(a, self.Q - 2)

    def from_base(self, a: int) -> int:
        """Embed F_q into this field (identity on packed indices)."""
        return a

    def from_int(self, n: int) -> int:
        return n % self.p

    def frobenius(self, a: int) -> int:
        """The q-th power map generating Gal(F_{q^n}/F_q)."""
        if self._tables is not None and "frob" in self._tables:
            return int(self._tables["frob"][a])
        return self.pow(a, self.base.q)

    def char(self, a: int) -> int:
        """Quadratic character: 0 on 0, +1 on nonzero squares, -1 otherwise."""
        if a == 0:
            return 0
        if self.Q <= TABLE_LIMIT:
            self.ensure_tables()
        if self._tables is not None:
            return int(self._tables["chi"][a])
        t = self.pow(a, self.M // 2)
        return 1 if t == 1 else -1

    def elements(self):
        return range(self.Q)

    # -- tables ---------------------------------------------------------------

    def _mult_matrix(self, g: int) -> np.ndarray:
        """Matrix of x -> g*x on the F_p coefficient basis (w x w, mod p)."""
        cols = []
        for j in range(self.w):
            basis = self.p**j if j == 0 else self.p**j
            img = self.mul(g, basis)
            cols.append(self.fp_digits(img))
        return np.array(cols, dtype=np.int64).T % self.p

    def _find_generator(self) -> int:
        fac = _prime_factors(self.M)
        for cand in range(2, self.Q):
            if all(self.pow(cand, self.M // l) != 1 for l in fac):
                return cand
        raise AssertionError("no multiplicative generator found")

    def ensure_tables(self, limit: int = TABLE_LIMIT):
        """Build exp/log/Zech/character tables; idempotent.

        Must be called before any parallel use of the fast kernels (table
        construction is the only mutation a context ever performs).
        """
        if self._tables is not None:
            return self._tables
        if self.Q > limit:
            raise ValueError(
                f"field size {self.Q} exceeds table limit {limit}"
            )
        p, M, Q, w = self.p, self.M, self.Q, self.w
        g = self._find_generator()
        # digit rows of g^0, g^1, ... built by doubling blocks: rows of the
        # next block are the current rows times the matrix of g^(block size).
        rows = np.zeros((1, w), dtype=np.int8)
        rows[0, 0] = 1
        mat = self._mult_matrix(g)
        while rows.shape[0] < M:
            take = min(rows.shape[0], M - rows.shape[0])
            block = (rows[:take].astype(np.int32) @ mat.T.astype(np.int32)) % p
            rows = np.vstack([rows, block.astype(np.int8)])
            mat = (mat @ mat) % p
        powers = (p ** np.arange(w, dtype=np.int64)).astype(np.int64)
        exp_idx = rows.astype(np.int64) @ powers
        if len(np.unique(exp_idx)) != M:  # pragma: no cover - sanity
            raise AssertionError("generator table construction failed")
        log = np.full(Q, M, dtype=np.int64)
        log[exp_idx] = np.arange(M, dtype=np.int64)
        # Zech logarithms: zech[d] = log(1 + g^d), sentinel M when 1+g^d = 0.
        rows[:, 0] = (rows[:, 0] + 1) % p
        zech = log[rows.astype(np.int64) @ powers]
        del rows
        chi = np.zeros(Q, dtype=np.int8)
        chi[exp_idx[0::2]] = 1
        chi[exp_idx[1::2]] = -1
        self._tables = {
            "exp": exp_idx,
            "log": log,
            "zech": zech.astype(np.int64),
            "chi": chi,
            "generator": g,
        }
        if Q <= TABLE_LIMIT:
            frob = np.zeros(Q, dtype=np.int64)
            frob[exp_idx] = exp_idx[
                (np.arange(M, dtype=np.int64) * self.base.q) % M
            ]
            self._tables["frob"] = frob
        return self._tables

    @property
    def tables(self):
        return self.ensure_tables()

    # -- vectorized index-array helpers (all pure; need tables for mul) -------

    def varray(self) -> np.ndarray:
        return np.arange(self.Q, dtype=np.int64)

    def vadd(self, a: np.ndarray, b) -> np.ndarray:
        """Elementwise addition of index arrays (digit arithmetic, no tables)."""
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.broadcast_to(np.asarray(b, dtype=np.int64), a.shape).copy()
        out = np.zeros_like(a)
        mult = 1
        aa, bb = a.copy(), b
        for _ in range(self.w):
            out += ((aa + bb) % p) * mult
            aa //= p
            bb //= p
            mult *= p
        return out

    def vmul(self, a: np.ndarray, b) -> np.ndarray:
        """Elementwise multiplication via log/exp tables."""
        t = self.tables
        log, exp = t["log"], t["exp"]
        a = np.asarray(a, dtype=np.int64)
        b = np.broadcast_to(np.asarray(b, dtype=np.int64), a.shape)
        s = (log[a] + log[b]) % self.M  # sentinel logs give garbage, masked below
        out = exp[s]
        out[(a == 0) | (b == 0)] = 0
        return out

    def veval_poly(self, coeffs: list[int], points: np.ndarray | None = None) -> np.ndarray:
        """Evaluate a polynomial (little-endian index coefficients) at points.

        Default evaluates at every field element in index order.
        """
        if points is None:
            points = self.varray()
        acc = np.full(points.shape, 0, dtype=np.int64)
        for c in reversed(coeffs):
            acc = self.vadd(self.vmul(acc, points), c)
        return acc

    def roots_of(self, coeffs: list[int]) -> tuple[int, ...]:
        """All roots in this field of a polynomial, ascending index order."""
        key = tuple(coeffs)
        hit = self._roots_cache.get(key)
        if hit is not None:
            return hit
        self.ensure_tables(COUNT_TABLE_LIMIT)
        vals = self.veval_poly(list(coeffs))
        roots = tuple(int(i) for i in np.flatnonzero(vals == 0))
        self._roots_cache[key] = roots
        return roots

    def eval_coeff_vector(self, coeffs, theta: int) -> int:
        """Horner evaluation of sum coeffs[i] * theta^i in this field."""
        acc = 0
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, theta), c)
        return acc

    def __repr__(self):
        return f"FqExt(q={self.base.q}, n={self.n})"


@functools.lru_cache(maxsize=None)
def _tower(spec: FieldSpec, n: int) -> FqExt:
    base = Fq.from_spec(spec)
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    # first monic irreducible of degree n over F_q, constant coefficient
    # varying fastest in index order
    for k in range(base.q**n):
        coeffs = []
        kk = k
        for _ in range(n):
            coeffs.append(kk % base.q)
            kk //= base.q
        if _is_irreducible_over_fq(base, coeffs + [1]):
            return FqExt(base, n, tuple(coeffs + [1]))
    raise AssertionError("no irreducible of requested degree")  # impossible


def _poly_fq_mulmod(fq: Fq, a, b, m):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = fq.add(prod[i + j], fq.mul(ai, bj))
    # reduce mod monic m
    dm = len(m) - 1
    while len(prod) - 1 >= dm and prod:
        c = prod[-1]
        if c:
            shift = len(prod) - 1 - dm
            for i, mi in enumerate(m):
                prod[shift + i] = fq.sub(prod[shift + i], fq.mul(c, mi))
        while prod and prod[-1] == 0:
            prod.pop()
    return prod


def _poly_fq_powmod(fq: Fq, a, k, m):
    r = [1]
    a = list(a)
    while k:
        if k & 1:
            r = _poly_fq_mulmod(fq, r, a, m)
        a = _poly_fq_mulmod(fq, a, a, m)
        k >>= 1
    return r


def _poly_fq_gcd(fq: Fq, a, b):
    a, b = list(a), list(b)

    def mod(x, y):
        x = list(x)
        inv = fq.inv(y[-1])
        dy = len(y) - 1
        while x and len(x) - 1 >= dy:
            c = fq.mul(x[-1], inv)
            shift = len(x) - 1 - dy
            for i, yi in enumerate(y):
                x[shift + i] = fq.sub(x[shift + i], fq.mul(c, yi))
            while x and x[-1] == 0:
                x.pop()
        return x

    while b:
        a, b = b, mod(a, b)
    return a


def _is_irreducible_over_fq(fq: Fq, f) -> bool:
    d = len(f) - 1
    if d < 1:
        return False
    x = [0, 1]
    lhs = _poly_fq_powmod(fq, x, fq.q**d, f)
    if lhs != (_poly_fq_mulmod(fq, x, [1], f)):
        return False
    for r in _prime_factors(d):
        g = _poly_fq_powmod(fq, x, fq.q ** (d // r), f)
        # g - x
        n = max(len(g), 2)
        g = g + [0] * (n - len(g))
        g[1] = fq.sub(g[1], 1)
        while g and g[-1] == 0:
            g.pop()
        if len(_poly_fq_gcd(fq, g, f)) > 1:
            return False
    return True


def build_tower(spec: FieldSpec, n: int) -> FqExt:
    """Extension field context for F_{q^n}, deterministic for fixed (spec, n)."""
    return _tower(spec, n)


# ---------------------------------------------------------------------------
# Thin element wrappers over the index contexts.


class FieldElement:
    """An element of the base field F_q."""

    __slots__ = ("ctx", "idx")

    def __init__(self, ctx: Fq, idx: int):
        self.ctx = ctx
        self.idx = idx

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.idx))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx.spec != self.ctx.spec:
                raise ValueError("field context mismatch")
            return other.idx
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.add(self.idx, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.sub(self.idx, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.sub(o, self.idx))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.mul(self.idx, o))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.idx))

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.mul(self.idx, self.ctx.inv(o)))

    def __pow__(self, k):
        return FieldElement(self.ctx, self.ctx.pow(self.idx, k))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.idx))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx.spec == other.ctx.spec and self.idx == other.idx
        if isinstance(other, int):
            return self.idx == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.spec, self.idx))

    def __bool__(self):
        return self.idx != 0

    def __repr__(self):
        return f"F{self.ctx.q}({self.idx})"


class ExtFieldElement:
    """An element of an extension field F_{q^n}."""

    __slots__ = ("ctx", "idx")

    def __init__(self, ctx: FqExt, idx: int):
        self.ctx = ctx
        self.idx = idx

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return tuple(
            FieldElement(self.ctx.base, c) for c in self.ctx.coeff_vector(self.idx)
        )

    def _coerce(self, other):
        if isinstance(other, ExtFieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("field context mismatch")
            return other.idx
        if isinstance(other, FieldElement):
            if other.ctx.spec != self.ctx.base.spec:
                raise ValueError("field context mismatch")
            return self.ctx.from_base(other.idx)
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return ExtFieldElement(self.ctx, self.ctx.add(self.idx, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return ExtFieldElement(self.ctx, self.ctx.sub(self.idx, self._coerce(other)))

    def __rsub__(self, other):
        return ExtFieldElement(self.ctx, self.ctx.sub(self._coerce(other), self.idx))

    def __mul__(self, other):
        return ExtFieldElement(self.ctx, self.ctx.mul(self.idx, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return ExtFieldElement(self.ctx, self.ctx.neg(self.idx))

    def __truediv__(self, other):
        o = self._coerce(other)
        return ExtFieldElement(self.ctx, self.ctx.mul(self.idx, self.ctx.inv(o)))

    def __pow__(self, k):
        return ExtFieldElement(self.ctx, self.ctx.pow(self.idx, k))

    def inverse(self):
        return ExtFieldElement(self.ctx, self.ctx.inv(self.idx))

    def __eq__(self, other):
        if isinstance(other, ExtFieldElement):
            return self.ctx is other.ctx and self.idx == other.idx
        if isinstance(other, (FieldElement, int)):
            return self.idx == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.idx))

    def __bool__(self):
        return self.idx != 0

    def __repr__(self):
        return f"F{self.ctx.base.q}^{self.ctx.n}({self.idx})"


def quadratic_character(x) -> int:
    """0 iff x = 0, +1 iff x is a nonzero square, -1 otherwise."""
    if isinstance(x, ExtFieldElement):
        return x.ctx.char(x.idx)
    if isinstance(x, FieldElement):
        ctx = x.ctx
        if x.idx == 0:
            return 0
        return 1 if ctx.pow(x.idx, (ctx.q - 1) // 2) == 1 else -1
    raise TypeError("expected a field element")


def frobenius(x: ExtFieldElement) -> ExtFieldElement:
    """x -> x^q, the arithmetic Frobenius over the base field."""
    return ExtFieldElement(x.ctx, x.ctx.frobenius(x.idx))
