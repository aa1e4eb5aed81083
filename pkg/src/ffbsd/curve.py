"""Elliptic curves y^2 = x^3 + a x + b over K = F_q(t) and their heights.

Points carry exact rational-function coordinates.  The canonical height is
the doubling limit of the x-coordinate degree, rounded onto the lattice
(1/N0)Z with N0 = 2 * (product of Tamagawa numbers)^2; its polarization is
the height pairing whose Gram determinant plays the role of the regulator.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .ff import Fq, FieldSpec
from .funcfield import Place, Poly, RationalFunction, as_rational


class UnsupportedCurveError(ValueError):
    """Curve outside the supported class (singular, wrong characteristic...)."""


class HeightError(RuntimeError):
    """Canonical-height doubling limit failed to stabilize."""


class Curve:
    """The global object A/K in short Weierstrass form with polynomial a, b."""

    __slots__ = ("a", "b", "_delta", "_local_cache", "_height_cache")

    def __init__(self, a: Poly, b: Poly):
        if a.ctx.spec != b.ctx.spec:
            raise ValueError("coefficient fields differ")
        self.a = a
        self.b = b
        self._local_cache = {}
        self._height_cache = {}
        four_a3 = (a * a * a).scale(a.ctx.from_int(4))
        tw7_b2 = (b * b).scale(a.ctx.from_int(27))
        self._delta = (four_a3 + tw7_b2).scale(a.ctx.from_int(-16))
        if self._delta.is_zero():
            raise UnsupportedCurveError("singular model: discriminant is zero")

    @property
    def ctx(self) -> Fq:
        return self.a.ctx

    @property
    def spec(self) -> FieldSpec:
        return self.a.ctx.spec

    @property
    def q(self) -> int:
        return self.a.ctx.q

    @property
    def c4(self) -> Poly:
        return self.a.scale(self.ctx.from_int(-48))

    @property
    def c6(self) -> Poly:
        return self.b.scale(self.ctx.from_int(-864))

    @property
    def delta(self) -> Poly:
        return self._delta

    def is_isotrivial(self) -> bool:
        """Constant j-invariant: c4^3 and delta proportional over F_q."""
        c4cube = self.c4**3
        if c4cube.is_zero():
            return True
        d = self._delta
        return c4cube.scale(d.lead) == d.scale(c4cube.lead)

    def rhs(self, x: RationalFunction) -> RationalFunction:
        ax = RationalFunction(self.a) * x
        return x * x * x + ax + RationalFunction(self.b)

    def contains(self, P: "KPoint") -> bool:
        if P.is_identity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def content_key(self) -> tuple:
        """Hashable identity of the curve (field + coefficients)."""
        return (self.spec.p, self.spec.e, self.a.coeffs, self.b.coeffs)

    def __eq__(self, other):
        return isinstance(other, Curve) and self.content_key() == other.content_key()

    def __hash__(self):
        return hash(self.content_key())

    def __repr__(self):
        return f"y^2 = x^3 + ({self.a!r})*x + ({self.b!r}) over F_{self.q}(t)"

    # -- group law -----------------------------------------------------------

    def neg(self, P: "KPoint") -> "KPoint":
        if P.is_identity:
            return P
        return KPoint.affine(P.x, -P.y)

    def add(self, P: "KPoint", Q: "KPoint") -> "KPoint":
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return KPoint.IDENTITY
            # doubling; y != 0 here since y = -y would be caught above (p odd)
            three = RationalFunction.const(self.ctx, 3)
            two = RationalFunction.const(self.ctx, 2)
            lam = (three * P.x * P.x + RationalFunction(self.a)) / (two * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return KPoint.affine(x3, y3)

    def mul(self, n: int, P: "KPoint") -> "KPoint":
        if n < 0:
            return self.mul(-n, self.neg(P))
        R = KPoint.IDENTITY
        B = P
        while n:
            if n & 1:
                R = self.add(R, B)
            B = self.add(B, B)
            n >>= 1
        return R


class KPoint:
    """A K-rational point: the identity, or affine exact coordinates."""

    __slots__ = ("x", "y", "is_identity")

    IDENTITY: "KPoint"

    def __init__(self, x, y, is_identity):
        self.x = x
        self.y = y
        self.is_identity = is_identity

    @staticmethod
    def affine(x, y) -> "KPoint":
        return KPoint(as_rational(x), as_rational(y), False)

    def __eq__(self, other):
        if not isinstance(other, KPoint):
            return NotImplemented
        if self.is_identity or other.is_identity:
            return self.is_identity == other.is_identity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_identity:
            return hash("identity")
        return hash((self.x, self.y))

    def __repr__(self):
        return "O" if self.is_identity else f"({self.x!r}, {self.y!r})"


KPoint.IDENTITY = KPoint(None, None, True)


@dataclass
class MWInput:
    """User-supplied Mordell-Weil data; claims are checked, never searched for.

    ``claimed_torsion_order`` may be given without listing points; it is then
    validated only against the good-reduction gcd bound and flagged as
    unverified in the report.
    """

    generators: list = dc_field(default_factory=list)
    torsion_points: list = dc_field(default_factory=list)
    claimed_torsion_order: int = 1


def naive_height(P: KPoint) -> int:
    """max(deg num, deg den) of x(P) in lowest terms; 0 for the identity."""
    if P.is_identity:
        return 0
    return max(P.x.num.degree, P.x.den.degree)


def height_drift_bound(curve: Curve) -> int:
    """Bound on |naive_height(Q) - canonical height of Q| over all Q.

    The discrepancy is carried entirely by the bad fibers (the x-degree and
    the height differ by intersection terms against fibral components and
    the local height corrections, each bounded by the fiber data), so a
    generous linear function of the minimal discriminant degree suffices.
    """
    from . import localred

    local = localred.all_local_data(curve)
    deg_delta_min = sum(v.degree * ld.v_delta_min for v, ld in local.items())
    support = sum(v.degree for v in local)
    return 4 + deg_delta_min + 2 * support


def canonical_height(
    curve: Curve,
    P: KPoint,
    tamagawa_product: int,
    doubling_cap: int = 12,
) -> Fraction:
    """Degree-normalized canonical height via the doubling limit.

    Doubles until 4^-n * naive_height(2^n P) is pinned: past the depth at
    which the drift bound guarantees every later estimate moves by less
    than 1/(3*N0), N0 = 2*tamagawa_product^2, and two successive estimates
    agree to that tolerance, the value is rounded to the nearest multiple
    of 1/N0.  The depth requirement matters: successive estimates can
    coincide by accident at shallow levels (x(P) and x(2P) both constant
    happens on honest non-torsion points).  Zero exactly on torsion.
    """
    n0 = 2 * tamagawa_product**2
    key = (P, n0)
    hit = curve._height_cache.get(key)
    if hit is not None:
        return hit
    tol = Fraction(1, 3 * n0)
    drift = height_drift_bound(curve)
    n_min = 1
    while 4**n_min < 3 * n0 * drift:
        n_min += 1
    est_prev = Fraction(naive_height(P))
    Q = P
    for n in range(1, doubling_cap + 1):
        Q = curve.add(Q, Q)
        est = Fraction(naive_height(Q), 4**n)
        if n >= n_min and abs(est - est_prev) < tol:
            rounded = _round_to_lattice(est, n0)
            if abs(est - rounded) > tol:
                raise HeightError(
                    f"height did not stabilize: estimate {est} is not within "
                    f"1/(3*{n0}) of the lattice (1/{n0})Z"
                )
            curve._height_cache[key] = rounded
            return rounded
        est_prev = est
    raise HeightError(
        f"height did not stabilize within {doubling_cap} doublings"
    )


def _round_to_lattice(x: Fraction, n0: int) -> Fraction:
    scaled = x * n0
    k = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    return Fraction(k, n0)


@dataclass
class HeightPairingMatrix:
    """Gram matrix of the height pairing on a list of claimed generators."""

    entries: list  # r x r nested lists of Fraction
    basis: list  # the generator KPoints

    @property
    def rank(self) -> int:
        return len(self.basis)

    def determinant(self) -> Fraction:
        """Exact determinant; 1 for the empty matrix (rank-0 convention)."""
        n = len(self.entries)
        if n == 0:
            return Fraction(1)
        m = [row[:] for row in self.entries]
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                f = m[r][col] * inv
                if f:
                    for c in range(col, n):
                        m[r][c] -= f * m[col][c]
        return det

    def is_positive_definite(self) -> bool:
        """All leading principal minors positive."""
        n = len(self.entries)
        for k in range(1, n + 1):
            sub = HeightPairingMatrix(
                [row[:k] for row in self.entries[:k]], self.basis[:k]
            )
            if sub.determinant() <= 0:
                return False
        return True


def height_pairing(
    curve: Curve, generators: list, tamagawa_product: int
) -> HeightPairingMatrix:
    """B(P,Q) = (h(P+Q) - h(P) - h(Q))/2 on the given points."""
    r = len(generators)
    h = [canonical_height(curve, P, tamagawa_product) for P in generators]
    entries = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        entries[i][i] = h[i]
        for j in range(i + 1, r):
            hij = canonical_height(
                curve, curve.add(generators[i], generators[j]), tamagawa_product
            )
            entries[i][j] = entries[j][i] = (hij - h[i] - h[j]) / 2
    return HeightPairingMatrix(entries, list(generators))


def torsion_bound(curve: Curve, places: list[Place]) -> int:
    """gcd over good places of the reduced point counts; torsion divides it.

    Reduction is injective on all of A(K)_tor at a good place (the kernel of
    reduction is a formal group with no prime-to-p torsion, and p-torsion has
    etale image in odd characteristic), so each count is a multiple of the
    torsion order.
    """
    from math import gcd

    from . import localred

    if len(places) < 2:
        raise ValueError("need at least two good places for a torsion bound")
    bound = 0
    for v in places:
        data = localred.local_data(curve, v)
        if data.kodaira != "I0":
            raise ValueError(f"place {v!r} has bad reduction ({data.kodaira})")
        bound = gcd(bound, localred.count_reduced_points(curve, v, 1))
    return bound


def torsion_subgroup_order(curve: Curve, torsion_points: list, cap: int = 1024) -> int:
    """Order of the subgroup generated by the given points (all torsion)."""
    group = {KPoint.IDENTITY}
    frontier = [KPoint.IDENTITY]
    while frontier:
        fresh = []
        for g in frontier:
            for p in torsion_points:
                s = curve.add(g, p)
                if s not in group:
                    group.add(s)
                    fresh.append(s)
                    if len(group) > cap:
                        raise ValueError(
                            "claimed torsion points generate a group larger "
                            f"than {cap}; not a torsion subgroup?"
                        )
        frontier = fresh
    return len(group)
