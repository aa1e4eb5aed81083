"""The L-function as an exact integer polynomial in T = q^(-s).

Two independent assemblies of the same polynomial of degree
D = deg(conductor) - 4:

* the exp-log route: direct fiber counting over P^1(F_{q^n}) gives the
  power sums A_n, and L = exp(sum A_n T^n / n) truncated at T^D, computed in
  exact rationals with an integrality assertion on every coefficient;

* the Euler route: the product of local factors P_v(T^{deg v})^{-1} over all
  places of degree <= D, expanded by formal inversion over the integers.

Their exact coefficientwise agreement is the module's primary oracle; the
functional equation and L(0) = 1 are asserted on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import counting, localred
from .curve import Curve, UnsupportedCurveError
from .ff import COUNT_TABLE_LIMIT, build_tower
from .localred import InternalCheckError, LocalData


@dataclass(frozen=True)
class TraceSum:
    """A_n = sum over fibers x in P^1(F_{q^n}) of the local trace term."""

    n: int
    total: int
    per_fiber: np.ndarray  # finite fibers in element-index order, then infinity

    def __post_init__(self):
        object.__setattr__(self, "per_fiber", np.asarray(self.per_fiber, np.int64))


@dataclass(frozen=True)
class LSeries:
    q: int
    D: int
    coeffs: tuple[int, ...]  # little-endian in T, length D + 1
    epsilon: int
    r_an: int
    leading: Fraction  # M(1/q) where L = (1 - qT)^r_an * M

    def value_coeffs(self):
        return list(self.coeffs)


def _fiber_trace_for_place(curve: Curve, data: LocalData, tower, n: int) -> int:
    """Trace term of any fiber lying over the given scan place, over F_{q^n}."""
    stretch = n // data.place.degree
    if data.is_good:
        a_img, b_img = localred.reduced_model_in(curve, data.place, tower)
        return -counting.char_sum(tower, a_img, b_img)
    if data.is_multiplicative:
        split_here = data.mult_split or (stretch % 2 == 0)
        return 1 if split_here else -1
    return 0  # additive


def fiber_traces(curve: Curve, n: int, indices=None) -> np.ndarray:
    """Trace terms for the requested fibers of P^1(F_{q^n}).

    Fiber index i < q^n is the field element of that index; index q^n is the
    chart point at infinity.  Default computes every fiber.
    """
    tower = build_tower(curve.spec, n)
    tower.ensure_tables()
    local = localred.all_local_data(curve)
    if indices is None:
        indices = np.arange(tower.Q + 1, dtype=np.int64)
    else:
        indices = np.asarray(indices, dtype=np.int64)
    finite = indices[indices < tower.Q]
    a_eval = tower.veval_poly(list(curve.a.coeffs), finite)
    b_eval = tower.veval_poly(list(curve.b.coeffs), finite)
    traces = -counting.char_sums(tower, a_eval, b_eval)
    out = np.zeros(indices.shape, dtype=np.int64)
    out[indices < tower.Q] = traces
    for place, data in local.items():
        if place.is_infinite:
            if (indices == tower.Q).any():
                out[indices == tower.Q] = _fiber_trace_for_place(
                    curve, data, tower, n
                )
            continue
        if n % place.degree:
            continue  # no fibers over this place in F_{q^n}
        roots = tower.roots_of(list(place.pi.coeffs))
        hit = np.isin(indices, np.array(roots, dtype=np.int64))
        if hit.any():
            out[hit] = _fiber_trace_for_place(curve, data, tower, n)
    if (out * out > 4 * tower.Q).any():
        raise InternalCheckError("fiber trace violates the Hasse bound")
    return out


def trace_sum(curve: Curve, n: int, cache=None) -> TraceSum:
    """A_n by brute-force fiber counting, specialized minimal models included."""
    if cache is not None:
        hit = cache.get(curve, n)
        if hit is not None:
            return TraceSum(n, int(hit.sum()), hit)
    per_fiber = fiber_traces(curve, n)
    if cache is not None:
        cache.put(curve, n, per_fiber)
    return TraceSum(n, int(per_fiber.sum()), per_fiber)


# q^(2D) kernel operations buys the largest acceptance case (q = 7, D = 6,
# about 1.4e10) with margin; anything past this is not desk scale
WORK_LIMIT = 5 * 10**10


def _check_supported(curve: Curve) -> int:
    if curve.is_isotrivial():
        raise UnsupportedCurveError(
            "isotrivial curve (constant j-invariant) unsupported"
        )
    D = localred.conductor_degree(curve) - 4
    if D > 0 and curve.q ** (2 * D) > WORK_LIMIT:
        raise UnsupportedCurveError(
            f"L-degree {D} over F_{curve.q} needs about {curve.q ** (2 * D):.0e} "
            "point-counting operations; beyond desk scale"
        )
    if curve.q**max(D, 1) > COUNT_TABLE_LIMIT:
        raise UnsupportedCurveError(
            f"trace sums at level {D} over F_{curve.q} need tables past the "
            f"{COUNT_TABLE_LIMIT} limit; beyond desk scale"
        )
    return D


def assemble_L_exp(curve: Curve, cache=None) -> LSeries:
    """L(T) = exp(sum_{n<=D} A_n T^n / n) truncated at T^D, exactly."""
    D = _check_supported(curve)
    A = [trace_sum(curve, n, cache).total for n in range(1, D + 1)]
    coeffs = [Fraction(1)]
    for k in range(1, D + 1):
        acc = sum(A[m - 1] * coeffs[k - m] for m in range(1, k + 1))
        coeffs.append(Fraction(acc, k))
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise InternalCheckError(
                f"non-integer L coefficient {c}: fiber counting is inconsistent"
            )
        out.append(int(c))
    return _finalize(tuple(out), curve.q)


def _mul_trunc(acc: list[int], fac: list[int], D: int) -> list[int]:
    out = [0] * (D + 1)
    for i, ai in enumerate(acc):
        if ai:
            top = min(len(fac), D + 1 - i)
            for j in range(top):
                if fac[j]:
                    out[i + j] += ai * fac[j]
    return out


def _pow_trunc(fac: list[int], e: int, D: int) -> list[int]:
    out = [1] + [0] * D
    base = list(fac)
    while e:
        if e & 1:
            out = _mul_trunc(out, base, D)
        base = _mul_trunc(base, base, D)
        e >>= 1
    return out


def _divisors(m: int):
    return [d for d in range(1, m + 1) if m % d == 0]


def assemble_L_euler(curve: Curve) -> LSeries:
    """L(T) from the truncated Euler product, independent of trace_sum.

    Good places are walked as Frobenius orbits of field elements; bad and
    rescaled places contribute their classified local factors.
    """
    D = _check_supported(curve)
    if D == 0:
        return _finalize((1,), curve.q)
    den = [1] + [0] * D  # accumulates prod P_v(T^{deg v}) mod T^{D+1}
    local = localred.all_local_data(curve)
    delta_coeffs = list(curve.delta.coeffs)
    for place, data in local.items():
        if place.degree > D:
            continue
        fac_x = localred.euler_factor(data, curve)
        fac_t = [0] * (place.degree * (len(fac_x) - 1) + 1)
        for i, c in enumerate(fac_x):
            fac_t[i * place.degree] = c
        den = _mul_trunc(den, fac_t, D)
    for m in range(1, D + 1):
        tower = build_tower(curve.spec, m)
        tower.ensure_tables()
        frob = tower.tables["frob"]
        idx = tower.varray()
        # exact-degree-m elements: not fixed by any proper Frobenius power
        keep = np.ones(tower.Q, dtype=bool)
        power = idx
        for d in range(1, m):
            power = frob[power]
            if m % d == 0:
                keep &= power != idx
        # orbit representatives: minimal index in the Frobenius orbit
        rep = idx.copy()
        cur = idx
        for _ in range(m - 1):
            cur = frob[cur]
            rep = np.minimum(rep, cur)
        mask = keep & (rep == idx)
        # scan places (roots of Delta) already contributed above
        mask &= tower.veval_poly(delta_coeffs) != 0
        if not mask.any():
            continue
        a_eval = tower.veval_poly(list(curve.a.coeffs))[mask]
        b_eval = tower.veval_poly(list(curve.b.coeffs))[mask]
        traces = -counting.char_sums(tower, a_eval, b_eval)
        nv = tower.Q
        vals, counts = np.unique(traces, return_counts=True)
        for a_v, cnt in zip(vals, counts):
            fac_t = [0] * (2 * m + 1)
            fac_t[0] = 1
            fac_t[m] = -int(a_v)
            fac_t[2 * m] = nv
            den = _mul_trunc(den, _pow_trunc(fac_t, int(cnt), D), D)
    # L = 1/den as a power series; the truncation is exact for deg <= D
    ell = [1] + [0] * D
    for k in range(1, D + 1):
        ell[k] = -sum(den[j] * ell[k - j] for j in range(1, k + 1))
    return _finalize(tuple(ell), curve.q)


def _finalize(coeffs: tuple[int, ...], q: int) -> LSeries:
    if coeffs[0] != 1:
        raise InternalCheckError("L(0) != 1")
    D = len(coeffs) - 1
    if D == 0:
        return LSeries(q, 0, coeffs, 1, 0, Fraction(1))
    lead = coeffs[D]
    if lead == q**D:
        eps = 1
    elif lead == -(q**D):
        eps = -1
    else:
        raise InternalCheckError(
            f"functional equation broken: top coefficient {lead} != +-q^D"
        )
    for i in range(D // 2 + 1):
        if coeffs[D - i] != eps * q ** (D - 2 * i) * coeffs[i]:
            raise InternalCheckError(
                f"functional equation broken at coefficient {i}"
            )
    r_an, leading = rank_and_leading(coeffs, q)
    if (eps == -1) != (r_an % 2 == 1):
        raise InternalCheckError("sign of functional equation contradicts r_an parity")
    return LSeries(q, D, coeffs, eps, r_an, leading)


def rank_and_leading(coeffs, q: int) -> tuple[int, Fraction]:
    """Multiplicity of T = 1/q in L and the exact cofactor value M(1/q).

    Division by (1 - qT) is exact integer arithmetic, repeated while the
    remainder vanishes.  The (s-1)^r normalization of the leading value
    differs from this one by the symbolic factor (log q)^r, which reports
    carry as an exponent, never as a float.
    """
    cur = list(coeffs)
    r = 0
    while True:
        m = []
        acc = 0
        for c in cur:
            acc = c + q * acc
            m.append(acc)
        if m[-1] != 0:  # remainder: (1 - qT) does not divide
            break
        cur = m[:-1]
        if not cur:
            cur = [0]
            break
        r += 1
    leading = sum(Fraction(c, q**i) for i, c in enumerate(cur))
    if leading == 0:
        raise InternalCheckError("leading coefficient computed as zero")
    return r, leading


def compute_lseries(curve: Curve, cache=None) -> LSeries:
    """Both assembly routes, cross-checked coefficientwise; returns the result."""
    by_exp = assemble_L_exp(curve, cache)
    by_euler = assemble_L_euler(curve)
    if by_exp.coeffs != by_euler.coeffs:
        raise InternalCheckError(
            "L-function mismatch between fiber counting and the Euler product: "
            f"{by_exp.coeffs} vs {by_euler.coeffs}"
        )
    return by_exp
