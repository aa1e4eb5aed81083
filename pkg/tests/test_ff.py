import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffbsd.ff import (
    ExtFieldElement,
    FieldElement,
    FieldSpec,
    Fq,
    build_tower,
    frobenius,
    quadratic_character,
)


def test_fieldspec_rejects_small_characteristic():
    for p in (2, 3):
        with pytest.raises(ValueError, match="characteristic"):
            FieldSpec(p)
    with pytest.raises(ValueError, match="prime"):
        FieldSpec(15)
    with pytest.raises(ValueError):
        FieldSpec(5, 0)


def test_from_q():
    assert FieldSpec.from_q(25) == FieldSpec(5, 2)
    assert FieldSpec.from_q(7) == FieldSpec(7, 1)
    with pytest.raises(ValueError):
        FieldSpec.from_q(10)


def test_base_modulus_deterministic():
    a = FieldSpec(5, 2)
    b = FieldSpec(5, 2)
    assert a.base_modulus == b.base_modulus
    # degree-2 modulus is the first irreducible in constant-fastest order
    assert a.base_modulus == (2, 0, 1)  # x^2 + 2 over F_5


def test_tower_identity_extension():
    # m_1 = u: the degree-1 "extension" is F_q itself
    ext = build_tower(FieldSpec(5), 1)
    assert ext.modulus == (0, 1)
    assert ext.Q == 5


def test_tower_determinism():
    m_a = build_tower(FieldSpec(5), 3).modulus
    m_b = build_tower(FieldSpec(5), 3).modulus
    assert m_a == m_b


def test_irreducible_quadratic_count():
    # (25 - 5)/2 = 10 monic irreducible quadratics over F_5
    from ffbsd.ff import _is_irreducible_over_fq

    fq = Fq.from_spec(FieldSpec(5))
    count = sum(
        _is_irreducible_over_fq(fq, [k % 5, k // 5, 1]) for k in range(25)
    )
    assert count == 10


def test_base_field_arithmetic_examples():
    fq = Fq.from_spec(FieldSpec(5))
    assert fq.add(2, 4) == 1
    assert fq.inv(3) == 2
    with pytest.raises(ZeroDivisionError):
        fq.inv(0)


def test_ext_inversion_of_zero():
    ext = build_tower(FieldSpec(5), 2)
    with pytest.raises(ZeroDivisionError):
        ext.inv(0)


@pytest.mark.parametrize("p,n", [(5, 2), (5, 3), (7, 2), (13, 2)])
def test_lagrange(p, n):
    ext = build_tower(FieldSpec(p), n)
    for x in (1, 2, ext.Q // 2, ext.Q - 1):
        assert ext.pow(x, ext.Q - 1) == 1


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([5, 7, 13]), st.integers(1, 4), st.data())
def test_field_axioms(p, n, data):
    if p == 13 and n > 3:
        n = 3  # keep 13^4 out of the hot loop
    ext = build_tower(FieldSpec(p), n)
    x = data.draw(st.integers(0, ext.Q - 1))
    y = data.draw(st.integers(0, ext.Q - 1))
    z = data.draw(st.integers(0, ext.Q - 1))
    assert ext.mul(ext.mul(x, y), z) == ext.mul(x, ext.mul(y, z))
    assert ext.add(ext.add(x, y), z) == ext.add(x, ext.add(y, z))
    assert ext.mul(x, ext.add(y, z)) == ext.add(ext.mul(x, y), ext.mul(x, z))
    assert ext.add(x, ext.neg(x)) == 0
    if x:
        assert ext.mul(x, ext.inv(x)) == 1


def test_quadratic_character_f5():
    ext = build_tower(FieldSpec(5), 1)
    # squares mod 5 are {0, 1, 4}, computed here by exhaustive squaring
    squares = {ext.mul(x, x) for x in range(5)}
    assert squares == {0, 1, 4}
    assert ext.char(4) == 1
    assert ext.char(0) == 0
    assert ext.char(2) == -1
    assert [ext.char(x) for x in range(5)] == [0, 1, -1, -1, 1]


@pytest.mark.parametrize("p,n", [(5, 1), (5, 2), (5, 3), (5, 4), (7, 2), (13, 1), (13, 2)])
def test_character_exhaustive(p, n):
    ext = build_tower(FieldSpec(p), n)
    if ext.Q > 625:
        pytest.skip("exhaustive bound is q^n <= 625")
    chars = [ext.char(x) for x in range(ext.Q)]
    # against the defining exponentiation
    for x in range(ext.Q):
        expect = 0 if x == 0 else (1 if ext.pow(x, (ext.Q - 1) // 2) == 1 else -1)
        assert chars[x] == expect
    # multiplicative and sums to zero
    assert sum(chars) == 0
    for x in range(1, ext.Q):
        for y in range(1, ext.Q, max(1, ext.Q // 23)):
            assert ext.char(ext.mul(x, y)) == chars[x] * chars[y]


def test_character_table_vs_pow_path(monkeypatch):
    # force the exponentiation path and compare with the table path
    ext = build_tower(FieldSpec(7), 2)
    ext.ensure_tables()
    table = [ext.char(x) for x in range(ext.Q)]
    by_pow = [
        0 if x == 0 else (1 if ext.pow(x, ext.M // 2) == 1 else -1)
        for x in range(ext.Q)
    ]
    assert table == by_pow


def test_frobenius_fixes_base_and_has_order_n():
    ext = build_tower(FieldSpec(5), 2)
    for a in range(5):
        assert ext.frobenius(a) == a
    for a in range(ext.Q):
        assert ext.frobenius(ext.frobenius(a)) == a
    # frobenius(u) is the other root of m_2, found by exhaustion
    u = ext.u
    roots = ext.roots_of(list(ext.modulus))
    assert u in roots and len(roots) == 2
    other = next(r for r in roots if r != u)
    assert ext.frobenius(u) == other


def test_zech_table_consistency():
    ext = build_tower(FieldSpec(5), 2)
    tab = ext.ensure_tables()
    g = tab["generator"]
    for d in range(ext.M):
        lhs = ext.add(ext.pow(g, d), 1)
        z = int(tab["zech"][d])
        rhs = 0 if z == ext.M else ext.pow(g, z)
        assert lhs == rhs


def test_element_wrappers():
    spec = FieldSpec(5)
    fq = Fq.from_spec(spec)
    a = FieldElement(fq, 2)
    b = FieldElement(fq, 4)
    assert (a + b).idx == 1
    assert (a * b).idx == 3
    assert (a / b) * b == a
    assert quadratic_character(b) == 1
    assert quadratic_character(FieldElement(fq, 0)) == 0
    ext = build_tower(spec, 2)
    x = ExtFieldElement(ext, 7)
    assert frobenius(frobenius(x)) == x
    assert (x - x).idx == 0
    assert x**(ext.Q - 1) == ExtFieldElement(ext, 1)
    assert quadratic_character(x) in (-1, 1)
    assert len(x.coefficients) == 2


def test_roots_sorted_and_deterministic():
    ext = build_tower(FieldSpec(5), 2)
    # t^2 + 2 = m_2 has two roots; least one is the canonical choice
    r1 = ext.roots_of([2, 0, 1])
    r2 = ext.roots_of([2, 0, 1])
    assert r1 == r2 == tuple(sorted(r1))
