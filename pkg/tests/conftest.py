import random

import pytest

from ffbsd.curve import Curve, KPoint, UnsupportedCurveError
from ffbsd.ff import FieldSpec, Fq
from ffbsd.funcfield import Place, Poly, RationalFunction


@pytest.fixture(scope="session")
def spec5():
    return FieldSpec(5)


@pytest.fixture(scope="session")
def fq5(spec5):
    return Fq.from_spec(spec5)


@pytest.fixture(scope="session")
def t5(fq5):
    return Poly.gen(fq5)


def make_e1(fq):
    """y^2 = x^3 + x + t."""
    return Curve(Poly.one(fq), Poly.gen(fq))


def make_e2(fq):
    """y^2 = x^3 - t x + t."""
    t = Poly.gen(fq)
    return Curve(-t, t)


def make_e3(fq):
    """y^2 = x^3 + t x (isotrivial; local data only)."""
    return Curve(Poly.gen(fq), Poly.zero(fq))


def make_legendre(fq):
    """Short form of y^2 = x(x-1)(x-t), with its 2-torsion points."""
    t = Poly.gen(fq)
    one = Poly.one(fq)
    inv3 = fq.inv(fq.from_int(3))
    c2, c1 = -(one + t), t
    a = c1 - (c2 * c2).scale(inv3)
    b = (c2**3).scale(fq.mul(2, fq.inv(fq.from_int(27)))) - (c2 * c1).scale(inv3)
    curve = Curve(a, b)
    shift = RationalFunction(c2.scale(inv3))
    zero = RationalFunction(Poly.zero(fq))
    torsion = [
        KPoint.affine(RationalFunction(root) + shift, zero)
        for root in (Poly.zero(fq), one, t)
    ]
    return curve, torsion


@pytest.fixture(scope="session")
def e1(fq5):
    return make_e1(fq5)


@pytest.fixture(scope="session")
def e2(fq5):
    return make_e2(fq5)


@pytest.fixture(scope="session")
def e3(fq5):
    return make_e3(fq5)


@pytest.fixture(scope="session")
def legendre(fq5):
    return make_legendre(fq5)


@pytest.fixture(scope="session")
def e2_point(fq5):
    one = RationalFunction(Poly.one(fq5))
    return KPoint.affine(one, one)


def random_curves(spec: FieldSpec, count: int, seed: int, max_coeff_deg: int = 3):
    """Seeded non-degenerate non-isotrivial draws with deg a, deg b bounded."""
    fq = Fq.from_spec(spec)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = Poly.from_ints(fq, [rng.randrange(spec.q) for _ in range(max_coeff_deg + 1)])
        b = Poly.from_ints(fq, [rng.randrange(spec.q) for _ in range(max_coeff_deg + 1)])
        try:
            c = Curve(a, b)
        except UnsupportedCurveError:
            continue
        if c.is_isotrivial():
            continue
        out.append(c)
    return out


def good_place_of_degree(curve, degree=1, skip=0):
    from ffbsd.funcfield import enumerate_places
    from ffbsd.localred import local_data

    seen = 0
    for v in enumerate_places(curve.spec, degree):
        if v.degree != degree:
            continue
        if local_data(curve, v).is_good:
            if seen == skip:
                return v
            seen += 1
    raise AssertionError("no good place found")
