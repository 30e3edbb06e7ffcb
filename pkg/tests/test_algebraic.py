import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from quadapprox._ival import frac_hi, frac_lo, ivprec, mpf_to_fraction, overlaps
from quadapprox.algebraic import (
    AlgebraicNumber,
    FieldElement,
    conj_in_field,
    distance,
    element_arith,
    height_report,
    minpoly_of_element,
    weil_height,
    weil_height_poly,
)
from quadapprox.errors import DomainError, ParseError, ReducibleError
from quadapprox.poly import IntPolynomial, is_irreducible, parse_poly


def alg(text):
    return AlgebraicNumber.parse(text)


def test_parse_algebraic():
    xi = alg("X^4-X-1@2")
    assert abs(xi.approx() - complex(-0.2481, 1.0340)) < 1e-4
    assert abs(alg("[-1,-1,0,0,1]@0").approx() + 0.7245) < 1e-4
    with pytest.raises(ReducibleError) as err:
        alg("X^2+2X+1@0")
    assert "X + 1" in str(err.value)
    with pytest.raises(DomainError):
        alg("X^2+1@2")
    with pytest.raises(ParseError):
        alg("X^2+1")


@pytest.mark.parametrize("a,value", [
    (AlgebraicNumber.rational(2), math.log(2)),
    (AlgebraicNumber.rational(Fraction(1, 2)), math.log(2)),
    (AlgebraicNumber.parse("X^2-X-1@1"), 0.5 * math.log((1 + 5 ** 0.5) / 2)),
])
def test_weil_height_examples(a, value):
    h = weil_height(a, Fraction(1, 2**60))
    assert abs(float(frac_lo(h)) - value) < 1e-12
    assert frac_hi(h) - frac_lo(h) <= Fraction(1, 2**60)


def test_height_report_star():
    rep = height_report(AlgebraicNumber.rational(3))
    assert rep.naive_height == 3
    assert frac_lo(rep.weil_star) == frac_lo(rep.weil_height)
    rep = height_report(AlgebraicNumber.rational(2))
    assert frac_lo(rep.weil_star) == 1 == frac_hi(rep.weil_star)


def test_field_arithmetic():
    xi = alg("X^4-X-1@2")
    g = FieldElement.generator(xi)
    assert (g * g**3).rep == (1, 1)
    assert ((g + 1) - g).rep == (1,)
    assert g.inverse().rep == (-1, 0, 0, 1)
    assert (g * g.inverse()).is_one()
    assert element_arith("pow", g, 4) == g + 1
    assert element_arith("add", g, g) == 2 * g


@pytest.mark.parametrize("f,rep,expected", [
    ("X^4-2", [0, 0, 1], "X^2 - 2"),
    ("X^2-2", [1, 1], "X^2 - 2*X - 1"),
    ("X^4-X-1", [0, 1], "X^4 - X - 1"),
    ("X^5-X-1", [0, 1], "X^5 - X - 1"),
])
def test_minpoly_examples(f, rep, expected):
    base = AlgebraicNumber.from_poly(parse_poly(f), 0)
    assert str(minpoly_of_element(FieldElement(base, rep))) == expected


def test_minpoly_vanishes_and_is_irreducible():
    rng = random.Random(1)
    base = alg("X^4-X-1@2")
    for _ in range(20):
        u = FieldElement(base, [rng.randint(-3, 3) for _ in range(4)])
        if u.is_zero():
            continue
        m = minpoly_of_element(u)
        assert is_irreducible(m)
        acc = FieldElement(base, [])
        for c in reversed(m.coeffs):
            acc = acc * u + c
        assert acc.is_zero()


@pytest.mark.parametrize("f,expected", [
    ("X^4+X^3+X^2+X+1", (-1, -1, -1, -1)),
    ("X^4+1", (0, 0, 0, -1)),
    ("X^4+2X^2+2", None),
    ("X^4-X-1", None),
])
def test_conj_in_field_examples(f, expected):
    xi = AlgebraicNumber.from_poly(parse_poly(f), 1)
    r = conj_in_field(xi)
    assert (None if r is None else tuple(r)) == (None if expected is None else tuple(Fraction(c) for c in expected))


@pytest.mark.parametrize("f", ["X^6+X^5+X^4+X^3+X^2+X+1", "X^4-2X^2+9", "X^4+3X^2+1"])
def test_conjugation_is_an_involution(f):
    xi = AlgebraicNumber.from_poly(parse_poly(f), 1)
    r = conj_in_field(xi)
    assert r is not None
    rx = FieldElement(xi, r)
    # r(r(xi)) = xi, evaluated by Horner in K
    acc = FieldElement(xi, [])
    for c in reversed(r):
        acc = acc * rx + c
    assert acc == FieldElement.generator(xi)
    assert minpoly_of_element(rx) == xi.minpoly


def _oracle_xi():
    with mpmath.workdps(50):
        roots = mpmath.polyroots([1, 0, 0, -1, -1], extraprec=200)
        return next(r for r in roots if mpmath.im(r) > 0.5)


def test_distance_examples():
    xi = alg("X^4-X-1@2")
    i = alg("X^2+1@1")
    assert distance(i, i) == 0
    d = distance(xi, i)
    assert abs(float(frac_lo(d)) - 0.25044) < 1e-5
    omega = alg("X^2+X+1@1")
    d = distance(xi, omega)
    with mpmath.workdps(50):
        ref = mpf_to_fraction(abs(_oracle_xi() - mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)))
    slack = Fraction(1, 10**40)
    assert frac_lo(d) - slack <= ref <= frac_hi(d) + slack
    assert abs(float(frac_lo(d)) - 0.30274) < 1e-5


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60).filter(lambda q: q != 0)


@given(rationals, st.integers(1, 5))
def test_height_of_powers_rational(q, n):
    h = weil_height(AlgebraicNumber.rational(q))
    hn = weil_height(AlgebraicNumber.rational(q**n))
    with ivprec(128):
        assert overlaps(hn, n * h)
        assert overlaps(weil_height(AlgebraicNumber.rational(1 / q)), h)


def test_height_sandwich_random_elements():
    base = alg("X^4-X-1@2")
    rng = random.Random(4)
    for _ in range(15):
        x = FieldElement(base, [rng.randint(-4, 4) for _ in range(4)])
        if x.is_zero():
            continue
        h = weil_height_poly(minpoly_of_element(x))
        with ivprec(160):
            top = max((abs(e) for e in x.embeddings()), key=lambda z: float(z.b))
            log_top = mpmath.iv.log(top)
            assert frac_lo(h) <= frac_hi(log_top)
            assert frac_lo(log_top) / 4 <= frac_hi(h)


def test_to_algebraic_round_trip():
    xi = alg("X^4-X-1@2")
    a = (FieldElement.generator(xi) ** 2).to_algebraic()
    assert a.minpoly.degree == 4
    with mpmath.workdps(40):
        assert abs(a.approx() - complex(_oracle_xi() ** 2)) < 1e-12
