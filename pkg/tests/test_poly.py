import itertools
import random

import pytest
from hypothesis import given, strategies as st

from quadapprox.errors import ParseError
from quadapprox.poly import (
    IntPolynomial,
    content_and_primitive,
    discriminant,
    exact_divides,
    is_irreducible,
    mignotte_bound,
    nontrivial_factor,
    parse_poly,
    poly_height,
    resultant,
    sylvester_matrix,
)

coeff_lists = st.lists(st.integers(-6, 6), min_size=2, max_size=5).filter(lambda c: c[-1] != 0)


def P(text):
    return parse_poly(text)


@pytest.mark.parametrize("text,h", [("X^2+1", 1), ("3X^2-5X+2", 5), ("X^4-X-1", 1)])
def test_height(text, h):
    assert poly_height(P(text)) == h


def test_canonical_form_strips_trailing_zeros():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial([0, 0]).is_zero()
    assert IntPolynomial([0]).degree == -1


def test_parse_forms_agree():
    assert P("[-1,-1,0,0,1]") == P("X^4 - X - 1") == P("X**4-1*X-1")
    assert P("3*X^2") == IntPolynomial([0, 0, 3])
    assert str(P("X^4-X-1")) == "X^4 - X - 1"


@pytest.mark.parametrize("bad", ["", "X^", "[1,2", "X^2 X", "2+"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad)


def test_resultant_examples():
    assert resultant(P("X-3"), P("X^2+1")) == 10
    assert resultant(P("X^2-2"), P("X^2-2")) == 0
    assert resultant(P("X^4-X-1"), P("X^2+1")) == 1


def test_resultant_against_relation():
    # Res(f, g) = lc(f)^deg g * prod g(roots of f); for f = X - a it is g(a)
    for a in range(-5, 6):
        g = P("2X^3 - X + 7")
        assert resultant(IntPolynomial([-a, 1]), g) == g(a)


@given(coeff_lists, coeff_lists)
def test_resultant_antisymmetry(f, g):
    f, g = IntPolynomial(f), IntPolynomial(g)
    sign = (-1) ** (f.degree * g.degree)
    assert resultant(f, g) == sign * resultant(g, f)


def test_sylvester_shape():
    M = sylvester_matrix(P("X^4-X-1"), P("X^2+1"))
    assert len(M) == 6 and all(len(r) == 6 for r in M)


@pytest.mark.parametrize("text,d", [("X^2+1", -4), ("2X^2+X+1", -7), ("X^2-X-1", 5), ("X^4+2X^2+2", 512)])
def test_discriminant(text, d):
    assert discriminant(P(text)) == d


@pytest.mark.parametrize("text,expected", [
    ("2X^2+4", (2, "X^2 + 2")),
    ("-X^2-1", (1, "X^2 + 1")),
    ("6X^3-9X", (3, "2*X^3 - 3*X")),
])
def test_content(text, expected):
    c, prim = content_and_primitive(P(text))
    assert (c, str(prim)) == expected


@pytest.mark.parametrize("text,irr", [
    ("X^2+1", True), ("X^4+2X^2+1", False), ("X^4-X-1", True), ("X^4+4", False),
    ("X^4+1", True), ("6X^4+5X^3+7X^2+5X+1", False), ("X^5-X-1", True), ("X^6+X^3+1", True),
    ("X^4-10X^2+1", True), ("X^8+1", True),
])
def test_irreducible_examples(text, irr):
    assert is_irreducible(P(text)) is irr


def test_factor_is_a_real_factor():
    for text in ["X^4+4", "6X^4+5X^3+7X^2+5X+1", "X^4+2X^2+1", "X^6-1", "X^4-5X^2+6"]:
        Q = P(text)
        g = nontrivial_factor(Q)
        assert g is not None and 1 <= g.degree < Q.degree and exact_divides(g, Q)


def _divisors(n):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _brute_force_reducible(Q: IntPolynomial) -> bool:
    """Search every integer factor of degree <= deg/2 inside the Mignotte box."""
    d = Q.degree
    if Q[0] == 0:
        return d > 1
    for k in range(1, d // 2 + 1):
        B = mignotte_bound(Q, k)
        for lead in _divisors(Q.lc):
            for const in _divisors(Q[0]):
                for sign in (1, -1):
                    for mid in itertools.product(range(-B, B + 1), repeat=k - 1):
                        g = IntPolynomial([sign * const, *mid, lead])
                        if exact_divides(g, Q):
                            return True
    return False


def test_irreducibility_matches_brute_force():
    rng = random.Random(7)
    checked = 0
    while checked < 120:
        d = rng.randint(2, 4)
        c = [rng.randint(-3, 3) for _ in range(d)] + [rng.randint(1, 3)]
        Q = content_and_primitive(IntPolynomial(c))[1]
        if Q.degree != d:
            continue
        assert is_irreducible(Q) is (not _brute_force_reducible(Q)), str(Q)
        checked += 1


def test_irreducibility_products_are_caught():
    rng = random.Random(11)
    for _ in range(40):
        a = IntPolynomial([rng.randint(-4, 4) for _ in range(rng.randint(1, 2))] + [rng.randint(1, 3)])
        b = IntPolynomial([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [rng.randint(1, 3)])
        prod = content_and_primitive(a * b)[1]
        assert not is_irreducible(prod)


@given(coeff_lists)
def test_height_symmetries(c):
    Q = IntPolynomial(c)
    neg = IntPolynomial([x * (-1) ** i for i, x in enumerate(c)])
    assert poly_height(neg) == poly_height(Q)
    if c[0] != 0:
        assert poly_height(Q.reversed()) == poly_height(Q)
