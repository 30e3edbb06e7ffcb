import random
from fractions import Fraction

import pytest

from quadapprox.algebraic import AlgebraicNumber, FieldElement
from quadapprox.errors import DomainError
from quadapprox.muldep import (
    DependenceRelation,
    MulDepInstance,
    find_dependence_algebraic,
    find_dependence_rational,
    generated_degree,
    loxton_bound,
    parse_element,
    verify_dependence,
)


def test_loxton_examples():
    assert loxton_bound(MulDepInstance([2, 3], 1, [1, 1]), 1) == 11
    assert loxton_bound(MulDepInstance([2, 3, 5], 2, [2, 3, 5]), 2) == 309760
    a = loxton_bound(MulDepInstance([2, 3, 5], 2, [2, 3, 5]), 1)
    b = loxton_bound(MulDepInstance([2, 5, 3], 2, [2, 5, 3]), 1)
    assert a == b
    with pytest.raises(DomainError):
        loxton_bound(MulDepInstance([2, 3], 1, [1, 1]), 0)


def test_instance_invariants():
    with pytest.raises(DomainError):
        MulDepInstance([2], 1, [1])
    with pytest.raises(DomainError):
        MulDepInstance([2, 0], 1, [1, 1])
    with pytest.raises(DomainError):
        MulDepInstance([2, 3], 1, [1, Fraction(1, 2)])


def test_log_a_values_dominate():
    inst = MulDepInstance.build([Fraction(1, 3), -7, 2])
    assert inst.D == 1
    assert inst.logA[0] >= Fraction(1098612288668, 10**12)
    assert inst.logA[1] >= Fraction(1945910149055, 10**12)
    assert inst.logA[2] == 1


@pytest.mark.parametrize("q,expected", [
    ((2, 4), (2, -1)),
    ((2, 3), None),
    ((4, 8), (3, -2)),
    ((6, 10, 15), None),
    ((-1, 5), (2, 0)),
    ((-2, 4), (2, -1)),
])
def test_rational_examples(q, expected):
    rel = find_dependence_rational(q)
    if expected is None:
        assert rel is None
    else:
        assert rel.exponents == expected and rel.verified


def _brute_force_dependent(q, bound=6):
    import itertools

    for n in itertools.product(range(-bound, bound + 1), repeat=len(q)):
        if any(n) and verify_dependence(q, n):
            return True
    return False


def test_rational_completeness_small():
    rng = random.Random(8)
    pool = [Fraction(p, s) for p in (1, 2, 3, 4, 6, 8, 9, 12) for s in (1, 2, 3)] + [Fraction(-2), Fraction(-1)]
    for _ in range(60):
        q = rng.sample(pool, 3)
        rel = find_dependence_rational(q)
        if rel is not None:
            assert verify_dependence(q, rel.exponents)
        # small relations found by brute force must not be missed
        if _brute_force_dependent(q, 4):
            assert rel is not None


def test_verify_examples():
    assert verify_dependence([2, 4], [2, -1])
    assert not verify_dependence([2, 4], [1, 1])
    xi = AlgebraicNumber.parse("X^4-X-1@2")
    g = FieldElement.generator(xi)
    assert verify_dependence([g, g.inverse()], [1, 1])
    with pytest.raises(DomainError):
        verify_dependence([0, 2], [-1, 1])


def test_algebraic_examples():
    xi = AlgebraicNumber.parse("X^4-X-1@2")
    g = FieldElement.generator(xi)
    rel = find_dependence_algebraic([g, g**2, g**3], 5)
    n = rel.exponents
    assert n[0] + 2 * n[1] + 3 * n[2] == 0 and rel.verified
    assert find_dependence_algebraic([2, g], 1000) is None
    u = 1 + g
    assert find_dependence_algebraic([u, u**2, 3], 5).exponents == (2, -1, 0)


def test_algebraic_torsion():
    z = FieldElement.generator(AlgebraicNumber.parse("X^4+1@0"))
    rel = find_dependence_algebraic([z, 2], 50)
    assert rel.exponents == (8, 0)
    rel = find_dependence_algebraic([z * z + 1, 2, z], 50)
    assert verify_dependence([z * z + 1, 2, z], rel.exponents)


def test_generated_degree():
    xi = AlgebraicNumber.parse("X^4-2@3")
    g = FieldElement.generator(xi)
    assert generated_degree([g * g, 3]) == 2
    assert generated_degree([g]) == 4
    assert generated_degree([Fraction(2), 3]) == 1


def test_parse_element_and_round_trip():
    xi = AlgebraicNumber.parse("X^4-X-1@2")
    assert parse_element("-3/4") == Fraction(-3, 4)
    assert parse_element("1+2xi+xi^2", xi).rep == (1, 2, 1)
    assert parse_element("xi/2", xi).rep == (0, Fraction(1, 2))
    with pytest.raises(DomainError):
        parse_element("xi")
    rel = DependenceRelation((2, -1), True)
    assert DependenceRelation.from_dict(rel.to_dict()) == rel
