import pytest

from quadapprox.algebraic import AlgebraicNumber, FieldElement
from quadapprox.cmfield import (
    APPLIES,
    EXCLUDED_DEGREE,
    EXCLUDED_QUARTIC_CM,
    EXCLUDED_REAL,
    PRIOR_WORK_TOTALLY_COMPLEX,
    Applicability,
    CmVerdict,
    is_quartic_cm,
    theorem_applicability,
)
from quadapprox.errors import DomainError, ReducibleError
from quadapprox.poly import parse_poly
from quadapprox.roots import isolate_roots

FIXTURES = [
    ("X^4+X^3+X^2+X+1", True, "cm_certified", "-X^3 - X^2 - X - 1"),
    ("X^4+1", True, "cm_certified", "-X^3"),
    ("X^4-X-1", False, "not_totally_imaginary", None),
    ("X^4+2X^2+2", False, "conjugate_not_in_field", None),
]


@pytest.mark.parametrize("f,is_cm,reason,r", FIXTURES)
def test_fixtures(f, is_cm, reason, r):
    v = is_quartic_cm(parse_poly(f))
    assert (v.is_cm, v.reason) == (is_cm, reason)
    assert v.to_dict()["r"] == r


@pytest.mark.parametrize("f", ["X^4+X^3+X^2+X+1", "X^4+1", "X^4-2X^2+9", "X^4+3X^2+1", "X^4+5X^2+5"])
def test_certificate_properties(f):
    v = is_quartic_cm(parse_poly(f))
    assert v.is_cm
    assert v.trace_minpoly.degree <= 2 and v.norm_minpoly.degree <= 2
    assert 2 in (v.trace_minpoly.degree, v.norm_minpoly.degree)
    xi = AlgebraicNumber(v.f, 0)
    rx = FieldElement(xi, v.r)
    acc = FieldElement(xi, [])
    for c in reversed(v.r):
        acc = acc * rx + c
    assert acc == FieldElement.generator(xi)


@pytest.mark.parametrize("f", ["X^4+X^3+X^2+X+1", "X^4+2X^2+2", "X^4-2X^2+9"])
def test_verdict_independent_of_root(f):
    from quadapprox.algebraic import conj_in_field

    P = parse_poly(f)
    verdicts = {conj_in_field(AlgebraicNumber(P, k)) is not None for k in range(4)}
    assert len(verdicts) == 1


def test_errors():
    with pytest.raises(DomainError):
        is_quartic_cm(parse_poly("X^3-2"))
    with pytest.raises(ReducibleError):
        is_quartic_cm(parse_poly("X^4+4"))


def test_round_trip():
    for f, *_ in FIXTURES:
        v = is_quartic_cm(parse_poly(f))
        assert CmVerdict.from_dict(v.to_dict()) == v


def test_applicability():
    assert theorem_applicability(AlgebraicNumber.parse("X^4-X-1@2")).status == APPLIES
    cyclo = AlgebraicNumber.parse("X^4+X^3+X^2+X+1@1")
    assert theorem_applicability(cyclo).status == EXCLUDED_QUARTIC_CM
    a = theorem_applicability(AlgebraicNumber.parse("X^2-2@1"))
    assert a.status == EXCLUDED_REAL and EXCLUDED_DEGREE in a.flags
    a = theorem_applicability(AlgebraicNumber.parse("X^4+2X^2+2@1"))
    assert a.status == APPLIES and PRIOR_WORK_TOTALLY_COMPLEX in a.flags
    assert theorem_applicability(AlgebraicNumber.parse("X^3-2@1")).status == EXCLUDED_DEGREE
    assert Applicability.from_dict(a.to_dict()) == a
