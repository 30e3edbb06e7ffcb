"""Quartic CM-field detection and the applicability gate for the main bound.

A totally imaginary quartic K = Q(xi) is CM exactly when complex
conjugation restricts to an automorphism of K: the fixed field of that
automorphism is then a quadratic subfield F, and F is real under every
embedding because a quadratic field with one real embedding is totally
real.  So the test is "is conj(xi) a rational polynomial in xi", which
:func:`quadapprox.algebraic.conj_in_field` decides with exact
certification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import AlgebraicNumber, FieldElement, conj_in_field, minpoly_of_element
from .errors import DomainError, ReducibleError
from .poly import IntPolynomial, content_and_primitive, discriminant, format_poly, nontrivial_factor
from .roots import Signature, isolate_roots, signature

NOT_TOTALLY_IMAGINARY = "not_totally_imaginary"
CONJUGATE_NOT_IN_FIELD = "conjugate_not_in_field"
CM_CERTIFIED = "cm_certified"

APPLIES = "applies"
EXCLUDED_REAL = "excluded_real"
EXCLUDED_DEGREE = "excluded_degree"
EXCLUDED_QUARTIC_CM = "excluded_quartic_cm"
PRIOR_WORK_TOTALLY_COMPLEX = "prior_work_totally_complex"


@dataclass(frozen=True)
class CmVerdict:
    is_cm: bool
    reason: str
    f: IntPolynomial
    r: tuple[Fraction, ...] | None = None
    trace_minpoly: IntPolynomial | None = None  # minpoly of xi + conj(xi)
    norm_minpoly: IntPolynomial | None = None  # minpoly of xi * conj(xi)

    def to_dict(self) -> dict:
        out = {"is_cm": self.is_cm, "reason": self.reason, "f": list(self.f.coeffs)}
        if self.r is not None:
            out["r"] = format_poly(self.r)
            out["r_coeffs"] = [str(c) for c in self.r]
            out["trace_minpoly"] = list(self.trace_minpoly.coeffs)
            out["norm_minpoly"] = list(self.norm_minpoly.coeffs)
        else:
            out["r"] = None
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CmVerdict":
        r = data.get("r_coeffs")
        return cls(
            is_cm=bool(data["is_cm"]),
            reason=data["reason"],
            f=IntPolynomial(data["f"]),
            r=tuple(Fraction(c) for c in r) if r is not None else None,
            trace_minpoly=IntPolynomial(data["trace_minpoly"]) if r is not None else None,
            norm_minpoly=IntPolynomial(data["norm_minpoly"]) if r is not None else None,
        )


def _all_real_roots(P: IntPolynomial) -> bool:
    if P.degree <= 1:
        return True
    if P.degree == 2:
        return discriminant(P) > 0
    return signature(P).r1 == P.degree


def is_quartic_cm(f: IntPolynomial) -> CmVerdict:
    if f.degree != 4:
        raise DomainError(f"quartic CM test needs degree 4, got {f.degree}")
    f = content_and_primitive(f)[1]
    factor = nontrivial_factor(f)
    if factor is not None:
        raise ReducibleError(f, factor)
    if signature(f) != Signature(0, 2):
        return CmVerdict(False, NOT_TOTALLY_IMAGINARY, f)
    xi = AlgebraicNumber(f, 0)
    r = conj_in_field(xi)
    if r is None:
        return CmVerdict(False, CONJUGATE_NOT_IN_FIELD, f)
    g = FieldElement.generator(xi)
    gbar = FieldElement(xi, r)
    tr = minpoly_of_element(g + gbar)
    nm = minpoly_of_element(g * gbar)
    # the fixed field must be totally real of degree <= 2
    assert tr.degree <= 2 and nm.degree <= 2
    assert _all_real_roots(tr) and _all_real_roots(nm)
    return CmVerdict(True, CM_CERTIFIED, f, r, tr, nm)


@dataclass(frozen=True)
class Applicability:
    status: str
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"status": self.status, "flags": list(self.flags)}

    @classmethod
    def from_dict(cls, data: dict) -> "Applicability":
        return cls(data["status"], tuple(data["flags"]))


def theorem_applicability(xi: AlgebraicNumber) -> Applicability:
    """Does the improved exponent apply to xi?  Flags list every reason found."""
    flags = []
    d = xi.degree
    if xi.is_real():
        flags.append(EXCLUDED_REAL)
    if d < 4:
        flags.append(EXCLUDED_DEGREE)
    if d == 4 and not xi.is_real() and is_quartic_cm(xi.minpoly).is_cm:
        flags.append(EXCLUDED_QUARTIC_CM)
    if flags:
        return Applicability(flags[0], tuple(flags))
    if d % 2 == 0 and sum(1 for k in isolate_roots(xi.minpoly) if k.is_real) == 0:
        flags.append(PRIOR_WORK_TOTALLY_COMPLEX)
    return Applicability(APPLIES, tuple(flags))
