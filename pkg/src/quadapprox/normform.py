"""Exact norm forms and explicit Liouville-type constants.

Let xi be non-real of degree d with minimal polynomial f, and let
P = x2 X^2 + x1 X + x0 be the minimal polynomial of a quadratic complex
alpha with H = H(P).  The constants below come from this chain:

* Norm floor.  N(P(xi)) = prod_i P(xi_i) = Res(f, P) / lc(f)^2 and the
  resultant is a nonzero integer, so |N| >= |lc(f)|^-2.
* The xi factor.  |P(xi)| = x2 |xi - alpha| |xi - conj(alpha)|.  By the
  Cauchy bound |conj(alpha)| <= 1 + H / x2, hence
  |P(xi)| <= |xi - alpha| (x2 (1 + |xi|) + H) <= |xi - alpha| H (2 + |xi|).
  The same bound holds for |P(conj xi)| = |P(xi)|.
* The other conjugates.  |P(xi_i)| <= H F_i with F_i = 1 + |xi_i| + |xi_i|^2.

All conjugates:  |lc|^-2 <= |xi - alpha|^2 H^d (2 + |xi|)^2 prod F_i, so

    |xi - alpha| >= c1 H^(-d/2),
    c1 = 1 / (|lc| (2 + |xi|) sqrt(prod F_i)).

If some conjugate xi0 outside {xi, conj xi} has |P(xi0)| < |P(xi)|, that
factor is replaced by the xi bound.  Which conjugate plays xi0 is not
known in advance, so the smallest F_i is the one dropped:

    |xi - alpha| >= c2 H^(-d/3),
    c2 = (|lc|^2 (2 + |xi|)^3 prod F_i / min F_i)^(-1/3).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import iv

from ._ival import exact_interval, fmt_interval, frac_lo, ivprec, round_down
from .algebraic import AlgebraicNumber, conj_index, format_compact
from .errors import DomainError
from .poly import IntPolynomial, resultant

_BITS = 192


@dataclass(frozen=True)
class NormValue:
    value: Fraction
    resultant: int
    lead_power: int

    def __post_init__(self):
        assert self.value == Fraction(self.resultant, self.lead_power)

    def to_dict(self) -> dict:
        return {"value": str(self.value), "resultant": self.resultant, "lead_power": self.lead_power}

    @classmethod
    def from_dict(cls, data: dict) -> "NormValue":
        return cls(Fraction(data["value"]), int(data["resultant"]), int(data["lead_power"]))


def norm_of_poly_at(xi: AlgebraicNumber, P: IntPolynomial) -> NormValue:
    """Norm of P(xi) from Q(xi) down to Q, computed as Res(f, P) / lc(f)^deg P."""
    if P.is_zero():
        raise DomainError("norm of the zero polynomial")
    f = xi.minpoly
    res = resultant(f, P)
    lead = f.lc ** P.degree
    return NormValue(Fraction(res, lead), res, lead)


@dataclass(frozen=True)
class LiouvilleCertificate:
    c1: Fraction
    exponent: Fraction
    delta: int
    d: int
    f: IntPolynomial
    factor_bounds: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "c1": str(self.c1),
            "c1_decimal": float(self.c1),
            "exponent": str(self.exponent),
            "delta": self.delta,
            "d": self.d,
            "f": list(self.f.coeffs),
            "per_conjugate_bounds": [fmt_interval(b) for b in self.factor_bounds],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "LiouvilleCertificate":
        from ._ival import iv_from_fractions, parse_interval

        bounds = []
        with ivprec(_BITS):
            for pair in data["per_conjugate_bounds"]:
                bounds.append(iv_from_fractions(*parse_interval(pair)))
        return cls(
            c1=Fraction(data["c1"]),
            exponent=Fraction(data["exponent"]),
            delta=int(data["delta"]),
            d=int(data["d"]),
            f=IntPolynomial(data["f"]),
            factor_bounds=tuple(bounds),
        )


def _check(xi: AlgebraicNumber) -> None:
    if xi.is_real():
        raise DomainError("real xi needs the exponent d, not d/2; unsupported")
    if xi.degree < 3:
        raise DomainError("explicit constants need degree >= 3")


def conjugate_factors(xi: AlgebraicNumber):
    """(2 + |xi|) and the list of F_i = 1 + |xi_i| + |xi_i|^2 over the other conjugates."""
    disks = xi.conjugates()
    k = xi.index
    with ivprec(_BITS):
        mod_xi = abs(disks[k].box())
        own = 2 + mod_xi
        kbar = conj_index(disks, k)
        others = []
        for i, dk in enumerate(disks):
            if i not in (k, kbar):
                m = abs(dk.box())
                others.append(1 + m + m * m)
    return own, others


def liouville_c1_from_factors(lc: int, own, others) -> Fraction:
    """Certified rational lower bound of 1 / (|lc| own sqrt(prod others))."""
    with ivprec(_BITS):
        prod = iv.mpf(1)
        for F in others:
            prod *= F
        val = 1 / (abs(lc) * own * iv.sqrt(prod))
    return round_down(frac_lo(val))


def case2_c2_from_factors(lc: int, own, others) -> Fraction:
    with ivprec(_BITS):
        prod = iv.mpf(1)
        for F in others:
            prod *= F
        if others:
            # any F_j may be the dropped one, so divide by a lower bound of min F_j
            prod = prod / exact_interval(min(frac_lo(F) for F in others))
        val = (abs(lc) ** 2 * own ** 3 * prod) ** (iv.mpf(-1) / 3)
    return round_down(frac_lo(val))


def liouville_constant(xi: AlgebraicNumber) -> LiouvilleCertificate:
    _check(xi)
    own, others = conjugate_factors(xi)
    c1 = liouville_c1_from_factors(xi.minpoly.lc, own, others)
    return LiouvilleCertificate(
        c1=c1,
        exponent=Fraction(xi.degree, 2),
        delta=2,
        d=xi.degree,
        f=xi.minpoly,
        factor_bounds=(own, own, *others),
    )


def case2_constant(xi: AlgebraicNumber) -> Fraction:
    _check(xi)
    own, others = conjugate_factors(xi)
    return case2_c2_from_factors(xi.minpoly.lc, own, others)


def describe(xi: AlgebraicNumber) -> dict:
    cert = liouville_constant(xi)
    out = cert.to_dict()
    out["xi"] = str(xi)
    out["f_text"] = format_compact(xi.minpoly)
    c2 = case2_constant(xi)
    out["c2"] = str(c2)
    out["c2_decimal"] = float(c2)
    out["case2_exponent"] = str(Fraction(xi.degree, 3))
    return out
