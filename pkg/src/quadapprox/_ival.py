"""Small helpers around mpmath's interval context.

Certified real intervals throughout the package are ``mpmath.iv.mpf``
values; complex enclosures are ``mpmath.iv.mpc`` rectangles.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction

from mpmath import iv, mp, mpf
from mpmath.libmp import from_man_exp


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, bc = raw
    if man == 0:
        if bc == 0 and exp == 0:
            return Fraction(0)
        raise OverflowError("non-finite interval endpoint")
    v = int(man) << exp if exp >= 0 else Fraction(int(man), 1 << -exp)
    return -Fraction(v) if sign else Fraction(v)


def mpf_to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raw = getattr(x, "_mpf_", None)
    if raw is None:
        # mpf() rounds to the ambient precision; only fine for plain floats
        raw = mpf(x)._mpf_
    return _raw_to_fraction(raw)


def dyadic_to_mpf(q: Fraction) -> mpf:
    """Exact mpf for a rational whose denominator is a power of two."""
    q = Fraction(q)
    k = q.denominator.bit_length() - 1
    if q.denominator != 1 << k:
        raise ValueError(f"{q} is not dyadic")
    return mp.make_mpf(from_man_exp(q.numerator, -k))


def frac_lo(x) -> Fraction:
    return _raw_to_fraction(x._mpi_[0])


def frac_hi(x) -> Fraction:
    return _raw_to_fraction(x._mpi_[1])


def lo(x):
    return mp.make_mpf(x._mpi_[0])


def hi(x):
    return mp.make_mpf(x._mpi_[1])


def width(x) -> Fraction:
    return frac_hi(x) - frac_lo(x)


def exact_interval(q: Fraction):
    """Tightest interval at the current iv precision around a rational."""
    q = Fraction(q)
    return iv.mpf(q.numerator) / q.denominator


def hull(*xs):
    a = min(frac_lo(x) for x in xs)
    b = max(frac_hi(x) for x in xs)
    return _iv_from_fracs(a, b)


def _iv_from_fracs(a: Fraction, b: Fraction):
    return iv.mpf([exact_interval(a).a, exact_interval(b).b])


def iv_from_fractions(a: Fraction, b: Fraction):
    return _iv_from_fracs(Fraction(a), Fraction(b))


def contains(x, value) -> bool:
    v = Fraction(value)
    return frac_lo(x) <= v <= frac_hi(x)


def overlaps(x, y) -> bool:
    return frac_lo(x) <= frac_hi(y) and frac_lo(y) <= frac_hi(x)


def certainly_less(x, y) -> bool:
    return frac_hi(x) < frac_lo(y)


def _fmt(q: Fraction, digits: int, rounding) -> str:
    if q == 0:
        return "0"
    mag = math.floor(math.log10(abs(q.numerator)) - math.log10(q.denominator))
    with localcontext() as ctx:
        ctx.prec = digits + 10
        scale = digits - 1 - mag
        scaled = q * Fraction(10) ** scale
        n = math.floor(scaled) if rounding == ROUND_FLOOR else math.ceil(scaled)
        d = Decimal(n).scaleb(-scale)
        return format(d.normalize(), "g") if abs(mag) < 25 else format(d, "E")


def fmt_lo(q, digits: int = 20) -> str:
    return _fmt(Fraction(q), digits, ROUND_FLOOR)


def fmt_hi(q, digits: int = 20) -> str:
    return _fmt(Fraction(q), digits, ROUND_CEILING)


def fmt_interval(x, digits: int = 20) -> list[str]:
    """Outward-rounded decimal endpoints ``[lo, hi]``."""
    return [fmt_lo(frac_lo(x), digits), fmt_hi(frac_hi(x), digits)]


def parse_interval(pair) -> tuple[Fraction, Fraction]:
    return Fraction(Decimal(pair[0])), Fraction(Decimal(pair[1]))


def round_down(q: Fraction, digits: int = 12) -> Fraction:
    """Largest rational with ``digits`` significant decimals not exceeding q (q > 0)."""
    if q <= 0:
        raise ValueError("round_down expects a positive value")
    mag = math.floor(math.log10(q.numerator) - math.log10(q.denominator))
    scale = Fraction(10) ** (digits - 1 - mag)
    return Fraction(math.floor(q * scale)) / scale


def midpoint_float(x) -> float:
    return float((frac_lo(x) + frac_hi(x)) / 2)


# mpmath contexts are process-global; worker threads take turns
_PREC_LOCK = threading.RLock()


@contextmanager
def ivprec(bits: int):
    """Temporarily raise the iv context precision (never lowers it)."""
    with _PREC_LOCK:
        old = iv.prec
        iv.prec = max(int(bits), old)
        try:
            yield
        finally:
            iv.prec = old


@contextmanager
def mpprec(bits: int):
    """Thread-safe ``mp.workprec``."""
    with _PREC_LOCK, mp.workprec(int(bits)):
        yield
