"""Certified values of Lambda = a_1^b_1 ... a_n^b_n a_(n+1) - 1 and the
Baker-type lower-bound shape

    log|Lambda| >= -c * h*(a_1) ... h*(a_(n+1)) * log*(B / h*(a_(n+1)))

with h* = max(h, 1), log* = max(log, 1) and B = max |b_i|.  The constant c
is a parameter (default 1); the sweep reports the smallest c each input
would need.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from mpmath import iv

from ._ival import fmt_interval, frac_lo, iv_from_fractions, ivprec, midpoint_float, parse_interval, width
from .algebraic import FieldElement, minpoly_of_element, weil_height_poly
from .errors import DomainError, PrecisionError
from .muldep import verify_dependence
from .roots import PRECISION_CAP_BITS

Element = int | Fraction | FieldElement


@dataclass(frozen=True)
class LinFormInput:
    alphas: tuple
    b: tuple[int, ...]
    D: int = 1
    c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(a if isinstance(a, FieldElement) else Fraction(a) for a in self.alphas))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.alphas) != len(self.b) + 1:
            raise DomainError("need n + 1 bases for n exponents")
        if not self.b:
            raise DomainError("need at least one exponent")
        if any(x == 0 for x in self.b):
            raise DomainError("exponents must be nonzero")
        if any((a.is_zero() if isinstance(a, FieldElement) else a == 0) for a in self.alphas):
            raise DomainError("bases must be nonzero")
        if self.c <= 0:
            raise DomainError("constant c must be positive")

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def B(self) -> int:
        return max(abs(x) for x in self.b)


@dataclass(frozen=True)
class LambdaValue:
    abs_value: object  # interval for |Lambda|
    log_abs: object | None  # interval for log|Lambda|, None when Lambda = 0
    is_zero: bool
    bits: int

    def to_dict(self) -> dict:
        return {
            "abs": fmt_interval(self.abs_value),
            "log_abs": fmt_interval(self.log_abs) if self.log_abs is not None else None,
            "is_zero": self.is_zero,
            "bits": self.bits,
        }


def _log_parts(a: Element, bits: int):
    """(log|a|, arg a) as intervals at the current iv precision."""
    if isinstance(a, FieldElement):
        z = a.enclosure(a.base.disk(Fraction(1, 2 ** (bits + 8))))
        return iv.log(z.real * z.real + z.imag * z.imag) / 2, iv.atan2(z.imag, z.real)
    q = Fraction(a)
    mod = iv.log(iv.mpf(abs(q.numerator))) - iv.log(iv.mpf(q.denominator))
    return mod, (iv.pi if q < 0 else iv.mpf(0))


def _abs_lambda(inp: LinFormInput, bits: int):
    # |e^(R + i T) - 1|^2 = expm1(R)^2 + 4 e^R sin(T/2)^2, no cancellation
    R, T = _log_parts(inp.alphas[-1], bits)
    for a, e in zip(inp.alphas, inp.b):
        r, t = _log_parts(a, bits)
        R += e * r
        T += e * t
    em = iv.expm1(R)
    s = iv.sin(T / 2)
    sq = em * em + 4 * iv.exp(R) * s * s
    if frac_lo(sq) < 0:
        sq = iv.mpf([0, sq.b])
    return iv.sqrt(sq), sq


def lambda_value(inp: LinFormInput, tol=Fraction(1, 10**30)) -> LambdaValue:
    tol = Fraction(tol)
    bits = max(128, tol.denominator.bit_length() - tol.numerator.bit_length() + inp.B.bit_length() + 64)
    checked_zero = False
    while bits <= PRECISION_CAP_BITS:
        with ivprec(bits):
            val, sq = _abs_lambda(inp, bits)
            if frac_lo(val) == 0:
                if not checked_zero:
                    checked_zero = True
                    if verify_dependence(list(inp.alphas), list(inp.b) + [1]):
                        return LambdaValue(iv.mpf(0), None, True, bits)
            elif width(val) <= tol:
                return LambdaValue(val, iv.log(sq) / 2, False, bits)
        bits *= 2
    raise PrecisionError("|Lambda| could not be separated from zero within the precision cap")


def _height_star(a: Element):
    if isinstance(a, FieldElement):
        h = weil_height_poly(minpoly_of_element(a))
    else:
        q = Fraction(a)
        h = iv.log(iv.mpf(max(abs(q.numerator), q.denominator)))
    return max(midpoint_float(h), 1.0), h


def _log_star(x: float) -> float:
    return max(math.log(x), 1.0) if x > 0 else 1.0


def shape_factor(inp: LinFormInput) -> float:
    """The shape with c = 1."""
    with ivprec(128):
        stars = [_height_star(a)[0] for a in inp.alphas]
    return math.prod(stars) * _log_star(inp.B / stars[-1])


def baker_shape(inp: LinFormInput) -> float:
    return inp.c * shape_factor(inp)


@dataclass(frozen=True)
class SweepRow:
    B: int
    b: tuple[int, ...]
    log_lambda: object
    shape: float
    implied_c: float
    running_max: float = 0.0
    tail_max: float = 0.0

    def to_dict(self) -> dict:
        return {
            "B": self.B,
            "b": list(self.b),
            "log_lambda": fmt_interval(self.log_lambda),
            "shape": self.shape,
            "implied_c": self.implied_c,
            "running_max": self.running_max,
            "tail_max": self.tail_max,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SweepRow":
        with ivprec(128):
            log_lambda = iv_from_fractions(*parse_interval(data["log_lambda"]))
        return cls(int(data["B"]), tuple(data["b"]), log_lambda, float(data["shape"]),
                   float(data["implied_c"]), float(data["running_max"]), float(data["tail_max"]))


@dataclass
class SweepTable:
    rows: list[SweepRow] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def empirical_c(self) -> float | None:
        return self.rows[-1].running_max if self.rows else None

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "skipped": list(self.skipped), "empirical_c": self.empirical_c}

    @classmethod
    def from_dict(cls, data: dict) -> "SweepTable":
        return cls([SweepRow.from_dict(r) for r in data["rows"]], list(data["skipped"]))

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["B", "log_lambda_lo", "log_lambda_hi", "shape", "implied_c"])
        for r in self.rows:
            lo_, hi_ = fmt_interval(r.log_lambda)
            w.writerow([r.B, lo_, hi_, repr(r.shape), repr(r.implied_c)])
        return buf.getvalue()


def _evaluate(inp: LinFormInput, tol):
    lam = lambda_value(inp, tol)
    if lam.is_zero:
        return None
    unit_shape = shape_factor(inp)
    # smallest c consistent with the certified lower end of log|Lambda|
    implied = -float(frac_lo(lam.log_abs)) / unit_shape
    return SweepRow(inp.B, inp.b, lam.log_abs, inp.c * unit_shape, implied)


def minimal_c_sweep(family: Iterable[LinFormInput], threads: int = 1, tol=Fraction(1, 10**30)) -> SweepTable:
    members = list(family)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda x: _evaluate(x, tol), members))
    else:
        results = [_evaluate(x, tol) for x in members]
    table = SweepTable()
    kept = []
    for inp, row in zip(members, results):
        if row is None:
            table.skipped.append(f"Lambda = 0 for b = {list(inp.b)}")
        else:
            kept.append(row)
    kept.sort(key=lambda r: r.B)
    running, out = -math.inf, []
    for r in kept:
        running = max(running, r.implied_c)
        out.append(r.__class__(**{**r.__dict__, "running_max": running}))
    tail = -math.inf
    for i in range(len(out) - 1, -1, -1):
        tail = max(tail, out[i].implied_c)
        out[i] = out[i].__class__(**{**out[i].__dict__, "tail_max": tail})
    table.rows = out
    return table


def powers_2_vs_3(b_max: int = 20, b_min: int = 2, c: float = 1.0) -> list[LinFormInput]:
    """Lambda = 2^b 3^(-k) - 1 with k the nearest integer to b log 2 / log 3."""
    ratio = math.log(2) / math.log(3)
    return [LinFormInput((2, 3, 1), (b, -round(b * ratio)), 1, c) for b in range(b_min, b_max + 1)]
