"""Multiplicative dependence: exact search, exact verification, and the
explicit exponent bound

    |n_k| <= (11 (m - 1) D^3)^(m - 1) * (log A_1 ... log A_m) / log A_k

for a minimal relation alpha_1^n_1 ... alpha_m^n_m = 1.

Rational inputs are decided completely by factoring.  Inputs in a number
field go through a lattice search on logarithms of all embeddings; every
proposal is then checked exactly, so a returned relation is always true
but a missed one is possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy
from mpmath import iv, mp

from ._ival import frac_hi, ivprec, mpprec
from .algebraic import FieldElement, minpoly_of_element, weil_height_poly
from .errors import DomainError
from .lattice import integer_kernel, lll, max_norm, normalize_sign

Element = int | Fraction | FieldElement

_LOG_BITS = 256


def _ceil_digits(q: Fraction, digits: int = 12) -> Fraction:
    scale = 10**digits
    return Fraction(math.ceil(q * scale), scale)


def _is_zero(a: Element) -> bool:
    return a.is_zero() if isinstance(a, FieldElement) else a == 0


@dataclass(frozen=True)
class MulDepInstance:
    elements: tuple
    D: int
    logA: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "logA", tuple(Fraction(x) for x in self.logA))
        if len(self.elements) < 2:
            raise DomainError("need at least two elements")
        if len(self.logA) != len(self.elements):
            raise DomainError("one log A value per element")
        if any(_is_zero(a) for a in self.elements):
            raise DomainError("elements must be nonzero")
        if any(x < 1 for x in self.logA):
            raise DomainError("log A values must be at least 1")
        if self.D < 1:
            raise DomainError("field degree must be positive")

    @property
    def m(self) -> int:
        return len(self.elements)

    @classmethod
    def build(cls, elements: Sequence[Element], D: int | None = None) -> "MulDepInstance":
        """Fill in D (if not given) and certified upward-rounded log A values."""
        elements = _coerce_all(elements)
        if D is None:
            D = generated_degree(elements)
        return cls(tuple(elements), D, tuple(_log_a(a, D) for a in elements))


def _height_upper(a: Element) -> Fraction:
    if isinstance(a, FieldElement):
        return frac_hi(weil_height_poly(minpoly_of_element(a)))
    q = Fraction(a)
    with ivprec(_LOG_BITS):
        return frac_hi(iv.log(iv.mpf(max(abs(q.numerator), q.denominator))))


def _abs_log_upper(a: Element) -> Fraction:
    """Upper bound of |log a| on the principal branch (base embedding for field elements)."""
    with ivprec(_LOG_BITS):
        if isinstance(a, FieldElement):
            z = a.enclosure()
            lg = iv.log(abs(z))
            arg_bound = iv.pi  # |arg| <= pi on the principal branch
            re, im = abs(lg), arg_bound
        else:
            q = Fraction(a)
            re = abs(iv.log(iv.mpf(abs(q.numerator)) / abs(q.denominator)))
            im = iv.pi if q < 0 else iv.mpf(0)
        return frac_hi(iv.sqrt(re * re + im * im))


def _log_a(a: Element, D: int) -> Fraction:
    return _ceil_digits(max(_height_upper(a), _abs_log_upper(a) / D, Fraction(1)))


def _coerce_all(elements: Sequence[Element]) -> list[Element]:
    bases = {e.base for e in elements if isinstance(e, FieldElement)}
    if len(bases) > 1:
        raise DomainError("field elements over different generators")
    if not bases:
        return [Fraction(e) for e in elements]
    base = bases.pop()
    return [e if isinstance(e, FieldElement) else FieldElement(base, [e]) for e in elements]


def generated_degree(elements: Sequence[Element]) -> int:
    """Degree over Q of the field generated by the elements (exact Q-span closure)."""
    fe = [e for e in elements if isinstance(e, FieldElement)]
    if not fe:
        return 1
    base = fe[0].base
    d = base.degree

    def vec(x: FieldElement):
        return list(x.rep) + [Fraction(0)] * (d - len(x.rep))

    echelon: list[tuple[int, list[Fraction]]] = []

    def insert(x: FieldElement) -> bool:
        v = vec(x)
        for piv, row in echelon:
            if v[piv]:
                c = v[piv] / row[piv]
                v = [a - c * b for a, b in zip(v, row)]
        for i, c in enumerate(v):
            if c:
                echelon.append((i, v))
                return True
        return False

    one = FieldElement(base, [1])
    basis = [one]
    insert(one)
    frontier = [one]
    while frontier:
        nxt = []
        for b in frontier:
            for u in fe:
                w = b * u
                if insert(w):
                    basis.append(w)
                    nxt.append(w)
        frontier = nxt
    return len(basis)


def loxton_bound(inst: MulDepInstance, k: int) -> Fraction:
    """Exponent bound for index k (1-based)."""
    m = inst.m
    if not 1 <= k <= m:
        raise DomainError(f"index {k} outside 1..{m}")
    prod = Fraction(1)
    for x in inst.logA:
        prod *= x
    return Fraction(11 * (m - 1) * inst.D**3) ** (m - 1) * prod / inst.logA[k - 1]


@dataclass(frozen=True)
class DependenceRelation:
    exponents: tuple[int, ...]
    verified: bool

    def to_dict(self) -> dict:
        return {"exponents": list(self.exponents), "verified": self.verified}

    @classmethod
    def from_dict(cls, data: dict) -> "DependenceRelation":
        return cls(tuple(int(n) for n in data["exponents"]), bool(data["verified"]))


def verify_dependence(elements: Sequence[Element], exponents: Sequence[int]) -> bool:
    elements = _coerce_all(elements)
    if len(elements) != len(exponents):
        raise DomainError("one exponent per element")
    if not any(exponents):
        raise DomainError("exponents must not all be zero")
    for a, n in zip(elements, exponents):
        if _is_zero(a) and n < 0:
            raise DomainError("zero raised to a negative power")
    if isinstance(elements[0], FieldElement):
        acc = FieldElement(elements[0].base, [1])
        for a, n in zip(elements, exponents):
            if n:
                acc = acc * a**n
        return acc.is_one()
    acc = Fraction(1)
    for a, n in zip(elements, exponents):
        if n:
            acc *= Fraction(a) ** n
    return acc == 1


def _shrink(elements, n: list[int]) -> list[int]:
    """Divide out common factors of a verified relation while it stays verified."""
    changed = True
    while changed:
        changed = False
        g = math.gcd(*n)
        for p in sympy.primefactors(g):
            cand = [x // p for x in n]
            if verify_dependence(elements, cand):
                n, changed = cand, True
                break
    return n


# --- rational case --------------------------------------------------------------

def _exponent_matrix(q: Sequence[Fraction]):
    facs = []
    for x in q:
        f = dict(sympy.factorint(abs(x.numerator)))
        for p, e in sympy.factorint(x.denominator).items():
            f[p] = f.get(p, 0) - e
        f.pop(1, None)
        facs.append(f)
    primes = sorted({p for f in facs for p in f})
    rows = [[f.get(p, 0) for f in facs] for p in primes]
    signs = [1 if x < 0 else 0 for x in q]
    return rows, signs


def find_dependence_rational(q: Sequence) -> DependenceRelation | None:
    q = [Fraction(x) for x in q]
    if any(x == 0 for x in q):
        raise DomainError("elements must be nonzero")
    m = len(q)
    rows, signs = _exponent_matrix(q)
    # sign parity sum(s_k n_k) = 0 mod 2 via a slack column: sum(s_k n_k) + 2 t = 0
    if any(signs):
        M = [r + [0] for r in rows] + [signs + [2]]
        kernel = integer_kernel(M, m + 1)
    else:
        kernel = integer_kernel(rows, m)
    basis = [v[:m] for v in kernel]
    if not basis:
        return None
    reduced = lll(basis)
    best = min((normalize_sign(v) for v in reduced if any(v)), key=lambda v: (max_norm(v), [abs(x) for x in v]))
    best = _shrink(q, best)
    return DependenceRelation(tuple(best), verify_dependence(q, best))


# --- number field case ------------------------------------------------------------

def _embedding_logs(elements: list[FieldElement]):
    """Rows: per element, (log|sigma(u)|, arg sigma(u)) over one embedding per conjugate pair."""
    base = elements[0].base
    disks = [k for k in base.conjugates() if k.im >= 0]
    out = []
    with mpprec(_LOG_BITS):
        for u in elements:
            row_abs, row_arg = [], []
            for disk in disks:
                with ivprec(_LOG_BITS):
                    z = u.enclosure(disk)
                    zc = mp.mpc(z.real.mid, z.imag.mid)
                row_abs.append(mp.log(abs(zc)))
                row_arg.append(mp.arg(zc))
            out.append(row_abs + row_arg)
    return out, len(disks)


def find_dependence_algebraic(elements: Sequence[Element], exponent_cap: int) -> DependenceRelation | None:
    """Sound lattice search: every returned relation is exactly verified."""
    elements = _coerce_all(elements)
    if not isinstance(elements[0], FieldElement):
        rel = find_dependence_rational(elements)
        if rel is None or max_norm(rel.exponents) > exponent_cap:
            return None
        return rel
    if any(_is_zero(a) for a in elements):
        raise DomainError("elements must be nonzero")
    m = len(elements)
    logs, e = _embedding_logs(elements)
    scale_bits = 64 + 2 * max(1, int(exponent_cap).bit_length())
    with mpprec(_LOG_BITS):
        C = mp.mpf(2) ** scale_bits
        basis = []
        for k, row in enumerate(logs):
            basis.append([int(k == j) for j in range(m)] + [int(mp.nint(C * x)) for x in row])
        two_pi = int(mp.nint(C * 2 * mp.pi))
        for j in range(e):
            basis.append([0] * m + [two_pi if t == e + j else 0 for t in range(2 * e)])
    reduced = lll(basis)
    # a true relation leaves only rounding noise in the log coordinates
    noise = (m + 1) * (exponent_cap + 1) * 4
    candidates = []
    for v in reduced:
        n = v[:m]
        if not any(n) or max_norm(n) > exponent_cap:
            continue
        if max(abs(x) for x in v[m:]) > noise:
            continue
        candidates.append(normalize_sign(n))
    candidates.sort(key=lambda n: (max_norm(n), [abs(x) for x in n]))
    for n in candidates:
        if verify_dependence(elements, n):
            n = _shrink(elements, n)
            return DependenceRelation(tuple(n), True)
    return None


def parse_element(text: str, base=None) -> Element:
    """Rational ``p/q`` or, with a base, a polynomial in ``xi`` (or ``X``)."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    if base is None:
        raise DomainError(f"{text!r} is not a rational; field elements need --xi")
    from .poly import parse_poly

    expr = text.replace("xi", "X")
    if "/" in expr:
        # rational coefficients: clear denominators through sympy
        poly = sympy.Poly(sympy.sympify(expr.replace("^", "**")), sympy.Symbol("X"))
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return FieldElement(base, coeffs)
    return FieldElement(base, parse_poly(expr).coeffs)


__all__ = [
    "MulDepInstance",
    "DependenceRelation",
    "loxton_bound",
    "find_dependence_rational",
    "find_dependence_algebraic",
    "verify_dependence",
    "generated_degree",
    "parse_element",
]
