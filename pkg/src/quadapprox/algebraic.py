"""Algebraic numbers, Weil heights and exact arithmetic in Q(xi).

An :class:`AlgebraicNumber` is a canonical minimal polynomial together
with the index of one of its roots in the ordering produced by
:func:`quadapprox.roots.isolate_roots`.  The text form is ``"<poly>@<k>"``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath import iv

from ._ival import fmt_interval, frac_hi, frac_lo, iv_from_fractions, ivprec, mpf_to_fraction, parse_interval, width
from .errors import DomainError, ParseError, PrecisionError, ReducibleError, ResourceLimitError, UndecidedError
from .poly import (
    IntPolynomial,
    content_and_primitive,
    discriminant,
    nontrivial_factor,
    parse_poly,
    qdivmod,
    squarefree_part,
    to_primitive_int,
)
from .roots import PRECISION_CAP_BITS, RootDisk, isolate_roots

DEFAULT_TOL = Fraction(1, 2**100)
# bit-length cap on numerators/denominators during exact power products
COEFF_BITS_CAP = 1 << 18


def _bits_for(tol: Fraction) -> int:
    return max(128, tol.denominator.bit_length() - tol.numerator.bit_length() + 32)


@dataclass(frozen=True)
class AlgebraicNumber:
    minpoly: IntPolynomial
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.minpoly.degree:
            raise DomainError(f"root index {self.index} out of range for degree {self.minpoly.degree}")

    @classmethod
    def from_poly(cls, P: IntPolynomial, index: int, check: bool = True) -> "AlgebraicNumber":
        if P.degree < 1:
            raise DomainError("an algebraic number needs a non-constant polynomial")
        c, Q = content_and_primitive(P)
        if check:
            factor = nontrivial_factor(Q)
            if factor is not None:
                raise ReducibleError(Q, factor)
        return cls(Q, index)

    @classmethod
    def parse(cls, text: str) -> "AlgebraicNumber":
        poly_text, sep, idx = text.rpartition("@")
        if not sep:
            raise ParseError(f"expected '<poly>@<k>', got {text!r}")
        try:
            k = int(idx)
        except ValueError as exc:
            raise ParseError(f"bad root index in {text!r}") from exc
        P = parse_poly(poly_text)
        if P.degree < 1:
            raise ParseError(f"constant polynomial in {text!r}")
        if not 0 <= k < P.degree:
            raise DomainError(f"root index {k} out of range for degree {P.degree}")
        return cls.from_poly(P, k)

    @classmethod
    def rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(IntPolynomial([-q.numerator, q.denominator]), 0)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def conjugates(self, tol=DEFAULT_TOL) -> list[RootDisk]:
        return isolate_roots(self.minpoly, Fraction(tol))

    def disk(self, tol=DEFAULT_TOL) -> RootDisk:
        return self.conjugates(tol)[self.index]

    @property
    def root(self) -> RootDisk:
        return self.disk()

    def is_real(self) -> bool:
        return self.disk().is_real

    def approx(self) -> complex:
        return complex(self.disk().center)

    def as_rational(self) -> Fraction | None:
        if self.degree != 1:
            return None
        return Fraction(-self.minpoly[0], self.minpoly[1])

    def __str__(self) -> str:
        return f"{format_compact(self.minpoly)}@{self.index}"


def format_compact(P: IntPolynomial) -> str:
    return str(P).replace(" ", "").replace("*", "")


# --- heights ----------------------------------------------------------------

@dataclass(frozen=True)
class HeightReport:
    naive_height: int
    weil_height: object
    weil_star: object

    def to_dict(self) -> dict:
        return {
            "naive_height": self.naive_height,
            "weil_height": fmt_interval(self.weil_height),
            "weil_star": fmt_interval(self.weil_star),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HeightReport":
        with ivprec(128):
            h = iv_from_fractions(*parse_interval(data["weil_height"]))
            s = iv_from_fractions(*parse_interval(data["weil_star"]))
        return cls(int(data["naive_height"]), h, s)


def _log_max1(abs_box):
    lo_, hi_ = max(frac_lo(abs_box), Fraction(1)), max(frac_hi(abs_box), Fraction(1))
    a = iv.log(iv.mpf(lo_.numerator) / lo_.denominator)
    b = iv.log(iv.mpf(hi_.numerator) / hi_.denominator)
    return iv.mpf([a.a, b.b])


def weil_height_poly(P: IntPolynomial, tol=Fraction(1, 2**60)):
    """Interval around (1/d)(log|lc| + sum log max(1, |root|))."""
    tol = Fraction(tol)
    d = P.degree
    rtol = tol / 4
    bits = _bits_for(rtol)
    while True:
        with ivprec(bits):
            acc = iv.log(iv.mpf(abs(P.lc)))
            for disk in isolate_roots(P, rtol):
                acc += _log_max1(abs(disk.box()))
            h = acc / d
        if width(h) <= tol:
            return h
        rtol /= 4
        bits += 16
        if bits > PRECISION_CAP_BITS:
            raise PrecisionError("Weil height did not reach the requested width")


def weil_height(a: AlgebraicNumber, tol=Fraction(1, 2**60)):
    return weil_height_poly(a.minpoly, tol)


def star(x):
    """Interval max(x, 1)."""
    lo_, hi_ = max(frac_lo(x), Fraction(1)), max(frac_hi(x), Fraction(1))
    # endpoints are dyadic, so enough bits make the copy exact
    bits = max(lo_.numerator.bit_length(), hi_.numerator.bit_length(), 53) + 8
    with ivprec(bits):
        return iv_from_fractions(lo_, hi_)


def height_report(a: AlgebraicNumber, tol=Fraction(1, 2**60)) -> HeightReport:
    h = weil_height(a, tol)
    return HeightReport(a.minpoly.height(), h, star(h))


# --- field elements -----------------------------------------------------------

def _strip(c: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@functools.lru_cache(maxsize=256)
def _monic(f: IntPolynomial) -> tuple[Fraction, ...]:
    lc = f.lc
    return tuple(Fraction(c, lc) for c in f.coeffs)


def _reduce(coeffs: Sequence[Fraction], f: IntPolynomial) -> tuple[Fraction, ...]:
    fm = _monic(f)
    d = f.degree
    c = [Fraction(x) for x in coeffs]
    for k in range(len(c) - 1, d - 1, -1):
        top = c[k]
        if top:
            base = k - d
            for i in range(d):
                c[base + i] -= top * fm[i]
            c[k] = Fraction(0)
    return _strip(c[:d])


@dataclass(frozen=True)
class FieldElement:
    base: AlgebraicNumber
    rep: tuple[Fraction, ...]

    def __init__(self, base: AlgebraicNumber, rep: Sequence = ()):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "rep", _reduce([Fraction(x) for x in rep], base.minpoly))

    @classmethod
    def generator(cls, base: AlgebraicNumber) -> "FieldElement":
        return cls(base, [0, 1])

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.base != self.base:
                raise DomainError("field elements over different generators")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.base, [other])
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.rep

    def is_one(self) -> bool:
        return self.rep == (Fraction(1),)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.rep), len(o.rep))
        a = self.rep + (Fraction(0),) * (n - len(self.rep))
        b = o.rep + (Fraction(0),) * (n - len(o.rep))
        return FieldElement(self.base, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.base, [-x for x in self.rep])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.rep or not o.rep:
            return FieldElement(self.base, [])
        prod = [Fraction(0)] * (len(self.rep) + len(o.rep) - 1)
        for i, x in enumerate(self.rep):
            if x:
                for j, y in enumerate(o.rep):
                    prod[i + j] += x * y
        return FieldElement(self.base, prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid: s * rep + t * f = 1
        f = [Fraction(c) for c in self.base.minpoly.coeffs]
        r0, r1 = f, list(self.rep)
        s0, s1 = [], [Fraction(1)]
        while any(r1):
            q, r = qdivmod(r0, r1)
            r0, r1 = r1, r
            qs = _polymul(q, s1)
            n = max(len(s0), len(qs))
            s0, s1 = s1, list(_strip([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]))
        g = r0[-1] if len(_strip(r0)) == 1 else None
        if g is None:
            raise ArithmeticError("minimal polynomial is not irreducible")
        return FieldElement(self.base, [c / g for c in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "FieldElement":
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = FieldElement(self.base, [1])
        while n:
            if n & 1:
                result = result * base
                _check_size(result)
            n >>= 1
            if n:
                base = base * base
                _check_size(base)
        return result

    def bit_size(self) -> int:
        return max((max(c.numerator.bit_length(), c.denominator.bit_length()) for c in self.rep), default=0)

    def enclosure(self, disk: RootDisk | None = None, tol=DEFAULT_TOL):
        """Complex interval for this element under the embedding xi -> disk."""
        if disk is None:
            disk = self.base.disk(tol)
        z = disk.box()
        acc = iv.mpc(0)
        for c in reversed(self.rep):
            acc = acc * z + iv.mpf(c.numerator) / c.denominator
        return acc

    def embeddings(self, tol=DEFAULT_TOL) -> list:
        return [self.enclosure(k) for k in self.base.conjugates(tol)]

    def minpoly(self) -> IntPolynomial:
        return minpoly_of_element(self)

    def to_algebraic(self, tol=DEFAULT_TOL) -> AlgebraicNumber:
        """The algebraic number this element denotes under the base embedding."""
        P = self.minpoly()
        bits = _bits_for(Fraction(tol))
        t = Fraction(tol)
        while bits <= PRECISION_CAP_BITS:
            with ivprec(bits):
                val = self.enclosure(tol=t)
                disks = isolate_roots(P, t)
                hits = [i for i, k in enumerate(disks) if _box_meets(val, k.box())]
            if len(hits) == 1:
                return AlgebraicNumber(P, hits[0])
            t /= 2**32
            bits += 64
        raise PrecisionError("could not match element to a root of its minimal polynomial")

    def __str__(self) -> str:
        from .poly import format_poly

        return format_poly(self.rep, var="xi")


def _box_meets(a, b) -> bool:
    return (frac_lo(a.real) <= frac_hi(b.real) and frac_lo(b.real) <= frac_hi(a.real)
            and frac_lo(a.imag) <= frac_hi(b.imag) and frac_lo(b.imag) <= frac_hi(a.imag))


def _check_size(x: FieldElement) -> None:
    if x.bit_size() > COEFF_BITS_CAP:
        raise ResourceLimitError(f"field element coefficients exceed {COEFF_BITS_CAP} bits")


def _polymul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def element_arith(op: str, u: FieldElement, v) -> FieldElement:
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    if op == "pow":
        if not isinstance(v, int):
            raise DomainError("pow expects an integer exponent")
        return u ** v
    raise DomainError(f"unknown operation {op!r}")


def _multiplication_matrix(u: FieldElement) -> list[list[Fraction]]:
    d = u.base.degree
    cols = []
    for j in range(d):
        e = FieldElement(u.base, [0] * j + [1])
        w = u * e
        cols.append(list(w.rep) + [Fraction(0)] * (d - len(w.rep)))
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def charpoly(M: list[list[Fraction]]) -> list[Fraction]:
    """Faddeev-LeVerrier characteristic polynomial, ascending coefficients."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = [[sum(M[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            Mk[i][i] += coeffs[n - k + 1]
        trace = sum(sum(M[i][t] * Mk[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -trace / k
    return coeffs


def minpoly_of_element(u: FieldElement) -> IntPolynomial:
    """Primitive minimal polynomial over Q of a field element.

    The characteristic polynomial of multiplication by u is a power of the
    minimal polynomial (the base polynomial is irreducible), so its
    squarefree part is the answer.
    """
    if u.is_zero():
        return IntPolynomial([0, 1])
    cp = to_primitive_int(charpoly(_multiplication_matrix(u)))
    return squarefree_part(cp)


# --- complex conjugation inside Q(xi) -----------------------------------------

def _fixed_point_free_involutions(points: list[int]):
    if not points:
        yield {}
        return
    a = points[0]
    for b in points[1:]:
        rest = [p for p in points if p not in (a, b)]
        for tail in _fixed_point_free_involutions(rest):
            m = dict(tail)
            m[a], m[b] = b, a
            yield m


def _denominator_bound(f: IntPolynomial) -> int:
    """Every coefficient of r with r(xi) a root of f has denominator dividing this."""
    a = f.lc
    d = f.degree
    g = IntPolynomial([c * a ** (d - 1 - i) for i, c in enumerate(f.coeffs[:-1])] + [1])
    return abs(a * discriminant(g))


def _interpolate(xs, ys):
    """Coefficients (ascending) of the Lagrange interpolant, interval arithmetic."""
    n = len(xs)
    out = [iv.mpc(0)] * n
    for j in range(n):
        basis = [iv.mpc(1)]
        denom = iv.mpc(1)
        for l in range(n):
            if l == j:
                continue
            new = [iv.mpc(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                new[t + 1] += c
                new[t] -= c * xs[l]
            basis = new
            denom *= xs[j] - xs[l]
        scale = ys[j] / denom
        for t in range(n):
            out[t] += basis[t] * scale
    return out


def conj_in_field(xi: AlgebraicNumber) -> tuple[Fraction, ...] | None:
    """Rational r of degree < d with r(xi) = conj(xi), or None if conj(xi) is not in Q(xi).

    If conj(xi) = r(xi), then r permutes the roots of f through a
    fixed-point-free involution sending xi to conj(xi) (it is induced by an
    automorphism of order 2).  Each such involution determines r by
    interpolation; its coefficients are either recovered exactly (their
    denominators divide a computable bound) and certified, or ruled out by
    an interval that contains no admissible rational.
    """
    f = xi.minpoly
    d = f.degree
    if xi.is_real():
        raise DomainError("conj_in_field needs a non-real algebraic number")
    if d % 2:
        # an automorphism of order 2 needs an even degree
        return None
    disks0 = xi.conjugates()
    k = xi.index
    kbar = conj_index(disks0, k)
    others = [i for i in range(d) if i not in (k, kbar)]
    den = _denominator_bound(f)
    pending = list(_fixed_point_free_involutions(others))
    bits = 256 + 2 * den.bit_length()
    while pending:
        if bits > PRECISION_CAP_BITS:
            raise UndecidedError(f"conjugation test for {xi} undecided at the precision cap")
        tol = Fraction(1, 2 ** (bits - 32))
        disks = isolate_roots(f, tol, start_bits=bits)
        still = []
        for perm in pending:
            perm = dict(perm)
            perm[k], perm[kbar] = kbar, k
            with ivprec(bits):
                xs = [dk.box() for dk in disks]
                ys = [xs[perm[i]] for i in range(d)]
                coeffs = _interpolate(xs, ys)
                verdict = _recognize(coeffs, den)
            if verdict is None:
                continue
            if verdict is False:
                still.append(perm)
                continue
            r = verdict
            if _certify_conjugation(xi, r, kbar):
                return r
        pending = still
        bits *= 2
    return None


def conj_index(disks: list[RootDisk], k: int) -> int:
    target = disks[k]
    for i, dk in enumerate(disks):
        if i != k and dk.re == target.re and mpf_to_fraction(dk.im) == -mpf_to_fraction(target.im):
            return i
    raise AssertionError("root family is not closed under conjugation")


def _recognize(coeffs, den: int):
    """Exact rational coefficient vector, None if impossible, False if undecided."""
    out = []
    undecided = False
    for c in coeffs:
        im = c.imag
        if frac_lo(im) > 0 or frac_hi(im) < 0:
            return None
        re = c.real * den
        lo_, hi_ = math.ceil(frac_lo(re)), math.floor(frac_hi(re))
        if lo_ > hi_:
            return None
        if lo_ < hi_:
            undecided = True
            continue
        out.append(Fraction(lo_, den))
    return False if undecided else tuple(out)


def _certify_conjugation(xi: AlgebraicNumber, r: Sequence[Fraction], kbar: int) -> bool:
    u = FieldElement(xi, r)
    if minpoly_of_element(u) != xi.minpoly:
        return False
    tol = DEFAULT_TOL
    for _ in range(8):
        with ivprec(_bits_for(tol)):
            disks = xi.conjugates(tol)
            val = u.enclosure(disks[xi.index])
            hits = [i for i, dk in enumerate(disks) if _box_meets(val, dk.box())]
        if hits == [kbar]:
            return True
        if kbar not in hits:
            return False
        tol /= 2**64
    raise UndecidedError("could not separate r(xi) from other conjugates")


# --- distance -------------------------------------------------------------------

def distance(xi: AlgebraicNumber, alpha: AlgebraicNumber, tol=Fraction(1, 2**60)):
    """Certified interval around |xi - alpha| of width <= tol."""
    tol = Fraction(tol)
    if xi.minpoly == alpha.minpoly and xi.index == alpha.index:
        return iv.mpf(0)
    rtol = tol / 8
    while True:
        bits = _bits_for(rtol)
        with ivprec(bits):
            dist = abs(xi.disk(rtol).box() - alpha.disk(rtol).box())
        if width(dist) <= tol:
            return dist
        rtol /= 16
        if _bits_for(rtol) > PRECISION_CAP_BITS:
            raise PrecisionError("distance did not reach the requested width")
