"""Exact integer polynomials: heights, content, resultants, discriminants.

Coefficients are stored in ascending order, ``coeffs[i]`` being the
coefficient of ``X**i``.  Trailing zeros are stripped, so the zero
polynomial is the empty tuple and has ``degree == -1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

from ._ival import frac_hi, frac_lo, ivprec, mpf_to_fraction
from .errors import DomainError, ParseError, UnsupportedDegreeError

MAX_IRREDUCIBILITY_DEGREE = 8


def _strip(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        vals = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise DomainError(f"non-integer coefficient {c}")
                c = c.numerator
            if not isinstance(c, int) and int(c) != c:
                raise DomainError(f"non-integer coefficient {c!r}")
            vals.append(int(c))
        object.__setattr__(self, "coeffs", _strip(vals))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return parse_poly(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def compose_shift(self, t: int) -> "IntPolynomial":
        """Return P(X + t)."""
        acc: list = []
        for c in reversed(self.coeffs):
            # acc = acc * (X + t) + c
            new = [0] * (len(acc) + 1)
            for i, a in enumerate(acc):
                new[i + 1] += a
                new[i] += a * t
            new[0] += c
            acc = new
        return IntPolynomial(acc)

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(reversed(self.coeffs))

    def height(self) -> int:
        return poly_height(self)

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def format_poly(coeffs: Sequence, var: str = "X") -> str:
    """Human-readable form, highest degree first: ``X^4 - X - 1``."""
    coeffs = _strip(coeffs)
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if a == 1:
                body = mono
            elif isinstance(a, Fraction) and a.denominator != 1:
                body = f"({a})*{mono}"
            else:
                body = f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"([+-]?)(\d*)\*?(?:([xX])(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPolynomial:
    """Parse ``"[c0,c1,...]"`` or ``"3X^2 - 5*X + 2"``."""
    s = text.strip().replace("−", "-").replace("**", "^")
    if not s:
        raise ParseError("empty polynomial text")
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"unterminated coefficient list: {text!r}")
        body = s[1:-1].strip()
        try:
            vals = [int(v) for v in body.split(",")] if body else []
        except ValueError as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc
        return IntPolynomial(vals)
    s = s.replace(" ", "")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign, num, var, exp = m.groups()
        if not num and not var:
            raise ParseError(f"dangling sign in {text!r}")
        if pos > 0 and not sign:
            raise ParseError(f"missing operator in {text!r} at offset {pos}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = 0 if not var else (int(exp) if exp else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    deg = max(coeffs) if coeffs else 0
    return IntPolynomial(coeffs.get(i, 0) for i in range(deg + 1))


def poly_height(P: IntPolynomial) -> int:
    if P.is_zero():
        raise DomainError("height of the zero polynomial is undefined")
    return max(abs(c) for c in P.coeffs)


def content_and_primitive(P: IntPolynomial) -> tuple[int, IntPolynomial]:
    if P.is_zero():
        raise DomainError("content of the zero polynomial is undefined")
    c = reduce(math.gcd, P.coeffs)
    Q = IntPolynomial(x // c for x in P.coeffs)
    if Q.lc < 0:
        Q = -Q
    return c, Q


def is_primitive(P: IntPolynomial) -> bool:
    return not P.is_zero() and reduce(math.gcd, P.coeffs) == 1


def _bareiss_det(M: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    m, n = f.degree, g.degree
    size = m + n
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod over roots b of f of g(b)."""
    if f.is_zero() or g.is_zero():
        raise DomainError("resultant with the zero polynomial")
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return _bareiss_det(sylvester_matrix(f, g))


def discriminant(P: IntPolynomial) -> int:
    n = P.degree
    if n < 1:
        raise DomainError("discriminant of a constant polynomial")
    if n == 1:
        return 1
    r = resultant(P, P.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, P.lc)
    assert rem == 0
    return q


# --- rational polynomial helpers (ascending lists of Fractions) -------------

def qpoly(P) -> list[Fraction]:
    coeffs = P.coeffs if isinstance(P, IntPolynomial) else P
    return [Fraction(c) for c in _strip(coeffs)]


def qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    a = list(_strip(a))
    b = list(_strip(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a = list(_strip(a))
    return list(_strip(q)), a


def qgcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd over Q."""
    a, b = list(_strip(a)), list(_strip(b))
    while b:
        _, r = qdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def qmul(a: Sequence, b: Sequence) -> list:
    return list(_strip(_mul(a, b)))


def to_primitive_int(coeffs: Sequence[Fraction]) -> IntPolynomial:
    """Clear denominators and return the primitive integer multiple."""
    coeffs = [Fraction(c) for c in _strip(coeffs)]
    if not coeffs:
        return IntPolynomial([])
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    return content_and_primitive(IntPolynomial(ints))[1]


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient."""
    return to_primitive_int(qgcd(qpoly(f), qpoly(g)))


def squarefree_part(P: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(P, P.derivative())
    if g.degree <= 0:
        return content_and_primitive(P)[1]
    q, r = qdivmod(qpoly(P), qpoly(g))
    assert not r
    return to_primitive_int(q)


def is_squarefree(P: IntPolynomial) -> bool:
    return P.degree <= 1 or poly_gcd(P, P.derivative()).degree == 0


def exact_divides(g: IntPolynomial, P: IntPolynomial) -> bool:
    _, r = qdivmod(qpoly(P), qpoly(g))
    return not r


def mignotte_bound(P: IntPolynomial, k: int) -> int:
    """Bound on |coefficient| of any integer factor of P of degree k."""
    norm2 = math.isqrt(sum(c * c for c in P.coeffs)) + 1
    return math.comb(k, k // 2) * norm2


def nontrivial_factor(P: IntPolynomial) -> IntPolynomial | None:
    """Return a primitive factor of P of degree in [1, deg P - 1], or None.

    Root-cluster recombination: for every conjugation-closed set S of at
    most deg/2 certified roots, lc(P) * prod_{r in S} (X - r) must have
    integer coefficients if the monic factor it defines lies in Q[X]
    (Gauss's lemma).  Coefficient enclosures narrower than 1/2 pin down the
    unique integer candidate, which is then checked by exact division.
    """
    from . import roots as _roots  # roots depends on this module

    d = P.degree
    if d < 1:
        raise DomainError("irreducibility of a constant polynomial")
    if not is_primitive(P):
        raise DomainError(f"{P} is not primitive")
    if d > MAX_IRREDUCIBILITY_DEGREE:
        raise UnsupportedDegreeError(f"irreducibility test supports degree <= 8, got {d}")
    P = content_and_primitive(P)[1]
    if d == 1:
        return None
    g = poly_gcd(P, P.derivative())
    if g.degree > 0:
        return g
    rat = _rational_root_factor(P)
    if rat is not None:
        return rat
    if d <= 3:
        return None
    bound = max(mignotte_bound(P, k) for k in range(1, d // 2 + 1)) * abs(P.lc)
    bits = 128 + 2 * bound.bit_length()
    while True:
        result = _recombine(P, _roots, bits, bound)
        if result is not False:
            return result
        bits *= 2
        if bits > _roots.PRECISION_CAP_BITS:
            from .errors import PrecisionError

            raise PrecisionError(f"factor search for {P} exceeded precision cap")


def _rational_root_factor(P: IntPolynomial) -> IntPolynomial | None:
    from . import roots as _roots

    for disk in _roots.isolate_roots(P, Fraction(1, 4 * abs(P.lc) + 4)):
        if disk.im != 0:
            continue
        # a rational root p/q must have q | lc(P); lc * root is then close to an integer multiple of lc/q
        for q in _divisors(abs(P.lc)):
            p_lo = math.floor((mpf_to_fraction(disk.re) - mpf_to_fraction(disk.radius)) * q)
            p_hi = math.ceil((mpf_to_fraction(disk.re) + mpf_to_fraction(disk.radius)) * q)
            for p in range(p_lo, p_hi + 1):
                cand = IntPolynomial([-p, q])
                if math.gcd(p, q) == 1 and P(Fraction(p, q)) == 0:
                    return cand
    return None


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    small = [i for i in range(1, math.isqrt(n) + 1) if n % i == 0]
    return sorted(set(small + [n // i for i in small]))


def _recombine(P: IntPolynomial, _roots, bits: int, bound: int):
    from mpmath import iv

    d = P.degree
    tol = Fraction(1, 2 ** (bits // 2))
    disks = _roots.isolate_roots(P, tol, start_bits=bits)
    # conjugation orbits: singletons for real roots, pairs otherwise
    units: list[list[int]] = []
    for i, dk in enumerate(disks):
        if dk.im == 0:
            units.append([i])
        elif dk.im > 0:
            j = next(j for j, e in enumerate(disks) if e.re == dk.re and mpf_to_fraction(e.im) == -mpf_to_fraction(dk.im))
            units.append([i, j])
    lc = P.lc
    undecided = False
    with ivprec(bits):
        boxes = [dk.box() for dk in disks]
        for k in range(2, d // 2 + 1):
            for r in range(1, len(units) + 1):
                for combo in combinations(units, r):
                    idx = [i for u in combo for i in u]
                    if len(idx) != k:
                        continue
                    coeffs = [iv.mpc(lc)]
                    for i in idx:
                        z = boxes[i]
                        new = [iv.mpc(0)] * (len(coeffs) + 1)
                        for j, c in enumerate(coeffs):
                            new[j + 1] += c
                            new[j] -= c * z
                        coeffs = new
                    cand = []
                    ok = True
                    for c in coeffs:
                        re = c.real
                        if frac_lo(re) > bound or frac_hi(re) < -bound:
                            ok = False
                            break
                        if frac_hi(re) - frac_lo(re) > Fraction(1, 2):
                            undecided = True
                            ok = False
                            break
                        lo, hi = math.ceil(frac_lo(re)), math.floor(frac_hi(re))
                        if lo > hi:
                            ok = False
                            break
                        cand.append(lo)
                    if not ok:
                        continue
                    G = content_and_primitive(IntPolynomial(cand))[1]
                    if G.degree == k and exact_divides(G, P):
                        return G
    return False if undecided else None


def is_irreducible(P: IntPolynomial) -> bool:
    return nontrivial_factor(P) is None
