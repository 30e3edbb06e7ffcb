"""Certified complex root isolation for squarefree integer polynomials.

Approximations come from numpy's companion-matrix solver polished by
Aberth iteration in multiprecision.  They are then certified with the
Weierstrass inclusion theorem (Braess-Hadeler): for distinct points
z_1..z_n and W_i = P(z_i) / (lc(P) * prod_{j != i} (z_i - z_j)), every
connected component formed by k of the disks |z - z_i| <= n |W_i| holds
exactly k roots.  Pairwise-disjoint disks therefore isolate one root each.
The W_i are evaluated in interval arithmetic, so the radii are rigorous.

Conjugate approximations are paired exactly before certification, which
makes the disk family closed under complex conjugation.  A disk centred on
the real axis then holds a real root; a disk that misses the real axis
holds a non-real one.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import iv, mp, mpc, mpf

from ._ival import dyadic_to_mpf, fmt_interval, frac_hi, frac_lo, ivprec, mpf_to_fraction, mpprec
from .errors import DomainError, InconsistentDiskError, NotSquarefreeError, PrecisionError
from .poly import IntPolynomial, poly_gcd

START_PRECISION_BITS = 128
PRECISION_CAP_BITS = 8192
# real parts closer than this are treated as equal when ordering roots
_ORDER_EPS = Fraction(1, 2**64)


@dataclass(frozen=True)
class RootDisk:
    re: mpf
    im: mpf
    radius: mpf

    @property
    def center(self) -> mpc:
        return mpc(self.re, self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def box(self):
        """Rectangle enclosure at the current iv precision."""
        r = iv.mpf([-self.radius, self.radius])
        return iv.mpc(iv.mpf(self.re) + r, iv.mpf(self.im) + r)

    def conjugate(self) -> "RootDisk":
        return RootDisk(self.re, _neg(self.im), self.radius)

    def contains_disk(self, other: "RootDisk") -> bool:
        return _center_dist_hi(self, other) + mpf_to_fraction(other.radius) <= mpf_to_fraction(self.radius)

    def intersects(self, other: "RootDisk") -> bool:
        return _center_dist_lo(self, other) <= mpf_to_fraction(self.radius) + mpf_to_fraction(other.radius)

    def __str__(self) -> str:
        return f"{mp.nstr(self.center, 15)} ± {mp.nstr(self.radius, 3)}"

    def to_dict(self) -> dict:
        # exact dyadic center and radius, plus readable outward-rounded boxes
        with ivprec(max(64, self.re.context.prec)):
            b = self.box()
            re_box, im_box = fmt_interval(b.real), fmt_interval(b.imag)
        return {
            "re": str(mpf_to_fraction(self.re)),
            "im": str(mpf_to_fraction(self.im)),
            "radius": str(mpf_to_fraction(self.radius)),
            "re_interval": re_box,
            "im_interval": im_box,
            "is_real": self.is_real,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RootDisk":
        return cls(*(dyadic_to_mpf(Fraction(data[k])) for k in ("re", "im", "radius")))


def _neg(x: mpf) -> mpf:
    # exact negation, independent of the ambient mp precision
    sign, man, exp, bc = x._mpf_
    return mp.make_mpf((sign ^ 1 if man else sign, man, exp, bc))


def _center_delta(a: RootDisk, b: RootDisk):
    dre = mpf_to_fraction(a.re) - mpf_to_fraction(b.re)
    dim = mpf_to_fraction(a.im) - mpf_to_fraction(b.im)
    return dre * dre + dim * dim


def _center_dist_hi(a: RootDisk, b: RootDisk) -> Fraction:
    sq = _center_delta(a, b)
    # upper bound on sqrt(sq) by a rational
    with ivprec(96):
        x = iv.sqrt(iv.mpf(sq.numerator) / sq.denominator) if sq else iv.mpf(0)
    return frac_hi(x)


def _center_dist_lo(a: RootDisk, b: RootDisk) -> Fraction:
    sq = _center_delta(a, b)
    with ivprec(96):
        x = iv.sqrt(iv.mpf(sq.numerator) / sq.denominator) if sq else iv.mpf(0)
    return frac_lo(x)


@dataclass(frozen=True)
class Signature:
    r1: int
    r2: int

    def __iter__(self):
        return iter((self.r1, self.r2))


def _tol_fraction(tol) -> Fraction:
    t = Fraction(tol) if not isinstance(tol, float) else Fraction(tol).limit_denominator(2**200)
    if t <= 0:
        raise DomainError("tolerance must be positive")
    return t


def _initial_guesses(P: IntPolynomial) -> list[complex]:
    d = P.degree
    coeffs = [float(c) for c in reversed(P.coeffs)]
    try:
        if not all(np.isfinite(coeffs)):
            raise OverflowError
        z = list(np.roots(coeffs))
        if len(z) == d and all(np.isfinite(z)):
            # nudge coincident guesses apart, Aberth divides by differences
            out: list[complex] = []
            for w in z:
                while any(abs(w - u) < 1e-12 * (1 + abs(w)) for u in out):
                    w = w * (1 + 1e-9) + 1e-9j
                out.append(complex(w))
            return out
    except (OverflowError, np.linalg.LinAlgError, ValueError):
        pass
    # Aberth's classical start on a circle of radius given by the Cauchy bound
    lc = abs(P.lc)
    R = 1 + max(abs(c) for c in P.coeffs[:-1]) / lc
    R = min(R, 1e300)
    return [R * np.exp(2j * np.pi * (k + 0.25) / d) for k in range(d)]


def _aberth(P: IntPolynomial, bits: int, guesses: list[complex], max_iter: int = 500) -> list[mpc]:
    d = P.degree
    dP = P.derivative()
    with mpprec(bits):
        z = [mpc(g) for g in guesses]
        eps = mpf(2) ** (-bits + 8)
        for _ in range(max_iter):
            biggest = mpf(0)
            new = list(z)
            for i in range(d):
                zi = z[i]
                p = P(zi)
                if p == 0:
                    continue
                dp = dP(zi)
                s = mpc(0)
                for j in range(d):
                    if j != i:
                        diff = zi - z[j]
                        if diff == 0:
                            diff = mpc(eps, eps)
                        s += 1 / diff
                ratio = p / dp if dp != 0 else mpc(eps, eps)
                corr = ratio / (1 - ratio * s)
                new[i] = zi - corr
                rel = abs(corr) / (1 + abs(zi))
                if rel > biggest:
                    biggest = rel
            z = new
            if biggest < eps:
                break
    return z


def _symmetrize(z: list[mpc], bits: int) -> list[mpc] | None:
    """Snap near-real approximations to the axis and pair the rest exactly."""
    with mpprec(bits):
        thresh = mpf(2) ** (-bits // 2)
        real, upper, lower = [], [], []
        for w in z:
            if abs(w.imag) <= thresh * (1 + abs(w)):
                real.append(mpc(w.real, 0))
            elif w.imag > 0:
                upper.append(w)
            else:
                lower.append(w)
        if len(upper) != len(lower):
            return None
        out = list(real)
        remaining = list(lower)
        for w in upper:
            k = min(range(len(remaining)), key=lambda t: abs(remaining[t].conjugate() - w))
            v = remaining.pop(k)
            c = (w + v.conjugate()) / 2
            out.append(c)
            out.append(c.conjugate())
        return out


def _certify(P: IntPolynomial, z: list[mpc], bits: int) -> list[RootDisk] | None:
    d = P.degree
    lc = P.lc
    with ivprec(bits):
        pts = [iv.mpc(w.real, w.imag) for w in z]
        radii = []
        for i in range(d):
            denom = iv.mpc(lc)
            for j in range(d):
                if j != i:
                    denom *= pts[i] - pts[j]
            if 0 in abs(denom):
                return None
            W = P(pts[i]) / denom
            radii.append(mp.make_mpf((abs(W) * d)._mpi_[1]))
    with mpprec(bits):
        disks = [RootDisk(+w.real, +w.imag, r) for w, r in zip(z, radii)]
    for i, a in enumerate(disks):
        if not a.is_real and mpf_to_fraction(a.radius) >= abs(mpf_to_fraction(a.im)):
            return None
        for b in disks[i + 1:]:
            if a.intersects(b):
                return None
    return disks


def _order_key(a: RootDisk, b: RootDisk) -> int:
    ra, rb = mpf_to_fraction(a.re), mpf_to_fraction(b.re)
    if abs(ra - rb) > _ORDER_EPS:
        return -1 if ra < rb else 1
    ia, ib = mpf_to_fraction(a.im), mpf_to_fraction(b.im)
    return (ia > ib) - (ia < ib)


def _check_squarefree(P: IntPolynomial) -> None:
    if P.degree < 1:
        raise DomainError("root isolation needs degree >= 1")
    g = poly_gcd(P, P.derivative())
    if P.degree > 1 and g.degree > 0:
        raise NotSquarefreeError(P, g)


@functools.lru_cache(maxsize=4096)
def _isolate_cached(P: IntPolynomial, tol: Fraction, start_bits: int) -> tuple[RootDisk, ...]:
    _check_squarefree(P)
    d = P.degree
    need = max(start_bits, START_PRECISION_BITS)
    # the certified radius is about 2^-bits * scale, so start near -log2(tol)
    need = max(need, int(-mp.log(mpf(tol.numerator) / tol.denominator, 2)) + 64)
    bits = need
    guesses = _initial_guesses(P)
    while bits <= PRECISION_CAP_BITS:
        z = _aberth(P, bits, guesses)
        zs = _symmetrize(z, bits)
        if zs is not None and len(zs) == d:
            disks = _certify(P, zs, bits)
            if disks is not None and all(mpf_to_fraction(k.radius) <= tol for k in disks):
                return tuple(sorted(disks, key=functools.cmp_to_key(_order_key)))
            guesses = [complex(w) for w in zs]
        bits *= 2
    raise PrecisionError(f"root isolation of {P} failed at {PRECISION_CAP_BITS} bits")


def isolate_roots(P: IntPolynomial, tol=Fraction(1, 2**40), start_bits: int = START_PRECISION_BITS) -> list[RootDisk]:
    """Certified isolating disks of radius <= tol, ordered by (Re, Im)."""
    return list(_isolate_cached(P, _tol_fraction(tol), start_bits))


def refine(disk: RootDisk, P: IntPolynomial, tol) -> RootDisk:
    t = _tol_fraction(tol)
    if mpf_to_fraction(disk.radius) <= t:
        return disk
    hits = [k for k in isolate_roots(P, t) if k.intersects(disk)]
    if len(hits) != 1:
        raise InconsistentDiskError(f"disk {disk} is not isolating for {P} ({len(hits)} candidate roots)")
    return hits[0]


def signature(P: IntPolynomial) -> Signature:
    disks = isolate_roots(P)
    r1 = sum(1 for k in disks if k.is_real)
    return Signature(r1, (P.degree - r1) // 2)


def root_index_near(P: IntPolynomial, value: complex) -> int:
    disks = isolate_roots(P)
    return min(range(len(disks)), key=lambda i: abs(complex(disks[i].center) - value))
