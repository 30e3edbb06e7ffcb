"""Enumeration of quadratic complex approximants to a fixed xi.

Every canonical triple (x0, x1, x2) with x2 >= 1, gcd 1, height <= Hmax and
x1^2 - 4 x0 x2 < 0 defines one pair of complex conjugate quadratic
numbers.  The scan runs in numpy stripes, one per leading coefficient x2,
in double precision.  Each float quantity carries an explicit rounding
error bound; anything whose float verdict is not safely decided, or which
lands near a bound or a record, is re-evaluated in interval arithmetic.

Only the root of P in the same half-plane as xi is considered: it is
strictly nearer than its conjugate because xi is not real.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np
from mpmath import iv

from ._ival import exact_interval, fmt_interval, frac_hi, frac_lo, iv_from_fractions, ivprec, midpoint_float, parse_interval
from .algebraic import AlgebraicNumber, conj_index
from .errors import DomainError
from .normform import case2_constant, liouville_constant
from .poly import IntPolynomial, discriminant
from .roots import PRECISION_CAP_BITS

CASE1, CASE2, UNDECIDED = "Case1", "Case2", "Undecided"

# certified recheck when the float distance is within these factors
RECORD_MARGIN = 2.0
FLOOR_MARGIN = 4.0
_EPS = 2.0**-52
_ERR_SCALE = 64 * _EPS


def enumerate_quadratics(height_max: int) -> Iterator[IntPolynomial]:
    """Canonical primitive quadratics with negative discriminant, each once."""
    if height_max < 1:
        raise DomainError("height_max must be >= 1")
    for x2 in range(1, height_max + 1):
        for x1 in range(-height_max, height_max + 1):
            for x0 in range(1, height_max + 1):
                if x1 * x1 - 4 * x0 * x2 < 0 and math.gcd(math.gcd(x0, x1), x2) == 1:
                    yield IntPolynomial([x0, x1, x2])


@dataclass(frozen=True)
class ApproxRecord:
    poly: IntPolynomial
    height: int
    distance: object  # certified interval
    case_label: str
    quality: float | None

    def __post_init__(self):
        assert discriminant(self.poly) < 0 and self.poly.lc >= 1

    def to_dict(self) -> dict:
        x0, x1, x2 = (self.poly[i] for i in range(3))
        return {
            "x0": x0,
            "x1": x1,
            "x2": x2,
            "height": self.height,
            "distance": fmt_interval(self.distance),
            "case": self.case_label,
            "quality": self.quality,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ApproxRecord":
        with ivprec(128):
            dist = iv_from_fractions(*parse_interval(data["distance"]))
        return cls(
            poly=IntPolynomial([data["x0"], data["x1"], data["x2"]]),
            height=int(data["height"]),
            distance=dist,
            case_label=data["case"],
            quality=data["quality"],
        )


@dataclass
class SearchReport:
    xi: AlgebraicNumber
    height_max: int
    records: list[ApproxRecord]
    violations: list[dict]
    fitted_exponent: float | None
    comparison_lines: dict
    c1: Fraction
    c2: Fraction
    stats: dict = field(default_factory=dict)
    case2_witness: dict | None = None
    tightest_liouville: dict | None = None
    undecided: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "xi": str(self.xi),
            "height_max": self.height_max,
            "c1": str(self.c1),
            "c2": str(self.c2),
            "records": [r.to_dict() for r in self.records],
            "violations": self.violations,
            "fitted_exponent": self.fitted_exponent,
            "comparison_lines": self.comparison_lines,
            "stats": self.stats,
            "case2_witness": self.case2_witness,
            "tightest_liouville": self.tightest_liouville,
            "undecided": self.undecided,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "SearchReport":
        return cls(
            xi=AlgebraicNumber.parse(data["xi"]),
            height_max=int(data["height_max"]),
            records=[ApproxRecord.from_dict(r) for r in data["records"]],
            violations=list(data["violations"]),
            fitted_exponent=data["fitted_exponent"],
            comparison_lines=dict(data["comparison_lines"]),
            c1=Fraction(data["c1"]),
            c2=Fraction(data["c2"]),
            stats=dict(data["stats"]),
            case2_witness=data["case2_witness"],
            tightest_liouville=data["tightest_liouville"],
            undecided=list(data["undecided"]),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x0", "x1", "x2", "height", "distance_lo", "distance_hi", "case", "quality"])
        for r in self.records:
            d = r.to_dict()
            q = "" if r.quality is None else repr(r.quality)
            w.writerow([d["x0"], d["x1"], d["x2"], d["height"], *d["distance"], d["case"], q])
        return buf.getvalue()


# --- certified evaluation ---------------------------------------------------------

def _alpha_box(x0: int, x1: int, x2: int, upper: bool):
    sq = iv.sqrt(iv.mpf(4 * x0 * x2 - x1 * x1))
    im = sq / (2 * x2)
    return iv.mpc(iv.mpf(-x1) / (2 * x2), im if upper else -im)


def _certified_distance(xi: AlgebraicNumber, triple, bits: int):
    x0, x1, x2 = triple
    with ivprec(bits):
        disk = xi.disk(Fraction(1, 2 ** (bits - 16)))
        upper = disk.im > 0
        return abs(disk.box() - _alpha_box(x0, x1, x2, upper))


def _floor(c: Fraction, H: int, exponent: Fraction):
    """Interval for c * H^(-exponent), exponent with denominator 2 or 3."""
    p, q = exponent.numerator, exponent.denominator
    base = iv.mpf(H) ** p
    root = base if q == 1 else (iv.sqrt(base) if q == 2 else base ** (iv.mpf(1) / q))
    return exact_interval(c) / root


def classify_case(xi: AlgebraicNumber, P: IntPolynomial, tol=None) -> str:
    """Case2 iff some conjugate outside {xi, conj xi} makes |P| strictly smaller than at xi."""
    bits = 128
    while bits <= PRECISION_CAP_BITS:
        with ivprec(bits):
            disks = xi.conjugates(Fraction(1, 2 ** (bits - 16)))
            k = xi.index
            kbar = conj_index(disks, k)
            own = abs(P(disks[k].box()))
            others = [abs(P(dk.box())) for i, dk in enumerate(disks) if i not in (k, kbar)]
        if any(frac_hi(o) < frac_lo(own) for o in others):
            return CASE2
        if all(frac_lo(o) >= frac_hi(own) for o in others):
            return CASE1
        bits *= 2
    return UNDECIDED


def _check_floor(xi, triple, c: Fraction, exponent: Fraction):
    """(status, distance) with status ok / violation / undecided."""
    H = max(abs(t) for t in triple)
    bits = 128
    while bits <= PRECISION_CAP_BITS:
        dist = _certified_distance(xi, triple, bits)
        with ivprec(bits):
            fl = _floor(c, H, exponent)
        if frac_lo(dist) >= frac_hi(fl):
            return "ok", dist
        if frac_hi(dist) < frac_lo(fl):
            return "violation", dist
        bits *= 2
    return "undecided", dist


# --- float stripes ----------------------------------------------------------------

@dataclass
class _Stripe:
    x2: int
    count: int = 0
    case2_count: int = 0
    ambiguous: list = field(default_factory=list)
    liouville_flags: list = field(default_factory=list)
    case2_flags: list = field(default_factory=list)
    best: np.ndarray | None = None
    record_cands: list = field(default_factory=list)  # (H, dist, err, triple)
    tight_l: tuple | None = None  # (ratio, triple)
    tight_c2: tuple | None = None


@dataclass(frozen=True)
class _Setup:
    xi_c: complex
    others: tuple  # complex conjugates outside {xi, conj xi}
    height_max: int
    d: int
    c1: float
    c2: float
    full: bool


def _scan_stripe(s: _Setup, x2: int) -> _Stripe:
    Hm = s.height_max
    out = _Stripe(x2)
    x1 = np.arange(-Hm, Hm + 1, dtype=np.int64)
    x0 = np.arange(1, Hm + 1, dtype=np.int64)
    X1, X0 = np.meshgrid(x1, x0, indexing="ij")
    X1 = X1.ravel()
    X0 = X0.ravel()
    negdisc = 4 * X0 * x2 - X1 * X1
    mask = (negdisc > 0) & (np.gcd(np.gcd(X0, X1), x2) == 1)
    X1, X0, negdisc = X1[mask], X0[mask], negdisc[mask]
    n = X1.size
    out.count = int(n)
    out.best = np.full(Hm + 1, np.inf)
    if n == 0:
        return out
    H = np.maximum(np.maximum(np.abs(X0), np.abs(X1)), x2)
    Hf = H.astype(np.float64)
    x1f, x0f = X1.astype(np.float64), X0.astype(np.float64)
    sign = 1.0 if s.xi_c.imag > 0 else -1.0
    are = -x1f / (2 * x2)
    aim = sign * np.sqrt(negdisc.astype(np.float64)) / (2 * x2)
    dist = np.hypot(s.xi_c.real - are, s.xi_c.imag - aim)
    err_d = _ERR_SCALE * (abs(s.xi_c) + np.hypot(are, aim) + 1.0)

    # |P| at xi and at the remaining conjugates, with rounding bounds
    def absP(z: complex):
        val = np.abs((x2 * z + x1f) * z + x0f)
        bound = _ERR_SCALE * (x2 * abs(z) ** 2 + np.abs(x1f) * abs(z) + x0f)
        return val, bound

    own, own_err = absP(s.xi_c)
    case2 = np.zeros(n, dtype=bool)
    case1 = np.ones(n, dtype=bool)
    for z in s.others:
        v, e = absP(z)
        case2 |= v + e < own - own_err
        case1 &= v - e > own + own_err
    amb = ~(case1 | case2)
    out.case2_count = int(case2.sum())
    triples = np.stack([X0, X1, np.full(n, x2, dtype=np.int64)], axis=1)

    if s.full:
        lflag = np.ones(n, dtype=bool)
        cflag = ~case1
    else:
        p = s.d / 2.0
        lflag = dist - err_d < FLOOR_MARGIN * s.c1 * Hf ** (-p)
        cflag = (~case1) & (dist - err_d < FLOOR_MARGIN * s.c2 * Hf ** (-s.d / 3.0))
    out.liouville_flags = [tuple(t) for t in triples[lflag].tolist()]
    out.case2_flags = [tuple(t) for t in triples[cflag].tolist()]
    out.ambiguous = [tuple(t) for t in triples[amb].tolist()]

    np.minimum.at(out.best, H, dist)
    if s.full:
        keep = np.ones(n, dtype=bool)
    else:
        keep = dist - err_d <= RECORD_MARGIN * out.best[H] + err_d
    for h, dv, ev, t in zip(H[keep].tolist(), dist[keep].tolist(), err_d[keep].tolist(), triples[keep].tolist()):
        out.record_cands.append((h, dv, ev, tuple(t)))

    ratio_l = dist * Hf ** (s.d / 2.0)
    i = int(np.argmin(ratio_l))
    out.tight_l = (float(ratio_l[i]), tuple(triples[i].tolist()))
    if case2.any():
        ratio_c = np.where(case2, dist * Hf ** (s.d / 3.0), np.inf)
        j = int(np.argmin(ratio_c))
        out.tight_c2 = (float(ratio_c[j]), tuple(triples[j].tolist()))
    return out


def _quality(dist, H: int) -> float | None:
    if H < 2:
        return None
    return -math.log(midpoint_float(dist)) / math.log(H)


def fit_exponent(records: list[ApproxRecord]) -> float:
    """Least-squares slope of -log distance against log height."""
    pts = [(math.log(r.height), -math.log(midpoint_float(r.distance))) for r in records if r.height >= 2]
    if len(pts) < 2:
        raise DomainError("need at least two records of height >= 2")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.ptp(x) == 0:
        raise DomainError("records share a single height")
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def _triple_key(t):
    return (max(abs(v) for v in t), t)


def search(
    xi: AlgebraicNumber,
    height_max: int,
    threads: int = 1,
    c1: Fraction | None = None,
    prescreen: bool = True,
) -> SearchReport:
    """Scan all quadratic approximants up to ``height_max`` and check both bounds.

    ``c1`` overrides the certified Liouville constant; it exists for
    calibration runs that deliberately inflate it.
    """
    if height_max < 1:
        raise DomainError("height_max must be >= 1")
    if xi.is_real() or xi.degree < 4:
        raise DomainError("search needs a non-real xi of degree >= 4")
    d = xi.degree
    cert = liouville_constant(xi)
    c1 = cert.c1 if c1 is None else Fraction(c1)
    c2 = case2_constant(xi)
    disks = xi.conjugates()
    k = xi.index
    kbar = conj_index(disks, k)
    setup = _Setup(
        xi_c=complex(disks[k].center),
        others=tuple(complex(dk.center) for i, dk in enumerate(disks) if i not in (k, kbar)),
        height_max=height_max,
        d=d,
        c1=float(c1),
        c2=float(c2),
        full=not prescreen,
    )
    x2s = range(1, height_max + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            stripes = list(pool.map(lambda x2: _scan_stripe(setup, x2), x2s))
    else:
        stripes = [_scan_stripe(setup, x2) for x2 in x2s]

    # deterministic reduction in x2 order
    stats = {
        "polynomials": sum(s.count for s in stripes),
        "quadratic_numbers": 2 * sum(s.count for s in stripes),
        "candidate_triples": height_max * (2 * height_max + 1) ** 2,
    }
    violations: list[dict] = []
    undecided: list[dict] = []
    certified = 0

    # classification of float-ambiguous triples
    case_of: dict[tuple, str] = {}
    for s in stripes:
        for t in s.ambiguous:
            case_of[t] = classify_case(xi, IntPolynomial(t))
            certified += 1
    case2_total = sum(s.case2_count for s in stripes) + sum(1 for v in case_of.values() if v == CASE2)
    for t, v in sorted(case_of.items(), key=lambda kv: _triple_key(kv[0])):
        if v == UNDECIDED:
            undecided.append({"poly": list(t), "kind": "classification"})

    exp_l = Fraction(d, 2)
    exp_c = Fraction(d, 3)
    for s in stripes:
        for t in s.liouville_flags:
            certified += 1
            status, dist = _check_floor(xi, t, c1, exp_l)
            if status != "ok":
                (violations if status == "violation" else undecided).append(
                    _finding(t, dist, c1, exp_l, "liouville"))
        for t in s.case2_flags:
            label = case_of.get(t)
            if label is None:
                label = case_of[t] = classify_case(xi, IntPolynomial(t))
                if label == UNDECIDED:
                    undecided.append({"poly": list(t), "kind": "classification"})
            if label != CASE2:
                continue
            certified += 1
            status, dist = _check_floor(xi, t, c2, exp_c)
            if status != "ok":
                (violations if status == "violation" else undecided).append(
                    _finding(t, dist, c2, exp_c, "case2"))

    records = _records(xi, stripes, height_max, prescreen)
    certified += len(records)
    try:
        fitted = fit_exponent(records)
    except DomainError:
        fitted = None

    tl = min((s.tight_l for s in stripes if s.tight_l), key=lambda r: (r[0], _triple_key(r[1])), default=None)
    tc = min((s.tight_c2 for s in stripes if s.tight_c2), key=lambda r: (r[0], _triple_key(r[1])), default=None)
    stats.update({"case2_count": case2_total, "certified_checks": certified})
    return SearchReport(
        xi=xi,
        height_max=height_max,
        records=records,
        violations=violations,
        fitted_exponent=fitted,
        comparison_lines={"liouville": d / 2, "case2": d / 3, "subspace": 1.5},
        c1=c1,
        c2=c2,
        stats=stats,
        case2_witness=_witness(xi, tc, c2, exp_c, certify_case=True) if tc else None,
        tightest_liouville=_witness(xi, tl, c1, exp_l) if tl else None,
        undecided=undecided,
    )


def _finding(t, dist, c: Fraction, exponent: Fraction, kind: str) -> dict:
    H = max(abs(v) for v in t)
    with ivprec(128):
        fl = _floor(c, H, exponent)
    return {
        "kind": kind,
        "poly": list(t),
        "height": H,
        "distance": fmt_interval(dist),
        "bound": fmt_interval(fl),
    }


def _witness(xi, tight, c: Fraction, exponent: Fraction, certify_case: bool = False) -> dict:
    _, t = tight
    H = max(abs(v) for v in t)
    dist = _certified_distance(xi, t, 128)
    with ivprec(128):
        ratio = dist * iv.mpf(H) ** (iv.mpf(exponent.numerator) / exponent.denominator) / exact_interval(c)
    out = {"poly": list(t), "height": H, "distance": fmt_interval(dist), "ratio_to_bound": fmt_interval(ratio)}
    if certify_case:
        out["case"] = classify_case(xi, IntPolynomial(t))
    return out


def _records(xi, stripes, height_max: int, prescreen: bool) -> list[ApproxRecord]:
    best = np.full(height_max + 1, np.inf)
    for s in stripes:
        np.minimum(best, s.best, out=best)
    by_height: dict[int, list] = {}
    for s in stripes:
        for h, dv, ev, t in s.record_cands:
            if not prescreen or dv - ev <= RECORD_MARGIN * best[h] + ev:
                by_height.setdefault(h, []).append((dv, ev, t))
    records: list[ApproxRecord] = []
    current = None  # certified interval of the running record
    current_f = math.inf
    for h in sorted(by_height):
        cands = [(dv, ev, t) for dv, ev, t in by_height[h] if dv - ev < current_f * RECORD_MARGIN or not prescreen]
        if not cands:
            continue
        winner = _certified_min(xi, [t for _, _, t in sorted(cands, key=lambda c: _triple_key(c[2]))])
        if winner is None:
            continue
        t, dist = winner
        if current is not None and not frac_hi(dist) < frac_lo(current):
            continue
        label = classify_case(xi, IntPolynomial(t))
        records.append(ApproxRecord(IntPolynomial(t), h, dist, label, _quality(dist, h)))
        current = dist
        current_f = midpoint_float(dist)
    return records


def _certified_min(xi, triples):
    """Unique certified minimiser of the distance among triples, or None on an unresolved tie."""
    bits = 128
    while bits <= PRECISION_CAP_BITS:
        dists = [(t, _certified_distance(xi, t, bits)) for t in triples]
        t0, d0 = min(dists, key=lambda p: frac_lo(p[1]))
        rivals = [p for p in dists if p[0] != t0 and frac_lo(p[1]) <= frac_hi(d0)]
        if not rivals:
            return t0, d0
        triples = [t0] + [p[0] for p in rivals]
        bits *= 2
    return None
