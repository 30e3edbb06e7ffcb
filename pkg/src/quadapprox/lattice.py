"""Exact integer lattice helpers: LLL reduction and integer kernels."""

from __future__ import annotations

from fractions import Fraction


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Textbook LLL over exact rationals; rows are the lattice generators (independent)."""
    B = [list(map(int, row)) for row in basis]
    n = len(B)
    if n == 0:
        return B

    def gram_schmidt():
        Bs: list[list[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: list[Fraction] = []
        for i in range(n):
            v = [Fraction(x) for x in B[i]]
            for j in range(i):
                mu[i][j] = _dot(B[i], Bs[j]) / norms[j] if norms[j] else Fraction(0)
                v = [a - mu[i][j] * b for a, b in zip(v, Bs[j])]
            Bs.append(v)
            norms.append(_dot(v, v))
        return Bs, mu, norms

    Bs, mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                for t in range(j + 1):
                    mu[k][t] -= q * (mu[j][t] if t < j else 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            Bs, mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return B


def integer_kernel(M: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {x in Z^ncols : M x = 0} via unimodular row reduction of [M^T | I]."""
    rows = [[M[r][c] for r in range(len(M))] + [1 if j == c else 0 for j in range(ncols)] for c in range(ncols)]
    nleft = len(M)
    pivot_row = 0
    for col in range(nleft):
        # gcd-combine all remaining rows into one pivot for this column
        for r in range(pivot_row + 1, ncols):
            while rows[r][col]:
                q = rows[pivot_row][col] // rows[r][col]
                rows[pivot_row] = [a - q * b for a, b in zip(rows[pivot_row], rows[r])]
                rows[pivot_row], rows[r] = rows[r], rows[pivot_row]
        if pivot_row < ncols and rows[pivot_row][col]:
            pivot_row += 1
        if pivot_row == ncols:
            break
    return [row[nleft:] for row in rows[pivot_row:] if not any(row[:nleft])]


def max_norm(v) -> int:
    return max((abs(x) for x in v), default=0)


def normalize_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v
