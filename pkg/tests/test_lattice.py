import random
from fractions import Fraction

from hypothesis import given, strategies as st

from quadapprox.lattice import integer_kernel, lll


def _det(M):
    M = [[Fraction(x) for x in r] for r in M]
    n, det = len(M), Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if M[r][i]), None)
        if p is None:
            return 0
        if p != i:
            M[i], M[p] = M[p], M[i]
            det = -det
        det *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            M[r] = [a - f * b for a, b in zip(M[r], M[i])]
    return det


def _gram_det(B):
    return _det([[sum(a * b for a, b in zip(u, v)) for v in B] for u in B])


def test_lll_preserves_lattice_volume():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(2, 5)
        B = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
        if _det(B) == 0:
            continue
        R = lll(B)
        assert abs(_det(R)) == abs(_det(B))
        assert sum(x * x for x in R[0]) <= 2 ** (n - 1) * min(sum(x * x for x in v) for v in B)


def test_lll_finds_small_relation():
    # 3 * 100 - 1 * 300 = 0 hidden in a scaled embedding
    C = 10**6
    B = [[1, 0, 100 * C], [0, 1, 300 * C]]
    R = lll(B)
    assert R[0][2] == 0 and abs(R[0][0]) == 3 and abs(R[0][1]) == 1


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=3))
def test_kernel_vectors_are_in_kernel(M):
    K = integer_kernel(M, 4)
    for v in K:
        assert any(v)
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    rank = 4 - len(K)
    assert rank <= len(M)


def test_kernel_is_saturated():
    # kernel of [2, 4] over Z is generated by (2, -1) alone
    K = integer_kernel([[2, 4]], 2)
    assert len(K) == 1 and sorted(map(abs, K[0])) == [1, 2]
