"""Backend parity: the compiled kernel must agree with the pure twin."""

import random
from fractions import Fraction

import pytest

from lieremark import _kernels_py as pure
from lieremark import kernels

try:
    from lieremark import _kernels_cy as compiled
except ImportError:
    compiled = None

BACKENDS = [pure] if compiled is None else [pure, compiled]


def _rand_poly(rng, nterms=40):
    out = {}
    for _ in range(nterms):
        mono = {}
        for _ in range(rng.randint(0, 3)):
            mono[(2, 2, 1, rng.randint(1, 5))] = rng.randint(1, 4)
        c = rng.randint(-9, 9)
        if c:
            out[tuple(sorted(mono.items()))] = (
                c if rng.random() < 0.7 else Fraction(c, rng.randint(1, 5))
            )
    return out


def test_backend_exposed():
    assert kernels.BACKEND in ("python", "cython")


@pytest.mark.skipif(compiled is None, reason="compiled kernel not built")
def test_parity_poly_ops():
    rng = random.Random(42)
    for _ in range(30):
        a, b = _rand_poly(rng), _rand_poly(rng)
        assert pure.poly_add(a, b) == compiled.poly_add(a, b)
        assert pure.poly_sub(a, b) == compiled.poly_sub(a, b)
        assert pure.poly_mul(a, b) == compiled.poly_mul(a, b)
        assert pure.poly_neg(a) == compiled.poly_neg(a)
        assert pure.poly_scale(a, Fraction(3, 2)) == compiled.poly_scale(a, Fraction(3, 2))
        key = (2, 2, 1, 1)
        assert pure.poly_diff(a, key) == compiled.poly_diff(a, key)
        env = {(2, 2, 1, i): Fraction(rng.randint(1, 7), rng.randint(1, 3))
               for i in range(1, 6)}
        assert pure.poly_eval(a, env) == compiled.poly_eval(a, env)


@pytest.mark.skipif(compiled is None, reason="compiled kernel not built")
def test_parity_bareiss():
    rng = random.Random(7)
    for _ in range(20):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        assert pure.bareiss_rank(rows) == compiled.bareiss_rank(rows)


@pytest.mark.parametrize("K", BACKENDS, ids=lambda k: k.BACKEND_NAME)
class TestBareissRank:
    def test_known_ranks(self, K):
        assert K.bareiss_rank([[1, 2], [2, 4]]) == 1
        assert K.bareiss_rank([[1, 0], [0, 1]]) == 2
        assert K.bareiss_rank([[0, 0], [0, 0]]) == 0
        assert K.bareiss_rank([[2, 4, 6], [1, 2, 3], [0, 0, 1]]) == 2

    def test_rank_of_products(self, K):
        rng = random.Random(3)
        for _ in range(15):
            # A (n x k) * B (k x m) has rank at most k
            n, k, m = rng.randint(2, 6), rng.randint(1, 3), rng.randint(2, 6)
            A = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(n)]
            B = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(k)]
            prod = [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
                    for i in range(n)]
            assert K.bareiss_rank(prod) <= k

    def test_no_input_mutation(self, K):
        rows = [[2, 3], [5, 7]]
        snapshot = [list(r) for r in rows]
        K.bareiss_rank(rows)
        assert rows == snapshot
