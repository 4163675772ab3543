"""GF(p) elimination helpers."""

import numpy as np
import pytest

from mrdcodes.linalg import (SpanBasis, inv_mod_p, nullspace_mod_p, rank_mod_p,
                             reduce_rows, rref_mod_p, solve_mod_p)


@pytest.mark.parametrize("p", [2, 3])
def test_rref_rank_nullspace_random(p):
    rng = np.random.default_rng(11)
    for _ in range(40):
        m, n = rng.integers(1, 8, size=2)
        M = rng.integers(0, p, size=(m, n))
        R, piv = rref_mod_p(M, p)
        assert rank_mod_p(M, p) == len(piv)
        N = nullspace_mod_p(M, p)
        assert len(piv) + N.shape[0] == n
        if N.size:
            assert not ((M @ N.T) % p).any()


@pytest.mark.parametrize("p", [2, 3])
def test_solve_consistent_and_inconsistent(p):
    rng = np.random.default_rng(5)
    for _ in range(40):
        m, n = rng.integers(1, 7, size=2)
        M = rng.integers(0, p, size=(m, n))
        x = rng.integers(0, p, size=n)
        b = (M @ x) % p
        sol = solve_mod_p(M, b, p)
        assert sol is not None
        assert ((M @ sol) % p == b).all()
    # engineered inconsistency: 0 * x = 1
    assert solve_mod_p(np.zeros((1, 3)), np.array([1]), p) is None


@pytest.mark.parametrize("p", [2, 3])
def test_inverse(p):
    rng = np.random.default_rng(9)
    found = 0
    while found < 10:
        M = rng.integers(0, p, size=(5, 5))
        inv = inv_mod_p(M, p)
        if inv is None:
            assert rank_mod_p(M, p) < 5
            continue
        found += 1
        assert ((M @ inv) % p == np.eye(5)).all()


def test_span_membership_and_key():
    p = 2
    vecs = np.array([[1, 0, 1, 0], [0, 1, 1, 0]])
    S = SpanBasis(vecs, p)
    assert S.dim == 2
    assert S.contains([1, 1, 0, 0])
    assert not S.contains([0, 0, 0, 1])
    S2 = SpanBasis(np.array([[1, 1, 0, 0], [1, 0, 1, 0]]), p)
    assert S == S2 and S.key() == S2.key()
    residual = reduce_rows(np.array([[1, 1, 0, 0], [0, 0, 0, 1]]),
                           S.rref, S.pivots, p)
    assert not residual[0].any() and residual[1].any()
