"""Linearized-polynomial algebra: composition, adjoint, rank, factoring."""

import random

import numpy as np
import pytest

from mrdcodes import (AdditiveMap, Field, LinPoly, PreconditionError, adjoint,
                      compose, compose_add, factor_through, invert,
                      is_invertible, kernel, matrix_of, rank, rho_twist)
from mrdcodes.codes import scan_ranks
from mrdcodes.linalg import inv_mod_p
from mrdcodes.linpoly import additive_from_values, linpoly_from_values


def rand_poly(F, rng):
    return LinPoly(F, [rng.randrange(F.order) for _ in range(F.n)])


def test_evaluate_vectors(f16):
    g = f16.generator
    x = LinPoly.x(f16)
    for c in f16.elements():
        assert x.evaluate(c) == c
        assert LinPoly.zero(f16).evaluate(c) == 0
    assert LinPoly.monomial(f16, 1, 1).evaluate(g) == f16.mul(g, g)


def test_compose_identity_and_frobenius_inverse(f16):
    rng = random.Random(0)
    x = LinPoly.x(f16)
    for _ in range(10):
        f = rand_poly(f16, rng)
        assert compose(x, f) == f
        assert compose(f, x) == f
    n = f16.n
    assert compose(LinPoly.monomial(f16, 1, 1),
                   LinPoly.monomial(f16, 1, n - 1)) == x


def test_compose_twisted_product_rule(f16):
    g = f16.generator
    a, b = g, f16.exp_g(5)
    got = compose(LinPoly.monomial(f16, a, 1), LinPoly.monomial(f16, b, 1))
    assert got == LinPoly.monomial(f16, f16.mul(a, f16.frob_q(b, 1)), 2)
    fa = LinPoly.monomial(f16, a, 1)
    fb = LinPoly.monomial(f16, b, 1)
    for c in f16.elements():
        assert got.evaluate(c) == fa.evaluate(fb.evaluate(c))


def test_compose_matches_pointwise_on_random(f81):
    rng = random.Random(1)
    for _ in range(8):
        f, g = rand_poly(f81, rng), rand_poly(f81, rng)
        h = compose(f, g)
        for c in random.Random(2).sample(range(81), 12):
            assert h.evaluate(c) == f.evaluate(g.evaluate(c))


def test_compose_associative(f16):
    rng = random.Random(3)
    for _ in range(6):
        f, g, h = (rand_poly(f16, rng) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_invertible_group_closure(f16):
    rng = random.Random(4)
    x = LinPoly.x(f16)
    done = 0
    while done < 6:
        f, g = rand_poly(f16, rng), rand_poly(f16, rng)
        if not (is_invertible(f) and is_invertible(g)):
            continue
        done += 1
        fg = compose(f, g)
        assert is_invertible(fg)
        finv = invert(f)
        assert compose(f, finv) == x
        assert compose(finv, f) == x


def test_zero_on_all_points_means_zero_coeffs(f16, f81):
    # basis vanishing forces the zero polynomial (degree < q^n)
    for F in (f16, f81):
        rng = random.Random(5)
        for _ in range(25):
            f = rand_poly(F, rng)
            if all(f.evaluate(b) == 0 for b in F.fq_basis()):
                assert f.is_zero()


def test_matrix_rank_kernel_vectors(f16):
    n = f16.n
    assert rank(LinPoly.x(f16)) == n
    assert rank(LinPoly.zero(f16)) == 0
    m = matrix_of(LinPoly.x(f16))
    assert all(m[i][j] == (1 if i == j else 0)
               for i in range(n) for j in range(n))
    assert all(v == 0 for row in matrix_of(LinPoly.zero(f16)) for v in row)
    xq_x = LinPoly(f16, (f16.neg(1), 1, 0, 0))
    assert rank(xq_x) == n - 1
    ker = kernel(xq_x)
    assert len(ker) == 1 and f16.in_subfield(ker[0], f16.lam)


def test_rank_equals_root_count(f81):
    rng = random.Random(6)
    for _ in range(10):
        f = rand_poly(f81, rng)
        roots = sum(1 for c in f81.elements() if f.evaluate(c) == 0)
        assert roots == f81.q ** (f81.n - rank(f))


def test_rank_invariant_under_bijections(f16):
    rng = random.Random(7)
    done = 0
    while done < 5:
        phi1, phi2 = rand_poly(f16, rng), rand_poly(f16, rng)
        if not (is_invertible(phi1) and is_invertible(phi2)):
            continue
        done += 1
        f = rand_poly(f16, rng)
        assert rank(compose(compose(phi1, f), phi2)) == rank(f)


@pytest.mark.parametrize("s", [1, 3])
def test_adjoint_pairing_identity_exhaustive(f16, s):
    rng = random.Random(8)
    for _ in range(3):
        f = rand_poly(f16, rng)
        fh = adjoint(f, s)
        assert adjoint(fh, s) == f
        for a in f16.elements():
            for b in f16.elements():
                assert f16.trace(f16.mul(b, f.evaluate(a))) == \
                    f16.trace(f16.mul(a, fh.evaluate(b)))


def test_adjoint_formula_and_s_independence(f16):
    g = f16.generator
    n, s = 4, 3
    t = (s * (n - 1)) % n
    assert adjoint(LinPoly.monomial(f16, g, s), s) == \
        LinPoly.monomial(f16, f16.frob_q(g, t), t)
    assert adjoint(LinPoly.x(f16), 1) == LinPoly.x(f16)
    rng = random.Random(9)
    f = rand_poly(f16, rng)
    assert adjoint(f, 1) == adjoint(f, 3)
    with pytest.raises(PreconditionError):
        adjoint(f, 2)


def test_adjoint_antihomomorphism(f16):
    rng = random.Random(10)
    for _ in range(6):
        f, g = rand_poly(f16, rng), rand_poly(f16, rng)
        assert adjoint(compose(f, g)) == compose(adjoint(g), adjoint(f))


def test_rho_twist(f16):
    rng = random.Random(11)
    f = rand_poly(f16, rng)
    g = rand_poly(f16, rng)
    assert rho_twist(f, 0) == f
    assert rho_twist(rho_twist(f, 1), f16.deg - 1) == f
    assert rho_twist(f.add(g), 2) == rho_twist(f, 2).add(rho_twist(g, 2))
    a = f16.generator
    assert rho_twist(LinPoly.monomial(f16, a, 0), 2) == \
        LinPoly.monomial(f16, f16.frobenius(a, 2), 0)


def test_additive_map_embedding(f729):
    lp = LinPoly.monomial(f729, f729.generator, 1)
    am = lp.to_additive()
    assert am.is_q_linearized()
    assert am.to_linpoly() == lp
    not_q = AdditiveMap.monomial(f729, 1, 1)
    assert not not_q.is_q_linearized()
    with pytest.raises(PreconditionError):
        not_q.to_linpoly()
    for c in random.Random(12).sample(range(729), 10):
        assert am.evaluate(c) == lp.evaluate(c)


def test_interpolation_round_trips(f16, f729):
    rng = random.Random(13)
    f = rand_poly(f16, rng)
    vals = [f.evaluate(e) for e in f16.fq_basis()]
    assert linpoly_from_values(f16, vals) == f
    am = AdditiveMap(f729, [rng.randrange(729) for _ in range(6)])
    vals = [am.evaluate(e) for e in f729.fp_basis()]
    assert additive_from_values(f729, vals) == am


def test_factor_through_vectors(f16):
    x_map = AdditiveMap.identity(f16)
    xq = AdditiveMap.monomial(f16, 1, 1)
    T = factor_through(xq, x_map)
    assert T is not None and compose_add(xq, T) == x_map
    assert T.to_linpoly() == LinPoly.monomial(f16, 1, 3)
    assert factor_through(xq, xq) is not None
    tr = AdditiveMap(f16, (1, 1, 1, 1))  # image is the prime subfield
    assert factor_through(tr, x_map) is None
    TT = factor_through(tr, tr)
    assert TT is not None and compose_add(tr, TT) == tr


def test_factor_through_non_bijective_images(f16):
    rng = random.Random(14)
    L = AdditiveMap(f16, (1, 1, 0, 0))  # kernel of size 2
    for _ in range(5):
        phi = AdditiveMap(f16, [rng.randrange(16) for _ in range(4)])
        if inv_mod_p(phi.matrix(), 2) is None:
            continue
        M = compose_add(L, phi)
        T = factor_through(L, M)
        assert T is not None
        assert compose_add(L, T) == M
        assert inv_mod_p(T.matrix(), 2) is not None


@pytest.mark.parametrize("q,k,s", [(2, 1, 1), (2, 2, 1), (2, 2, 3),
                                   (3, 1, 1), (3, 2, 1)])
def test_end_coefficient_norm_relation(q, k, s):
    """Window polynomials of full window rank tie their end-coefficient norms.

    Exhaustive over every f = sum_{i<=k} a_i x^(q^(si)) with a_0, a_k != 0:
    whenever rank(f) = n - k, the norms satisfy N(a_k) = (-1)^(kn) N(a_0).
    """
    F = Field(q, 1, 4)
    n = F.n
    polys = [LinPoly.monomial(F, e, (s * i) % n)
             for i in range(k + 1) for e in F.fp_basis()]
    norm = np.array([F.norm(x) for x in F.elements()], dtype=np.int64)
    eps = F.neg_one_power(k * n)
    checked = 0
    for idx, ranks in scan_ranks(F, polys, block=8192):
        a0 = idx % F.order
        ak = (idx // F.order**k) % F.order
        mask = (a0 > 0) & (ak > 0) & (ranks == n - k)
        for lhs, rhs in zip(norm[ak[mask]], norm[a0[mask]]):
            assert lhs == F.mul(eps, int(rhs))
            checked += 1
    assert checked > 0
