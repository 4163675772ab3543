"""Equivalence of H-family codes: difference sets, closed forms, searches.

An equivalence map is a triple (phi1, phi2, rho = p^nu) of two bijective
linearized polynomials and a field automorphism acting on a code by
f -> phi1 o f^rho o phi2.  For additive codes the translation part can be
dropped, so triples are all that is ever searched.

Three independent routes decide equivalence here: the closed-form
coefficient conditions (for H(x, L) pairs these are evaluated directly, in
general a bijective factor map is solved for), an exhaustive scan over
monomial maps, and, at tiny scale, a full search over all invertible phi2
with phi1 recovered by linear algebra.  Each returned witness is re-applied
to the code before being reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import config
from .codes import (Code, CodeSpec, PROP_NONE, build_h_code,
                    proportionality_class, scan_ranks)
from .errors import BudgetExceededError, PreconditionError
from .gf import Field
from .linalg import SpanBasis, nullspace_mod_p, rank_mod_p, solve_mod_p
from .linpoly import (AdditiveMap, LinPoly, additive_from_matrix, compose,
                      compose_add, is_invertible, rho_twist)


# ---------------------------------------------------------------------------
# Equivalence maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivMap:
    phi1: LinPoly
    phi2: LinPoly
    nu: int

    def __post_init__(self):
        F = self.phi1.field
        if not 0 <= self.nu < F.deg:
            raise PreconditionError("nu out of range [0, lam*n)")
        if not (is_invertible(self.phi1) and is_invertible(self.phi2)):
            raise PreconditionError("equivalence maps must be bijective")

    def apply_word(self, f: LinPoly) -> LinPoly:
        return compose(compose(self.phi1, rho_twist(f, self.nu)), self.phi2)


def apply_equiv(emap: EquivMap, code: Code) -> Code:
    """Image code {phi1 o f^rho o phi2 : f in code}."""
    return Code(code.field, [emap.apply_word(b) for b in code.basis])


# ---------------------------------------------------------------------------
# The difference set Gamma_{r,s,k}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaSet:
    n: int
    r: int
    s: int
    k: int
    members: frozenset


def _gamma_pre(n, r, s, k):
    if n < 4:
        raise PreconditionError("need n >= 4")
    if not (1 <= r < n and 1 <= s < n):
        raise PreconditionError("need 1 <= r, s < n")
    if gcd(n, r) != 1 or gcd(n, s) != 1:
        raise PreconditionError("r and s must be coprime to n")
    if not 2 <= k <= n - 2:
        raise PreconditionError("need 2 <= k <= n-2")


def gamma_enumerate(n, r, s, k) -> GammaSet:
    """Literal double loop {t*r - i*s mod n : 1<=i<=k-1, k+1<=t<=n-1}."""
    _gamma_pre(n, r, s, k)
    members = {(t * r - i * s) % n
               for i in range(1, k) for t in range(k + 1, n)}
    return GammaSet(n, r, s, k, frozenset(members))


def gamma_closed_form(n, r, s, k) -> GammaSet:
    """The ten-case description of the difference set, valid for k >= n/2.

    For k < n/2 the roles of r and s swap; that side is served by the
    enumeration, so out-of-domain parameters are rejected here.
    """
    _gamma_pre(n, r, s, k)
    if 2 * k < n:
        raise PreconditionError("closed form stated for k >= n/2")
    Zn = frozenset(range(n))

    def drop(*vals):
        return Zn - {v % n for v in vals}

    if r == s % n:
        members = drop(-s, 0, s)
    elif r == (n - s) % n:
        members = drop(-s * (k - 1), -s * k, -s * (k + 1))
    elif k + 1 == n - 3 and r == (2 * s) % n:
        members = drop(-2 * s)
    elif k + 1 == n - 3 and r == (-2 * s) % n:
        members = drop(6 * s)
    elif k + 1 == n - 2 and r == (2 * s) % n:
        members = drop(-s, -2 * s)
    elif k + 1 == n - 2 and r == (-2 * s) % n:
        members = drop(5 * s, 4 * s)
    elif k + 1 == n - 2 and r == (3 * s) % n:
        members = drop(-3 * s)
    elif k + 1 == n - 2 and r == (-3 * s) % n:
        members = drop(6 * s)
    elif k + 1 == n - 1:
        members = drop(-r, -r + s, -r + 2 * s)
    else:
        members = Zn
    return GammaSet(n, r, s, k, members)


# ---------------------------------------------------------------------------
# Closed-form equivalence test
# ---------------------------------------------------------------------------

def _closed_form_pre(specA: CodeSpec, specB: CodeSpec):
    if specA.field != specB.field:
        raise PreconditionError("specs must share a field")
    F = specA.field
    if F.n < 4:
        raise PreconditionError("closed form needs n >= 4")
    if specA.k != specB.k:
        raise PreconditionError("closed form needs equal k")
    if not 2 <= specA.k <= F.n - 2:
        raise PreconditionError("closed form needs 2 <= k <= n-2")
    for sp in (specA, specB):
        if proportionality_class(sp) != PROP_NONE:
            raise PreconditionError(
                "closed form needs proportionality class NONE on both specs")


def equiv_closed_form(specA: CodeSpec, specB: CodeSpec, *,
                      all_witnesses=False, budget=None):
    """Witness for equivalence of two H codes from the coefficient conditions.

    Applicability: equal (n, k), both proportionality-free, and the twist
    parameters matched (sB = sA, or sB = n - sA with the roles of the two
    coefficient maps exchanged).  The returned witness is always re-verified
    by applying it to the first code.  None means the search space of the
    characterization is exhausted without a witness.
    """
    _closed_form_pre(specA, specB)
    F = specA.field
    n = F.n
    witnesses = []
    branches = []
    if specB.s == specA.s:
        branches.append("same")
    if specB.s == (n - specA.s) % n:
        branches.append("swap")
    for branch in branches:
        found = _closed_form_branch(specA, specB, branch, all_witnesses, budget)
        witnesses.extend(found)
        if witnesses and not all_witnesses:
            return witnesses[0]
    if all_witnesses:
        return witnesses
    return witnesses[0] if witnesses else None


def _identity_like(spec):
    return spec.L1 == AdditiveMap.identity(spec.field)


def _closed_form_branch(specA, specB, branch, all_witnesses, budget):
    if _identity_like(specA) and _identity_like(specB):
        return _branch_h_x(specA, specB, branch, all_witnesses)
    return _branch_general(specA, specB, branch, all_witnesses, budget)


def _witness_same(F, a, b, l, nu):
    phi1 = LinPoly.monomial(F, a, l)
    phi2 = LinPoly.monomial(F, F.frob_q(b, (F.n - l) % F.n), (F.n - l) % F.n)
    return EquivMap(phi1, phi2, nu)


def _witness_swap(F, a, b, l, nu, sk):
    phi1 = LinPoly.monomial(F, a, (l - sk) % F.n)
    phi2 = LinPoly.monomial(F, F.frob_q(b, (F.n - l) % F.n), (F.n - l) % F.n)
    return EquivMap(phi1, phi2, nu)


def _verify(emap, specA, specB):
    return apply_equiv(emap, build_h_code(specA)) == build_h_code(specB)


def _branch_h_x(specA, specB, branch, all_witnesses):
    """H(x, L) vs H(x, M): evaluate the coefficient conditions directly."""
    F = specA.field
    n, lam = F.n, F.lam
    k = specA.k
    L = specA.L2.to_linpoly() if specA.L2.is_q_linearized() else None
    M = specB.L2.to_linpoly() if specB.L2.is_q_linearized() else None
    if L is None or M is None:
        return _branch_general(specA, specB, branch, all_witnesses, None)
    units = F.units_by_dlog()
    out = []

    if branch == "same":
        if set(L.support) != set(M.support):
            return []
        supp = L.support
        skA = specA.sk_slot
        # eta_i twisted by every possible p-power
        tw = {i: [F.frobenius(L.coeffs[i], e) for e in range(F.deg)] for i in supp}
        for a in units:
            for b in units:
                ab = F.mul(a, b)
                abq = {i: F.frob_q(ab, i) for i in supp}
                lead = F.mul(a, F.frob_q(b, skA))
                for l in range(n):
                    for nu in range(lam * n):
                        e = (nu + lam * l) % F.deg
                        ok = all(
                            F.mul(M.coeffs[i], abq[i]) == F.mul(lead, tw[i][e])
                            for i in supp)
                        if ok:
                            w = _witness_same(F, a, b, l, nu)
                            assert _verify(w, specA, specB)
                            if not all_witnesses:
                                return [w]
                            out.append(w)
        return out

    # swap branch: M pins the factor map; L composed with it must be scalar
    rk = (specB.s * k) % n
    skA = specA.sk_slot
    Lmap = specA.L2
    Mmap = specB.L2
    ident = AdditiveMap.identity(F)
    # quick support screen for single-term twists
    if len(Lmap.support) == 1 and len(Mmap.support) == 1:
        hL = L.support[0]
        hM = M.support[0]
        if (hL + hM) % n != 0:
            return []
    for a in units:
        for b in units:
            ab = F.mul(a, b)
            abq = F.mul(a, F.frob_q(b, rk))
            for l in range(n):
                eprime = (lam * ((l - skA) % n)) % F.deg
                for nu in range(lam * n):
                    e = (nu + eprime) % F.deg
                    T = Mmap.scale(F.inv(abq)).twist((F.deg - e) % F.deg)
                    cond = compose_add(Lmap, T).twist(e).scale(ab)
                    if cond == ident:
                        w = _witness_swap(F, a, b, l, nu, skA)
                        assert _verify(w, specA, specB)
                        if not all_witnesses:
                            return [w]
                        out.append(w)
    return out


def _branch_general(specA, specB, branch, all_witnesses, budget):
    """Grid over (a, b, l, nu) with a bijective factor map solved per tuple."""
    F = specA.field
    n, lam = F.n, F.lam
    k = specA.k
    units = F.units_by_dlog()
    grid = len(units) ** 2 * n * lam * n
    cap = config.AUT_ENUM_BUDGET if budget is None else budget
    if grid > cap:
        raise BudgetExceededError(
            f"closed-form grid of {grid} tuples exceeds budget {cap}")
    skA = specA.sk_slot
    rk = (specB.s * k) % n
    if branch == "same":
        src1, src2 = specA.L1, specA.L2
        lead_exp = skA
    else:
        src1, src2 = specA.L2, specA.L1
        lead_exp = rk
    m1 = specB.L1.matrix()
    m2 = specB.L2.matrix()
    s1 = src1.matrix()
    s2 = src2.matrix()
    out = []
    for a in units:
        for b in units:
            ab = F.mul(a, b)
            ablead = F.mul(a, F.frob_q(b, lead_exp))
            for l in range(n):
                exp_l = l if branch == "same" else (l - skA) % n
                for nu in range(lam * n):
                    e = (nu + lam * exp_l) % F.deg
                    T = _stacked_bijective_factor(
                        F, (s1, s2),
                        (_twist_scale_matrix(F, m1, F.inv(ab), (F.deg - e) % F.deg),
                         _twist_scale_matrix(F, m2, F.inv(ablead), (F.deg - e) % F.deg)))
                    if T is None:
                        continue
                    w = (_witness_same(F, a, b, l, nu) if branch == "same"
                         else _witness_swap(F, a, b, l, nu, skA))
                    if not _verify(w, specA, specB):
                        continue
                    if not all_witnesses:
                        return [w]
                    out.append(w)
    return out


_mulmat_cache = {}


def _mul_matrix(F, c):
    key = (id(F), c)
    if key not in _mulmat_cache:
        cols = [F.digits(F.mul(c, e)) for e in F.fp_basis()]
        _mulmat_cache[key] = np.array(cols, dtype=np.int16).T
    return _mulmat_cache[key]


def _frob_matrix(F, e):
    key = (id(F), "frob", e % F.deg)
    if key not in _mulmat_cache:
        cols = [F.digits(F.frobenius(x, e)) for x in F.fp_basis()]
        _mulmat_cache[key] = np.array(cols, dtype=np.int16).T
    return _mulmat_cache[key]


def _twist_scale_matrix(F, mat, c, e):
    """Matrix of x -> (c * map(x))^(p^e)."""
    out = (_mul_matrix(F, c) @ mat) % F.p
    return (_frob_matrix(F, e) @ out) % F.p


def _stacked_bijective_factor(F, mats_src, mats_dst, *,
                              budget=None, retries=None, seed=None):
    """Invertible T with src_i o T = dst_i simultaneously, or None.

    Columns of T are solved independently (affine cosets of the stacked
    kernel) and then completed to an independent family: deterministic
    depth-first enumeration while the coset power fits the budget, seeded
    random completion afterwards.
    """
    p, d = F.p, F.deg
    budget = config.SOLUTION_SPACE_BUDGET if budget is None else budget
    retries = config.RANDOM_COMPLETION_RETRIES if retries is None else retries
    stackS = np.vstack(mats_src) % p
    stackD = np.vstack(mats_dst) % p
    K = nullspace_mod_p(stackS, p)
    base_cols = []
    for j in range(d):
        t0 = solve_mod_p(stackS, stackD[:, j], p)
        if t0 is None:
            return None
        base_cols.append(np.asarray(t0, dtype=np.int16))
    dk = K.shape[0]
    coset_size = p**dk

    def assemble(choice_rows):
        cols = [(base_cols[j] + choice_rows[j]) % p for j in range(d)]
        return np.stack(cols, axis=1)

    if coset_size == 1:
        T = assemble([np.zeros(d, dtype=np.int16)] * d)
        if rank_mod_p(T, p) == d:
            return additive_from_matrix(F, T)
        return None

    if coset_size**d <= budget:
        # full DFS over all coset choices, first solution in counter order
        combos = _all_combos(K, p)
        sol = _dfs_select(base_cols, combos, p, d)
        return additive_from_matrix(F, sol) if sol is not None else None

    # greedy + seeded random completion
    combos = _all_combos(K, p) if coset_size <= budget else None
    rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)
    for _ in range(retries):
        rows = []
        for j in range(d):
            if combos is not None:
                rows.append(combos[rng.integers(len(combos))])
            else:
                rows.append((K.T @ rng.integers(0, p, size=dk)) % p)
        T = assemble(rows)
        if rank_mod_p(T, p) == d and np.array_equal((stackS @ T) % p, stackD):
            return additive_from_matrix(F, T)
    return None


def _all_combos(K, p):
    dk = K.shape[0]
    out = []
    for idx in range(p**dk):
        v = np.zeros(K.shape[1], dtype=np.int16)
        t = idx
        for r in range(dk):
            c = t % p
            t //= p
            if c:
                v = (v + c * K[r]) % p
        out.append(v)
    return out


def _dfs_select(base_cols, combos, p, d):
    chosen: list = []

    def rank_of(cols):
        return rank_mod_p(np.stack(cols, axis=1), p)

    def rec(j):
        if j == d:
            return True
        for delta in combos:
            cand = (base_cols[j] + delta) % p
            chosen.append(cand)
            if rank_of(chosen) == len(chosen) and rec(j + 1):
                return True
            chosen.pop()
        return False

    if rec(0):
        return np.stack(chosen, axis=1)
    return None


# ---------------------------------------------------------------------------
# Monomial search
# ---------------------------------------------------------------------------

def monomial_equiv_search(codeA: Code, codeB: Code, *, all_witnesses=False):
    """Exhaustive scan over phi1 = alpha x^(q^l1), phi2 = beta x^(q^l2), nu.

    Independent of the closed form: set equality of transformed spans is
    checked via canonical reduced bases, with the alpha-scaling factored out
    through a precomputed dictionary of scaled targets.
    """
    F = codeA.field
    if F != codeB.field:
        raise PreconditionError("codes must share a field")
    if codeA.dim != codeB.dim:
        return [] if all_witnesses else None
    n, lam, p = F.n, F.lam, F.p
    units = F.units_by_dlog()

    # canonical forms of alpha^{-1} * codeB, keyed by span identity
    scaled = {}
    for alpha in units:
        inv = F.inv(alpha)
        span = SpanBasis(np.array([b.scale(inv).fp_vector()
                                   for b in codeB.basis], dtype=np.int16), p)
        scaled.setdefault(span.key(), []).append(alpha)

    coeffs = [b.coeffs for b in codeA.basis]
    out = []
    for nu in range(lam * n):
        rho_coeffs = [[F.frobenius(c, nu) for c in row] for row in coeffs]
        for l1 in range(n):
            twisted = [[F.frob_q(c, l1) for c in row] for row in rho_coeffs]
            for l2 in range(n):
                shift = (l1 + l2) % n
                for beta in units:
                    polys = []
                    for row in twisted:
                        newc = [0] * n
                        for i, c in enumerate(row):
                            if c:
                                newc[(i + shift) % n] = F.mul(
                                    c, F.frob_q(beta, (i + l1) % n))
                        polys.append(LinPoly(F, newc))
                    span = SpanBasis(np.array([q.fp_vector() for q in polys],
                                              dtype=np.int16), p)
                    hits = scaled.get(span.key())
                    if not hits:
                        continue
                    for alpha in hits:
                        w = EquivMap(LinPoly.monomial(F, alpha, l1),
                                     LinPoly.monomial(F, beta, l2), nu)
                        assert apply_equiv(w, codeA) == codeB
                        if not all_witnesses:
                            return w
                        out.append(w)
    return out if all_witnesses else None


# ---------------------------------------------------------------------------
# Full search at tiny scale
# ---------------------------------------------------------------------------

_invertible_cache = {}


def invertible_linpolys(field: Field, budget=None):
    """Every bijective LinPoly over the field, enumerated once and cached."""
    budget = config.FULL_SEARCH_GL_BUDGET if budget is None else budget
    count = 1
    for i in range(field.n):
        count *= field.order - field.q**i
    if count > budget:
        raise BudgetExceededError(
            f"{count} invertible maps exceed the full-search budget {budget}")
    key = id(field)
    if key not in _invertible_cache:
        F = field
        allmono = [LinPoly.monomial(F, e, i)
                   for i in range(F.n) for e in F.fp_basis()]
        full = Code(F, allmono)
        # basis of the full space is the unit digit vectors in order, so the
        # scan index digits are exactly the fp_vector of the word
        polys = []
        for idx, ranks in scan_ranks(F, full.basis, block=65536):
            for j, rk in zip(idx, ranks):
                if rk == F.n:
                    digits = []
                    t = int(j)
                    for _ in range(full.dim):
                        digits.append(t % F.p)
                        t //= F.p
                    polys.append(LinPoly.from_fp_vector(F, np.array(digits)))
        assert len(polys) == count
        _invertible_cache[key] = polys
    return _invertible_cache[key]


def full_equiv_search(codeA: Code, codeB: Code, *, all_witnesses=False,
                      budget=None):
    """Search over every invertible phi2 and nu, solving phi1 linearly.

    For each (phi2, nu) the condition phi1 o (codeA^rho o phi2) = codeB is a
    linear constraint on phi1; the solution space is intersected constraint
    by constraint (most candidates die after one block) and searched for an
    invertible element.  Tiny-scale only, guarded by the GL budget.
    """
    F = codeA.field
    if F != codeB.field:
        raise PreconditionError("codes must share a field")
    if codeA.dim != codeB.dim:
        return [] if all_witnesses else None
    p, d, n = F.p, F.deg, F.n
    dim_vec = n * d
    ann = nullspace_mod_p(codeB.span.rref, p)
    out = []
    for phi2 in invertible_linpolys(F, budget):
        for nu in range(F.deg):
            hs = [compose(rho_twist(bb, nu), phi2) for bb in codeA.basis]
            space = np.eye(dim_vec, dtype=np.int16)
            dead = False
            for h in hs:
                R = _left_compose_matrix(F, h)
                Mc = (ann @ R) % p if ann.size else None
                if Mc is None:
                    continue
                MS = (Mc @ space.T) % p
                N = nullspace_mod_p(MS, p)
                if N.shape[0] == 0:
                    dead = True
                    break
                space = (N @ space) % p
            if dead or space.shape[0] == 0:
                continue
            for vec in _space_members(space, p):
                phi1 = LinPoly.from_fp_vector(F, vec)
                if phi1.is_zero() or not is_invertible(phi1):
                    continue
                w = EquivMap(phi1, phi2, nu)
                if apply_equiv(w, codeA) != codeB:
                    continue
                if not all_witnesses:
                    return w
                out.append(w)
                break  # one phi1 per (phi2, nu) is enough for the census
    return out if all_witnesses else None


def _space_members(space, p):
    rows = space.shape[0]
    for idx in range(1, p**rows):
        v = np.zeros(space.shape[1], dtype=np.int16)
        t = idx
        for r in range(rows):
            c = t % p
            t //= p
            if c:
                v = (v + c * space[r]) % p
        yield v


def _left_compose_matrix(F, h):
    """F_p matrix of phi -> phi o h on coefficient digit vectors.

    Slot t of phi o h collects phi_m * h_j^(q^m) over m + j = t, so the
    (t, m) block is plain multiplication by the constant h_j^(q^m).
    """
    n, d = F.n, F.deg
    out = np.zeros((n * d, n * d), dtype=np.int16)
    for m in range(n):
        for j, hc in enumerate(h.coeffs):
            if not hc:
                continue
            t = (m + j) % n
            block = _mul_matrix(F, F.frob_q(hc, m))
            out[t * d:(t + 1) * d, m * d:(m + 1) * d] = (
                out[t * d:(t + 1) * d, m * d:(m + 1) * d] + block) % F.p
    return out
