"""Automorphism groups of H(x, L) codes and their cardinality formulas.

Triples (a x^(q^l), b x^(q^(n-l)), p^nu) are the normal form of an
automorphism here; b is the raw coefficient of phi2.  Acting on canonical
coefficients the triple is slot-preserving:
c_i -> a * b^(q^(i+l)) * c_i^(p^nu q^l), which is what both the algebraic
membership condition and the vectorized setwise-stability oracle use.

Counting runs on two closed forms (general support via kappa/tau, single
monomial via the divisor formula) and two exhaustive routes (the algebraic
filter and the stability scan); all four must agree and the test suite
holds them to that.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import config
from .codes import Code, CodeSpec, PROP_NONE, build_h_code, proportionality_class
from .equivalence import EquivMap, apply_equiv
from .errors import BudgetExceededError, PreconditionError
from .gf import Field
from .linalg import reduce_rows
from .linpoly import AdditiveMap, LinPoly


# ---------------------------------------------------------------------------
# Triples and support sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutTriple:
    a: int
    b: int
    l: int
    nu: int

    def to_equiv_map(self, field: Field) -> EquivMap:
        phi1 = LinPoly.monomial(field, self.a, self.l)
        phi2 = LinPoly.monomial(field, self.b, (field.n - self.l) % field.n)
        return EquivMap(phi1, phi2, self.nu)


@dataclass(frozen=True)
class SupportSet:
    n: int
    members: tuple

    def __post_init__(self):
        if not self.members:
            raise PreconditionError("support must be nonempty")

    @property
    def differences(self):
        ms = sorted(self.members)
        return tuple(sorted({i - j for i in ms for j in ms if i > j}))


def support_of(spec: CodeSpec) -> SupportSet:
    L = _twist_poly(spec)
    return SupportSet(spec.field.n, tuple(L.support))


def kappa(support: SupportSet, q: int) -> int:
    """q^gcd(differences of the support, n) - 1; needs at least two slots."""
    if len(support.members) < 2:
        raise PreconditionError("kappa needs a support of size >= 2")
    return q**gcd(*support.differences, support.n) - 1


def _twist_poly(spec: CodeSpec) -> LinPoly:
    F = spec.field
    if spec.L1 != AdditiveMap.identity(F):
        raise PreconditionError("automorphism analysis needs L1 = x")
    if not spec.L2.is_q_linearized() or spec.L2.is_zero():
        raise PreconditionError("needs a nonzero q-linearized twist map L")
    return spec.L2.to_linpoly()


def _aut_pre(spec: CodeSpec) -> LinPoly:
    F = spec.field
    if not 2 <= spec.k <= F.n - 2:
        raise PreconditionError("need 2 <= k <= n-2")
    L = _twist_poly(spec)
    if proportionality_class(spec) != PROP_NONE:
        raise PreconditionError("needs proportionality class NONE")
    return L


# ---------------------------------------------------------------------------
# Membership and the two exhaustive routes
# ---------------------------------------------------------------------------

def aut_membership(spec: CodeSpec, t: AutTriple) -> bool:
    """Coefficient condition eta_i^(p^nu q^l - 1) = (a b^(q^l))^(q^i) / (a b^(q^(l+sk)))."""
    F = spec.field
    L = _aut_pre(spec)
    e = (t.nu + F.lam * t.l) % F.deg
    w = F.mul(t.a, F.frob_q(t.b, t.l))
    denom = F.mul(t.a, F.frob_q(t.b, (t.l + spec.sk_slot) % F.n))
    for i in L.support:
        eta = L.coeffs[i]
        lhs = F.div(F.frobenius(eta, e), eta)
        rhs = F.div(F.frob_q(w, i), denom)
        if lhs != rhs:
            return False
    return True


def _grid_budget(F: Field, budget):
    budget = config.AUT_ENUM_BUDGET if budget is None else budget
    grid = (F.order - 1) ** 2 * F.n * F.deg
    if grid > budget:
        raise BudgetExceededError(
            f"triple grid of {grid} exceeds the budget {budget}")


def aut_enumerate(spec: CodeSpec, budget=None):
    """All triples passing the algebraic condition, each re-verified setwise."""
    F = spec.field
    _aut_pre(spec)
    _grid_budget(F, budget)
    units = F.units_by_dlog()
    code = build_h_code(spec)
    out = []
    for a in units:
        for b in units:
            for l in range(F.n):
                for nu in range(F.deg):
                    t = AutTriple(a, b, l, nu)
                    if aut_membership(spec, t):
                        if apply_equiv(t.to_equiv_map(F), code) != code:
                            raise AssertionError(
                                "algebraic condition accepted a non-stabilizing "
                                f"triple {t}")
                        out.append(t)
    return out


def aut_brute(spec: CodeSpec, budget=None):
    """Setwise-stability scan over the same grid, ignoring the condition.

    Vectorized: for each (l, nu) the twisted basis coefficients are fixed and
    each (a, b) only rescales columns; stability is a reduction of the digit
    matrix against the code's canonical basis.
    """
    F = spec.field
    _aut_pre(spec)
    _grid_budget(F, budget)
    code = build_h_code(spec)
    p, n, deg = F.p, F.n, F.deg
    n1 = F.group_order
    exp = np.array(F._exp, dtype=np.int64)
    log = np.array(F._log, dtype=np.int64)
    dt = F.digit_table
    C = np.array([bpoly.coeffs for bpoly in code.basis], dtype=np.int64)
    nzmask = C != 0
    units = F.units_by_dlog()
    R, piv = code.span.rref, code.span.pivots
    out = []
    for l in range(n):
        for nu in range(deg):
            e = (nu + F.lam * l) % deg
            tw = np.zeros_like(C)
            tw[nzmask] = exp[(log[C[nzmask]] * F._pw[e]) % n1]
            logtw = np.zeros_like(C)
            logtw[nzmask] = log[tw[nzmask]]
            for ai in range(n1):
                for bi in range(n1):
                    # column factor a * b^(q^(i+l)) in dlog form
                    cf = [(ai + bi * F._pw[(F.lam * ((i + l) % n)) % deg]) % n1
                          for i in range(n)]
                    logs = (logtw + np.array(cf, dtype=np.int64)) % n1
                    vals = np.where(nzmask, exp[logs], 0)
                    digits = dt[vals].reshape(C.shape[0], n * deg)
                    if not reduce_rows(digits, R, piv, p).any():
                        out.append(AutTriple(units[ai], units[bi], l, nu))
    out.sort(key=lambda t: (F.dlog(t.a), F.dlog(t.b), t.l, t.nu))
    return out


# ---------------------------------------------------------------------------
# Triple algebra (for the group-axiom checks)
# ---------------------------------------------------------------------------

def identity_triple() -> AutTriple:
    return AutTriple(1, 1, 0, 0)


def compose_triples(field: Field, second: AutTriple, first: AutTriple) -> AutTriple:
    """The triple acting as `second after first`."""
    F = field
    e2 = (second.nu + F.lam * second.l) % F.deg
    a = F.mul(second.a, F.frobenius(first.a, e2))
    b = F.mul(F.frobenius(first.b, second.nu),
              F.frob_q(second.b, (F.n - first.l) % F.n))
    return AutTriple(a, b, (first.l + second.l) % F.n,
                     (first.nu + second.nu) % F.deg)


def invert_triple(field: Field, t: AutTriple) -> AutTriple:
    F = field
    l_inv = (F.n - t.l) % F.n
    nu_inv = (F.deg - t.nu) % F.deg
    e = (nu_inv + F.lam * l_inv) % F.deg
    a = F.inv(F.frobenius(t.a, e))
    b = F.frob_q(F.inv(F.frobenius(t.b, nu_inv)), t.l)
    return AutTriple(a, b, l_inv, nu_inv)


# ---------------------------------------------------------------------------
# Counting ingredients: tau
# ---------------------------------------------------------------------------

def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def tau_witness_exists(field: Field, L: LinPoly, d: int, m: int,
                       method="congruence") -> bool:
    """Whether alpha, beta exist with chi_d(alpha beta) = 1 and
    eta_i^(p^m - 1) = alpha beta^(q^i) for every support slot i."""
    F = field
    supp = L.support
    if len(supp) < 2:
        raise PreconditionError("needs a support of size >= 2")
    n1 = F.group_order
    rhs = {i: F.div(F.frobenius(L.coeffs[i], m % F.deg), L.coeffs[i])
           for i in supp}
    i0 = supp[0]

    def try_beta(beta):
        alpha = F.div(rhs[i0], F.frob_q(beta, i0))
        if alpha == 0:
            return False
        for i in supp[1:]:
            if F.mul(alpha, F.frob_q(beta, i)) != rhs[i]:
                return False
        return F.chi_is_trivial(F.mul(alpha, beta), d)

    if method == "scan":
        return any(try_beta(be) for be in F.units_by_dlog())

    # congruence route: one support pair pins beta up to finitely many cosets
    i, j = supp[1], supp[0]
    coeff = (F.q**i - F.q**j) % n1
    target = F.dlog(F.div(rhs[i], rhs[j]))
    g = gcd(coeff, n1)
    if target % g:
        return False
    y0 = (target // g) * pow(coeff // g, -1, n1 // g) % (n1 // g)
    step = n1 // g
    return any(try_beta(F.exp_g((y0 + t * step) % n1)) for t in range(g))


def tau_general(field: Field, L: LinPoly, d: int, method="congruence") -> int:
    """Least divisor m of lam*n admitting the witness pair (alpha, beta)."""
    for m in _divisors(field.deg):
        if tau_witness_exists(field, L, d, m, method):
            return m
    raise AssertionError("m = lam*n always admits alpha = beta = 1")


def tau_witness_set(field: Field, L: LinPoly, d: int):
    """All admissible divisors; closed under gcd by the structure theorem."""
    return [m for m in _divisors(field.deg)
            if tau_witness_exists(field, L, d, m)]


# ---------------------------------------------------------------------------
# Closed-form orders
# ---------------------------------------------------------------------------

def aut_order_closed_form(spec: CodeSpec) -> int:
    """kappa * d * lam * n^2 / tau(L) for supports of size >= 2."""
    F = spec.field
    L = _aut_pre(spec)
    supp = support_of(spec)
    if len(supp.members) < 2:
        raise PreconditionError("use aut_order_monomial for a single slot")
    q, n = F.q, F.n
    d = gcd(q**spec.k - 1, q**n - 1)
    kap = gcd(kappa(supp, q), (q**n - 1) // d)
    tau = tau_general(F, L, d)
    total = kap * d * F.lam * n * n
    assert total % tau == 0
    return total // tau


def aut_order_monomial(spec: CodeSpec) -> int:
    """d (q^n - 1) lam n^2 / tau(g^u, h) for the single twist eta x^(q^h)."""
    F = spec.field
    L = _aut_pre(spec)
    supp = L.support
    if len(supp) != 1:
        raise PreconditionError("monomial order needs a single support slot")
    h = supp[0]
    n, q = F.n, F.q
    if h % n == 0 or h % n == (n - spec.s) % n:
        raise PreconditionError(
            "twist exponent h may not be 0 or -s mod n (degenerate shapes)")
    e = (spec.sk_slot - h) % n
    u = F.dlog(L.coeffs[h])
    d = gcd(q**n - 1, q**h - 1, q**e - 1)
    base = q**gcd(n, h, e) - 1
    tau = next(m for m in _divisors(F.deg) if (u * (F.p**m - 1)) % base == 0)
    total = d * (q**n - 1) * F.lam * n * n
    assert total % tau == 0
    return total // tau


# ---------------------------------------------------------------------------
# The congruence census behind the monomial count
# ---------------------------------------------------------------------------

def congruence_solution_counts(q: int, n: int, h: int, sk: int):
    """Exhaustive n_A table for i*(d1/d) + j*(d2/d) = A over Z_(q^n - 1).

    d1 = q^h - 1 and d2 = 1 - q^(sk - h); the returned array has one entry
    per residue A counting its solution pairs (i, j).
    """
    n1 = q**n - 1
    d1 = (q**h - 1) % n1
    d2 = (1 - q**((sk - h) % n)) % n1
    d = gcd(n1, d1, d2)
    c1, c2 = d1 // d, d2 // d
    i = np.arange(n1, dtype=np.int64)
    counts = np.zeros(n1, dtype=np.int64)
    for j in range(n1):
        vals = (i * c1 + j * c2) % n1
        counts += np.bincount(vals, minlength=n1)
    return counts
