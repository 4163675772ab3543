"""Construction and verification of rank-metric codes in the H family.

A code here is an F_p-subspace of q-linearized polynomials, stored as a
canonical reduced basis of coefficient digit vectors.  The central family
is H_{k,s}(L1, L2): words L1(a0)x + a1 x^(q^s) + ... + a_{k-1} x^(q^(s(k-1)))
+ L2(a0) x^(q^(sk)) with a_i ranging over the top field and the coefficient
maps L1, L2 additive.  Storing spans over F_p (never F_q) makes the purely
additive members of the family (AGTG) first class; F_q-linearity is detected
after the fact and recorded, since duality statements need it.

The exhaustive minimum-distance kernel scans every nonzero word.  Because a
word is still an F_q-linear map, its rank is n minus log_q of its root
count, so the scan evaluates whole blocks of words at every field point at
once (one BLAS matmul per block) instead of running per-word elimination.
"""

from __future__ import annotations

from collections import Counter
from math import gcd

import numpy as np

from . import config
from .errors import BudgetExceededError, PreconditionError, PresetConditionError
from .gf import Field
from .linalg import SpanBasis
from .linpoly import AdditiveMap, LinPoly, rank as linpoly_rank

PROP_NONE = "NONE"
PROP = "PROP"
PROP_TWIST = "PROP_TWIST"

FAMILIES = ("GAB", "TG", "GTG", "AGTG", "TZ", "CUSTOM")


def _as_additive(field, L):
    if L is None:
        return AdditiveMap.zero(field)
    if isinstance(L, LinPoly):
        return L.to_additive()
    if isinstance(L, AdditiveMap):
        return L
    raise PreconditionError(f"cannot use {L!r} as a coefficient map")


class CodeSpec:
    """Parameters of an H_{k,s}(L1, L2) construction."""

    def __init__(self, field: Field, k: int, s: int, L1, L2, family="CUSTOM"):
        if not 1 <= k <= field.n - 1:
            raise PreconditionError(f"k = {k} outside 1..n-1 = 1..{field.n - 1}")
        if gcd(s, field.n) != 1:
            raise PreconditionError(f"gcd(s={s}, n={field.n}) must be 1")
        if family not in FAMILIES:
            raise PreconditionError(f"unknown family {family!r}")
        self.field = field
        self.k = int(k)
        self.s = int(s) % field.n
        self.L1 = _as_additive(field, L1)
        self.L2 = _as_additive(field, L2)
        if self.L1.is_zero() and self.L2.is_zero():
            raise PreconditionError("L1 and L2 cannot both be zero")
        self.family = family

    @property
    def sk_slot(self):
        return (self.s * self.k) % self.field.n

    def is_q_linearized(self):
        return self.L1.is_q_linearized() and self.L2.is_q_linearized()

    def __repr__(self):
        return (f"CodeSpec(k={self.k}, s={self.s}, family={self.family}, "
                f"L1={self.L1!r}, L2={self.L2!r})")


class Code:
    """An F_p-span of linearized polynomials with a canonical basis."""

    def __init__(self, field: Field, polys, spec: CodeSpec | None = None):
        self.field = field
        vectors = np.array([p.fp_vector() for p in polys], dtype=np.int16)
        self.span = SpanBasis(vectors, field.p)
        self.basis = [LinPoly.from_fp_vector(field, row) for row in self.span.rref]
        self.spec = spec
        self._fq_linear = None

    @property
    def dim(self):
        """Dimension over F_p."""
        return self.span.dim

    @property
    def size(self):
        return self.field.p**self.dim

    def contains(self, f: LinPoly) -> bool:
        if f.field != self.field:
            raise PreconditionError("field mismatch")
        return self.span.contains(f.fp_vector())

    def contains_all(self, polys) -> bool:
        if not polys:
            return True
        V = np.array([p.fp_vector() for p in polys], dtype=np.int16)
        return self.span.contains_all(V)

    def is_fq_linear(self) -> bool:
        """Closure under multiplication by a generator of F_q."""
        if self._fq_linear is None:
            F = self.field
            w = F.exp_g(F.group_order // (F.q - 1))
            self._fq_linear = self.contains_all([b.scale(w) for b in self.basis])
        return self._fq_linear

    def fq_dim(self):
        if not self.is_fq_linear():
            raise PreconditionError("code is not F_q-linear")
        return self.dim // self.field.lam

    def words(self):
        """Iterate every codeword as a LinPoly (desk scale only)."""
        F = self.field
        p, dim = F.p, self.dim
        for idx in range(p**dim):
            digits = []
            t = idx
            for _ in range(dim):
                digits.append(t % p)
                t //= p
            acc = LinPoly.zero(F)
            for c, b in zip(digits, self.basis):
                if c:
                    acc = acc.add(b.scale(c))
            yield acc

    def __eq__(self, other):
        return (
            isinstance(other, Code)
            and self.field == other.field
            and self.span == other.span
        )

    def __hash__(self):
        return hash((self.field, self.span))

    def __repr__(self):
        fam = self.spec.family if self.spec else "derived"
        return f"Code(dim_fp={self.dim}, family={fam})"


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_h_code(spec: CodeSpec) -> Code:
    """Span of the defining words of H_{k,s}(L1, L2)."""
    F = spec.field
    polys = []
    slot = spec.sk_slot
    for e in F.fp_basis():
        c0 = spec.L1.evaluate(e)
        ck = spec.L2.evaluate(e)
        if c0 or ck:
            polys.append(LinPoly.from_terms(F, {0: c0, slot: ck}))
    for i in range(1, spec.k):
        mslot = (spec.s * i) % F.n
        for e in F.fp_basis():
            polys.append(LinPoly.monomial(F, e, mslot))
    return Code(F, polys, spec)


def gabidulin(field: Field, k: int, s: int = 1) -> Code:
    """The generalized Gabidulin code: window x, x^(q^s), ..., x^(q^(s(k-1)))."""
    spec = CodeSpec(field, k, s, AdditiveMap.identity(field),
                    AdditiveMap.zero(field), family="GAB")
    return build_h_code(spec)


def preset(family: str, field: Field, k: int, s: int = 1, *, h: int = 1,
           eta=None, theta=None) -> Code:
    """Build one of the named families, validating its defining conditions.

    Raises PresetConditionError carrying every violated condition.
    """
    F = field
    family = family.upper()
    violations = []
    if family == "GAB":
        return gabidulin(F, k, s)
    if eta is None:
        raise PreconditionError(f"family {family} needs eta")
    eta = F.parse_element(eta)
    if eta == 0:
        raise PreconditionError("eta must be nonzero")

    if family in ("TG", "GTG"):
        if family == "TG" and s % F.n != 1:
            violations.append("TG requires s = 1")
        eps = F.neg_one_power(F.n * k)
        if F.norm(eta) == eps:
            violations.append("requires N_{q^n,q}(eta) != (-1)^(nk)")
        if violations:
            raise PresetConditionError(violations)
        L2 = AdditiveMap.monomial(F, eta, (F.lam * h) % F.deg)
        spec = CodeSpec(F, k, s, AdditiveMap.identity(F), L2, family=family)
        return build_h_code(spec)

    if family == "AGTG":
        # sign exponent carries the tower degree: nk Frobenius layers over
        # F_p are n*k*lam; with plain nk the gate passes non-MRD twists at
        # even lam (checked exhaustively at q = 9, n = 3, k = 1)
        eps = F.neg_one_power(F.n * k * F.lam)
        if F.norm_rel(eta, 1) == eps:
            violations.append("requires N_{q^n,p}(eta) != (-1)^(nk*lambda)")
        if violations:
            raise PresetConditionError(violations)
        L2 = AdditiveMap.monomial(F, eta, h % F.deg)
        spec = CodeSpec(F, k, s, AdditiveMap.identity(F), L2, family="AGTG")
        return build_h_code(spec)

    if family == "TZ":
        if F.n % 2:
            violations.append("requires n even")
        else:
            half = F.deg // 2
            nrm = F.norm(eta)
            if F.q % 2 == 1:
                if F.pow_el(nrm, (F.q - 1) // 2) == 1:
                    violations.append(
                        "requires N(eta) not a quadratic residue in F_q")
            else:
                violations.append(
                    "requires N(eta) not a quadratic residue in F_q "
                    "(impossible in characteristic 2)")
            if theta is not None:
                theta = F.parse_element(theta)
                if F.in_subfield(theta, half):
                    violations.append("requires theta outside F_{q^(n/2)}")
                if not F.in_subfield(F.mul(theta, theta), half):
                    violations.append("requires theta^2 inside F_{q^(n/2)}")
            elif not violations:
                theta = _find_tz_theta(F, half)
                if theta is None:
                    violations.append("no admissible theta exists")
        if violations:
            raise PresetConditionError(violations)
        c = F.div(eta, theta)
        L1 = AdditiveMap.identity(F).add(AdditiveMap.monomial(F, 1, half))
        L2 = AdditiveMap(F, [c if j == 0 else (F.neg(c) if j == half else 0)
                             for j in range(F.deg)])
        spec = CodeSpec(F, k, s, L1, L2, family="TZ")
        return build_h_code(spec)

    raise PreconditionError(f"unknown family {family!r}")


def _find_tz_theta(F, half):
    # smallest dlog with theta outside the half field but theta^2 inside
    for kk in range(F.group_order):
        t = F.exp_g(kk)
        if not F.in_subfield(t, half) and F.in_subfield(F.mul(t, t), half):
            return t
    return None


# ---------------------------------------------------------------------------
# Norm criterion and proportionality
# ---------------------------------------------------------------------------

def mrd_norm_criterion(spec: CodeSpec) -> bool:
    """True iff N(L1(a)) != (-1)^(kn) N(L2(a)) for every nonzero a.

    Norms land in F_q when both coefficient maps are q-linearized; for
    additive-only maps they land in F_p and the sign exponent becomes
    k*n*lam (the relation is the F_{q/p}-norm of the q-level one, which
    multiplies the sign by the tower degree).
    """
    F = spec.field
    if spec.is_q_linearized():
        m, eps = F.lam, F.neg_one_power(spec.k * F.n)
    else:
        m, eps = 1, F.neg_one_power(spec.k * F.n * F.lam)
    for a in range(1, F.order):
        lhs = F.norm_rel(spec.L1.evaluate(a), m)
        rhs = F.mul(eps, F.norm_rel(spec.L2.evaluate(a), m))
        if lhs == rhs:
            return False
    return True


def proportionality_class(spec: CodeSpec) -> str:
    """Detect L1 = gamma*L2 (PROP) or L1 = gamma*L2^(q^s) (PROP_TWIST)."""
    F = spec.field
    basis = F.fp_basis()

    def matches(target):
        probe = next((e for e in basis if target.evaluate(e)), None)
        if probe is None:
            return False
        gamma = F.div(spec.L1.evaluate(probe), target.evaluate(probe))
        if gamma == 0:
            return False
        return all(spec.L1.evaluate(e) == F.mul(gamma, target.evaluate(e))
                   for e in basis)

    if matches(spec.L2):
        return PROP
    if matches(spec.L2.twist(F.lam * spec.s)):
        return PROP_TWIST
    return PROP_NONE


# ---------------------------------------------------------------------------
# Exhaustive distance kernel
# ---------------------------------------------------------------------------

def eval_digit_row(field: Field, poly: LinPoly, points=None):
    """Digits of poly(x) at the given points (default: all), flattened."""
    F = field
    acc = np.zeros((F.order, F.deg), dtype=np.int16)
    dt = F.digit_table
    for i, a in enumerate(poly.coeffs):
        if a:
            vals = F.mul_vec(a, F.frob_perm(F.lam * i))
            acc += dt[vals]
    acc %= F.p
    if points is not None:
        acc = acc[points]
    return acc.reshape(-1)


_proj_cache: dict = {}


def projective_points(field: Field):
    """One representative per 1-dimensional F_q-subspace of the field.

    A q-linearized word vanishes on whole F_q-lines, so root counting only
    needs these (q^n - 1)/(q - 1) canonical points.
    """
    key = id(field)
    if key not in _proj_cache:
        F = field
        units_q = [x for x in F.subfield_elements(F.lam) if x]
        idx = np.arange(F.order, dtype=np.int64)
        canon = idx.copy()
        for w in units_q:
            canon = np.minimum(canon, F.mul_vec(w, idx))
        pts = np.nonzero((canon == idx) & (idx > 0))[0]
        assert pts.size == (F.order - 1) // (F.q - 1)
        _proj_cache[key] = pts
    return _proj_cache[key]


def scan_ranks(field: Field, basis_polys, *, block=None, start=1):
    """Yield (indices, ranks) over all F_p-combinations of the given polys.

    Combination j has base-p digits of j as coefficients; index 0 (the zero
    word) is skipped by default.  Ranks come from exact root counting on the
    projective points, which is valid because every word is F_q-linear.
    """
    F = field
    p, dim = F.p, len(basis_polys)
    pts = projective_points(F)
    B = np.stack([eval_digit_row(F, b, pts) for b in basis_polys]).astype(np.float32)
    width = B.shape[1]
    if block is None:
        block = int(min(65536, max(2048, 2**23 // max(1, width))))
    total = p**dim
    # projective root count r maps to kernel size 1 + (q-1) r, a power of q
    qpows = np.array([F.q**e for e in range(F.n + 1)], dtype=np.int64)
    for lo in range(start, total, block):
        idx = np.arange(lo, min(lo + block, total), dtype=np.int64)
        t = idx.copy()
        C = np.empty((idx.size, dim), dtype=np.float32)
        for j in range(dim):
            C[:, j] = t % p
            t //= p
        W = C @ B
        W %= p
        nonzero = W.reshape(idx.size, pts.size, F.deg).any(axis=2)
        roots = 1 + (F.q - 1) * (pts.size - nonzero.sum(axis=1)).astype(np.int64)
        pos = np.searchsorted(qpows, roots)
        if not np.array_equal(qpows[pos], roots):
            raise AssertionError("root count of a word was not a power of q")
        yield idx, F.n - pos


def min_distance_exhaustive(code: Code, budget=None, *, early_below=None) -> int:
    """Minimum rank over all nonzero codewords, by full enumeration.

    ``early_below`` stops the scan as soon as some word has rank below the
    given value (used by the MRD check); the return value is then only an
    upper bound below that threshold.
    """
    budget = config.EXHAUSTIVE_CODE_BUDGET if budget is None else budget
    if code.size > budget:
        raise BudgetExceededError(
            f"code has {code.size} words, over the exhaustive budget {budget}")
    best = code.field.n
    for _, ranks in scan_ranks(code.field, code.basis):
        m = int(ranks.min())
        if m < best:
            best = m
        if best == 1 or (early_below is not None and best < early_below):
            break
    return best


def min_distance_slow(code: Code) -> int:
    """Per-word Gaussian elimination reference for the scan kernel."""
    best = code.field.n
    for w in code.words():
        if not w.is_zero():
            best = min(best, linpoly_rank(w))
    return best


def rank_spectrum(code: Code, budget=None) -> Counter:
    """Multiset {rank: count} over the nonzero codewords."""
    budget = config.EXHAUSTIVE_CODE_BUDGET if budget is None else budget
    if code.size > budget:
        raise BudgetExceededError(
            f"code has {code.size} words, over the exhaustive budget {budget}")
    spectrum: Counter = Counter()
    for _, ranks in scan_ranks(code.field, code.basis):
        vals, counts = np.unique(ranks, return_counts=True)
        for v, c in zip(vals, counts):
            spectrum[int(v)] += int(c)
    return spectrum


def is_mrd(code: Code, budget=None) -> bool:
    """Whether the code meets |C| = q^(n(n-d+1)) for its exhaustive distance."""
    F = code.field
    ln = F.deg
    if code.dim % ln:
        return False  # the bound is met only by q-power sizes
    target = F.n + 1 - code.dim // ln
    if target < 1:
        return False
    d = min_distance_exhaustive(code, budget, early_below=target)
    return d == target and code.dim == ln * (F.n - d + 1)
