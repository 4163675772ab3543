"""Linearized polynomials and additive (p-polynomial) maps.

A ``LinPoly`` is a q-linearized polynomial sum a_i x^(q^i) held as a length-n
coefficient tuple, index i <-> exponent q^i, always reduced mod x^(q^n) - x.
An ``AdditiveMap`` is the p-linearized analogue, a length-(lam*n) tuple with
index j <-> exponent p^j; it represents an arbitrary F_p-linear map on the
field and is where the coefficient maps of a code construction live.  A
LinPoly embeds as an AdditiveMap supported on indices divisible by lam.

The "s-view" of a LinPoly (coefficients read against exponents q^(s*i)) is
pure index arithmetic on the one canonical representation: the s-view
coefficient i is coeffs[s*i mod n].
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .linalg import (
    field_nullspace,
    field_rref,
    inv_mod_p,
    nullspace_mod_p,
    rank_mod_p,
    rref_mod_p,
    solve_mod_p,
)


class LinPoly:
    """q-linearized polynomial over the top field of a tower."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != field.n:
            raise PreconditionError(
                f"need exactly n = {field.n} coefficients, got {len(coeffs)}")
        self.field = field
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, (0,) * field.n)

    @classmethod
    def x(cls, field):
        """The identity polynomial x."""
        return cls(field, (1,) + (0,) * (field.n - 1))

    @classmethod
    def monomial(cls, field, coeff, exp):
        """coeff * x^(q^exp); exp reduced mod n."""
        c = [0] * field.n
        c[exp % field.n] = coeff
        return cls(field, c)

    @classmethod
    def from_terms(cls, field, terms):
        """Build from {exponent: coefficient}; colliding exponents add."""
        c = [0] * field.n
        for e, a in terms.items():
            i = e % field.n
            c[i] = field.add(c[i], a)
        return cls(field, c)

    # -- basics ----------------------------------------------------------------

    @property
    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def is_zero(self):
        return not any(self.coeffs)

    def sview_coeff(self, s, i):
        """Coefficient of x^(q^(s*i)) in the s-view."""
        return self.coeffs[(s * i) % self.field.n]

    def sview_support(self, s):
        n = self.field.n
        sinv = pow(s, -1, n)
        return tuple(sorted((sinv * c) % n for c in self.support))

    def evaluate(self, x):
        F = self.field
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc = F.add(acc, F.mul(a, F.frob_q(x, i)))
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, LinPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{a}*x^q{i}" for i, a in enumerate(self.coeffs) if a]
        return "LinPoly(" + (" + ".join(terms) or "0") + ")"

    # -- linear structure ----------------------------------------------------------

    def add(self, other):
        F = self.field
        return LinPoly(F, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def neg(self):
        F = self.field
        return LinPoly(F, [F.neg(a) for a in self.coeffs])

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        """Left scalar multiple c*f, i.e. x -> c*f(x)."""
        F = self.field
        return LinPoly(F, [F.mul(c, a) for a in self.coeffs])

    def fp_vector(self):
        """All lam*n^2 base-p digits of the coefficients, for span work."""
        F = self.field
        out = np.empty(F.n * F.deg, dtype=np.int16)
        for i, a in enumerate(self.coeffs):
            out[i * F.deg:(i + 1) * F.deg] = F.digits(a)
        return out

    @classmethod
    def from_fp_vector(cls, field, vec):
        deg = field.deg
        coeffs = [field.from_digits(vec[i * deg:(i + 1) * deg]) for i in range(field.n)]
        return cls(field, coeffs)

    def to_additive(self):
        F = self.field
        pc = [0] * F.deg
        for i, a in enumerate(self.coeffs):
            pc[(F.lam * i) % F.deg] = a
        return AdditiveMap(F, pc)


def compose(f: LinPoly, g: LinPoly) -> LinPoly:
    """f(g(x)) reduced mod x^(q^n) - x.

    Coefficient rule: (f o g)_t = sum over m+j = t (mod n) of f_m * g_j^(q^m).
    """
    if f.field != g.field:
        raise PreconditionError("composition needs a common field")
    F = f.field
    n = F.n
    out = [0] * n
    for m, fm in enumerate(f.coeffs):
        if not fm:
            continue
        for j, gj in enumerate(g.coeffs):
            if not gj:
                continue
            t = (m + j) % n
            out[t] = F.add(out[t], F.mul(fm, F.frob_q(gj, m)))
    return LinPoly(F, out)


def rho_twist(f: LinPoly, nu: int) -> LinPoly:
    """Apply the automorphism a -> a^(p^nu) to every coefficient."""
    F = f.field
    return LinPoly(F, [F.frobenius(a, nu) for a in f.coeffs])


def adjoint(f: LinPoly, s: int = 1) -> LinPoly:
    """Trace-pairing transpose: sum a_i^(q^(s(n-i))) x^(q^(s(n-i))) in s-view.

    The result does not depend on s (any admissible view yields the same
    polynomial); s is accepted to match the s-flavoured formula and must be
    coprime to n.
    """
    F = f.field
    n = F.n
    if _gcd(s, n) != 1:
        raise PreconditionError(f"gcd(s={s}, n={n}) must be 1")
    out = [0] * n
    for i in range(n):
        src = f.coeffs[(s * i) % n]
        if src:
            t = (s * (n - i)) % n
            out[t] = F.frob_q(src, t)
    return LinPoly(F, out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Matrix form, rank, kernel
# ---------------------------------------------------------------------------

def matrix_of(f: LinPoly):
    """n x n matrix over F_q of the induced map, in the basis 1, y, ..., y^(n-1).

    Column i holds the F_q-coordinates of f(y^i).  Entries are field integers
    lying in the subfield F_q.
    """
    F = f.field
    cols = [F.fq_coordinates(f.evaluate(b)) for b in F.fq_basis()]
    return [[cols[c][r] for c in range(F.n)] for r in range(F.n)]


def rank(f: LinPoly) -> int:
    """Rank of the induced F_q-linear map."""
    from .linalg import field_rank
    return field_rank(matrix_of(f), f.field)


def kernel(f: LinPoly):
    """F_q-basis of the kernel, as field elements."""
    F = f.field
    null = field_nullspace(matrix_of(f), F)
    return [F.from_fq_coordinates(v) for v in null]


def is_invertible(f: LinPoly) -> bool:
    return rank(f) == f.field.n


def invert(f: LinPoly) -> LinPoly:
    """Compositional inverse of a bijective LinPoly."""
    F = f.field
    M = matrix_of(f)
    aug = [list(row) + [1 if i == j else 0 for j in range(F.n)]
           for i, row in enumerate(M)]
    rows, pivots = field_rref(aug, F)
    if pivots != list(range(F.n)):
        raise PreconditionError("polynomial is not invertible")
    # rref of [M | I] is [I | M^-1]; column j of M^-1 gives f^-1(y^j)
    values = [F.from_fq_coordinates([rows[r][F.n + j] for r in range(F.n)])
              for j in range(F.n)]
    return linpoly_from_values(F, values)


def linpoly_from_values(field, values):
    """The unique LinPoly taking the given values on the basis 1, y, ..., y^(n-1).

    Solves the F_p-linear interpolation system in the n coefficients; raises
    if the value table is not F_q-linear (no exact solution).
    """
    A, _ = _linpoly_interp_system(field)
    b = np.concatenate([np.array(field.digits(v), dtype=np.int16) for v in values])
    u = solve_mod_p(A, b, field.p)
    if u is None:
        raise PreconditionError("value table is not q-linearized")
    return LinPoly.from_fp_vector(field, u)


_interp_cache = {}


def _linpoly_interp_system(field):
    key = (id(field), "q")
    if key not in _interp_cache:
        F = field
        deg, n = F.deg, F.n
        ypow = F.fp_basis()
        cols = []
        for i in range(n):           # unknown coefficient a_i
            for t in range(deg):     # digit t of a_i (basis y^t)
                col = np.empty(n * deg, dtype=np.int16)
                for r, e in enumerate(F.fq_basis()):
                    val = F.mul(ypow[t], F.frob_q(e, i))
                    col[r * deg:(r + 1) * deg] = F.digits(val)
                cols.append(col)
        _interp_cache[key] = (np.stack(cols, axis=1), None)
    return _interp_cache[key]


# ---------------------------------------------------------------------------
# Additive maps
# ---------------------------------------------------------------------------

class AdditiveMap:
    """p-linearized map sum c_j x^(p^j) on the top field."""

    __slots__ = ("field", "pcoeffs")

    def __init__(self, field, pcoeffs):
        pcoeffs = tuple(int(c) for c in pcoeffs)
        if len(pcoeffs) != field.deg:
            raise PreconditionError(
                f"need exactly lam*n = {field.deg} coefficients, got {len(pcoeffs)}")
        self.field = field
        self.pcoeffs = pcoeffs

    @classmethod
    def zero(cls, field):
        return cls(field, (0,) * field.deg)

    @classmethod
    def identity(cls, field):
        return cls(field, (1,) + (0,) * (field.deg - 1))

    @classmethod
    def monomial(cls, field, coeff, pexp):
        c = [0] * field.deg
        c[pexp % field.deg] = coeff
        return cls(field, c)

    @property
    def support(self):
        return tuple(j for j, c in enumerate(self.pcoeffs) if c)

    def is_zero(self):
        return not any(self.pcoeffs)

    def evaluate(self, x):
        F = self.field
        acc = 0
        for j, c in enumerate(self.pcoeffs):
            if c:
                acc = F.add(acc, F.mul(c, F.frobenius(x, j)))
        return acc

    def add(self, other):
        F = self.field
        return AdditiveMap(F, [F.add(a, b) for a, b in zip(self.pcoeffs, other.pcoeffs)])

    def neg(self):
        F = self.field
        return AdditiveMap(F, [F.neg(a) for a in self.pcoeffs])

    def scale(self, c):
        """Left scalar multiple x -> c * L(x)."""
        F = self.field
        return AdditiveMap(F, [F.mul(c, a) for a in self.pcoeffs])

    def twist(self, m):
        """x -> L(x)^(p^m), i.e. Frobenius applied after the map."""
        F = self.field
        out = [0] * F.deg
        for j, c in enumerate(self.pcoeffs):
            if c:
                out[(j + m) % F.deg] = F.frobenius(c, m)
        return AdditiveMap(F, out)

    def is_q_linearized(self):
        lam = self.field.lam
        return all(c == 0 for j, c in enumerate(self.pcoeffs) if j % lam)

    def to_linpoly(self):
        F = self.field
        if not self.is_q_linearized():
            raise PreconditionError("map is not q-linearized")
        return LinPoly(F, [self.pcoeffs[F.lam * i] for i in range(F.n)])

    def matrix(self):
        """(lam*n) x (lam*n) F_p matrix, columns = digit images of y-powers."""
        F = self.field
        cols = [F.digits(self.evaluate(b)) for b in F.fp_basis()]
        return np.array(cols, dtype=np.int16).T

    def fp_rank(self):
        return rank_mod_p(self.matrix(), self.field.p)

    def __eq__(self, other):
        return (
            isinstance(other, AdditiveMap)
            and self.field == other.field
            and self.pcoeffs == other.pcoeffs
        )

    def __hash__(self):
        return hash(self.pcoeffs)

    def __repr__(self):
        terms = [f"{c}*x^p{j}" for j, c in enumerate(self.pcoeffs) if c]
        return "AdditiveMap(" + (" + ".join(terms) or "0") + ")"


def compose_add(f: AdditiveMap, g: AdditiveMap) -> AdditiveMap:
    """f(g(x)) for additive maps; same convolution rule at the p-level."""
    if f.field != g.field:
        raise PreconditionError("composition needs a common field")
    F = f.field
    d = F.deg
    out = [0] * d
    for m, fm in enumerate(f.pcoeffs):
        if not fm:
            continue
        for j, gj in enumerate(g.pcoeffs):
            if not gj:
                continue
            t = (m + j) % d
            out[t] = F.add(out[t], F.mul(fm, F.frobenius(gj, m)))
    return AdditiveMap(F, out)


def additive_from_matrix(field, M) -> AdditiveMap:
    """Interpolate the unique p-polynomial with the given F_p matrix."""
    A = _additive_interp_system(field)
    b = np.asarray(M, dtype=np.int16).T.reshape(-1)
    u = solve_mod_p(A, b, field.p)
    assert u is not None, "every F_p-linear map is a p-polynomial"
    deg = field.deg
    pcoeffs = [field.from_digits(u[j * deg:(j + 1) * deg]) for j in range(deg)]
    return AdditiveMap(field, pcoeffs)


def additive_from_values(field, values) -> AdditiveMap:
    """AdditiveMap taking the given values on the basis 1, y, ..., y^(deg-1)."""
    M = np.array([field.digits(v) for v in values], dtype=np.int16).T
    return additive_from_matrix(field, M)


_additive_cache = {}


def _additive_interp_system(field):
    key = id(field)
    if key not in _additive_cache:
        F = field
        deg = F.deg
        ypow = F.fp_basis()
        cols = []
        for j in range(deg):        # unknown pcoeff c_j
            for t in range(deg):    # digit t of c_j
                col = np.empty(deg * deg, dtype=np.int16)
                for r, e in enumerate(ypow):
                    val = F.mul(ypow[t], F.frobenius(e, j))
                    col[r * deg:(r + 1) * deg] = F.digits(val)
                cols.append(col)
        _additive_cache[key] = np.stack(cols, axis=1)
    return _additive_cache[key]


# ---------------------------------------------------------------------------
# Factoring one additive map through another
# ---------------------------------------------------------------------------

def factor_through(L: AdditiveMap, M: AdditiveMap):
    """A bijective T with M = L o T, or None.

    Such a T exists exactly when the images of M and L agree as
    F_p-subspaces.  The construction is deterministic: take the preimage
    of M through a fixed complement of ker L, then graft an isomorphism
    ker S -> ker L on top, which forces invertibility.
    """
    if L.field != M.field:
        raise PreconditionError("maps must live on a common field")
    F = L.field
    p, d = F.p, F.deg
    matL = np.asarray(L.matrix())
    matM = np.asarray(M.matrix())

    imL, pivL = rref_mod_p(matL.T, p)
    imM, pivM = rref_mod_p(matM.T, p)
    if len(pivL) != len(pivM) or not np.array_equal(imL[: len(pivL)], imM[: len(pivM)]):
        return None

    # Complement W of ker L, spanned by standard vectors missing the kernel.
    K = nullspace_mod_p(matL, p)              # rows span ker L
    dk = K.shape[0]
    Wsel = _complete_to_basis(K, p, d)
    W = np.zeros((d, len(Wsel)), dtype=np.int16)
    for c, i in enumerate(Wsel):
        W[i, c] = 1
    LW = (matL @ W) % p                        # columns: L on the W-basis

    # S: the unique W-valued preimage of M (so rank S = rank M = rank L).
    Scols = []
    for r in range(d):
        cvec = solve_mod_p(LW, matM[:, r], p)
        assert cvec is not None
        Scols.append((W @ cvec) % p)
    S = np.stack(Scols, axis=1) % p

    # Graft: map ker S isomorphically onto ker L, zero on a complement.
    N = nullspace_mod_p(S, p)                  # rows span ker S, dim dk
    assert N.shape[0] == dk
    if dk:
        comp = _complete_to_basis(N, p, d)
        B = np.zeros((d, d), dtype=np.int16)
        B[:, :dk] = N.T
        for c, i in enumerate(comp):
            B[i, dk + c] = 1
        Binv = inv_mod_p(B, p)
        proj = np.zeros((dk, d), dtype=np.int16)
        proj[:, :dk] = np.eye(dk, dtype=np.int16)
        C = (K.T @ proj @ Binv) % p
        T = (S + C) % p
    else:
        T = S
    assert inv_mod_p(T, p) is not None
    assert np.array_equal((matL @ T) % p, matM % p)
    return additive_from_matrix(F, T)


def _complete_to_basis(rows, p, dim):
    """Indices of standard basis vectors extending the row space to full rank."""
    cur = rows.copy() if len(rows) else np.zeros((0, dim), dtype=np.int16)
    chosen = []
    r = rank_mod_p(cur, p) if len(cur) else 0
    for i in range(dim):
        if r == dim:
            break
        e = np.zeros((1, dim), dtype=np.int16)
        e[0, i] = 1
        cand = np.vstack([cur, e])
        if rank_mod_p(cand, p) > r:
            cur = cand
            r += 1
            chosen.append(i)
    return chosen
