"""Dense linear algebra over GF(p) and over subfields of a tower.

Two layers live here.  The numpy layer works on uint8 digit matrices mod a
small prime p and is used for every F_p-span computation (code bases,
membership, nucleus systems).  The generic layer runs textbook Gaussian
elimination with caller-supplied field arithmetic and is used where entries
are elements of an intermediate subfield F_q rather than prime-field digits.
"""

from __future__ import annotations

import numpy as np


# ---------------------------------------------------------------------------
# GF(p) digit matrices
# ---------------------------------------------------------------------------

def rref_mod_p(M, p):
    """Reduced row-echelon form of an integer matrix mod p.

    Returns:
        (R, pivots): R is the fully reduced form (int16, entries in [0, p)),
        pivots the list of pivot column indices; len(pivots) is the rank.
    """
    R = (np.asarray(M, dtype=np.int16) % p).copy()
    if R.ndim != 2:
        R = np.atleast_2d(R)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            R[mask] = (R[mask] - np.outer(col[mask], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(M, p):
    return len(rref_mod_p(M, p)[1])


def nullspace_mod_p(M, p):
    """Basis (rows) of the right null space {x : M x = 0} over GF(p)."""
    M = np.asarray(M, dtype=np.int16) % p
    rows, cols = M.shape
    R, pivots = rref_mod_p(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int16)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(pivots):
            basis[i, c] = (-R[r, f]) % p
    return basis


def solve_mod_p(M, b, p):
    """One solution of M x = b over GF(p), or None if inconsistent."""
    M = np.asarray(M, dtype=np.int16) % p
    b = np.asarray(b, dtype=np.int16) % p
    aug = np.hstack([M, b.reshape(-1, 1)])
    R, pivots = rref_mod_p(aug, p)
    cols = M.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int16)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


def inv_mod_p(M, p):
    """Inverse of a square matrix over GF(p), or None if singular."""
    M = np.asarray(M, dtype=np.int16) % p
    m = M.shape[0]
    aug = np.hstack([M, np.eye(m, dtype=np.int16)])
    R, pivots = rref_mod_p(aug, p)
    if pivots[:m] != list(range(m)):
        return None
    return R[:, m:]


def reduce_rows(V, R, pivots, p):
    """Reduce the rows of V against an rref basis R; returns the residuals.

    A residual row of zeros means the corresponding row of V lies in the
    row space of R.  Vectorized over all rows of V at once.
    """
    V = (np.asarray(V, dtype=np.int16) % p).copy()
    if V.ndim == 1:
        V = V.reshape(1, -1)
    for r, c in enumerate(pivots):
        col = V[:, c].copy()
        mask = col != 0
        if mask.any():
            V[mask] = (V[mask] - np.outer(col[mask], R[r])) % p
    return V


def in_rowspace(v, R, pivots, p):
    return not reduce_rows(v, R, pivots, p).any()


class SpanBasis:
    """An F_p-subspace kept in canonical reduced row-echelon form."""

    def __init__(self, vectors, p):
        R, pivots = rref_mod_p(vectors, p)
        self.p = p
        self.rref = R[: len(pivots)]
        self.pivots = pivots
        self.dim = len(pivots)
        self.width = R.shape[1]

    def contains(self, v) -> bool:
        return in_rowspace(v, self.rref, self.pivots, self.p)

    def contains_all(self, V) -> bool:
        return not reduce_rows(V, self.rref, self.pivots, self.p).any()

    def key(self) -> bytes:
        """Canonical hashable identity of the subspace."""
        return self.rref.astype(np.uint8).tobytes()

    def __eq__(self, other):
        return (
            isinstance(other, SpanBasis)
            and self.p == other.p
            and self.width == other.width
            and self.dim == other.dim
            and np.array_equal(self.rref, other.rref)
        )

    def __hash__(self):
        return hash((self.p, self.width, self.key()))


# ---------------------------------------------------------------------------
# Elimination with caller-supplied field arithmetic
# ---------------------------------------------------------------------------

def field_rref(rows, field):
    """Reduced row echelon form where entries are field elements (ints).

    ``field`` must provide mul/inv/sub/add.  Entries may lie in any subfield;
    elimination never leaves the subfield generated by the entries.
    """
    R = [list(r) for r in rows]
    if not R:
        return [], []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(R):
            break
        k = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        inv = field.inv(R[r][c])
        R[r] = [field.mul(inv, x) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R[: len(pivots)], pivots


def field_rank(rows, field):
    return len(field_rref(rows, field)[1])


def field_nullspace(rows, field):
    """Basis of the right null space with entries in the field."""
    R, pivots = field_rref(rows, field)
    ncols = len(rows[0]) if rows else 0
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = field.neg(R[r][f])
        out.append(v)
    return out
