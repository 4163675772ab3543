"""The finite-field tower F_p <= F_q = F_{p^lam} <= F_{q^n}.

One concrete field F_{p^(lam*n)} carries the whole tower; every subfield is
identified inside it by the Frobenius fixed-point test, so no embedding
bookkeeping is ever needed.

Representation.  An element is a plain Python int in [0, p^(lam*n)): its
base-p digits, constant coefficient least significant, are the coordinates
in the polynomial basis 1, y, y^2, ... of the quotient ring F_p[y]/(modulus).
All ordering statements ("smallest element", "smallest modulus") compare
these integer encodings, i.e. coefficient sequences weighted from the
constant term upward.  Construction is deterministic: identical inputs give
a bit-identical field, modulus, generator and tables.

Multiplication runs on full exp/log tables whenever the field size fits the
configured budget (the intended desk scale); larger fields fall back to
polynomial arithmetic and refuse discrete logarithms.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import config
from .errors import BudgetExceededError, PreconditionError


# ---------------------------------------------------------------------------
# Dense polynomial arithmetic over F_p (coefficient lists, ascending degree)
# ---------------------------------------------------------------------------

def _polmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _polmod(a, m, p):
    # m monic; returns a mod m with len == deg(m)
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm] + [0] * max(0, dm - len(a))


def _polpow_x(e, m, p):
    # x^e mod m by square-and-multiply on exponent bits
    result = [1]
    base = [0, 1]
    while e:
        if e & 1:
            result = _polmod(_polmul(result, base, p), m, p)
        base = _polmod(_polmul(base, base, p), m, p)
        e >>= 1
    return result


def _polgcd(a, b, p):
    a, b = list(a), list(b)
    while any(b):
        # a mod b with b made monic first
        while b and b[-1] == 0:
            b.pop()
        inv = pow(b[-1], -1, p)
        bm = [(inv * c) % p for c in b]
        r = list(a)
        for i in range(len(r) - 1, len(bm) - 2, -1):
            c = r[i]
            if c:
                r[i] = 0
                for j in range(len(bm) - 1):
                    r[i - len(bm) + 1 + j] = (r[i - len(bm) + 1 + j] - c * bm[j]) % p
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    return a


def is_irreducible(coeffs, p) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    m = list(coeffs)
    d = len(m) - 1
    if d < 1 or m[-1] != 1:
        return False
    if d == 1:
        return True
    # x^(p^d) == x mod m
    expect = [0] * d
    expect[1] = 1
    if _polpow_x(p**d, m, p) != expect:
        return False
    # gcd(x^(p^(d/l)) - x, m) must be constant for every prime l | d
    for ell in _prime_factors(d):
        t = _polpow_x(p ** (d // ell), m, p)
        t = list(t)
        if len(t) < 2:
            t = t + [0] * (2 - len(t))
        t[1] = (t[1] - 1) % p
        g = _polgcd(m, t, p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _is_prime(p) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def smallest_irreducible(p, degree):
    """Monic irreducible of given degree over F_p with the smallest encoding."""
    for low in range(p**degree):
        digits = []
        t = low
        for _ in range(degree):
            digits.append(t % p)
            t //= p
        cand = digits + [1]
        if is_irreducible(cand, p):
            return cand
    raise PreconditionError(f"no irreducible of degree {degree} over F_{p}")


# ---------------------------------------------------------------------------
# The field
# ---------------------------------------------------------------------------

class Field:
    """F_{p^(lam*n)} with its subfield tower, Frobenius and dlog tables.

    Parameters
    ----------
    p : prime characteristic
    lam : degree of F_q over F_p (q = p^lam)
    n : degree of the top field over F_q
    modulus : optional coefficient sequence (ascending, degree lam*n);
        when omitted the smallest monic irreducible is chosen.
    dlog_budget : largest field size for which exp/log tables are built.
    build_tables : set False to construct an over-budget field without
        discrete logarithms (polynomial arithmetic only).
    """

    def __init__(self, p, lam, n, modulus=None, *, dlog_budget=None,
                 build_tables=True):
        if not _is_prime(p):
            raise PreconditionError(f"p = {p} is not prime")
        if lam < 1 or n < 1:
            raise PreconditionError("lambda and n must be positive")
        self.p = int(p)
        self.lam = int(lam)
        self.n = int(n)
        self.deg = self.lam * self.n
        self.order = self.p**self.deg
        self.q = self.p**self.lam
        self.group_order = self.order - 1

        if modulus is None:
            modulus = smallest_irreducible(p, self.deg)
        else:
            modulus = [int(c) % p for c in modulus]
            while len(modulus) > 1 and modulus[-1] == 0:
                modulus.pop()
            if len(modulus) - 1 != self.deg:
                raise PreconditionError(
                    f"modulus degree {len(modulus) - 1} != lambda*n = {self.deg}")
            if modulus[-1] != 1:
                inv = pow(modulus[-1], -1, p)
                modulus = [(inv * c) % p for c in modulus]
            if not is_irreducible(modulus, p):
                raise PreconditionError("modulus is reducible over F_p")
        self.modulus = tuple(modulus)

        budget = config.DLOG_TABLE_BUDGET if dlog_budget is None else dlog_budget
        if build_tables and self.order > budget:
            raise BudgetExceededError(
                f"field size {self.order} exceeds dlog budget {budget}; "
                "pass build_tables=False for a table-free field")

        self._pw = [self.p**i for i in range(self.deg)]
        self.generator = self._find_generator()
        self._exp = None
        self._log = None
        if build_tables:
            self._build_tables()
        # lazy numpy caches
        self._digit_table = None
        self._frob_perms = {}

    # -- construction internals --------------------------------------------

    def _int_to_pol(self, x):
        digs = []
        for _ in range(self.deg):
            digs.append(x % self.p)
            x //= self.p
        return digs

    def _pol_to_int(self, pol):
        v = 0
        for c in reversed(pol[: self.deg]):
            v = v * self.p + (c % self.p)
        return v

    def _mul_poly(self, a, b):
        if a == 0 or b == 0:
            return 0
        prod = _polmul(self._int_to_pol(a), self._int_to_pol(b), self.p)
        return self._pol_to_int(_polmod(prod, list(self.modulus), self.p))

    def _pow_poly(self, a, e):
        r = 1
        b = a
        while e:
            if e & 1:
                r = self._mul_poly(r, b)
            b = self._mul_poly(b, b)
            e >>= 1
        return r

    def _find_generator(self):
        n1 = self.group_order
        if n1 == 1:
            return 1
        primes = _prime_factors(n1)
        for x in range(2, self.order):
            if all(self._pow_poly(x, n1 // ell) != 1 for ell in primes):
                return x
        raise AssertionError("no primitive element found")

    def _build_tables(self):
        n1 = self.group_order
        exp = [0] * n1
        log = [0] * self.order
        v = 1
        for k in range(n1):
            exp[k] = v
            log[v] = k
            v = self._mul_poly(v, self.generator)
        self._exp = exp
        self._log = log

    # -- identity ------------------------------------------------------------

    @property
    def has_dlog_table(self):
        return self._exp is not None

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.lam, self.n, self.modulus)
            == (other.p, other.lam, other.n, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.lam, self.n, self.modulus))

    def __repr__(self):
        return f"Field(p={self.p}, lam={self.lam}, n={self.n}, modulus={list(self.modulus)})"

    # -- element arithmetic ---------------------------------------------------

    def digits(self, x):
        """Base-p coordinate tuple of x, constant coefficient first."""
        return tuple(self._int_to_pol(x))

    def from_digits(self, seq):
        return self._pol_to_int([int(c) for c in seq])

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        v = 0
        for i in range(self.deg - 1, -1, -1):
            w = self._pw[i]
            v = v * self.p + ((a // w + b // w) % self.p)
        return v

    def neg(self, a):
        if self.p == 2:
            return a
        v = 0
        for i in range(self.deg - 1, -1, -1):
            v = v * self.p + (-(a // self._pw[i]) % self.p)
        return v

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % self.group_order]
        return self._mul_poly(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._exp is not None:
            return self._exp[(-self._log[a]) % self.group_order]
        return self._pow_poly(a, self.group_order - 1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_el(self, a, e):
        """a**e with e any integer (negative allowed for units)."""
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % self.group_order]
        if e < 0:
            a = self.inv(a)
            e = -e
        return self._pow_poly(a, e)

    def exp_g(self, k):
        """g^k for the fixed generator g."""
        if self._exp is None:
            return self._pow_poly(self.generator, k % self.group_order)
        return self._exp[k % self.group_order]

    def dlog(self, x):
        """Exponent k with g^k = x; requires the table and x != 0."""
        if x == 0:
            raise PreconditionError("dlog(0) is undefined")
        if self._log is None:
            raise BudgetExceededError("dlog table unavailable (field over budget)")
        return self._log[x]

    # -- tower operations ------------------------------------------------------

    def frobenius(self, x, e):
        """x^(p^e); e is reduced mod lam*n."""
        e %= self.deg
        if x == 0 or e == 0:
            return x
        if self._exp is not None:
            return self._exp[(self._log[x] * self._pw[e]) % self.group_order]
        return self._pow_poly(x, self._pw[e])

    def frob_q(self, x, e):
        """x^(q^e), the Frobenius of the middle level."""
        return self.frobenius(x, (self.lam * e) % self.deg)

    def norm_rel(self, x, m):
        """Norm from the top field onto the subfield of p^m elements."""
        if self.deg % m:
            raise PreconditionError(f"m = {m} does not divide lambda*n = {self.deg}")
        if x == 0:
            return 0
        return self.pow_el(x, self.group_order // (self.p**m - 1))

    def trace_rel(self, x, m):
        """Trace from the top field onto the subfield of p^m elements."""
        if self.deg % m:
            raise PreconditionError(f"m = {m} does not divide lambda*n = {self.deg}")
        acc = 0
        cur = x
        for _ in range(self.deg // m):
            acc = self.add(acc, cur)
            cur = self.frobenius(cur, m)
        return acc

    def norm(self, x):
        """Norm onto F_q."""
        return self.norm_rel(x, self.lam)

    def trace(self, x):
        """Trace onto F_q."""
        return self.trace_rel(x, self.lam)

    def in_subfield(self, x, m):
        """True iff x lies in the subfield of p^m elements."""
        if self.deg % m:
            raise PreconditionError(f"m = {m} does not divide lambda*n = {self.deg}")
        return self.frobenius(x, m) == x

    def chi_is_trivial(self, x, d):
        """True iff the order-d multiplicative character is 1 at x.

        The character is extended by chi(0) = 0, so zero never passes.
        """
        if self.group_order % d:
            raise PreconditionError(f"d = {d} does not divide q^n - 1")
        if x == 0:
            return False
        return self.pow_el(x, self.group_order // d) == 1

    def neg_one_power(self, k):
        """(-1)^k as a field element."""
        return 1 if k % 2 == 0 else self.neg(1)

    # -- iteration ----------------------------------------------------------------

    def elements(self):
        return range(self.order)

    def units_by_dlog(self):
        """All nonzero elements in dlog-ascending order g^0, g^1, ..."""
        if self._exp is not None:
            return list(self._exp)
        return [self._pow_poly(self.generator, k) for k in range(self.group_order)]

    def subfield_elements(self, m):
        return [x for x in range(self.order) if self.in_subfield(x, m)]

    def subfield_fp_basis(self, m):
        """An F_p-basis of the p^m-element subfield: powers of its generator."""
        if self.deg % m:
            raise PreconditionError(f"m = {m} does not divide lambda*n = {self.deg}")
        w = self.exp_g(self.group_order // (self.p**m - 1))
        return [self.pow_el(w, i) for i in range(m)]

    def fp_basis(self):
        """The polynomial basis 1, y, ..., y^(deg-1) as integers."""
        return [self.p**0] + [self._pw[i] for i in range(1, self.deg)]

    # -- F_q coordinates -------------------------------------------------------

    def fq_basis(self):
        """The fixed F_q-basis 1, y, ..., y^(n-1) of the top field."""
        return [self.pow_el(self.p, i) for i in range(self.n)]

    def _fq_coord_setup(self):
        if getattr(self, "_fq_mat_inv", None) is not None:
            return
        from .linalg import inv_mod_p
        # columns: digits of (w^t * y^i) for the F_p-basis w^t of F_q
        wbasis = self.subfield_fp_basis(self.lam)
        cols = []
        self._fq_products = []
        for i in range(self.n):
            yi = self.pow_el(self.p, i)
            for t in range(self.lam):
                prod = self.mul(wbasis[t], yi)
                self._fq_products.append(prod)
                cols.append(self.digits(prod))
        M = np.array(cols, dtype=np.int16).T
        inv = inv_mod_p(M, self.p)
        assert inv is not None
        self._fq_mat_inv = inv
        self._fq_wbasis = wbasis

    def fq_coordinates(self, x):
        """Coordinates of x in the basis 1, y, ..., y^(n-1) over F_q.

        Returns a tuple of n field integers, each lying in F_q.
        """
        self._fq_coord_setup()
        d = np.array(self.digits(x), dtype=np.int16)
        c = (self._fq_mat_inv @ d) % self.p
        out = []
        for i in range(self.n):
            v = 0
            for t in range(self.lam):
                if c[i * self.lam + t]:
                    v = self.add(v, self.mul(int(c[i * self.lam + t]),
                                             self._fq_wbasis[t]))
            out.append(v)
        return tuple(out)

    def from_fq_coordinates(self, coords):
        acc = 0
        for i, c in enumerate(coords):
            acc = self.add(acc, self.mul(c, self.pow_el(self.p, i)))
        return acc

    # -- bulk numpy helpers ------------------------------------------------------

    @property
    def digit_table(self):
        """(order, deg) uint8 array: row x = base-p digits of element x."""
        if self._digit_table is None:
            idx = np.arange(self.order, dtype=np.int64)
            cols = []
            for _ in range(self.deg):
                cols.append((idx % self.p).astype(np.uint8))
                idx //= self.p
            self._digit_table = np.stack(cols, axis=1)
        return self._digit_table

    def pack_digits(self, digits):
        """Inverse of digit_table lookup for an (..., deg) digit array."""
        digits = np.asarray(digits, dtype=np.int64) % self.p
        weights = np.array(self._pw, dtype=np.int64)
        return digits @ weights

    def frob_perm(self, e):
        """Array F with F[x] = x^(p^e) for every element x."""
        e %= self.deg
        if e not in self._frob_perms:
            if self._exp is None:
                raise BudgetExceededError("bulk tables need the dlog table")
            n1 = self.group_order
            exp = np.array(self._exp, dtype=np.int64)
            log = np.array(self._log, dtype=np.int64)
            out = np.zeros(self.order, dtype=np.int64)
            out[exp] = exp[(log[exp] * self._pw[e]) % n1]
            self._frob_perms[e] = out
        return self._frob_perms[e]

    def mul_vec(self, c, arr):
        """c * arr element-wise for a scalar c and an int array of elements."""
        if c == 0:
            return np.zeros_like(arr)
        if self._exp is None:
            raise BudgetExceededError("bulk tables need the dlog table")
        n1 = self.group_order
        exp = np.array(self._exp, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        out = np.zeros_like(np.asarray(arr, dtype=np.int64))
        nz = np.asarray(arr) != 0
        out[nz] = exp[(log[np.asarray(arr)[nz]] + self._log[c]) % n1]
        return out

    # -- parsing / formatting -------------------------------------------------------

    def parse_element(self, obj):
        """Accept int encodings, digit lists, and "g^k" strings."""
        if isinstance(obj, int):
            if not 0 <= obj < self.order:
                raise PreconditionError(f"element {obj} out of range")
            return obj
        if isinstance(obj, (list, tuple)):
            if len(obj) > self.deg:
                raise PreconditionError("too many coordinates")
            return self.from_digits(list(obj) + [0] * (self.deg - len(obj)))
        if isinstance(obj, str):
            s = obj.strip()
            if s == "0":
                return 0
            if s == "g":
                return self.generator
            if s.startswith("g^"):
                return self.exp_g(int(s[2:]))
            raise PreconditionError(f"cannot parse element {obj!r}")
        raise PreconditionError(f"cannot parse element {obj!r}")

    def format_element(self, x, style="digits"):
        if style == "digits":
            return list(self.digits(x))
        if style == "glog":
            return "0" if x == 0 else f"g^{self.dlog(x)}"
        raise PreconditionError(f"unknown element style {style!r}")


def field_create(p, lam, n, modulus=None, **kw):
    """Factory matching the construction contract of the tower."""
    return Field(p, lam, n, modulus, **kw)
