"""Finite field arithmetic as lookup tables.

Elements of GF(p^k) are the integers 0..q-1; the base-p digits of an integer
are the coefficients of a polynomial in the distinguished generator, constant
term first. For k >= 2 the generator is a root of the shipped Conway
polynomial (primitive by construction), so the element p, i.e. the polynomial
x, generates the multiplicative group. For prime fields the generator is the
least primitive root mod p.

Everything is table-driven because q <= 81: add/mul are (q, q) uint8 arrays
and all derived maps (inverse, Frobenius) are plain index arrays.
"""

from functools import lru_cache

import numpy as np

from .config import FIELD_CAP
from .errors import UnsupportedSpec

# Conway polynomials for the composite q <= 81, as coefficient tuples
# c_0..c_k with c_k = 1.
_CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def prime_power(n):
    """Return (p, k) with n == p**k, or None if n is not a prime power."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return (n, 1)
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


def _least_primitive_root(p):
    for g in range(2, p):
        x, order = g, 1
        while x != 1:
            x = x * g % p
            order += 1
        if order == p - 1:
            return g
    return 1  # p == 2


class GF:
    """Arithmetic tables for GF(q). Use gf(q) to get the cached instance."""

    def __init__(self, q):
        pk = prime_power(q)
        if pk is None:
            raise UnsupportedSpec(f"q = {q} is not a prime power")
        if q > FIELD_CAP:
            raise UnsupportedSpec(f"q = {q} exceeds the field cap {FIELD_CAP}")
        self.q = q
        self.p, self.k = pk
        p, k = pk

        # digits[e, i] = coefficient of x**i in element e; int64 keeps the
        # modular arithmetic below out of uint8 wraparound
        ar = np.arange(q)
        digits = np.stack([(ar // p**i) % p for i in range(k)], axis=1)
        self.digits = digits.astype(np.uint8)

        summed = (digits[:, None, :] + digits[None, :, :]) % p
        weights = p ** np.arange(k)
        self.add = np.tensordot(summed, weights, axes=([2], [0])).astype(np.uint8)
        self.neg = np.tensordot((-digits) % p, weights, axes=([1], [0])).astype(np.uint8)

        if k == 1:
            self.gen = _least_primitive_root(p) if p > 2 else 1
            mul_int = (ar[:, None] * ar[None, :]) % p
        else:
            self.gen = p  # the polynomial x
            mul_int = None

        # exp/log for the cyclic multiplicative group
        exp = np.zeros(q - 1, dtype=np.uint8)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            x = x * self.gen % p if k == 1 else self._times_x(x)
        assert x == 1, "generator does not have order q - 1"
        assert len(set(exp.tolist())) == q - 1
        self.exp = exp
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.log = log

        if mul_int is None:
            mul_int = np.zeros((q, q), dtype=np.int64)
            nz = ar[1:]
            mul_int[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul = mul_int.astype(np.uint8)

        self.inv = np.zeros(q, dtype=np.uint8)
        self.inv[1:] = exp[(-log[ar[1:]]) % (q - 1)]

        self.frob = np.zeros(q, dtype=np.uint8)
        self.frob[1:] = exp[(log[ar[1:]] * p) % (q - 1)]

    def _times_x(self, e):
        """Multiply the polynomial e by x and reduce mod the Conway polynomial."""
        p, k = self.p, self.k
        shifted = e * p
        top, rest = divmod(shifted, p**k)
        if top == 0:
            return rest
        conway = _CONWAY[(p, k)]
        out = 0
        for i in range(k):
            d = (rest // p**i) % p
            out += ((d - top * conway[i]) % p) * p**i
        return out

    def element_order(self, e):
        if e == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.q - 1
        ell = int(self.log[e])
        from math import gcd
        return n // gcd(n, ell)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def gf(q):
    return GF(q)


# -- small dense matrices over GF(q) ------------------------------------------
# Matrices are 2-d uint8 numpy arrays with entries in 0..q-1.


def mat_mul(F, a, b):
    prods = F.mul[a[:, :, None], b[None, :, :]]
    acc = prods[:, 0, :]
    for t in range(1, a.shape[1]):
        acc = F.add[acc, prods[:, t, :]]
    return acc


def mat_vec(F, a, v):
    prods = F.mul[a, v[None, :]]
    acc = prods[:, 0]
    for t in range(1, len(v)):
        acc = F.add[acc, prods[:, t]]
    return acc


def mat_identity(F, n):
    m = np.zeros((n, n), dtype=np.uint8)
    np.fill_diagonal(m, 1)
    return m


def mat_inv(F, a):
    """Gauss-Jordan inverse; raises ValueError on singular input."""
    n = a.shape[0]
    work = np.concatenate([a.copy(), mat_identity(F, n)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        work[col] = F.mul[F.inv[work[col, col]], work[col]]
        for r in range(n):
            if r != col and work[r, col] != 0:
                scaled = F.mul[work[r, col], work[col]]
                work[r] = F.add[work[r], F.neg[scaled]]
    return work[:, n:].copy()


def mat_frob(F, a):
    return F.frob[a]


def mat_det(F, a):
    n = a.shape[0]
    work = a.copy()
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            det = F.neg[det]
        det = int(F.mul[det, work[col, col]])
        invp = F.inv[work[col, col]]
        for r in range(col + 1, n):
            if work[r, col] != 0:
                scaled = F.mul[F.mul[invp, work[r, col]], work[col]]
                work[r] = F.add[work[r], F.neg[scaled]]
    return det
