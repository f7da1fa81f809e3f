"""Exact arithmetic in F_{p^n} with a deterministic element encoding.

An element a0 + a1*t + ... + a_{n-1}*t^{n-1} is encoded as the integer
index a0 + a1*p + ... + a_{n-1}*p^{n-1}.  A FieldCtx precomputes dense
add/mul/neg/inv/frobenius tables over the q = p^n indices, so that both
scalar arithmetic and the bulk array arithmetic used by linalg are plain
table lookups.  Tables are only built for q <= 2048, which covers every
field this package targets (F_9, F_25 and their quadratic extensions).

Default moduli: t^2 + 1 for p = 3, t^2 + 2 for p = 5 (both irreducible,
verified at context creation).
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParams,
    ContextMismatch,
    DegreeMismatch,
    DivisionByZero,
    FieldTooLarge,
    NotPrime,
    PrimeFieldElement,
    PrimeFieldOnly,
    ReducibleModulus,
)

_TABLE_LIMIT = 2048

DEFAULT_MODULI = {
    (3, 2): (1, 0, 1),  # t^2 + 1
    (5, 2): (2, 0, 1),  # t^2 + 2
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over F_p (coefficient tuples, index = exponent).
# Used only for modulus validation; everything else runs on tables.


def _ptrim(a: Sequence[int]) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pmulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1 or 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            scale = (c * inv_lead) % p
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - scale * f[j]) % p
    return _ptrim(a[:df])


def _ppowmod(a, e, f, p):
    result = (1,)
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        # reduce a mod b
        a = _pdivmod_rem(a, b, p)
        a, b = b, a
    return a


def _pdivmod_rem(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db and _ptrim(a):
        c = a[-1] % p
        if c:
            scale = (c * inv_lead) % p
            shift = len(a) - 1 - db
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - scale * b[j]) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return _ptrim(a)


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Deterministic irreducibility test for a monic f over F_p."""
    n = len(f) - 1
    if n == 1:
        return True
    x = (0, 1)
    # x^(p^n) == x mod f
    xq = x
    for _ in range(n):
        xq = _ppowmod(xq, p, f, p)
    diff = _psub(xq, x, p)
    if _ptrim(diff):
        return False
    # gcd(x^(p^(n/r)) - x, f) == 1 for every prime r | n
    for r in _prime_divisors(n):
        xe = x
        for _ in range(n // r):
            xe = _ppowmod(xe, p, f, p)
        g = _pgcd(_psub(xe, x, p), f, p)
        if len(g) - 1 > 0:
            return False
    return True


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai % p
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _ptrim(out)


def _prime_divisors(n: int):
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
    return out


# ---------------------------------------------------------------------------


class FieldCtx:
    """Arithmetic context for F_{p^n}; immutable after construction."""

    __slots__ = (
        "p", "n", "q", "modulus",
        "add", "sub", "mul", "neg", "inv", "frob", "proot",
        "_digits", "_pwr",
    )

    def __init__(self, p: int, n: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if n < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {n}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1:
            raise DegreeMismatch(
                f"modulus must have {n + 1} coefficients for degree {n}, got {len(modulus)}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {list(modulus)} factors over F_{p}")
        q = p ** n
        if q > _TABLE_LIMIT:
            raise FieldTooLarge(
                f"q = {q} exceeds the dense-table limit {_TABLE_LIMIT}")
        self.p, self.n, self.q, self.modulus = p, n, q, modulus
        self._build_tables()

    def _build_tables(self) -> None:
        p, n, q = self.p, self.n, self.q
        idx = np.arange(q, dtype=np.int64)
        digits = np.empty((q, n), dtype=np.int64)
        for i in range(n):
            digits[:, i] = (idx // p**i) % p
        self._digits = digits
        self._pwr = np.array([p**i for i in range(n)], dtype=np.int64)

        dsum = (digits[:, None, :] + digits[None, :, :]) % p
        self.add = (dsum @ self._pwr).astype(np.int64)
        self.neg = (((-digits) % p) @ self._pwr).astype(np.int64)
        self.sub = self.add[:, self.neg]

        # raw polynomial product of the digit vectors, then reduce by the
        # precomputed expansions of t^n .. t^(2n-2)
        conv = np.zeros((q, q, 2 * n - 1), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        red = np.zeros((n - 1, n), dtype=np.int64) if n > 1 else np.zeros((0, n), dtype=np.int64)
        cur = [(-c) % p for c in self.modulus[:-1]]  # t^n
        for e in range(n - 1):
            red[e] = cur
            # t^(n+e+1) = t * t^(n+e)
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            for j in range(n):
                nxt[j] = (nxt[j] + lead * ((-self.modulus[j]) % p)) % p
            cur = nxt
        out = conv[:, :, :n].copy()
        for e in range(n - 1):
            out += conv[:, :, n + e, None] * red[e][None, None, :]
        out %= p
        self.mul = (out @ self._pwr).astype(np.int64)

        # inverses by row scan of the multiplication table
        self.inv = np.zeros(q, dtype=np.int64)
        eq_one = self.mul == 1
        has = eq_one.any(axis=1)
        self.inv[has] = np.argmax(eq_one, axis=1)[has]

        # frobenius x -> x^p and its inverse permutation (p-th root)
        self.frob = np.array([self.pow_idx(a, p) for a in range(q)], dtype=np.int64)
        self.proot = np.argsort(self.frob).astype(np.int64)

    # -- scalar index arithmetic ------------------------------------------

    def pow_idx(self, a: int, e: int) -> int:
        if e < 0:
            if a == 0:
                raise DivisionByZero("inverse of zero")
            a, e = int(self.inv[a]) if hasattr(self, "inv") else self._slow_inv(a), -e
        r, b = 1, a
        while e:
            if e & 1:
                r = int(self.mul[r, b])
            b = int(self.mul[b, b])
            e >>= 1
        return r

    def _slow_inv(self, a: int) -> int:
        return self.pow_idx(a, self.q - 2)

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.n:
            raise DegreeMismatch(
                f"{len(coeffs)} coefficients for extension degree {self.n}")
        idx = 0
        for i, c in enumerate(coeffs):
            idx += (int(c) % self.p) * self.p**i
        return idx

    def decode(self, idx: int) -> tuple:
        return tuple(int(d) for d in self._digits[idx])

    # -- element constructors ---------------------------------------------

    def el(self, value) -> "FieldElem":
        """Coerce an int (reduced mod p), coefficient sequence, or text."""
        if isinstance(value, FieldElem):
            if value.ctx is not self and value.ctx != self:
                raise ContextMismatch("element from a different field context")
            return FieldElem(self, value.idx)
        if isinstance(value, str):
            return self.from_text(value)
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.encode(value))
        return FieldElem(self, int(value) % self.p)

    def from_text(self, text: str) -> "FieldElem":
        try:
            parts = [int(s) for s in text.strip().split(",")]
        except ValueError:
            raise BadParams(f"cannot parse field element text {text!r}") from None
        return FieldElem(self, self.encode(parts))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def gen(self) -> "FieldElem":
        if self.n < 2:
            raise PrimeFieldOnly("prime field has no extension generator")
        return FieldElem(self, self.p)

    def elements(self) -> Iterable["FieldElem"]:
        return (FieldElem(self, i) for i in range(self.q))

    def in_prime_field_idx(self, idx: int) -> bool:
        return int(self.frob[idx]) == idx

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldCtx)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (ctx_new, (self.p, self.n, self.modulus))


class FieldElem:
    """An element of a FieldCtx, stored as its encoded index."""

    __slots__ = ("ctx", "idx")

    def __init__(self, ctx: FieldCtx, idx: int):
        self.ctx = ctx
        self.idx = int(idx)

    @property
    def coeffs(self) -> tuple:
        return self.ctx.decode(self.idx)

    def is_zero(self) -> bool:
        return self.idx == 0

    def in_prime_field(self) -> bool:
        return self.ctx.in_prime_field_idx(self.idx)

    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatch("elements from different field contexts")
            return other
        return self.ctx.el(other)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.ctx, self.ctx.add[self.idx, o.idx])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.ctx, self.ctx.sub[self.idx, o.idx])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElem(self.ctx, self.ctx.mul[self.idx, o.idx])

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg[self.idx])

    def inverse(self) -> "FieldElem":
        if self.idx == 0:
            raise DivisionByZero("inverse of zero")
        return FieldElem(self.ctx, self.ctx.inv[self.idx])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.ctx, self.ctx.pow_idx(self.idx, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.idx == other.idx
        if isinstance(other, int):
            return self.idx == (other % self.ctx.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.idx))

    def __bool__(self):
        return self.idx != 0

    def __repr__(self):
        return f"<{self.text()} in F_{self.ctx.q}>"


# ---------------------------------------------------------------------------
# Module-level operations


def ctx_new(p: int, n: int, modulus: Sequence[int]) -> FieldCtx:
    return _ctx_cached(int(p), int(n), tuple(int(c) for c in modulus))


@lru_cache(maxsize=None)
def _ctx_cached(p: int, n: int, modulus: tuple) -> FieldCtx:
    return FieldCtx(p, n, modulus)


def default_ctx(p: int, n: int = 2) -> FieldCtx:
    if n == 1:
        return ctx_new(p, 1, (0, 1))
    if (p, n) in DEFAULT_MODULI:
        return ctx_new(p, n, DEFAULT_MODULI[(p, n)])
    return ctx_new(p, n, find_irreducible(p, n))


def find_irreducible(p: int, n: int) -> tuple:
    """First monic irreducible of degree n over F_p in lexicographic order."""
    for low in range(p**n):
        coeffs = tuple((low // p**i) % p for i in range(n)) + (1,)
        if _is_irreducible(coeffs, p):
            return coeffs
    raise ReducibleModulus(f"no irreducible of degree {n} over F_{p}")  # unreachable


def arith(a: FieldElem, b, kind: str) -> FieldElem:
    """Dispatch form of the basic arithmetic: add|mul|inv|neg|pow."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "neg":
        return -a
    if kind == "pow":
        return a ** int(b)
    raise ValueError(f"unknown arith kind {kind!r}")


def frobenius(a: FieldElem) -> FieldElem:
    return FieldElem(a.ctx, a.ctx.frob[a.idx])


def pth_root(a: FieldElem) -> FieldElem:
    return FieldElem(a.ctx, a.ctx.proot[a.idx])


def beta_from_alpha(alpha: FieldElem) -> FieldElem:
    """beta = (-alpha)^(-1/p); rejects alpha in the prime field."""
    if alpha.in_prime_field():
        raise PrimeFieldElement(f"alpha = {alpha.text()} lies in F_{alpha.ctx.p}")
    return pth_root((-alpha).inverse())


def alpha_from_beta(beta: FieldElem) -> FieldElem:
    """alpha = -beta^(-p); rejects beta in the prime field."""
    if beta.in_prime_field():
        raise PrimeFieldElement(f"beta = {beta.text()} lies in F_{beta.ctx.p}")
    return -(frobenius(beta).inverse())


def enumerate_nonprime(ctx: FieldCtx):
    """All q - p elements outside the prime field, ascending encoded index."""
    if ctx.n < 2:
        raise PrimeFieldOnly("prime field has no elements outside itself")
    return [FieldElem(ctx, i) for i in range(ctx.q) if not ctx.in_prime_field_idx(i)]


def sample(ctx: FieldCtx, seed: int) -> FieldElem:
    """Seeded reproducible draw from the elements outside the prime field."""
    pool = enumerate_nonprime(ctx)
    return random.Random(seed).choice(pool)


def embed_map(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """Index table of a field embedding F_{p^n} -> F_{p^(kn)}.

    The generator of `small` is sent to the first root (by index order) of
    small's modulus inside `big`; the table maps every small index to its
    image index.
    """
    if small.p != big.p or big.n % small.n != 0:
        raise ContextMismatch("no embedding between these contexts")
    if small.n == big.n and small.modulus == big.modulus:
        return np.arange(small.q, dtype=np.int64)
    root = None
    for cand in range(big.q):
        acc, power = 0, 1
        for c in small.modulus:
            acc = int(big.add[acc, big.mul[c % big.p, power]])
            power = int(big.mul[power, cand])
        if acc == 0:
            root = cand
            break
    if root is None:
        raise ContextMismatch("modulus has no root in the target context")
    table = np.zeros(small.q, dtype=np.int64)
    for a in range(small.q):
        digs = small.decode(a)
        acc, power = 0, 1
        for d in digs:
            acc = int(big.add[acc, big.mul[d, power]])
            power = int(big.mul[power, root])
        table[a] = acc
    return table
