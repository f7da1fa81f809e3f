"""Dense polynomial arithmetic: univariate over any FieldCtx, bivariate
over the prime field."""

from __future__ import annotations

import numpy as np

from .errors import ContextMismatch, OutOfRange, PrimeFieldOnly
from .ff import FieldCtx, FieldElem


class Poly1:
    """Univariate polynomial; coeffs[i] is the coefficient of X^i.

    Canonical: no trailing zeros, the zero polynomial has empty coeffs.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        idx = [_coef_idx(ctx, c) for c in coeffs]
        while idx and idx[-1] == 0:
            idx.pop()
        self.ctx = ctx
        self.coeffs = tuple(idx)

    @classmethod
    def _raw(cls, ctx: FieldCtx, idx_coeffs) -> "Poly1":
        # internal: coefficients are already encoded indices, skip the
        # prime-constant coercion applied to user input
        out = object.__new__(cls)
        idx = [int(c) for c in idx_coeffs]
        while idx and idx[-1] == 0:
            idx.pop()
        out.ctx = ctx
        out.coeffs = tuple(idx)
        return out

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly1":
        return cls(ctx, ())

    @classmethod
    def monomial(cls, ctx: FieldCtx, coef, exp: int) -> "Poly1":
        if exp < 0:
            raise OutOfRange("negative exponent")
        return cls(ctx, [0] * exp + [coef])

    @property
    def degree(self) -> int:
        # degree of 0 reported as -1
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> FieldElem:
        idx = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElem(self.ctx, idx)

    def __add__(self, other: "Poly1") -> "Poly1":
        _chk(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Poly1._raw(self.ctx, [self.ctx.add[x, y] for x, y in zip(a, b)])

    def __sub__(self, other: "Poly1") -> "Poly1":
        _chk(self, other)
        return self + Poly1._raw(other.ctx, [other.ctx.neg[c] for c in other.coeffs])

    def __mul__(self, other: "Poly1") -> "Poly1":
        _chk(self, other)
        if not self.coeffs or not other.coeffs:
            return Poly1.zero(self.ctx)
        ctx = self.ctx
        out = np.zeros(len(self.coeffs) + len(other.coeffs) - 1, dtype=np.int64)
        b = np.array(other.coeffs, dtype=np.int64)
        for i, ai in enumerate(self.coeffs):
            if ai:
                seg = out[i:i + len(b)]
                out[i:i + len(b)] = ctx.add[seg, ctx.mul[ai, b]]
        return Poly1._raw(ctx, out.tolist())

    def __pow__(self, e: int) -> "Poly1":
        if e < 0:
            raise OutOfRange("negative exponent")
        result = Poly1(self.ctx, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def eval(self, x: FieldElem) -> FieldElem:
        ctx = x.ctx
        if ctx.p != self.ctx.p:
            raise ContextMismatch("evaluation point in wrong characteristic")
        if ctx != self.ctx and self.ctx.n != 1:
            raise ContextMismatch("cannot lift non-prime-field coefficients")
        acc = 0
        for c in reversed(self.coeffs):
            acc = int(ctx.add[ctx.mul[acc, x.idx], c])
        return FieldElem(ctx, acc)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly1) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                c = ",".join(map(str, self.ctx.decode(self.coeffs[i])))
                terms.append(f"({c})*X^{i}" if i else f"({c})")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly1({self.to_text()})"


class Poly2:
    """Bivariate polynomial over the prime field; grid[i, j] multiplies
    x^i y^j.  The grid keeps a tight bounding box."""

    __slots__ = ("ctx", "grid")

    def __init__(self, ctx: FieldCtx, grid):
        if ctx.n != 1:
            raise PrimeFieldOnly("bivariate polynomials live over the prime field")
        g = np.asarray(grid, dtype=np.int64) % ctx.p
        if g.ndim != 2:
            g = g.reshape(1, -1) if g.size else np.zeros((0, 0), dtype=np.int64)
        # trim zero margins to the canonical bounding box
        while g.shape[0] and not g[-1].any():
            g = g[:-1]
        while g.shape[1] and not g[:, -1].any():
            g = g[:, :-1]
        if g.size == 0:
            g = np.zeros((0, 0), dtype=np.int64)
        self.ctx = ctx
        self.grid = g
        self.grid.setflags(write=False)

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly2":
        return cls(ctx, np.zeros((0, 0), dtype=np.int64))

    @classmethod
    def monomial(cls, ctx: FieldCtx, coef: int, ex: int, ey: int) -> "Poly2":
        g = np.zeros((ex + 1, ey + 1), dtype=np.int64)
        g[ex, ey] = coef % ctx.p
        return cls(ctx, g)

    def is_zero(self) -> bool:
        return self.grid.size == 0

    def deg_x(self) -> int:
        return self.grid.shape[0] - 1

    def deg_y(self) -> int:
        max_j = -1
        for row in self.grid:
            nz = np.nonzero(row)[0]
            if nz.size:
                max_j = max(max_j, int(nz[-1]))
        return max_j

    def __add__(self, other: "Poly2") -> "Poly2":
        _chk(self, other)
        r = max(self.grid.shape[0], other.grid.shape[0])
        c = max(self.grid.shape[1], other.grid.shape[1])
        g = np.zeros((r, c), dtype=np.int64)
        g[: self.grid.shape[0], : self.grid.shape[1]] += self.grid
        g[: other.grid.shape[0], : other.grid.shape[1]] += other.grid
        return Poly2(self.ctx, g)

    def __neg__(self) -> "Poly2":
        return Poly2(self.ctx, (-self.grid) % self.ctx.p)

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        _chk(self, other)
        if self.is_zero() or other.is_zero():
            return Poly2.zero(self.ctx)
        a, b = self.grid, other.grid
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1),
                       dtype=np.int64)
        for i in range(a.shape[0]):
            for j in range(a.shape[1]):
                if a[i, j]:
                    out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
                    out %= self.ctx.p
        return Poly2(self.ctx, out)

    def __pow__(self, e: int) -> "Poly2":
        if e < 0:
            raise OutOfRange("negative exponent")
        result = Poly2.monomial(self.ctx, 1, 0, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def eval(self, x0: FieldElem, y0: FieldElem) -> FieldElem:
        """Evaluate at a point; the point may live in an extension of the
        coefficient field (prime-subfield constants embed by index)."""
        if x0.ctx != y0.ctx:
            raise ContextMismatch("evaluation point coordinates in different fields")
        ctx = x0.ctx
        if ctx.p != self.ctx.p:
            raise ContextMismatch("evaluation point in wrong characteristic")
        acc = 0
        for row in self.grid[::-1]:
            inner = 0
            for c in row[::-1].tolist():
                inner = int(ctx.add[ctx.mul[inner, y0.idx], c])
            acc = int(ctx.add[ctx.mul[acc, x0.idx], inner])
        return FieldElem(ctx, acc)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly2) and self.ctx == other.ctx
                and self.grid.shape == other.grid.shape
                and bool(np.array_equal(self.grid, other.grid)))

    def __hash__(self):
        return hash((self.ctx, self.grid.shape, self.grid.tobytes()))

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.grid.shape[0] - 1, -1, -1):
            for j in range(self.grid.shape[1] - 1, -1, -1):
                c = int(self.grid[i, j])
                if not c:
                    continue
                parts = [str(c)]
                if i:
                    parts.append(f"x^{i}")
                if j:
                    parts.append(f"y^{j}")
                terms.append("*".join(parts))
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly2({self.to_text()})"


def _coef_idx(ctx: FieldCtx, c) -> int:
    if isinstance(c, FieldElem):
        if c.ctx != ctx:
            raise ContextMismatch("coefficient from a different field context")
        return c.idx
    # bare ints are prime-subfield constants
    return int(c) % ctx.p


def _chk(a, b) -> None:
    if type(a) is not type(b):
        raise ContextMismatch(f"mixed operand kinds {type(a).__name__}/{type(b).__name__}")
    if a.ctx != b.ctx:
        raise ContextMismatch("polynomials over different field contexts")


def pop(a, b=None, kind: str = "add"):
    """Polynomial operation dispatch: add | mul | pow | eval | eq."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "pow":
        return a ** int(b)
    if kind == "eval":
        if isinstance(a, Poly2):
            x0, y0 = b
            return a.eval(x0, y0)
        return a.eval(b)
    if kind == "eq":
        return a == b
    raise OutOfRange(f"unknown polynomial op kind: {kind}")


def trace_polynomial(p: int, ctx: FieldCtx) -> Poly2:
    """Sum over all (i, j) in F_p x F_p of (x + i + j*y)^(p^2 - 1),
    expanded as a bivariate polynomial over F_p."""
    if ctx.n != 1 or ctx.p != p:
        raise PrimeFieldOnly("trace polynomial needs the prime-field context")
    e = p * p - 1
    total = Poly2.zero(ctx)
    for i in range(p):
        for j in range(p):
            # linear form x + i + j*y
            g = np.zeros((2, 2), dtype=np.int64)
            g[1, 0] = 1
            g[0, 0] = i
            g[0, 1] = j
            total = total + Poly2(ctx, g) ** e
    return total
