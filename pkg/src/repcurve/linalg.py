"""Exact dense linear algebra over a FieldCtx.

Matrices store encoded element indices in 2-D numpy int arrays; all row
operations go through the context's lookup tables, so elimination is
vectorized while staying exact.  Subspaces are always kept in reduced row
echelon form (fixed pivot rule: first nonzero entry, scanning top to
bottom then left to right), which makes equality bit-exact.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import ContextMismatch, NotNilpotent, ShapeMismatch
from .ff import FieldCtx, FieldElem


def _as_idx_array(ctx: FieldCtx, rows) -> np.ndarray:
    """Coerce nested FieldElem/int/text data to an encoded index array."""
    if isinstance(rows, np.ndarray):
        out = rows.astype(np.int64, copy=True)
        return out
    data = []
    for row in rows:
        data.append([_as_idx(ctx, v) for v in row])
    if not data:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(data, dtype=np.int64)


def _as_idx(ctx: FieldCtx, v) -> int:
    if isinstance(v, FieldElem):
        if v.ctx != ctx:
            raise ContextMismatch("entry from a different field context")
        return v.idx
    if isinstance(v, str):
        return ctx.from_text(v).idx
    if isinstance(v, (list, tuple)):
        return ctx.encode(v)
    return int(v) % ctx.p


def as_vector(ctx: FieldCtx, v) -> np.ndarray:
    """Coerce a sequence of entries to a 1-D encoded index array."""
    if isinstance(v, np.ndarray) and v.ndim == 1:
        return v.astype(np.int64, copy=True)
    return np.array([_as_idx(ctx, x) for x in v], dtype=np.int64)


class Mat:
    """Dense matrix over a FieldCtx.  Immutable by convention."""

    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data: np.ndarray):
        if data.ndim != 2:
            raise ShapeMismatch("matrix data must be 2-D")
        self.ctx = ctx
        self.data = data.astype(np.int64, copy=False)
        self.data.setflags(write=False)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows) -> "Mat":
        return cls(ctx, _as_idx_array(ctx, rows))

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> "Mat":
        return cls(ctx, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx: FieldCtx, dim: int) -> "Mat":
        d = np.zeros((dim, dim), dtype=np.int64)
        if dim:
            np.fill_diagonal(d, 1)
        return cls(ctx, d)

    # -- shape ---------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Mat", same_shape: bool) -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch("matrices over different field contexts")
        if same_shape and self.data.shape != other.data.shape:
            raise ShapeMismatch(f"{self.data.shape} vs {other.data.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other, True)
        return Mat(self.ctx, self.ctx.add[self.data, other.data])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other, True)
        return Mat(self.ctx, self.ctx.sub[self.data, other.data])

    def __neg__(self) -> "Mat":
        return Mat(self.ctx, self.ctx.neg[self.data])

    def scale(self, c) -> "Mat":
        ci = _as_idx(self.ctx, c)
        return Mat(self.ctx, self.ctx.mul[ci, self.data])

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other, False)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.data.shape} by {other.data.shape}")
        return Mat(self.ctx, _matmul_idx(self.ctx, self.data, other.data))

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix times column vector (1-D encoded index array)."""
        if v.shape != (self.cols,):
            raise ShapeMismatch(f"vector of length {v.shape} for {self.data.shape}")
        return _matmul_idx(self.ctx, self.data, v.reshape(-1, 1))[:, 0]

    def transpose(self) -> "Mat":
        return Mat(self.ctx, self.data.T.copy())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.ctx == other.ctx
                and self.data.shape == other.data.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.ctx, self.data.shape, self.data.tobytes()))

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.ctx, int(self.data[i, j]))

    def to_lists(self) -> list:
        dec = self.ctx.decode
        return [[",".join(map(str, dec(int(x)))) for x in row] for row in self.data]

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols} over F_{self.ctx.q})"


def _matmul_idx(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of encoded-index arrays via digit-plane convolution."""
    p, n = ctx.p, ctx.n
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    PA = [(A // p**i) % p for i in range(n)]
    PB = [(B // p**i) % p for i in range(n)]
    acc = [np.zeros((A.shape[0], B.shape[1]), dtype=np.int64) for _ in range(2 * n - 1)]
    for i in range(n):
        for j in range(n):
            acc[i + j] += PA[i] @ PB[j]
    # reduce powers t^n .. t^(2n-2) using the modulus
    red_rows = _reduction_rows(ctx)
    out_planes = [acc[k] % p for k in range(n)]
    for e in range(n - 1):
        high = acc[n + e] % p
        for k in range(n):
            if red_rows[e][k]:
                out_planes[k] = (out_planes[k] + red_rows[e][k] * high) % p
    out = np.zeros_like(out_planes[0])
    for k in range(n):
        out += out_planes[k] * p**k
    return out


_RED_CACHE: dict = {}


def _reduction_rows(ctx: FieldCtx):
    key = (ctx.p, ctx.n, ctx.modulus)
    if key not in _RED_CACHE:
        p, n = ctx.p, ctx.n
        rows = []
        cur = [(-c) % p for c in ctx.modulus[:-1]]
        for _ in range(n - 1):
            rows.append(tuple(cur))
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            for j in range(n):
                nxt[j] = (nxt[j] + lead * ((-ctx.modulus[j]) % p)) % p
            cur = nxt
        _RED_CACHE[key] = rows
    return _RED_CACHE[key]


# ---------------------------------------------------------------------------
# Elimination


def _rref_inplace(ctx: FieldCtx, M: np.ndarray) -> list:
    """Reduce M to RREF in place; returns the pivot column list."""
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # fixed pivot rule: first nonzero scanning top to bottom
        col = M[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        inv = int(ctx.inv[M[r, c]])
        if inv != 1:
            M[r] = ctx.mul[inv, M[r]]
        factors = M[:, c].copy()
        factors[r] = 0
        if factors.any():
            M[...] = ctx.sub[M, ctx.mul[factors[:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
    return pivots


def rref(A: Mat) -> tuple:
    """Returns (canonical RREF matrix, rank)."""
    M = A.data.copy()
    pivots = _rref_inplace(A.ctx, M)
    return Mat(A.ctx, M), len(pivots)


def rank(A: Mat) -> int:
    M = A.data.copy()
    return len(_rref_inplace(A.ctx, M))


def kernel(A: Mat) -> "Subspace":
    """Canonical basis of {x : A x = 0}."""
    ctx = A.ctx
    M = A.data.copy()
    pivots = _rref_inplace(ctx, M)
    free = [c for c in range(A.cols) if c not in pivots]
    if not free:
        return Subspace(ctx, A.cols, np.zeros((0, A.cols), dtype=np.int64))
    basis = np.zeros((len(free), A.cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for j, pc in enumerate(pivots):
            basis[k, pc] = ctx.neg[M[j, f]]
    return Subspace.from_rows(ctx, A.cols, basis)


def solve(A: Mat, b: np.ndarray) -> Optional[np.ndarray]:
    """Any solution x of A x = b, or None."""
    X = solve_matrix(A, Mat(A.ctx, np.asarray(b, dtype=np.int64).reshape(-1, 1)))
    return None if X is None else X.data[:, 0].copy()


def solve_matrix(A: Mat, B: Mat) -> Optional[Mat]:
    """Any X with A X = B, or None (columnwise simultaneous solve)."""
    if A.rows != B.rows:
        raise ShapeMismatch("A and B must have the same number of rows")
    ctx = A.ctx
    aug = np.hstack([A.data, B.data])
    pivots = _rref_inplace(ctx, aug)
    acols = A.cols
    if any(pc >= acols for pc in pivots):
        return None
    X = np.zeros((acols, B.cols), dtype=np.int64)
    for j, pc in enumerate(pivots):
        X[pc] = aug[j, acols:]
    return Mat(ctx, X)


def invert(A: Mat) -> Optional[Mat]:
    if not A.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    X = solve_matrix(A, Mat.identity(A.ctx, A.rows))
    if X is None:
        return None
    return X


def matpow(A: Mat, e: int) -> Mat:
    if not A.is_square():
        raise ShapeMismatch("power of a non-square matrix")
    if e < 0:
        raise ShapeMismatch("negative matrix power")
    result = Mat.identity(A.ctx, A.rows)
    base = A
    while e:
        if e & 1:
            result = result @ base
        base = base @ base if e > 1 else base
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# Subspaces


class Subspace:
    """A subspace of F_q^ambient, stored as a canonical RREF basis."""

    __slots__ = ("ctx", "ambient", "basis")

    def __init__(self, ctx: FieldCtx, ambient: int, basis: np.ndarray):
        self.ctx = ctx
        self.ambient = int(ambient)
        self.basis = basis.astype(np.int64, copy=False)
        self.basis.setflags(write=False)

    @classmethod
    def from_rows(cls, ctx: FieldCtx, ambient: int, rows) -> "Subspace":
        M = _as_idx_array(ctx, rows) if not isinstance(rows, np.ndarray) else rows.astype(np.int64, copy=True)
        if M.size == 0:
            M = M.reshape(0, ambient)
        if M.shape[1] != ambient:
            raise ShapeMismatch(f"rows of length {M.shape[1]} in ambient {ambient}")
        pivots = _rref_inplace(ctx, M)
        return cls(ctx, ambient, M[: len(pivots)].copy())

    @classmethod
    def zero(cls, ctx: FieldCtx, ambient: int) -> "Subspace":
        return cls(ctx, ambient, np.zeros((0, ambient), dtype=np.int64))

    @classmethod
    def full(cls, ctx: FieldCtx, ambient: int) -> "Subspace":
        return cls(ctx, ambient, Mat.identity(ctx, ambient).data)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def contains(self, v: np.ndarray) -> bool:
        return self.reduce(v) is not None

    def reduce(self, v) -> Optional[np.ndarray]:
        """Coordinates of v in the basis, or None if v is outside."""
        ctx = self.ctx
        v = as_vector(ctx, v) if not isinstance(v, np.ndarray) else v.astype(np.int64, copy=True)
        if v.shape != (self.ambient,):
            raise ShapeMismatch(f"vector length {v.shape} in ambient {self.ambient}")
        coords = np.zeros(self.dim, dtype=np.int64)
        for i in range(self.dim):
            lead = int(np.argmax(self.basis[i] != 0)) if self.basis[i].any() else -1
            c = int(v[lead])
            if c:
                coords[i] = c
                v = ctx.sub[v, ctx.mul[c, self.basis[i]]]
        if v.any():
            return None
        return coords

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ctx == other.ctx
                and self.ambient == other.ambient
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.ctx, self.ambient, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F_{self.ctx.q}^{self.ambient})"


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    _check_ambient(U, W)
    return Subspace.from_rows(U.ctx, U.ambient, np.vstack([U.basis, W.basis]))


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    """Zassenhaus-free intersection: solve a*Bu = b*Bw via a joint kernel."""
    _check_ambient(U, W)
    ctx = U.ctx
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(ctx, U.ambient)
    stacked = np.hstack([U.basis.T, ctx.neg[W.basis.T]])
    K = kernel(Mat(ctx, stacked))
    if K.dim == 0:
        return Subspace.zero(ctx, U.ambient)
    coefsU = K.basis[:, : U.dim]
    vecs = _matmul_idx(ctx, coefsU, U.basis)
    return Subspace.from_rows(ctx, U.ambient, vecs)


def preimage(A: Mat, W: Subspace) -> Subspace:
    """{x : A x in W}."""
    if A.rows != W.ambient:
        raise ShapeMismatch("map target does not match subspace ambient")
    ctx = A.ctx
    if W.is_full():
        return Subspace.full(ctx, A.cols)
    ann = kernel(Mat(ctx, W.basis)) if W.dim else Subspace.full(ctx, W.ambient)
    D = ann.basis  # rows y with y . w = 0 for every w in W
    DA = _matmul_idx(ctx, D, A.data)
    return kernel(Mat(ctx, DA))


def _check_ambient(U: Subspace, W: Subspace) -> None:
    if U.ctx != W.ctx:
        raise ContextMismatch("subspaces over different field contexts")
    if U.ambient != W.ambient:
        raise ShapeMismatch(f"ambient {U.ambient} vs {W.ambient}")


# ---------------------------------------------------------------------------
# Intertwiners and nilpotent partitions


def field_kron(X: Mat, Y: Mat) -> Mat:
    """Kronecker product over the field."""
    if X.ctx != Y.ctx:
        raise ContextMismatch("kron over different field contexts")
    ctx = X.ctx
    prod = ctx.mul[X.data[:, None, :, None], Y.data[None, :, None, :]]
    out = prod.reshape(X.rows * Y.rows, X.cols * Y.cols)
    return Mat(ctx, out)


def intertwiner_space(As: Sequence[Mat], Bs: Sequence[Mat]) -> Subspace:
    """Canonical basis of {X : X A_k = B_k X for all k}.

    Vectors are row-major vectorizations of the b x a matrices X, where the
    A_k act on dimension a and the B_k on dimension b.  Conditions are
    vectorized as (I_b kron A_k^T - B_k kron I_a) vec(X) = 0 and imposed
    one at a time on a shrinking solution space.
    """
    if len(As) != len(Bs):
        raise ShapeMismatch("As and Bs must have equal length")
    if not As:
        raise ShapeMismatch("need at least one condition matrix")
    ctx = As[0].ctx
    a = As[0].rows
    b = Bs[0].rows
    for A in As:
        if not A.is_square() or A.rows != a:
            raise ShapeMismatch("all As must be square of equal size")
    for B in Bs:
        if not B.is_square() or B.rows != b:
            raise ShapeMismatch("all Bs must be square of equal size")
    amb = a * b
    if amb == 0:
        return Subspace.zero(ctx, 0)
    Ib = Mat.identity(ctx, b)
    Ia = Mat.identity(ctx, a)
    space = Subspace.full(ctx, amb)
    for A, B in zip(As, Bs):
        C = field_kron(Ib, A.transpose()) - field_kron(B, Ia)
        if space.dim == 0:
            break
        imgs = _matmul_idx(ctx, C.data, space.basis.T)  # amb x dim
        coords = kernel(Mat(ctx, imgs))
        if coords.dim == 0:
            return Subspace.zero(ctx, amb)
        vecs = _matmul_idx(ctx, coords.basis, space.basis)
        space = Subspace.from_rows(ctx, amb, vecs)
    return space


def mat_to_json(A: Mat) -> dict:
    """Plain-data form: {"rows", "cols", "entries": [[text, ...], ...]}."""
    return {"rows": A.rows, "cols": A.cols, "entries": A.to_lists()}


def mat_from_json(ctx: FieldCtx, obj: dict) -> Mat:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ShapeMismatch("entries grid does not match rows x cols")
    data = np.array(
        [[ctx.from_text(v).idx for v in row] for row in entries], dtype=np.int64
    ).reshape(rows, cols)
    return Mat(ctx, data)


def nilpotent_partition(N: Mat) -> tuple:
    """Jordan partition of a nilpotent matrix from its rank chain."""
    if not N.is_square():
        raise ShapeMismatch("partition of a non-square matrix")
    d = N.rows
    if d == 0:
        return ()
    ranks = [d]
    P = Mat.identity(N.ctx, d)
    for _ in range(d):
        P = P @ N
        r = rank(P)
        ranks.append(r)
        if r == 0:
            break
    if ranks[-1] != 0:
        raise NotNilpotent(f"matrix is not nilpotent (rank chain {ranks})")
    # counts[k-1] = #{Jordan blocks of size >= k} = rank(N^(k-1)) - rank(N^k),
    # so the block-size partition is the conjugate of the counts sequence
    counts = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    partition = []
    j = 1
    while True:
        c = sum(1 for ck in counts if ck >= j)
        if c == 0:
            break
        partition.append(c)
        j += 1
    partition = tuple(sorted(partition, reverse=True))
    assert sum(partition) == d, (partition, ranks)
    return partition
