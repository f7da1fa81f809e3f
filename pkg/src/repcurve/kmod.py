"""Representation engine for the elementary abelian group H = Z/p x Z/p
acting in characteristic p.

A module is a pair of commuting order-p matrices (the actions of fixed
generators sigma and tau) over a FieldCtx.  The shifted generators
sigma0 = sigma - 1 and tau0 = tau - 1 are nilpotent and drive everything
else: the vanishing filtration S_n, degree functions, fixed spaces,
Hom spaces, isomorphism and indecomposability decisions, and Jordan
types of the pencil a*sigma0 + b*tau0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BadDimension,
    ContextMismatch,
    NotCommuting,
    NotInvariant,
    OrderViolation,
    OutOfRange,
    PrimeFieldElement,
    ShapeMismatch,
    Undecided,
    UnlabeledModule,
    ZeroPoint,
    ZeroVector,
)
from .ff import FieldCtx, FieldElem, ctx_new, embed_map, find_irreducible
from .linalg import (
    Mat,
    Subspace,
    _matmul_idx,
    _rref_inplace,
    as_vector,
    invert,
    kernel,
    matpow,
    nilpotent_partition,
    preimage,
    subspace_intersect,
)

# ---------------------------------------------------------------------------
# Base-p digit combinatorics


def digits_p(n: int, p: int, width: Optional[int] = None) -> tuple:
    """Base-p digits of n, least significant first; at least one digit."""
    if n < 0:
        raise OutOfRange("digits of a negative integer")
    out = []
    while n:
        out.append(n % p)
        n //= p
    if not out:
        out.append(0)
    if width is not None:
        out.extend([0] * (width - len(out)))
    return tuple(out)


def s_p(n: int, p: int) -> int:
    """Sum of base-p digits."""
    return sum(digits_p(n, p))


def binom_mod_p(n: int, i: int, p: int) -> int:
    """Binomial coefficient mod p via the digitwise product rule."""
    if n < 0 or i < 0:
        raise OutOfRange("negative binomial arguments")
    if i > n:
        return 0
    out = 1
    while n or i:
        nd, id_ = n % p, i % p
        if id_ > nd:
            return 0
        # small Pascal values fit in int; compute C(nd, id_) directly
        num, den = 1, 1
        for k in range(id_):
            num *= nd - k
            den *= k + 1
        out = (out * (num // den)) % p
        n //= p
        i //= p
    return out


# ---------------------------------------------------------------------------
# HModule


class HModule:
    """Two commuting order-p matrices over a shared field context.

    Immutable; derived data (filtration, End algebra, word matrices) is
    cached on the instance.  meta carries construction provenance used
    by label-aware operations and is not part of equality.
    """

    __slots__ = ("ctx", "dim", "Msigma", "Mtau", "labels", "meta", "_cache")

    def __init__(self, ctx: FieldCtx, Msigma: Mat, Mtau: Mat,
                 labels: Optional[Sequence[str]] = None,
                 meta: Optional[dict] = None):
        if Msigma.ctx != ctx or Mtau.ctx != ctx:
            raise ContextMismatch("generator matrices over a different context")
        if not Msigma.is_square() or not Mtau.is_square():
            raise ShapeMismatch("generator matrices must be square")
        if Msigma.rows != Mtau.rows:
            raise ShapeMismatch("generator matrices of different sizes")
        d = Msigma.rows
        I = Mat.identity(ctx, d)
        if matpow(Msigma, ctx.p) != I:
            raise OrderViolation("sigma matrix does not have order dividing p")
        if matpow(Mtau, ctx.p) != I:
            raise OrderViolation("tau matrix does not have order dividing p")
        if Msigma @ Mtau != Mtau @ Msigma:
            raise NotCommuting("generator matrices do not commute")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != d:
                raise ShapeMismatch("label count does not match dimension")
        self.ctx = ctx
        self.dim = d
        self.Msigma = Msigma
        self.Mtau = Mtau
        self.labels = labels
        self.meta = dict(meta) if meta else {}
        self._cache: dict = {}

    # -- derived matrices ----------------------------------------------------

    def sigma0(self) -> Mat:
        if "s0" not in self._cache:
            self._cache["s0"] = self.Msigma - Mat.identity(self.ctx, self.dim)
        return self._cache["s0"]

    def tau0(self) -> Mat:
        if "t0" not in self._cache:
            self._cache["t0"] = self.Mtau - Mat.identity(self.ctx, self.dim)
        return self._cache["t0"]

    def word_matrix(self, a: int, b: int) -> Mat:
        """Matrix of sigma0^a tau0^b; the zero matrix once a or b >= p."""
        if a < 0 or b < 0:
            raise OutOfRange("negative word exponents")
        p = self.ctx.p
        if a >= p or b >= p:
            return Mat.zeros(self.ctx, self.dim, self.dim)
        key = ("w", a, b)
        if key not in self._cache:
            self._cache[key] = matpow(self.sigma0(), a) @ matpow(self.tau0(), b)
        return self._cache[key]

    def basis_vector(self, which) -> np.ndarray:
        """Standard basis vector by index or label."""
        if isinstance(which, str):
            if self.labels is None:
                raise UnlabeledModule("module has no basis labels")
            if which not in self.labels:
                raise UnlabeledModule(f"no basis label {which!r}")
            which = self.labels.index(which)
        v = np.zeros(self.dim, dtype=np.int64)
        v[which] = 1
        return v

    def vector(self, data) -> np.ndarray:
        return as_vector(self.ctx, data)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HModule) and self.ctx == other.ctx
                and self.Msigma == other.Msigma and self.Mtau == other.Mtau)

    def __hash__(self):
        return hash((self.ctx, self.Msigma, self.Mtau))

    def __repr__(self):
        kind = self.meta.get("kind", "module")
        return f"HModule({kind}, dim {self.dim} over F_{self.ctx.q})"


def module_new(ctx: FieldCtx, Msigma: Mat, Mtau: Mat,
               labels: Optional[Sequence[str]] = None,
               meta: Optional[dict] = None) -> HModule:
    return HModule(ctx, Msigma, Mtau, labels=labels, meta=meta)


# ---------------------------------------------------------------------------
# Stock modules


def trivial_module(ctx: FieldCtx) -> HModule:
    I = Mat.identity(ctx, 1)
    return HModule(ctx, I, I, labels=("u0",), meta={"kind": "trivial"})


def regular_module(ctx: FieldCtx) -> HModule:
    """The group algebra acting on itself by left multiplication.

    Basis indexed by group elements sigma^a tau^b at position a*p + b.
    """
    p = ctx.p
    d = p * p
    S = np.zeros((d, d), dtype=np.int64)
    T = np.zeros((d, d), dtype=np.int64)
    for a in range(p):
        for b in range(p):
            col = a * p + b
            S[((a + 1) % p) * p + b, col] = 1
            T[a * p + (b + 1) % p, col] = 1
    labels = tuple(f"g{a}{b}" for a in range(p) for b in range(p))
    return HModule(ctx, Mat(ctx, S), Mat(ctx, T), labels=labels,
                   meta={"kind": "regular"})


def augmentation_ideal(ctx: FieldCtx) -> HModule:
    """Kernel of the coefficient-sum map on the regular module, with the
    induced action; dimension p^2 - 1."""
    R = regular_module(ctx)
    ones = Mat(ctx, np.ones((1, R.dim), dtype=np.int64))
    W = kernel(ones)
    sub, _ = sub_module_on(R, W)
    sub.meta["kind"] = "augmentation"
    return sub


def v_d(ctx: FieldCtx, d: int, beta: FieldElem) -> HModule:
    """Module on basis w_0..w_{d-1} with binomial action:
    sigma.w_n = sum_i C(n,i) w_i, tau.w_n = sum_i C(n,i) beta^(n-i) w_i."""
    p = ctx.p
    if not (1 <= d <= p * p):
        raise BadDimension(f"dimension {d} outside 1..{p * p}")
    _require_nonprime(ctx, beta)
    S = np.zeros((d, d), dtype=np.int64)
    T = np.zeros((d, d), dtype=np.int64)
    for n in range(d):
        for i in range(n + 1):
            c = binom_mod_p(n, i, p)
            S[i, n] = c
            T[i, n] = ctx.mul[c, ctx.pow_idx(beta.idx, n - i)]
    labels = tuple(f"w{i}" for i in range(d))
    return HModule(ctx, Mat(ctx, S), Mat(ctx, T), labels=labels,
                   meta={"kind": "vd", "d": d, "beta": beta.idx})


def _vdr_index_sets(p: int, d: int) -> tuple:
    etas = [i for i in range(1, p * p) if i % p != 0 or i > d]
    omegas = [i for i in range(d) if i % p == p - 1]
    return etas, omegas


def v_dr(ctx: FieldCtx, d: int, beta: FieldElem) -> HModule:
    """Quotient of v_d(p^2) (+) v_d(d) by the span of the diagonal vectors
    k_i = (w_i, 0) + i*(0, w_{i-1}), 0 <= i <= d, on the labeled basis
    {eta_i : p does not divide i, or i > d} u {w_i : i < d, i = -1 mod p}."""
    p = ctx.p
    if not (0 <= d <= p * p):
        raise BadDimension(f"parameter {d} outside 0..{p * p}")
    _require_nonprime(ctx, beta)
    A = v_d(ctx, p * p, beta)
    if d >= 1:
        B = v_d(ctx, d, beta)
        D = direct_sum(A, B)
    else:
        D = A
    amb = D.dim
    gens = np.zeros((d + 1, amb), dtype=np.int64)
    for i in range(d + 1):
        if i < p * p:
            gens[i, i] = 1
        if i >= 1:
            gens[i, p * p + i - 1] = i % p
    K = Subspace.from_rows(ctx, amb, gens)
    etas, omegas = _vdr_index_sets(p, d)
    reps = []
    labels = []
    eta_pos = {}
    omega_pos = {}
    for i in etas:
        r = np.zeros(amb, dtype=np.int64)
        r[i] = 1
        eta_pos[i] = len(reps)
        reps.append(r)
        labels.append(f"eta{i}")
    for i in omegas:
        r = np.zeros(amb, dtype=np.int64)
        r[p * p + i] = 1
        omega_pos[i] = len(reps)
        reps.append(r)
        labels.append(f"w{i}")
    Q, P = quotient(D, K, reps=reps)
    Q = HModule(ctx, Q.Msigma, Q.Mtau, labels=labels,
                meta={"kind": "vdr", "d": d, "beta": beta.idx,
                      "proj": P.data, "eta_pos": eta_pos,
                      "omega_pos": omega_pos, "blocks": (p * p, d)})
    return Q


def vdr_eta(M: HModule, i: int) -> np.ndarray:
    """Class of the first-block basis vector w_i in a v_dr module, for any
    0 <= i <= p^2 - 1 (resolves the rewriting relations)."""
    _require_vdr(M)
    pp = M.meta["blocks"][0]
    if not (0 <= i < pp):
        raise OutOfRange(f"eta index {i} outside 0..{pp - 1}")
    e = np.zeros(M.meta["proj"].shape[1], dtype=np.int64)
    e[i] = 1
    return _matmul_idx(M.ctx, M.meta["proj"], e.reshape(-1, 1))[:, 0]


def vdr_omega(M: HModule, j: int) -> np.ndarray:
    """Class of the second-block basis vector w_j in a v_dr module."""
    _require_vdr(M)
    pp, d = M.meta["blocks"]
    if not (0 <= j < d):
        raise OutOfRange(f"omega index {j} outside 0..{d - 1}")
    e = np.zeros(M.meta["proj"].shape[1], dtype=np.int64)
    e[pp + j] = 1
    return _matmul_idx(M.ctx, M.meta["proj"], e.reshape(-1, 1))[:, 0]


def _require_vdr(M: HModule) -> None:
    if M.meta.get("kind") != "vdr" or "proj" not in M.meta:
        raise UnlabeledModule("operation needs a module built by v_dr")


def _require_nonprime(ctx: FieldCtx, beta: FieldElem) -> None:
    if beta.ctx != ctx:
        raise ContextMismatch("parameter from a different field context")
    if ctx.in_prime_field_idx(beta.idx):
        raise PrimeFieldElement("parameter must lie outside the prime field")


# ---------------------------------------------------------------------------
# Constructions: dual, sums, subs, quotients


def dual(M: HModule) -> HModule:
    """Contragredient module: generators act by transpose inverse."""
    p = M.ctx.p
    Sd = matpow(M.Msigma, p - 1).transpose()
    Td = matpow(M.Mtau, p - 1).transpose()
    labels = tuple(f"{l}*" for l in M.labels) if M.labels else None
    return HModule(M.ctx, Sd, Td, labels=labels,
                   meta={"kind": "dual", "of": M.meta.get("kind")})


def direct_sum(M: HModule, N: HModule) -> HModule:
    if M.ctx != N.ctx:
        raise ContextMismatch("summands over different field contexts")
    ctx = M.ctx
    d = M.dim + N.dim

    def block(A: Mat, B: Mat) -> Mat:
        out = np.zeros((d, d), dtype=np.int64)
        out[: M.dim, : M.dim] = A.data
        out[M.dim :, M.dim :] = B.data
        return Mat(ctx, out)

    if M.labels and N.labels:
        if set(M.labels) & set(N.labels):
            labels = tuple(f"a.{l}" for l in M.labels) + tuple(f"b.{l}" for l in N.labels)
        else:
            labels = M.labels + N.labels
    else:
        labels = None
    return HModule(ctx, block(M.Msigma, N.Msigma), block(M.Mtau, N.Mtau),
                   labels=labels, meta={"kind": "sum"})


def sub_module_on(M: HModule, W: Subspace) -> tuple:
    """Module structure induced on an invariant subspace W; returns
    (module, embedding matrix whose columns are the basis of W)."""
    ctx = M.ctx
    if W.ambient != M.dim:
        raise ShapeMismatch("subspace ambient does not match module dimension")
    E = Mat(ctx, W.basis.T.copy())

    def induced(A: Mat) -> Mat:
        out = np.zeros((W.dim, W.dim), dtype=np.int64)
        for j in range(W.dim):
            img = A.apply(W.basis[j])
            coords = W.reduce(img)
            if coords is None:
                raise NotInvariant("subspace is not stable under the action")
            out[:, j] = coords
        return Mat(ctx, out)

    sub = HModule(ctx, induced(M.Msigma), induced(M.Mtau), meta={"kind": "sub"})
    return sub, E


def sub_generated(M: HModule, vectors) -> tuple:
    """Smallest invariant subspace containing the vectors, with induced
    action; returns (module, embedding matrix)."""
    ctx = M.ctx
    rows = [as_vector(ctx, v) for v in vectors]
    W = Subspace.from_rows(ctx, M.dim, np.array(rows, dtype=np.int64).reshape(len(rows), M.dim))
    while True:
        if W.dim == 0:
            break
        imgs_s = _matmul_idx(ctx, M.Msigma.data, W.basis.T).T
        imgs_t = _matmul_idx(ctx, M.Mtau.data, W.basis.T).T
        W2 = Subspace.from_rows(ctx, M.dim, np.vstack([W.basis, imgs_s, imgs_t]))
        if W2.dim == W.dim:
            break
        W = W2
    return sub_module_on(M, W)


def quotient(M: HModule, W: Subspace, reps=None) -> tuple:
    """Quotient module by an invariant subspace; returns (module,
    projection matrix).  Optional reps fixes the coset basis; otherwise
    the standard vectors complementary to W's pivots are used."""
    ctx = M.ctx
    if W.ambient != M.dim:
        raise ShapeMismatch("subspace ambient does not match module dimension")
    for row in W.basis:
        if not W.contains(M.Msigma.apply(row)) or not W.contains(M.Mtau.apply(row)):
            raise NotInvariant("quotient by a non-invariant subspace")
    qdim = M.dim - W.dim
    if reps is None:
        pivots = [int(np.argmax(r != 0)) for r in W.basis]
        free = [c for c in range(M.dim) if c not in pivots]
        reps_arr = np.zeros((qdim, M.dim), dtype=np.int64)
        for k, f in enumerate(free):
            reps_arr[k, f] = 1
    else:
        reps_arr = np.array([as_vector(ctx, r) for r in reps], dtype=np.int64)
        reps_arr = reps_arr.reshape(len(reps), M.dim)
        if len(reps) != qdim:
            raise ShapeMismatch(f"need {qdim} coset representatives, got {len(reps)}")
    # C = [basis of W | reps] as columns must be invertible
    C = Mat(ctx, np.vstack([W.basis, reps_arr]).T.copy())
    Cinv = invert(C)
    if Cinv is None:
        raise ShapeMismatch("representatives do not complement the subspace")
    P = Mat(ctx, Cinv.data[W.dim :, :].copy())  # qdim x ambient projection
    R = Mat(ctx, reps_arr.T.copy())
    Aq = P @ M.Msigma @ R
    Bq = P @ M.Mtau @ R
    assert P @ R == Mat.identity(ctx, qdim)
    Q = HModule(ctx, Aq, Bq, meta={"kind": "quotient"})
    return Q, P


# ---------------------------------------------------------------------------
# Words and degree functions


def _normalize_word(ctx: FieldCtx, word):
    """Accepts (a, b) | [(coef, a, b), ...] | [(a, b), ...]; returns
    [(coef_idx, a, b)]."""
    if isinstance(word, tuple) and len(word) == 2 and all(isinstance(x, int) for x in word):
        return [(1, word[0], word[1])]
    out = []
    for term in word:
        if len(term) == 2:
            coef, (a, b) = 1, term
        else:
            coef, a, b = term
        if isinstance(coef, FieldElem):
            coef = coef.idx
        elif isinstance(coef, str):
            coef = ctx.from_text(coef).idx
        else:
            coef = int(coef) % ctx.p
        out.append((coef, int(a), int(b)))
    return out


def apply_word(M: HModule, word, v) -> np.ndarray:
    """Evaluate a group-algebra element (a scalar combination of monomials
    sigma0^a tau0^b) on a vector."""
    ctx = M.ctx
    vec = as_vector(ctx, v) if not isinstance(v, np.ndarray) else v
    out = np.zeros(M.dim, dtype=np.int64)
    for coef, a, b in _normalize_word(ctx, word):
        if coef == 0:
            continue
        img = M.word_matrix(a, b).apply(vec)
        out = ctx.add[out, ctx.mul[coef, img]]
    return out


def fixed_space(M: HModule) -> Subspace:
    if "fixed" not in M._cache:
        M._cache["fixed"] = subspace_intersect(kernel(M.sigma0()), kernel(M.tau0()))
    return M._cache["fixed"]


def s_filtration(M: HModule) -> list:
    """Increasing subspaces S_0 <= S_1 <= ... up to the full module, where
    S_{n+1} is the joint preimage of S_n under sigma0 and tau0 and S_0 is
    the fixed space."""
    if "filtration" not in M._cache:
        fil = [fixed_space(M)]
        guard = 2 * M.ctx.p + 2
        while fil[-1].dim < M.dim:
            nxt = subspace_intersect(preimage(M.sigma0(), fil[-1]),
                                     preimage(M.tau0(), fil[-1]))
            if nxt.dim == fil[-1].dim:
                raise Undecided("filtration stalled below full dimension")
            fil.append(nxt)
            if len(fil) > guard:
                raise Undecided("filtration failed to terminate")
        M._cache["filtration"] = fil
    return M._cache["filtration"]


def s_filtration_direct(M: HModule) -> list:
    """Same filtration from the definition: S_n is the joint kernel of all
    products sigma0^i tau0^j with i + j = n + 1."""
    fil = []
    n = 0
    while True:
        space = Subspace.full(M.ctx, M.dim)
        for i in range(n + 2):
            j = n + 1 - i
            space = subspace_intersect(space, kernel(M.word_matrix(i, j)))
        fil.append(space)
        if space.dim == M.dim:
            return fil
        n += 1


def ddeg(M: HModule, v) -> int:
    """Least n with v in S_n; -1 for the zero vector."""
    vec = as_vector(M.ctx, v) if not isinstance(v, np.ndarray) else v
    if not vec.any():
        return -1
    for n, space in enumerate(s_filtration(M)):
        if space.contains(vec):
            return n
    raise Undecided("vector escaped the filtration")  # unreachable


def ddeg_prime(M: HModule, v) -> int:
    """Combinatorial degree on a v_dr basis: w_i contributes s_p(i);
    eta_i contributes s_p(i) - 1, minus the top base-p digit of d when
    p divides i."""
    _require_vdr(M)
    p = M.ctx.p
    d = M.meta["d"]
    d1 = digits_p(d, p, width=2)[1]
    vec = as_vector(M.ctx, v) if not isinstance(v, np.ndarray) else v
    best = -1
    for pos in np.nonzero(vec)[0]:
        lab = M.labels[pos]
        if lab.startswith("eta"):
            i = int(lab[3:])
            val = s_p(i, p) - 1 - (d1 if i % p == 0 else 0)
        else:
            i = int(lab[1:])
            val = s_p(i, p)
        best = max(best, val)
    return best


# ---------------------------------------------------------------------------
# Hom spaces


def _min_generators(M: HModule) -> list:
    """Standard basis vectors lifting a basis of M modulo the image of the
    shifted generators; they generate M over the group algebra."""
    ctx = M.ctx
    imgs = np.vstack([M.sigma0().data.T, M.tau0().data.T])
    R = Subspace.from_rows(ctx, M.dim, imgs)
    pivots = [int(np.argmax(r != 0)) for r in R.basis]
    free = [c for c in range(M.dim) if c not in pivots]
    return free


def _hom_source_data(M: HModule) -> dict:
    """Cacheable generator/relation presentation of M."""
    if "homsrc" in M._cache:
        return M._cache["homsrc"]
    ctx = M.ctx
    p = ctx.p
    gens = _min_generators(M)
    t = len(gens)
    words = [(a, b) for a in range(p) for b in range(p)]
    cols = []
    for gi in gens:
        g = np.zeros(M.dim, dtype=np.int64)
        g[gi] = 1
        for (a, b) in words:
            cols.append(M.word_matrix(a, b).apply(g))
    E = np.array(cols, dtype=np.int64).T.reshape(M.dim, t * len(words))
    rel = kernel(Mat(ctx, E))
    # pivot columns of E give an invertible evaluation submatrix
    EM = E.copy()
    piv = _rref_inplace(ctx, EM)
    EP = E[:, piv]
    EPinv = invert(Mat(ctx, EP))
    assert EPinv is not None
    data = {"gens": gens, "t": t, "words": words, "E": E, "rel": rel,
            "piv": piv, "EPinv": EPinv}
    M._cache["homsrc"] = data
    return data


def hom_space(M: HModule, N: HModule) -> Subspace:
    """Canonical basis of the space of module maps M -> N, as row-major
    vectorized dim(N) x dim(M) matrices.

    Solved through a generator/relation presentation of M: a map is a
    choice of images for the generators annihilating every relation.
    """
    if M.ctx != N.ctx:
        raise ContextMismatch("modules over different field contexts")
    ctx = M.ctx
    amb = M.dim * N.dim
    if M.dim == 0 or N.dim == 0:
        return Subspace.zero(ctx, amb)
    src = _hom_source_data(M)
    t, words, rel = src["t"], src["words"], src["rel"]
    nw = len(words)
    dN = N.dim
    wordN = {ab: N.word_matrix(*ab).data for ab in words}
    # conditions on stacked images x = (x_1 .. x_t) in N^t
    nrel = rel.dim
    if nrel:
        C = np.zeros((nrel * dN, t * dN), dtype=np.int64)
        for ridx in range(nrel):
            rvec = rel.basis[ridx]
            for i in range(t):
                block = np.zeros((dN, dN), dtype=np.int64)
                for widx, ab in enumerate(words):
                    coef = int(rvec[i * nw + widx])
                    if coef:
                        block = ctx.add[block, ctx.mul[coef, wordN[ab]]]
                C[ridx * dN : (ridx + 1) * dN, i * dN : (i + 1) * dN] = block
        sol = kernel(Mat(ctx, C))
    else:
        sol = Subspace.full(ctx, t * dN)
    if sol.dim == 0:
        return Subspace.zero(ctx, amb)
    # reconstruct each map from its generator images via the pivot columns
    piv, EPinv = src["piv"], src["EPinv"]
    rows = np.zeros((sol.dim, amb), dtype=np.int64)
    for sidx in range(sol.dim):
        x = sol.basis[sidx]
        VP = np.zeros((dN, M.dim), dtype=np.int64)
        for k, c in enumerate(piv):
            i, widx = divmod(c, nw)
            ab = words[widx]
            VP[:, k] = _matmul_idx(ctx, wordN[ab], x[i * dN : (i + 1) * dN].reshape(-1, 1))[:, 0]
        Phi = _matmul_idx(ctx, VP, EPinv.data)
        rows[sidx] = Phi.reshape(-1)
    return Subspace.from_rows(ctx, amb, rows)


def end_algebra(M: HModule) -> tuple:
    """(hom_space(M, M), the same basis reshaped to matrices)."""
    if "end" not in M._cache:
        H = hom_space(M, M)
        mats = [Mat(M.ctx, H.basis[i].reshape(M.dim, M.dim).copy())
                for i in range(H.dim)]
        M._cache["end"] = (H, mats)
    return M._cache["end"]


# ---------------------------------------------------------------------------
# Isomorphism testing


@dataclass(frozen=True)
class IsoDecision:
    verdict: str                    # "YES" | "NO"
    method: str
    witness: Optional[Mat] = None
    detail: dict = field(default_factory=dict)

    @property
    def isomorphic(self) -> bool:
        return self.verdict == "YES"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "method": self.method}
        if self.witness is not None:
            out["witness"] = {"rows": self.witness.rows, "cols": self.witness.cols,
                              "entries": self.witness.to_lists()}
        if self.detail:
            out["detail"] = {k: v for k, v in self.detail.items()}
        return out


def _verify_witness(M: HModule, N: HModule, X: Mat) -> bool:
    if invert(X) is None:
        return False
    return (X @ M.Msigma == N.Msigma @ X) and (X @ M.Mtau == N.Mtau @ X)


def _combine(ctx: FieldCtx, basis: np.ndarray, coeffs) -> np.ndarray:
    out = np.zeros(basis.shape[1], dtype=np.int64)
    for c, row in zip(coeffs, basis):
        if c:
            out = ctx.add[out, ctx.mul[int(c), row]]
    return out


def is_isomorphic(M: HModule, N: HModule, seed: int = 0, trials: int = 64) -> IsoDecision:
    """Decision procedure: cheap invariants first (dimension, profile,
    Hom dimensions), then a search for an invertible element of
    Hom(M, N): seeded random combinations, exhaustive projective scan
    when feasible, and finally a rerun over the quadratic extension
    (an extension witness certifies a base-field isomorphism)."""
    if M.ctx != N.ctx:
        raise ContextMismatch("modules over different field contexts")
    ctx = M.ctx
    if M.dim != N.dim:
        return IsoDecision("NO", "dim-mismatch",
                           detail={"dims": [M.dim, N.dim]})
    if M.dim == 0:
        return IsoDecision("YES", "equal-matrices", witness=Mat.identity(ctx, 0))
    if M.Msigma == N.Msigma and M.Mtau == N.Mtau:
        return IsoDecision("YES", "equal-matrices", witness=Mat.identity(ctx, M.dim))
    if profile(M) != profile(N):
        return IsoDecision("NO", "profile-mismatch")
    H = hom_space(M, N)
    h = H.dim
    e = end_algebra(M)[0].dim
    h_back = hom_space(N, M).dim
    e2 = end_algebra(N)[0].dim
    if not (h == h_back == e == e2):
        return IsoDecision("NO", "hom-dim-mismatch",
                           detail={"hom": [h, h_back], "end": [e, e2]})
    if h == 0:
        return IsoDecision("NO", "hom-dim-mismatch", detail={"hom": [0, 0]})

    def try_coeffs(coeffs) -> Optional[Mat]:
        X = Mat(ctx, _combine(ctx, H.basis, coeffs).reshape(N.dim, M.dim).copy())
        if _verify_witness(M, N, X):
            return X
        return None

    # basis elements alone, then seeded random combinations
    for k in range(h):
        coeffs = [0] * h
        coeffs[k] = 1
        X = try_coeffs(coeffs)
        if X is not None:
            return IsoDecision("YES", "random-combination", witness=X,
                               detail={"trials": 0})
    rng = random.Random(seed)
    for t in range(trials):
        coeffs = [rng.randrange(ctx.q) for _ in range(h)]
        if not any(coeffs):
            continue
        X = try_coeffs(coeffs)
        if X is not None:
            return IsoDecision("YES", "random-combination", witness=X,
                               detail={"trials": t + 1})
    # deterministic fallback: exhaustive projective scan when feasible
    if ctx.q ** h <= 10 ** 6:
        for lead in range(h):
            tail = h - lead - 1
            for rest in range(ctx.q ** tail):
                coeffs = [0] * lead + [1]
                r = rest
                for _ in range(tail):
                    coeffs.append(r % ctx.q)
                    r //= ctx.q
                X = try_coeffs(coeffs)
                if X is not None:
                    return IsoDecision("YES", "exhaustive-scan", witness=X)
        return IsoDecision("NO", "exhaustive-scan")
    # scalar extension rerun: a witness there proves isomorphism here
    big = ctx_new(ctx.p, 2 * ctx.n, find_irreducible(ctx.p, 2 * ctx.n))
    emb = embed_map(ctx, big)
    Me = HModule(big, Mat(big, emb[M.Msigma.data]), Mat(big, emb[M.Mtau.data]))
    Ne = HModule(big, Mat(big, emb[N.Msigma.data]), Mat(big, emb[N.Mtau.data]))
    He = hom_space(Me, Ne)
    rng2 = random.Random(seed ^ 0x5EED)
    for t in range(trials):
        coeffs = [rng2.randrange(big.q) for _ in range(He.dim)]
        if not any(coeffs):
            continue
        X = Mat(big, _combine(big, He.basis, coeffs).reshape(N.dim, M.dim).copy())
        if _verify_witness(Me, Ne, X):
            return IsoDecision("YES", "scalar-extension", witness=X,
                               detail={"field": f"F_{big.q}"})
    raise Undecided(
        f"no invertible hom found in {trials} trials over F_{ctx.q} and F_{big.q}; "
        f"hom dim {h} too large for exhaustive scan")


# ---------------------------------------------------------------------------
# Indecomposability


@dataclass(frozen=True)
class IndecDecision:
    verdict: str                    # "INDECOMPOSABLE" | "DECOMPOSABLE"
    certificate: str                # "T1" | "T2" | "T3" | "T3-division"
    detail: dict = field(default_factory=dict)

    @property
    def indecomposable(self) -> bool:
        return self.verdict == "INDECOMPOSABLE"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "certificate": self.certificate}
        if self.detail:
            out["detail"] = {k: (v if isinstance(v, (int, str, list)) else str(v))
                             for k, v in self.detail.items()}
        return out


def _charpoly_coeffs(A: Mat) -> list:
    """Characteristic polynomial coefficients [c_0=1, c_1, ..., c_n] with
    c_k the coefficient of lambda^(n-k), computed by similarity reduction
    to Hessenberg form and the leading-minor recurrence."""
    ctx = A.ctx
    n = A.rows
    H = A.data.copy()
    for j in range(n - 2):
        piv = None
        for r in range(j + 1, n):
            if H[r, j]:
                piv = r
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[[j + 1, piv]] = H[[piv, j + 1]]
            H[:, [j + 1, piv]] = H[:, [piv, j + 1]]
        inv = int(ctx.inv[H[j + 1, j]])
        for r in range(j + 2, n):
            f = int(ctx.mul[H[r, j], inv])
            if f:
                H[r] = ctx.sub[H[r], ctx.mul[f, H[j + 1]]]
                H[:, j + 1] = ctx.add[H[:, j + 1], ctx.mul[f, H[:, r]]]
    # p_k(la) for leading k x k minors of (la*I - H), ascending coeff lists
    polys = [[1]]
    for k in range(1, n + 1):
        hkk = int(H[k - 1, k - 1])
        prev = polys[k - 1]
        cur = [0] * (k + 1)
        # (la - h_kk) * p_{k-1}
        for d_, c in enumerate(prev):
            cur[d_ + 1] = int(ctx.add[cur[d_ + 1], c])
            cur[d_] = int(ctx.sub[cur[d_], ctx.mul[hkk, c]])
        run = 1
        for m in range(1, k):
            run = int(ctx.mul[run, H[k - m, k - m - 1]])
            if run == 0:
                break
            w = int(ctx.mul[H[k - 1 - m, k - 1], run])
            if w:
                pm = polys[k - 1 - m]
                for d_, c in enumerate(pm):
                    cur[d_] = int(ctx.sub[cur[d_], ctx.mul[w, c]])
        polys.append(cur)
    full = polys[n]  # ascending; degree n, leading coeff 1
    return [full[n - k] for k in range(n + 1)]


def algebra_radical(ctx: FieldCtx, mats: Sequence[Mat]) -> Subspace:
    """Jacobson radical of the matrix algebra spanned by mats (assumed
    multiplicatively closed), in basis coordinates: repeatedly cut by the
    vanishing of the p^i-th characteristic coefficient of products x*y,
    made linear with p^i-th roots."""
    g = len(mats)
    n = mats[0].rows if g else 0
    W = Subspace.full(ctx, g)
    lmax = 0
    while ctx.p ** (lmax + 1) <= n:
        lmax += 1
    for i in range(lmax + 1):
        if W.dim == 0:
            break
        pi = ctx.p ** i
        cur = [_coeff_combo(ctx, mats, W.basis[j]) for j in range(W.dim)]
        S = np.zeros((W.dim, W.dim), dtype=np.int64)
        for j1, y in enumerate(cur):          # one equation per y
            for j2, z in enumerate(cur):      # one unknown per z
                prod = Mat(ctx, _matmul_idx(ctx, z, y))
                c = _charpoly_coeffs(prod)[pi]
                for _ in range(i):
                    c = int(ctx.proot[c])
                S[j1, j2] = c
        K = kernel(Mat(ctx, S))
        if K.dim == W.dim:
            continue
        newbasis = _matmul_idx(ctx, K.basis, W.basis)
        W = Subspace.from_rows(ctx, g, newbasis)
    return W


def _radical_subspace(M: HModule) -> Subspace:
    _, mats = end_algebra(M)
    return algebra_radical(M.ctx, mats)


def _coeff_combo(ctx: FieldCtx, mats, coeffs) -> np.ndarray:
    out = np.zeros_like(mats[0].data)
    for c, Mt in zip(coeffs, mats):
        if c:
            out = ctx.add[out, ctx.mul[int(c), Mt.data]]
    return out


def is_indecomposable(M: HModule, seed: int = 0, trials: int = 16,
                      tiers: tuple = ("T1", "T2", "T3")) -> IndecDecision:
    """Three tiers: (T1) one-dimensional fixed space; (T2) Fitting
    decomposition along endomorphisms looking for an explicit split;
    (T3) the radical of End(M) for the definitive answer.  tiers can
    restrict the procedure, e.g. ("T3",) forces the full decision."""
    if M.dim < 1:
        raise BadDimension("decision needs a module of dimension >= 1")
    ctx = M.ctx
    if "T1" in tiers and fixed_space(M).dim == 1:
        return IndecDecision("INDECOMPOSABLE", "T1", detail={"fixed_dim": 1})
    Hend, mats = end_algebra(M)
    if "T2" in tiers:
        rng = random.Random(seed)
        candidates = list(range(Hend.dim)) + [None] * trials
        for cand in candidates:
            if cand is None:
                coeffs = [rng.randrange(ctx.q) for _ in range(Hend.dim)]
                theta = Mat(ctx, _combine(ctx, Hend.basis, coeffs).reshape(M.dim, M.dim).copy())
            else:
                theta = mats[cand]
            F = matpow(theta, M.dim)
            ker = kernel(F)
            if 0 < ker.dim < M.dim:
                im = Subspace.from_rows(ctx, M.dim, F.data.T.copy())
                assert subspace_intersect(ker, im).dim == 0
                return IndecDecision("DECOMPOSABLE", "T2",
                                     detail={"split_dims": [ker.dim, im.dim],
                                             "kernel": ker, "image": im})
    if "T3" not in tiers:
        raise Undecided("restricted tiers reached no decision")
    rad = _radical_subspace(M)
    e = Hend.dim - rad.dim
    if e == 1:
        return IndecDecision("INDECOMPOSABLE", "T3",
                             detail={"end_dim": Hend.dim, "radical_dim": rad.dim,
                                     "semisimple_dim": 1})
    # complement representatives of End/rad
    pivots = [int(np.argmax(r != 0)) for r in rad.basis]
    free = [c for c in range(Hend.dim) if c not in pivots]
    reps = [mats[c] for c in free]  # valid complement: coords e_c are independent mod rad
    detail = {"end_dim": Hend.dim, "radical_dim": rad.dim, "semisimple_dim": e}

    def coords_mod_rad(X: Mat) -> Optional[np.ndarray]:
        full = Hend.reduce(X.data.reshape(-1))
        if full is None:
            return None
        red = full.copy()
        for j, pc in enumerate(pivots):
            c = int(red[pc])
            if c:
                red = ctx.sub[red, ctx.mul[c, rad.basis[j]]]
        return red[free]

    # commutativity of the semisimple quotient
    commutative = True
    for i1 in range(e):
        for i2 in range(i1 + 1, e):
            comm = reps[i1] @ reps[i2] - reps[i2] @ reps[i1]
            cr = coords_mod_rad(comm)
            assert cr is not None
            if cr.any():
                commutative = False
                break
        if not commutative:
            break
    if not commutative:
        return IndecDecision("DECOMPOSABLE", "T3", detail=detail)
    # commutative semisimple: count simple factors as the fixed space of
    # the q-power map, computed prime-field-linearly
    pctx = ctx_new(ctx.p, 1, find_irreducible(ctx.p, 1))
    nn = ctx.n
    dimFp = e * nn
    T = np.zeros((dimFp, dimFp), dtype=np.int64)
    for i1 in range(e):
        zq = matpow(reps[i1], ctx.q)
        cq = coords_mod_rad(zq)
        c1 = coords_mod_rad(reps[i1])
        assert cq is not None and c1 is not None
        for j in range(nn):
            tj = ctx.encode([0] * j + [1])
            col_q = ctx.mul[ctx.pow_idx(tj, ctx.q), cq]
            col_1 = ctx.mul[tj, c1]
            col = ctx.sub[col_q, col_1]
            # expand the F_q-vector col into prime-field digits
            for k in range(e):
                dg = ctx.decode(int(col[k]))
                for j2 in range(nn):
                    T[k * nn + j2, i1 * nn + j] = dg[j2]
    KF = kernel(Mat(pctx, T))
    assert KF.dim % nn == 0
    r = KF.dim // nn
    detail["simple_factors"] = r
    if r == 1:
        return IndecDecision("INDECOMPOSABLE", "T3-division", detail=detail)
    return IndecDecision("DECOMPOSABLE", "T3", detail=detail)


# ---------------------------------------------------------------------------
# Jordan types


def jordan_type_at(M: HModule, a, b) -> tuple:
    """Partition of the nilpotent pencil member a*sigma0 + b*tau0."""
    ctx = M.ctx
    ai = a.idx if isinstance(a, FieldElem) else int(a) % ctx.p
    bi = b.idx if isinstance(b, FieldElem) else int(b) % ctx.p
    if ai == 0 and bi == 0:
        raise ZeroPoint("pencil point (0, 0) is excluded")
    N = Mat(ctx, ctx.add[ctx.mul[ai, M.sigma0().data], ctx.mul[bi, M.tau0().data]])
    return nilpotent_partition(N)


def jordan_scan(M: HModule) -> list:
    """Jordan types over the projective line: points (1, b) for b in F_q,
    then (0, 1)."""
    if "jscan" not in M._cache:
        pts = [(1, b) for b in range(M.ctx.q)] + [(0, 1)]
        M._cache["jscan"] = [((a, b), jordan_type_at(M, a, b)) for a, b in pts]
    return M._cache["jscan"]


def dominance_compare(lam: tuple, mu: tuple) -> Optional[int]:
    """1 if lam strictly dominates mu, -1 if mu dominates lam, 0 if equal,
    None if incomparable (prefix-sum order; both must partition the same
    total)."""
    if sum(lam) != sum(mu):
        raise ShapeMismatch("partitions of different totals")
    if lam == mu:
        return 0
    L = max(len(lam), len(mu))
    ge = le = True
    sa = sb = 0
    for k in range(L):
        sa += lam[k] if k < len(lam) else 0
        sb += mu[k] if k < len(mu) else 0
        if sa < sb:
            ge = False
        if sa > sb:
            le = False
    if ge:
        return 1
    if le:
        return -1
    return None


def generic_jordan_type(M: HModule) -> tuple:
    """Dominance-maximal Jordan type over the scanned projective line."""
    types = {t for _, t in jordan_scan(M)}
    top = [t for t in types
           if all(dominance_compare(t, u) in (0, 1) for u in types)]
    if len(top) == 1:
        return top[0]
    raise Undecided(f"no dominance-maximum among scanned types {sorted(types)}")


def constant_type_over_scan(M: HModule) -> bool:
    types = {t for _, t in jordan_scan(M)}
    return len(types) == 1


# ---------------------------------------------------------------------------
# Cores and profiles


def case_ii_core(M: HModule, u) -> tuple:
    """Submodule generated by sigma0^(p-2) tau0^(p-2) u, together with the
    fixed space (the two ingredients of the small-core analysis)."""
    ctx = M.ctx
    vec = as_vector(ctx, u) if not isinstance(u, np.ndarray) else u
    if not vec.any():
        raise ZeroVector("core of the zero vector")
    p = ctx.p
    v = apply_word(M, (p - 2, p - 2), vec)
    core, _ = sub_generated(M, [v])
    return core, fixed_space(M)


@dataclass(frozen=True)
class Profile:
    dim: int
    filtration_dims: tuple
    fixed_dim: int
    end_dim: int
    jordan_multiset: tuple

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "filtration_dims": list(self.filtration_dims),
                "fixed_dim": self.fixed_dim,
                "end_dim": self.end_dim,
                "jordan_multiset": [list(t) for t in self.jordan_multiset]}


def profile(M: HModule) -> Profile:
    """Isomorphism-invariant fingerprint; equality is necessary (not
    sufficient) for isomorphism."""
    if "profile" not in M._cache:
        fil = s_filtration(M)
        jt = tuple(sorted(t for _, t in jordan_scan(M)))
        M._cache["profile"] = Profile(
            dim=M.dim,
            filtration_dims=tuple(s.dim for s in fil),
            fixed_dim=fixed_space(M).dim,
            end_dim=end_algebra(M)[0].dim,
            jordan_multiset=jt,
        )
    return M._cache["profile"]


# ---------------------------------------------------------------------------
# JSON


def module_to_json(M: HModule) -> dict:
    return {
        "p": M.ctx.p,
        "n": M.ctx.n,
        "modulus": list(M.ctx.modulus),
        "dim": M.dim,
        "sigma": M.Msigma.to_lists(),
        "tau": M.Mtau.to_lists(),
        "labels": list(M.labels) if M.labels else None,
    }


def module_from_json(obj: dict) -> HModule:
    ctx = ctx_new(int(obj["p"]), int(obj["n"]), tuple(obj["modulus"]))
    d = int(obj["dim"])

    def grid(rows) -> Mat:
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ShapeMismatch("matrix grid does not match dim")
        data = np.array([[ctx.from_text(v).idx for v in row] for row in rows],
                        dtype=np.int64).reshape(d, d)
        return Mat(ctx, data)

    labels = obj.get("labels")
    return HModule(ctx, grid(obj["sigma"]), grid(obj["tau"]),
                   labels=tuple(labels) if labels else None)
