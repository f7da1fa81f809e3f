"""Constructors, filtrations, degrees, Jordan data, cores, JSON."""

import numpy as np
import pytest

from repcurve.errors import (BadDimension, NotInvariant, PrimeFieldElement,
                             UnlabeledModule, ZeroPoint, ZeroVector)
from repcurve.ff import default_ctx, frobenius
from repcurve.kmod import (HModule, apply_word, augmentation_ideal,
                           binom_mod_p, case_ii_core, constant_type_over_scan,
                           ddeg, ddeg_prime, digits_p, direct_sum,
                           dominance_compare, dual, fixed_space,
                           generic_jordan_type, hom_space, jordan_scan,
                           jordan_type_at,
                           module_from_json, module_to_json, profile,
                           quotient, regular_module, s_filtration,
                           s_filtration_direct, s_p, sub_generated,
                           sub_module_on, trivial_module, v_d, v_dr, vdr_eta,
                           vdr_omega)
from repcurve.linalg import Mat, Subspace, matpow

C3 = default_ctx(3)
C5 = default_ctx(5)
T3 = C3.gen()
T5 = C5.gen()


def test_digit_helpers():
    assert digits_p(11, 3) == (2, 0, 1)
    assert digits_p(12, 5, width=2) == (2, 2)
    assert s_p(8, 3) == 4
    assert s_p(0, 3) == 0
    # Lucas: C(7,2) mod 3 via digits (1,2) choose (2,0)
    assert binom_mod_p(7, 2, 3) == (binom_mod_p(1, 2, 3) * binom_mod_p(2, 0, 3)) % 3


@pytest.mark.parametrize("ctx,t", [(C3, "t3"), (C5, "t5")])
def test_vd_action_is_binomial_and_order_p(ctx, t):
    p = ctx.p
    beta = ctx.gen()
    M = v_d(ctx, p * p - 1, beta)
    S, T = M.Msigma, M.Mtau
    assert S @ T == T @ S
    assert matpow(S, p) == Mat.identity(ctx, M.dim)
    assert matpow(T, p) == Mat.identity(ctx, M.dim)
    for n in range(M.dim):
        for i in range(M.dim):
            c = binom_mod_p(n, i, p)
            assert S.data[i, n] == c
            want = ctx.mul[c, ctx.pow_idx(beta.idx, n - i)] if i <= n else 0
            assert T.data[i, n] == want


def test_vd_validation():
    with pytest.raises(BadDimension):
        v_d(C3, 0, T3)
    with pytest.raises(BadDimension):
        v_d(C3, 10, T3)
    with pytest.raises(PrimeFieldElement):
        v_d(C3, 4, C3.el(2))


def test_named_modules():
    R = regular_module(C3)
    assert R.dim == 9 and fixed_space(R).dim == 1
    A = augmentation_ideal(C3)
    assert A.dim == 8 and fixed_space(A).dim == 1
    assert trivial_module(C3).dim == 1


@pytest.mark.parametrize("d", range(0, 10))
def test_vdr_dimension_and_labels(d):
    M = v_dr(C3, d, T3)
    assert M.dim == (9 if d == 9 else 8)
    etas = [int(l[3:]) for l in M.labels if l.startswith("eta")]
    ws = [int(l[1:]) for l in M.labels if not l.startswith("eta")]
    assert etas == [i for i in range(1, 9) if i % 3 != 0 or i > d]
    assert ws == [i for i in range(d) if i % 3 == 2]


def test_vdr_rewriting_relations():
    # eta_0 and eta_{p|i, i <= d} die; w-classes equal -1/i times eta_i
    M = v_dr(C3, 5, T3)
    assert not vdr_eta(M, 0).any()
    assert not vdr_eta(M, 3).any()
    assert np.array_equal(vdr_eta(M, 2), M.basis_vector("eta2"))
    lhs = vdr_omega(M, 1)
    rhs = M.ctx.mul[(-(M.ctx.el(2).inverse())).idx, M.basis_vector("eta2")]
    assert np.array_equal(lhs, rhs)


def test_dual_and_direct_sum_dims():
    M = v_d(C3, 5, T3)
    D = dual(M)
    assert D.dim == 5
    assert dual(dual(M)).Msigma == M.Msigma
    S = direct_sum(M, trivial_module(C3))
    assert S.dim == 6
    assert fixed_space(S).dim == 2


def test_sub_quotient_roundtrip():
    M = v_d(C3, 6, T3)
    fil = s_filtration(M)
    W = fil[1]
    sub, E = sub_module_on(M, W)
    assert sub.dim == W.dim
    # embedding intertwines the actions
    assert M.Msigma @ E == E @ sub.Msigma
    Q, proj = quotient(M, W)
    assert Q.dim == M.dim - W.dim
    assert Q.Msigma @ proj == proj @ M.Msigma
    bad = Subspace.from_rows(C3, 6, np.eye(1, 6, 1, dtype=np.int64))
    with pytest.raises(NotInvariant):
        sub_module_on(M, bad)


def test_sub_generated_spans():
    # generated span of w_n is the digit-dominance cone under n
    M = v_d(C3, 7, T3)
    sub6, _ = sub_generated(M, [M.basis_vector("w6")])
    assert sub6.dim == 3  # 6 = (2,0) base 3 dominates 0, 3, 6
    sub5, _ = sub_generated(M, [M.basis_vector("w5")])
    assert sub5.dim == 6  # 5 = (1,2) base 3 dominates 0..5
    both, _ = sub_generated(M, [M.basis_vector("w5"), M.basis_vector("w6")])
    assert both.dim == 7
    # 8 = (2,2) base 3 dominates every smaller index
    N = v_d(C3, 9, T3)
    whole, _ = sub_generated(N, [N.basis_vector("w8")])
    assert whole.dim == 9


@pytest.mark.parametrize("d", range(1, 10))
def test_filtration_matches_digit_counts(d):
    M = v_d(C3, d, T3)
    dims = [s.dim for s in s_filtration(M)]
    top = max(s_p(i, 3) for i in range(d))
    assert dims == [sum(1 for i in range(d) if s_p(i, 3) <= n)
                    for n in range(top + 1)]


@pytest.mark.parametrize("d", [1, 4, 8, 9])
def test_filtration_two_definitions_agree(d):
    # preimage recursion vs joint kernels of all length-(n+1) words
    M = v_d(C3, d, T3)
    a = s_filtration(M)
    b = s_filtration_direct(M)
    assert [s.dim for s in a] == [s.dim for s in b]
    for u, w in zip(a, b):
        assert u.contains_space(w) and w.contains_space(u)


def test_ddeg_on_labels():
    M = v_d(C3, 9, T3)
    assert ddeg(M, M.basis_vector("w0")) == 0
    assert ddeg(M, M.basis_vector("w8")) == 4
    assert ddeg(M, np.zeros(9, dtype=np.int64)) == -1


@pytest.mark.parametrize("d", range(0, 10))
def test_ddeg_prime_agrees(d):
    import random
    rng = random.Random(d)
    M = v_dr(C3, d, T3)
    for _ in range(50):
        v = np.array([rng.randrange(9) for _ in range(M.dim)], dtype=np.int64)
        if not v.any():
            continue
        assert ddeg(M, v) == ddeg_prime(M, v)


def test_fixed_space_dims_for_vdr():
    # two-dimensional until d reaches p^2 - p, then one-dimensional
    for d in range(0, 10):
        want = 2 if d < 6 else 1
        assert fixed_space(v_dr(C3, d, T3)).dim == want


def test_word_application():
    M = v_d(C3, 5, T3)
    v = M.basis_vector("w4")
    u = apply_word(M, (1, 1), v)
    w = M.sigma0().apply(M.tau0().apply(v))
    assert np.array_equal(u, w)
    assert not apply_word(M, (3, 0), v).any()  # sigma0^3 = 0


def test_jordan_types():
    M = v_d(C3, 5, T3)
    assert jordan_type_at(M, 1, 0) == (3, 2)
    assert generic_jordan_type(M) == (3, 2)
    assert len(jordan_scan(M)) == 10
    assert constant_type_over_scan(M)
    with pytest.raises(ZeroPoint):
        jordan_type_at(M, 0, 0)
    assert dominance_compare((3, 2), (3, 1, 1)) == 1
    assert dominance_compare((2, 2, 2), (3, 3)) == -1
    assert dominance_compare((3, 3), (3, 3)) == 0
    assert dominance_compare((4, 1, 1), (3, 3)) is None


def test_case_ii_core_vd():
    M = v_d(C3, 8, T3)
    core, fixed = case_ii_core(M, M.basis_vector("w5"))
    assert core.dim == 2
    assert fixed.dim == 1
    with pytest.raises(ZeroVector):
        case_ii_core(M, np.zeros(8, dtype=np.int64))


def test_core_twist_matches_negated_parameter():
    from repcurve.kmod import is_isomorphic
    M = v_d(C3, 7, T3)
    core, _ = case_ii_core(M, M.basis_vector("w5"))
    assert is_isomorphic(core, v_d(C3, 2, -T3)).isomorphic
    N = v_dr(C3, 4, T3)
    ncore, nfix = case_ii_core(N, N.basis_vector("eta8"))
    assert ncore.dim == 2 and nfix.dim == 2
    assert is_isomorphic(ncore, v_d(C3, 2, -frobenius(T3))).isomorphic


def test_profile_coarseness_vs_hom_separation():
    A = v_d(C3, 5, T3)
    B = v_d(C3, 5, T3 + 1)
    assert profile(A) == profile(A)
    # the coarse profile collides for distinct twists; hom dims separate them
    assert profile(A) == profile(B)
    assert hom_space(A, B).dim < hom_space(A, A).dim
    assert profile(A) != profile(v_d(C3, 6, T3))


def test_module_json_roundtrip():
    M = v_dr(C5, 7, T5)
    obj = module_to_json(M)
    back = module_from_json(obj)
    assert back.Msigma == M.Msigma and back.Mtau == M.Mtau
    assert back.labels == M.labels


def test_unlabeled_basis_vector():
    M = HModule(C3, Mat.identity(C3, 2), Mat.identity(C3, 2))
    with pytest.raises(UnlabeledModule):
        M.basis_vector("w0")
