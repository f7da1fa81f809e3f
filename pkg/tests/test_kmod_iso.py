"""Isomorphism and indecomposability decision procedures."""

import pytest

from repcurve.errors import ContextMismatch, Undecided
from repcurve.ff import default_ctx
from repcurve.kmod import (augmentation_ideal, direct_sum, dual, end_algebra,
                           hom_space, is_indecomposable, is_isomorphic,
                           regular_module, trivial_module, v_d, v_dr)

C3 = default_ctx(3)
T = C3.gen()


def check_witness(dec, M, N):
    X = dec.witness
    assert X is not None
    assert X @ M.Msigma == N.Msigma @ X
    assert X @ M.Mtau == N.Mtau @ X
    from repcurve.linalg import invert
    assert invert(X) is not None


def test_equal_modules_identity_witness():
    M = v_d(C3, 4, T)
    dec = is_isomorphic(M, v_d(C3, 4, T))
    assert dec.verdict == "YES" and dec.method == "equal-matrices"
    check_witness(dec, M, M)


def test_dim_mismatch_short_circuits():
    dec = is_isomorphic(v_d(C3, 4, T), v_d(C3, 5, T))
    assert dec.verdict == "NO" and dec.method == "dim-mismatch"


def test_different_twists_not_isomorphic():
    dec = is_isomorphic(v_d(C3, 5, T), v_d(C3, 5, T + 1))
    assert dec.verdict == "NO"
    assert dec.witness is None


def test_context_mismatch_raises():
    with pytest.raises(ContextMismatch):
        is_isomorphic(v_d(C3, 2, T), v_d(default_ctx(5), 2, default_ctx(5).gen()))


@pytest.mark.parametrize("d", range(0, 9))
def test_vdr_duality_with_verified_witness(d):
    A = dual(v_dr(C3, d, T))
    B = v_dr(C3, 8 - d, T)
    dec = is_isomorphic(A, B, seed=1)
    assert dec.verdict == "YES"
    check_witness(dec, A, B)


def test_max_members_are_group_algebra_objects():
    dec = is_isomorphic(v_d(C3, 9, T), regular_module(C3))
    assert dec.verdict == "YES"
    check_witness(dec, v_d(C3, 9, T), regular_module(C3))
    dec = is_isomorphic(v_d(C3, 8, T), augmentation_ideal(C3))
    assert dec.verdict == "YES"


def test_digit_class_collapse():
    # same leading base-3 digit of d gives the same quotient member
    dec = is_isomorphic(v_dr(C3, 3, T), v_dr(C3, 5, T), seed=2)
    assert dec.verdict == "YES"
    check_witness(dec, v_dr(C3, 3, T), v_dr(C3, 5, T))
    assert is_isomorphic(v_dr(C3, 2, T), v_dr(C3, 5, T)).verdict == "NO"


def test_hom_and_end_dimensions():
    M = v_d(C3, 5, T)
    assert hom_space(M, M).dim == end_algebra(M)[0].dim
    # maps between distinct twists factor through trivial layers,
    # so the hom dim drops below the endomorphism dim
    for d in (2, 5):
        A, B = v_d(C3, d, T), v_d(C3, d, T + 1)
        assert hom_space(A, B).dim < hom_space(A, A).dim
    assert hom_space(v_d(C3, 2, T), v_d(C3, 2, T + 1)).dim == 1


def test_isomorphism_is_seed_stable():
    A = dual(v_dr(C3, 4, T))
    B = v_dr(C3, 4, T)
    d1 = is_isomorphic(A, B, seed=0)
    d2 = is_isomorphic(A, B, seed=0)
    assert d1.verdict == d2.verdict == "YES"
    assert d1.witness == d2.witness
    assert is_isomorphic(A, B, seed=99).verdict == "YES"


@pytest.mark.parametrize("d", range(1, 10))
def test_vd_indecomposable_via_fixed_space(d):
    dec = is_indecomposable(v_d(C3, d, T))
    assert dec.verdict == "INDECOMPOSABLE" and dec.certificate == "T1"


@pytest.mark.parametrize("d", range(0, 10))
def test_vdr_indecomposable_via_radical(d):
    dec = is_indecomposable(v_dr(C3, d, T), tiers=("T3",))
    assert dec.verdict == "INDECOMPOSABLE" and dec.certificate == "T3"
    assert dec.detail["semisimple_dim"] == 1


def test_restricted_tiers_can_refuse():
    # the quotient member has a 2-dimensional fixed space, so T1 alone
    # reaches no decision
    with pytest.raises(Undecided):
        is_indecomposable(v_dr(C3, 4, T), tiers=("T1",))


def test_decomposable_detected_with_split():
    M = direct_sum(v_d(C3, 2, T), trivial_module(C3))
    dec = is_indecomposable(M)
    assert dec.verdict == "DECOMPOSABLE"
    assert dec.certificate in ("T2", "T3")
    if dec.certificate == "T2":
        ker = dec.detail["kernel"]
        im = dec.detail["image"]
        assert ker.dim + im.dim == M.dim
    N = direct_sum(v_d(C3, 3, T), v_d(C3, 3, T))
    assert is_indecomposable(N).verdict == "DECOMPOSABLE"


def test_decomposable_pair_of_twists():
    M = direct_sum(v_d(C3, 2, T), v_d(C3, 2, T + 1))
    assert is_indecomposable(M, tiers=("T3",)).verdict == "DECOMPOSABLE"
