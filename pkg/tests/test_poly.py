import pytest
from hypothesis import given, settings, strategies as st

from repcurve.errors import OutOfRange, PrimeFieldOnly
from repcurve.ff import FieldElem, default_ctx
from repcurve.poly import Poly1, Poly2, trace_polynomial

C9 = default_ctx(3)
C3 = default_ctx(3, 1)


def test_bare_int_coefficients_are_prime_constants():
    # constructor convention: plain ints reduce mod p, so 4 means 1
    f = Poly1(C9, (4, 1))
    assert f.coeff(0) == C9.one
    assert f.coeff(1) == C9.one


def test_extension_coefficients_survive_arithmetic():
    # regression: products used to mangle coefficients outside the
    # prime field by re-coercing encoded values
    t = C9.gen()
    f = Poly1(C9, (t, 1))  # x + t
    sq = f * f
    assert sq.coeff(0) == t * t
    assert sq.coeff(1) == t + t
    assert sq.coeff(2) == C9.one
    g = f ** 8
    assert g.coeff(0) == t ** 8 == C9.one


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=1, max_size=5),
       st.lists(st.integers(0, 8), min_size=1, max_size=5))
def test_poly1_mul_agrees_with_pointwise_eval(a, b):
    f = Poly1(C9, tuple(FieldElem(C9, i) for i in a))
    g = Poly1(C9, tuple(FieldElem(C9, i) for i in b))
    h = f * g
    s = f + g
    d = f - g
    for x in C9.elements():
        assert h.eval(x) == f.eval(x) * g.eval(x)
        assert s.eval(x) == f.eval(x) + g.eval(x)
        assert d.eval(x) == f.eval(x) - g.eval(x)


def test_poly1_degree_and_trim():
    z = Poly1.zero(C9)
    assert z.degree == -1
    f = Poly1(C9, (1, 0, 0))
    assert f.degree == 0
    assert Poly1.monomial(C9, C9.gen(), 3).degree == 3


def test_poly1_pow_validation():
    f = Poly1(C9, (1, 1))
    with pytest.raises(OutOfRange):
        f ** -1
    assert f ** 0 == Poly1(C9, (1,))


def test_poly2_requires_prime_field():
    with pytest.raises(PrimeFieldOnly):
        Poly2.zero(C9)


def test_poly2_expand_matches_eval():
    x = Poly2.monomial(C3, 1, 1, 0)
    y = Poly2.monomial(C3, 1, 0, 1)
    f = (x + y) ** 4 - x * y
    for a in C3.elements():
        for b in C3.elements():
            want = (a + b) ** 4 - a * b
            assert f.eval(a, b) == want


def test_poly2_neg_sub():
    y = Poly2.monomial(C3, 1, 0, 1)
    assert y - y == Poly2.zero(C3)
    assert -(-y) == y


def test_frobenius_kernel_polynomial_text():
    y = Poly2.monomial(C3, 1, 0, 1)
    g = y ** 3 - y
    # vanishes exactly on the prime field
    for b in C3.elements():
        assert g.eval(C3.zero, b).is_zero()


@pytest.mark.parametrize("p", [3, 5])
def test_trace_polynomial_closed_form(p):
    ctx = default_ctx(p, 1)
    y = Poly2.monomial(ctx, 1, 0, 1)
    got = trace_polynomial(p, ctx)
    assert got == (y ** p - y) ** (p - 1)
    # constant in x: expanding kills every positive x-power
    assert got.deg_x() <= 0


def test_trace_polynomial_rejects_extension_context():
    with pytest.raises(PrimeFieldOnly):
        trace_polynomial(3, C9)
