import math

import pytest
from hypothesis import given, settings, strategies as st

from localmult.fpring import (
    BigradedPoly,
    FpScalar,
    GradedPoly,
    IncompatibleRingsError,
    InvalidModulusError,
    NonInvertibleError,
    RingSpec,
    binom_mod_p,
    format_poly,
    fp_inv,
    poly_inv,
    poly_mul,
    poly_pow,
    tensor,
)

F2T3 = RingSpec(2, 1, 2)    # F_2[t], t^3 = 0
F2T4 = RingSpec(2, 1, 3)    # t^4 = 0
F2T14 = RingSpec(2, 1, 13)  # t^14 = 0
F3X7 = RingSpec(3, 2, 6)    # F_3[x], x^7 = 0


def P(spec, **exps):
    return GradedPoly(spec, {int(k[1:]): v for k, v in exps.items()})


# ---------------------------------------------------------------- scalars

def test_fp_inv_examples():
    assert fp_inv(FpScalar(1, 2)) == FpScalar(1, 2)
    assert fp_inv(FpScalar(2, 3)) == FpScalar(2, 3)
    assert fp_inv(FpScalar(3, 5)) == FpScalar(2, 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_fp_inv_exhaustive(p):
    for a in range(1, p):
        b = fp_inv(FpScalar(a, p))
        assert (a * b.value) % p == 1


def test_fp_inv_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        fp_inv(FpScalar(0, 5))


def test_fpscalar_validation():
    with pytest.raises(InvalidModulusError):
        FpScalar(1, 4)
    with pytest.raises(ValueError):
        FpScalar(5, 3)
    with pytest.raises(IncompatibleRingsError):
        FpScalar(1, 3) + FpScalar(1, 5)


def test_binom_examples():
    assert binom_mod_p(10, 4, 2).value == 0
    assert binom_mod_p(7, 3, 2).value == 1
    for n in (0, 1, 17, 2000):
        assert binom_mod_p(n, 0, 5).value == 1
    assert binom_mod_p(3, 7, 5).value == 0  # r > n


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_binom_small_grid_vs_factorials(p):
    for n in range(0, 65):
        for r in range(0, n + 1):
            direct = math.factorial(n) // (math.factorial(r) * math.factorial(n - r))
            assert binom_mod_p(n, r, p).value == direct % p


# ---------------------------------------------------------------- poly ops

def test_poly_mul_examples():
    one_plus_t = P(F2T3, e0=1, e1=1)
    assert poly_mul(one_plus_t, one_plus_t) == P(F2T3, e0=1, e2=1)
    a = P(F2T3, e0=1, e1=1, e2=1)
    assert poly_mul(a, GradedPoly.one(F2T3)) == a
    t2 = P(F2T3, e2=1)
    assert poly_mul(t2, t2).is_zero()


def test_poly_mul_ring_mismatch():
    with pytest.raises(IncompatibleRingsError):
        poly_mul(GradedPoly.one(F2T3), GradedPoly.one(F2T4))


def test_poly_inv_examples():
    a = P(F2T3, e0=1, e1=1, e2=1)
    assert poly_inv(a) == P(F2T3, e0=1, e1=1)
    assert poly_inv(GradedPoly.one(F2T3)) == GradedPoly.one(F2T3)
    w = poly_pow(P(F2T14, e0=1, e1=1), 14)
    assert poly_inv(w) == P(F2T14, e0=1, e2=1)


def test_poly_inv_rejects_zero_constant():
    with pytest.raises(NonInvertibleError):
        poly_inv(P(F2T3, e1=1))


def test_poly_pow_examples():
    assert poly_pow(P(F2T4, e0=1, e1=1), 4) == GradedPoly.one(F2T4)
    assert poly_pow(P(F2T4, e1=1), 0) == GradedPoly.one(F2T4)
    assert poly_pow(P(F2T14, e2=1), 3) == P(F2T14, e6=1)


def test_constructor_rejects_bad_exponents():
    with pytest.raises(ValueError):
        GradedPoly(F2T3, {5: 1})
    with pytest.raises(ValueError):
        GradedPoly(F2T3, {-1: 1})


def test_ringspec_validation():
    with pytest.raises(InvalidModulusError):
        RingSpec(6, 1, 3)
    with pytest.raises(ValueError):
        RingSpec(2, 0, 3)
    with pytest.raises(ValueError):
        RingSpec(2, 1, -1)


def test_format_poly():
    assert format_poly(GradedPoly.zero(F3X7)) == "0"
    assert format_poly(GradedPoly.one(F3X7)) == "1"
    assert format_poly(P(F3X7, e0=1, e1=2, e2=1)) == "1 + 2*x + x^2"
    assert format_poly(P(F2T14, e6=1)) == "t^6"
    assert format_poly(P(F2T14, e1=1)) == "t"


# ------------------------------------------------------------- properties

@st.composite
def ring_and_polys(draw, count=3, max_t=30):
    p = draw(st.sampled_from((2, 3, 5, 7)))
    t_bound = draw(st.integers(min_value=0, max_value=max_t))
    spec = RingSpec(p, draw(st.sampled_from((1, 2))), t_bound)
    polys = []
    for _ in range(count):
        coeffs = draw(
            st.dictionaries(st.integers(0, t_bound), st.integers(0, p - 1), max_size=6)
        )
        polys.append(GradedPoly(spec, coeffs))
    return spec, polys


@settings(deadline=None)
@given(ring_and_polys())
def test_ring_axioms(data):
    _, (a, b, c) = data
    assert poly_mul(a, b) == poly_mul(b, a)
    assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))
    assert poly_mul(a, b + c) == poly_mul(a, b) + poly_mul(a, c)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == GradedPoly.zero(a.spec)


@st.composite
def invertible_poly(draw):
    p = draw(st.sampled_from((2, 3, 5, 7)))
    t_bound = draw(st.integers(min_value=0, max_value=30))
    spec = RingSpec(p, 1, t_bound)
    coeffs = draw(
        st.dictionaries(st.integers(0, t_bound), st.integers(0, p - 1), max_size=6)
    )
    coeffs[0] = draw(st.integers(1, p - 1))
    return GradedPoly(spec, coeffs)


@settings(deadline=None)
@given(invertible_poly())
def test_inverse_property(a):
    assert poly_mul(a, poly_inv(a)) == GradedPoly.one(a.spec)


@settings(deadline=None)
@given(ring_and_polys(count=1, max_t=12), st.integers(0, 5), st.integers(0, 5))
def test_pow_additivity(data, m, n):
    _, (a,) = data
    assert poly_pow(a, m + n) == poly_mul(poly_pow(a, m), poly_pow(a, n))


@settings(deadline=None)
@given(ring_and_polys(count=2, max_t=12))
def test_bigraded_trivial_factor_iso(data):
    # with a trivial right factor (T = 0) the tensor ring is the left ring
    spec, (a, b) = data
    trivial = RingSpec(spec.p, 1, 0)
    unit = GradedPoly.one(trivial)
    lifted = tensor(a, unit) * tensor(b, unit)
    product = poly_mul(a, b)
    assert lifted == tensor(product, unit)
    assert {e: c for (e, _), c in lifted.coeffs.items()} == product.coeffs


def test_tensor_modulus_mismatch():
    with pytest.raises(IncompatibleRingsError):
        tensor(GradedPoly.one(F2T3), GradedPoly.one(F3X7))
    with pytest.raises(IncompatibleRingsError):
        BigradedPoly.zero(F2T3, F3X7)
