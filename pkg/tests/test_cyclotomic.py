import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gausscyclo.cyclotomic import (
    CycloCtx,
    cyclo_ctx,
    cyclotomic_poly,
    one_minus_zeta_product,
)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@pytest.mark.parametrize("N, coeffs", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (6, (1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
    (15, (1, -1, 0, 1, -1, 1, 0, -1, 1)),
])
def test_small_cyclotomic_polynomials(N, coeffs):
    assert cyclotomic_poly(N) == coeffs


def test_phi_105_has_a_coefficient_minus_two():
    c = cyclotomic_poly(105)
    assert len(c) == 49
    assert c[7] == -2 and c[41] == -2
    assert min(c) == -2 and max(c) == 1


@pytest.mark.parametrize("N", list(range(1, 201)))
def test_divisor_product_is_x_to_the_n_minus_one(N):
    prod = [1]
    for d in range(1, N + 1):
        if N % d == 0:
            prod = poly_mul(prod, cyclotomic_poly(d))
    assert prod == [-1] + [0] * (N - 1) + [1]


def test_context_validation():
    with pytest.raises(ValueError):
        CycloCtx(6, 3)
    with pytest.raises(ValueError):
        CycloCtx(4, 9)
    with pytest.raises(ValueError):
        CycloCtx(0, 5)


def test_roots_of_unity_relations():
    ctx = cyclo_ctx(4, 5)
    assert ctx.zeta_p() ** 5 == 1
    assert ctx.zeta_n() ** 4 == 1
    assert ctx.zeta_n() ** 2 == -1
    total = ctx.zero()
    for j in range(5):
        total = total + ctx.zeta_p(j)
    assert total == 0
    assert ctx.zeta_p(-1) * ctx.zeta_p(1) == 1


def test_contexts_compare_by_parameters():
    a, b = CycloCtx(4, 5), CycloCtx(4, 5)
    assert a == b and hash(a) == hash(b)
    assert a.zeta_p(2) + b.zeta_p(3) == a.zeta_p(2) + a.zeta_p(3)


def test_quadratic_gauss_sum_mod_5_squares_to_5():
    ctx = cyclo_ctx(1, 5)
    g = sum((ctx.zeta_p(b) * (1 if b in (1, 4) else -1) for b in range(1, 5)), ctx.zero())
    assert g * g == 5
    assert abs(g.embed() - math.sqrt(5)) < 1e-12


def random_terms(rng, N, p, count=6):
    return [(rng.randrange(N), rng.randrange(p), rng.randint(-5, 5)) for _ in range(count)]


def schoolbook(ctx, ta, tb):
    # multiply the unreduced sums term by term, then reduce once
    return ctx.from_terms([(a1 + a2, b1 + b2, c1 * c2) for a1, b1, c1 in ta for a2, b2, c2 in tb])


@pytest.mark.parametrize("N, p", [(1, 3), (4, 5), (12, 13), (8, 3), (24, 5), (6, 7), (15, 2)])
def test_multiplication_matches_schoolbook(N, p):
    ctx = cyclo_ctx(N, p)
    rng = random.Random(N * 1000 + p)
    for _ in range(20):
        ta, tb = random_terms(rng, N, p), random_terms(rng, N, p)
        assert ctx.from_terms(ta) * ctx.from_terms(tb) == schoolbook(ctx, ta, tb)


@pytest.mark.parametrize("N, p", [(4, 5), (12, 13), (24, 5)])
def test_embedding_is_a_ring_map(N, p):
    ctx = cyclo_ctx(N, p)
    rng = random.Random(7)
    for _ in range(10):
        a = ctx.from_terms(random_terms(rng, N, p))
        b = ctx.from_terms(random_terms(rng, N, p))
        assert cmath.isclose((a * b).embed(), a.embed() * b.embed(), rel_tol=1e-9, abs_tol=1e-9)
        assert cmath.isclose((a + b).embed(), a.embed() + b.embed(), rel_tol=1e-9, abs_tol=1e-9)


def test_embedding_of_generators():
    ctx = cyclo_ctx(12, 5)
    assert cmath.isclose(ctx.zeta_n().embed(), cmath.exp(2j * cmath.pi / 12))
    assert cmath.isclose(ctx.zeta_p(2).embed(), cmath.exp(4j * cmath.pi / 5))


def test_inverse_of_random_elements():
    ctx = cyclo_ctx(12, 5)
    rng = random.Random(2024)
    for _ in range(100):
        a = ctx.from_terms(random_terms(rng, 12, 5, count=4))
        if a.is_zero():
            continue
        inv = a.inverse()
        assert a * inv == 1
        assert a / a == 1
        assert a ** -2 * a ** 2 == 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        cyclo_ctx(4, 5).zero().inverse()


def test_rational_queries():
    ctx = cyclo_ctx(4, 5)
    half = ctx.scalar(Fraction(1, 2))
    assert half.is_rational() and not half.is_integral()
    assert half.to_fraction() == Fraction(1, 2)
    assert (half * 4).to_int() == 2
    assert not ctx.zeta_n().is_rational()
    with pytest.raises(ValueError):
        ctx.zeta_n().to_fraction()


def test_galois_action():
    ctx = cyclo_ctx(4, 5)
    x = ctx.zeta_n() + 2 * ctx.zeta_p()
    assert ctx.galois(x, 2, 3) == ctx.zeta_n(3) + 2 * ctx.zeta_p(2)
    with pytest.raises(ValueError):
        ctx.galois(x, 5, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_one_minus_zeta_product(p):
    assert one_minus_zeta_product(p) == p


coeff = st.integers(min_value=-20, max_value=20)
terms = st.lists(st.tuples(st.integers(0, 11), st.integers(0, 4), coeff), max_size=8)


@settings(max_examples=60, deadline=None)
@given(terms, terms, terms)
def test_ring_axioms(ta, tb, tc):
    ctx = cyclo_ctx(12, 5)
    a, b, c = ctx.from_terms(ta), ctx.from_terms(tb), ctx.from_terms(tc)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(terms)
def test_coefficient_round_trip(ta):
    ctx = cyclo_ctx(12, 5)
    a = ctx.from_terms(ta)
    assert ctx.from_coeffs(a.coeffs) == a
    assert hash(ctx.from_coeffs(a.coeffs)) == hash(a)
