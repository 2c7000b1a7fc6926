import cmath
import itertools
import math
from fractions import Fraction

import pytest

from gausscyclo.characters import (
    character_group,
    digit_stats,
    hd_lifting_check,
    hd_product_check,
    jacobi_symbol,
    legendre_symbol,
    lerch_sign,
    permutation_sign,
    stickelberger_check,
    to_local,
)
from gausscyclo.finite_field import field


def numeric_gauss_sum(q, t):
    """sum_j exp(2 pi i (t j/(q-1) + Tr(g^j)/p)) with Tr from repeated Frobenius."""
    F = field(q)
    p, n, N = F.p, F.n, q - 1
    total = 0
    for j in range(N):
        x, s = F.g_pow(j), F.zero
        for _ in range(n):
            s, x = s + x, x ** p
        total += cmath.exp(2j * cmath.pi * (t * j / N + s.coeffs[0] / p))
    return total


def least_primitive_root(p):
    return next(a for a in range(1, p) if len({pow(a, e, p) for e in range(p - 1)}) == p - 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gauss_sums_over_prime_fields_match_direct_sum(p):
    g = least_primitive_root(p)
    G = character_group(p)
    for t in range(p - 1):
        direct = sum(cmath.exp(2j * cmath.pi * (t * j / (p - 1) + pow(g, j, p) / p))
                     for j in range(p - 1))
        assert cmath.isclose(G.gauss_sum(t).embed(), direct, abs_tol=1e-9)


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27])
def test_gauss_sums_over_extensions_match_direct_sum(q):
    G = character_group(q)
    for t in range(q - 1):
        assert cmath.isclose(G.gauss_sum(t).embed(), numeric_gauss_sum(q, t), abs_tol=1e-8)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27])
def test_gauss_sum_reflection_and_trivial_value(q):
    G = character_group(q)
    assert G.gauss_sum(0) == -1
    for t in range(1, q - 1):
        assert G.gauss_sum(t) * G.gauss_sum(-t) == G.minus_one(t) * q
        assert G.gauss_sum(t) * G.gauss_sum_inverse(t) == 1


def test_minus_one_matches_character_value():
    for q in (5, 7, 9, 8, 13):
        G = character_group(q)
        for t in range(q - 1):
            assert G(t)(G.fq(-1)) == G.minus_one(t)


def test_character_group_structure():
    G = character_group(13)
    chi = G.chi
    assert chi.order == 12 and (chi ** 4).order == 3
    assert (chi * chi.inverse()).is_trivial()
    assert G(3) == G(15) and hash(G(3)) == hash(G(15))
    assert G(5)(0) == 0
    x, y = G.fq(3), G.fq(7)
    assert G(5)(x * y) == G(5)(x) * G(5)(y)


def test_twisted_gauss_sum():
    G = character_group(7)
    for t in range(6):
        for l in range(1, 7):
            assert G.twisted_gauss_sum(t, l) == G(-t)(l) * G.gauss_sum(t)


def euler_criterion(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def test_legendre_symbol_matches_euler_criterion():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        for a in range(-40, 40):
            assert legendre_symbol(a, p) == euler_criterion(a, p)


def test_jacobi_symbol_is_multiplicative_in_the_modulus():
    for m1, m2 in itertools.product((3, 5, 7, 11), repeat=2):
        for a in range(30):
            assert jacobi_symbol(a, m1 * m2) == jacobi_symbol(a, m1) * jacobi_symbol(a, m2)
    with pytest.raises(ValueError):
        jacobi_symbol(3, 8)


def inversion_sign(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def test_permutation_sign_matches_inversion_count():
    for perm in itertools.permutations(range(5)):
        assert permutation_sign(perm) == inversion_sign(perm)


def test_lerch_sign_matches_brute_force():
    for m in range(1, 41):
        for a in range(m):
            if math.gcd(a, m) == 1:
                assert lerch_sign(a, m) == inversion_sign([a * x % m for x in range(m)])
    with pytest.raises(ValueError):
        lerch_sign(2, 4)


def test_digit_stats():
    assert digit_stats(0, 3, 2) == (0, 1)
    assert digit_stats(7, 3, 2) == (3, 2)  # 7 = 1 + 2*3
    assert digit_stats(23, 5, 2) == (7, 144)  # 23 = 3 + 4*5, 3! * 4!
    with pytest.raises(ValueError):
        digit_stats(8, 3, 2)


def test_to_local_is_a_ring_map():
    G = character_group(9)
    fq = G.fq
    a, b = G.gauss_sum(3), G.gauss_sum(5) + G.cyc.zeta_n(2)
    la, lb, lab = to_local(a, fq), to_local(b, fq), to_local(a * b, fq)
    # truncated product in F_9[t]/(t^2)
    prod = [la.coeffs[0] * lb.coeffs[0], la.coeffs[0] * lb.coeffs[1] + la.coeffs[1] * lb.coeffs[0]]
    assert list(lab.coeffs) == prod
    assert to_local(G.cyc.zeta_n(), fq).coeffs[0] == fq.generator
    with pytest.raises(ValueError):
        to_local(G.cyc.scalar(Fraction(1, 3)), fq)


@pytest.mark.parametrize("q", [5, 7, 9, 13, 25, 27])
def test_stickelberger_every_r(q):
    G = character_group(q)
    for r in range(q - 1):
        res = stickelberger_check(G, r)
        assert res.passed, r


def test_stickelberger_modes():
    G = character_group(7)
    assert stickelberger_check(G, 3).mode == "leading"
    G9 = character_group(9)
    assert stickelberger_check(G9, 4).mode == "vanishing"  # 4 = 1 + 1*3, s = 2


@pytest.mark.parametrize("p, n", [(p, n) for p in (2, 3, 5, 7) for n in (1, 2, 3)])
def test_hasse_davenport_lifting(p, n):
    for t in range(max(p - 1, 1)):
        assert hd_lifting_check(p, n, t).passed


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13])
def test_hasse_davenport_product(q):
    G = character_group(q)
    N = q - 1
    for m in (d for d in range(1, N + 1) if N % d == 0):
        for a0 in (a for a in range(N) if G(a).order == m):
            for t in range(N):
                assert hd_product_check(G, m, t, a0).passed


def test_hasse_davenport_product_rejects_wrong_order():
    with pytest.raises(ValueError):
        hd_product_check(character_group(13), 4, 1, 1)
