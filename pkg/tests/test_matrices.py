import cmath
from fractions import Fraction

import pytest

from gausscyclo.characters import character_group
from gausscyclo.cyclotomic import cyclo_ctx
from gausscyclo.finite_field import field
from gausscyclo.matrices import (
    CycloMatrix,
    build_A,
    build_B,
    build_C,
    build_D,
    build_carlitz,
    build_legendre_V,
    build_legendre_shift,
    build_sun_S,
    carlitz_det_formula,
    det_A_via_eigen,
    det_B_via_eigen,
    det_circulant,
    det_cofactor,
    det_direct,
    det_exact,
    eigenvalues,
    integer_det,
)


def complex_det(rows):
    a = [list(r) for r in rows]
    n, det = len(a), 1
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(a[r][c]))
        if abs(a[piv][c]) < 1e-12:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for j in range(c, n):
                a[r][j] -= f * a[c][j]
    return det


def numeric_gauss(q, t):
    F = field(q)
    p, n, N = F.p, F.n, q - 1
    total = 0
    for j in range(N):
        x, s = F.g_pow(j), F.zero
        for _ in range(n):
            s, x = s + x, x ** p
        total += cmath.exp(2j * cmath.pi * (t * j / N + s.coeffs[0] / p))
    return total


def pairs(qs):
    return [(q, k) for q in qs for k in range(1, q) if (q - 1) % k == 0]


@pytest.mark.parametrize("q, k, value", [
    (3, 1, 4), (3, 2, -1), (5, 1, -256), (5, 2, -4), (9, 2, 512),
    (4, 1, -27), (7, 6, -1), (13, 12, -1),
])
def test_det_A_known_values(q, k, value):
    G = character_group(q)
    assert det_A_via_eigen(G, k) == value
    assert det_exact(build_A(G, k)) == value


@pytest.mark.parametrize("q, k, value", [
    (3, 1, Fraction(4, 3)), (5, 2, Fraction(4, 5)), (9, 2, 0), (3, 2, -1),
])
def test_det_B_known_values(q, k, value):
    G = character_group(q)
    assert det_B_via_eigen(G, k) == value
    assert det_exact(build_B(G, k)) == value


@pytest.mark.parametrize("q, k", pairs([3, 4, 5, 7, 8, 9, 11, 13]))
def test_three_determinant_routes_agree(q, k):
    G = character_group(q)
    a = det_A_via_eigen(G, k)
    assert det_exact(build_A(G, k)) == a
    assert det_circulant(G, k, "A") == a
    b = det_B_via_eigen(G, k)
    assert det_exact(build_B(G, k)) == b
    assert det_circulant(G, k, "B") == b


@pytest.mark.parametrize("q, k", pairs([3, 4, 5, 7, 8, 9, 11, 13, 16]))
def test_det_A_matches_floating_point(q, k):
    m = (q - 1) // k
    rows = [[numeric_gauss(q, k * (i + j)) for j in range(m)] for i in range(m)]
    exact = det_A_via_eigen(character_group(q), k).to_int()
    assert cmath.isclose(complex_det(rows), exact, rel_tol=1e-7, abs_tol=1e-7)


@pytest.mark.parametrize("q, k", pairs([3, 5, 7, 9]))
def test_bareiss_matches_cofactor_for_small_matrices(q, k):
    G = character_group(q)
    if (q - 1) // k > 4:
        pytest.skip("cofactor oracle limited to size 4")
    for M in (build_A(G, k), build_B(G, k), build_C(G, k), build_D(G, k)):
        assert det_exact(M) == det_cofactor(M)


def test_bareiss_handles_zero_pivots_and_singular_matrices():
    ctx = cyclo_ctx(4, 5)
    z, one, i = ctx.zero(), ctx.one(), ctx.zeta_n()
    M = CycloMatrix([[z, one], [i, z]])
    assert det_exact(M) == -i
    S = CycloMatrix([[one, i], [i, -one]])
    assert det_exact(S) == 0
    assert det_exact(CycloMatrix([[one, z], [z, one]])) == 1


def test_generator_independence_sample():
    G = character_group(13)
    for k in (1, 2, 3):
        base = det_direct(G, k, "A")
        for s in (5, 7, 11):
            assert det_direct(G, k, "A", s, method="bareiss") == base
            assert det_direct(G, k, "A", s, method="circulant") == base


def test_k_must_divide():
    with pytest.raises(ValueError):
        build_A(character_group(7), 4)
    with pytest.raises(ValueError):
        det_direct(character_group(7), 2, method="nope")


@pytest.mark.parametrize("q, k", pairs([5, 7, 9, 13]))
def test_eigenvector_relation(q, k):
    G = character_group(q)
    data = eigenvalues(G, k)
    C = build_C(G, k)
    for j, lam in enumerate(data.eigenvalues):
        v = [G.cyc.zeta_n(k * r * j) for r in range(data.m)]
        assert C.mul_vector(v) == [lam * x for x in v]


def test_carlitz_small_cases():
    # p = 3, quadratic character: [[phi(2), phi(0)], [phi(0), phi(1)]]
    M = build_carlitz(3, 1)
    assert det_exact(M) == -1
    assert carlitz_det_formula(3, 1) == -1
    assert det_exact(build_carlitz(5, 2)) == 5 == carlitz_det_formula(5, 2)
    for t in (1, 3):
        assert det_exact(build_carlitz(5, t)) == carlitz_det_formula(5, t)
    with pytest.raises(ValueError):
        build_carlitz(5, 0)


def test_legendre_matrices():
    assert build_legendre_V(3) == [[1]]
    assert build_sun_S(3) == [[-1]]
    assert build_legendre_V(5) == [[1, -1], [-1, -1]]
    assert integer_det(build_legendre_V(5)) == -2
    assert build_sun_S(5) == [[-1, 0], [0, -1]]
    assert integer_det(build_sun_S(5)) == 1
    assert integer_det(build_legendre_shift(5)) == -2
    with pytest.raises(ValueError):
        build_sun_S(2)


def test_integer_det():
    assert integer_det([[2, 1], [1, 1]]) == 1
    assert integer_det([[0, 1], [1, 0]]) == -1
    assert integer_det([[1, 2], [2, 4]]) == 0
    assert integer_det([[Fraction(1), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 6)]]) == Fraction(-1, 12)
