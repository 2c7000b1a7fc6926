"""Closed-form values the matrix engine is checked against.

Nothing here touches cyclotomic arithmetic or elimination; every function
is plain integer/rational arithmetic in the parameters.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .finite_field import prime_power


def _pn(q):
    pn = prime_power(q)
    if pn is None:
        raise ValueError(f"{q} is not a prime power")
    return pn


def det_a1(q: int) -> int:
    """det [G(chi^(i+j))], 0 <= i, j <= q-2."""
    return (-1) ** ((q - 2) * (q - 3) // 2) * (q - 1) ** (q - 1)


def det_a2(q: int) -> int:
    """det [G(chi^(2i+2j))], 0 <= i, j <= (q-3)/2, for odd q."""
    p, n = _pn(q)
    if p == 2:
        raise ValueError("q must be odd")
    alpha = 1 if n % 2 else (p * p + 7) // 8
    return (-1) ** alpha * ((q - 1) // 2) ** ((q - 1) // 2) * 2 ** ((p ** (n - 1) - 1) // 2)


def b_nonsingular(q: int, k: int) -> bool:
    """B_q(k) is nonsingular iff p has order exactly n modulo k."""
    p, n = _pn(q)
    f, x = 1, p % k
    while k > 1 and x != 1:
        x = x * p % k
        f += 1
    return f == n


def det_b1(p: int) -> Fraction:
    """det [1/G(chi^(i+j))] over F_p."""
    return Fraction((-1) ** (p * (p + 1) // 2) * (p - 1) ** (p - 1), p ** (p - 2))


def det_b2(p: int) -> Fraction:
    """det [1/G(chi^(2i+2j))] over F_p, p odd."""
    if p == 2:
        raise ValueError("p must be odd")
    h = (p - 1) // 2
    return (-1) ** ((p + 3) * (p - 1) // 4) * p * Fraction(p - 1, 2 * p) ** h


def det_b2_rederived(p: int) -> Fraction:
    """det B_p(2) with the sign recomputed from the eigenvalue product.

    The product of (lambda_b + 1 - p)/p is (-1)^m p ((p-1)/2p)^m with
    m = (p-1)/2, and the Lerch sign of x -> -x on Z/m contributes
    (-1)^((m-1)(m-2)/2).  This differs from det_b2 when p = +-1 (mod 8).
    """
    if p == 2:
        raise ValueError("p must be odd")
    h = (p - 1) // 2
    return (-1) ** (h + (h - 1) * (h - 2) // 2) * p * Fraction(p - 1, 2 * p) ** h


def generic_det_residue(m: int, p: int) -> int:
    """Residue mod p that det A_q(k) must have, m = (q-1)/k."""
    return (-1) ** ((m * m - m + 2) // 2) % p


def lerch_minus_one(m: int) -> int:
    return (-1) ** ((m - 1) * (m - 2) // 2)


def carlitz_sign(p: int, f: int, psi_minus_one: int) -> int:
    """Sign in det [psi(i+j)] = sign * G(psi)^(p-1) / p for ord(psi) = f."""
    if f % 2:
        e = (p - 1) // (2 * f)
    elif psi_minus_one == 1:
        e = (p - 1) // f
    else:
        e = (f + 2) * (p - 1) // (2 * f)
    return (-1) ** e


def quadratic_gauss_value(q: int) -> complex:
    """G_q(phi) for the quadratic character phi of F_q, q odd."""
    p, n = _pn(q)
    root = math.sqrt(q)
    if p % 4 == 1:
        return (-1) ** (n - 1) * root
    return (-1) ** (n - 1) * (1j) ** n * root


def gamma_det(n: int) -> int:
    """det [Gamma(i+j)], 1 <= i, j <= n."""
    out = 1
    for r in range(n):
        out *= math.factorial(r) * math.factorial(r + 1)
    return out


def gamma_reciprocal_det(n: int) -> Fraction:
    """det [1/Gamma(i+j)], 1 <= i, j <= n."""
    out = Fraction((-1) ** (n * (n - 1) // 2))
    for r in range(n):
        out *= Fraction(math.factorial(r), math.factorial(n + r))
    return out


def sun_a(p: int) -> int:
    """The unique a = 1 (mod 4) with p = a^2 + 4 b^2, for p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError("p must be 1 mod 4")
    for b in range(math.isqrt(p // 4) + 1):
        rest = p - 4 * b * b
        a = math.isqrt(rest)
        if a * a == rest:
            return a if a % 4 == 1 else -a
    raise ArithmeticError(f"{p} is not of the form a^2 + 4b^2")


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_nonzero_square_mod(a: int, p: int) -> bool:
    a %= p
    return a != 0 and pow(a, (p - 1) // 2, p) == 1

