"""Gauss-sum matrices and their exact determinants.

For k | q-1 and m = (q-1)/k, with G = Gauss sum and chi the context
generator (indices 0 <= i, j < m):

    A[i][j] = G(chi^(k(i+j)))          B[i][j] = 1 / G(chi^(k(i+j)))
    C[i][j] = G(chi^(k(i-j)))          D[i][j] = (-1)^(k(i-j)) G(chi^(k(i-j)))

Three determinant routes are provided and kept independent of each other:

* ``det_exact``: fraction-free (Bareiss) elimination over the cyclotomic field;
* ``det_A_via_eigen`` / ``det_B_via_eigen``: products over the eigenvalues
  lambda_b = m * sum_{y in U_k} zeta_p^Tr(b y), one per coset of U_k;
* ``det_circulant``: since A and B only depend on (i + j) mod m, they are a
  circulant times the reversal j -> -j, and the circulant is diagonalised
  by the m-th roots of unity zeta_{q-1}^(k l).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import (
    CharacterGroup,
    character_group,
    legendre_symbol,
    lerch_sign,
)
from .closed_forms import carlitz_sign
from .cyclotomic import CycloCtx, CycloElem
from .finite_field import FqElem

__all__ = [
    "CycloMatrix",
    "EigenData",
    "DEFAULT_CROSS_CHECK_BOUND",
    "build_A",
    "build_B",
    "build_C",
    "build_D",
    "eigenvalues",
    "bareiss_det",
    "det_exact",
    "det_cofactor",
    "det_A_via_eigen",
    "det_B_via_eigen",
    "det_circulant",
    "det_direct",
    "build_carlitz",
    "carlitz_det_formula",
    "build_legendre_V",
    "build_legendre_shift",
    "build_sun_S",
    "integer_det",
]

DEFAULT_CROSS_CHECK_BOUND = 13
# field degree above which "auto" never runs elimination
_ELIMINATION_DEGREE_LIMIT = 64


class CycloMatrix:
    """Square matrix of elements sharing one cyclotomic context."""

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("matrix must be square and non-empty")
        ctx = rows[0][0].ctx
        if any(x.ctx != ctx for r in rows for x in r):
            raise ValueError("entries live in different contexts")
        self.rows = rows
        self.size = m
        self.ctx: CycloCtx = ctx

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, CycloMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"CycloMatrix(size={self.size}, ctx={self.ctx})"

    def mul_vector(self, vec):
        zero = self.ctx.zero()
        out = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def det(self) -> CycloElem:
        return det_exact(self)


def _check_k(group: CharacterGroup, k: int) -> int:
    if k < 1 or group.N % k:
        raise ValueError(f"k = {k} does not divide q - 1 = {group.N}")
    return group.N // k


def build_A(group: CharacterGroup, k: int, s: int = 1) -> CycloMatrix:
    """A_q(k) for the generator chi^s (s must be a unit mod q-1)."""
    m = _check_k(group, k)
    return CycloMatrix(
        [[group.gauss_sum(s * k * (i + j)) for j in range(m)] for i in range(m)]
    )


def build_B(group: CharacterGroup, k: int, s: int = 1) -> CycloMatrix:
    m = _check_k(group, k)
    return CycloMatrix(
        [[group.gauss_sum_inverse(s * k * (i + j)) for j in range(m)] for i in range(m)]
    )


def build_C(group: CharacterGroup, k: int) -> CycloMatrix:
    m = _check_k(group, k)
    return CycloMatrix(
        [[group.gauss_sum(k * (i - j)) for j in range(m)] for i in range(m)]
    )


def build_D(group: CharacterGroup, k: int) -> CycloMatrix:
    m = _check_k(group, k)
    return CycloMatrix(
        [
            [group.gauss_sum(k * (i - j)) * (-1) ** (k * (i - j) % 2) for j in range(m)]
            for i in range(m)
        ]
    )


@dataclass
class EigenData:
    k: int
    m: int
    reps: list[FqElem]
    eigenvalues: list[CycloElem]


def eigenvalues(group: CharacterGroup, k: int) -> EigenData:
    """lambda_b for the coset representatives b = g^0, ..., g^(m-1).

    U_k consists of the powers g^(m i), so b * y = g^(j + m i).
    """
    m = _check_k(group, k)
    tr = group.traces
    cyc = group.cyc
    lams = [
        cyc.from_terms([(0, tr[j + m * i], m) for i in range(k)]) for j in range(m)
    ]
    return EigenData(k, m, [group.fq.g_pow(j) for j in range(m)], lams)


# -- determinant engines ----------------------------------------------------

def bareiss_det(rows, divide):
    """Fraction-free elimination over an integral domain.

    divide(a, b) must return the exact quotient a / b.  The pivot is the
    first nonzero entry of the current column.
    """
    M = [list(r) for r in rows]
    n = len(M)
    sign = 1
    prev = None
    for k in range(n - 1):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return M[k][k] * 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        akk = M[k][k]
        for i in range(k + 1, n):
            aik = M[i][k]
            for j in range(k + 1, n):
                val = M[i][j] * akk - aik * M[k][j]
                M[i][j] = val if prev is None else divide(val, prev)
        prev = akk
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def det_exact(M: CycloMatrix) -> CycloElem:
    """Bareiss determinant over Q(zeta_N, zeta_p).

    Each elimination step divides by the previous pivot; its inverse is
    computed once per step.  When every entry is an algebraic integer, every
    quotient must be one too, and a failure raises ArithmeticError.
    """
    integral = all(x.is_integral() for r in M.rows for x in r)
    inverses = {}

    def divide(a, b):
        key = id(b)
        if key not in inverses:
            inverses.clear()
            inverses[key] = (b, b.inverse())
        quot = a * inverses[key][1]
        if integral and not quot.is_integral():
            raise ArithmeticError("Bareiss step produced a non-integral quotient")
        return quot

    return bareiss_det(M.rows, divide)


def det_cofactor(M) -> CycloElem:
    """Laplace expansion along the first row; exponential, for small oracles."""
    rows = M.rows if isinstance(M, CycloMatrix) else M

    def rec(rs):
        n = len(rs)
        if n == 1:
            return rs[0][0]
        total = None
        for j in range(n):
            if not rs[0][j]:
                continue
            minor = [r[:j] + r[j + 1:] for r in rs[1:]]
            term = rs[0][j] * rec(minor)
            if j % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else rs[0][0] * 0

    return rec([list(r) for r in rows])


def det_A_via_eigen(group: CharacterGroup, k: int) -> CycloElem:
    """det A_q(k) = sign(x -> -x on Z/m) * prod_b lambda_b."""
    data = eigenvalues(group, k)
    result = group.cyc.one()
    for lam in data.eigenvalues:
        result = result * lam
    return result * lerch_sign(-1, data.m)


def det_B_via_eigen(group: CharacterGroup, k: int) -> Fraction:
    """det B_q(k) = sign * prod_b (lambda_b + 1 - q) / q, an exact rational."""
    data = eigenvalues(group, k)
    q = group.q
    result = group.cyc.one()
    for lam in data.eigenvalues:
        factor = lam + (1 - q)
        if factor.is_zero():
            return Fraction(0)
        result = result * factor
    value = result.to_fraction() / Fraction(q) ** data.m
    return value * lerch_sign(-1, data.m)


def det_circulant(group: CharacterGroup, k: int, kind: str = "A", s: int = 1) -> CycloElem:
    """Determinant of A_q(k) or B_q(k), built from chi^s, by circulant diagonalisation.

    With f(r) the entry at i + j = r (mod m), the determinant is
    sign(x -> -x on Z/m) * prod_l sum_r f(r) w^(l r), w = zeta_{q-1}^k.
    Each sum is assembled directly from the Gauss-sum monomials.
    """
    m = _check_k(group, k)
    if kind not in ("A", "B"):
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    if math.gcd(s, group.N) != 1:
        raise ValueError(f"chi^{s} is not a generator")
    N, tr, q = group.N, group.traces, group.q
    cyc = group.cyc
    result = cyc.one()
    for l in range(m):
        terms = []
        for r in range(m):
            e = s * k * r % N
            shift = k * l * r
            if kind == "A":
                terms.extend(((e * j + shift), tr[j], 1) for j in range(N))
            elif e == 0:
                # q / G(trivial) = -q
                terms.append((shift, 0, -q))
            else:
                # q / G(psi) = psi(-1) G(psi^-1)
                c = group.minus_one(e)
                terms.extend(((-e * j + shift), tr[j], c) for j in range(N))
        mu = cyc.from_terms(terms, 1 if kind == "A" else q)
        if mu.is_zero():
            return cyc.zero()
        result = result * mu
    return result * lerch_sign(-1, m)


def det_direct(group: CharacterGroup, k: int, kind: str = "A", s: int = 1,
               method: str = "auto",
               bound: int = DEFAULT_CROSS_CHECK_BOUND) -> CycloElem:
    """Determinant of the matrix actually built from chi^s.

    "auto" uses elimination when m <= bound and the field is small, and the
    circulant route otherwise.
    """
    m = _check_k(group, k)
    if method == "auto":
        small = m <= bound and group.cyc.dim <= _ELIMINATION_DEGREE_LIMIT
        method = "bareiss" if small else "circulant"
    if method == "bareiss":
        M = build_A(group, k, s) if kind == "A" else build_B(group, k, s)
        return det_exact(M)
    if method == "circulant":
        return det_circulant(group, k, kind, s)
    raise ValueError(f"unknown method {method!r}")


# -- classical matrices ----------------------------------------------------

def build_carlitz(p: int, t: int) -> CycloMatrix:
    """[psi(i + j)] for 1 <= i, j <= p-1 with psi = chi^t on F_p."""
    group = character_group(p)
    if t % group.N == 0:
        raise ValueError("the character must be nontrivial")
    psi = group(t)
    return CycloMatrix(
        [[psi((i + j) % p) for j in range(1, p)] for i in range(1, p)]
    )


def carlitz_det_formula(p: int, t: int) -> CycloElem:
    """Closed form for det [psi(i + j)], psi nontrivial of order f."""
    group = character_group(p)
    psi = group(t)
    if psi.is_trivial():
        raise ValueError("the character must be nontrivial")
    sign = carlitz_sign(p, psi.order, group.minus_one(psi.t))
    return group.gauss_sum(psi.t) ** (p - 1) * Fraction(sign, p)


def _half_range(p):
    if p == 2 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    return range(1, (p - 1) // 2 + 1)


def build_legendre_V(p: int) -> list[list[int]]:
    """[((i + j - 1) / p)] for 1 <= i, j <= (p-1)/2."""
    h = _half_range(p)
    return [[legendre_symbol(i + j - 1, p) for j in h] for i in h]


def build_legendre_shift(p: int) -> list[list[int]]:
    """[((i + j) / p)] for 1 <= i, j <= (p-1)/2."""
    h = _half_range(p)
    return [[legendre_symbol(i + j, p) for j in h] for i in h]


def build_sun_S(p: int) -> list[list[int]]:
    """[((i^2 + j^2) / p)] for 1 <= i, j <= (p-1)/2."""
    h = _half_range(p)
    return [[legendre_symbol(i * i + j * j, p) for j in h] for i in h]


def _int_divide(a, b):
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact integer division in Bareiss step")
    return q


def integer_det(rows) -> int | Fraction:
    """Exact determinant of an integer or rational matrix."""
    rows = [list(r) for r in rows]
    if all(isinstance(x, int) for r in rows for x in r):
        return bareiss_det(rows, _int_divide)
    return bareiss_det([[Fraction(x) for x in r] for r in rows], lambda a, b: a / b)
