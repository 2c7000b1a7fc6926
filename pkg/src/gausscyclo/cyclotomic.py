"""Exact arithmetic in the compositum Q(zeta_N, zeta_p) with gcd(N, p) = 1.

An element is stored as an integer coefficient vector plus a positive common
denominator.  Coordinates are taken in the basis zeta_N^u * zeta_p^v with
0 <= u < phi(N) and 0 <= v < p - 1, flattened row-major (index u*(p-1) + v).
Since the two cyclotomic fields are linearly disjoint this is a Q-basis of
the compositum, and an integral basis of its ring of integers.

Every operation returns a fully reduced element, so equality is structural.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "CycloCtx",
    "CycloElem",
    "cyclo_ctx",
    "cyclotomic_poly",
    "one_minus_zeta_product",
    "embed_complex",
    "invert",
]


def _poly_exact_div(num, den):
    """Divide integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    d = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            quot[i - d] = c
            for j in range(d + 1):
                num[i - d + j] -= c * den[j]
    if any(num[:d]):
        raise ArithmeticError("polynomial division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of the N-th cyclotomic polynomial, constant term first.

    Computed as (x^N - 1) divided by every Phi_d with d | N, d < N.

    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if N < 1:
        raise ValueError(f"cyclotomic index must be positive, got {N}")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_poly(d))
    return tuple(poly)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CycloCtx:
    """The field Q(zeta_N, zeta_p); immutable once built.

    Two contexts with the same (N, p) compare equal, so elements built from
    separately constructed contexts interoperate.
    """

    def __init__(self, N: int, p: int):
        if N < 1:
            raise ValueError(f"N must be positive, got {N}")
        if not _is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if math.gcd(N, p) != 1:
            raise ValueError(f"gcd(N, p) must be 1, got N={N}, p={p}")
        self.N = N
        self.p = p
        self.phiN = cyclotomic_poly(N)
        self.phiP = cyclotomic_poly(p)
        self.degN = len(self.phiN) - 1
        self.degP = p - 1
        self.dim = self.degN * self.degP
        # sparse reduced form of zeta_N^a, for every exponent a reduction can produce
        self._powers = self._power_table(max(N, 2 * self.degN - 1))
        self._basis_values = None

    def _power_table(self, count):
        d = self.degN
        low = self.phiN[:-1]
        vec = [1] + [0] * (d - 1)
        table = []
        for _ in range(count):
            table.append(tuple((u, c) for u, c in enumerate(vec) if c))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for u in range(d):
                    vec[u] -= top * low[u]
        return table

    def __eq__(self, other):
        return isinstance(other, CycloCtx) and (self.N, self.p) == (other.N, other.p)

    def __hash__(self):
        return hash((CycloCtx, self.N, self.p))

    def __repr__(self):
        return f"CycloCtx(N={self.N}, p={self.p})"

    # -- constructors -------------------------------------------------------

    def zero(self) -> CycloElem:
        return CycloElem(self, (0,) * self.dim, 1, _reduced=True)

    def one(self) -> CycloElem:
        return self.scalar(1)

    def scalar(self, c) -> CycloElem:
        c = Fraction(c)
        num = [0] * self.dim
        num[0] = c.numerator
        return CycloElem(self, tuple(num), c.denominator)

    def zeta_n(self, e: int = 1) -> CycloElem:
        return self.monomial(e, 0)

    def zeta_p(self, e: int = 1) -> CycloElem:
        return self.monomial(0, e)

    def monomial(self, a: int, b: int, c=1) -> CycloElem:
        """c * zeta_N^a * zeta_p^b for arbitrary integer exponents."""
        c = Fraction(c)
        return self.from_terms([(a, b, c.numerator)], c.denominator)

    def from_terms(self, terms, den: int = 1) -> CycloElem:
        """Reduce sum(c * zeta_N^a * zeta_p^b for a, b, c in terms) / den.

        Exponents may be any integers; coefficients must be integers.
        """
        N, p = self.N, self.p
        grid = [[0] * p for _ in range(N)]
        for a, b, c in terms:
            grid[a % N][b % p] += c
        return CycloElem(self, self._reduce_rows(grid), den)

    def from_coeffs(self, coeffs) -> CycloElem:
        """Build from a degN x (p-1) array of rationals in reduced coordinates."""
        flat = [Fraction(c) for row in coeffs for c in row]
        if len(coeffs) != self.degN or len(flat) != self.dim:
            raise ValueError("coefficient array has the wrong shape")
        den = math.lcm(*(c.denominator for c in flat)) if flat else 1
        return CycloElem(self, tuple(int(c * den) for c in flat), den)

    # -- reduction ----------------------------------------------------------

    def _reduce_rows(self, rows) -> tuple[int, ...]:
        """Reduce rows[u][v] (v < p, u < len(rows)) to flattened coordinates."""
        dP, dN = self.degP, self.degN
        out = [0] * self.dim
        powers = self._powers
        for u, row in enumerate(rows):
            last = row[dP]
            if last:
                row = [x - last for x in row[:dP]]
            elif not any(row):
                continue
            if u < dN:
                base = u * dP
                for v in range(dP):
                    if row[v]:
                        out[base + v] += row[v]
            else:
                for u2, c in powers[u]:
                    base = u2 * dP
                    for v in range(dP):
                        if row[v]:
                            out[base + v] += c * row[v]
        return tuple(out)

    def _mul_nums(self, a, b) -> tuple[int, ...]:
        """Product of two flattened integer coordinate vectors.

        Kronecker substitution: both operands are packed into single integers
        with B-bit slots, multiplied once, and unpacked with a bias that keeps
        every slot non-negative.
        """
        ma = max(map(abs, a))
        mb = max(map(abs, b))
        if not ma or not mb:
            return (0,) * self.dim
        dN, dP, p = self.degN, self.degP, self.p
        width = 2 * dP - 1
        terms = min(sum(1 for x in a if x), sum(1 for x in b if x))
        bits = ma.bit_length() + mb.bit_length() + terms.bit_length() + 2
        nb = bits // 8 + 1
        X = _pack(a, dN, dP, width, nb)
        Y = _pack(b, dN, dP, width, nb)
        Z = X * Y
        slots = (2 * dN - 1) * width
        half = 1 << (8 * nb - 1)
        offset = int.from_bytes((b"\x00" * (nb - 1) + b"\x80") * slots, "little")
        raw = (Z + offset).to_bytes(slots * nb, "little")
        rows = [[0] * p for _ in range(2 * dN - 1)]
        pos = 0
        for u in range(2 * dN - 1):
            row = rows[u]
            for v in range(width):
                val = int.from_bytes(raw[pos:pos + nb], "little") - half
                pos += nb
                if val:
                    row[v if v < p else v - p] += val
        return self._reduce_rows(rows)

    # -- embeddings ---------------------------------------------------------

    def basis_values(self):
        if self._basis_values is None:
            zn = [cmath.exp(2j * cmath.pi * u / self.N) for u in range(self.degN)]
            zp = [cmath.exp(2j * cmath.pi * v / self.p) for v in range(self.degP)]
            self._basis_values = [x * y for x in zn for y in zp]
        return self._basis_values

    def galois(self, elem: CycloElem, l: int, s: int) -> CycloElem:
        """Automorphism zeta_p -> zeta_p^l, zeta_N -> zeta_N^s."""
        if math.gcd(l, self.p) != 1 or math.gcd(s, self.N) != 1:
            raise ValueError("galois exponents must be units")
        return self.map_from(elem, s, l)

    def map_from(self, elem: CycloElem, n_mult: int, p_mult: int = 1) -> CycloElem:
        """Image of elem under zeta_{N'} -> zeta_N^n_mult, zeta_p -> zeta_p^p_mult.

        elem may live in another context Q(zeta_{N'}, zeta_p); the caller is
        responsible for choosing n_mult so that the map is well defined
        (N' * n_mult divisible by N).
        """
        src = elem.ctx
        if src.p != self.p:
            raise ValueError("contexts have different p")
        if (src.N * n_mult) % self.N:
            raise ValueError("root of unity orders are incompatible")
        dP = src.degP
        terms = [
            (u * n_mult, v * p_mult, c)
            for i, c in enumerate(elem.num) if c
            for u, v in [divmod(i, dP)]
        ]
        return self.from_terms(terms, elem.den)


def _pack(vec, dN, dP, width, nb):
    size = dN * width * nb
    pos = bytearray(size)
    neg = bytearray(size)
    for i, c in enumerate(vec):
        if c:
            u, v = divmod(i, dP)
            at = (u * width + v) * nb
            if c > 0:
                pos[at:at + nb] = c.to_bytes(nb, "little")
            else:
                neg[at:at + nb] = (-c).to_bytes(nb, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


@lru_cache(maxsize=None)
def cyclo_ctx(N: int, p: int) -> CycloCtx:
    """Shared, cached context for Q(zeta_N, zeta_p)."""
    return CycloCtx(N, p)


def _solve_rational(rows, rhs):
    """Solve an integer linear system exactly; fraction-free forward pass."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        rk = aug[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = aug[i]
            aik = ri[k]
            if aik:
                for j in range(k + 1, n + 1):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            else:
                for j in range(k + 1, n + 1):
                    ri[j] = (ri[j] * akk) // prev
            ri[k] = 0
        prev = akk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        ri = aug[i]
        s = Fraction(ri[n])
        for j in range(i + 1, n):
            if ri[j] and x[j]:
                s -= ri[j] * x[j]
        x[i] = s / ri[i]
    return x


class CycloElem:
    """Immutable element of Q(zeta_N, zeta_p)."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: CycloCtx, num, den: int = 1, _reduced: bool = False):
        if not _reduced:
            num = tuple(num)
            if len(num) != ctx.dim:
                raise ValueError("coordinate vector has the wrong length")
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                num = tuple(-c for c in num)
                den = -den
            g = math.gcd(den, *num)
            if g > 1:
                num = tuple(c // g for c in num)
                den //= g
        self.ctx = ctx
        self.num = num
        self.den = den

    # -- inspection ---------------------------------------------------------

    def coeff(self, u: int, v: int) -> Fraction:
        return Fraction(self.num[u * self.ctx.degP + v], self.den)

    @property
    def coeffs(self) -> list[list[Fraction]]:
        dP = self.ctx.degP
        return [
            [Fraction(self.num[u * dP + v], self.den) for v in range(dP)]
            for u in range(self.ctx.degN)
        ]

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_integral(self) -> bool:
        """True iff the element is an algebraic integer."""
        return self.den == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def to_int(self) -> int:
        f = self.to_fraction()
        if f.denominator != 1:
            raise ValueError(f"{f} is not an integer")
        return f.numerator

    def embed(self) -> complex:
        vals = self.ctx.basis_values()
        return sum(c * z for c, z in zip(self.num, vals) if c) / self.den

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.ctx != self.ctx:
                raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CycloElem(self.ctx, [a + b for a, b in zip(self.num, other.num)], self.den)
        d1, d2 = self.den, other.den
        return CycloElem(
            self.ctx, [a * d2 + b * d1 for a, b in zip(self.num, other.num)], d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.ctx, tuple(-c for c in self.num), self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloElem):
            f = Fraction(other)
            return CycloElem(
                self.ctx, [c * f.numerator for c in self.num], self.den * f.denominator
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        num = self.ctx._mul_nums(self.num, other.num)
        return CycloElem(self.ctx, num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> CycloElem:
        """Multiplicative inverse via the regular representation.

        Column j of the system is self * (j-th basis element); solving against
        the coordinates of 1 gives the inverse.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        ctx = self.ctx
        dP = ctx.degP
        nz = [(divmod(i, dP), c) for i, c in enumerate(self.num) if c]
        cols = []
        for j in range(ctx.dim):
            u0, v0 = divmod(j, dP)
            cols.append(ctx.from_terms([(u + u0, v + v0, c) for (u, v), c in nz]).num)
        rows = [list(r) for r in zip(*cols)]
        rhs = [0] * ctx.dim
        rhs[0] = 1
        x = _solve_rational(rows, rhs)
        den = math.lcm(*(f.denominator for f in x))
        num = [f.numerator * (den // f.denominator) * self.den for f in x]
        return CycloElem(ctx, num, den)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloElem):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = self.ctx.one()
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.ctx == other.ctx and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.num, self.den))

    def __repr__(self):
        if self.is_rational():
            return f"CycloElem({self.to_fraction()})"
        dP = self.ctx.degP
        parts = []
        for i, c in enumerate(self.num):
            if c:
                u, v = divmod(i, dP)
                parts.append(f"{c}*zN^{u}*zp^{v}")
        body = " + ".join(parts)
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"CycloElem[{self.ctx.N},{self.ctx.p}]({body})"


def invert(a: CycloElem) -> CycloElem:
    return a.inverse()


def embed_complex(a: CycloElem) -> complex:
    """Principal embedding zeta_M -> exp(2 pi i / M), in double precision."""
    return a.embed()


def one_minus_zeta_product(p: int, ctx: CycloCtx | None = None) -> CycloElem:
    """The exact product of (1 - zeta_p^b) over b = 1 .. p-1."""
    ctx = ctx or cyclo_ctx(1, p)
    if ctx.p != p:
        raise ValueError("context does not contain zeta_p")
    result = ctx.one()
    for b in range(1, p):
        result = result * (1 - ctx.zeta_p(b))
    return result
