"""Multiplicative characters of F_q and exact Gauss sums.

The character group is generated by chi with chi(g) = zeta_{q-1}, where g is
the generator fixed by the field context.  A character chi^t is stored by
its exponent t mod q-1; every character vanishes at 0, the trivial one
included.

Reduction modulo a prime above p is realised concretely: the ring map
zeta_{q-1} -> g, zeta_p -> 1 + t lands in F_q[t]/(t^(p-1)), because
Phi_p(1 + t) = t^(p-1) over F_p.  Under this map chi is the Teichmueller
character of the prime it singles out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache

from .cyclotomic import CycloCtx, CycloElem, cyclo_ctx
from .finite_field import FqCtx, FqElem, field, discrete_log, norm

__all__ = [
    "CharacterGroup",
    "Character",
    "LocalElem",
    "CheckResult",
    "StickelbergerResult",
    "character_group",
    "char_eval",
    "gauss_sum",
    "gauss_sum_inverse",
    "jacobi_symbol",
    "legendre_symbol",
    "lerch_sign",
    "permutation_sign",
    "digit_stats",
    "to_local",
    "stickelberger_check",
    "hd_lifting_check",
    "hd_product_check",
]


class CharacterGroup:
    """Characters of F_q^x with values in Q(zeta_{q-1}, zeta_p).

    Gauss sums are cached per exponent; inserts are idempotent, so a shared
    group may be warmed from several threads.
    """

    def __init__(self, fq: FqCtx, cyc: CycloCtx | None = None):
        self.fq = fq
        self.q = fq.q
        self.p = fq.p
        self.N = fq.q - 1
        self.cyc = cyc or cyclo_ctx(self.N, fq.p)
        if (self.cyc.N, self.cyc.p) != (self.N, self.p):
            raise ValueError("cyclotomic context does not match the field")
        self._gauss: dict[int, CycloElem] = {}

    def __repr__(self):
        return f"CharacterGroup(q={self.q})"

    def __call__(self, t: int) -> Character:
        return Character(self, t % self.N)

    @property
    def chi(self) -> Character:
        return self(1)

    @cached_property
    def traces(self) -> tuple[int, ...]:
        return self.fq.trace_table

    def minus_one(self, t: int) -> int:
        """chi^t(-1) as an integer; -1 = g^((q-1)/2) for odd q."""
        if self.q % 2 == 0:
            return 1
        return -1 if t % 2 else 1

    def gauss_sum(self, t: int) -> CycloElem:
        t %= self.N
        g = self._gauss.get(t)
        if g is None:
            N, tr = self.N, self.traces
            g = self.cyc.from_terms((t * j % N, tr[j], 1) for j in range(N))
            self._gauss[t] = g
        return g

    def twisted_gauss_sum(self, t: int, l: int) -> CycloElem:
        """sum_a chi^t(a) zeta_p^(Tr(l a)) for an integer l."""
        N, tr = self.N, self.traces
        return self.cyc.from_terms((t * j % N, l * tr[j], 1) for j in range(N))

    def gauss_sum_inverse(self, t: int) -> CycloElem:
        """1 / G(chi^t) from the reflection G(psi) G(psi^-1) = psi(-1) q."""
        t %= self.N
        if t == 0:
            return -self.cyc.one()
        return self.gauss_sum(-t) * Fraction(self.minus_one(t), self.q)


@lru_cache(maxsize=None)
def character_group(q: int) -> CharacterGroup:
    """Cached character group of the deterministic F_q."""
    return CharacterGroup(field(q))


@dataclass(frozen=True)
class Character:
    group: CharacterGroup = dc_field(compare=False)
    t: int

    def __post_init__(self):
        object.__setattr__(self, "t", self.t % self.group.N)

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.group is other.group
            and self.t == other.t
        )

    def __hash__(self):
        return hash((id(self.group), self.t))

    @property
    def fq(self) -> FqCtx:
        return self.group.fq

    @property
    def cyc(self) -> CycloCtx:
        return self.group.cyc

    @property
    def order(self) -> int:
        N = self.group.N
        return N // math.gcd(self.t, N)

    def is_trivial(self) -> bool:
        return self.t == 0

    def __mul__(self, other: Character) -> Character:
        if other.group is not self.group:
            raise ValueError("characters of different groups")
        return self.group(self.t + other.t)

    def __pow__(self, e: int) -> Character:
        return self.group(self.t * e)

    def inverse(self) -> Character:
        return self.group(-self.t)

    def __call__(self, x) -> CycloElem:
        return char_eval(self, x)

    def exponent_at(self, x: FqElem) -> int:
        """e with chi^t(x) = zeta_{q-1}^e, for x != 0."""
        return self.t * discrete_log(self.fq, x) % self.group.N


def char_eval(ch: Character, x) -> CycloElem:
    x = ch.fq(x)
    if not x:
        return ch.cyc.zero()
    return ch.cyc.zeta_n(ch.exponent_at(x))


def gauss_sum(ch: Character) -> CycloElem:
    return ch.group.gauss_sum(ch.t)


def gauss_sum_inverse(ch: Character) -> CycloElem:
    return ch.group.gauss_sum_inverse(ch.t)


# -- symbols and signs ------------------------------------------------------

def jacobi_symbol(a: int, m: int) -> int:
    if m < 1 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def legendre_symbol(a: int, p: int) -> int:
    return jacobi_symbol(a, p)


def lerch_sign(a: int, m: int) -> int:
    """Sign of the permutation x -> a x of Z/m."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(a, m) != 1:
        raise ValueError(f"gcd({a}, {m}) != 1")
    if m % 2 == 1:
        return jacobi_symbol(a, m)
    if m % 4 == 2:
        return 1
    return -1 if ((a - 1) // 2) % 2 else 1


def permutation_sign(perm) -> int:
    """Sign of a permutation of range(len(perm)), by cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def digit_stats(r: int, p: int, n: int) -> tuple[int, int]:
    """Base-p digit sum s(r) and product of digit factorials t(r)."""
    if not 0 <= r <= p ** n - 2:
        raise ValueError(f"r = {r} outside [0, {p ** n - 2}]")
    s, t = 0, 1
    for _ in range(n):
        r, d = divmod(r, p)
        s += d
        t *= math.factorial(d)
    return s, t


# -- reduction modulo a prime above p --------------------------------------

@dataclass(frozen=True)
class LocalElem:
    """sum a_i t^i in F_q[t]/(t^(p-1))."""

    coeffs: tuple[FqElem, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return None

    def __repr__(self):
        terms = [f"{list(a.coeffs)}*t^{i}" for i, a in enumerate(self.coeffs) if a]
        return "LocalElem(" + (" + ".join(terms) or "0") + ")"


def to_local(e: CycloElem, fq: FqCtx) -> LocalElem:
    """Image of e under zeta_{q-1} -> g, zeta_p -> 1 + t, coefficients mod p."""
    ctx = e.ctx
    p, n = fq.p, fq.n
    if ctx.p != p or ctx.N != fq.q - 1:
        raise ValueError("element does not live in Q(zeta_{q-1}, zeta_p)")
    if e.den % p == 0:
        raise ValueError("denominator divisible by p")
    dinv = pow(e.den, -1, p)
    dP = ctx.degP
    # S_v = sum_u c_{u,v} g^u as coefficient vectors
    S = [[0] * n for _ in range(dP)]
    for i, c in enumerate(e.num):
        c %= p
        if c:
            u, v = divmod(i, dP)
            gu = fq.g_pow(u).coeffs
            row = S[v]
            for j in range(n):
                row[j] += c * gu[j]
    out = []
    for i in range(p - 1):
        acc = [0] * n
        for v in range(i, dP):
            b = math.comb(v, i) % p
            if b:
                for j in range(n):
                    acc[j] += b * S[v][j]
        out.append(FqElem(fq, [x * dinv for x in acc]))
    return LocalElem(tuple(out))


@dataclass
class StickelbergerResult:
    r: int
    s: int
    t: int
    mode: str  # "leading" or "vanishing"
    passed: bool
    local: LocalElem
    expected: FqElem | None = None


def stickelberger_check(group: CharacterGroup, r: int) -> StickelbergerResult:
    """Check G(chi^-r) / (zeta_p - 1)^s(r) = -1/t(r) modulo the prime.

    When s(r) <= p - 2 the image must be -t^s(r)/t(r) + higher terms; when
    s(r) >= p - 1 the image in F_q[t]/(t^(p-1)) must vanish.
    """
    fq = group.fq
    p = fq.p
    s, t = digit_stats(r, p, fq.n)
    local = to_local(group.gauss_sum(-r), fq)
    if s <= p - 2:
        lead = fq(-pow(t, -1, p))
        ok = all(not a for a in local.coeffs[:s]) and local.coeffs[s] == lead
        return StickelbergerResult(r, s, t, "leading", ok, local, lead)
    return StickelbergerResult(r, s, t, "vanishing", local.is_zero(), local)


# -- Hasse-Davenport identities ---------------------------------------------

@dataclass
class CheckResult:
    passed: bool
    lhs: CycloElem
    rhs: CycloElem


def hd_lifting_check(p: int, n: int, t: int) -> CheckResult:
    """G_q(psi o Norm) = (-1)^(n-1) G_p(psi)^n with psi = chi_p^t on F_p.

    The base Gauss sum is moved into Q(zeta_{q-1}, zeta_p) through
    zeta_{p-1} -> zeta_{q-1}^((q-1)/(p-1)).
    """
    base = character_group(p)
    big = character_group(p ** n)
    Np, N = base.N, big.N
    lift = N // Np
    # psi(Norm(g)) fixes the exponent of the lifted character
    norm_g = norm(big.fq, big.fq.generator)
    T = t * discrete_log(base.fq, base.fq(norm_g)) * lift
    lhs = big.gauss_sum(T)
    rhs = big.cyc.map_from(base.gauss_sum(t) ** n, lift) * (-1) ** (n - 1)
    return CheckResult(lhs == rhs, lhs, rhs)


def hd_product_check(group: CharacterGroup, m: int, t: int, a0: int) -> CheckResult:
    """prod_a G(psi rho^a) = -psi^-m(m) G(psi^m) prod_a G(rho^a), a < m.

    psi = chi^t and rho = chi^a0, which must have order exactly m.
    """
    N = group.N
    if group(a0).order != m:
        raise ValueError(f"chi^{a0} does not have order {m}")
    cyc = group.cyc
    lhs = cyc.one()
    rho_prod = cyc.one()
    for a in range(m):
        lhs = lhs * group.gauss_sum(t + a * a0)
        rho_prod = rho_prod * group.gauss_sum(a * a0)
    m_elem = group.fq(m)
    psi_m = -m * t * discrete_log(group.fq, m_elem) % N
    rhs = -(cyc.zeta_n(psi_m) * group.gauss_sum(m * t) * rho_prod)
    return CheckResult(lhs == rhs, lhs, rhs)
