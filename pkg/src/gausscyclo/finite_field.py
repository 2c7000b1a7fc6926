"""Finite fields F_{p^n} with a deterministic modulus and generator.

Elements use the polynomial basis 1, t, ..., t^(n-1) modulo the chosen
irreducible polynomial.  Internally each element also has an integer code
sum(c_i * p^i), which keys the exponential and discrete-log tables.

The modulus is the lexicographically smallest monic irreducible of degree n
and the generator the smallest element of full multiplicative order, where
coefficient vectors are compared constant term first.  For n = 1 the modulus
is x itself and elements are plain residues.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import os
import tempfile
from functools import cached_property, lru_cache
from pathlib import Path

__all__ = [
    "MAX_ORDER",
    "FqCtx",
    "FqElem",
    "build_field",
    "field",
    "trace",
    "norm",
    "discrete_log",
    "order_mod",
    "is_prime",
    "factorize",
    "prime_power",
    "is_irreducible",
]

log = logging.getLogger(__name__)

MAX_ORDER = 2401
CACHE_FORMAT = 1
CACHE_ENV = "GAUSSCYCLO_CACHE_DIR"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for f in (2, 3, 5, 7):
        if n % f == 0:
            return n == f
    f = 11
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, n) with q = p^n, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    ((p, n),) = fac.items()
    return p, n


def order_mod(p: int, k: int) -> int:
    """Least f >= 1 with p^f = 1 (mod k)."""
    if k < 1:
        raise ValueError(f"modulus must be positive, got {k}")
    if math.gcd(p, k) != 1:
        raise ValueError(f"gcd({p}, {k}) != 1")
    if k == 1:
        return 1
    f, x = 1, p % k
    while x != 1:
        x = x * p % k
        f += 1
    return f


# -- polynomials over F_p, coefficient lists constant term first ------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for j in range(dm + 1):
            a[shift + j] = (a[shift + j] - c * m[j]) % p
        _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, p)


def _poly_powmod(a, e, m, p):
    result = _poly_mod([1], m, p)
    base = _poly_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, m, p)
    return result


def _poly_gcd(a, b, p):
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f, p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    f is irreducible of degree n iff x^(p^n) = x mod f and
    gcd(x^(p^d) - x, f) = 1 for every proper divisor d of n.
    """
    f = list(f)
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    frob = _poly_mod(x, f, p)
    powers = {}
    for d in range(1, n + 1):
        frob = _poly_powmod(frob, p, f, p)
        powers[d] = frob
    if _poly_sub(powers[n], _poly_mod(x, f, p), p):
        return False
    for d in range(1, n):
        if n % d == 0:
            g = _poly_gcd(_poly_sub(powers[d], x, p), f, p)
            if len(g) > 1:
                return False
    return True


class FqElem:
    """Element of F_q as a coefficient vector over Z/p."""

    __slots__ = ("ctx", "coeffs", "code")

    def __init__(self, ctx: FqCtx, coeffs):
        coeffs = tuple(c % ctx.p for c in coeffs)
        if len(coeffs) != ctx.n:
            raise ValueError(f"expected {ctx.n} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = coeffs
        code = 0
        for c in reversed(coeffs):
            code = code * ctx.p + c
        self.code = code

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self == self.ctx(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FqElem({list(self.coeffs)} in F_{self.ctx.q})"

    def _other(self, other):
        if isinstance(other, FqElem):
            if other.ctx is not self.ctx:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FqElem(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.ctx, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if not self.code or not other.code:
            return ctx.zero
        e = (ctx.log[self.code] + ctx.log[other.code]) % (ctx.q - 1)
        return ctx.from_code(ctx.exp[e])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        ctx = self.ctx
        if not self.code:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return ctx.one if e == 0 else ctx.zero
        return ctx.from_code(ctx.exp[ctx.log[self.code] * e % (ctx.q - 1)])

    def inverse(self) -> FqElem:
        return self ** -1

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_prime_subfield(self) -> bool:
        return not any(self.coeffs[1:])


class FqCtx:
    """F_{p^n} with fixed modulus, generator and full discrete-log table."""

    def __init__(self, p: int, n: int, modulus, generator, exp=None):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(modulus)
        if exp is None:
            exp = self._power_codes(generator)
        self.exp = tuple(exp)
        if len(self.exp) != self.q - 1:
            raise ValueError("exponential table has the wrong length")
        self.log = {c: j for j, c in enumerate(self.exp)}
        if len(self.log) != self.q - 1 or 0 in self.log:
            raise ValueError("generator does not have full order")
        self.generator = FqElem(self, generator)
        if self.exp[1 % (self.q - 1)] != self.generator.code and self.q > 2:
            raise ValueError("exponential table does not match generator")
        self.zero = FqElem(self, [0] * n)
        self.one = FqElem(self, [1] + [0] * (n - 1))

    def _power_codes(self, generator):
        codes = []
        cur = [1]
        gen = _trim(list(generator))
        for _ in range(self.q - 1):
            vec = cur + [0] * (self.n - len(cur))
            codes.append(self._encode(vec))
            cur = _poly_mulmod(cur, gen, self.modulus, self.p) or [0]
        return codes

    def _encode(self, coeffs):
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c % self.p
        return code

    def _decode(self, code):
        out = []
        for _ in range(self.n):
            code, c = divmod(code, self.p)
            out.append(c)
        return out

    def __repr__(self):
        return f"FqCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)})"

    def __call__(self, value) -> FqElem:
        """Element from an integer (prime-field embedding) or coefficient list."""
        if isinstance(value, FqElem):
            return value
        if isinstance(value, int):
            return FqElem(self, [value] + [0] * (self.n - 1))
        return FqElem(self, value)

    def from_code(self, code: int) -> FqElem:
        return FqElem(self, self._decode(code))

    def g_pow(self, e: int) -> FqElem:
        return self.from_code(self.exp[e % (self.q - 1)])

    def elements(self):
        """All elements, in constant-term-first lexicographic order."""
        for coeffs in itertools.product(range(self.p), repeat=self.n):
            yield FqElem(self, coeffs)

    def nonzero(self):
        for e in self.exp:
            yield self.from_code(e)

    @cached_property
    def trace_table(self) -> tuple[int, ...]:
        """Tr(g^j) for j = 0 .. q-2."""
        N, p, n = self.q - 1, self.p, self.n
        out = []
        for j in range(N):
            acc = [0] * n
            e = j
            for _ in range(n):
                vec = self._decode(self.exp[e])
                for i in range(n):
                    acc[i] += vec[i]
                e = e * p % N
            if any(c % p for c in acc[1:]):
                raise ArithmeticError("trace left the prime subfield")
            out.append(acc[0] % p)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "format": CACHE_FORMAT,
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus),
            "generator": list(self.generator.coeffs),
            "exp": list(self.exp),
        }

    @classmethod
    def from_json(cls, data: dict) -> FqCtx:
        if data.get("format") != CACHE_FORMAT:
            raise ValueError("unsupported cache format")
        p, n = int(data["p"]), int(data["n"])
        modulus = [int(c) for c in data["modulus"]]
        if len(modulus) != n + 1 or modulus[-1] != 1 or not is_irreducible(modulus, p):
            raise ValueError("cached modulus is invalid")
        ctx = cls(p, n, modulus, [int(c) for c in data["generator"]],
                  [int(c) for c in data["exp"]])
        # spot-check the table against the field multiplication
        g = _trim(list(ctx.generator.coeffs))
        step = max(1, (ctx.q - 1) // 17)
        for j in range(0, ctx.q - 2, step):
            cur = _trim(ctx._decode(ctx.exp[j]))
            nxt = _poly_mulmod(cur, g, ctx.modulus, p)
            if ctx._encode(nxt + [0] * (n - len(nxt))) != ctx.exp[j + 1]:
                raise ValueError("cached table is inconsistent")
        return ctx


def _has_full_order(coeffs, modulus, p, N, primes):
    a = _trim(list(coeffs))
    if not a:
        return False
    if _poly_powmod(a, N, modulus, p) != [1]:
        return False
    return all(_poly_powmod(a, N // ell, modulus, p) != [1] for ell in primes)


def build_field(p: int, n: int = 1, max_order: int = MAX_ORDER) -> FqCtx:
    """Construct F_{p^n} deterministically."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    q = p ** n
    if q > max_order:
        raise ValueError(f"q = {q} exceeds the configured bound {max_order}")
    for low in itertools.product(range(p), repeat=n):
        modulus = list(low) + [1]
        if is_irreducible(modulus, p):
            break
    N = q - 1
    primes = list(factorize(N)) if N > 1 else []
    for cand in itertools.product(range(p), repeat=n):
        if _has_full_order(cand, modulus, p, N, primes):
            return FqCtx(p, n, modulus, cand)
    raise ArithmeticError("no generator found")  # unreachable for a field


def _cache_path(cache_dir, p, n) -> Path:
    return Path(cache_dir) / f"fq-{p}-{n}-v{CACHE_FORMAT}.json"


def load_or_build(p: int, n: int = 1, cache_dir=None, max_order: int = MAX_ORDER) -> FqCtx:
    """Build F_{p^n}, going through an on-disk JSON cache when cache_dir is set.

    A corrupt or mismatched cache file is ignored and rewritten.
    """
    if cache_dir is None:
        return build_field(p, n, max_order)
    path = _cache_path(cache_dir, p, n)
    if path.exists():
        try:
            data = json.loads(path.read_text())
            if (data.get("p"), data.get("n")) == (p, n):
                return FqCtx.from_json(data)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("discarding corrupt field cache %s: %s", path, exc)
    ctx = build_field(p, n, max_order)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(ctx.to_json(), fh)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return ctx


@lru_cache(maxsize=None)
def field(q: int) -> FqCtx:
    """Cached F_q for a prime power q.

    Tables go through the on-disk cache when CACHE_ENV names a directory.
    """
    pn = prime_power(q)
    if pn is None:
        raise ValueError(f"{q} is not a prime power")
    return load_or_build(*pn, cache_dir=os.environ.get(CACHE_ENV) or None,
                         max_order=max(q, MAX_ORDER))


def trace(ctx: FqCtx, x: FqElem) -> int:
    """Absolute trace sum(x^(p^j)), as an integer in [0, p)."""
    acc = ctx.zero
    y = x
    for _ in range(ctx.n):
        acc = acc + y
        y = y ** ctx.p
    if not acc.is_prime_subfield():
        raise ArithmeticError("trace left the prime subfield")
    return acc.coeffs[0]


def norm(ctx: FqCtx, x: FqElem) -> int:
    """Absolute norm x^((q-1)/(p-1)), as an integer in [0, p)."""
    if not x:
        return 0
    y = x ** ((ctx.q - 1) // (ctx.p - 1))
    if not y.is_prime_subfield():
        raise ArithmeticError("norm left the prime subfield")
    return y.coeffs[0]


def discrete_log(ctx: FqCtx, x: FqElem) -> int:
    if not x:
        raise ValueError("discrete log of 0 is undefined")
    return ctx.log[x.code]
