"""Executable checks producing structured pass/fail reports.

Every check pairs a value computed by the exact matrix/character engine with
an expected value from :mod:`gausscyclo.closed_forms` (or from an identity
whose two sides are computed independently).  Reports carry exact values as
decimal strings so they serialise losslessly.
"""

from __future__ import annotations

import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import closed_forms as cf
from .characters import (
    character_group,
    hd_lifting_check,
    hd_product_check,
    lerch_sign,
    legendre_symbol,
    permutation_sign,
    stickelberger_check,
)
from .cyclotomic import CycloElem, one_minus_zeta_product
from .finite_field import is_prime, prime_power, order_mod
from .matrices import (
    DEFAULT_CROSS_CHECK_BOUND,
    _ELIMINATION_DEGREE_LIMIT,
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
    det_cofactor,
    det_direct,
    det_exact,
    eigenvalues,
    integer_det,
)

__all__ = [
    "VerificationReport",
    "RunOptions",
    "CLAIMS",
    "exact_str",
    "run_claims",
    "verify_background",
]

PASS, FAIL, INFO = "pass", "fail", "info"
EMBED_RTOL = 1e-9


def exact_str(value) -> str:
    """Lossless decimal rendering of an exact value."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, CycloElem):
        if value.is_rational():
            return exact_str(value.to_fraction())
        return json.dumps({"num": [str(c) for c in value.num], "den": str(value.den)})
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


@dataclass
class VerificationReport:
    claim: str
    q: int | None = None
    p: int | None = None
    n: int | None = None
    k: int | None = None
    extra: dict = field(default_factory=dict)
    expected: str = ""
    computed: str = ""
    status: str = PASS
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def sort_key(self):
        return (
            self.claim,
            self.q if self.q is not None else -1,
            self.p if self.p is not None else -1,
            self.n if self.n is not None else -1,
            self.k if self.k is not None else -1,
            json.dumps(self.extra, sort_keys=True),
        )

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "q": _opt(self.q),
            "p": _opt(self.p),
            "n": _opt(self.n),
            "k": _opt(self.k),
            "extra": self.extra,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
        }
        if timings:
            out["elapsed"] = f"{self.elapsed:.6f}"
        return out

    def csv_row(self) -> list[str]:
        return [self.claim, _opt(self.q), _opt(self.p), _opt(self.n), _opt(self.k),
                self.status, self.expected, self.computed]


CSV_HEADER = ["claim", "q", "p", "n", "k", "status", "expected", "computed"]


def _opt(x):
    return "" if x is None else str(x)


def _qparams(q):
    p, n = prime_power(q)
    return {"q": q, "p": p, "n": n}


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def sample_generators(N: int, count: int) -> list[int]:
    """Deterministic sample of exponents s > 1 coprime to N (all, if few)."""
    units = [s for s in range(2, N) if math.gcd(s, N) == 1]
    if len(units) <= count:
        return units
    return sorted(random.Random(N).sample(units, count))


@dataclass
class RunOptions:
    cross_check_bound: int = DEFAULT_CROSS_CHECK_BOUND
    samples: int = 3
    m_max: int = 40
    gamma_max: int = 10


# -- determinant theorems ---------------------------------------------------

def verify_generic_det(q: int, k: int, opts: RunOptions | None = None) -> VerificationReport:
    """det A_q(k) is an integer with the predicted residue mod p, and det A,
    det B do not depend on which generator of the character group is used."""
    opts = opts or RunOptions()
    G = character_group(q)
    p = G.p
    m = G.N // k
    with _Timer() as tm:
        bound = opts.cross_check_bound
        det_a = det_direct(G, k, "A", 1, bound=bound)
        det_b = det_direct(G, k, "B", 1, bound=bound)
        integral = det_a.is_rational() and det_a.to_fraction().denominator == 1
        b_rational = det_b.is_rational()
        residue = det_a.to_int() % p if integral else None
        gens = sample_generators(G.N, opts.samples)
        invariant = all(
            det_direct(G, k, "A", s, bound=bound) == det_a
            and det_direct(G, k, "B", s, bound=bound) == det_b
            for s in gens
        )
    expected = cf.generic_det_residue(m, p)
    ok = integral and b_rational and invariant and residue == expected
    return VerificationReport(
        "generic_det", k=k, **_qparams(q),
        extra={"m": m, "det_a": exact_str(det_a), "det_b": exact_str(det_b),
               "integral": integral, "b_rational": b_rational,
               "generators": gens, "invariant": invariant},
        expected=str(expected), computed=_opt(residue),
        status=_status(ok), elapsed=tm.elapsed,
    )


def verify_det_a1(q: int, opts=None) -> VerificationReport:
    G = character_group(q)
    with _Timer() as tm:
        computed = det_A_via_eigen(G, 1).to_int()
    expected = cf.det_a1(q)
    # q = 2 lies outside the range where the formula is claimed
    status = INFO if q == 2 else _status(computed == expected)
    return VerificationReport("det_a1", k=1, **_qparams(q), expected=str(expected),
                              computed=str(computed), status=status, elapsed=tm.elapsed)


def verify_det_a2(q: int, opts=None) -> VerificationReport:
    G = character_group(q)
    with _Timer() as tm:
        computed = det_A_via_eigen(G, 2).to_int()
    expected = cf.det_a2(q)
    return VerificationReport("det_a2", k=2, **_qparams(q), expected=str(expected),
                              computed=str(computed), status=_status(computed == expected),
                              elapsed=tm.elapsed)


def verify_b_singularity(q: int, k: int, opts=None) -> VerificationReport:
    G = character_group(q)
    with _Timer() as tm:
        det_b = det_B_via_eigen(G, k)
    expected = cf.b_nonsingular(q, k)
    computed = det_b != 0
    label = {True: "nonsingular", False: "singular"}
    return VerificationReport(
        "b_singularity", k=k, **_qparams(q),
        extra={"det_b": exact_str(det_b), "order": order_mod(G.p, k)},
        expected=label[expected], computed=label[computed],
        status=_status(expected == computed), elapsed=tm.elapsed,
    )


def verify_det_b1(p: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        computed = det_B_via_eigen(character_group(p), 1)
    expected = cf.det_b1(p)
    return VerificationReport("det_b1", k=1, **_qparams(p), expected=exact_str(expected),
                              computed=exact_str(computed),
                              status=_status(computed == expected), elapsed=tm.elapsed)


def verify_det_b2(p: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        computed = det_B_via_eigen(character_group(p), 2)
    expected = cf.det_b2(p)
    # the closed form is checked as stated; the re-derived sign is recorded
    extra = {"rederived": exact_str(cf.det_b2_rederived(p))}
    return VerificationReport("det_b2", k=2, **_qparams(p), extra=extra,
                              expected=exact_str(expected),
                              computed=exact_str(computed),
                              status=_status(computed == expected), elapsed=tm.elapsed)


def elimination_feasible(q: int, k: int, bound: int) -> bool:
    G = character_group(q)
    return G.N // k <= bound and G.cyc.dim <= _ELIMINATION_DEGREE_LIMIT


def verify_bareiss_oracle(q: int, k: int, opts: RunOptions | None = None) -> list[VerificationReport]:
    """Elimination against the eigenvalue product (and cofactors when m <= 4)."""
    opts = opts or RunOptions()
    if not elimination_feasible(q, k, opts.cross_check_bound):
        return []
    G = character_group(q)
    m = G.N // k
    with _Timer() as tm:
        A = build_A(G, k)
        bareiss_a = det_exact(A)
        eigen_a = det_A_via_eigen(G, k)
        bareiss_b = det_exact(build_B(G, k))
        eigen_b = det_B_via_eigen(G, k)
        ok = bareiss_a == eigen_a and bareiss_b == eigen_b
        extra = {"m": m, "det_b_bareiss": exact_str(bareiss_b), "det_b_eigen": exact_str(eigen_b)}
        if m <= 4:
            cof = det_cofactor(A)
            extra["det_a_cofactor"] = exact_str(cof)
            ok = ok and cof == bareiss_a
    return [VerificationReport("bareiss_oracle", k=k, **_qparams(q), extra=extra,
                               expected=exact_str(eigen_a), computed=exact_str(bareiss_a),
                               status=_status(ok), elapsed=tm.elapsed)]


# -- structural lemmas ------------------------------------------------------

def verify_orthogonality(q: int, k: int, opts=None) -> VerificationReport:
    """sum_{r<m} chi^(k r)(x) is m on U_k and 0 elsewhere, for every x."""
    G = character_group(q)
    m = G.N // k
    bad = None
    with _Timer() as tm:
        for x in G.fq.elements():
            total = G.cyc.zero()
            for r in range(m):
                total = total + G(k * r)(x)
            want = m if x and x ** k == G.fq.one else 0
            if total != want:
                bad = list(x.coeffs)
                break
    return VerificationReport("orthogonality", k=k, **_qparams(q),
                              extra={"witness": bad} if bad else {},
                              expected="m on U_k, else 0",
                              computed="ok" if bad is None else "mismatch",
                              status=_status(bad is None), elapsed=tm.elapsed)


def verify_eigen_relation(q: int, k: int, opts: RunOptions | None = None) -> list[VerificationReport]:
    """C v_b = lambda_b v_b for every coset representative, and lambda_b is
    constant on each coset."""
    opts = opts or RunOptions()
    G = character_group(q)
    m = G.N // k
    if m > opts.cross_check_bound:
        return []
    with _Timer() as tm:
        C = build_C(G, k)
        data = eigenvalues(G, k)
        ok = True
        for j, lam in enumerate(data.eigenvalues):
            v = [G.cyc.zeta_n(k * r * j) for r in range(m)]
            if C.mul_vector(v) != [lam * x for x in v]:
                ok = False
            # lambda at another representative b * u of the same coset
            tr = G.traces
            shifted = G.cyc.from_terms([(0, tr[(j + m * i + m) % G.N], m) for i in range(k)])
            if shifted != lam:
                ok = False
    return [VerificationReport("eigen_relation", k=k, **_qparams(q), extra={"m": m},
                               expected="C v_b = lambda_b v_b",
                               computed="ok" if ok else "mismatch",
                               status=_status(ok), elapsed=tm.elapsed)]


def verify_conjugation(q: int, k: int, opts=None) -> VerificationReport:
    """P^-1 C P = D, and for odd q the inverse-entry matrix equals
    (1-q)/q I + D/q."""
    G = character_group(q)
    m = G.N // k
    with _Timer() as tm:
        C, D = build_C(G, k), build_D(G, k)
        signs = [(-1) ** (k * i) for i in range(m)]
        ok = all(C[i, j] * (signs[i] * signs[j]) == D[i, j]
                 for i in range(m) for j in range(m))
        if q % 2:
            # entry (i, j) inverts G(chi^(k(j-i))) and depends on j - i only;
            # multiplying back to 1 avoids relying on any inversion formula
            for d in range(m):
                rhs = D[0, d] * Fraction(1, q) + (Fraction(1 - q, q) if d == 0 else 0)
                ok = ok and G.gauss_sum(k * d) * rhs == 1
    return VerificationReport("conjugation", k=k, **_qparams(q),
                              expected="P^-1 C P = D", computed="ok" if ok else "mismatch",
                              status=_status(ok), elapsed=tm.elapsed)


def verify_trace_kernel(q: int, opts=None) -> VerificationReport:
    """Tr is onto F_p, its kernel has p^(n-1) elements and equals {x^p - x}."""
    G = character_group(q)
    fq, p, n = G.fq, G.p, G.fq.n
    with _Timer() as tm:
        traces = [0] + list(fq.trace_table)
        counts = [traces.count(c) for c in range(p)]
        kernel = {0} | {fq.exp[j] for j in range(G.N) if fq.trace_table[j] == 0}
        artin = {(x ** p - x).code for x in fq.elements()}
    ok = counts == [p ** (n - 1)] * p and kernel == artin
    return VerificationReport("trace_kernel", **_qparams(q),
                              expected=str(p ** (n - 1)), computed=str(counts[0]),
                              extra={"fibres": counts}, status=_status(ok),
                              elapsed=tm.elapsed)


def verify_gauss_reflection(q: int, opts=None) -> VerificationReport:
    """G(psi) G(psi^-1) = psi(-1) q exactly and |G(psi)| = sqrt(q) numerically,
    for every nontrivial psi."""
    G = character_group(q)
    worst = 0.0
    bad = []
    with _Timer() as tm:
        for t in range(1, G.N):
            g = G.gauss_sum(t)
            if g * G.gauss_sum(-t) != G.minus_one(t) * q:
                bad.append(t)
            worst = max(worst, abs(abs(g.embed()) - math.sqrt(q)) / math.sqrt(q))
    ok = not bad and worst <= EMBED_RTOL
    return VerificationReport("gauss_reflection", **_qparams(q),
                              extra={"max_rel_modulus_error": f"{worst:.3e}", "failures": bad},
                              expected=str(q), computed=str(q) if not bad else "mismatch",
                              status=_status(ok), elapsed=tm.elapsed)


def verify_galois_covariance(q: int, opts=None, samples: int = 4) -> VerificationReport:
    """sum_a psi^s(a) zeta_p^Tr(l a) = psi^-s(l) G(psi^s) for sampled (t, l, s)."""
    G = character_group(q)
    rng = random.Random(q)
    units = [s for s in range(1, G.N + 1) if math.gcd(s, G.N) == 1]
    bad = []
    with _Timer() as tm:
        for _ in range(samples):
            t = rng.randrange(G.N)
            l = rng.randrange(1, G.p) if G.p > 2 else 1
            s = rng.choice(units)
            direct = G.twisted_gauss_sum(s * t, l)
            via = G(-s * t)(l) * G.gauss_sum(s * t)
            conj = G.cyc.galois(G.gauss_sum(t), l, s)
            if not direct == via == conj:
                bad.append([t, l, s])
    return VerificationReport("galois_covariance", **_qparams(q), extra={"failures": bad},
                              expected="equal", computed="equal" if not bad else "mismatch",
                              status=_status(not bad), elapsed=tm.elapsed)


def verify_stickelberger(q: int, opts=None) -> list[VerificationReport]:
    G = character_group(q)
    out = []
    for r in range(G.N):
        with _Timer() as tm:
            res = stickelberger_check(G, r)
        expected = list(res.expected.coeffs) if res.expected is not None else 0
        lead = res.local.coeffs[res.s] if res.mode == "leading" else None
        out.append(VerificationReport(
            "stickelberger", **_qparams(q),
            extra={"r": r, "s": res.s, "t": res.t, "mode": res.mode},
            expected=str(expected),
            computed=str(list(lead.coeffs)) if lead is not None else
            ("0" if res.local.is_zero() else repr(res.local)),
            status=_status(res.passed), elapsed=tm.elapsed,
        ))
    return out


def verify_hd_lifting(q: int, opts=None) -> list[VerificationReport]:
    p, n = prime_power(q)
    out = []
    for t in range(max(p - 1, 1)):
        with _Timer() as tm:
            res = hd_lifting_check(p, n, t)
        out.append(VerificationReport("hd_lifting", **_qparams(q), extra={"t": t},
                                      expected=exact_str(res.rhs), computed=exact_str(res.lhs),
                                      status=_status(res.passed), elapsed=tm.elapsed))
    return out


def verify_hd_product(q: int, opts=None) -> list[VerificationReport]:
    G = character_group(q)
    N = G.N
    out = []
    for m in (d for d in range(1, N + 1) if N % d == 0):
        checked, bad = 0, None
        with _Timer() as tm:
            twists = [a for a in range(N) if G(a).order == m]
            # beyond small fields one twist of each order is enough
            # both sides are unchanged under psi -> psi rho, so beyond small
            # fields one twist and one psi per coset of <rho> cover everything
            small = N <= 16
            for a0 in (twists if small else twists[:1]):
                for t in range(N if small else N // m):
                    checked += 1
                    if bad is None and not hd_product_check(G, m, t, a0).passed:
                        bad = [t, a0]
        out.append(VerificationReport("hd_product", **_qparams(q),
                                      extra={"m": m, "checked": checked, "witness": bad},
                                      expected="equal", computed="equal" if bad is None else "mismatch",
                                      status=_status(bad is None), elapsed=tm.elapsed))
    return out


def verify_quadratic_sign(q: int, opts=None) -> VerificationReport:
    """G_q(phi) for the quadratic character: exact square, exact lifting from
    F_p, and the numeric branch of the classical closed form."""
    p, n = prime_power(q)
    G = character_group(q)
    with _Timer() as tm:
        g = G.gauss_sum(G.N // 2)
        square_ok = g * g == G.minus_one(G.N // 2) * q
        lift_ok = hd_lifting_check(p, n, (p - 1) // 2).passed
        value = g.embed()
        want = cf.quadratic_gauss_value(q)
        err = abs(value - want) / math.sqrt(q)
    ok = square_ok and lift_ok and err <= EMBED_RTOL
    return VerificationReport("quadratic_sign", **_qparams(q),
                              extra={"square": square_ok, "lifting": lift_ok,
                                     "rel_error": f"{err:.3e}"},
                              expected=_complex_str(want), computed=_complex_str(value),
                              status=_status(ok), elapsed=tm.elapsed)


def _complex_str(z: complex) -> str:
    return f"{z.real:.12f}{z.imag:+.12f}i"


def verify_one_minus_zeta(p: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        val = one_minus_zeta_product(p)
    return VerificationReport("one_minus_zeta", **_qparams(p), expected=str(p),
                              computed=exact_str(val), status=_status(val == p),
                              elapsed=tm.elapsed)


# -- classical matrices -----------------------------------------------------

def verify_carlitz(p: int, opts: RunOptions | None = None) -> list[VerificationReport]:
    opts = opts or RunOptions()
    # elimination only, so the same size bound as the other direct checks
    if p - 1 > opts.cross_check_bound:
        return []
    G = character_group(p)
    out = []
    for t in range(1, G.N):
        with _Timer() as tm:
            computed = det_exact(build_carlitz(p, t))
            expected = carlitz_det_formula(p, t)
        out.append(VerificationReport("carlitz", **_qparams(p),
                                      extra={"t": t, "order": G(t).order},
                                      expected=exact_str(expected), computed=exact_str(computed),
                                      status=_status(computed == expected), elapsed=tm.elapsed))
    return out


def verify_chapman_vanishing(p: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        d = integer_det(build_legendre_V(p))
    return VerificationReport("chapman_vanishing", **_qparams(p), expected="0",
                              computed=str(d), status=_status(d == 0), elapsed=tm.elapsed)


def verify_chapman_reflection(p: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        d = integer_det(build_legendre_V(p))
        e = legendre_symbol(-1, p) * integer_det(build_legendre_shift(p))
    return VerificationReport("chapman_reflection", **_qparams(p), expected=str(e),
                              computed=str(d), status=_status(d == e), elapsed=tm.elapsed)


def verify_sun_residue(p: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        d = integer_det(build_sun_S(p))
    ok = cf.is_nonzero_square_mod(-d, p)
    return VerificationReport("sun_residue", **_qparams(p), extra={"det": str(d)},
                              expected="nonzero square mod p", computed=str(-d % p),
                              status=_status(ok), elapsed=tm.elapsed)


def verify_sun_square(p: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        d = integer_det(build_sun_S(p))
    if p % 4 == 3:
        ok = cf.is_square(-d)
        extra = {"det": str(d)}
        expected = "-det is a perfect square"
    else:
        a = cf.sun_a(p)
        ok = d % a == 0 and cf.is_square(d // a)
        extra = {"det": str(d), "a": a}
        expected = "det/a is a perfect square"
    return VerificationReport("sun_square", **_qparams(p), extra=extra, expected=expected,
                              computed=str(d), status=_status(ok), elapsed=tm.elapsed)


def verify_lerch(m: int, opts=None) -> VerificationReport:
    bad = []
    with _Timer() as tm:
        for a in range(m if m > 1 else 1):
            if math.gcd(a, m) != 1:
                continue
            brute = permutation_sign([a * x % m for x in range(m)])
            if lerch_sign(a, m) != brute:
                bad.append(a)
        minus = cf.lerch_minus_one(m)
        brute_minus = permutation_sign([-x % m for x in range(m)])
    ok = not bad and minus == brute_minus == lerch_sign(-1, m)
    return VerificationReport("lerch", extra={"m": m, "failures": bad},
                              expected=str(minus), computed=str(brute_minus),
                              status=_status(ok), elapsed=tm.elapsed)


def _factorial_matrix(n, reciprocal):
    if reciprocal:
        return [[Fraction(1, math.factorial(i + j - 1)) for j in range(1, n + 1)]
                for i in range(1, n + 1)]
    return [[math.factorial(i + j - 1) for j in range(1, n + 1)] for i in range(1, n + 1)]


def verify_gamma(n: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        d = integer_det(_factorial_matrix(n, False))
    e = cf.gamma_det(n)
    return VerificationReport("gamma", extra={"size": n}, expected=str(e), computed=str(d),
                              status=_status(d == e), elapsed=tm.elapsed)


def verify_gamma_reciprocal(n: int, opts=None) -> VerificationReport:
    with _Timer() as tm:
        d = integer_det(_factorial_matrix(n, True))
    e = cf.gamma_reciprocal_det(n)
    return VerificationReport("gamma_reciprocal", extra={"size": n}, expected=exact_str(e),
                              computed=exact_str(d), status=_status(d == e), elapsed=tm.elapsed)


# -- registry and orchestration ---------------------------------------------

def _odd(q):
    return q % 2 == 1


def _prime(q):
    return is_prime(q)


def _odd_prime(q):
    return is_prime(q) and q > 2


# claim -> (scope, applicability filter on q, function)
CLAIMS = {
    "generic_det": ("qk", None, verify_generic_det),
    "det_a1": ("q", lambda q: q >= 2, verify_det_a1),
    "det_a2": ("q", _odd, verify_det_a2),
    "b_singularity": ("qk", None, verify_b_singularity),
    "det_b1": ("q", _prime, verify_det_b1),
    "det_b2": ("q", _odd_prime, verify_det_b2),
    "bareiss_oracle": ("qk", None, verify_bareiss_oracle),
    "orthogonality": ("qk", None, verify_orthogonality),
    "eigen_relation": ("qk", None, verify_eigen_relation),
    "conjugation": ("qk", None, verify_conjugation),
    "trace_kernel": ("q", None, verify_trace_kernel),
    "gauss_reflection": ("q", None, verify_gauss_reflection),
    "galois_covariance": ("q", None, verify_galois_covariance),
    "stickelberger": ("q", None, verify_stickelberger),
    "hd_lifting": ("q", None, verify_hd_lifting),
    "hd_product": ("q", None, verify_hd_product),
    "quadratic_sign": ("q", _odd, verify_quadratic_sign),
    "one_minus_zeta": ("q", _prime, verify_one_minus_zeta),
    "carlitz": ("q", _odd_prime, verify_carlitz),
    "chapman_vanishing": ("q", lambda q: is_prime(q) and q % 4 == 3 and q >= 7,
                          verify_chapman_vanishing),
    "chapman_reflection": ("q", _odd_prime, verify_chapman_reflection),
    "sun_residue": ("q", _odd_prime, verify_sun_residue),
    "sun_square": ("q", _odd_prime, verify_sun_square),
    "lerch": ("m", None, verify_lerch),
    "gamma": ("gamma", None, verify_gamma),
    "gamma_reciprocal": ("gamma", None, verify_gamma_reciprocal),
}


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def expand_jobs(qs, ks, claims, opts: RunOptions):
    """List of (claim, args) jobs; ks=None means every divisor of q - 1."""
    jobs = []
    for claim in claims:
        scope, applies, _ = CLAIMS[claim]
        if scope == "m":
            jobs.extend((claim, (m,)) for m in range(1, opts.m_max + 1))
        elif scope == "gamma":
            jobs.extend((claim, (n,)) for n in range(1, opts.gamma_max + 1))
        else:
            for q in qs:
                if applies is not None and not applies(q):
                    continue
                if scope == "q":
                    jobs.append((claim, (q,)))
                else:
                    for k in (divisors(q - 1) if ks is None else ks):
                        if (q - 1) % k == 0:
                            jobs.append((claim, (q, k)))
    return jobs


def run_job(job, opts: RunOptions) -> list[VerificationReport]:
    claim, args = job
    result = CLAIMS[claim][2](*args, opts)
    return result if isinstance(result, list) else [result]


def _run_job_star(packed):
    return run_job(*packed)


def run_claims(qs, ks=None, claims=None, opts: RunOptions | None = None,
               jobs: int = 1) -> list[VerificationReport]:
    """Run the selected claims and return reports sorted deterministically."""
    opts = opts or RunOptions()
    claims = list(CLAIMS) if claims is None else list(claims)
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        raise ValueError(f"unknown claims: {', '.join(unknown)}")
    work = expand_jobs(qs, ks, claims, opts)
    reports: list[VerificationReport] = []
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for batch in pool.map(_run_job_star, [(job, opts) for job in work]):
                reports.extend(batch)
    else:
        for job in work:
            reports.extend(run_job(job, opts))
    reports.sort(key=VerificationReport.sort_key)
    return reports


def verify_background(primes=(3, 5, 7, 11, 13), prime_powers=(4, 5, 7, 8, 9, 13),
                      opts: RunOptions | None = None) -> list[VerificationReport]:
    """The classical identities the determinant results build on."""
    opts = opts or RunOptions()
    background = ["carlitz", "chapman_vanishing", "chapman_reflection", "sun_residue",
                  "sun_square", "quadratic_sign", "one_minus_zeta"]
    structural = ["stickelberger", "hd_lifting", "hd_product", "gauss_reflection",
                  "trace_kernel", "galois_covariance"]
    reports = run_claims(primes, claims=background, opts=opts)
    reports += run_claims(prime_powers, claims=structural, opts=opts)
    reports += run_claims([], claims=["lerch", "gamma", "gamma_reciprocal"], opts=opts)
    reports.sort(key=VerificationReport.sort_key)
    return reports
