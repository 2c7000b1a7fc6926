"""Command-line entry point: verification sweeps, determinant tables, k >= 3 data.

Exit status is 0 when every check passes, 1 on a failed check and 2 on a
usage error.  Data rows are byte-deterministic; the only timestamp is the
optional header comment of CSV/text output.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import os
import sys

from . import __version__
from .characters import character_group
from .finite_field import CACHE_ENV, MAX_ORDER, factorize, order_mod, prime_power
from .matrices import DEFAULT_CROSS_CHECK_BOUND, det_A_via_eigen, det_B_via_eigen, eigenvalues
from .verify import CLAIMS, CSV_HEADER, RunOptions, exact_str, run_claims

CLAIM_GROUPS = {
    "all": list(CLAIMS),
    "determinants": ["generic_det", "det_a1", "det_a2", "b_singularity", "det_b1", "det_b2"],
    "closed_forms": ["det_a1", "det_a2"],
    "background": ["carlitz", "chapman_vanishing", "chapman_reflection", "sun_residue",
                   "sun_square", "quadratic_sign", "one_minus_zeta", "stickelberger",
                   "hd_lifting", "hd_product", "lerch", "gamma", "gamma_reciprocal"],
    "structure": ["bareiss_oracle", "orthogonality", "eigen_relation", "conjugation",
                  "trace_kernel", "gauss_reflection", "galois_covariance"],
}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")


def resolve_qs(args) -> tuple[list[int], bool]:
    """Selected q values and whether they were listed explicitly."""
    if args.q is not None and args.q_max is not None:
        raise UsageError("--q and --q-max are mutually exclusive")
    if args.q is not None:
        qs, explicit = _int_list(args.q), True
    else:
        hi = args.q_max if args.q_max is not None else 13
        qs, explicit = [q for q in range(args.q_min, hi + 1) if prime_power(q)], False
    for q in qs:
        if q < 2 or prime_power(q) is None:
            raise UsageError(f"q = {q} is not a prime power")
        if q > args.max_order:
            raise UsageError(f"q = {q} exceeds the bound {args.max_order}")
    return sorted(set(qs)), explicit


def resolve_ks(args, qs, explicit) -> list[int] | None:
    if args.k in (None, "all"):
        return None
    ks = _int_list(args.k)
    if any(k < 1 for k in ks):
        raise UsageError("k must be positive")
    if explicit:
        for q in qs:
            for k in ks:
                if (q - 1) % k:
                    raise UsageError(f"k = {k} does not divide q - 1 = {q - 1}")
    return ks


def resolve_claims(text: str | None) -> list[str]:
    out: list[str] = []
    for name in (text or "all").split(","):
        name = name.strip()
        if name in CLAIM_GROUPS:
            out.extend(CLAIM_GROUPS[name])
        elif name in CLAIMS:
            out.append(name)
        elif name:
            raise UsageError(f"unknown claim {name!r}; known: "
                             + ", ".join(sorted(set(CLAIMS) | set(CLAIM_GROUPS))))
    return list(dict.fromkeys(out))


def pairs(qs, ks):
    for q in qs:
        for k in range(1, q):
            if (q - 1) % k == 0 and (ks is None or k in ks):
                yield q, k


# -- output -----------------------------------------------------------------

def header_line(args) -> str:
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return f"# gausscyclo {__version__} {args.command} generated {stamp}\n"


def render(args, config: dict, columns: list[str], rows: list[list[str]],
           records: list[dict]) -> str:
    if args.format == "json":
        doc = {"version": __version__, "config": config, "reports": records}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    if not args.no_header:
        buf.write(header_line(args))
    if args.format == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    else:
        widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c)
                  for i, c in enumerate(columns)]
        for line in [columns] + rows:
            buf.write("  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip() + "\n")
    return buf.getvalue()


def emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def config_echo(args, qs, ks, **more) -> dict:
    out = {
        "command": args.command,
        "q": [str(q) for q in qs],
        "k": "all" if ks is None else [str(k) for k in ks],
        "cross_check_bound": str(args.cross_check_bound),
        "jobs": str(args.jobs),
    }
    out.update(more)
    return out


# -- commands ---------------------------------------------------------------

def cmd_verify(args) -> int:
    qs, explicit = resolve_qs(args)
    ks = resolve_ks(args, qs, explicit)
    claims = resolve_claims(args.claims)
    opts = RunOptions(cross_check_bound=args.cross_check_bound, samples=args.samples,
                      m_max=args.m_max, gamma_max=args.gamma_max)
    reports = run_claims(qs, ks, claims, opts, jobs=args.jobs)
    config = config_echo(args, qs, ks, claims=claims)
    if args.format == "text":
        columns = ["status", "claim", "q", "k", "extra", "expected", "computed"]
        rows = [[r.status.upper(), r.claim, _s(r.q), _s(r.k),
                 json.dumps(r.extra, sort_keys=True), r.expected, r.computed]
                for r in reports]
    else:
        columns = CSV_HEADER + (["elapsed"] if args.timings else [])
        rows = [r.csv_row() + ([f"{r.elapsed:.6f}"] if args.timings else [])
                for r in reports]
    records = [r.to_dict(args.timings) for r in reports]
    emit(args, render(args, config, columns, rows, records))
    failed = [r for r in reports if not r.passed]
    summary = f"{len(reports)} checks, {len(failed)} failed"
    print(summary, file=sys.stderr)
    return 1 if failed else 0


def _s(x):
    return "" if x is None else str(x)


TABLE_COLUMNS = ["q", "p", "n", "k", "m", "det_A", "det_B", "singular", "o_k"]


def table_row(q: int, k: int) -> dict:
    G = character_group(q)
    p, n = prime_power(q)
    det_b = det_B_via_eigen(G, k)
    return {
        "q": str(q), "p": str(p), "n": str(n), "k": str(k), "m": str((q - 1) // k),
        "det_A": exact_str(det_A_via_eigen(G, k)),
        "det_B": exact_str(det_b),
        "singular": "true" if det_b == 0 else "false",
        "o_k": str(order_mod(p, k)),
    }


def cmd_table(args) -> int:
    qs, explicit = resolve_qs(args)
    ks = resolve_ks(args, qs, explicit)
    records = [table_row(q, k) for q, k in pairs(qs, ks)]
    rows = [[r[c] for c in TABLE_COLUMNS] for r in records]
    emit(args, render(args, config_echo(args, qs, ks), TABLE_COLUMNS, rows, records))
    return 0


EXPLORE_COLUMNS = ["q", "k", "m", "det_A", "sign", "factorization", "lambda_moduli"]


def format_factorization(value: int) -> str:
    if value == 0:
        return "0"
    parts = [f"{p}^{e}" if e > 1 else str(p)
             for p, e in sorted(factorize(abs(value)).items())]
    return "*".join(parts) or "1"


def explore_row(q: int, k: int) -> dict:
    G = character_group(q)
    det_a = det_A_via_eigen(G, k).to_int()
    moduli = sorted(abs(lam.embed()) for lam in eigenvalues(G, k).eigenvalues)
    return {
        "q": str(q), "k": str(k), "m": str((q - 1) // k),
        "det_A": str(det_a),
        "sign": str((det_a > 0) - (det_a < 0)),
        "factorization": format_factorization(det_a),
        "lambda_moduli": ";".join(f"{x:.12g}" for x in moduli),
    }


def cmd_explore(args) -> int:
    qs, explicit = resolve_qs(args)
    ks = resolve_ks(args, qs, explicit)
    records = [explore_row(q, k) for q, k in pairs(qs, ks) if k >= 3]
    rows = [[r[c] for c in EXPLORE_COLUMNS] for r in records]
    emit(args, render(args, config_echo(args, qs, ks), EXPLORE_COLUMNS, rows, records))
    return 0


# -- parser -----------------------------------------------------------------

def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausscyclo",
        description="Exact determinants of Gauss-sum matrices over finite fields.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", help="comma-separated prime powers")
    common.add_argument("--q-max", type=int, help="every prime power in [q-min, q-max]")
    common.add_argument("--q-min", type=int, default=3)
    common.add_argument("--k", help="comma-separated k values, or 'all' (default)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--cross-check-bound", type=_positive,
                        default=DEFAULT_CROSS_CHECK_BOUND,
                        help="largest m for which determinants are also eliminated directly")
    common.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV),
                        help=f"field table cache directory (env {CACHE_ENV})")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--max-order", type=_positive, default=MAX_ORDER)
    common.add_argument("--no-header", action="store_true",
                        help="omit the timestamped header comment")

    v = sub.add_parser("verify", parents=[common], help="run verification checks")
    v.add_argument("--claims", help="comma-separated claims or groups: "
                   + ", ".join(sorted(CLAIM_GROUPS)))
    v.add_argument("--samples", type=_positive, default=3,
                   help="generator replacements sampled per (q, k)")
    v.add_argument("--m-max", type=_positive, default=40)
    v.add_argument("--gamma-max", type=_positive, default=10)
    v.add_argument("--timings", action="store_true", help="include elapsed seconds")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", parents=[common], help="det A_q(k), det B_q(k) per (q, k)")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("explore", parents=[common], help="data on det A_q(k) for k >= 3")
    e.set_defaults(func=cmd_explore)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_dir:
        os.environ[CACHE_ENV] = args.cache_dir
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gausscyclo: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
