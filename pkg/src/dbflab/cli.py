"""The ``dbf`` command line.

Exit codes: 0 ok, 1 a conjecture or formula mismatch was found, 2 usage or
data error, 3 a resource bound was exceeded.  Diagnostics go to stderr as one
line ``dbf: <CODE>: <message>``.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    cache_dir: str | None = None
    max_n: int = 4
    jobs: int = 1
    fmt: str = "text"

    def __post_init__(self):
        if self.max_n < 1 or self.jobs < 1:
            raise ValueError("max_n and jobs must be positive")
        if self.fmt not in ("text", "machine"):
            raise ValueError(f"unknown format {self.fmt!r}")

    def apply(self) -> None:
        # environment, so that worker processes see the same cache
        if self.cache_dir:
            os.environ["DBFLAB_CACHE"] = self.cache_dir


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"dbf: E_USAGE: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dbf", description="Verification lab for diagonal boson-fermion coinvariants.")
    ap.add_argument("--cache-dir", help="cache directory (default $DBFLAB_CACHE or ~/.cache/dbflab)")
    ap.add_argument("--format", dest="fmt", choices=("text", "machine"), default="text")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("en", help="print the generic characteristic E_n")
    p.add_argument("--n", type=_pos, required=True)

    p = sub.add_parser("eval", help="evaluate the universal formula at (k, j)")
    p.add_argument("--n", type=_pos, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--ones", action="store_true", help="set every letter to 1")

    p = sub.add_parser("oracle", help="Frobenius characteristic of the quotient by linear algebra")
    p.add_argument("--n", type=_pos, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--max-n", type=_pos, default=4)
    p.add_argument("--modular", action="store_true", help="work modulo a large prime (numba kernels)")
    p.add_argument("--check-prime", action="store_true", help="with --modular, repeat modulo a second prime")

    p = sub.add_parser("verify", help="run a named check")
    p.add_argument("check", choices=("main", "skew", "zabrocki", "kimrhoades", "k1j1", "k1j2", "k2j2",
                                     "lowdeg", "tables", "all"))
    p.add_argument("--n", type=_pos, required=True)
    p.add_argument("--k", type=_nonneg)
    p.add_argument("--j", type=_nonneg)
    p.add_argument("--jobs", type=_pos, default=1)

    p = sub.add_parser("table", help="print a grid of dimensions or sign multiplicities")
    p.add_argument("which", choices=("dims", "alt"))
    p.add_argument("--nmax", type=_pos, required=True)
    p.add_argument("--nmin", type=_pos, default=1)
    p.add_argument("--kmax", type=_nonneg, required=True)
    p.add_argument("--jmax", type=_nonneg, required=True)

    p = sub.add_parser("cache", help="inspect the cache")
    p.add_argument("action", choices=("list", "verify", "clear"))
    return ap


def _cmd_en(args, out) -> int:
    from .data import PROVENANCE, generic_E, store_E

    E = generic_E(args.n)
    from . import cache

    if cache.enabled():
        store_E(args.n, E)
    if args.fmt == "text":
        print(f"# E_{args.n}: {PROVENANCE.get(args.n, '')}", file=out)
    print(E.format_pairs(), file=out)
    return EXIT_OK


def _cmd_eval(args, out) -> int:
    from .data import generic_E
    from .formulas import eval_main_conjecture
    from .symfunc import format_symfunc

    E = generic_E(args.n)
    f = eval_main_conjecture(E, args.k, args.j, "ones" if args.ones else "symbolic")
    print(format_symfunc(f), file=out)
    return EXIT_OK


def _cmd_oracle(args, out) -> int:
    from .oracle import PRIME, CHECK_PRIME, coinvariant_frobenius

    modular = args.modular or args.check_prime
    rep = coinvariant_frobenius(args.k, args.j, args.n, p=PRIME if modular else 0,
                                check_prime=CHECK_PRIME if args.check_prime else None, max_n=args.max_n)
    print(rep.to_text(), file=out)
    if args.fmt == "text":
        print(f"# total dimension {rep.total_dimension()}", file=out)
    return EXIT_OK


def _verify_jobs(args) -> list[tuple[str, dict]]:
    from .verify import all_jobs

    n = args.n
    if args.check == "all":
        return all_jobs(n)
    if args.check == "main":
        if args.k is None or args.j is None:
            raise _Usage("verify main needs --k and --j")
        return [("main", {"n": n, "k": args.k, "j": args.j})]
    if args.check in ("skew", "lowdeg"):
        return [(args.check, {"n": n, "k": args.k})]
    return [(args.check, {"n": n})]


class _Usage(Exception):
    pass


def _run_jobs(jobs, width: int):
    from .verify import run_job

    if width <= 1 or len(jobs) <= 1:
        return [run_job(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=width) as ex:
        return list(ex.map(run_job, jobs))


def _cmd_verify(args, out) -> int:
    results = _run_jobs(_verify_jobs(args), args.jobs)
    status = EXIT_OK
    for reports in results:
        for r in reports:
            print(r.line() if args.fmt == "machine" else r.text(), file=out)
            if not r.ok:
                status = EXIT_MISMATCH
    return status


def _table_value(which: str, n: int, k: int, j: int):
    from .oracle import MAX_N
    from .verify import alternating_value, closed_form_dimension, computed_dimension

    if which == "dims":
        v = computed_dimension(n, k, j)[0] if n <= MAX_N else closed_form_dimension(n, k, j)
    else:
        v = alternating_value(n, k, j)
    return "?" if v is None else str(v)


def _cmd_table(args, out) -> int:
    for n in range(args.nmin, args.nmax + 1):
        print(f"{args.which} n={n}", file=out)
        width = max(len(str(j)) for j in range(args.jmax + 1))
        rows = [[_table_value(args.which, n, k, j) for j in range(args.jmax + 1)] for k in range(args.kmax + 1)]
        width = max([width] + [len(x) for row in rows for x in row])
        print("k\\j " + " ".join(str(j).rjust(width) for j in range(args.jmax + 1)), file=out)
        for k, row in enumerate(rows):
            print(f"{k:<3} " + " ".join(x.rjust(width) for x in row), file=out)
    return EXIT_OK


def _cmd_cache(args, out) -> int:
    from . import cache

    if args.action == "list":
        for p in cache.list_entries():
            print(p.name, file=out)
        return EXIT_OK
    if args.action == "clear":
        print(f"removed {cache.clear()} files", file=out)
        return EXIT_OK
    bad = 0
    for p, code in cache.verify_all():
        print(f"{p.name} {'ok' if code is None else code}", file=out)
        bad += code is not None
    return EXIT_USAGE if bad else EXIT_OK


COMMANDS = {
    "en": _cmd_en,
    "eval": _cmd_eval,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "cache": _cmd_cache,
}


def run(argv: list[str] | None = None, out=None) -> int:
    from .cache import CacheError
    from .oracle import DegreeBoundAnomaly, OracleResourceError
    from .plethysm import DegreeCapError

    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    RunConfig(cache_dir=args.cache_dir, jobs=getattr(args, "jobs", 1), fmt=args.fmt).apply()
    try:
        return COMMANDS[args.cmd](args, out)
    except _Usage as exc:
        print(f"dbf: E_USAGE: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleResourceError, DegreeCapError) as exc:
        print(f"dbf: E_RESOURCE: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DegreeBoundAnomaly as exc:
        print(f"dbf: E_DEGREE_BOUND: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CacheError as exc:
        print(f"dbf: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
