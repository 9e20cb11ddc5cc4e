"""``parakod`` command-line interface.

Exit codes: 0 success, 1 I/O error, 2 invalid input, 3 invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import catalog, lie, report, scfile, section
from . import acx as acx_mod
from . import kod

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_INVARIANT = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def resolve(args) -> catalog.CatalogEntry:
    """Catalog entry from a name, a positional path or ``--file``."""
    target = getattr(args, "file", None)
    name = getattr(args, "name", None)
    if target is None and name is not None and name not in catalog.NAMES:
        target = name
    if target is None:
        if name is None:
            raise CliError(EXIT_INVALID, "give a catalog name or --file <path>")
        if args.n < 1:
            raise CliError(EXIT_INVALID, "--n must be at least 1")
        try:
            return catalog.get(name, args.n)
        except lie.LieError as exc:
            raise CliError(EXIT_INVARIANT, str(exc))
    path = Path(target)
    try:
        sc = scfile.load(path)
    except FileNotFoundError:
        raise CliError(EXIT_IO, f"file not found: {path}")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}")
    except scfile.ParseError as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}")
    return catalog.CatalogEntry(path.stem, sc, f"file {path}")


def _require_lie(entry):
    defect = lie.jacobi_defect(entry.sc)
    if defect:
        raise CliError(EXIT_INVALID, report.format_jacobi_defect(defect))


def cmd_catalog(args) -> int:
    rows = [{"name": e.name, "dim": e.dim, "provenance": e.provenance}
            for e in catalog.entries(args.n)]
    if args.format == "json":
        print(_dump({"entries": rows}))
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            print(f"{r['name']:<{width}}  dim={r['dim']:<3} {r['provenance']}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.m_max < 1:
        raise CliError(EXIT_INVALID, "--m-max must be at least 1")
    entry = resolve(args)
    _require_lie(entry)
    rep = report.analyze(entry.name, entry.sc, args.m_max, timing=args.timing)
    print(rep.to_json() if args.format == "json" else rep.to_text())
    return EXIT_OK


def cmd_pde(args) -> int:
    if args.m < 1:
        raise CliError(EXIT_INVALID, "--m must be at least 1")
    entry = resolve(args)
    _require_lie(entry)
    if args.format == "json":
        print(_dump({"algebra": entry.name, **report.pde_tables(entry.sc, args.m)}))
    else:
        print(f"algebra: {entry.name}")
        print(report.pde_text(entry.sc, args.m))
    return EXIT_OK


def _suite(job):
    entry, exhaustive = job
    return report.run_suite(entry, exhaustive=exhaustive)


def cmd_verify(args) -> int:
    if args.all:
        entries = catalog.entries(args.n)
    else:
        entries = [resolve(args)]
    jobs = [(e, not args.quick) for e in entries]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_suite, jobs))
    else:
        results = [_suite(j) for j in jobs]
    if args.format == "json":
        print(_dump({"results": [r.as_dict() for r in results],
                     "passed": all(r.passed for r in results)}))
    else:
        for r in results:
            for c in r.checks:
                print(f"[{r.algebra}] {'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
            print(f"[{r.algebra}] {'pass' if r.passed else 'fail'}")
    failed = [r for r in results if not r.passed]
    if not failed:
        return EXIT_OK
    first = failed[0].first_failure
    print(f"first failing invariant: {failed[0].algebra}: {first.name}: {first.detail}", file=sys.stderr)
    if first.name == "jacobi":
        return EXIT_INVALID
    return EXIT_INVARIANT


def cmd_section(args) -> int:
    if args.m < 1:
        raise CliError(EXIT_INVALID, "--m must be at least 1")
    if args.samples < 1:
        raise CliError(EXIT_INVALID, "--samples must be at least 1")
    if args.fd is not None and not args.fd > 0:
        raise CliError(EXIT_INVALID, "--fd step must be positive")
    a = acx_mod.alpha(acx_mod.lambda_from_structure(catalog.get("r4solv").sc))
    system = kod.real_system(a, args.m)
    cand = section.model_section(args.fhat, args.m, analytic=args.fd is None)
    pts = section.sample_points(args.samples, args.seed)
    h = args.fd if args.fd is not None else 1e-4
    try:
        worst = section.verify_candidate_section(system, cand, pts, h)
    except section.NonFiniteEvaluation as exc:
        raise CliError(EXIT_INVALID, str(exc))
    out = {
        "fhat": args.fhat,
        "m": args.m,
        "samples": args.samples,
        "seed": args.seed,
        "derivatives": "analytic" if args.fd is None else f"central differences h={args.fd!r}",
        "max_residual": worst,
    }
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"fhat={args.fhat} m={args.m} samples={args.samples} seed={args.seed} "
              f"({out['derivatives']}): max residual {worst:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="parakod",
        description="Canonical bundle and Kodaira-dimension tests for G x G with its standard "
                    "almost complex structure, plus the induced Norden / quasi-statistical structures.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, name=True):
        if name:
            sp.add_argument("name", nargs="?", help=f"catalog entry ({', '.join(catalog.NAMES)}) or path")
            sp.add_argument("--file", help="structure-constant file")
        sp.add_argument("--n", type=int, default=2, help="dimension for the abelian entry (default 2)")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("catalog", help="list built-in Lie algebras")
    common(sp, name=False)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("analyze", help="full analysis report")
    common(sp)
    sp.add_argument("--m-max", type=int, default=10)
    sp.add_argument("--timing", action="store_true", help="include wall-clock time (not byte-stable)")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("pde", help="print the real PDE system and elliptic operator")
    common(sp)
    sp.add_argument("--m", type=int, default=1)
    sp.set_defaults(func=cmd_pde)

    sp = sub.add_parser("verify", help="run the invariant suite")
    common(sp)
    sp.add_argument("--all", action="store_true", help="every catalog entry")
    sp.add_argument("--quick", action="store_true", help="operator identities up to degree 4 only")
    sp.add_argument("--jobs", type=int, default=1, help="parallel workers for --all")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("section", help="check a candidate section on the R^4 coordinate model")
    sp.add_argument("--fhat", choices=section.FHAT_CHOICES, default="1")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fd", type=float, default=None, metavar="H",
                    help="use central differences with step H instead of analytic derivatives")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_section)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
