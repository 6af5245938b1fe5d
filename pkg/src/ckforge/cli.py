"""Command line entry point: ``ckforge <subcommand> ...``.

Every subcommand produces records (plain dicts with a fixed key order).  With
``--format records`` they are printed as JSON lines; text output is rendered
from the same records.  Timings are left out of records so that a rerun with
the same arguments is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, rec: dict, text: str | None = None) -> None:
        if self.fmt == "records":
            self.stream.write(json.dumps(rec, separators=(",", ":"), default=str) + "\n")
        elif text is not None:
            self.stream.write(text + "\n")

    def text(self, line: str) -> None:
        if self.fmt == "text":
            self.stream.write(line + "\n")


# -- subcommands --------------------------------------------------------------------

def cmd_dims(args, out: Output) -> int:
    from .dimensions import DimQuery, dim_phi, dim_pl

    q = DimQuery(args.s, args.d, args.v)
    a, b = dim_phi(q), dim_pl(q)
    out.record({"record": "dims", "s": q.s, "d": q.d, "v": q.v, "dim_phi": a, "dim_pl": b}, f"{a} {b}")
    return EXIT_OK


def cmd_scan(args, out: Output) -> int:
    if args.v_max is not None:
        return _scan_zero(args, out)
    from .dimensions import advantage_table

    out.text(f"{'d':>3} {'v':>5} {'dim_Phi':>14} {'dim_PL':>14}")
    for d, adv in advantage_table(args.s, args.d_min, args.d_max, args.search_v):
        rec = {"record": "advantage", "s": args.s, "d": d,
               "v": adv.v if adv else None,
               "dim_phi": adv.dim_phi if adv else None,
               "dim_pl": adv.dim_pl if adv else None}
        line = f"{d:>3}" + (f" {adv.v:>5} {adv.dim_phi:>14} {adv.dim_pl:>14}" if adv else "")
        out.record(rec, line)
    return EXIT_OK


def _scan_zero(args, out: Output) -> int:
    from .upper_bound import scan_zero_region

    cells = scan_zero_region(args.s, args.d_max, args.v_max, args.seed, d_min=args.d_min,
                             v_min=args.v_min, strategy="exact" if args.exact else "modular")
    out.text(f"{'d':>3} {'v':>4} {'r':>4}")
    status = EXIT_OK
    for c in cells:
        rec = {"record": "upper_bound_cell", "s": args.s, "d": c.d, "v": c.v, "r": c.r, "error": c.error}
        out.record(rec, f"{c.d:>3} {c.v:>4} {c.r if c.r is not None else 'ERR':>4}" + (f"  {c.error}" if c.error else ""))
        if c.error:
            status = EXIT_FAIL
    return status


def cmd_upper_bound(args, out: Output) -> int:
    from .upper_bound import DegenerateSample, run_upper_bound

    try:
        ub = run_upper_bound(args.s, args.d, args.v, args.seed, "exact" if args.exact else "modular",
                             retries=args.retries, n_primes=args.primes)
    except DegenerateSample as exc:
        out.record({"record": "upper_bound_error", "error": str(exc)}, f"error: {exc}")
        return EXIT_FAIL
    prov = {k: v for k, v in ub.provenance.items() if k != "seconds"}
    rec = {"record": "upper_bound", "r": ub.r, **prov}
    out.record(rec, f"r={ub.r}")
    for k, v in prov.items():
        out.text(f"  {k}: {v}")
    out.text(f"  seconds: {ub.provenance['seconds']}")
    out.text("  (an upper bound on the kernel rank of theta#_{d,v})")
    return EXIT_OK


def cmd_matrix(args, out: Output) -> int:
    from .theta import build_matrix, export_matrix

    M = build_matrix(args.s, args.d, args.v, args.ring)
    paths = export_matrix(M, args.out)
    R, C = M.shape
    out.record({"record": "matrix", "s": args.s, "d": args.d, "v": args.v, "ring": args.ring,
                "rows": R, "cols": C, "nnz": len(M.entries), "files": [str(p) for p in paths]},
               f"{R}x{C} matrix, {len(M.entries)} nonzeros -> {', '.join(str(p) for p in paths)}")
    return EXIT_OK


F618_HEADER = "# ckforge F618 v1"


def _load_cache(s: int, d: int):
    from .lyndon import default_converter

    conv = default_converter()
    conv.load(s, d)
    return conv


def cmd_construct_f618(args, out: Output) -> int:
    conv = _load_cache(2, 6)
    try:
        return _construct_f618(args, out)
    finally:
        conv.save(2, 6)


def _construct_f618(args, out: Output) -> int:
    from .resultant import certificate, certificate_text, extract_f618, FactorizationError
    from .upper_bound import lyndon_point, point_hash

    x = lyndon_point(2, 6, args.seed)
    try:
        F618, led = extract_f618(x)
        cert = certificate() if args.certificate else None
    except FactorizationError as exc:
        out.record({"record": "f618_error", "error": str(exc)}, f"error: {exc}")
        return EXIT_FAIL
    header = f"{F618_HEADER} point_seed={args.seed} x_hash={point_hash(x)} terms={len(F618)}"
    body = header + "\n" + F618.text() + "\n"
    if args.out:
        Path(args.out).write_text(body)
    if cert is not None:
        Path(args.certificate).write_text("# ckforge F618 certificate v1\n" + certificate_text(cert) + "\n")
    rec = {"record": "f618", "point_seed": args.seed, "x_hash": point_hash(x), "terms": len(F618),
           "degrees": led["f618_degrees"], "max_li": led["f618_max_li"],
           "deg_nu4": led["deg_nu4"], "deg_nu6": led["deg_nu6"], "out": args.out,
           "certificate": args.certificate}
    if out.fmt == "records":
        out.record(rec)
    elif args.out:
        out.text(f"F618 at point seed {args.seed}: {len(F618)} monomials, PL-degree {led['f618_degrees']} -> {args.out}")
    else:
        out.text(body.rstrip("\n"))
    return EXIT_OK


def _emit_report(rep, out: Output) -> int:
    for c in rep.checks:
        out.record({"record": "check", "report": rep.title, "name": c.name, "ok": c.ok, "detail": c.detail},
                   f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify_f618(args, out: Output) -> int:
    from .resultant import verify_elimination_identities, verify_f618

    conv = _load_cache(2, 6)
    try:
        s1 = _emit_report(verify_elimination_identities(args.trials, args.seed), out)
        s2 = _emit_report(verify_f618(args.trials, args.seed, args.points), out)
    finally:
        conv.save(2, 6)
    return max(s1, s2)


def cmd_verify_known(args, out: Output) -> int:
    from .known import check_matrix_122, verify_known
    from .resultant import Report

    rep = Report("known")
    for name, ok in verify_known().items():
        rep.add(name, ok)
    match, spans = check_matrix_122()
    rep.add("M(theta#_{2,2}) matches the displayed 3x4 matrix", match)
    rep.add("kernel of the (1,2,2) system is spanned by F122", spans)
    return _emit_report(rep, out)


def cmd_cache(args, out: Output) -> int:
    from .lyndon import cache_files, default_converter

    cache_dir = args.cache_dir or os.environ.get("CKFORGE_CACHE")
    if not cache_dir:
        out.record({"record": "cache_error", "error": "no cache directory"},
                   "error: set --cache-dir or CKFORGE_CACHE")
        return EXIT_USAGE
    if args.action == "info":
        files = cache_files(cache_dir)
        for p in files:
            n = sum(1 for _ in p.open()) - 1
            out.record({"record": "cache_file", "path": str(p), "entries": n}, f"{p}  {n} entries")
        if not files:
            out.text(f"{cache_dir}: empty")
    elif args.action == "clear":
        files = cache_files(cache_dir)
        for p in files:
            p.unlink()
        out.record({"record": "cache_cleared", "files": len(files)}, f"removed {len(files)} cache files")
    else:  # warm
        from .theta import PLVariable, theta_image

        conv = default_converter()
        conv.load(args.s, args.d)
        for n in range(args.d + 1):
            for c in theta_image(PLVariable(n), args.s, args.d, "shuffle").terms.values():
                conv.convert(c, args.d)
        path = conv.save(args.s, args.d)
        out.record({"record": "cache_warm", "s": args.s, "d": args.d, "path": str(path),
                    "entries": len(conv.memo) - 1}, f"{path}: {len(conv.memo) - 1} conversions")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, defaults: bool) -> None:
    # subcommands repeat the flags with suppressed defaults, so either position works
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--seed", type=int, default=d(0), help="seed for random points and primes")
    parser.add_argument("--threads", type=int, default=d(1), help="worker budget (kernels are single-threaded)")
    parser.add_argument("--cache-dir", default=d(None), help="Lyndon conversion cache (or CKFORGE_CACHE)")
    parser.add_argument("--format", choices=("text", "records"), default=d("text"))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    _global_flags(top, True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, False)

    p = argparse.ArgumentParser(prog="ckforge", parents=[top],
                                description="Polylogarithmic Chabauty-Kim geometric step toolkit")
    sub = p.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("dims", cmd_dims, "dim_Phi and dim_PL at (s, d, v)")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)

    sp = add("scan", cmd_scan, "first dimension advantage per depth, or (with --v-max) upper bounds on a grid")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--d-min", type=int, default=1)
    sp.add_argument("--d-max", type=int, required=True)
    sp.add_argument("--search-v", type=int, default=400, help="largest v tried for the advantage table")
    sp.add_argument("--v-min", type=int, default=1)
    sp.add_argument("--v-max", type=int, default=None, help="run the randomized upper bound on the grid")
    sp.add_argument("--exact", action="store_true")

    sp = add("upper-bound", cmd_upper_bound, "randomized upper bound on the kernel rank")
    for k in ("--s", "--d", "--v"):
        sp.add_argument(k, type=int, required=True)
    sp.add_argument("--exact", action="store_true", help="exact rational rank instead of modular")
    sp.add_argument("--retries", type=int, default=3)
    sp.add_argument("--primes", type=int, default=3)

    sp = add("matrix", cmd_matrix, "build and export M(theta#_{d,v})")
    for k in ("--s", "--d", "--v"):
        sp.add_argument(k, type=int, required=True)
    sp.add_argument("--ring", choices=("shuffle", "lyndon"), default="shuffle")
    sp.add_argument("--out", required=True)

    sp = add("construct-f618", cmd_construct_f618, "F618 at a seeded integer Lyndon point")
    sp.add_argument("--out", default=None)
    sp.add_argument("--certificate", default=None, help="also write the symbolic nu', alpha, beta data")

    sp = add("verify-f618", cmd_verify_f618, "elimination identities and F618 kernel checks")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--points", type=int, default=3)

    add("verify-known", cmd_verify_known, "one-prime kernel facts")

    sp = add("cache", cmd_cache, "inspect, clear or warm the Lyndon conversion cache")
    sp.add_argument("action", choices=("info", "clear", "warm"))
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--d", type=int, default=6)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.cache_dir:
        from .lyndon import set_cache_dir

        set_cache_dir(args.cache_dir)
    out = Output(args.format)
    try:
        return args.fn(args, out)
    except ValueError as exc:
        sys.stderr.write(f"ckforge: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
