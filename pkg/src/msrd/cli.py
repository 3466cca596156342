"""Command-line front end: ``msrd bound|build|check|compare|export``.

Exit codes: 0 success, 1 failed check, 2 usage or parse error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from msrd import codefile
from msrd.codes import ORACLE_GUARD, FqmLinearCode, dual_code, is_msrd, to_fq_linear, weight_distribution
from msrd.combiners import GlueSpec, StackSpec, glue_bases, stack_product
from msrd.errors import ConstructionError, GuardExceeded
from msrd.extenders import (
    MatrixPartition,
    build_lattice_t2,
    build_lattice_t3,
    check_one_weight,
    extend_lattice,
    extend_systematic,
)
from msrd.gf import FieldTower
from msrd.msrd_gen import build_lrs, build_msrd
from msrd.sumrank import BlockProfile, LengthPartition, expand_distance, singleton_bound

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def parse_shapes(text: str) -> list[tuple[int, int]]:
    """``"2x2,2x1"`` -> ``[(2, 2), (2, 1)]``."""
    out = []
    for tok in text.replace(";", ",").split(","):
        tok = tok.strip()
        if not tok:
            continue
        a, sep, b = tok.partition("x")
        if not sep:
            raise UsageError(f"bad block shape {tok!r}; expected MxN")
        out.append((int(a), int(b)))
    if not out:
        raise UsageError("empty block list")
    return out


def _index_set(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    return tuple(out)


def parse_pieces(text: str) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """``"1-2x1;1x2;2x2"`` -> row/column index sets per piece."""
    pieces = []
    for tok in text.split(";"):
        tok = tok.strip()
        if not tok:
            continue
        xs, sep, ys = tok.partition("x")
        if not sep:
            raise UsageError(f"bad piece {tok!r}; expected ROWSxCOLS")
        pieces.append((_index_set(xs), _index_set(ys)))
    return pieces


def _shapes_str(shapes) -> str:
    return ",".join(f"{a}x{b}" for a, b in shapes)


# ---------------------------------------------------------------------------
# builders shared by ``build`` and ``compare``


def build_code(kind: str, params: dict, guard: int = ORACLE_GUARD, verify: bool = True):
    """Return ``(code, meta)`` where ``code`` is F_q- or F_{q^m}-linear."""
    meta = {"construction": kind}
    if kind in ("stack", "glue"):
        raise UsageError(f"{kind} builds from input files")
    q, m = params["q"], params["m"]
    tower = FieldTower.from_q(q, m)
    meta.update(q=str(q), m=str(m))
    if kind == "lrs":
        meta.update(r=str(params["r"]), k=str(params["k"]))
        return build_lrs(tower, params["r"], params["k"]), meta
    if kind == "msrd-general":
        meta.update(mu=str(params["mu"]), r=str(params["r"]), k=str(params["k"]))
        return build_msrd(tower, params["mu"], params["r"], params["k"]), meta
    if kind in ("cons3-t2", "cons3-t3"):
        ing = _lattice_ingredients(kind, tower, params)
        spec = ing.spec(params["ext"], params["breakpoints"])
        meta.update(mu=str(params["mu"]), r=str(params["r"]), k=str(ing.k))
        meta.update(ext=_shapes_str(params["ext"]), breakpoints=",".join(map(str, params["breakpoints"])))
        return extend_lattice(spec, verify, guard), meta
    if kind == "cons4":
        d0 = build_msrd(tower, params["mu"], params["r"], params["k"])
        t = params["r"]
        part = MatrixPartition(m, t, tuple(params["pieces"]))
        meta.update(mu=str(params["mu"]), r=str(params["r"]), k=str(params["k"]))
        return extend_systematic(d0, t, part, verify, guard), meta
    raise UsageError(f"unknown construction {kind!r}")


def _lattice_ingredients(kind, tower, params):
    if kind == "cons3-t2":
        return build_lattice_t2(tower, params["mu"], params["r"], params["k"])
    return build_lattice_t3(tower, params["mu"], params["r"])


def _lattice_context(cf: codefile.CodeFile):
    meta = cf.meta
    kind = meta.get("construction")
    if kind not in ("cons3-t2", "cons3-t3"):
        return None
    tower = FieldTower.from_q(int(meta["q"]), int(meta["m"]))
    params = {"mu": int(meta["mu"]), "r": int(meta["r"]), "k": int(meta["k"])}
    ing = _lattice_ingredients(kind, tower, params)
    return ing.spec(parse_shapes(meta["ext"]), [int(x) for x in meta["breakpoints"].split(",")])


# ---------------------------------------------------------------------------
# commands


def cmd_bound(args, out) -> int:
    profile = BlockProfile(tuple(parse_shapes(args.profile))).canonical()
    if not 1 <= args.d <= profile.total_n:
        raise UsageError(f"--d must lie in [1, {profile.total_n}]")
    exp = expand_distance(profile, args.d)
    print(f"bound={singleton_bound(profile, args.d)} j={exp.j} delta={exp.delta}", file=out)
    return EXIT_OK


def cmd_build(args, out) -> int:
    kind = args.construction
    if kind == "stack":
        files = [codefile.read(p) for p in args.inputs]
        code = stack_product(StackSpec([f.fq_code() for f in files]))
        meta = {"construction": "stack"}
    elif kind == "glue":
        c1, c2 = codefile.read(args.c1).fq_code(), codefile.read(args.c2).fq_code()
        code = glue_bases(GlueSpec(c1, c2))
        meta = {"construction": "glue"}
    else:
        params = {k: getattr(args, k, None) for k in ("q", "m", "mu", "r", "k")}
        if getattr(args, "ext", None) is not None:
            params["ext"] = parse_shapes(args.ext)
            params["breakpoints"] = [int(x) for x in args.breakpoints.split(",")]
        if getattr(args, "pieces", None) is not None:
            params["pieces"] = parse_pieces(args.pieces)
        code, meta = build_code(kind, params, args.guard, not args.no_verify)
    cf = codefile.CodeFile.from_code(code, meta)
    text = codefile.serialize(cf)
    dim = cf.fq_code().dim
    summary = f"dim={dim} blocks={cf.profile}"
    if args.out:
        codefile.write(args.out, cf)
        print(summary, file=out)
    else:
        out.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def _cert_line(cert) -> str:
    return f"d={cert.d} dim={cert.dim} bound={cert.bound} msrd={str(cert.msrd).lower()}"


def cmd_check(args, out) -> int:
    cf = codefile.read(args.file)
    what = args.what
    if what == "msrd":
        cert = is_msrd(cf.fq_code(), args.guard)
        print(_cert_line(cert), file=out)
        return EXIT_OK if cert else EXIT_FAIL
    if what == "weights":
        dist = weight_distribution(cf.fq_code(), args.guard)
        print(" ".join(f"{w}:{c}" for w, c in sorted(dist.items())), file=out)
        return EXIT_OK
    if what == "one-weight":
        code = cf.fq_code()
        ctx = _lattice_context(cf)
        if ctx is not None and code.dim == 2 * ctx.tower.m and ctx.t == 2:
            rep = check_one_weight(code, ctx, args.guard)
            print(
                f"one_weight={str(rep.one_weight).lower()} criterion={str(rep.criterion).lower()} "
                f"agree={str(rep.agree).lower()}",
                file=out,
            )
            return EXIT_OK if rep.one_weight and rep.agree else EXIT_FAIL
        dist = weight_distribution(code, args.guard)
        ok = len(dist) == 2
        print(f"one_weight={str(ok).lower()} criterion=n/a", file=out)
        return EXIT_OK if ok else EXIT_FAIL
    if what == "dual-msrd":
        if cf.genmat is None:
            raise UsageError("dual-msrd needs a file with a generator matrix")
        dual = dual_code(cf.fqm_code())
        cert = is_msrd(to_fq_linear(dual), args.guard)
        print(_cert_line(cert), file=out)
        return EXIT_OK if cert else EXIT_FAIL
    raise UsageError(f"unknown check {what!r}")  # pragma: no cover


@dataclass(frozen=True)
class CompareRow:
    name: str
    q: int
    profile: str
    d: int | None
    dim: int | None
    bound: int | None
    msrd: bool | None
    seconds: float | None
    status: str = "ok"


def _lrs_fq(q, m, r, k):
    return to_fq_linear(build_lrs(FieldTower.from_q(q, m), r, k))


def _glue_instance():
    tower = FieldTower.from_q(3, 2)
    c = to_fq_linear(FqmLinearCode(tower, LengthPartition((2,), 2), [[1, 3]]))
    return glue_bases(GlueSpec(c, c))


def _dual_lrs():
    return to_fq_linear(dual_code(build_lrs(FieldTower.from_q(3, 2), 2, 2)))


def compare_grid():
    """``(name, q, thunk)`` triples; each thunk builds the F_q-linear code unverified."""

    def lattice(kind, q, m, mu, r, k, ext, bps):
        params = dict(q=q, m=m, mu=mu, r=r, k=k, ext=ext, breakpoints=bps)
        return lambda: build_code(kind, params, verify=False)[0]

    def cons4(q, m, mu, r, k, pieces):
        params = dict(q=q, m=m, mu=mu, r=r, k=k, pieces=pieces)
        return lambda: build_code("cons4", params, verify=False)[0]

    return [
        ("lrs", 3, lambda: _lrs_fq(3, 2, 2, 2)),
        ("lrs", 2, lambda: _lrs_fq(2, 3, 3, 1)),
        ("lrs", 4, lambda: _lrs_fq(4, 2, 2, 2)),
        ("msrd-general", 3, lambda: to_fq_linear(build_msrd(FieldTower.from_q(3, 2), 2, 1, 2))),
        ("dual-lrs", 3, _dual_lrs),
        ("stack", 3, lambda: stack_product(StackSpec([_lrs_fq(3, 2, 2, 2)] * 2))),
        ("glue", 3, _glue_instance),
        ("cons3-t2", 3, lattice("cons3-t2", 3, 2, 1, 2, 1, [(2, 1), (2, 1)], [1, 2])),
        ("cons3-t2", 3, lattice("cons3-t2", 3, 2, 1, 2, 1, [(1, 1), (1, 1), (2, 1)], [2, 3])),
        ("cons3-t2", 2, lattice("cons3-t2", 2, 2, 1, 2, 0, [(2, 1), (2, 1)], [1, 2])),
        ("cons3-t3", 2, lattice("cons3-t3", 2, 3, 1, 3, 0, [(3, 1), (2, 1), (1, 1), (1, 1)], [1, 3, 4])),
        ("cons4", 3, cons4(3, 2, 1, 2, 2, [((1, 2), (1,)), ((1,), (2,)), ((2,), (2,))])),
        ("cons4", 3, cons4(3, 2, 1, 2, 2, [((1, 2), (1, 2))])),
    ]


def run_compare(budget: int, q_filter: int | None = None, guard: int = ORACLE_GUARD) -> list[CompareRow]:
    rows = []
    remaining = budget
    for name, q, thunk in compare_grid():
        if q_filter is not None and q != q_filter:
            continue
        code = thunk()
        profile = str(code.profile)
        cost = code.size()
        if cost > remaining or cost > guard:
            rows.append(CompareRow(name, q, profile, None, code.dim, None, None, None, "skipped"))
            continue
        remaining -= cost
        t0 = time.perf_counter()
        cert = is_msrd(code, guard)
        rows.append(CompareRow(name, q, profile, cert.d, cert.dim, cert.bound, cert.msrd, time.perf_counter() - t0))
    rows.sort(key=lambda r: (r.q, r.profile, r.name))
    return rows


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return str(x).lower()
    return str(x)


def cmd_compare(args, out) -> int:
    if args.budget < 0:
        raise UsageError("--budget must be non-negative")
    rows = run_compare(args.budget, args.q, args.guard)
    header = ["construction", "q", "profile", "d", "dim", "bound", "msrd", "status"]
    if args.timing:
        header.append("seconds")

    def cells(r):
        c = [r.name, r.q, r.profile, r.d, r.dim, r.bound, r.msrd, r.status]
        if args.timing:
            c.append(None if r.seconds is None else f"{r.seconds:.4f}")
        return [_fmt(x) for x in c]

    table = [header] + [cells(r) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip(), file=out)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerows(table)
        with open(args.csv, "w") as fh:
            fh.write(buf.getvalue())
    return EXIT_FAIL if any(r.msrd is False for r in rows) else EXIT_OK


def cmd_export(args, out) -> int:
    cf = codefile.read(args.file)
    text = json.dumps(codefile.to_json(cf), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msrd", description="Build and verify MSRD codes in the sum-rank metric.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate the sum-rank Singleton bound")
    p.add_argument("--profile", required=True, help="block shapes, e.g. 2x2,2x2")
    p.add_argument("--d", type=int, required=True, help="minimum distance")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("build", help="build a code and write it in the text format")
    bsub = p.add_subparsers(dest="construction", required=True)

    def common(bp, fields=("q", "m", "r", "k"), mu=True):
        for f in fields:
            bp.add_argument(f"--{f}", type=int, required=True)
        if mu:
            bp.add_argument("--mu", type=int, default=1)
        bp.add_argument("-o", "--out", help="output file (default: stdout)")
        bp.add_argument("--guard", type=int, default=ORACLE_GUARD)
        bp.add_argument("--no-verify", action="store_true", help="skip oracle premise checks")

    common(bsub.add_parser("lrs", help="linearized Reed-Solomon code"), mu=False)
    bsub.choices["lrs"].set_defaults(mu=1)
    common(bsub.add_parser("msrd-general", help="general generator matrix family"))
    bp = bsub.add_parser("stack", help="stack codes with square blocks")
    bp.add_argument("--inputs", nargs="+", required=True)
    common(bp, fields=(), mu=False)
    bp = bsub.add_parser("glue", help="glue two bases pairwise")
    bp.add_argument("--c1", required=True)
    bp.add_argument("--c2", required=True)
    common(bp, fields=(), mu=False)
    for name, fields in (("cons3-t2", ("q", "m", "r", "k")), ("cons3-t3", ("q", "m", "r"))):
        bp = bsub.add_parser(name, help="lattice extension")
        common(bp, fields)
        if name == "cons3-t3":
            bp.set_defaults(k=0)
        bp.add_argument("--ext", required=True, help="extra block shapes, e.g. 2x1,2x1")
        bp.add_argument("--breakpoints", required=True, help="group ends, e.g. 1,2")
    bp = bsub.add_parser("cons4", help="systematic extension; t equals r")
    common(bp)
    bp.add_argument("--pieces", required=True, help='submatrix pieces, e.g. "1-2x1;1x2;2x2"')
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="run an oracle check on a code file")
    p.add_argument("what", choices=["msrd", "weights", "one-weight", "dual-msrd"])
    p.add_argument("file")
    p.add_argument("--guard", type=int, default=ORACLE_GUARD)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compare", help="verify the construction grid and tabulate")
    p.add_argument("--budget", type=int, default=10**6, help="total codewords to enumerate")
    p.add_argument("--q", type=int, default=None, help="only rows over this field size")
    p.add_argument("--csv", help="also write the table as CSV")
    p.add_argument("--timing", action="store_true", help="add an oracle runtime column")
    p.add_argument("--guard", type=int, default=ORACLE_GUARD)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("export", help="convert a code file to JSON")
    p.add_argument("file")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ConstructionError, codefile.ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
