"""Command line front-end: ``enum``, ``closure``, ``analyze`` and ``bench``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 internal error.
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from . import bench
from .analysis import cayley_graph, export_dot, export_edges, green_counts
from .closure import closure
from .concurrent import concurrent_froidure_pin
from .elements import GeneratorFormatError, load_generators
from .fropin import froidure_pin
from .snapshot import SnapshotFormatError, load, minimal_snapshot, save

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class RunReport:
    size: int
    products: int
    rules: int
    ms: int
    engine: str
    fragments: int
    limit: object
    complete: bool

    def line(self):
        return (
            f"size={self.size} products={self.products} rules={self.rules} "
            f"ms={self.ms} complete={str(self.complete).lower()}"
        )


def _report(s, t0, engine, k, limit):
    return RunReport(
        size=s.size,
        products=s.products,
        rules=len(s.rules),
        ms=round((time.perf_counter() - t0) * 1000),
        engine=engine,
        fragments=k,
        limit=limit,
        complete=s.is_complete(),
    )


def _emit(report, as_json):
    print(json.dumps(asdict(report)) if as_json else report.line())


def _read_gens(path):
    try:
        return load_generators(path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except GeneratorFormatError as e:
        raise InputError(f"{path}: {e}") from None


def _read_snap(path):
    try:
        return load(path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except SnapshotFormatError as e:
        raise InputError(f"{path}: {e}") from None


def _write_snap(s, path):
    try:
        save(s, path)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def cmd_enum(args):
    if args.resume and args.fragments is not None and args.fragments > 1:
        raise UsageError("--resume cannot be combined with --fragments > 1")
    if bool(args.resume) == bool(args.gens):
        raise UsageError("give exactly one of --gens or --resume")
    if args.limit is not None and args.limit < 1:
        raise UsageError("--limit must be positive")
    if args.fragments is not None and args.fragments < 1:
        raise UsageError("--fragments must be positive")

    t0 = time.perf_counter()
    if args.resume:
        s = _read_snap(args.resume)
        froidure_pin(s, args.limit)
        engine, k = "sequential", 1
    elif args.fragments is None:
        s = froidure_pin(minimal_snapshot(_read_gens(args.gens)), args.limit)
        engine, k = "sequential", 1
    else:
        gens = _read_gens(args.gens)
        s = concurrent_froidure_pin(
            gens, args.fragments, args.limit, seed=args.seed, recompute=args.recompute
        )
        engine, k = "concurrent", args.fragments
    report = _report(s, t0, engine, k, args.limit)
    if args.out:
        _write_snap(s, args.out)
    _emit(report, args.json)
    return EXIT_OK


def cmd_closure(args):
    old = _read_snap(args.resume)
    extra = _read_gens(args.extra)
    if extra[0].kind != old.kind or extra[0].size != old.degree:
        raise InputError(
            f"extra generators are {extra[0].kind}({extra[0].size}), "
            f"snapshot holds {old.kind}({old.degree})"
        )
    t0 = time.perf_counter()
    t = closure(old, extra)
    if args.complete:
        froidure_pin(t)
    report = _report(t, t0, "sequential", 1, None)
    if args.out:
        _write_snap(t, args.out)
    _emit(report, args.json)
    return EXIT_OK


def cmd_analyze(args):
    if bool(args.snap) == bool(args.gens):
        raise UsageError("give exactly one of --snap or --gens")
    if args.snap:
        s = _read_snap(args.snap)
        froidure_pin(s)
    else:
        s = froidure_pin(minimal_snapshot(_read_gens(args.gens)))
    counts = green_counts(s)
    print(f"size={s.size} R={counts['R']} L={counts['L']} H={counts['H']} D={counts['D']}")
    g = cayley_graph(s, args.side)
    if args.dot:
        labels = [s.word_of(i) for i in range(s.size)] if args.labels else None
        _write_text(args.dot, export_dot(g, labels))
    if args.edges:
        _write_text(args.edges, export_edges(g))
    return EXIT_OK


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def _range(text):
    parts = text.split(",")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI or N, got {text!r}") from None
    if len(vals) == 1:
        vals = vals * 2
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI or N, got {text!r}")
    return tuple(vals)


def cmd_bench(args):
    out = sys.stdout if args.out in (None, "-") else None
    try:
        if args.suite == "closure":
            rows = bench.closure_rows(
                args.samples,
                kind=args.kind,
                degree=args.degree,
                a_range=args.a_size,
                x_range=args.x_size,
                trials=args.trials,
                seed=args.seed,
                min_t1_ms=args.min_t1_ms,
                x_from_s=args.x_from_s,
            )
            header = bench.CLOSURE_HEADER
        else:
            if not args.gens:
                raise UsageError("the fragments suite needs --gens")
            gens = _read_gens(args.gens)
            ks = [int(v) for v in args.ks.split(",")]
            rows = bench.fragment_rows(gens, ks, trials=args.trials, seed=args.seed)
            header = bench.FRAGMENT_HEADER
        if out is None:
            with open(args.out, "w", newline="") as fh:
                bench.write_csv(rows, header, fh)
        else:
            bench.write_csv(rows, header, out)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="fpsemi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enum", help="enumerate a semigroup")
    e.add_argument("--gens", help="generator file (JSON)")
    e.add_argument("--resume", metavar="SNAP", help="continue from a saved snapshot")
    e.add_argument("--limit", type=int, help="stop once at least this many elements are known")
    e.add_argument("--fragments", type=int, help="use the concurrent engine with k fragments")
    e.add_argument("--seed", type=int, default=0, help="digest seed for bucketing")
    e.add_argument("--recompute", action="store_true", help="re-multiply queued products when absorbed")
    e.add_argument("--out", metavar="SNAP", help="save the resulting snapshot")
    e.add_argument("--json", action="store_true", help="print the full report as JSON")
    e.set_defaults(func=cmd_enum)

    c = sub.add_parser("closure", help="add generators to a saved snapshot")
    c.add_argument("--resume", metavar="SNAP", required=True)
    c.add_argument("--extra", metavar="FILE", required=True, help="extra generators (JSON)")
    c.add_argument("--complete", action="store_true", help="enumerate to completion afterwards")
    c.add_argument("--out", metavar="SNAP")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_closure)

    a = sub.add_parser("analyze", help="Green's class counts and Cayley graph export")
    a.add_argument("--snap", metavar="SNAP")
    a.add_argument("--gens", metavar="FILE")
    a.add_argument("--side", choices=["right", "left"], default="right")
    a.add_argument("--dot", metavar="FILE", help="write the Cayley graph as DOT ('-' for stdout)")
    a.add_argument("--labels", action="store_true", help="label DOT vertices with reduced words")
    a.add_argument("--edges", metavar="FILE", help="write the Cayley graph as 'i a j' lines")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bench", help="benchmark suites (CSV output)")
    b.add_argument("--suite", choices=["closure", "fragments"], required=True)
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", metavar="CSV")
    b.add_argument("--samples", type=int, default=10)
    b.add_argument("--kind", choices=["transformation", "bmat"], default="transformation")
    b.add_argument("--degree", type=int, default=5, help="degree / dimension of sampled elements")
    b.add_argument("--a-size", type=_range, default=(2, 4), metavar="LO,HI")
    b.add_argument("--x-size", type=_range, default=(1, 1), metavar="LO,HI")
    b.add_argument("--min-t1-ms", type=float, default=0.0, help="reject samples enumerating faster than this")
    b.add_argument("--x-from-s", action="store_true", help="draw the extras from <A>")
    b.add_argument("--gens", metavar="FILE", help="generators for the fragments suite")
    b.add_argument("--ks", default="1,2,4,8", help="fragment counts for the fragments suite")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"fpsemi: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as e:
        print(f"fpsemi: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:
        print(f"fpsemi: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
