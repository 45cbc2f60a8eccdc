"""Command-line front end.

Graphs use a plain edge-list format: the first non-comment line holds ``n m``,
then ``m`` lines ``u v`` with 0-based vertex ids. ``#`` starts a comment.
A path ``-`` means standard input.

Exit codes: 0 success, 2 malformed input or bad arguments, 3 the input has a
cycle, 4 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Sequence, TextIO

from . import _backend
from .antichain import max_antichain, verify_antichain
from .cover import PathCover, verify_cover
from .errors import CycleError, DagWidthError, InvariantViolation, ParamError, SelfLoopError, VertexRangeError
from .flow import find_decrementing_path, lift, shrink_cover
from .graph import Dag, build_dag, generate
from .sparsify import sparsify_all

EXIT_OK, EXIT_PARSE, EXIT_CYCLE, EXIT_VERIFY = 0, 2, 3, 4
ALGOS = ("dnc", "dnc-par", "progressive", "shrink-baseline")


class ParseError(DagWidthError):
    pass


class VerificationFailed(DagWidthError):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _ints(no: int, line: str, count: int | None = None) -> list[int]:
    parts = line.split()
    if count is not None and len(parts) != count:
        raise ParseError(f"line {no}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"line {no}: not an integer list: {line!r}") from None


def parse_graph(text: str) -> Dag:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input: expected a header line 'n m'")
    no, head = lines[0]
    n, m = _ints(no, head, 2)
    if n < 0 or m < 0:
        raise ParseError(f"line {no}: n and m must be non-negative")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    edges = [_ints(no, line, 2) for no, line in body]
    try:
        return build_dag(n, edges)
    except VertexRangeError as exc:
        raise ParseError(str(exc)) from None


def read_graph(path: str) -> Dag:
    return parse_graph(_read_text(path))


def format_graph(g: Dag) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_paths(text: str) -> list[list[int]]:
    """A cover as printed by ``solve``: either its json form or one path per line."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            return [[int(v) for v in p] for p in data["paths"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad json cover: {exc}") from None
    return [_ints(no, line) for no, line in _content_lines(text)]


def solve(g: Dag, algo: str, workers: int = 1, check: bool = False, log: TextIO | None = None) -> PathCover:
    if algo == "progressive":
        from .progressive import solve_progressive
        pc = solve_progressive(g, check_invariants=check)
        if check and log is not None:
            print(f"# invariants held after each of {g.n} vertex steps", file=log)
    elif algo == "dnc":
        from .dnc import solve_dnc
        pc = solve_dnc(g).cover
    elif algo == "dnc-par":
        from .dnc import solve_dnc_parallel
        pc = solve_dnc_parallel(g, workers).cover
    elif algo == "shrink-baseline":
        pc = shrink_cover(g)
    else:
        raise ParamError(f"unknown algorithm {algo!r}")
    if check:
        check_minimum(g, pc)
        if log is not None:
            print(f"# cover valid, no decrementing path: width {len(pc)}", file=log)
    return pc


def check_minimum(g: Dag, paths: PathCover | Sequence[Sequence[int]]) -> None:
    rep = verify_cover(g, paths, check_ids=False)
    if not rep.ok:
        raise VerificationFailed("; ".join(rep.violations[:5]))
    if find_decrementing_path(lift(g, paths)) is not None:
        raise VerificationFailed("cover is not minimum: a decrementing path exists")


def _emit_paths(paths: list[list[int]], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump({"width": len(paths), "paths": paths}, out)
        out.write("\n")
    else:
        out.write(f"# width {len(paths)}\n")
        for p in paths:
            out.write(" ".join(map(str, p)) + "\n")


def cmd_solve(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = read_graph(args.input)
    pc = solve(g, args.algo, args.workers, args.check, err)
    _emit_paths(pc.sorted_paths(), args.format, out)
    return EXIT_OK


def cmd_antichain(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = read_graph(args.input)
    pc = solve(g, args.algo, args.workers, args.check, err)
    ac = max_antichain(g, pc)
    if args.check:
        rep = verify_antichain(g, ac.vertices)
        if not rep.ok or len(ac) != len(pc):
            raise VerificationFailed("; ".join(rep.violations) or "antichain size differs from cover size")
    verts = sorted(ac.vertices)
    if args.format == "json":
        json.dump({"width": len(verts), "antichain": verts}, out)
        out.write("\n")
    else:
        out.write(" ".join(map(str, verts)) + "\n")
    return EXIT_OK


def cmd_sparsify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = read_graph(args.input)
    pc = solve(g, args.algo, args.workers, args.check, err)
    if args.mode == "transitive":
        sg = sparsify_all(g, pc)
        print(f"# kept {sg.m} of {g.m} edges, bound {len(pc) * g.n}", file=err)
    else:
        from .support import sparsify_support
        pc2 = sparsify_support(g, pc, inplace=True)
        sg = build_dag(g.n, pc2.support())
        print(f"# support has {sg.m} edges, bound 2|V| = {2 * g.n}", file=err)
        if g.n and sg.m >= 2 * g.n:
            raise VerificationFailed(f"support has {sg.m} edges, not below {2 * g.n}")
    if args.check:
        got = solve(sg, "progressive")
        if len(got) != len(pc):
            raise VerificationFailed(f"width changed from {len(pc)} to {len(got)}")
    out.write(format_graph(sg))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    fam = args.family
    if fam in ("random", "layered") and args.seed is None:
        raise ParamError(f"--seed is required for the {fam} family")
    if fam == "random":
        g = generate("random", n=_need(args.n, "--n"), m=_need(args.m, "--m"), seed=args.seed)
    elif fam == "layered":
        g = generate("layered", width=_need(args.width, "--width"), layers=_need(args.layers, "--layers"),
                     seed=args.seed, cross=args.cross)
    else:
        g = generate("tight2", n=_need(args.n, "--n"))
    out.write(format_graph(g))
    return EXIT_OK


def _need(value: int | None, flag: str) -> int:
    if value is None:
        raise ParamError(f"{flag} is required for this family")
    return value


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = read_graph(args.graph)
    paths = parse_paths(_read_text(args.cover))
    rep = verify_cover(g, paths, check_ids=False)
    if not rep.ok:
        for v in rep.violations:
            print(f"# {v}", file=err)
        raise VerificationFailed("not a path cover")
    if args.minimum:
        check_minimum(g, paths)
    if args.width is not None and len(paths) != args.width:
        raise VerificationFailed(f"cover has {len(paths)} paths, expected {args.width}")
    out.write(f"ok {len(paths)} paths\n")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    algos = args.algos.split(",")
    for a in algos:
        if a not in ALGOS:
            raise ParamError(f"unknown algorithm {a!r}")
    _backend.get(args.backend)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "m", "k", "algo", "millis"])
    for n in sizes:
        g = generate("layered", width=args.width, layers=max(1, n // args.width), seed=args.seed)
        for a in algos:
            best = float("inf")
            width = -1
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                width = len(_bench_run(g, a, args.workers, args.backend))
                best = min(best, time.perf_counter() - t0)
            writer.writerow([g.n, g.m, width, a, f"{best * 1000:.1f}"])
            out.flush()
    return EXIT_OK


def _bench_run(g: Dag, algo: str, workers: int, backend: str | None) -> PathCover:
    if algo == "dnc":
        from .dnc import solve_dnc
        return solve_dnc(g, backend=backend).cover
    if algo == "dnc-par":
        from .dnc import solve_dnc_parallel
        return solve_dnc_parallel(g, workers, backend=backend).cover
    return solve(g, algo, workers)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dagwidth", description="Minimum path covers, antichains and sparsification of DAGs.")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_opts(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("input", nargs="?", default="-", help="edge-list file, '-' for stdin")
        sp.add_argument("--algo", choices=ALGOS, default="progressive")
        sp.add_argument("--workers", type=_positive, default=1, help="threads for dnc-par")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--check", action="store_true", help="audit invariants and verify the result")

    sp = sub.add_parser("solve", help="print a minimum path cover")
    solver_opts(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("antichain", help="print a maximum antichain")
    solver_opts(sp)
    sp.set_defaults(func=cmd_antichain)

    sp = sub.add_parser("sparsify", help="print a width-preserving spanning subgraph")
    solver_opts(sp)
    sp.add_argument("--mode", choices=("transitive", "support"), default="support")
    sp.set_defaults(func=cmd_sparsify)

    sp = sub.add_parser("gen", help="print a generated instance")
    sp.add_argument("--family", choices=("random", "layered", "tight2"), required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--width", type=int)
    sp.add_argument("--layers", type=int)
    sp.add_argument("--cross", type=int, help="cross edges for the layered family")
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="check a cover against a graph")
    sp.add_argument("graph")
    sp.add_argument("cover", nargs="?", default="-")
    sp.add_argument("--minimum", action="store_true", help="also require that no smaller cover exists")
    sp.add_argument("--width", type=int, help="required number of paths")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time solvers on layered graphs, CSV output")
    sp.add_argument("--sizes", default="4096,16384,65536")
    sp.add_argument("--width", type=_positive, default=8)
    sp.add_argument("--algos", default="dnc,progressive")
    sp.add_argument("--workers", type=_positive, default=2)
    sp.add_argument("--repeat", type=_positive, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args, out, err)
    except (CycleError, SelfLoopError) as exc:
        print(f"error: input is not acyclic: {exc}", file=err)
        return EXIT_CYCLE
    except (ParseError, ParamError, VertexRangeError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except (VerificationFailed, InvariantViolation) as exc:
        print(f"verification failed: {exc}", file=err)
        return EXIT_VERIFY
    except DagWidthError as exc:
        print(f"verification failed: {exc}", file=err)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
