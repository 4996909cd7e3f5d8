"""Command-line entry point.

Reports are ``key value`` lines on stdout. Exit codes follow :class:`ExitStatus`.
"""

from __future__ import annotations

import argparse
import enum
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .composer import ComposedInstance, ElimCobipartiteInstance, compose, random_instance, verify_or_property
from .errors import CapacityError, FormatError, ValidationError
from .exact import BRUTEFORCE_CAP, DP_CAP, treewidth_bruteforce, treewidth_dp
from .kernel import Outcome, kernelize, size_bound
from .vc import VC_CAP, VcInstance, approx_vertex_cover, min_vertex_cover


class ExitStatus(enum.IntEnum):
    OK = 0  # success, or a yes answer
    NO = 1
    USAGE = 2
    CAPACITY = 3
    VALIDATION = 4


class _UsageError(Exception):
    pass


def _report(key: str, value) -> None:
    if isinstance(value, (list, tuple)):
        value = " ".join(str(v) for v in value)
    print(f"{key} {value}")


def _verbose(args, msg: str) -> None:
    if args.verbose:
        print(msg, file=sys.stderr)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise _UsageError(f"no such file: {path}") from None


def _instance_paths(path: str) -> tuple[str, str]:
    """``foo.gr`` / ``foo.ann`` / ``foo`` all name the pair ``foo.gr`` + ``foo.ann``."""
    p = Path(path)
    if p.suffix in (".gr", ".ann"):
        p = p.with_suffix("")
    return str(p) + ".gr", str(p) + ".ann"


def _load_instance(path: str):
    gr, ann = _instance_paths(path)
    return formats.read_instance(_read_text(gr), _read_text(ann))


def _write_pair(prefix: str, graph_text: str, ann_text: str) -> tuple[str, str]:
    gr, ann = _instance_paths(prefix)
    Path(gr).write_text(graph_text)
    Path(ann).write_text(ann_text)
    return gr, ann


def cmd_treewidth(args) -> int:
    G = formats.read_graph(_read_text(args.graph))
    if args.method == "bruteforce":
        res = treewidth_bruteforce(G, args.cap or BRUTEFORCE_CAP)
    else:
        res = treewidth_dp(G, args.cap or DP_CAP)
    _report("vertices", G.n)
    _report("edges", G.m)
    _report("method", args.method)
    _report("treewidth", res.treewidth)
    _report("witness", [v + 1 for v in res.witness])
    if args.k is not None:
        yes = res.treewidth <= args.k
        _report("k", args.k)
        _report("decision", "yes" if yes else "no")
        return ExitStatus.OK if yes else ExitStatus.NO
    return ExitStatus.OK


def cmd_kernelize(args) -> int:
    graph_text = _read_text(args.graph)
    inst = formats.read_instance(graph_text, _read_text(args.cover))
    if not isinstance(inst, VcInstance):
        raise ValidationError("cover-section", "cover file must contain an 's cover' section")
    k = args.k if args.k is not None else inst.k
    result = kernelize(inst, k)
    bound = size_bound(len(inst.cover))
    _report("original_vertices", inst.graph.n)
    _report("cover_size", len(inst.cover))
    _report("bound", bound)
    _report("steps", len(result.trace))
    _report("isolated_steps", sum(s.rule == "isolated" for s in result.trace))
    _report("expansion_steps", sum(s.rule == "expansion" for s in result.trace))
    _report("outcome", result.outcome.value)
    _report("delta_max", result.delta_max)
    if args.trace:
        Path(args.trace).write_text(formats.write_trace(result))
        _report("trace", args.trace)
    if args.figure:
        from .plotting import plot_kernel_trace

        plot_kernel_trace(result, len(inst.cover), args.figure)
        _report("figure", args.figure)
    if result.outcome is Outcome.NO_INSTANCE:
        _report("decision", "no")
        return ExitStatus.NO
    reduced = result.reduced
    _report("final_vertices", reduced.graph.n)
    _report("within_bound", "yes" if reduced.graph.n <= bound else "no")
    prefix = args.out or str(Path(args.graph).with_suffix("")) + ".kernel"
    kept = "kept " + " ".join(str(v + 1) for v in result.kept)
    gr, ann = _write_pair(
        prefix,
        formats.write_graph(reduced.graph, (kept, f"delta_max {result.delta_max}")),
        formats.write_annotation(reduced),
    )
    _report("reduced_graph", gr)
    _report("reduced_cover", ann)
    if args.compact:
        data = formats.export_compact(reduced)
        Path(args.compact).write_bytes(data)
        _report("compact", args.compact)
        _report("compact_bytes", len(data))
    _verbose(args, f"kernel: {inst.graph.n} -> {reduced.graph.n} vertices (bound {bound}), delta_max {result.delta_max}")
    return ExitStatus.OK


def cmd_compose(args) -> int:
    inputs = []
    for path in args.instances:
        inst = _load_instance(path)
        if not isinstance(inst, ElimCobipartiteInstance):
            raise ValidationError("instance-type", f"{path} is not a cobipartite elimination instance")
        inputs.append(inst)
    c = compose(inputs)
    _report("inputs", len(inputs))
    _report("r", c.r)
    _report("n", c.n)
    _report("k", c.k)
    _report("k_prime", c.k_prime)
    _report("vertices", c.graph.n)
    _report("edges", c.graph.m)
    _report("side_A", len(c.A_prime))
    _report("side_B", len(c.B_prime))
    for name in ("A", "B", "C", "D", "X"):
        _report(f"group_{name}", [len(g) for g in c.groups[name]])
    dup = c.duplicated()
    _report("duplicated", [f"{i + 1},{j + 1}={c.sources[i][j] + 1}" for i, j in dup] if dup else "none")
    prefix = args.out or "composed"
    gr, ann = _write_pair(prefix, *formats.write_instance(c, (f"composed from {len(inputs)} inputs",)))
    _report("composed_graph", gr)
    _report("composed_annotation", ann)
    if args.figure:
        from .plotting import plot_composed_adjacency

        plot_composed_adjacency(c, args.figure)
        _report("figure", args.figure)
    return ExitStatus.OK


def cmd_verify(args) -> int:
    c = _load_instance(args.composed)
    if not isinstance(c, ComposedInstance):
        raise ValidationError("instance-type", f"{args.composed} is not a composed instance")
    inputs = []
    for path in args.instances:
        inst = _load_instance(path)
        if not isinstance(inst, ElimCobipartiteInstance):
            raise ValidationError("instance-type", f"{path} is not a cobipartite elimination instance")
        inputs.append(inst)
    expected = compose(inputs)
    if expected.graph != c.graph or expected.sources != c.sources or expected.k_prime != c.k_prime:
        raise ValidationError("matches-inputs", "composed file is not the composition of the given inputs")
    try:
        rep = verify_or_property(c, inputs, args.mode, args.cap or DP_CAP)
    except CapacityError as exc:
        print(f"error {exc}", file=sys.stderr)
        print("hint rerun with --mode canonical", file=sys.stderr)
        return ExitStatus.CAPACITY
    _report("method", rep.method)
    _report("input_treewidth", rep.input_treewidth)
    _report("input_yes", ["yes" if y else "no" for y in rep.input_yes])
    _report("composed_value", rep.composed_value)
    _report("composed_yes", "yes" if rep.composed_yes else "no")
    _report("or_holds", "yes" if rep.holds else "no")
    return ExitStatus.OK if rep.holds else ExitStatus.NO


def cmd_generate(args) -> int:
    if args.n < 2 or args.n % 2 or args.k < 1 or 2 * args.k >= args.n or args.count < 0:
        raise _UsageError("need even n >= 2, 1 <= k < n/2 and count >= 0")
    if not 0.0 <= args.p <= 1.0:
        raise _UsageError("p must lie in [0, 1]")
    os.makedirs(args.out_dir, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        inst = random_instance(args.n, args.k, seed, args.p)
        stem = os.path.join(args.out_dir, f"inst_{i:03d}")
        gr, _ = _write_pair(stem, *formats.write_instance(inst, (f"seed {seed} p {args.p}",)))
        _report("instance", gr)
    _report("count", args.count)
    return ExitStatus.OK


def cmd_vc(args) -> int:
    G = formats.read_graph(_read_text(args.graph))
    if args.approx:
        X = approx_vertex_cover(G)
    else:
        X = min_vertex_cover(G, args.cap or VC_CAP)
    out = args.out or str(Path(args.graph).with_suffix("")) + ".cover"
    label = "approximate (at most twice the minimum)" if args.approx else "minimum"
    Path(out).write_text(formats.write_annotation(VcInstance(G, X), (f"{label} vertex cover",)))
    _report("vertices", G.n)
    _report("cover_size", len(X))
    _report("exact", "no" if args.approx else "yes")
    _report("cover", [v + 1 for v in sorted(X)])
    _report("cover_file", out)
    return ExitStatus.OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twkernel", description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", action="store_true", help="human-readable summary on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("treewidth", help="exact treewidth with a witness order")
    p.add_argument("graph")
    p.add_argument("--method", choices=("dp", "bruteforce"), default="dp")
    p.add_argument("--k", type=int)
    p.add_argument("--cap", type=int, help="override the method's vertex cap")
    p.set_defaults(func=cmd_treewidth)

    p = sub.add_parser("kernelize", help="reduce to at most |X| + 2 C(|X|,2) vertices")
    p.add_argument("graph")
    p.add_argument("cover", help="annotation file with an 's cover' section")
    p.add_argument("--k", type=int)
    p.add_argument("--out", help="prefix for the reduced .gr/.ann pair")
    p.add_argument("--trace")
    p.add_argument("--compact", help="write the bit-packed export here")
    p.add_argument("--figure", help="plot the reduction trace to this image")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("compose", help="OR-compose cobipartite instances")
    p.add_argument("instances", nargs="+")
    p.add_argument("--out", help="prefix for the composed .gr/.ann pair (default: composed)")
    p.add_argument("--figure", help="plot the composed adjacency matrix to this image")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="check the OR property of a composition")
    p.add_argument("composed")
    p.add_argument("instances", nargs="+")
    p.add_argument("--mode", choices=("auto", "oracle", "canonical"), default="auto")
    p.add_argument("--cap", type=int, help="oracle vertex cap")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write random cobipartite instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--p", type=float, default=0.3, help="probability of each non-matching cross edge")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("vc", help="vertex cover for a graph file")
    p.add_argument("graph")
    p.add_argument("--out")
    p.add_argument("--approx", action="store_true")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_vc)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return int(args.func(args))
    except _UsageError as exc:
        print(f"error {exc}", file=sys.stderr)
        return ExitStatus.USAGE
    except CapacityError as exc:
        print(f"error {exc}", file=sys.stderr)
        return ExitStatus.CAPACITY
    except (FormatError, ValidationError) as exc:
        print(f"error {exc}", file=sys.stderr)
        return ExitStatus.VALIDATION


if __name__ == "__main__":
    sys.exit(main())
