"""Text formats for graphs, annotations and reduction traces, plus the compact kernel export.

Graph files (1-based ids, one edge per line, ``u < v``)::

    c optional comment
    p tw <n> <m>
    e <u> <v>

Annotation files hold sections, each header followed by a line of
space-separated 1-based ids (the line may be empty)::

    s cover
    s part A
    s part B
    s group <A|B|C|D|X> <i>

and single-line parameters ``s param <name> <value>``. Which sections are
present decides the instance type: groups mean a composed instance, parts a
cobipartite elimination instance, a cover a vertex-cover instance.

Trace files list one reduction step per line::

    t <step> <rule> <delta> <ids,...> <degrees,...> <vertices before>
    o <outcome> <delta_max> <final vertex count>

with ``-`` standing for an empty list.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Union

from .composer import (
    GROUPS,
    ComposedInstance,
    ElimCobipartiteInstance,
    composition_violations,
    grid_sources,
    instance_violations,
)
from .errors import FormatError, ValidationError
from .graph import Graph
from .kernel import KernelResult, Outcome, ReductionStep
from .vc import VcInstance, check_vc_instance

Instance = Union[VcInstance, ElimCobipartiteInstance, ComposedInstance]

COMPACT_MAGIC = b"TWVC"
COMPACT_HEADER = struct.Struct(">4sII")


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None


def write_graph(G: Graph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p tw {G.n} {G.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise FormatError("second header line", lineno)
            if len(tok) != 4 or tok[1] != "tw":
                raise FormatError(f"malformed header {line!r}, expected 'p tw <n> <m>'", lineno)
            n, m = _int(tok[2], lineno), _int(tok[3], lineno)
            if n < 0 or m < 0:
                raise FormatError("negative size in header", lineno)
        elif tok[0] == "e":
            if n is None:
                raise FormatError("edge before header", lineno)
            if len(tok) != 3:
                raise FormatError(f"malformed edge line {line!r}", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"vertex id out of range [1, {n}]", lineno)
            if u == v:
                raise FormatError("self-loop", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})", lineno)
            seen[key] = lineno
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'p tw' header")
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


@dataclass
class Annotation:
    cover: Optional[list[int]] = None
    parts: dict[str, list[int]] = field(default_factory=dict)
    groups: dict[tuple[str, int], list[int]] = field(default_factory=dict)
    params: dict[str, int] = field(default_factory=dict)


def _ids_line(ids) -> str:
    return " ".join(str(v + 1) for v in sorted(ids))


def parse_annotation(text: str) -> Annotation:
    ann = Annotation()
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        line = lines[i].strip()
        i += 1
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] != "s" or len(tok) < 2:
            raise FormatError(f"expected a section header, got {line!r}", lineno)
        kind = tok[1]
        if kind == "param":
            if len(tok) != 4:
                raise FormatError("expected 's param <name> <value>'", lineno)
            if tok[2] in ann.params:
                raise FormatError(f"duplicate parameter {tok[2]!r}", lineno)
            ann.params[tok[2]] = _int(tok[3], lineno)
            continue
        ids_lineno = i + 1
        body = lines[i].strip() if i < len(lines) else ""
        i += 1
        ids = [_int(t, ids_lineno) - 1 for t in body.split()]
        if len(set(ids)) != len(ids):
            raise FormatError("repeated id in section", ids_lineno)
        if kind == "cover" and len(tok) == 2:
            if ann.cover is not None:
                raise FormatError("duplicate cover section", lineno)
            ann.cover = ids
        elif kind == "part" and len(tok) == 3 and tok[2] in ("A", "B"):
            if tok[2] in ann.parts:
                raise FormatError(f"duplicate part {tok[2]}", lineno)
            ann.parts[tok[2]] = ids
        elif kind == "group" and len(tok) == 4 and tok[2] in GROUPS:
            key = (tok[2], _int(tok[3], lineno) - 1)
            if key in ann.groups:
                raise FormatError(f"duplicate group {tok[2]} {tok[3]}", lineno)
            ann.groups[key] = ids
        else:
            raise FormatError(f"unknown section {line!r}", lineno)
    return ann


def _check_ids(ids, n: int, name: str) -> None:
    bad = [v + 1 for v in ids if not 0 <= v < n]
    if bad:
        raise ValidationError("ids-in-range", f"{name} ids {bad} outside [1, {n}]")


def read_instance(graph_text: str, annotation_text: str) -> Instance:
    """Parse and validate an instance; the section set picks its type."""
    G = read_graph(graph_text)
    ann = parse_annotation(annotation_text)
    if ann.groups:
        return _composed_from(G, ann)
    if ann.parts:
        if set(ann.parts) != {"A", "B"}:
            raise ValidationError("partition", "both 's part A' and 's part B' are required")
        if "k" not in ann.params:
            raise ValidationError("k-present", "missing 's param k'")
        for name, ids in ann.parts.items():
            _check_ids(ids, G.n, f"part {name}")
        inst = ElimCobipartiteInstance(G, frozenset(ann.parts["A"]), frozenset(ann.parts["B"]), ann.params["k"])
        bad = instance_violations(inst)
        if bad:
            raise ValidationError(bad[0], "cobipartite instance rejected")
        return inst
    if ann.cover is not None:
        _check_ids(ann.cover, G.n, "cover")
        inst = VcInstance(G, frozenset(ann.cover), ann.params.get("k"))
        check_vc_instance(inst)
        return inst
    raise ValidationError("sections", "annotation declares no cover, parts or groups")


def _composed_from(G: Graph, ann: Annotation) -> ComposedInstance:
    for key in ("k", "t"):
        if key not in ann.params:
            raise ValidationError(f"{key}-present", f"missing 's param {key}'")
    r = 1 + max(i for _, i in ann.groups)
    groups = {}
    for name in GROUPS:
        grp = []
        for i in range(r):
            if (name, i) not in ann.groups:
                raise ValidationError("groups-complete", f"missing group {name} {i + 1}")
            ids = ann.groups[(name, i)]
            _check_ids(ids, G.n, f"group {name} {i + 1}")
            grp.append(tuple(sorted(ids)))
        groups[name] = tuple(grp)
    n = len(groups["A"][0])
    t = ann.params["t"]
    if t < 1 or grid_sources(t)[0] != r:
        raise ValidationError("sources", f"t={t} does not fill an {r}x{r} grid")
    k = ann.params["k"]
    k_prime = ann.params.get("kprime", 3 * r * n + n // 2 + k)
    c = ComposedInstance(G, r, n, k, k_prime, groups, grid_sources(t)[1])
    bad = composition_violations(c)
    if bad:
        raise ValidationError(bad[0], "composed instance rejected")
    return c


def write_annotation(inst: Instance, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    if isinstance(inst, VcInstance):
        lines += ["s cover", _ids_line(inst.cover)]
        if inst.k is not None:
            lines.append(f"s param k {inst.k}")
    elif isinstance(inst, ElimCobipartiteInstance):
        lines += ["s part A", _ids_line(inst.A), "s part B", _ids_line(inst.B), f"s param k {inst.k}"]
    elif isinstance(inst, ComposedInstance):
        for name in GROUPS:
            for i, grp in enumerate(inst.groups[name]):
                lines += [f"s group {name} {i + 1}", _ids_line(grp)]
        t = 1 + max(src for row in inst.sources for src in row)
        lines += [
            f"s param k {inst.k}",
            f"s param kprime {inst.k_prime}",
            f"s param n {inst.n}",
            f"s param r {inst.r}",
            f"s param t {t}",
        ]
    else:
        raise TypeError(f"cannot annotate {type(inst).__name__}")
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, comments: tuple[str, ...] = ()) -> tuple[str, str]:
    return write_graph(inst.graph, comments), write_annotation(inst)


def _ids_field(values) -> str:
    return ",".join(str(v) for v in values) if values else "-"


def _parse_field(tok: str, lineno: int) -> tuple[int, ...]:
    if tok == "-":
        return ()
    return tuple(_int(t, lineno) for t in tok.split(","))


def write_trace(result: KernelResult) -> str:
    lines = [f"c kernelization trace, original vertex count {result.original_n}"]
    for step, s in enumerate(result.trace, 1):
        lines.append(
            f"t {step} {s.rule} {s.delta} {_ids_field([v + 1 for v in s.removed])} "
            f"{_ids_field(s.degrees)} {s.vertices_before}"
        )
    lines.append(f"o {result.outcome.value} {result.delta_max} {result.final_n}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Trace:
    steps: tuple[ReductionStep, ...]
    outcome: Outcome
    delta_max: int
    final_n: int


def read_trace(text: str) -> Trace:
    steps = []
    end = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "t" and len(tok) == 7:
            if _int(tok[1], lineno) != len(steps) + 1:
                raise FormatError("steps out of sequence", lineno)
            removed = tuple(v - 1 for v in _parse_field(tok[4], lineno))
            steps.append(
                ReductionStep(
                    removed=removed,
                    rule=tok[2],
                    degrees=_parse_field(tok[5], lineno),
                    delta=_int(tok[3], lineno),
                    vertices_before=_int(tok[6], lineno),
                )
            )
        elif tok[0] == "o" and len(tok) == 4:
            try:
                outcome = Outcome(tok[1])
            except ValueError:
                raise FormatError(f"unknown outcome {tok[1]!r}", lineno) from None
            end = (outcome, _int(tok[2], lineno), _int(tok[3], lineno))
        else:
            raise FormatError(f"malformed trace line {line!r}", lineno)
    if end is None:
        raise FormatError("missing outcome line")
    return Trace(tuple(steps), *end)


def canonical_vc_form(inst: VcInstance) -> VcInstance:
    """Relabel so the cover comes first, each side in ascending id order."""
    X = sorted(inst.cover)
    rest = [v for v in range(inst.graph.n) if v not in inst.cover]
    new = {old: i for i, old in enumerate(X + rest)}
    edges = [(new[u], new[v]) for u, v in inst.graph.edges()]
    return VcInstance(Graph.from_edges(inst.graph.n, edges), frozenset(range(len(X))), inst.k)


def _pack(bits: list[int]) -> bytes:
    out = bytearray((len(bits) + 7) // 8)
    for i, b in enumerate(bits):
        if b:
            out[i // 8] |= 0x80 >> (i % 8)
    return bytes(out)


def _unpack(data: bytes, count: int) -> list[int]:
    return [(data[i // 8] >> (7 - i % 8)) & 1 for i in range(count)]


def export_compact(inst: VcInstance) -> bytes:
    """Adjacency bits of ``G[X]`` then one ``|X|``-bit row per outside vertex.

    Layout: 12-byte header (``b"TWVC"``, ``|X|`` and the outside-vertex count
    as big-endian uint32), the ``C(|X|, 2)`` upper-triangle bits of ``G[X]``
    over sorted ``X`` padded to whole bytes, then each outside vertex (by
    ascending id) as an ``|X|``-bit row padded to whole bytes. Bits are
    packed most significant first. The edges of ``G`` are exactly represented
    because outside vertices are pairwise non-adjacent.
    """
    G = inst.graph
    X = sorted(inst.cover)
    rest = [v for v in range(G.n) if v not in inst.cover]
    out = [COMPACT_HEADER.pack(COMPACT_MAGIC, len(X), len(rest))]
    out.append(_pack([int(G.has_edge(X[i], X[j])) for i in range(len(X)) for j in range(i + 1, len(X))]))
    for v in rest:
        out.append(_pack([int(G.has_edge(v, x)) for x in X]))
    return b"".join(out)


def compact_size_bound(cover_size: int, outside: Optional[int] = None) -> int:
    """Byte bound for an export; ``outside`` defaults to the kernel's worst case."""
    if outside is None:
        outside = 2 * comb(cover_size, 2)
    return COMPACT_HEADER.size + (comb(cover_size, 2) + 7) // 8 + outside * ((cover_size + 7) // 8)


def decode_compact(data: bytes) -> VcInstance:
    """Inverse of :func:`export_compact`, in canonical labelling (cover first)."""
    if len(data) < COMPACT_HEADER.size:
        raise FormatError("compact export shorter than its header")
    magic, x, o = COMPACT_HEADER.unpack_from(data)
    if magic != COMPACT_MAGIC:
        raise FormatError("bad compact export magic")
    pos = COMPACT_HEADER.size
    mat_len = (comb(x, 2) + 7) // 8
    row_len = (x + 7) // 8
    if len(data) != pos + mat_len + o * row_len:
        raise FormatError("compact export length does not match its header")
    bits = _unpack(data[pos : pos + mat_len], comb(x, 2))
    pos += mat_len
    edges = []
    idx = 0
    for i in range(x):
        for j in range(i + 1, x):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    for r in range(o):
        row = _unpack(data[pos : pos + row_len], x)
        pos += row_len
        edges.extend((x + r, j) for j in range(x) if row[j])
    return VcInstance(Graph.from_edges(x + o, edges), frozenset(range(x)))
