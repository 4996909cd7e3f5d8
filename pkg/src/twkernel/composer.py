"""OR-composition of cobipartite elimination instances into one treewidth instance.

Source instances ``(G, A, B, k)`` are cobipartite with cliques ``A`` and ``B``
of equal even size ``n``, ``k < n/2`` and a perfect matching from ``A`` into
``B``; the question is whether ``G`` has an elimination order of cost at most
``n + k``. ``t = r*r`` such instances are laid out on an ``r x r`` grid and
embedded into a single cobipartite graph ``G'`` of ``9rn/2`` vertices that has
an order of cost at most ``k' = 3rn + n/2 + k`` iff some input is a yes.

Vertex ids in ``G'`` are laid out group by group: ``A'_1..A'_r``,
``C'_1..C'_r``, ``B'_1..B'_r``, ``D'_1..D'_r`` (each of size ``n``), then
blankers ``X'_1..X'_r`` (each of size ``n/2``). Group indices are 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import isqrt
from typing import Optional, Sequence

from .elim import CostReport, elimination_cost, min_cost_clique_last, min_cost_clique_last_order
from .errors import CapacityError, ValidationError
from .exact import DP_CAP, treewidth_dp
from .graph import Graph, is_clique, maximum_bipartite_matching

GROUPS = ("A", "C", "B", "D", "X")


@dataclass(frozen=True)
class ElimCobipartiteInstance:
    graph: Graph
    A: frozenset[int]
    B: frozenset[int]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))

    @property
    def n(self) -> int:
        return len(self.A)

    def a_labels(self) -> list[int]:
        """``a^1..a^n`` as sorted vertex ids."""
        return sorted(self.A)

    def b_labels(self) -> list[int]:
        return sorted(self.B)


@dataclass(frozen=True)
class ComposedInstance:
    graph: Graph
    r: int
    n: int
    k: int  # common k of the inputs
    k_prime: int
    groups: dict[str, tuple[tuple[int, ...], ...]]
    sources: tuple[tuple[int, ...], ...]  # sources[i][j]: index of the input embedded at (i, j)

    def group(self, name: str, i: int) -> tuple[int, ...]:
        return self.groups[name][i]

    @property
    def A_prime(self) -> frozenset[int]:
        return frozenset(v for name in "AC" for grp in self.groups[name] for v in grp)

    @property
    def B_prime(self) -> frozenset[int]:
        return frozenset(v for name in "BDX" for grp in self.groups[name] for v in grp)

    @property
    def offset(self) -> int:
        """Cost gap between canonical orders of ``G'`` and B-first orders of an input."""
        return 3 * self.r * self.n + self.n // 2 - self.n

    def duplicated(self) -> list[tuple[int, int]]:
        """Grid cells ``(i, j)`` filled by repeating an earlier input."""
        seen = set()
        out = []
        for i in range(self.r):
            for j in range(self.r):
                src = self.sources[i][j]
                if src in seen:
                    out.append((i, j))
                seen.add(src)
        return out


def instance_violations(inst: ElimCobipartiteInstance) -> list[str]:
    G = inst.graph
    A, B = set(inst.A), set(inst.B)
    out = []
    if A & B or A | B != set(range(G.n)):
        out.append("partition")
    if not is_clique(G, [v for v in A if 0 <= v < G.n]) or not is_clique(G, [v for v in B if 0 <= v < G.n]):
        out.append("cliques")
    if len(A) != len(B):
        out.append("equal-sides")
    if len(A) % 2:
        out.append("even-side")
    if not inst.k >= 1:
        out.append("k-positive")
    if not 2 * inst.k < len(A):
        out.append("k-below-half")
    if "partition" not in out and "equal-sides" not in out:
        cross = [(a, b) for a in A for b in G.adjacency[a] if b in B]
        if len(maximum_bipartite_matching(A, B, cross)) != len(A):
            out.append("perfect-matching")
    return out


def validate_instance(inst: ElimCobipartiteInstance) -> bool:
    return not instance_violations(inst)


def random_instance(n: int, k: int, seed: int, p: float = 0.3) -> ElimCobipartiteInstance:
    """Random valid instance on ``A = 0..n-1``, ``B = n..2n-1``.

    Cross edges are the matching ``{i, n+i}`` plus every other pair with
    probability ``p``.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be a positive even integer, got {n}")
    if not 1 <= k or not 2 * k < n:
        raise ValueError(f"k must satisfy 1 <= k < n/2, got k={k}, n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = list(combinations(range(n), 2)) + list(combinations(range(n, 2 * n), 2))
    for a in range(n):
        for b in range(n):
            if a == b or rng.random() < p:
                edges.append((a, n + b))
    return ElimCobipartiteInstance(Graph.from_edges(2 * n, edges), frozenset(range(n)), frozenset(range(n, 2 * n)), k)


def grid_sources(t: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Side ``r`` of the smallest square grid holding ``t`` inputs, with cyclic fill."""
    if t < 1:
        raise ValueError("need at least one input")
    r = isqrt(t)
    if r * r < t:
        r += 1
    return r, tuple(tuple((i * r + j) % t for j in range(r)) for i in range(r))


def _layout(r: int, n: int) -> dict[str, tuple[tuple[int, ...], ...]]:
    groups = {}
    base = 0
    for name in GROUPS:
        size = n // 2 if name == "X" else n
        groups[name] = tuple(tuple(range(base + i * size, base + (i + 1) * size)) for i in range(r))
        base += r * size
    return groups


def compose(inputs: Sequence[ElimCobipartiteInstance]) -> ComposedInstance:
    inputs = list(inputs)
    if not inputs:
        raise ValidationError("nonempty-inputs", "no instances to compose")
    for idx, inst in enumerate(inputs):
        bad = instance_violations(inst)
        if bad:
            raise ValidationError(bad[0], f"input {idx} is not a valid instance")
    n, k = inputs[0].n, inputs[0].k
    for idx, inst in enumerate(inputs):
        if inst.n != n:
            raise ValidationError("uniform-n", f"input {idx} has n={inst.n}, expected {n}")
        if inst.k != k:
            raise ValidationError("uniform-k", f"input {idx} has k={inst.k}, expected {k}")
    r, sources = grid_sources(len(inputs))
    groups = _layout(r, n)
    A = groups["A"]
    B = groups["B"]
    edges: list[tuple[int, int]] = []
    side_a = [v for name in "AC" for grp in groups[name] for v in grp]
    side_b = [v for name in "BDX" for grp in groups[name] for v in grp]
    edges.extend(combinations(side_a, 2))
    edges.extend(combinations(side_b, 2))
    for i in range(r):
        for j in range(r):
            inst = inputs[sources[i][j]]
            a_lab, b_lab = inst.a_labels(), inst.b_labels()
            b_pos = {b: q for q, b in enumerate(b_lab)}
            for p, a in enumerate(a_lab):
                for b in inst.graph.adjacency[a]:
                    if b in b_pos:
                        edges.append((A[i][p], B[j][b_pos[b]]))
    all_a = [v for grp in A for v in grp]
    for i in range(r):
        edges.extend((c, b) for c in groups["C"][i] for b in B[i])
        edges.extend((d, a) for d in groups["D"][i] for a in all_a)
        edges.extend((d, c) for d in groups["D"][i] for c in groups["C"][i])
        edges.extend((x, a) for x in groups["X"][i] for a in A[i])
    total = 9 * r * n // 2
    c = ComposedInstance(
        Graph.from_edges(total, edges),
        r,
        n,
        k,
        3 * r * n + n // 2 + k,
        groups,
        sources,
    )
    bad = composition_violations(c, inputs)
    if bad:
        raise AssertionError(f"composition broke its own invariants: {bad}")
    return c


def composition_violations(
    c: ComposedInstance, inputs: Optional[Sequence[ElimCobipartiteInstance]] = None
) -> list[str]:
    """Names of violated structural invariants; ``inputs`` adds the embedding checks."""
    G, r, n = c.graph, c.r, c.n
    out = []
    if n < 2 or n % 2 or r < 1:
        return ["shape"]
    if _layout(r, n) != c.groups:
        out.append("layout")
        return out
    A_p, B_p = c.A_prime, c.B_prime
    if G.n != 9 * r * n // 2:
        out.append("vertex-count")
    if len(A_p) != 2 * r * n or len(B_p) != 2 * r * n + r * n // 2:
        out.append("side-sizes")
    if c.k_prime != 3 * r * n + n // 2 + c.k or not (1 <= c.k and 2 * c.k < n):
        out.append("k-prime")
    if not is_clique(G, A_p) or not is_clique(G, B_p):
        out.append("cliques")
    A, B, C, D, X = (c.groups[name] for name in "ABCDX")
    all_a = {v for grp in A for v in grp}
    allowed: dict[int, set[int]] = {v: set() for v in B_p}
    for i in range(r):
        for b in B[i]:
            allowed[b] = set(all_a) | set(C[i])
        for d in D[i]:
            allowed[d] = set(all_a) | set(C[i])
        for x in X[i]:
            allowed[x] = set(A[i])
    required: dict[int, set[int]] = {v: set() for v in B_p}
    for i in range(r):
        for b in B[i]:
            required[b] = set(C[i])
        for d in D[i]:
            required[d] = set(all_a) | set(C[i])
        for x in X[i]:
            required[x] = set(A[i])
    cross_ok = True
    for v in B_p:
        cross = {u for u in G.adjacency[v] if u in A_p}
        if not required[v] <= cross <= allowed[v]:
            cross_ok = False
    if not cross_ok:
        out.append("cross-adjacency")
    for i in range(r):
        for j in range(r):
            cross = [(a, b) for a in A[i] for b in G.adjacency[a] if b in set(B[j])]
            if len(maximum_bipartite_matching(A[i], B[j], cross)) != n:
                out.append("pair-matching")
                break
        else:
            continue
        break
    if inputs is not None:
        t = len(inputs)
        if grid_sources(t) != (r, c.sources):
            out.append("sources")
        else:
            for i in range(r):
                for j in range(r):
                    if not _embedding_matches(c, inputs[c.sources[i][j]], i, j):
                        out.append("embedding")
                        return out
        if any(inst.n != n or inst.k != c.k for inst in inputs):
            out.append("uniform-inputs")
    return out


def _embedding_matches(c: ComposedInstance, inst: ElimCobipartiteInstance, i: int, j: int) -> bool:
    """``G'[A'_i + B'_j]`` equals ``inst`` under the index-preserving map."""
    Ai, Bj = c.groups["A"][i], c.groups["B"][j]
    a_lab, b_lab = inst.a_labels(), inst.b_labels()
    G, H = c.graph, inst.graph
    if len(a_lab) != len(Ai):
        return False
    for p in range(c.n):
        for q in range(c.n):
            if G.has_edge(Ai[p], Bj[q]) != H.has_edge(a_lab[p], b_lab[q]):
                return False
    return is_clique(H, a_lab) and is_clique(H, b_lab)


def canonical_order(
    c: ComposedInstance,
    i_star: int,
    j_star: int,
    inner: Sequence[int],
    blanker_sequence: Optional[Sequence[int]] = None,
) -> tuple[int, ...]:
    """An ``(i_star, j_star)``-canonical elimination order of ``G'``.

    Blanker blocks ``X'_i`` (``i != i_star``) in ``blanker_sequence`` order,
    then ``B'_{j_star}`` in ``inner`` order, ``D'_{j_star}``, ``X'_{i_star}``,
    the remaining ``B'_j, D'_j`` blocks by ascending ``j``, and finally
    ``A' + C'`` by ascending id.
    """
    r = c.r
    if not (0 <= i_star < r and 0 <= j_star < r):
        raise IndexError(f"indices ({i_star}, {j_star}) out of range for r={r}")
    others = [i for i in range(r) if i != i_star]
    if blanker_sequence is None:
        blanker_sequence = others
    if sorted(blanker_sequence) != others:
        raise ValueError("blanker_sequence must be a permutation of the indices other than i_star")
    Bj = c.group("B", j_star)
    if sorted(inner) != sorted(Bj):
        raise ValueError("inner must be a permutation of B'_{j_star}")
    order: list[int] = []
    for i in blanker_sequence:
        order.extend(c.group("X", i))
    order.extend(inner)
    order.extend(c.group("D", j_star))
    order.extend(c.group("X", i_star))
    for j in range(r):
        if j != j_star:
            order.extend(c.group("B", j))
            order.extend(c.group("D", j))
    order.extend(sorted(c.A_prime))
    return tuple(order)


def _check_b_first(inst: ElimCobipartiteInstance, pi: Sequence[int]) -> None:
    if sorted(pi) != list(range(inst.graph.n)):
        raise ValueError("order is not a permutation of the input's vertices")
    seen_a = False
    for v in pi:
        if v in inst.A:
            seen_a = True
        elif seen_a:
            raise ValueError("order must eliminate all of B before any vertex of A")


def agreeing_inner(c: ComposedInstance, inst: ElimCobipartiteInstance, j_star: int, pi: Sequence[int]) -> list[int]:
    """The order on ``B'_{j_star}`` matching the order ``pi`` takes on the input's ``B``."""
    b_pos = {b: q for q, b in enumerate(inst.b_labels())}
    Bj = c.group("B", j_star)
    return [Bj[b_pos[v]] for v in pi if v in b_pos]


def check_cost_identity(
    c: ComposedInstance,
    inst: ElimCobipartiteInstance,
    i_star: int,
    j_star: int,
    pi_inner: Sequence[int],
    blanker_sequence: Optional[Sequence[int]] = None,
) -> tuple[int, int]:
    """Both sides of ``cost(G', canonical) == offset + cost(input, pi_inner)``.

    ``pi_inner`` is a B-first order of ``inst``, which must be the input
    embedded at ``(i_star, j_star)``.
    """
    lhs, rhs, _ = cost_identity_report(c, inst, i_star, j_star, pi_inner, blanker_sequence)
    return lhs, rhs


def cost_identity_report(c, inst, i_star, j_star, pi_inner, blanker_sequence=None):
    """Like :func:`check_cost_identity` but also returns the canonical order's :class:`CostReport`."""
    _check_b_first(inst, pi_inner)
    if not (0 <= i_star < c.r and 0 <= j_star < c.r):
        raise IndexError(f"indices ({i_star}, {j_star}) out of range for r={c.r}")
    if not _embedding_matches(c, inst, i_star, j_star):
        raise ValueError(f"instance is not the one embedded at ({i_star}, {j_star})")
    order = canonical_order(c, i_star, j_star, agreeing_inner(c, inst, j_star, pi_inner), blanker_sequence)
    report = elimination_cost(c.graph, order)
    rhs = c.offset + elimination_cost(inst.graph, pi_inner).max_cost
    return report.max_cost, rhs, report


def phase_maxima(c: ComposedInstance, i_star: int, j_star: int, report: CostReport) -> dict[str, int]:
    """Largest per-vertex cost in each phase of a canonical order.

    Phases: ``blankers`` (before ``B'_{j_star}``), ``inner`` (``B'_{j_star}``),
    ``dummies`` (``D'_{j_star} + X'_{i_star}``) and ``tail`` (everything after).
    """
    inner = set(c.group("B", j_star))
    middle = set(c.group("D", j_star)) | set(c.group("X", i_star))
    out = {"blankers": 0, "inner": 0, "dummies": 0, "tail": 0}
    phase = "blankers"
    for v, cost in report.per_vertex:
        if v in inner:
            phase = "inner"
        elif v in middle:
            phase = "dummies"
        elif phase != "blankers":
            phase = "tail"
        out[phase] = max(out[phase], cost)
    return out


def phase_caps(c: ComposedInstance) -> dict[str, int]:
    cap = 3 * c.r * c.n
    return {"blankers": cap, "dummies": cap + c.n // 2, "tail": cap}


def min_canonical_cost(c: ComposedInstance, inputs: Sequence[ElimCobipartiteInstance]) -> int:
    """Least cost of any canonical order of ``G'``, computed from the inputs alone."""
    best = {}
    for idx in {src for row in c.sources for src in row}:
        inst = inputs[idx]
        best[idx] = min_cost_clique_last(inst.graph, inst.A)
    return c.offset + min(best.values())


def best_canonical_order(
    c: ComposedInstance, inputs: Sequence[ElimCobipartiteInstance]
) -> tuple[int, tuple[int, ...]]:
    """A minimum-cost canonical order, built from the best input's optimal B-first order."""
    choice = None
    for i in range(c.r):
        for j in range(c.r):
            inst = inputs[c.sources[i][j]]
            cost, pi = min_cost_clique_last_order(inst.graph, inst.A)
            if choice is None or cost < choice[0]:
                choice = (cost, i, j, inst, pi)
    cost, i, j, inst, pi = choice
    order = canonical_order(c, i, j, agreeing_inner(c, inst, j, pi))
    return c.offset + cost, order


@dataclass(frozen=True)
class OrReport:
    input_yes: tuple[bool, ...]
    input_treewidth: tuple[int, ...]
    composed_yes: bool
    composed_value: int  # tw(G') for the oracle, the least canonical cost for the surrogate
    method: str  # "oracle" or "canonical"
    holds: bool


def verify_or_property(
    c: ComposedInstance,
    inputs: Sequence[ElimCobipartiteInstance],
    mode: str = "auto",
    dp_cap: int = DP_CAP,
) -> OrReport:
    """Check that ``G'`` is a yes-instance exactly when some input is.

    ``mode`` is ``"oracle"`` (exact treewidth of ``G'``), ``"canonical"``
    (least canonical-order cost against ``k'``) or ``"auto"``, which uses the
    oracle whenever ``G'`` fits under ``dp_cap``.
    """
    if mode not in ("auto", "oracle", "canonical"):
        raise ValueError(f"unknown mode {mode!r}")
    tws = tuple(treewidth_dp(inst.graph, dp_cap).treewidth for inst in inputs)
    yes = tuple(tw <= c.n + c.k - 1 for tw in tws)
    used = {src for row in c.sources for src in row}
    any_yes = any(yes[i] for i in used)
    if mode == "auto":
        mode = "oracle" if c.graph.n <= dp_cap else "canonical"
    if mode == "oracle":
        if c.graph.n > dp_cap:
            raise CapacityError(
                f"composed graph has {c.graph.n} vertices, over the oracle cap {dp_cap}; use canonical mode"
            )
        value = treewidth_dp(c.graph, dp_cap).treewidth
        composed_yes = value <= c.k_prime - 1
    else:
        value = min_canonical_cost(c, inputs)
        composed_yes = value <= c.k_prime
    return OrReport(yes, tws, composed_yes, value, mode, composed_yes == any_yes)
