"""Quadratic-vertex kernel for treewidth parameterized by a vertex cover.

A *treewidth-invariant set* ``T`` is an independent set with the property that
eliminating all of it yields a minor of ``G - v`` for every ``v`` in ``T``.
Eliminating such a set changes the treewidth predictably::

    tw(G) == max(max degree over T, tw(G with T eliminated))

Two rules find these sets outside the cover ``X``. A vertex whose
neighborhood is a clique is one on its own. Otherwise a 2-expansion in the
bipartite graph between outside vertices and non-adjacent pairs of ``X``
supplies one. When neither applies, at most ``|X| + 2 * C(|X|, 2)`` vertices
remain.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .graph import (
    Graph,
    _from_sets,
    _kuhn,
    compose_maps,
    contract,
    delete_vertices,
    is_independent,
)
from .vc import VcInstance, check_vc_instance

Pair = tuple[int, int]


@dataclass(frozen=True)
class NonEdgeConnectionGraph:
    left: tuple[Pair, ...]
    right: tuple[int, ...]
    edges: frozenset[tuple[int, Pair]]

    def neighbors_of_right(self, v: int) -> set[Pair]:
        return {p for (u, p) in self.edges if u == v}

    def neighbors_of_left(self, pair: Pair) -> set[int]:
        return {u for (u, p) in self.edges if p == pair}


@dataclass(frozen=True)
class Expansion:
    S: frozenset[Pair]
    T: frozenset[int]
    f: dict[Pair, frozenset[int]] = field(default_factory=dict)


class Outcome(enum.Enum):
    REDUCED = "REDUCED"
    NO_INSTANCE = "NO_INSTANCE"


@dataclass(frozen=True)
class ReductionStep:
    removed: tuple[int, ...]  # original vertex ids
    rule: str  # "isolated" or "expansion"
    degrees: tuple[int, ...]
    delta: int
    vertices_before: int


@dataclass(frozen=True)
class KernelResult:
    outcome: Outcome
    reduced: Optional[VcInstance]
    delta_max: int
    trace: tuple[ReductionStep, ...]
    kept: tuple[int, ...]  # original id of each vertex of the reduced graph
    original_n: int

    @property
    def final_n(self) -> int:
        return self.reduced.graph.n if self.reduced is not None else 0


def size_bound(cover_size: int) -> int:
    return cover_size + 2 * comb(cover_size, 2)


def build_connection_graph(inst: VcInstance) -> NonEdgeConnectionGraph:
    check_vc_instance(inst)
    G = inst.graph
    X = sorted(inst.cover)
    left = tuple((p, q) for p, q in combinations(X, 2) if not G.has_edge(p, q))
    right = tuple(v for v in range(G.n) if v not in inst.cover)
    edges = frozenset(
        (v, (p, q))
        for v in right
        for (p, q) in left
        if p in G.adjacency[v] and q in G.adjacency[v]
    )
    return NonEdgeConnectionGraph(left, right, edges)


def find_expansion(H: NonEdgeConnectionGraph, q: int) -> Optional[Expansion]:
    """Find ``(S, T)`` with ``S = N_H(T)`` and each pair in ``S`` owning ``q`` private vertices of ``T``.

    Each pair is copied ``q`` times and the copies are matched into the right
    side. Starting from right vertices the matching leaves free, everything
    reachable by alternating paths forms ``T`` on the right and ``S`` on the
    left; the matched partners of the copies of ``s`` give ``f(s)``. Returns
    ``None`` when the matching covers every right vertex, which is always the
    case when ``|right| <= q * m``.
    """
    if q < 1:
        raise ValueError("q must be positive")
    right_adj: dict[int, list[Pair]] = {v: [] for v in H.right}
    for v, p in H.edges:
        right_adj[v].append(p)
    for v in right_adj:
        right_adj[v].sort()
    # match from the right side into pair copies (pair, c)
    copy_adj = {v: [(p, c) for p in right_adj[v] for c in range(q)] for v in H.right}
    match_right, match_copy = _kuhn(sorted(H.right), copy_adj)
    unmatched = [v for v in sorted(H.right) if v not in match_right]
    if not unmatched:
        return None

    T = set(unmatched)
    S: set[Pair] = set()
    frontier = list(unmatched)
    while frontier:
        v = frontier.pop()
        for p in right_adj[v]:
            if p in S:
                continue
            S.add(p)
            # every copy of p is matched, otherwise an augmenting path would exist
            for c in range(q):
                partner = match_copy[(p, c)]
                if partner not in T:
                    T.add(partner)
                    frontier.append(partner)
    f = {p: frozenset(match_copy[(p, c)] for c in range(q)) for p in S}
    return Expansion(frozenset(S), frozenset(T), f)


def verify_expansion(H: NonEdgeConnectionGraph, q: int, e: Expansion) -> bool:
    T = set(e.T)
    if not T <= set(H.right) or not set(e.S) <= set(H.left):
        return False
    nh_t = {p for (v, p) in H.edges if v in T}
    if nh_t != set(e.S):
        return False
    if set(e.f) != set(e.S):
        return False
    used: set[int] = set()
    for s in e.S:
        image = set(e.f[s])
        if len(image) != q:
            return False
        if not image <= (H.neighbors_of_left(s) & T):
            return False
        if image & used:
            return False
        used |= image
    return True


def find_invariant_set(inst: VcInstance) -> Optional[tuple[frozenset[int], str, Optional[Expansion]]]:
    """Apply the isolated-vertex rule, then the 2-expansion rule.

    Returns ``(T, rule, expansion)`` or ``None`` when neither rule applies.
    """
    H = build_connection_graph(inst)
    touched = {v for v, _ in H.edges}
    for v in H.right:
        if v not in touched:
            return frozenset([v]), "isolated", None
    e = find_expansion(H, 2)
    if e is None:
        return None
    return e.T, "expansion", e


def eliminate_set(G: Graph, T: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Eliminate the independent set ``T``; the result does not depend on the order."""
    T = sorted(set(T))
    if not is_independent(G, T):
        raise ValueError("T is not an independent set")
    adj = [set(s) for s in G.adjacency]
    for v in T:
        nbrs = adj[v]
        for x in nbrs:
            adj[x] |= nbrs
            adj[x].discard(x)
    in_t = set(T)
    return _from_sets(adj, [v for v in range(G.n) if v not in in_t])


def kernelize(inst: VcInstance, k: Optional[int] = None) -> KernelResult:
    """Exhaustively eliminate treewidth-invariant sets.

    ``k`` defaults to ``inst.k``. With a ``k`` the high-degree rule may stop
    early with ``NO_INSTANCE``; without one the reduction never decides and
    ``tw(G) == max(delta_max, tw(reduced))``.
    """
    check_vc_instance(inst)
    if k is None:
        k = inst.k
    G = inst.graph
    X = set(inst.cover)
    kept: tuple[int, ...] = tuple(range(G.n))
    delta_max = 0
    trace: list[ReductionStep] = []
    current = VcInstance(G, frozenset(X), k)
    while True:
        found = find_invariant_set(current)
        if found is None:
            return KernelResult(Outcome.REDUCED, current, delta_max, tuple(trace), kept, inst.graph.n)
        T, rule, _ = found
        Gc = current.graph
        degrees = tuple(Gc.degree(v) for v in sorted(T))
        delta = max(degrees)
        trace.append(
            ReductionStep(tuple(kept[v] for v in sorted(T)), rule, degrees, delta, Gc.n)
        )
        if k is not None and delta >= k + 1:
            return KernelResult(Outcome.NO_INSTANCE, None, delta, tuple(trace), kept, inst.graph.n)
        delta_max = max(delta_max, delta)
        reduced, inner = eliminate_set(Gc, T)
        index = {old: new for new, old in enumerate(inner)}
        cover = frozenset(index[x] for x in current.cover)
        kept = compose_maps(kept, inner)
        current = VcInstance(reduced, cover, k)


def kernel_treewidth(result: KernelResult, reduced_treewidth: int) -> int:
    """Treewidth of the original graph recovered from a ``REDUCED`` result."""
    if result.outcome is not Outcome.REDUCED:
        raise ValueError("treewidth is only recoverable from a REDUCED result")
    return max(result.delta_max, reduced_treewidth)


def minor_witness(G: Graph, X: Iterable[int], T: Iterable[int], e: Optional[Expansion], v_star: int) -> Graph:
    """Turn ``G - v_star`` into ``G`` with ``T`` eliminated using contractions and deletions only.

    For every non-adjacent pair ``{p, q}`` in ``S`` a vertex of ``f({p, q})``
    other than ``v_star`` is contracted into ``p``; leftover vertices of ``T``
    are deleted. Vertex ids of the result match those of ``eliminate_set``.
    """
    T = set(T)
    if v_star not in T:
        raise ValueError("v_star must belong to T")
    H, kept = delete_vertices(G, [v_star])
    index = {old: new for new, old in enumerate(kept)}
    labels = list(kept)
    if e is not None:
        for p, q in sorted(e.S):
            u = min(w for w in e.f[(p, q)] if w != v_star)
            cu, cp = index[u], index[p]
            H, inner = contract(H, cp, cu)
            labels = [labels[i] for i in inner]
            index = {old: new for new, old in enumerate(labels)}
    leftovers = [index[w] for w in T if w in index]
    H, _ = delete_vertices(H, leftovers)
    return H

