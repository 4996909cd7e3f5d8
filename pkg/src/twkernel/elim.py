"""Elimination orders and their cost.

The cost of eliminating a vertex is the size of its closed neighborhood in
the graph at the moment it is eliminated; the cost of an order is the
maximum over all vertices. The treewidth is the minimum order cost minus one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapacityError
from .graph import Graph, is_clique

# exhaustive search in min_cost_clique_last is limited to this many free vertices
CLIQUE_LAST_CAP = 10


@dataclass(frozen=True)
class CostReport:
    max_cost: int
    per_vertex: tuple[tuple[int, int], ...]

    def cost_of(self, v: int) -> int:
        for u, c in self.per_vertex:
            if u == v:
                return c
        raise KeyError(v)


def check_order(G: Graph, pi: Sequence[int]) -> tuple[int, ...]:
    pi = tuple(pi)
    if len(pi) != G.n or sorted(pi) != list(range(G.n)):
        raise ValueError(f"order is not a permutation of the {G.n} vertices")
    return pi


def elimination_cost(G: Graph, pi: Sequence[int]) -> CostReport:
    """Simulate eliminating the vertices of ``G`` in the sequence ``pi``."""
    pi = check_order(G, pi)
    adj = [set(s) for s in G.adjacency]
    per_vertex = []
    for v in pi:
        nbrs = adj[v]
        per_vertex.append((v, len(nbrs) + 1))
        for x in nbrs:
            adj[x].discard(v)
            adj[x] |= nbrs - {x}
        adj[v] = set()
    max_cost = max((c for _, c in per_vertex), default=0)
    return CostReport(max_cost, tuple(per_vertex))


def _search_prefix(masks: list[int], free: list[int], tail_cost: int) -> tuple[int, tuple[int, ...]]:
    """Least max-cost order of ``free`` vertices, including ``tail_cost`` for what follows.

    Depth-first over permutations in ascending vertex order; a branch is cut
    once its running cost cannot strictly improve, so the first optimum found
    is the lexicographically least one.
    """
    best = [None, ()]  # cost, order

    def rec(adj: list[int], remaining: int, order: list[int], running: int) -> None:
        if best[0] is not None and running >= best[0]:
            return
        if not remaining:
            best[0] = running
            best[1] = tuple(order)
            return
        for v in free:
            bit = 1 << v
            if not remaining & bit:
                continue
            nb = adj[v]
            cost = bin(nb).count("1") + 1
            step = max(running, cost)
            if best[0] is not None and step >= best[0]:
                continue
            nxt = adj[:]
            m = nb
            while m:
                low = m & -m
                x = low.bit_length() - 1
                nxt[x] = (nxt[x] | nb) & ~low & ~bit
                m ^= low
            nxt[v] = 0
            order.append(v)
            rec(nxt, remaining & ~bit, order, step)
            order.pop()

    remaining = 0
    for v in free:
        remaining |= 1 << v
    rec(list(masks), remaining, [], tail_cost)
    return best[0], best[1]


def min_cost_clique_last_order(G: Graph, B: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Minimum cost over orders eliminating V(G) \\ B before the clique ``B``, with a witness.

    ``B`` is appended in ascending id order; being a clique, the first vertex of
    ``B`` costs ``|B|`` and every later one less. The witness is the
    lexicographically least optimal order.
    """
    B = sorted(set(B))
    if not is_clique(G, B):
        raise ValueError("B is not a clique")
    in_b = set(B)
    free = [v for v in range(G.n) if v not in in_b]
    if len(free) > CLIQUE_LAST_CAP:
        raise CapacityError(f"{len(free)} vertices outside B exceeds cap {CLIQUE_LAST_CAP}")
    cost, prefix = _search_prefix(G.masks(), free, len(B))
    return cost, prefix + tuple(B)


def min_cost_clique_last(G: Graph, B: Iterable[int]) -> int:
    return min_cost_clique_last_order(G, B)[0]


def pull_forward(G: Graph, pi: Sequence[int], u: int, v: int) -> tuple[int, ...]:
    """Move ``u`` to the slot just before ``v`` when ``N[u]`` is inside ``N[v]``."""
    pi = check_order(G, pi)
    if u == v:
        raise ValueError("u and v must differ")
    if not (G.adjacency[u] | {u}) <= (G.adjacency[v] | {v}):
        raise ValueError(f"N[{u}] is not a subset of N[{v}]")
    pos = {w: i for i, w in enumerate(pi)}
    if pos[v] > pos[u]:
        raise ValueError(f"order does not eliminate {v} before {u}")
    rest = [w for w in pi if w != u]
    i = rest.index(v)
    return tuple(rest[:i] + [u] + rest[i:])
