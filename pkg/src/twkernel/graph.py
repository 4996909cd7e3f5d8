"""Immutable simple undirected graphs over dense integer vertex ids.

Every operation that removes vertices returns ``(graph, kept)`` where
``kept[new_id] == old_id``, so callers can follow original labels through a
chain of reductions with :func:`compose_maps`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise ValueError("adjacency must have exactly n entries")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor id {u} of {v} out of range")
                if v not in self.adjacency[u]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("cycles need at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> Graph:
        return cls.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))

    @classmethod
    def star(cls, leaves: int) -> Graph:
        """Star with center 0 and leaves 1..leaves."""
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return sorted((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def masks(self) -> list[int]:
        """Adjacency as one bitmask per vertex."""
        out = []
        for nbrs in self.adjacency:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            out.append(mask)
        return out

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        keep = sorted(set(vertices))
        for v in keep:
            _check_vertex(self, v)
        index = {old: new for new, old in enumerate(keep)}
        adj = tuple(
            frozenset(index[u] for u in self.adjacency[old] if u in index) for old in keep
        )
        return Graph(len(keep), adj), tuple(keep)


def _check_vertex(G: Graph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < G.n:
        raise ValueError(f"vertex {v!r} out of range for graph on {G.n} vertices")


def _from_sets(adj: Sequence[set[int]], keep: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Rebuild a dense graph from mutable adjacency restricted to ``keep``."""
    index = {old: new for new, old in enumerate(keep)}
    new_adj = tuple(frozenset(index[u] for u in adj[old] if u in index) for old in keep)
    return Graph(len(keep), new_adj), tuple(keep)


def neighbors(G: Graph, v: int) -> frozenset[int]:
    _check_vertex(G, v)
    return G.adjacency[v]


def closed_neighborhood(G: Graph, v: int) -> frozenset[int]:
    _check_vertex(G, v)
    return G.adjacency[v] | {v}


def is_clique(G: Graph, S: Iterable[int]) -> bool:
    S = list(S)
    for v in S:
        _check_vertex(G, v)
    return all(G.has_edge(u, v) for u, v in combinations(S, 2))


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    S = list(S)
    for v in S:
        _check_vertex(G, v)
    return not any(G.has_edge(u, v) for u, v in combinations(S, 2))


def delete_vertices(G: Graph, S: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    S = set(S)
    for v in S:
        _check_vertex(G, v)
    return G.induced(v for v in range(G.n) if v not in S)


def eliminate(G: Graph, v: int) -> tuple[Graph, tuple[int, ...]]:
    """Remove ``v`` and turn its open neighborhood into a clique."""
    _check_vertex(G, v)
    adj = [set(s) for s in G.adjacency]
    nbrs = adj[v]
    for x in nbrs:
        adj[x] |= nbrs
        adj[x].discard(x)
    return _from_sets(adj, [u for u in range(G.n) if u != v])


def contract(G: Graph, u: int, v: int) -> tuple[Graph, tuple[int, ...]]:
    """Contract the edge ``{u, v}`` into ``u``; ``v`` disappears."""
    _check_vertex(G, u)
    _check_vertex(G, v)
    if not G.has_edge(u, v):
        raise ValueError(f"cannot contract non-edge {{{u}, {v}}}")
    adj = [set(s) for s in G.adjacency]
    for w in adj[v]:
        if w != u:
            adj[u].add(w)
            adj[w].add(u)
    return _from_sets(adj, [w for w in range(G.n) if w != v])


def compose_maps(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Chain two ``kept`` tables: ``inner`` came from a graph produced with ``outer``."""
    return tuple(outer[i] for i in inner)


def blocks(G: Graph) -> list[frozenset[int]]:
    """Partition V(G) into classes of equal closed neighborhood, ordered by least member."""
    classes: dict[frozenset[int], list[int]] = {}
    for v in range(G.n):
        classes.setdefault(G.adjacency[v] | {v}, []).append(v)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def maximum_bipartite_matching(
    left: Iterable, right: Iterable, edges: Iterable[tuple]
) -> set[tuple]:
    """Maximum-cardinality matching as a set of ``(left, right)`` pairs.

    Augmenting paths (Kuhn) with vertices and neighbor lists visited in sorted
    order, so the result is deterministic.
    """
    left = sorted(set(left))
    right_set = set(right)
    adj: dict = {a: [] for a in left}
    for a, b in edges:
        if a not in adj or b not in right_set:
            raise ValueError(f"edge ({a!r}, {b!r}) does not join left to right")
        adj[a].append(b)
    for a in adj:
        adj[a] = sorted(set(adj[a]))
    match_left, match_right = _kuhn(left, adj)
    return {(a, b) for a, b in match_left.items()}


def _kuhn(left: Sequence, adj: dict) -> tuple[dict, dict]:
    match_left: dict = {}
    match_right: dict = {}

    def augment(a, seen: set) -> bool:
        # iterative DFS to stay clear of the recursion limit on large inputs
        stack = [(a, iter(adj[a]))]
        path = []
        while stack:
            node, it = stack[-1]
            for b in it:
                if b in seen:
                    continue
                seen.add(b)
                owner = match_right.get(b)
                if owner is None:
                    path.append((node, b))
                    for x, y in path:
                        match_left[x] = y
                        match_right[y] = x
                    return True
                path.append((node, b))
                stack.append((owner, iter(adj[owner])))
                break
            else:
                stack.pop()
                if path:
                    path.pop()
        return False

    for a in left:
        augment(a, set())
    return match_left, match_right
