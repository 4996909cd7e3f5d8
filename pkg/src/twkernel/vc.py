"""Vertex covers: validation, an exact branching solver and a 2-approximation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CapacityError, ValidationError
from .graph import Graph

VC_CAP = 40


@dataclass(frozen=True)
class VcInstance:
    graph: Graph
    cover: frozenset[int]
    k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "cover", frozenset(self.cover))


def is_vertex_cover(G: Graph, X: Iterable[int]) -> bool:
    X = set(X)
    return all(u in X or v in X for u, v in G.edges())


def check_vc_instance(inst: VcInstance) -> None:
    G = inst.graph
    bad = [v for v in inst.cover if not 0 <= v < G.n]
    if bad:
        raise ValidationError("cover-in-range", f"ids {sorted(bad)} outside [0, {G.n})")
    if not is_vertex_cover(G, inst.cover):
        raise ValidationError("vertex-cover", "some edge has no endpoint in the cover")
    if inst.k is not None and inst.k < 0:
        raise ValidationError("k-nonnegative", f"k = {inst.k}")


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _matching_lower_bound(adj: list[int], alive: int) -> int:
    """Size of a greedy maximal matching: every cover needs one vertex per matched edge."""
    size = 0
    free = alive
    m = alive
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        if not free & low:
            continue
        nb = adj[v] & free
        if nb:
            w = nb & -nb
            free &= ~(low | w)
            size += 1
    return size


def min_vertex_cover(G: Graph, cap: int = VC_CAP) -> frozenset[int]:
    """A minimum vertex cover by branch and bound.

    Degree rules: isolated vertices are dropped, a degree-one vertex puts its
    neighbor in the cover. Otherwise branch on a maximum-degree vertex ``v``:
    take ``v``, or take all of ``N(v)``.
    """
    if G.n > cap:
        raise CapacityError(f"exact vertex cover capped at {cap} vertices, got {G.n}")
    adj = G.masks()
    best = [frozenset(range(G.n)) if G.m else frozenset()]
    if not G.m:
        return best[0]

    def rec(alive: int, taken: list[int]) -> None:
        forced = []
        while True:
            changed = False
            m = alive
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                nb = adj[v] & alive
                if not nb:
                    alive &= ~low
                    changed = True
                elif nb & (nb - 1) == 0:
                    u = nb.bit_length() - 1
                    forced.append(u)
                    alive &= ~(nb | low)
                    m &= alive
                    changed = True
            if not changed:
                break
        current = len(taken) + len(forced)
        if current + _matching_lower_bound(adj, alive) >= len(best[0]):
            return
        if not alive:
            best[0] = frozenset(taken + forced)
            return
        v = max(
            (w for w in range(G.n) if alive >> w & 1),
            key=lambda w: (_popcount(adj[w] & alive), -w),
        )
        nb = adj[v] & alive
        base = taken + forced
        rec(alive & ~(1 << v), base + [v])
        nbrs = [w for w in range(G.n) if nb >> w & 1]
        rec(alive & ~nb & ~(1 << v), base + nbrs)

    rec((1 << G.n) - 1, [])
    return best[0]


def approx_vertex_cover(G: Graph) -> frozenset[int]:
    """Endpoints of a greedy maximal matching (edges in sorted order); at most twice optimal."""
    cover: set[int] = set()
    for u, v in G.edges():
        if u not in cover and v not in cover:
            cover.update((u, v))
    return frozenset(cover)
