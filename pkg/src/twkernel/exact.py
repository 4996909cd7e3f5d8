"""Exact treewidth oracles for small graphs.

Two independent routes to the minimum elimination cost:

* :func:`treewidth_bruteforce` walks permutations depth first and simulates
  fill-in, cutting branches that cannot beat the best order found so far.
* :func:`treewidth_dp` runs a dynamic program over the set ``S`` of already
  eliminated vertices. Eliminating ``v`` next costs one plus the number of
  vertices outside ``S + v`` reachable from ``v`` through ``S``, which equals
  the closed-neighborhood size the fill-in simulation would see.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .elim import elimination_cost
from .errors import CapacityError
from .graph import Graph

BRUTEFORCE_CAP = 9
DP_CAP = 26


@dataclass(frozen=True)
class TreewidthResult:
    treewidth: int
    witness: tuple[int, ...]


def fill_in_cost(G: Graph, S, v: int) -> int:
    """Closed-neighborhood size of ``v`` after eliminating ``S`` (by simulation)."""
    S = sorted(set(S))
    if v in S:
        raise ValueError("v must lie outside S")
    order = S + [v] + [w for w in range(G.n) if w != v and w not in S]
    report = elimination_cost(G, order)
    return report.cost_of(v)


def reachability_cost(G: Graph, S, v: int) -> int:
    """One plus the vertices outside ``S + v`` reachable from ``v`` via paths inside ``S``."""
    S = set(S)
    if v in S:
        raise ValueError("v must lie outside S")
    seen = {v}
    stack = [v]
    found = set()
    while stack:
        x = stack.pop()
        for w in G.adjacency[x]:
            if w in seen:
                continue
            seen.add(w)
            if w in S:
                stack.append(w)
            else:
                found.add(w)
    return len(found) + 1


def treewidth_bruteforce(G: Graph, cap: int = BRUTEFORCE_CAP) -> TreewidthResult:
    """Minimum over all ``n!`` elimination orders, minus one.

    The witness is the lexicographically least optimal permutation.
    """
    if G.n > cap:
        raise CapacityError(f"bruteforce treewidth capped at {cap} vertices, got {G.n}")
    if G.n == 0:
        return TreewidthResult(0, ())
    n = G.n
    best_cost = n + 1
    best_order: tuple[int, ...] = ()
    order: list[int] = []

    def rec(adj: list[int], remaining: int, running: int) -> None:
        nonlocal best_cost, best_order
        if not remaining:
            best_cost = running
            best_order = tuple(order)
            return
        for v in range(n):
            bit = 1 << v
            if not remaining & bit:
                continue
            nb = adj[v]
            step = max(running, bin(nb).count("1") + 1)
            if step >= best_cost:
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
            rec(nxt, remaining & ~bit, step)
            order.pop()

    rec(G.masks(), (1 << n) - 1, 0)
    return TreewidthResult(best_cost - 1, best_order)


@njit(cache=True)
def _reach_count(adj, n, S, v):
    comp = np.int64(1) << v
    frontier = comp
    reach = np.int64(0)
    while frontier != 0:
        nxt = np.int64(0)
        for u in range(n):
            if (frontier >> u) & 1:
                nb = adj[u]
                reach |= nb
                nxt |= nb & S & ~comp
        comp |= nxt
        frontier = nxt
    reach &= ~(S | (np.int64(1) << v))
    count = 0
    while reach != 0:
        reach &= reach - 1
        count += 1
    return count


@njit(cache=True)
def _subset_dp(adj, n, upper):
    size = np.int64(1) << n
    best = np.full(size, 127, dtype=np.int8)
    choice = np.full(size, -1, dtype=np.int8)
    best[0] = 0
    for S in range(1, size):
        b = 127
        c = -1
        for v in range(n):
            if (S >> v) & 1:
                prev = S ^ (np.int64(1) << v)
                pb = best[prev]
                if pb >= b or pb > upper:
                    continue
                cost = _reach_count(adj, n, prev, v) + 1
                m = pb if pb > cost else cost
                if m < b and m <= upper:
                    b = m
                    c = v
        best[S] = b
        choice[S] = c
    return best, choice


def _greedy_upper(G: Graph) -> int:
    """Cost of a min-degree elimination order; bounds the DP's useful range."""
    adj = [set(s) for s in G.adjacency]
    alive = set(range(G.n))
    worst = 0
    while alive:
        v = min(alive, key=lambda x: (len(adj[x]), x))
        nbrs = adj[v]
        worst = max(worst, len(nbrs) + 1)
        for x in nbrs:
            adj[x].discard(v)
            adj[x] |= nbrs - {x}
        alive.discard(v)
    return worst


def treewidth_dp(G: Graph, cap: int = DP_CAP) -> TreewidthResult:
    """Subset dynamic program; ties go to the least vertex id."""
    if G.n > min(cap, 62):
        raise CapacityError(f"dp treewidth capped at {cap} vertices, got {G.n}")
    if G.n == 0:
        return TreewidthResult(0, ())
    n = G.n
    adj = np.array(G.masks(), dtype=np.int64)
    upper = _greedy_upper(G)
    best, choice = _subset_dp(adj, n, upper)
    full = (1 << n) - 1
    order = []
    S = full
    while S:
        v = int(choice[S])
        order.append(v)
        S ^= 1 << v
    order.reverse()
    return TreewidthResult(int(best[full]) - 1, tuple(order))


def decide_treewidth(G: Graph, k: int, cap: int = DP_CAP) -> bool:
    """Is the treewidth of ``G`` at most ``k``?"""
    return treewidth_dp(G, cap).treewidth <= k
