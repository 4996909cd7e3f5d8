import random
from itertools import permutations

from hypothesis import strategies as st

from twkernel.elim import elimination_cost
from twkernel.graph import Graph


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_cobipartite(a, b, p, rng):
    """Two cliques 0..a-1 and a..a+b-1 with random cross edges."""
    edges = [(u, v) for u in range(a) for v in range(u + 1, a)]
    edges += [(u, v) for u in range(a, a + b) for v in range(u + 1, a + b)]
    edges += [(u, v) for u in range(a) for v in range(a, a + b) if rng.random() < p]
    return Graph.from_edges(a + b, edges)


def permutation_min_cost(G):
    """Minimum order cost by literal enumeration of all n! orders."""
    if G.n == 0:
        return 0
    return min(elimination_cost(G, pi).max_cost for pi in permutations(range(G.n)))


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def rng_for(seed):
    return random.Random(seed)


def random_vc_graph(cover_size, outside, p_inner, p_cross, rng):
    """Random graph whose first ``cover_size`` vertices cover every edge."""
    n = cover_size + outside
    edges = [(u, v) for u in range(cover_size) for v in range(u + 1, cover_size) if rng.random() < p_inner]
    edges += [(x, v) for v in range(cover_size, n) for x in range(cover_size) if rng.random() < p_cross]
    return Graph.from_edges(n, edges)


def brute_min_cover_size(G):
    from itertools import combinations

    for size in range(G.n + 1):
        for X in combinations(range(G.n), size):
            s = set(X)
            if all(u in s or v in s for u, v in G.edges()):
                return size
    return G.n
