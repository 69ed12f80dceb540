"""Shared test fixtures: graph generators and the small-graph catalog.

The catalog enumerates every connected graph on at most five vertices
once per isomorphism class by brute force (canonical edge bitmask over
all vertex permutations), independently of the library's own
isomorphism code.
"""

import itertools
import random

import pytest

from ahomotopy import Graph


def gnp_graph(n, p, seed, base="0"):
    rng = random.Random(seed)
    vs = [str(i) for i in range(n)]
    es = [
        (vs[a], vs[b])
        for a in range(n)
        for b in range(a + 1, n)
        if rng.random() < p
    ]
    return Graph(vs, es, base=base)


def random_tree(n, seed, base="0"):
    # attach each new vertex to a uniformly chosen earlier one
    rng = random.Random(seed)
    vs = [str(i) for i in range(n)]
    es = [(vs[rng.randrange(i)], vs[i]) for i in range(1, n)]
    return Graph(vs, es, base=base)


def random_connected_graph(n, p, seed, base="0"):
    # tree skeleton plus gnp extras, so connectivity is guaranteed
    rng = random.Random(seed)
    pairs = {(rng.randrange(i), i) for i in range(1, n)}
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                pairs.add((a, b))
    vs = [str(i) for i in range(n)]
    return Graph(vs, sorted((vs[a], vs[b]) for a, b in pairs), base=base)


def _connected(n, edges):
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, todo = {0}, [0]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == n


def connected_catalog(max_n):
    """All connected graphs with <= max_n vertices, one per class."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        seen = set()
        for bits in range(1 << len(pairs)):
            edges = [pairs[k] for k in range(len(pairs)) if bits >> k & 1]
            if not _connected(n, edges):
                continue
            eset = set(edges)
            canon = min(
                sum(
                    1 << k
                    for k, (a, b) in enumerate(pairs)
                    if tuple(sorted((perm[a], perm[b]))) in eset
                )
                for perm in itertools.permutations(range(n))
            )
            if canon in seen:
                continue
            seen.add(canon)
            out.append(
                Graph(
                    [str(i) for i in range(n)],
                    [(str(a), str(b)) for a, b in edges],
                    base="0",
                )
            )
    return out


@pytest.fixture(scope="session")
def small_catalog():
    cat = connected_catalog(5)
    # classic counts of connected graphs per vertex number
    by_size = {}
    for g in cat:
        by_size[len(g.vertices)] = by_size.get(len(g.vertices), 0) + 1
    assert by_size == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21}
    return cat


def loops_up_to(g, base, m_max):
    """All based closed walks with at most m_max steps, lazy steps
    allowed; plain breadth-first extension."""
    out = [(base,)]
    frontier = [(base,)]
    for _ in range(m_max):
        nxt = []
        for w in frontier:
            i = g.index(w[-1])
            for j in g.close_indices(i):
                nxt.append(w + (g.vertices[j],))
        frontier = nxt
        out.extend(w for w in nxt if w[-1] == base)
    return out
