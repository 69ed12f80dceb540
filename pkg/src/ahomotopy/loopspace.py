"""Path and loop graphs of a based graph, truncated at a maximum
length, and the unfolding map that turns a grid map into the loop graph
into a grid map one dimension up in the underlying graph.

A path vertex is a walk from the base where consecutive entries are
equal or adjacent; a loop additionally ends at the base.  Walks compare
after padding by their last vertex, and a walk is identified with all
its paddings; each class is stored by its minimal-length representative
(``collapse=False`` keeps every padding as its own vertex instead).

Walks serialize as comma-joined vertex tokens, so these constructions
require host graphs whose vertex names are comma-free.
"""

from __future__ import annotations

from .graphs import (
    Graph,
    GraphError,
    VertexMap,
    WalkError,
    check_walk,
    connected_components,
    is_graph_hom,
)
from .grids import GridError, GridMap, validate_grid


def canonical_walk(walk) -> tuple[str, ...]:
    """Strip trailing repeats of the last vertex; the minimal-length
    member of the padding class."""
    w = tuple(walk)
    if not w:
        raise WalkError("a walk needs at least one vertex")
    m = len(w)
    while m > 1 and w[m - 2] == w[m - 1]:
        m -= 1
    return w[:m]


def pad(walk, target_len: int) -> tuple[str, ...]:
    """Extend a walk to ``target_len`` steps by repeating its last
    vertex."""
    w = tuple(walk)
    if not w:
        raise WalkError("a walk needs at least one vertex")
    if target_len < len(w) - 1:
        raise WalkError(
            f"cannot pad a walk of {len(w) - 1} steps down to {target_len}"
        )
    return w + (w[-1],) * (target_len - len(w) + 1)


def endpoint(walk) -> str:
    """The vertex a path ends at; padding does not change it."""
    w = tuple(walk)
    if not w:
        raise WalkError("a walk needs at least one vertex")
    return w[-1]


def walk_token(walk) -> str:
    return ",".join(walk)


def decode_walk(token: str) -> tuple[str, ...]:
    return tuple(token.split(","))


def path_adjacent(g: Graph, w0, w1) -> bool:
    """Pointwise equal-or-adjacent after padding to a common length.
    This is exactly the condition for the two walks to cobound a map of
    a ladder; callers decide vertex identity, so padding-equal walks
    compare as close here."""
    a, b = tuple(w0), tuple(w1)
    steps = max(len(a), len(b)) - 1
    a, b = pad(a, steps), pad(b, steps)
    for x, y in zip(a, b):
        if x != y and not g.has_edge(x, y):
            return False
    return True


def _check_comma_free(g: Graph):
    for v in g.vertices:
        if "," in v:
            raise GraphError(
                f"vertex name {v!r} contains a comma; walk tokens would be ambiguous"
            )


def enumerate_paths(g: Graph, base=None, m_max: int = 0, collapse: bool = True):
    """All walks from the base with at most ``m_max`` steps, ordered by
    (steps, lexicographic index tuple).  With ``collapse`` only the
    minimal representative of each padding class is kept."""
    base = g.require_base(base)
    if m_max < 0:
        raise GraphError("m_max must be >= 0")
    out = [(base,)]
    frontier = [(base,)]
    for _ in range(m_max):
        nxt = []
        for w in frontier:
            i = g.index(w[-1])
            for j in g.close_indices(i):
                nxt.append(w + (g.vertices[j],))
        frontier = nxt
        if collapse:
            out.extend(w for w in frontier if w[-2] != w[-1])
        else:
            out.extend(frontier)
    return out


def build_path_graph(g: Graph, base=None, m_max: int = 0, collapse: bool = True) -> Graph:
    """The graph of all paths from the base with at most ``m_max``
    steps, adjacent when pointwise close after padding.  The base
    vertex is the zero-step walk, whose token is the base itself."""
    _check_comma_free(g)
    base = g.require_base(base)
    walks = enumerate_paths(g, base, m_max, collapse)
    return _assemble(g, base, walks)


def build_loop_graph(g: Graph, base=None, m_max: int = 0, collapse: bool = True) -> Graph:
    """The induced subgraph of the path graph on walks ending at the
    base."""
    _check_comma_free(g)
    base = g.require_base(base)
    walks = [w for w in enumerate_paths(g, base, m_max, collapse) if w[-1] == base]
    return _assemble(g, base, walks)


def _assemble(g: Graph, base: str, walks) -> Graph:
    tokens = [walk_token(w) for w in walks]
    # Padded walks reuse whole entries, so compare index tuples.
    padded = []
    top = max(len(w) for w in walks) - 1
    for w in walks:
        padded.append(tuple(g.index(v) for v in pad(w, top)))
    closed = [frozenset(g.close_indices(i)) for i in range(len(g.vertices))]
    edges = []
    for a in range(len(walks)):
        pa = padded[a]
        for b in range(a + 1, len(walks)):
            pb = padded[b]
            for x, y in zip(pa, pb):
                if x != y and x not in closed[y]:
                    break
            else:
                edges.append((tokens[a], tokens[b]))
    return Graph(tokens, edges, base=base)


def constant_loop_shortcut(g: Graph, base=None, walk=None, m: int | None = None) -> bool:
    """Closeness to a long constant loop implies closeness to the
    zero-step one: both say every entry of the walk lies in the closed
    neighborhood of the base.  Returns whether the implication holds
    for this walk."""
    base = g.require_base(base)
    w = check_walk(g, walk, start=base, end=base)
    if m is None:
        m = len(w) - 1
    if m < 0:
        raise GraphError("constant loop length must be >= 0")
    near_long = path_adjacent(g, w, (base,) * (m + 1))
    near_zero = path_adjacent(g, w, (base,))
    return (not near_long) or near_zero


def loop_pushforward(psi: VertexMap, walk) -> tuple[str, ...]:
    """Compose a walk with a based graph map, pointwise."""
    if not is_graph_hom(psi):
        raise GraphError("pushforward needs a graph map")
    gb, hb = psi.domain.base, psi.codomain.base
    if gb is None or hb is None or psi(gb) != hb:
        raise GraphError("pushforward needs a based map between based graphs")
    w = check_walk(psi.domain, walk)
    return tuple(psi(v) for v in w)


def a0(g: Graph, base=None) -> list[tuple[str, ...]]:
    """Connected components as vertex tuples, the base component
    first and the rest in vertex order."""
    base = g.require_base(base)
    comps = connected_components(g)
    head = [tuple(c) for c in comps if base in c]
    tail = [tuple(c) for c in comps if base not in c]
    return head + tail


def loop_token_graph(host: Graph, base, tokens) -> Graph:
    """A graph on the given loop tokens (plus the zero-step loop) with
    padded-closeness edges: the induced subgraph of the loop graph on
    just these walks, cheap even when the loops are long."""
    base = host.require_base(base)
    walks = {}
    for token in tokens:
        w = check_walk(host, decode_walk(token), start=base, end=base)
        walks[token] = w
    walks.setdefault(base, (base,))
    order = sorted(walks, key=lambda t: (len(walks[t]), tuple(host.index(v) for v in walks[t])))
    edges = []
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if path_adjacent(host, walks[order[a]], walks[order[b]]):
                edges.append((order[a], order[b]))
    return Graph(order, edges, base=base)


def unfold_loop_grid(f: GridMap, host: Graph) -> GridMap:
    """Turn a grid map whose values are loop tokens of ``host`` into a
    grid map one dimension up in ``host``: a new last axis traces each
    loop, and the base of the result is the host base the loops return
    to.  Raises GridError if any token fails to decode as a based loop
    or the unfolded map is invalid."""
    base = f.base
    host.index(base)
    support = {}
    for pt, token in f.support.items():
        try:
            w = check_walk(host, decode_walk(token), start=base, end=base)
        except (WalkError, GraphError) as e:
            raise GridError(f"support value {token!r} is not a based loop: {e}") from None
        for y, v in enumerate(w):
            if v != base:
                support[pt + (y,)] = v
    out = GridMap(host, f.dim + 1, base, support, f.cylinder_axes)
    if not validate_grid(out):
        raise GridError("unfolding produced an invalid grid map")
    return out


def unfold_roundtrip(h: GridMap) -> bool:
    """Fold a grid map into column loops, one per lattice line along
    the last axis, and unfold back.  Columns are read between the
    support slabs, so folding then unfolding shifts the last axis by a
    constant; the comparison is translation-normalized."""
    if h.cylinder_axes:
        raise GridError("roundtrip needs a finitely supported map")
    if h.dim < 1:
        raise GridError("roundtrip needs dimension >= 1")
    host = h.graph
    base = h.base
    n = h.dim - 1
    if h.is_constant:
        return True
    bb = h.bbox()
    ylo, yhi = bb[n]
    cols = {}
    for pt, v in h.support.items():
        cols.setdefault(pt[:n], {})[pt[n]] = v
    m_max = yhi - ylo + 2
    omega = build_loop_graph(host, base, m_max)
    support = {}
    for x, col in cols.items():
        walk = (base,) + tuple(col.get(y, base) for y in range(ylo, yhi + 1)) + (base,)
        token = walk_token(canonical_walk(walk))
        if token != base:
            support[x] = token
    try:
        folded = GridMap(omega, n, base, support)
    except (GridError, GraphError):
        return False
    if not validate_grid(folded):
        return False
    return unfold_loop_grid(folded, host).canonical() == h.canonical()
