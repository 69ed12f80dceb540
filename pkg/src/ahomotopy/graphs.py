"""Finite simple graphs and graph-homomorphism primitives.

Vertices are opaque string tokens.  The listed vertex order is the
deterministic order that every enumeration in this package derives from:
edges, neighbor lists, homomorphism enumeration, search frontiers.

A map of graphs sends edges to edges or collapses them, i.e. ``f`` is a
homomorphism when every edge ``uv`` satisfies ``f(u) == f(v)`` or
``f(u)f(v)`` is an edge of the codomain.  "Close" below always means
equal or adjacent.
"""

from __future__ import annotations

import itertools
import json
from collections import deque


class GraphError(ValueError):
    """Invalid graph data, or an operation applied to an unsuitable graph."""


class MissingBaseError(GraphError):
    """The operation needs a base vertex but the graph has none."""


class GraphFormatError(GraphError):
    """A graph or facet file could not be parsed."""

    def __init__(self, message, source=None, line=None, column=None):
        where = source or "<input>"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line
        self.column = column


class WalkError(GraphError):
    """A vertex sequence is not a valid walk in the graph."""


class Graph:
    """A finite simple undirected graph with an optional base vertex.

    Immutable after construction; structural equality and hashing make
    graphs usable as cache keys.  Duplicate vertices, loops, and
    duplicate or reversed edge pairs are rejected.
    """

    __slots__ = ("vertices", "base", "_index", "_pairs", "_adj", "_closed", "_hash")

    def __init__(self, vertices, edges=(), base=None):
        self.vertices = tuple(str(v) for v in vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise GraphError("duplicate vertex tokens")
        adj = [set() for _ in self.vertices]
        pairs = set()
        for edge in edges:
            try:
                u, v = edge
            except (TypeError, ValueError):
                raise GraphError(f"edge {edge!r} is not a pair") from None
            i, j = self.index(u), self.index(v)
            if i == j:
                raise GraphError(f"loop edge at {u!r}")
            pair = (i, j) if i < j else (j, i)
            if pair in pairs:
                raise GraphError(f"duplicate edge {u!r}, {v!r}")
            pairs.add(pair)
            adj[i].add(j)
            adj[j].add(i)
        self._pairs = frozenset(pairs)
        self._adj = tuple(tuple(sorted(s)) for s in adj)
        self._closed = tuple(
            tuple(sorted(set(ns) | {i})) for i, ns in enumerate(self._adj)
        )
        if base is not None and base not in self._index:
            raise GraphError(f"base vertex {base!r} is not listed")
        self.base = base
        self._hash = None

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def __contains__(self, v):
        return v in self._index

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        """Edges as token pairs, each with the lower-indexed vertex first,
        sorted by index pair."""
        vs = self.vertices
        return tuple((vs[i], vs[j]) for i, j in sorted(self._pairs))

    def edge_index_pairs(self) -> frozenset[tuple[int, int]]:
        return self._pairs

    def neighbors(self, v) -> tuple[str, ...]:
        vs = self.vertices
        return tuple(vs[j] for j in self._adj[self.index(v)])

    def degree(self, v) -> int:
        return len(self._adj[self.index(v)])

    def has_edge(self, u, v) -> bool:
        i, j = self.index(u), self.index(v)
        pair = (i, j) if i < j else (j, i)
        return pair in self._pairs

    def are_close(self, u, v) -> bool:
        """Equal or adjacent."""
        return u == v or self.has_edge(u, v)

    def close_indices(self, i: int) -> tuple[int, ...]:
        """Indices of the closed neighborhood of vertex index ``i``."""
        return self._closed[i]

    def require_base(self, base=None) -> str:
        """Resolve an explicit base or fall back to the stored one."""
        if base is not None:
            self.index(base)
            return base
        if self.base is None:
            raise MissingBaseError("no base vertex set")
        return self.base

    def with_base(self, base) -> "Graph":
        return Graph(self.vertices, self.edges, base=base)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self._pairs == other._pairs
            and self.base == other.base
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vertices, self._pairs, self.base))
        return self._hash

    def __repr__(self):
        b = f", base={self.base!r}" if self.base is not None else ""
        return f"Graph({len(self.vertices)} vertices, {len(self._pairs)} edges{b})"

    def to_json(self) -> str:
        obj = {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}
        if self.base is not None:
            obj["base"] = self.base
        return json.dumps(obj, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str, source: str = "<json>") -> "Graph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise GraphFormatError(e.msg, source, e.lineno, e.colno) from None
        if not isinstance(obj, dict):
            raise GraphFormatError("top level must be an object", source)
        vertices = obj.get("vertices")
        if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
            raise GraphFormatError('"vertices" must be a list of strings', source)
        edges = obj.get("edges", [])
        if not isinstance(edges, list):
            raise GraphFormatError('"edges" must be a list of pairs', source)
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
                raise GraphFormatError(f"bad edge entry {e!r}", source)
        base = obj.get("base")
        if base is not None and not isinstance(base, str):
            raise GraphFormatError('"base" must be a string', source)
        try:
            return cls(vertices, edges, base=base)
        except GraphError as e:
            raise GraphFormatError(str(e), source) from None


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return Graph.from_json(fh.read(), source=str(path))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: vertices are pairs, and (u1,u2)(v1,v2) is an
    edge iff u1 == v1 and u2v2 is an edge, or u2 == v2 and u1v1 is an edge.

    The base is the pair of bases when both factors have one.
    """
    name = lambda u, v: f"({u},{v})"
    vertices = [name(u, v) for u in g.vertices for v in h.vertices]
    edges = []
    for u in g.vertices:
        for a, b in h.edges:
            edges.append((name(u, a), name(u, b)))
    for a, b in g.edges:
        for v in h.vertices:
            edges.append((name(a, v), name(b, v)))
    base = None
    if g.base is not None and h.base is not None:
        base = name(g.base, h.base)
    return Graph(vertices, edges, base=base)


def cube_graph(n: int, m: int) -> Graph:
    """The n-fold product of the path 0..m, with base at the all-zero
    corner.  Vertices are comma-joined coordinate tuples."""
    if n < 1:
        raise GraphError("cube dimension must be >= 1")
    if m < 0:
        raise GraphError("cube side length must be >= 0")
    coords = list(itertools.product(range(m + 1), repeat=n))
    name = lambda c: ",".join(map(str, c))
    vertices = [name(c) for c in coords]
    edges = []
    for c in coords:
        for axis in range(n):
            if c[axis] < m:
                d = c[:axis] + (c[axis] + 1,) + c[axis + 1 :]
                edges.append((name(c), name(d)))
    return Graph(vertices, edges, base=name((0,) * n))


def cube_boundary(n: int, m: int) -> frozenset[str]:
    """Vertices of cube_graph(n, m) with some coordinate equal to 0 or m."""
    if n < 1:
        raise GraphError("cube dimension must be >= 1")
    if m < 1:
        raise GraphError("boundary needs side length >= 1")
    out = []
    for c in itertools.product(range(m + 1), repeat=n):
        if any(x == 0 or x == m for x in c):
            out.append(",".join(map(str, c)))
    return frozenset(out)


class VertexMap:
    """A total assignment of codomain vertices to domain vertices."""

    __slots__ = ("domain", "codomain", "_assignment")

    def __init__(self, domain: Graph, codomain: Graph, assignment):
        self.domain = domain
        self.codomain = codomain
        mapping = dict(assignment)
        for v in domain.vertices:
            if v not in mapping:
                raise GraphError(f"assignment misses vertex {v!r}")
            codomain.index(mapping[v])
        if len(mapping) != len(domain.vertices):
            extra = set(mapping) - set(domain.vertices)
            raise GraphError(f"assignment has extra vertices {sorted(extra)!r}")
        self._assignment = mapping

    def __call__(self, v):
        return self._assignment[v]

    def __getitem__(self, v):
        return self._assignment[v]

    def as_tuple(self) -> tuple[str, ...]:
        """Image tuple in domain vertex order; the deterministic key."""
        return tuple(self._assignment[v] for v in self.domain.vertices)

    def items(self):
        return ((v, self._assignment[v]) for v in self.domain.vertices)

    def __eq__(self, other):
        if not isinstance(other, VertexMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.as_tuple() == other.as_tuple()
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.as_tuple()))

    def __repr__(self):
        return f"VertexMap({self.as_tuple()!r})"


def is_graph_hom(f: VertexMap) -> bool:
    """Each domain edge maps to an edge or collapses to a vertex."""
    cod = f.codomain
    return all(cod.are_close(f[u], f[v]) for u, v in f.domain.edges)


def enumerate_homs(domain: Graph, codomain: Graph) -> list[VertexMap]:
    """All graph homomorphisms domain -> codomain by backtracking, in
    lexicographic order of the image tuple (codomain vertex order)."""
    nd = len(domain.vertices)
    if nd == 0:
        return [VertexMap(domain, codomain, {})]
    if not codomain.vertices:
        return []
    # Earlier-indexed neighbors constrain each assignment as it is made.
    preds = []
    for i in range(nd):
        preds.append([j for j in domain._adj[i] if j < i])
    nc = len(codomain.vertices)
    close = [
        [codomain.are_close(codomain.vertices[a], codomain.vertices[b]) for b in range(nc)]
        for a in range(nc)
    ]
    image = [0] * nd
    out = []

    def assign(k):
        if k == nd:
            out.append(
                VertexMap(
                    domain,
                    codomain,
                    {domain.vertices[i]: codomain.vertices[image[i]] for i in range(nd)},
                )
            )
            return
        for c in range(nc):
            if all(close[c][image[j]] for j in preds[k]):
                image[k] = c
                assign(k + 1)

    assign(0)
    return out


def extend_cube_hom(f: VertexMap, p: int) -> VertexMap:
    """Extend a cube map to a larger cube by clamping coordinates.

    The domain must be a cube graph; the extension repeats the last layer
    in each direction, which keeps the map a homomorphism.
    """
    n, m = _cube_shape(f.domain)
    if p < m:
        raise GraphError(f"cannot extend side {m} cube to smaller side {p}")
    bigger = cube_graph(n, p)
    assignment = {}
    for v in bigger.vertices:
        coords = tuple(min(int(x), m) for x in v.split(","))
        assignment[v] = f[",".join(map(str, coords))]
    return VertexMap(bigger, f.codomain, assignment)


def _cube_shape(g: Graph) -> tuple[int, int]:
    """Recover (n, m) from a graph built by cube_graph."""
    try:
        splits = [tuple(int(x) for x in v.split(",")) for v in g.vertices]
    except ValueError:
        raise GraphError("domain is not a cube graph") from None
    n = len(splits[0])
    m = max(max(c) for c in splits) if splits else 0
    if g != cube_graph(n, m):
        raise GraphError("domain is not a cube graph")
    return n, m


def induced_subgraph(g: Graph, keep) -> Graph:
    """Subgraph induced on ``keep``, preserving vertex order.  The base
    survives only if it is kept."""
    keep = set(keep)
    vertices = [v for v in g.vertices if v in keep]
    edges = [(u, v) for u, v in g.edges if u in keep and v in keep]
    base = g.base if g.base in keep else None
    return Graph(vertices, edges, base=base)


def connected_components(g: Graph) -> list[list[str]]:
    """Components as vertex lists in graph order, ordered by first vertex."""
    seen = set()
    components = []
    for i in range(len(g.vertices)):
        if i in seen:
            continue
        comp = {i}
        queue = deque([i])
        while queue:
            j = queue.popleft()
            for k in g._adj[j]:
                if k not in comp:
                    comp.add(k)
                    queue.append(k)
        seen |= comp
        components.append([g.vertices[j] for j in sorted(comp)])
    return components


def component_of(g: Graph, v) -> list[str]:
    """Vertices of the component containing ``v``, in graph order."""
    comp = {g.index(v)}
    queue = deque(comp)
    while queue:
        j = queue.popleft()
        for k in g._adj[j]:
            if k not in comp:
                comp.add(k)
                queue.append(k)
    return [g.vertices[j] for j in sorted(comp)]


def check_walk(g: Graph, walk, start=None, end=None) -> tuple[str, ...]:
    """Validate a vertex sequence as a walk: consecutive entries equal or
    adjacent, optional pinned endpoints.  Returns the walk as a tuple."""
    walk = tuple(walk)
    if not walk:
        raise WalkError("walk must contain at least one vertex")
    for v in walk:
        g.index(v)
    for a, b in zip(walk, walk[1:]):
        if not g.are_close(a, b):
            raise WalkError(f"step {a!r} -> {b!r} is not an edge or a repeat")
    if start is not None and walk[0] != start:
        raise WalkError(f"walk starts at {walk[0]!r}, expected {start!r}")
    if end is not None and walk[-1] != end:
        raise WalkError(f"walk ends at {walk[-1]!r}, expected {end!r}")
    return walk


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test by backtracking with degree pruning.

    Ignores bases; intended for the small graphs this package handles.
    """
    n = len(g.vertices)
    if n != len(h.vertices) or len(g._pairs) != len(h._pairs):
        return False
    gdeg = [len(a) for a in g._adj]
    hdeg = [len(a) for a in h._adj]
    if sorted(gdeg) != sorted(hdeg):
        return False
    # Assign most-constrained (highest degree) vertices first.
    order = sorted(range(n), key=lambda i: -gdeg[i])
    image = [-1] * n
    used = [False] * n

    def assign(k):
        if k == n:
            return True
        i = order[k]
        for c in range(n):
            if used[c] or hdeg[c] != gdeg[i]:
                continue
            ok = True
            for j in order[:k]:
                gi_adj = j in g._adj[i]
                hi_adj = image[j] in h._adj[c]
                if gi_adj != hi_adj:
                    ok = False
                    break
            if ok:
                image[i] = c
                used[c] = True
                if assign(k + 1):
                    return True
                used[c] = False
                image[i] = -1
        return False

    return assign(0)


def cycle_graph(n: int, base: str | None = "0") -> Graph:
    """The n-cycle on vertices "0".."n-1"."""
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    vs = [str(i) for i in range(n)]
    edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    return Graph(vs, edges, base=base)


def complete_graph(n: int, base: str | None = "0") -> Graph:
    if n < 1:
        raise GraphError("complete graph needs at least 1 vertex")
    vs = [str(i) for i in range(n)]
    edges = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    return Graph(vs, edges, base=base)


def path_graph(n: int, base: str | None = "0") -> Graph:
    """The path on n+1 vertices "0".."n"."""
    if n < 0:
        raise GraphError("path length must be >= 0")
    vs = [str(i) for i in range(n + 1)]
    edges = [(vs[i], vs[i + 1]) for i in range(n)]
    return Graph(vs, edges, base=base)
