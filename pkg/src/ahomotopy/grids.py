"""Grid maps: finitely supported maps from the integer lattice into a
graph, the discrete analogue of singular cubes.

A grid map of dimension n assigns a vertex to every point of ZZ^n,
equals the base vertex away from a finite support, and sends
lattice-adjacent points to equal or adjacent vertices.  Degenerate maps
(constant extensions along chosen axes) are carried symbolically as
cylinder axes, so faces and degeneracies compose exactly.

Two maps are one layer apart when they are pointwise equal or adjacent;
a homotopy certificate is a stack of layers, equivalently a map one
dimension up read along its last axis.  ``bounded_homotopy_search``
explores all valid maps supported inside a fixed box and therefore
proves equivalence when it finds a stack; not finding one inside the
box proves nothing.
"""

from __future__ import annotations

import itertools
import json
from collections import deque

from .graphs import Graph, GraphFormatError, check_walk


class GridError(ValueError):
    """Invalid grid map data or incompatible grid maps."""


class GridBoxError(GridError):
    """A search box too small for the supports it must contain."""


class GridMap:
    """An n-dimensional grid map with finite core support.

    ``support`` maps core coordinate tuples to non-base vertex tokens;
    ``cylinder_axes`` lists the axes (1-based) along which the map is a
    constant extension, so the core coordinates are the remaining axes
    in increasing order.  A map with empty support is the constant base
    map and carries no cylinder axes.
    """

    __slots__ = ("graph", "dim", "base", "support", "cylinder_axes", "_hash")

    def __init__(self, graph: Graph, dim: int, base: str, support=None, cylinder_axes=()):
        if dim < 0:
            raise GridError("dimension must be >= 0")
        graph.index(base)
        axes = tuple(sorted(set(int(a) for a in cylinder_axes)))
        for a in axes:
            if not 1 <= a <= dim:
                raise GridError(f"cylinder axis {a} outside 1..{dim}")
        core_dim = dim - len(axes)
        cleaned = {}
        for point, value in (support or {}).items():
            pt = tuple(int(c) for c in point)
            if len(pt) != core_dim:
                raise GridError(
                    f"support point {pt!r} has {len(pt)} coordinates, expected {core_dim}"
                )
            graph.index(value)
            if value != base:
                cleaned[pt] = value
        if not cleaned:
            axes = ()
        self.graph = graph
        self.dim = dim
        self.base = base
        self.support = cleaned
        self.cylinder_axes = axes
        self._hash = None

    @property
    def core_dim(self) -> int:
        return self.dim - len(self.cylinder_axes)

    @property
    def is_constant(self) -> bool:
        return not self.support

    def core_axes(self) -> tuple[int, ...]:
        cyl = set(self.cylinder_axes)
        return tuple(a for a in range(1, self.dim + 1) if a not in cyl)

    def value(self, point) -> str:
        pt = tuple(point)
        if len(pt) != self.dim:
            raise GridError(f"point {pt!r} has {len(pt)} coordinates, expected {self.dim}")
        cyl = set(self.cylinder_axes)
        core = tuple(c for a, c in enumerate(pt, start=1) if a not in cyl)
        return self.support.get(core, self.base)

    def core_value(self, core_point) -> str:
        return self.support.get(tuple(core_point), self.base)

    def support_items(self) -> tuple:
        return tuple(sorted(self.support.items()))

    def bbox(self) -> tuple[tuple[int, int], ...] | None:
        """Core-coordinate bounding box, or None for the constant map."""
        if not self.support:
            return None
        pts = list(self.support)
        return tuple(
            (min(p[k] for p in pts), max(p[k] for p in pts))
            for k in range(self.core_dim)
        )

    def translate(self, offset) -> "GridMap":
        off = tuple(int(c) for c in offset)
        if len(off) != self.core_dim:
            raise GridError("offset dimension mismatch")
        moved = {
            tuple(c + d for c, d in zip(pt, off)): v for pt, v in self.support.items()
        }
        return GridMap(self.graph, self.dim, self.base, moved, self.cylinder_axes)

    def canonical(self) -> "GridMap":
        """Translate the support bounding box to start at the origin."""
        box = self.bbox()
        if box is None:
            return self
        return self.translate(tuple(-lo for lo, _ in box))

    def canonical_key(self):
        return (self.dim, self.base, self.cylinder_axes, self.canonical().support_items())

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.dim == other.dim
            and self.base == other.base
            and self.cylinder_axes == other.cylinder_axes
            and self.support == other.support
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.graph, self.dim, self.base, self.cylinder_axes, self.support_items())
            )
        return self._hash

    def __repr__(self):
        cyl = f", cylinder_axes={self.cylinder_axes}" if self.cylinder_axes else ""
        return f"GridMap(dim={self.dim}, |support|={len(self.support)}{cyl})"

    def to_json(self) -> str:
        if self.cylinder_axes:
            raise GridError("degenerate grid maps have no file form; slice them first")
        support = {
            ",".join(map(str, pt)): v for pt, v in sorted(self.support.items())
        }
        obj = {"dim": self.dim, "base": self.base, "support": support}
        return json.dumps(obj, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str, graph: Graph, source: str = "<json>") -> "GridMap":
        obj = parse_grid_json(text, source)
        return cls._from_obj(obj, graph, source)

    @classmethod
    def _from_obj(cls, obj, graph: Graph, source: str) -> "GridMap":
        dim, base, support = obj
        try:
            return cls(graph, dim, base, support)
        except ValueError as e:
            raise GraphFormatError(str(e), source) from None


def parse_grid_json(text: str, source: str = "<json>"):
    """Parse the grid map schema into (dim, base, {coords: token}).

    Values are not resolved against a graph here; callers validate."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(e.msg, source, e.lineno, e.colno) from None
    if not isinstance(obj, dict):
        raise GraphFormatError("top level must be an object", source)
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise GraphFormatError('"dim" must be a nonnegative integer', source)
    base = obj.get("base")
    if not isinstance(base, str):
        raise GraphFormatError('"base" must be a string', source)
    raw = obj.get("support", {})
    if not isinstance(raw, dict):
        raise GraphFormatError('"support" must be an object', source)
    support = {}
    for key, value in raw.items():
        if not isinstance(value, str):
            raise GraphFormatError(f"support value {value!r} must be a string", source)
        if key == "" and dim == 0:
            pt = ()
        else:
            try:
                pt = tuple(int(c) for c in key.split(","))
            except ValueError:
                raise GraphFormatError(f"bad support key {key!r}", source) from None
        if len(pt) != dim:
            raise GraphFormatError(
                f"support key {key!r} has {len(pt)} coordinates, expected {dim}", source
            )
        support[pt] = value
    return dim, base, support


def load_grid(path, graph: Graph) -> GridMap:
    with open(path, encoding="utf-8") as fh:
        return GridMap.from_json(fh.read(), graph, source=str(path))


def validate_grid(f: GridMap) -> bool:
    """Lattice-adjacent points get equal or adjacent vertices; it is
    enough to check the 1-neighborhood of the support."""
    g = f.graph
    support = f.support
    base = f.base
    k = f.core_dim
    for pt, v in support.items():
        for axis in range(k):
            for step in (-1, 1):
                q = pt[:axis] + (pt[axis] + step,) + pt[axis + 1 :]
                w = support.get(q, base)
                if v != w and not g.has_edge(v, w):
                    return False
    return True


def pointwise_close(f: GridMap, g: GridMap) -> bool:
    """Are the two maps equal-or-adjacent at every lattice point?"""
    _require_compatible(f, g)
    if f.cylinder_axes != g.cylinder_axes:
        raise GridError("cannot compare maps with different degenerate axes pointwise")
    graph = f.graph
    for pt in set(f.support) | set(g.support):
        a = f.support.get(pt, f.base)
        b = g.support.get(pt, g.base)
        if a != b and not graph.has_edge(a, b):
            return False
    return True


def _require_compatible(f: GridMap, g: GridMap):
    if f.graph != g.graph:
        raise GridError("grid maps live in different graphs")
    if f.dim != g.dim:
        raise GridError(f"dimension mismatch: {f.dim} vs {g.dim}")
    if f.base != g.base:
        raise GridError(f"base mismatch: {f.base!r} vs {g.base!r}")


def stable_face(f: GridMap, i: int, eps: int) -> GridMap:
    """The face of the map in direction (i, eps): the stable values far
    along axis i.  For a finitely supported axis this is the constant
    base map one dimension down; for a cylinder axis it recovers the map
    the degeneracy extended."""
    if eps not in (-1, 1):
        raise GridError(f"face sign must be -1 or 1, got {eps!r}")
    if not 1 <= i <= f.dim:
        raise GridError(f"face axis {i} outside 1..{f.dim}")
    if i in f.cylinder_axes:
        new_axes = tuple(a - 1 if a > i else a for a in f.cylinder_axes if a != i)
        return GridMap(f.graph, f.dim - 1, f.base, dict(f.support), new_axes)
    return GridMap(f.graph, f.dim - 1, f.base)


def degeneracy(f: GridMap, i: int) -> GridMap:
    """Constant extension along a new axis inserted at position i."""
    if not 1 <= i <= f.dim + 1:
        raise GridError(f"degeneracy axis {i} outside 1..{f.dim + 1}")
    new_axes = tuple(sorted((a + 1 if a >= i else a) for a in f.cylinder_axes)) + (i,)
    return GridMap(f.graph, f.dim + 1, f.base, dict(f.support), sorted(new_axes))


def slice_at(f: GridMap, axis: int, t: int) -> GridMap:
    """The (dim-1)-map obtained by fixing one coordinate."""
    if not 1 <= axis <= f.dim:
        raise GridError(f"slice axis {axis} outside 1..{f.dim}")
    new_axes = tuple(a - 1 if a > axis else a for a in f.cylinder_axes if a != axis)
    if axis in f.cylinder_axes:
        return GridMap(f.graph, f.dim - 1, f.base, dict(f.support), new_axes)
    k = f.core_axes().index(axis)
    support = {
        pt[:k] + pt[k + 1 :]: v for pt, v in f.support.items() if pt[k] == t
    }
    return GridMap(f.graph, f.dim - 1, f.base, support, new_axes)


def grid_multiply(f: GridMap, g: GridMap, direction: int = 1) -> GridMap:
    """Juxtapose two maps along an axis: translate ``g`` past the
    bounding box of ``f`` with one all-base layer between, union the
    supports, and translation-normalize.  Undefined in dimension 0."""
    _require_compatible(f, g)
    if f.dim < 1:
        raise GridError("juxtaposition is undefined in dimension 0")
    if f.cylinder_axes or g.cylinder_axes:
        raise GridError("juxtaposition needs finitely supported maps")
    if not 1 <= direction <= f.dim:
        raise GridError(f"direction {direction} outside 1..{f.dim}")
    if f.is_constant:
        return g.canonical()
    if g.is_constant:
        return f.canonical()
    k = direction - 1
    f_hi = max(pt[k] for pt in f.support)
    g_lo = min(pt[k] for pt in g.support)
    shift = f_hi + 2 - g_lo
    moved = g.translate(tuple(shift if a == k else 0 for a in range(g.dim)))
    union = dict(f.support)
    for pt, v in moved.support.items():
        if pt in union:
            raise AssertionError("separated supports cannot collide")
        union[pt] = v
    return GridMap(f.graph, f.dim, f.base, union).canonical()


def push_grid(psi, f: GridMap) -> GridMap:
    """Compose a grid map with a graph map on values.  Graph maps
    preserve closeness, so the result is valid whenever f is."""
    if psi.domain != f.graph:
        raise GridError("map domain does not match the grid map's graph")
    support = {pt: psi(v) for pt, v in f.support.items()}
    return GridMap(psi.codomain, f.dim, psi(f.base), support, f.cylinder_axes)


def loop_to_grid(g: Graph, loop, base=None) -> GridMap:
    """Embed a based loop as a 1-dimensional grid map: interior entries
    at coordinates 0, 1, ..."""
    base = g.require_base(base)
    walk = check_walk(g, loop, start=base, end=base)
    support = {(i,): v for i, v in enumerate(walk[1:-1])}
    return GridMap(g, 1, base, support)


def grid_to_loop(f: GridMap) -> tuple[str, ...]:
    """Read a 1-dimensional grid map as a based loop across its support."""
    if f.dim != 1 or f.cylinder_axes:
        raise GridError("only finite 1-dimensional maps read as loops")
    box = f.bbox()
    if box is None:
        return (f.base,)
    (lo, hi), = box
    return (f.base,) + tuple(f.core_value((i,)) for i in range(lo, hi + 1)) + (f.base,)


class HomotopyCertificate:
    """A stack of one-layer deformations from f to g: layers[0] == f,
    layers[-1] == g, consecutive layers pointwise equal-or-adjacent.

    May be built from explicit layers or from a map ``h`` one dimension
    up, read as a stack along its last axis (a degenerate last axis
    reads as the single layer it extends)."""

    __slots__ = ("f", "g", "layers")

    def __init__(self, f: GridMap, g: GridMap, layers=None, h: GridMap | None = None):
        if (layers is None) == (h is None):
            raise GridError("give exactly one of layers= or h=")
        if h is not None:
            layers = stack_layers(h)
            # Constant end layers leave no trace in h's support; restore
            # them when the stated ends ask for it.
            if layers[0] != f and f.is_constant:
                layers.insert(0, f)
            if layers[-1] != g and g.is_constant:
                layers.append(g)
        layers = tuple(layers)
        if not layers:
            raise GridError("certificate needs at least one layer")
        self.f = f
        self.g = g
        self.layers = layers

    @property
    def steps(self) -> int:
        """Number of one-layer deformations in the stack."""
        return len(self.layers) - 1

    def h(self) -> GridMap:
        """Materialize the stack as a map one dimension up."""
        first = self.layers[0]
        if any(layer.cylinder_axes for layer in self.layers):
            raise GridError("only finite layers stack into a grid map")
        support = {}
        for t, layer in enumerate(self.layers):
            for pt, v in layer.support.items():
                support[pt + (t,)] = v
        return GridMap(first.graph, first.dim + 1, first.base, support)

    def __repr__(self):
        return f"HomotopyCertificate({len(self.layers)} layers, dim={self.f.dim})"


def stack_layers(h: GridMap) -> list[GridMap]:
    """Read a (n+1)-map as layers along its last axis, between the
    layers where it stabilizes."""
    if h.dim < 1:
        raise GridError("a certificate map needs dimension >= 1")
    axis = h.dim
    if axis in h.cylinder_axes:
        return [slice_at(h, axis, 0)]
    if h.is_constant:
        return [GridMap(h.graph, h.dim - 1, h.base)]
    k = h.core_axes().index(axis)
    ts = [pt[k] for pt in h.support]
    return [slice_at(h, axis, t) for t in range(min(ts), max(ts) + 1)]


def check_certificate(c: HomotopyCertificate) -> bool:
    """Verify a certificate end to end: layer validity, pointwise
    closeness of consecutive layers, matching ends, and agreement of all
    stable faces of the ends across every layer."""
    f, g = c.f, c.g
    _require_compatible(f, g)
    n = f.dim
    for layer in c.layers:
        _require_compatible(f, layer)
    if not validate_grid(f) or not validate_grid(g):
        return False
    for layer in c.layers:
        if not validate_grid(layer):
            return False
    if c.layers[0] != f or c.layers[-1] != g:
        return False
    for a, b in zip(c.layers, c.layers[1:]):
        if not pointwise_close(a, b):
            return False
    for i in range(1, n + 1):
        for eps in (-1, 1):
            face = stable_face(f, i, eps)
            if stable_face(g, i, eps) != face:
                return False
            for layer in c.layers:
                if stable_face(layer, i, eps) != face:
                    return False
    return True


def reflexivity_certificate(f: GridMap) -> HomotopyCertificate:
    """f is homotopic to itself by the degenerate extension."""
    return HomotopyCertificate(f, f, h=degeneracy(f, f.dim + 1))


def reverse_certificate(c: HomotopyCertificate) -> HomotopyCertificate:
    """Symmetry: read the stack backwards."""
    return HomotopyCertificate(c.g, c.f, layers=tuple(reversed(c.layers)))


def stack_certificates(c1: HomotopyCertificate, c2: HomotopyCertificate) -> HomotopyCertificate:
    """Transitivity: concatenate stacks sharing the middle map."""
    if c1.g != c2.f:
        raise GridError("certificates do not share the middle map")
    return HomotopyCertificate(c1.f, c2.g, layers=c1.layers + c2.layers[1:])


def bounded_homotopy_search(
    f: GridMap, g: GridMap, box, max_layers: int
) -> HomotopyCertificate | None:
    """Breadth-first search for a deformation stack from f to g through
    valid maps supported inside ``box`` (per-axis widths), taking at
    most ``max_layers`` one-layer steps.

    Both supports are translated by a common offset so their joint
    bounding box starts at the origin; the returned certificate is in
    the original coordinates.  Exhausting the box without reaching g
    returns None, which proves nothing.
    """
    _require_compatible(f, g)
    if f.cylinder_axes or g.cylinder_axes:
        raise GridError("search needs finitely supported maps")
    n = f.dim
    if n < 1:
        raise GridError("search needs dimension >= 1")
    if isinstance(box, int):
        box = (box,) * n
    box = tuple(int(w) for w in box)
    if len(box) != n:
        raise GridError(f"box has {len(box)} widths for a {n}-dimensional search")
    if any(w < 1 for w in box):
        raise GridError("box widths must be positive")
    if not validate_grid(f) or not validate_grid(g):
        raise GridError("search endpoints must be valid grid maps")
    if max_layers < 0:
        raise GridError("max_layers must be >= 0")

    joint = list(f.support) + list(g.support)
    if joint:
        lo = [min(p[k] for p in joint) for k in range(n)]
        hi = [max(p[k] for p in joint) for k in range(n)]
        for k in range(n):
            if hi[k] - lo[k] + 1 > box[k]:
                raise GridBoxError(
                    f"axis {k + 1}: joint support extent {hi[k] - lo[k] + 1} "
                    f"exceeds box width {box[k]}"
                )
        offset = tuple(-x for x in lo)
    else:
        offset = (0,) * n
    back = tuple(-x for x in offset)

    graph = f.graph
    base_idx = graph.index(f.base)
    nverts = len(graph.vertices)
    closed = [graph.close_indices(i) for i in range(nverts)]
    closed_sets = [frozenset(c) for c in closed]

    cells = list(itertools.product(*[range(w) for w in box]))
    index_of = {c: i for i, c in enumerate(cells)}
    ncells = len(cells)
    preds = []
    on_edge = []
    for c in cells:
        p = []
        for k in range(n):
            if c[k] > 0:
                p.append(index_of[c[:k] + (c[k] - 1,) + c[k + 1 :]])
        preds.append(tuple(p))
        on_edge.append(any(c[k] == 0 or c[k] == box[k] - 1 for k in range(n)))

    def state_of(m: GridMap):
        shifted = m.translate(offset)
        vals = [base_idx] * ncells
        for pt, v in shifted.support.items():
            vals[index_of[pt]] = graph.index(v)
        return tuple(vals)

    def gridmap_of(state) -> GridMap:
        support = {}
        for i, vi in enumerate(state):
            if vi != base_idx:
                support[cells[i]] = graph.vertices[vi]
        return GridMap(graph, n, f.base, support).translate(back)

    sf, sg = state_of(f), state_of(g)
    if sf == sg:
        return HomotopyCertificate(f, g, layers=[f])

    def close_states(s, t):
        for a, b in zip(s, t):
            if a != b and b not in closed_sets[a]:
                return False
        return True

    def neighbors(s):
        # All valid states pointwise close to s, in lexicographic order.
        buf = [base_idx] * ncells
        out = []

        def rec(i):
            if i == ncells:
                out.append(tuple(buf))
                return
            for v in closed[s[i]]:
                if on_edge[i] and v != base_idx and v not in closed_sets[base_idx]:
                    continue
                ok = True
                for p in preds[i]:
                    if buf[p] != v and v not in closed_sets[buf[p]]:
                        ok = False
                        break
                if ok:
                    buf[i] = v
                    rec(i + 1)

        rec(0)
        return out

    dist = {sf: 0}
    parent = {}
    queue = deque([sf])
    while queue:
        s = queue.popleft()
        d = dist[s]
        if d + 1 > max_layers:
            continue
        if close_states(s, sg):
            chain = [sg, s]
            while s != sf:
                s = parent[s]
                chain.append(s)
            chain.reverse()
            layers = [gridmap_of(x) for x in chain]
            return HomotopyCertificate(f, g, layers=layers)
        for t in neighbors(s):
            if t not in dist:
                dist[t] = d + 1
                parent[t] = s
                queue.append(t)
    return None
