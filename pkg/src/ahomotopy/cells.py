"""Cubical cells of a graph: corner labelings of the unit n-cube that
send adjacent corners to equal or adjacent vertices, with face and
degeneracy maps.  Counting the labelings that depend on every axis
gives the f-vector of the associated cell complex, and windowing a grid
map over unit subcubes realizes it as a multiset of cells.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .graphs import Graph
from .grids import GridMap, GridError


class CellError(ValueError):
    """Invalid cell data or an out-of-range axis."""


class CubeCell:
    """A labeling of the corners of the n-cube by vertices.

    Corners are integers 0..2^n-1; bit j holds coordinate j+1.  The
    labeling must send corners differing in one bit to equal or
    adjacent vertices.
    """

    __slots__ = ("graph", "dim", "labels", "_hash")

    def __init__(self, graph: Graph, dim: int, labels):
        if dim < 0:
            raise CellError("dimension must be >= 0")
        labels = tuple(labels)
        if len(labels) != 1 << dim:
            raise CellError(f"expected {1 << dim} corner labels, got {len(labels)}")
        idx = tuple(graph.index(v) for v in labels)
        for c, vi in enumerate(idx):
            for j in range(dim):
                if c & (1 << j):
                    continue
                wi = idx[c | (1 << j)]
                if vi != wi and wi not in graph.close_indices(vi):
                    raise CellError(
                        f"corners {c} and {c | (1 << j)} get non-close labels "
                        f"{labels[c]!r}, {labels[c | (1 << j)]!r}"
                    )
        self.graph = graph
        self.dim = dim
        self.labels = labels
        self._hash = None

    @classmethod
    def _trusted(cls, graph: Graph, dim: int, labels) -> "CubeCell":
        # Internal fast path for labelings that are valid by
        # construction: restrictions, pullbacks and enumerator output.
        c = object.__new__(cls)
        c.graph = graph
        c.dim = dim
        c.labels = labels
        c._hash = None
        return c

    def label(self, corner) -> str:
        """Label at a corner given as a 0/1 coordinate tuple."""
        corner = tuple(corner)
        if len(corner) != self.dim or any(x not in (0, 1) for x in corner):
            raise CellError(f"bad corner {corner!r} for dimension {self.dim}")
        c = 0
        for j, x in enumerate(corner):
            c |= x << j
        return self.labels[c]

    def __eq__(self, other):
        if not isinstance(other, CubeCell):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.dim == other.dim
            and self.labels == other.labels
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.graph, self.dim, self.labels))
        return self._hash

    def __repr__(self):
        return f"CubeCell(dim={self.dim}, labels={self.labels!r})"


def _insert_bit(c: int, pos: int, val: int) -> int:
    low = c & ((1 << pos) - 1)
    return low | (val << pos) | ((c >> pos) << (pos + 1))


def _delete_bit(c: int, pos: int) -> int:
    low = c & ((1 << pos) - 1)
    return low | ((c >> (pos + 1)) << pos)


@lru_cache(maxsize=None)
def _face_table(n: int, i: int, val: int) -> tuple[int, ...]:
    # corner of the (n-1)-cube -> corner of the n-cube on the chosen face
    return tuple(_insert_bit(c, i - 1, val) for c in range(1 << (n - 1)))


@lru_cache(maxsize=None)
def _degeneracy_table(n: int, i: int) -> tuple[int, ...]:
    # corner of the (n+1)-cube -> corner of the n-cube it projects to
    return tuple(_delete_bit(c, i - 1) for c in range(1 << (n + 1)))


def cell_face(c: CubeCell, i: int, eps: int) -> CubeCell:
    """Restrict the labeling to the face where coordinate i is fixed at
    0 (eps = -1) or 1 (eps = +1)."""
    if c.dim < 1:
        raise CellError("a 0-cell has no faces")
    if eps not in (-1, 1):
        raise CellError(f"face sign must be -1 or 1, got {eps!r}")
    if not 1 <= i <= c.dim:
        raise CellError(f"face axis {i} outside 1..{c.dim}")
    table = _face_table(c.dim, i, (eps + 1) // 2)
    return CubeCell._trusted(c.graph, c.dim - 1, tuple(c.labels[t] for t in table))


def cell_degeneracy(c: CubeCell, i: int) -> CubeCell:
    """Pull the labeling back along the projection deleting coordinate
    i; the result does not depend on that coordinate."""
    if not 1 <= i <= c.dim + 1:
        raise CellError(f"degeneracy axis {i} outside 1..{c.dim + 1}")
    table = _degeneracy_table(c.dim, i)
    return CubeCell._trusted(c.graph, c.dim + 1, tuple(c.labels[t] for t in table))


def _depends_on_axis(labels, n: int, j: int) -> bool:
    bit = 1 << j
    return any(labels[c] != labels[c | bit] for c in range(1 << n) if not c & bit)


def is_degenerate(c: CubeCell) -> bool:
    """Is the cell independent of some axis, i.e. a degeneracy image?"""
    return any(not _depends_on_axis(c.labels, c.dim, j) for j in range(c.dim))


def _iter_labelings(graph: Graph, n: int):
    """All valid corner labelings as vertex-index tuples, lexicographic."""
    nc = 1 << n
    closed = [frozenset(graph.close_indices(i)) for i in range(len(graph.vertices))]
    buf = [0] * nc
    lower = [tuple(c ^ (1 << j) for j in range(n) if c & (1 << j)) for c in range(nc)]

    def rec(c):
        if c == nc:
            yield tuple(buf)
            return
        for vi in range(len(graph.vertices)):
            ok = True
            for p in lower[c]:
                w = buf[p]
                if w != vi and vi not in closed[w]:
                    ok = False
                    break
            if ok:
                buf[c] = vi
                yield from rec(c + 1)

    yield from rec(0)


def cells(graph: Graph, n: int) -> list[CubeCell]:
    """All n-cells of the graph in deterministic (lexicographic) order."""
    if n < 0:
        raise CellError("dimension must be >= 0")
    verts = graph.vertices
    return [
        CubeCell._trusted(graph, n, tuple(verts[i] for i in idx))
        for idx in _iter_labelings(graph, n)
    ]


def f_vector(graph: Graph, max_dim: int) -> tuple[int, ...]:
    """Counts of nondegenerate n-cells for n = 0..max_dim."""
    if max_dim < 0:
        raise CellError("max_dim must be >= 0")
    out = []
    for n in range(max_dim + 1):
        count = 0
        for idx in _iter_labelings(graph, n):
            if all(_depends_on_axis(idx, n, j) for j in range(n)):
                count += 1
        out.append(count)
    return tuple(out)


def realize_cells(f: GridMap, box=None) -> Counter:
    """Window a grid map over the unit subcubes of a box, one cell per
    subcube.  ``box`` is an int (subcube count per axis, from the
    origin), explicit per-axis (lo, hi) corner ranges, or None for the
    support bounding box padded by one on each side."""
    if f.cylinder_axes:
        raise GridError("realization needs a finitely supported map")
    n = f.dim
    if box is None:
        bb = f.bbox()
        if bb is None:
            box = tuple((0, 1) for _ in range(n))
        else:
            box = tuple((lo - 1, hi + 1) for lo, hi in bb)
    elif isinstance(box, int):
        box = tuple((0, box) for _ in range(n))
    else:
        box = tuple((int(lo), int(hi)) for lo, hi in box)
    if len(box) != n:
        raise GridError(f"box has {len(box)} axes for a {n}-dimensional map")
    if any(hi - lo < 1 for lo, hi in box):
        raise GridError("each box axis needs at least one unit subcube")

    out = Counter()
    if n == 0:
        out[CubeCell(f.graph, 0, (f.value(()),))] += 1
        return out

    def corners(origin):
        labels = []
        for c in range(1 << n):
            pt = tuple(origin[j] + ((c >> j) & 1) for j in range(n))
            labels.append(f.value(pt))
        return tuple(labels)

    def rec(j, origin):
        if j == n:
            out[CubeCell(f.graph, n, corners(tuple(origin)))] += 1
            return
        lo, hi = box[j]
        for a in range(lo, hi):
            origin.append(a)
            rec(j + 1, origin)
            origin.pop()

    rec(0, [])
    return out
