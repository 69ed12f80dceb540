"""Simplicial complexes given by facet lists, and the graphs whose
vertices are simplices of dimension >= q with edges for pairs sharing a
face of dimension >= q.

Facets are sets of vertex tokens.  A facet file lists one facet per
line, tokens separated by whitespace; '#' starts a comment.
"""

from __future__ import annotations

import itertools
import warnings

from .graphs import Graph, GraphFormatError


class ComplexError(ValueError):
    """Invalid complex data or parameters."""


class SimplicialComplex:
    """A finite simplicial complex stored by its facets.

    Maximality is enforced at construction: a facet contained in another
    is dropped with a warning.  Facets are kept in the deterministic
    order (dimension, sorted token tuple).
    """

    __slots__ = ("facets", "vertices")

    def __init__(self, facets):
        sets = []
        for f in facets:
            fs = frozenset(str(v) for v in f)
            if not fs:
                raise ComplexError("empty facet")
            if fs not in sets:
                sets.append(fs)
        kept = []
        for f in sets:
            if any(f < g for g in sets):
                warnings.warn(
                    f"dropping non-maximal facet {{{','.join(sorted(f))}}}",
                    stacklevel=2,
                )
                continue
            kept.append(f)
        kept.sort(key=lambda f: (len(f), tuple(sorted(f))))
        self.facets = tuple(kept)
        self.vertices = tuple(sorted(set().union(*kept))) if kept else ()

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex({len(self.facets)} facets, {len(self.vertices)} vertices)"

    def has_face(self, face: frozenset) -> bool:
        return any(face <= f for f in self.facets)


def dimension(delta: SimplicialComplex) -> int:
    """Largest facet size minus one."""
    if not delta.facets:
        raise ComplexError("empty complex has no dimension")
    return max(len(f) for f in delta.facets) - 1


def face_closure(delta: SimplicialComplex) -> list[frozenset]:
    """All nonempty faces of all facets, deduplicated, ordered by
    (dimension, lexicographic token tuple)."""
    seen = set()
    for f in delta.facets:
        elems = sorted(f)
        for k in range(1, len(elems) + 1):
            for combo in itertools.combinations(elems, k):
                seen.add(frozenset(combo))
    return sorted(seen, key=lambda s: (len(s), tuple(sorted(s))))


def simplex_token(face) -> str:
    """Deterministic vertex token for a simplex: sorted tokens joined
    with '-'."""
    return "-".join(sorted(face))


def gamma_q(
    delta: SimplicialComplex,
    q: int,
    mode: str = "maximal",
    sigma0=None,
) -> Graph:
    """Graph on the simplices of dimension >= q, with an edge between two
    distinct simplices sharing at least q+1 vertices.

    mode="maximal" uses only facets; mode="all" uses every face.  When a
    base simplex ``sigma0`` is given, the base vertex is the first listed
    simplex containing it; sigma0 itself must have dimension >= q.
    """
    dim = dimension(delta)
    if not 0 <= q <= dim:
        raise ComplexError(f"q={q} out of range for a {dim}-dimensional complex")
    if mode == "maximal":
        simplices = [f for f in delta.facets if len(f) >= q + 1]
    elif mode == "all":
        simplices = [f for f in face_closure(delta) if len(f) >= q + 1]
    else:
        raise ComplexError(f"unknown mode {mode!r}")
    names = [simplex_token(s) for s in simplices]
    edges = []
    for a, b in itertools.combinations(range(len(simplices)), 2):
        if len(simplices[a] & simplices[b]) >= q + 1:
            edges.append((names[a], names[b]))
    base = None
    if sigma0 is not None:
        s0 = frozenset(str(v) for v in sigma0)
        if len(s0) < q + 1:
            raise ComplexError(
                f"base simplex {{{','.join(sorted(s0))}}} has dimension < q={q}"
            )
        if not delta.has_face(s0):
            raise ComplexError(
                f"base simplex {{{','.join(sorted(s0))}}} is not a face of the complex"
            )
        for s, name in zip(simplices, names):
            if s0 <= s:
                base = name
                break
        else:
            raise AssertionError("a face of the complex sits in some listed simplex")
    return Graph(names, edges, base=base)


def parse_facets(text: str, source: str = "<facets>") -> SimplicialComplex:
    """Parse the one-facet-per-line format."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(set(tokens)) != len(tokens):
            raise GraphFormatError("repeated vertex in facet", source, lineno)
        facets.append(tokens)
    if not facets:
        raise GraphFormatError("no facets found", source)
    return SimplicialComplex(facets)


def load_facets(path) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_facets(fh.read(), source=str(path))
