"""Tests for facet parsing and the shared-face graphs gamma_q."""

import itertools
import pathlib
import random

import pytest

from ahomotopy import (
    ComplexError,
    GraphFormatError,
    SimplicialComplex,
    are_isomorphic,
    cycle_graph,
    dimension,
    face_closure,
    gamma_q,
    load_facets,
    parse_facets,
    simplex_token,
)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def brute_closure(facets):
    """All nonempty subsets of the facets, via bitmasks."""
    out = set()
    for f in facets:
        elems = sorted(f)
        for mask in range(1, 1 << len(elems)):
            out.add(frozenset(e for i, e in enumerate(elems) if mask >> i & 1))
    return out


def brute_gamma_edges(simplices, q):
    names = [simplex_token(s) for s in simplices]
    return {
        frozenset((names[a], names[b]))
        for a, b in itertools.combinations(range(len(simplices)), 2)
        if len(simplices[a] & simplices[b]) >= q + 1
    }


def random_complex(n_vertices, n_facets, max_size, seed):
    rng = random.Random(seed)
    verts = [str(i) for i in range(n_vertices)]
    facets = []
    for _ in range(n_facets):
        k = rng.randint(1, max_size)
        facets.append(rng.sample(verts, k))
    return SimplicialComplex(facets)


def test_construction_sorts_and_dedups():
    d = SimplicialComplex([["2", "1"], ["0"], ["1", "2"]])
    assert d.facets == (frozenset({"0"}), frozenset({"1", "2"}))
    assert d.vertices == ("0", "1", "2")


def test_non_maximal_facet_dropped_with_warning():
    with pytest.warns(UserWarning, match="non-maximal"):
        d = SimplicialComplex([["a", "b", "c"], ["a", "b"]])
    assert d.facets == (frozenset({"a", "b", "c"}),)


def test_empty_facet_rejected():
    with pytest.raises(ComplexError):
        SimplicialComplex([["a"], []])


def test_dimension():
    assert dimension(SimplicialComplex([["a"]])) == 0
    assert dimension(SimplicialComplex([["a", "b", "c"], ["c", "d"]])) == 2
    with pytest.raises(ComplexError):
        dimension(SimplicialComplex([]))


def test_face_closure_small():
    d = SimplicialComplex([["a", "b"], ["b", "c"]])
    got = face_closure(d)
    assert set(got) == {
        frozenset({"a"}),
        frozenset({"b"}),
        frozenset({"c"}),
        frozenset({"a", "b"}),
        frozenset({"b", "c"}),
    }
    # ordered by dimension then token tuple
    assert got == sorted(got, key=lambda s: (len(s), tuple(sorted(s))))


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_face_closure_matches_brute():
    for seed in range(6):
        d = random_complex(7, 5, 4, seed)
        assert set(face_closure(d)) == brute_closure(d.facets)


def test_full_simplex_closure_count():
    d = SimplicialComplex([["0", "1", "2", "3"]])
    assert len(face_closure(d)) == 2**4 - 1


def test_simplex_token():
    assert simplex_token(frozenset({"b", "a"})) == "a-b"
    assert simplex_token(["2", "10"]) == "10-2"


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_gamma_q_matches_brute_maximal():
    for seed in range(8):
        d = random_complex(8, 6, 4, seed)
        dim = dimension(d)
        for q in range(dim + 1):
            g = gamma_q(d, q)
            simplices = [f for f in d.facets if len(f) >= q + 1]
            assert set(g.vertices) == {simplex_token(s) for s in simplices}
            got = {frozenset(e) for e in g.edges}
            assert got == brute_gamma_edges(simplices, q)


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_gamma_q_matches_brute_all_faces():
    d = random_complex(6, 4, 3, 3)
    for q in range(dimension(d) + 1):
        g = gamma_q(d, q, mode="all")
        simplices = [s for s in face_closure(d) if len(s) >= q + 1]
        got = {frozenset(e) for e in g.edges}
        assert got == brute_gamma_edges(simplices, q)


def test_ring_of_triangles_is_a_five_cycle():
    d = load_facets(FIXTURES / "ring5.facets")
    g = gamma_q(d, 1)
    assert are_isomorphic(g, cycle_graph(5))


def test_cone_matches_ring():
    ring = gamma_q(load_facets(FIXTURES / "ring5.facets"), 1)
    cone = gamma_q(load_facets(FIXTURES / "cone_c5.facets"), 1)
    assert are_isomorphic(ring, cone)


def test_gamma_q_zero_on_disjoint_edges():
    d = SimplicialComplex([["a", "b"], ["c", "d"]])
    g = gamma_q(d, 0)
    assert len(g.vertices) == 2
    assert g.edges == ()


def test_sigma0_selects_base():
    d = load_facets(FIXTURES / "ring5.facets")
    g = gamma_q(d, 1, sigma0=["1", "2"])
    # first facet containing {1,2} in (size, token) order
    assert g.base == "0-1-2"
    g2 = gamma_q(d, 1, sigma0=["0", "1", "2"])
    assert g2.base == "0-1-2"


def test_sigma0_errors():
    d = load_facets(FIXTURES / "ring5.facets")
    with pytest.raises(ComplexError):
        gamma_q(d, 1, sigma0=["1"])  # dimension below q
    with pytest.raises(ComplexError):
        gamma_q(d, 1, sigma0=["0", "1", "3"])  # not a face
    with pytest.raises(ComplexError):
        gamma_q(d, 3)
    with pytest.raises(ComplexError):
        gamma_q(d, -1)
    with pytest.raises(ComplexError):
        gamma_q(d, 1, mode="faces")


def test_parse_facets_comments_and_blanks():
    d = parse_facets("# header\n\na b  c\n c d # trailing\n")
    assert d.facets == (frozenset({"c", "d"}), frozenset({"a", "b", "c"}))


def test_parse_facets_repeated_vertex_position():
    with pytest.raises(GraphFormatError) as exc:
        parse_facets("a b\nc c\n", source="bad.facets")
    assert exc.value.line == 2
    assert "bad.facets" in str(exc.value)


def test_parse_facets_empty_input():
    with pytest.raises(GraphFormatError):
        parse_facets("# nothing here\n")


def test_equality_and_hash():
    a = SimplicialComplex([["x", "y"], ["z"]])
    b = SimplicialComplex([["z"], ["y", "x"]])
    assert a == b
    assert hash(a) == hash(b)
    assert a != SimplicialComplex([["x", "y"]])
