"""Tests for grid maps, stable faces, juxtaposition, certificates and
the bounded deformation search."""

import itertools
import random

import pytest

from ahomotopy import (
    GraphFormatError,
    GridBoxError,
    GridError,
    GridMap,
    HomotopyCertificate,
    VertexMap,
    bounded_homotopy_search,
    check_certificate,
    complete_graph,
    cycle_graph,
    degeneracy,
    grid_multiply,
    grid_to_loop,
    load_grid,
    loop_to_grid,
    parse_grid_json,
    pointwise_close,
    push_grid,
    reflexivity_certificate,
    reverse_certificate,
    slice_at,
    stable_face,
    stack_certificates,
    stack_layers,
    validate_grid,
)

from conftest import gnp_graph

C4 = cycle_graph(4).with_base("0")
C5 = cycle_graph(5).with_base("0")


def painted_map(g, dim, widths, rng, density=0.8):
    """A valid grid map built cell by cell: every cell takes a value
    from the closed neighborhoods of its already painted neighbors,
    with cells outside the box reading as base.  Dead ends restart."""
    base = g.base
    cells = list(itertools.product(*(range(w) for w in widths)))
    while True:
        values = {}
        for pt in cells:
            allowed = set(g.vertices)
            for axis in range(dim):
                for step in (-1, 1):
                    q = pt[:axis] + (pt[axis] + step,) + pt[axis + 1 :]
                    if q in values:
                        w = values[q]
                    elif not all(0 <= c < widths[k] for k, c in enumerate(q)):
                        w = base
                    else:
                        continue
                    allowed &= {w} | set(g.neighbors(w))
            if not allowed:
                break
            if base in allowed and rng.random() > density:
                values[pt] = base
            else:
                values[pt] = rng.choice(sorted(allowed))
        else:
            support = {pt: v for pt, v in values.items() if v != base}
            return GridMap(g, dim, base, support)


def brute_valid(f, pad=2):
    """Validity over an explicit padded box, no shortcuts."""
    box = f.bbox()
    if box is None:
        return True
    ranges = [range(lo - pad, hi + pad + 1) for lo, hi in box]
    for pt in itertools.product(*ranges):
        v = f.core_value(pt)
        for axis in range(f.core_dim):
            q = pt[:axis] + (pt[axis] + 1,) + pt[axis + 1 :]
            w = f.core_value(q)
            if v != w and not f.graph.has_edge(v, w):
                return False
    return True


def test_constructor_basics():
    f = GridMap(C4, 1, "0", {(0,): "1", (1,): "0"})
    # base values are dropped from the support
    assert f.support == {(0,): "1"}
    assert f.value((0,)) == "1"
    assert f.value((5,)) == "0"
    assert f.bbox() == ((0, 0),)
    assert not f.is_constant
    const = GridMap(C4, 2, "0")
    assert const.is_constant
    assert const.bbox() is None
    assert const.value((3, -1)) == "0"


def test_constructor_rejects():
    with pytest.raises(GridError):
        GridMap(C4, -1, "0")
    with pytest.raises(GridError):
        GridMap(C4, 1, "0", {(0, 0): "1"})  # wrong arity
    with pytest.raises(GridError):
        GridMap(C4, 1, "0", {(0,): "1"}, cylinder_axes=(2,))
    with pytest.raises(ValueError):
        GridMap(C4, 1, "0", {(0,): "9"})  # unknown vertex
    with pytest.raises(ValueError):
        GridMap(C4, 1, "9")


def test_empty_support_clears_cylinder_axes():
    f = GridMap(C4, 2, "0", {}, cylinder_axes=(1,))
    assert f.cylinder_axes == ()
    assert f == GridMap(C4, 2, "0")


def test_cylinder_value_lookup():
    core = GridMap(C4, 1, "0", {(0,): "1"})
    f = degeneracy(core, 1)
    assert f.cylinder_axes == (1,)
    assert f.dim == 2
    # axis 1 is ignored, axis 2 carries the core coordinate
    for t in (-3, 0, 7):
        assert f.value((t, 0)) == "1"
        assert f.value((t, 1)) == "0"


def test_translate_and_canonical():
    f = GridMap(C5, 2, "0", {(2, 3): "1", (3, 3): "2"})
    t = f.translate((-2, -3))
    assert t.support == {(0, 0): "1", (1, 0): "2"}
    assert f.canonical() == t
    assert f.canonical_key() == t.canonical_key()
    assert f != t
    with pytest.raises(GridError):
        f.translate((1,))


def test_equality_and_hash():
    f = GridMap(C4, 1, "0", {(0,): "1"})
    g = GridMap(C4, 1, "0", {(0,): "1"})
    assert f == g and hash(f) == hash(g)
    assert f != GridMap(C4, 1, "0", {(1,): "1"})
    assert f != GridMap(C4, 1, "1", {(0,): "0"})


def test_validate_grid_examples():
    ok = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    assert validate_grid(ok)
    bad = GridMap(C4, 1, "0", {(0,): "2"})  # jumps 0 -> 2 -> 0
    assert not validate_grid(bad)
    torn = GridMap(C4, 2, "0", {(0, 0): "1", (1, 0): "3"})
    assert not validate_grid(torn)
    assert validate_grid(GridMap(C4, 3, "0"))


def test_validate_grid_matches_brute():
    rng = random.Random(2)
    for trial in range(40):
        g = gnp_graph(6, 0.5, trial % 7)
        dim = rng.choice([1, 2])
        widths = tuple(rng.randint(1, 4) for _ in range(dim))
        f = painted_map(g, dim, widths, rng)
        assert validate_grid(f)
        assert brute_valid(f)
        # corrupt one cell and recheck both verdicts agree
        if f.support:
            pt = rng.choice(sorted(f.support))
            support = dict(f.support)
            support[pt] = rng.choice(g.vertices)
            broken = GridMap(g, dim, g.base, support)
            assert validate_grid(broken) == brute_valid(broken)


def test_pointwise_close():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    g = loop_to_grid(C4, ["0", "0", "3", "3", "0"])
    assert pointwise_close(f, g)
    far = loop_to_grid(C4, ["0", "3", "2", "1", "0"])
    assert not pointwise_close(f, far)
    assert pointwise_close(f, f)


def test_pointwise_close_requires_compatibility():
    f = GridMap(C4, 1, "0", {(0,): "1"})
    with pytest.raises(GridError):
        pointwise_close(f, GridMap(C4, 2, "0"))
    with pytest.raises(GridError):
        pointwise_close(f, GridMap(C4, 1, "1"))
    with pytest.raises(GridError):
        pointwise_close(f, GridMap(C5, 1, "0", {(0,): "1"}))
    with pytest.raises(GridError):
        pointwise_close(degeneracy(f, 1), degeneracy(f, 2))


def test_stable_face_of_finite_axis_is_constant():
    f = loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"])
    for eps in (-1, 1):
        face = stable_face(f, 1, eps)
        assert face.dim == 0
        assert face.is_constant


def test_face_degeneracy_round_trip():
    rng = random.Random(4)
    for trial in range(30):
        g = gnp_graph(5, 0.6, trial % 5)
        f = painted_map(g, 1, (rng.randint(1, 4),), rng)
        for _ in range(3):
            i = rng.randint(1, f.dim + 1)
            d = degeneracy(f, i)
            for eps in (-1, 1):
                assert stable_face(d, i, eps) == f
            assert validate_grid(d)
            f = d


def test_face_degeneracy_identities():
    rng = random.Random(8)
    for trial in range(30):
        g = gnp_graph(5, 0.6, trial % 5)
        f = painted_map(g, 2, (2, 3), rng)
        for i in range(1, f.dim + 2):
            d = degeneracy(f, i)
            assert d.cylinder_axes.count(i) == 1
            for eps in (-1, 1):
                assert stable_face(d, i, eps) == f
        # mixed face of a degeneracy shifts the index
        d = degeneracy(f, 2)
        for eps in (-1, 1):
            assert stable_face(d, 1, eps) == degeneracy(stable_face(f, 1, eps), 1)
            assert stable_face(d, 3, eps) == degeneracy(stable_face(f, 2, eps), 2)


def test_face_and_degeneracy_argument_errors():
    f = GridMap(C4, 1, "0", {(0,): "1"})
    with pytest.raises(GridError):
        stable_face(f, 0, 1)
    with pytest.raises(GridError):
        stable_face(f, 2, 1)
    with pytest.raises(GridError):
        stable_face(f, 1, 0)
    with pytest.raises(GridError):
        degeneracy(f, 0)
    with pytest.raises(GridError):
        degeneracy(f, 3)


def test_slice_at():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    h = HomotopyCertificate(
        f, GridMap(C4, 1, "0"), layers=[f, loop_to_grid(C4, ["0", "0", "3", "3", "0"]), GridMap(C4, 1, "0")]
    ).h()
    row0 = slice_at(h, 2, 0)
    assert row0 == f
    assert slice_at(h, 2, 5).is_constant
    core = GridMap(C4, 1, "0", {(0,): "1"})
    d = degeneracy(core, 1)
    assert slice_at(d, 1, 42) == core
    with pytest.raises(GridError):
        slice_at(core, 2, 0)


def test_grid_multiply_layout():
    f = loop_to_grid(C5, ["0", "1", "2", "1", "0"])
    g = loop_to_grid(C5, ["0", "4", "3", "4", "0"])
    prod = grid_multiply(f, g)
    # f occupies [0, 2], one base gap at 3, then g at [4, 6]
    assert prod.support == {
        (0,): "1",
        (1,): "2",
        (2,): "1",
        (4,): "4",
        (5,): "3",
        (6,): "4",
    }
    assert validate_grid(prod)
    assert grid_to_loop(prod) == ("0", "1", "2", "1", "0", "4", "3", "4", "0")


def test_grid_multiply_constant_identity():
    f = loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"])
    e = GridMap(C5, 1, "0")
    assert grid_multiply(f, e) == f.canonical()
    assert grid_multiply(e, f) == f.canonical()
    assert grid_multiply(e, e) == e


def test_grid_multiply_associative():
    rng = random.Random(12)
    for trial in range(20):
        g = gnp_graph(6, 0.6, trial % 6)
        a = painted_map(g, 1, (rng.randint(1, 3),), rng)
        b = painted_map(g, 1, (rng.randint(1, 3),), rng)
        c = painted_map(g, 1, (rng.randint(1, 3),), rng)
        assert grid_multiply(grid_multiply(a, b), c) == grid_multiply(a, grid_multiply(b, c))


def test_grid_multiply_second_axis():
    f = GridMap(C4, 2, "0", {(0, 0): "1"})
    g = GridMap(C4, 2, "0", {(0, 0): "3"})
    prod = grid_multiply(f, g, direction=2)
    assert prod.support == {(0, 0): "1", (0, 2): "3"}


def test_grid_multiply_errors():
    f = GridMap(C4, 1, "0", {(0,): "1"})
    with pytest.raises(GridError):
        grid_multiply(GridMap(C4, 0, "0"), GridMap(C4, 0, "0"))
    with pytest.raises(GridError):
        grid_multiply(f, degeneracy(f, 1))
    with pytest.raises(GridError):
        grid_multiply(f, f, direction=2)
    with pytest.raises(GridError):
        grid_multiply(f, GridMap(C5, 1, "0", {(0,): "1"}))


def test_push_grid():
    rot = VertexMap(C4, C4, {str(i): str((i + 1) % 4) for i in range(4)})
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    pushed = push_grid(rot, f)
    assert pushed.base == "1"
    assert pushed.support[(0,)] == "2"
    assert validate_grid(pushed)
    with pytest.raises(GridError):
        push_grid(rot, loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"]))


def test_loop_grid_round_trip():
    walk = ("0", "1", "2", "3", "4", "0")
    f = loop_to_grid(C5, walk)
    assert grid_to_loop(f) == walk
    # interior visits to the base inside the bounding box survive
    pausing = ("0", "1", "0", "4", "0")
    assert grid_to_loop(loop_to_grid(C5, pausing)) == pausing
    # leading base pauses fall outside the support and are trimmed
    padded = ("0", "0", "1", "2", "3", "4", "0", "0")
    assert grid_to_loop(loop_to_grid(C5, padded)) == walk
    assert grid_to_loop(GridMap(C5, 1, "0")) == ("0",)
    with pytest.raises(GridError):
        grid_to_loop(GridMap(C5, 2, "0"))


def test_certificate_constructor_contract():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    with pytest.raises(GridError):
        HomotopyCertificate(f, f)
    with pytest.raises(GridError):
        HomotopyCertificate(f, f, layers=[f], h=degeneracy(f, 2))
    with pytest.raises(GridError):
        HomotopyCertificate(f, f, layers=[])


def test_certificate_layers_h_round_trip():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    mid = loop_to_grid(C4, ["0", "0", "3", "3", "0"])
    g = GridMap(C4, 1, "0")
    c = HomotopyCertificate(f, g, layers=[f, mid, g])
    assert c.steps == 2
    h = c.h()
    assert h.dim == 2
    c2 = HomotopyCertificate(f, g, h=h)
    assert c2.layers == c.layers
    assert check_certificate(c2)


def test_certificate_h_restores_constant_start():
    g = GridMap(C4, 1, "0")
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    c = HomotopyCertificate(g, f, layers=[g, loop_to_grid(C4, ["0", "0", "3", "3", "0"]), f])
    c2 = HomotopyCertificate(g, f, h=c.h())
    assert c2.layers == c.layers
    assert check_certificate(c2)


def test_reflexivity_certificate():
    f = loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"])
    c = reflexivity_certificate(f)
    assert c.steps == 0
    assert c.layers == (f,)
    assert check_certificate(c)


def test_reverse_and_stack():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    mid = loop_to_grid(C4, ["0", "0", "3", "3", "0"])
    e = GridMap(C4, 1, "0")
    c = HomotopyCertificate(f, e, layers=[f, mid, e])
    r = reverse_certificate(c)
    assert r.f == e and r.g == f
    assert check_certificate(r)
    both = stack_certificates(c, r)
    assert both.f == f and both.g == f
    assert both.steps == 4
    assert check_certificate(both)
    with pytest.raises(GridError):
        stack_certificates(c, c)


def test_check_certificate_rejects_bad_stacks():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    mid = loop_to_grid(C4, ["0", "0", "3", "3", "0"])
    e = GridMap(C4, 1, "0")
    # ends not matching the stated maps
    assert not check_certificate(HomotopyCertificate(f, e, layers=[f, mid]))
    # consecutive layers too far apart
    assert not check_certificate(HomotopyCertificate(f, e, layers=[f, e]))
    # invalid layer inside
    bad = GridMap(C4, 1, "0", {(0,): "2"})
    assert not check_certificate(HomotopyCertificate(f, e, layers=[f, bad, e]))
    # structural mismatch raises instead of returning False
    with pytest.raises(GridError):
        check_certificate(HomotopyCertificate(f, GridMap(C4, 2, "0"), layers=[f]))


def test_check_certificate_stable_face_agreement():
    # cylinders over different core maps are close layer by layer but
    # their stable faces differ, so the stack is not a homotopy
    l0 = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    l1 = loop_to_grid(C4, ["0", "0", "3", "3", "0"])
    f, g = degeneracy(l0, 2), degeneracy(l1, 2)
    c = HomotopyCertificate(f, g, layers=[f, g])
    assert not check_certificate(c)


def test_search_contracts_square():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    e = GridMap(C4, 1, "0")
    cert = bounded_homotopy_search(f, e, box=5, max_layers=4)
    assert cert is not None
    assert cert.f == f and cert.g == e
    assert cert.steps <= 4
    assert check_certificate(cert)


def test_search_cannot_unwind_five_cycle():
    f = loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"])
    e = GridMap(C5, 1, "0")
    assert bounded_homotopy_search(f, e, box=6, max_layers=6) is None


def test_search_equal_maps_is_zero_steps():
    f = loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"])
    cert = bounded_homotopy_search(f, f, box=7, max_layers=0)
    assert cert is not None
    assert cert.steps == 0
    assert check_certificate(cert)


def test_search_box_too_small():
    f = loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"])
    e = GridMap(C5, 1, "0")
    with pytest.raises(GridBoxError):
        bounded_homotopy_search(f, e, box=3, max_layers=4)


def test_search_argument_errors():
    e0 = GridMap(C4, 0, "0")
    with pytest.raises(GridError):
        bounded_homotopy_search(e0, e0, box=3, max_layers=2)
    f = GridMap(C4, 1, "0", {(0,): "1"})
    with pytest.raises(GridError):
        bounded_homotopy_search(degeneracy(f, 1), degeneracy(f, 1), box=3, max_layers=2)


def test_search_respects_original_coordinates():
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"]).translate((10,))
    e = GridMap(C4, 1, "0")
    cert = bounded_homotopy_search(f, e, box=5, max_layers=4)
    assert cert is not None
    assert cert.layers[0] == f
    assert check_certificate(cert)


def test_search_found_certificates_on_random_loops():
    # lazy re-parameterizations of the same square loop all contract
    rng = random.Random(6)
    e = GridMap(C4, 1, "0")
    for _ in range(5):
        walk = ["0"]
        for v in ["1", "2", "3"]:
            walk.extend([v] * rng.randint(1, 2))
        walk.append("0")
        f = loop_to_grid(C4, walk)
        cert = bounded_homotopy_search(f, e, box=8, max_layers=6)
        assert cert is not None
        assert check_certificate(cert)


def test_json_round_trip():
    f = loop_to_grid(C5, ["0", "1", "2", "3", "4", "0"])
    text = f.to_json()
    back = GridMap.from_json(text, C5)
    assert back == f
    two = GridMap(C5, 2, "0", {(0, 1): "1", (-2, 3): "4"})
    assert GridMap.from_json(two.to_json(), C5) == two


def test_json_dim_zero():
    f = GridMap(C5, 0, "0", {(): "1"})
    text = f.to_json()
    assert '""' in text
    assert GridMap.from_json(text, C5) == f


def test_json_rejects_cylinders():
    f = degeneracy(GridMap(C5, 1, "0", {(0,): "1"}), 1)
    with pytest.raises(GridError):
        f.to_json()


def test_parse_grid_json_errors():
    with pytest.raises(GraphFormatError) as exc:
        parse_grid_json('{"dim": 1,\n "base": }', source="m.json")
    assert exc.value.line == 2
    assert "m.json" in str(exc.value)
    for text in (
        "[]",
        '{"dim": -1, "base": "0"}',
        '{"dim": "1", "base": "0"}',
        '{"dim": 1, "base": 0}',
        '{"dim": 1, "base": "0", "support": []}',
        '{"dim": 1, "base": "0", "support": {"0": 3}}',
        '{"dim": 1, "base": "0", "support": {"x": "1"}}',
        '{"dim": 2, "base": "0", "support": {"0": "1"}}',
    ):
        with pytest.raises(GraphFormatError):
            parse_grid_json(text)


def test_from_json_checks_vertices():
    with pytest.raises(GraphFormatError):
        GridMap.from_json('{"dim": 1, "base": "9", "support": {}}', C5)
    with pytest.raises(GraphFormatError):
        GridMap.from_json('{"dim": 1, "base": "0", "support": {"0": "9"}}', C5)


def test_load_grid(tmp_path):
    f = loop_to_grid(C4, ["0", "1", "2", "3", "0"])
    p = tmp_path / "square.json"
    p.write_text(f.to_json(), encoding="utf-8")
    assert load_grid(p, C4) == f
