"""Discrete homotopy invariants of graphs and simplicial complexes."""

from .graphs import (
    Graph,
    GraphError,
    GraphFormatError,
    MissingBaseError,
    VertexMap,
    WalkError,
    are_isomorphic,
    cartesian_product,
    check_walk,
    complete_graph,
    component_of,
    connected_components,
    cube_boundary,
    cube_graph,
    cycle_graph,
    enumerate_homs,
    extend_cube_hom,
    induced_subgraph,
    is_graph_hom,
    load_graph,
    path_graph,
)
from .complexes import (
    ComplexError,
    SimplicialComplex,
    dimension,
    face_closure,
    gamma_q,
    load_facets,
    parse_facets,
    simplex_token,
)
from .presentations import (
    AbelianInvariants,
    GroupPresentation,
    PresentationError,
    TietzeResult,
    abelianization,
    canonical_relator,
    cyclic_reduce,
    exponent_vector,
    free_reduce,
    in_row_lattice,
    invert_word,
    smith_diagonal,
    substitute,
    tietze_simplify,
    tietze_with_rewriter,
)
from .fundamental import (
    DISTINCT,
    EQUAL,
    UNKNOWN,
    a1_generator_edges,
    a1_invariants,
    a1_presentation,
    loop_to_word,
    loops_equivalent,
    loops_equivalent_detail,
    small_cycles,
    spanning_tree,
)
from .grids import (
    GridBoxError,
    GridError,
    GridMap,
    HomotopyCertificate,
    bounded_homotopy_search,
    check_certificate,
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
from .cells import (
    CellError,
    CubeCell,
    cell_degeneracy,
    cell_face,
    cells,
    f_vector,
    is_degenerate,
    realize_cells,
)
from .loopspace import (
    a0,
    build_loop_graph,
    build_path_graph,
    canonical_walk,
    constant_loop_shortcut,
    decode_walk,
    endpoint,
    enumerate_paths,
    loop_pushforward,
    loop_token_graph,
    pad,
    path_adjacent,
    unfold_loop_grid,
    unfold_roundtrip,
    walk_token,
)

__version__ = "0.1.0"
