"""Signless-Laplacian spectra of cone graphs: closed forms, moments,
cospectral mates and searches."""

from .errors import (
    BracketError,
    ComparisonError,
    ConstructionError,
    ContractViolationError,
    FamilyError,
    FormatError,
    InapplicableError,
    ParameterError,
    QConesError,
    ScaleError,
    UnsupportedGraphError,
)
from .graph6 import decode_graph6, encode_graph6
from .graphs import (
    ConeSpec,
    MultiGraph,
    build,
    complete_bipartite_graph,
    complete_graph,
    components_and_bipartiteness,
    cone,
    count_subgraphs,
    cycle_graph,
    digon,
    disjoint_union,
    g_family_spec,
    path_graph,
    realize,
    star_graph,
    t_bar_f_bar,
    z_tree,
)
from .eigen import (
    QSpectrum,
    QuarticData,
    adjacency_matrix,
    char_poly_4x4,
    jacobi_eigenvalues,
    q_matrix,
    q_spectrum,
    quartic_roots,
    spectrum_compare,
    sym_eigenvalues,
)
from .cones import (
    EigenFamily,
    closed_spectrum_F,
    closed_spectrum_G,
    eigenvector_families,
    even_cycle_split_candidate,
    largest_q_eigenvalue,
    quartic_coeffs,
    quotient_matrix,
    triangle_star_mate,
)
from .moments import (
    CountVector,
    MomentVector,
    brute_counts,
    counts_closed_form,
    delta_moments,
    moments_from_counts,
    moments_from_spectrum,
    solve_degree_system,
)
from .search import (
    ProbeResult,
    SearchHit,
    SearchReport,
    degree_profile,
    enumerate_family,
    isomorphic,
    recognize_cone,
    run_probe,
    search_exhaustive,
    search_family,
)
from .cli import format_spec_text, parse_spec_text

__version__ = "0.1.0"
