"""Construct, verify and measure commutative layered graphs with exact arithmetic."""

from ._backend import BACKEND, compiled_kernels
from .constructors import (
    AbelianGroup,
    GroupSet,
    addition_graph,
    cartesian_product,
    channel,
    independent_addition_graph,
    inverse_graph,
    join_construction,
    subgraph,
)
from .errors import CapExceeded, GraphError, HypothesisNotMet, PluenneckeError
from .graph import LayeredGraph, VertexId, VertexSet, image, path_graph
from .inverse import (
    InverseCertificate,
    c1_characterization_check,
    check_sharpness,
    find_minimal_equality_set,
    inverse_theorem_certificate,
)
from .magnification import (
    SeparatingSet,
    count_vertex_disjoint_max_paths,
    delta,
    growth_bound_check,
    magnification_ratio,
    magnification_table,
    min_weight_separating_set,
    plunnecke_inequality_check,
    pull_down,
    verify_level2_partition_identity,
    verify_level2_prime_identity,
)
from .matching import (
    BipartiteView,
    MatchingWitness,
    channel_monotonicity_equivalence_check,
    one_to_k_matching,
    verify_degree_monotonicity,
    verify_plunnecke_conditions,
    verify_regular,
)
from .regular import ThetaMap, build_rc, build_rk, build_theta_r1, extend_level, theta_map

__version__ = "0.1.0"
