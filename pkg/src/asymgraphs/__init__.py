"""Asymmetric graph families, automorphism certification and small censuses."""

__version__ = "0.1.0"

from .automorphism import (
    AutReport,
    Coloring,
    Permutation,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    is_asymmetric,
    refine,
)
from .constructions import (
    ConstructionSpec,
    classify_cubic_edges,
    cubic_family,
    extend_asymmetric,
    fig3_tree,
    higher_regular_family,
    quartic_family,
    search_5regular_asymmetric_hamiltonian,
    subdivided_star,
)
from .enumeration import (
    count_asds,
    distinct_partitions,
    enumerate_asymmetric_trees,
    enumerate_cubic_hamiltonian,
    is_subdivided_star,
    q_distinct,
)
from .graph import (
    Graph,
    build_graph,
    complement,
    decode_graph6,
    dirac_guarantees_hamiltonian,
    distance,
    edge_cycle_profile,
    encode_graph6,
    find_hamiltonian_cycle,
    to_dot,
)
