"""Fractional edge covers, fractional hypertree decompositions and CSP solving."""

from .errors import FracCspError, InvalidArgument, ResourceLimit, UnknownVertex
from .hypergraph import Hypergraph, components, induced_subhypergraph, primal_graph, reachable
from .weights import (
    FractionalWeighting,
    blocked_set,
    extend_weighting,
    fractional_edge_cover,
    fractional_independent_set,
    integral_edge_cover,
    restrict_weighting,
    restricted_weight,
)
from .csp import (
    Constraint,
    CspInstance,
    Relation,
    RelationalStructure,
    brute_force_solutions,
    hypergraph_of,
    induced_instance,
    instance_size,
    is_solution,
    project_relation,
    structures_to_csp,
)
from .enumeration import enumerate_by_cover, intermediate_list_sizes
from .decomp import (
    FractionalHypertreeDecomposition,
    GeneralizedHypertreeDecomposition,
    TreeDecomposition,
    balanced_separator,
    decompose_by_separators,
    exact_width,
    validate,
)
from .game import army_width, blockable_family, general_wins
from .solver import enumerate_all, project_solutions, solve, solve_with_decomposition, variable_order
from .generators import (
    generate_hn,
    generate_matching,
    generate_random,
    generate_tight,
    generate_universal,
)

__version__ = "0.1.0"
