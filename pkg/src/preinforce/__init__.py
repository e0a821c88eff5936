"""p-domination, p-reinforcement and the extremal trees with r_p(T) = p + 1."""
from .deficiency import EtaWitness, MuReport, eta_graph, eta_local, eta_value, mu_graph, mu_point, mu_set
from .domination import (
    GammaCertificate,
    all_minimum_p_dominating_sets,
    ell_p,
    gamma_p,
    is_p_dominating,
    private_neighbors,
    uniqueness_report,
)
from .exceptions import (
    BudgetExhausted,
    GraphError,
    NotATreeError,
    PreconditionError,
    PreinforceError,
    SizeGuardError,
)
from .family import (
    ConstructionTrace,
    LayerPartition,
    Step,
    apply_operation,
    build_block,
    generate_member,
    join_with_edge,
    layer_partition,
    recognize,
    recognize_exhaustive,
    replay_trace,
)
from .graph_core import (
    Graph,
    RootedView,
    canonical_code,
    complement_edges,
    component_of,
    enumerate_trees,
    from_edge_list,
    is_tree,
    path_graph,
    random_tree,
    read_edge_list,
    rooted,
    star,
)
from .reinforcement import ReinforcementResult, r_p, r_p_by_definition, r_p_by_eta
from .verifier import VerificationReport, figure1_fixture_check, run_theorem_suite, structural_property_checks

__version__ = "0.1.0"
