"""stlab: spanning-tree statistics, balls-into-bins on bipartite graphs,
and tree-isomorphism census tooling."""

__version__ = "0.1.0"

from .graphs import (
    BipartiteGraph,
    Graph,
    GraphSpec,
    check_almost_regular,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    generate,
    geometric_avg_degree,
    is_connected,
    laplacian,
    read_edge_list,
    write_edge_list,
)
from .spanning import (
    Tree,
    almost_regular_lower_log,
    count_spanning_trees,
    enumerate_spanning_trees,
    kostochka_upper_log,
    mckay_growth_constant,
    sample_ust,
)
from .treeiso import (
    OtterFit,
    aut_size,
    canonical_code,
    census,
    code_to_tree,
    enumerate_unlabeled_trees,
    enumerate_unlabeled_trees_dedup,
    leaf_count,
    otter_ratio_fit,
    prufer_decode,
    prufer_encode,
)
from .ballsbins import (
    Band,
    BoundParams,
    DegreeStats,
    MCTailEstimate,
    OutputAssignment,
    degree_stats,
    delta_limit,
    exact_count_expectation,
    exact_count_variance,
    exact_degree_prob,
    exact_pair_prob,
    expectation_band,
    mc_tail_estimate,
    median_band,
    poisson_reference,
    sample_assignment,
    stddev_bound,
    tail_bound,
)
from .bounds import (
    BoundReport,
    anticoncentration_bound,
    bound_for_tree,
    bregman_minc_log,
    count_labeled_copies,
    iso_class_probability,
    labeled_copies_bound,
    permanent_ryser,
    stirling_factor,
)
from .config import ConfigError, ExperimentConfig, parse_config, render_config
from .experiments import RunManifest, emit_plotdata, run
from .rng import substream
