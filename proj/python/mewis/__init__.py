"""Maximum-weight independent sets, entropy weights and graph pooling."""

from ._core import (  # noqa: F401
    BudgetExceeded,
    EntropyWeights,
    Extraction,
    Graph,
    InputError,
    PooledGraph,
    build_weights,
    exact_bnb,
    exact_enumerate,
    extract,
    gen_random,
    greedy,
    load_edge_list,
    load_features,
    local_variation,
    mewis_pool,
    pool_loss,
    reconstruct,
    solve,
    verify_independent,
    walk_reachability,
)

__version__ = "0.1.0"
