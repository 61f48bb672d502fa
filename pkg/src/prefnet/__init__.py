"""prefnet: preference evolution on weighted networks, noisy biased-walk
diffusion, and route-overlap measures."""

from .diffusion import (
    DiffusionConfig,
    Imprint,
    budgets_from_ratios,
    draw_initiators,
    jump,
    noise_map,
    run_ensemble,
    sample_eta,
    simulate_hashtag,
)
from .errors import (
    DegenerateRowError,
    EmptyNetworkError,
    IngestFormatError,
    NoCommonUsersError,
    PrefnetError,
    StuckWalkerError,
    UndefinedMeasureError,
    ZeroRowError,
)
from .evolution import (
    EvolutionConfig,
    Model,
    event_prob_global_meanfield,
    evolve,
    init_underlying,
    meanfield_degree_global,
    step_global,
    step_local,
)
from .ingest import (
    HashtagDataset,
    ParseResult,
    RetweetRecord,
    build_networks,
    enumerate_pairs,
    parse_log,
    ratio_distribution,
)
from .measures import (
    Half,
    PairResult,
    functional_similarity,
    mean_functional_similarity,
    measure_pair,
    modified_weighted_jaccard,
    preprocess_pair,
    state_vector,
)
from .network import WeightedNetwork, intersect_nodes, new_network
from .stats import HistogramResult, KsResult, histogram, ks_statistic, sturges_bins

__version__ = "0.1.0"

__all__ = [
    "DiffusionConfig", "Imprint", "budgets_from_ratios", "draw_initiators",
    "jump", "noise_map", "run_ensemble", "sample_eta", "simulate_hashtag",
    "DegenerateRowError", "EmptyNetworkError", "IngestFormatError",
    "NoCommonUsersError", "PrefnetError", "StuckWalkerError",
    "UndefinedMeasureError", "ZeroRowError",
    "EvolutionConfig", "Model", "event_prob_global_meanfield", "evolve",
    "init_underlying", "meanfield_degree_global", "step_global", "step_local",
    "HashtagDataset", "ParseResult", "RetweetRecord", "build_networks",
    "enumerate_pairs", "parse_log", "ratio_distribution",
    "Half", "PairResult", "functional_similarity", "mean_functional_similarity",
    "measure_pair", "modified_weighted_jaccard", "preprocess_pair", "state_vector",
    "WeightedNetwork", "intersect_nodes", "new_network",
    "HistogramResult", "KsResult", "histogram", "ks_statistic", "sturges_bins",
    "__version__",
]
