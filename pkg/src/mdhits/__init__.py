"""Multi-dimensional HITS centrality for temporal multilayer networks."""

from .errors import (
    InactiveModeError,
    InfeasibleAlphaError,
    MDHitsError,
    NonconformingError,
    ParseError,
    ShapeError,
    WeightError,
    ZeroTensorError,
)
from .tensor import SparseTensor, SupportSet, contract, contract_all, from_edge_list, mode_support
from .spectral import ExponentConfig, build_weight_matrix, check_feasible, make_config, perron
from .mapcore import apply_map, beta_norm, hilbert_distance, normalize, singular_value
from .solver import (
    Solution,
    SolverConfig,
    classical_hits,
    monolayer_hits,
    residual,
    solve,
)
from .metrics import (
    RankedList,
    aggregate_degree,
    intersection_agreement,
    intersection_similarity,
    kendall_tau,
    ranked,
    top_k,
)
from .dataio import (
    EdgeFormat,
    SynthSpec,
    generate_random,
    load_tensor,
    parse,
    read_solution,
    write_edge_list,
    write_solution,
)

__version__ = "0.1.0"
