"""Coherent information of dephased graph states across a bipartition."""

from .closedform import (
    OverlapTriple,
    f1,
    f2,
    kA1_entropy,
    kA2_entropy,
    kA2_weights,
    optimal_type1,
    optimal_type2,
    q,
    rank1_ci,
    rank2_type1_ci,
    rank2_type2_ci,
)
from .entropy import (
    CapExceeded,
    CIResult,
    GeneratorMatrix,
    WeightVector,
    binary_entropy,
    coherent_information,
    compute_weights,
    extract_generator_matrix,
    side_entropy,
    subsystem_entropy,
)
from .estimator import CoherentInformation
from .gf2 import BitMatrix, rank, row_echelon
from .graphstate import (
    BipartiteGraphState,
    NoiseModel,
    StructureClass,
    biadjacency,
    block_graph,
    classify,
    complete_bipartite,
    random_graph,
    read_graph,
    star,
    write_graph,
)
from .oracle import oracle_ci
from .repcode import BellDiagonalState, ci_bell, rep_code_ci_all_noise, rep_code_state_bob_noise

__version__ = "0.1.0"

__all__ = [
    "BellDiagonalState",
    "BipartiteGraphState",
    "BitMatrix",
    "CIResult",
    "CapExceeded",
    "CoherentInformation",
    "GeneratorMatrix",
    "NoiseModel",
    "OverlapTriple",
    "StructureClass",
    "WeightVector",
    "biadjacency",
    "binary_entropy",
    "block_graph",
    "ci_bell",
    "classify",
    "coherent_information",
    "complete_bipartite",
    "compute_weights",
    "extract_generator_matrix",
    "f1",
    "f2",
    "kA1_entropy",
    "kA2_entropy",
    "kA2_weights",
    "optimal_type1",
    "optimal_type2",
    "oracle_ci",
    "q",
    "random_graph",
    "rank",
    "rank1_ci",
    "rank2_type1_ci",
    "rank2_type2_ci",
    "read_graph",
    "rep_code_ci_all_noise",
    "rep_code_state_bob_noise",
    "row_echelon",
    "side_entropy",
    "star",
    "subsystem_entropy",
    "write_graph",
]
