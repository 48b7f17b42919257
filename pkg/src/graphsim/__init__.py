"""MDL graph summaries, common models, and the Normalized Model Distance."""

from .align import (
    SimilarityDescription,
    aligned_jaccard,
    build_common,
    common_overlap_tree,
    describe,
    maximal_greedy,
    overlap_tree,
    tree_to_dot,
)
from .codec import (
    CommonModel,
    CommonStructure,
    TransformPair,
    common_model_length,
    log_binomial,
    model_length,
    structure_length,
    transform_length,
    universal_int,
)
from .errors import (
    ConvergenceError,
    GraphSimError,
    InputError,
    InvariantError,
    ParseError,
)
from .generate import ba, composition_grid, drift_sequence, er, plant, PlantSpec
from .graph import (
    Graph,
    NodeAlignment,
    jaccard,
    load_alignment,
    load_edge_list,
    save_edge_list,
)
from .maxent import build_constraints, data_length, fit
from .similarity import NmdResult, nmd, pairwise_matrix
from .structures import (
    Biclique,
    Clique,
    Model,
    Star,
    Starclique,
    StructureKind,
)
from .summarize import SummarizerConfig, decompose, summarize

__version__ = "0.1.0"
