"""Spread-gram network representation learning.

Thin Python layer over the C++ core: graph loading, spreading-activation
search, homogeneous/heterogeneous embedding training and the evaluation
harness.
"""

from ._core import (
    EmbeddingTable,
    Graph,
    HeteroTrainResult,
    MappingMatrices,
    TrainResult,
    __version__,
    classification_score,
    draw_samples,
    file_digest,
    graph_from_edges,
    link_prediction_accuracy,
    load_embeddings,
    load_graph,
    make_erdos_renyi,
    make_sbm,
    save_embeddings,
    spread_search,
    train,
    train_hetero,
)

__all__ = [
    "EmbeddingTable",
    "Graph",
    "HeteroTrainResult",
    "MappingMatrices",
    "TrainResult",
    "__version__",
    "classification_score",
    "draw_samples",
    "file_digest",
    "graph_from_edges",
    "link_prediction_accuracy",
    "load_embeddings",
    "load_graph",
    "make_erdos_renyi",
    "make_sbm",
    "save_embeddings",
    "spread_search",
    "train",
    "train_hetero",
]
