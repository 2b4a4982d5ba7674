"""Graph kernels behind one estimator contract."""

from .base import (
    FeatureMap,
    FeatureMapKernel,
    Kernel,
    KernelMatrix,
    ZeroSelfKernelWarning,
    fm_dot,
    gram_matrix,
    normalize_matrix,
)
from .graphlet import GraphletSampling, GraphletTable, build_graphlet_table, graphlet_features, per_graph_rng
from .histogram import EdgeHistogram, VertexHistogram, edge_histogram_features, vertex_histogram_features
from .random_walk import RandomWalk, WalkParams, random_walk_kernel_pair, spectral_radius_estimate
from .shortest_path import ShortestPath, shortest_path_features
from .spec import KERNEL_NAMES, KernelSpec, validate_spec
from .weisfeiler_lehman import WeisfeilerLehman, WlDictionary, wl_iteration
from .wrapper import GraphKernel, make_kernel

__all__ = [
    "FeatureMap",
    "FeatureMapKernel",
    "Kernel",
    "KernelMatrix",
    "ZeroSelfKernelWarning",
    "fm_dot",
    "gram_matrix",
    "normalize_matrix",
    "GraphletSampling",
    "GraphletTable",
    "build_graphlet_table",
    "graphlet_features",
    "per_graph_rng",
    "EdgeHistogram",
    "VertexHistogram",
    "edge_histogram_features",
    "vertex_histogram_features",
    "RandomWalk",
    "WalkParams",
    "random_walk_kernel_pair",
    "spectral_radius_estimate",
    "ShortestPath",
    "shortest_path_features",
    "KERNEL_NAMES",
    "KernelSpec",
    "validate_spec",
    "WeisfeilerLehman",
    "WlDictionary",
    "wl_iteration",
    "GraphKernel",
    "make_kernel",
]
