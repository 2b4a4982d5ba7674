"""Graph-kernel library: kernels behind a fit / fit_transform / transform /
diagonal contract, dataset ingestion, Nystrom approximation, and a
precomputed-kernel SVM pipeline."""

from . import errors
from .datasets import (
    DEFAULT_BASE_URL,
    DatasetBundle,
    fetch_dataset,
    load_dataset,
    parse_tu,
    write_tu_dataset,
)
from .graph import (
    UNREACHABLE,
    CanonicalCode,
    DistanceMatrix,
    Graph,
    canonical_code,
    direct_product,
    floyd_warshall,
    from_adjacency,
    from_edge_dictionary,
    induced_subgraph,
)
from .kernels import (
    KERNEL_NAMES,
    GraphKernel,
    KernelMatrix,
    KernelSpec,
    ZeroSelfKernelWarning,
    make_kernel,
    normalize_matrix,
)
from .matrix_io import read_matrix, write_matrix
from .nystrom import NystromState, nystrom_embed, nystrom_fit
from .pipeline import (
    OneVsOneModel,
    SvmModel,
    accuracy,
    one_vs_one,
    one_vs_one_predict,
    svm_predict,
    svm_train,
    train_test_split,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "DEFAULT_BASE_URL",
    "DatasetBundle",
    "fetch_dataset",
    "load_dataset",
    "parse_tu",
    "write_tu_dataset",
    "UNREACHABLE",
    "CanonicalCode",
    "DistanceMatrix",
    "Graph",
    "canonical_code",
    "direct_product",
    "floyd_warshall",
    "from_adjacency",
    "from_edge_dictionary",
    "induced_subgraph",
    "KERNEL_NAMES",
    "GraphKernel",
    "KernelMatrix",
    "KernelSpec",
    "ZeroSelfKernelWarning",
    "make_kernel",
    "normalize_matrix",
    "read_matrix",
    "write_matrix",
    "NystromState",
    "nystrom_embed",
    "nystrom_fit",
    "OneVsOneModel",
    "SvmModel",
    "accuracy",
    "one_vs_one",
    "one_vs_one_predict",
    "svm_predict",
    "svm_train",
    "train_test_split",
    "__version__",
]
