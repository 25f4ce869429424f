"""Upper and lower quantum functionals of complex tensors."""
from .tensor import (
    Bipartition,
    BipartitionDistribution,
    DensityOperator,
    Tensor,
    ZeroTensorError,
    apply_local_maps,
    bipartition_entropy,
    direct_sum,
    flatten,
    flattening_rank,
    is_laminar,
    kronecker,
    marginal,
    random_gaussian_tensor,
    restricted_distribution,
    weighted_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "BipartitionDistribution",
    "DensityOperator",
    "Tensor",
    "ZeroTensorError",
    "apply_local_maps",
    "bipartition_entropy",
    "direct_sum",
    "flatten",
    "flattening_rank",
    "is_laminar",
    "kronecker",
    "marginal",
    "random_gaussian_tensor",
    "restricted_distribution",
    "weighted_entropy",
]
