from .constants import (
    FractionalOrder,
    KernelConstants,
    normalization_constant,
    singular_coefficient,
)
from .moments import segment_kernel_moments, exterior_tail_weight, power_integral

__all__ = [
    "FractionalOrder",
    "KernelConstants",
    "normalization_constant",
    "singular_coefficient",
    "segment_kernel_moments",
    "exterior_tail_weight",
    "power_integral",
]
