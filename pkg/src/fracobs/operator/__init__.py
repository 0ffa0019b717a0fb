from .stencil import InterpolationStencil, interpolation_stencil
from .assembly import DiscreteOperator, assemble_operator, improved_scales, contact_distance
from .structure import (
    StructureReport,
    BarrierReport,
    ComparisonTrial,
    verify_monotone_structure,
    barrier_report,
    check_enhanced_comparison,
    random_comparison_trials,
)

__all__ = [
    "InterpolationStencil",
    "interpolation_stencil",
    "DiscreteOperator",
    "assemble_operator",
    "improved_scales",
    "contact_distance",
    "StructureReport",
    "BarrierReport",
    "ComparisonTrial",
    "verify_monotone_structure",
    "barrier_report",
    "check_enhanced_comparison",
    "random_comparison_trials",
]
