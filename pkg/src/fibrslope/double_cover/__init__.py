"""Double cover fibrations: singularity bookkeeping, invariant formulas, bounds."""

from .bounds import (
    BoundsProfile,
    F_invariant,
    SlopeBoundReport,
    all_bounds,
    best_bound,
    double_cover_bounds,
    general_bounds,
    lambda_threshold,
)
from .formulas import (
    CoefficientSet,
    ConstraintVerdict,
    DoubleCoverData,
    IrregularCoefficients,
    TermBreakdown,
    branch_positivity_check,
    coefficients,
    compute_T,
    invariants_from_double_cover,
    irregular_coefficients,
    irregular_constraint,
    lambda_coefficients,
    lambda_decomposition,
    s2_from_geometry,
    validate_double_cover,
)
from .resolution import (
    FiberBranchData,
    SingNode,
    SingularIndices,
    SingularityForest,
    classify_singularities,
    validate_forest,
)

__all__ = [name for name in dir() if not name.startswith("_")]
