"""Interactive (f-correlated) fuzzy numbers via alpha-cut interval calculus."""
from .core import (
    DEFAULT_LEVELS,
    AlphaCutNumber,
    Interval,
    LRNumber,
    ShapeFunction,
    alpha_grid,
    alpha_level,
    as_alpha_cut,
    crisp,
    equals_by_levels,
    from_lr,
    level_distance,
    level_endpoints,
    membership,
    trap,
    tri,
)
from .correlation import (
    CorrelationFunction,
    FCorrelated,
    JointDistribution,
    NonInteractive,
    TNorm,
    check_marginal_consistency,
    hyperbolic,
    identity,
    induced_marginal,
    joint_membership,
    linear,
    make_correlation,
    user,
)
from .errors import DomainViolationError, FuzzyError, InvalidParameterError, NumericDomainError
from .extension import (
    OracleOptions,
    RangeFinderOptions,
    correlated_binop,
    extend_function,
    extend_monotone,
    interactive_binop,
    noninteractive_binop,
    oracle_extend,
    oracle_tolerance,
    range_extend,
)
from .shape import (
    TheoremReport,
    lr_refit,
    propagate_lr_linear,
    trap_complete_corr,
    tri_complete_corr,
    verify_endpoint_theorem,
)

__version__ = "0.1.0"
