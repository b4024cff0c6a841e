"""Social welfare orderings, axiom checking, and derivation certificates."""

from .axioms import (
    AXIOM_TAGS,
    Anonymity,
    AxiomInstance,
    CheckResult,
    CheckStatus,
    MinimalAggregation,
    MinimalNonAggregation,
    PigouDalton,
    QuantitativeAggregation,
    RatioAggregation,
    ReplicationInvariance,
    StrongNonAggThreshold,
    StrongNonAggregation,
    StrongPareto,
    StrongerNonAggregation,
    SuiteResult,
    WeakPareto,
    check_axiom,
    generate_instances,
    instance_from_config,
    instance_to_config,
    run_suite,
    validate_preconditions,
)
from .errors import (
    CertificateError,
    ConfigError,
    DomainError,
    InfeasibleParameters,
    MaterializeError,
    MissingLambda,
    ProfileParseError,
    SizeMismatch,
    WelfareaxError,
)
from .gfunctions import (
    GFunction,
    Identity,
    LogShifted,
    PiecewiseLinear,
    SaturatingExp,
    Sqrt,
    g_from_config,
    g_to_config,
)
from .orderings import (
    BoundedG,
    ConcavePoor,
    ConstantLambda,
    ExactValue,
    FloatValue,
    Leximin,
    MidpointLambda,
    MultiThreshold,
    OrderingSpec,
    RankWeighted,
    Rdu,
    SuffAvg,
    TableLambda,
    boundedg_value,
    concavepoor_value,
    evaluate,
    gn_eval,
    lambda_feasible_interval,
    leximin_compare,
    multithreshold_value,
    ordering_from_config,
    ordering_to_config,
    rankweighted_value,
    rdu_compare,
    rdu_value,
    rdu_value_exact,
    suffavg_value,
    swo_compare,
)
from .profiles import (
    CompareResult,
    IndexSet,
    Level,
    Profile,
    RankedProfile,
    Verdict,
    as_level,
    ceil_ratio,
    parse_profile_line,
    parse_profiles,
    permute,
    rank,
    replicate,
    serialize_profile,
)

__version__ = "0.1.0"
