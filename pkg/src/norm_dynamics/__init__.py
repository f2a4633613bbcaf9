"""Evolutionary dynamics of authorship-ordering norms.

Two listing conventions compete in a population of junior and senior
researchers: the C-norm (authors ordered by contribution) and the I-norm
(junior listed first regardless of contribution).  The package models how
the community's credit-attribution behaviour shapes which convention wins,
and how each convention makes collaborations fall through when one side
expects too little credit.
"""

from .collaboration import (
    NORM_C,
    NORM_I,
    FailureReport,
    IntervalSet,
    cnorm_refusal_regions,
    ex_ante_player_payoff,
    failure_report,
    inorm_refusal_regions,
    monte_carlo_failure,
    norm_comparison_grid,
    preference_grid,
)
from .credit import (
    BiasParams,
    CreditMixture,
    GameParams,
    PopulationState,
    PureStrategyPayoffs,
    bias_mixture,
    collaboration_probability,
    expected_payoffs,
    listing_probabilities,
    posterior_junior_greater,
    pure_strategy_payoffs,
)
from .dynamics import (
    LABEL_C_NORM,
    LABEL_I_NORM,
    LABEL_NO_COLLABORATION,
    LABEL_OTHER,
    OUTCOME_CODES,
    OUTCOME_LABELS,
    BasinReport,
    BasinSweepPoint,
    IntegratorConfig,
    Outcome,
    basin_fractions,
    basin_sweep,
    find_interior_equilibrium,
    integrate_trajectory,
    replicator_field,
    stream_field_grid,
)
from .errors import (
    ConfigParseError,
    ConfigValidationError,
    DegenerateDistributionError,
    DistributionRequiredError,
    NormDynamicsError,
    ParameterError,
    SchemaError,
)
from .priors import (
    BetaPrior,
    ContributionStats,
    beta_cdf,
    conditional_mean_above,
    conditional_mean_below,
    derive_contribution_stats,
    stats_from_explicit,
)
from .report import ResultTable, emit_csv, emit_json, emit_svg

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BetaPrior",
    "ContributionStats",
    "beta_cdf",
    "conditional_mean_above",
    "conditional_mean_below",
    "derive_contribution_stats",
    "stats_from_explicit",
    "BiasParams",
    "CreditMixture",
    "GameParams",
    "PopulationState",
    "PureStrategyPayoffs",
    "bias_mixture",
    "collaboration_probability",
    "expected_payoffs",
    "listing_probabilities",
    "posterior_junior_greater",
    "pure_strategy_payoffs",
    "LABEL_C_NORM",
    "LABEL_I_NORM",
    "LABEL_NO_COLLABORATION",
    "LABEL_OTHER",
    "OUTCOME_CODES",
    "OUTCOME_LABELS",
    "BasinReport",
    "BasinSweepPoint",
    "IntegratorConfig",
    "Outcome",
    "basin_fractions",
    "basin_sweep",
    "find_interior_equilibrium",
    "integrate_trajectory",
    "replicator_field",
    "stream_field_grid",
    "NORM_C",
    "NORM_I",
    "FailureReport",
    "IntervalSet",
    "cnorm_refusal_regions",
    "ex_ante_player_payoff",
    "failure_report",
    "inorm_refusal_regions",
    "monte_carlo_failure",
    "norm_comparison_grid",
    "preference_grid",
    "ResultTable",
    "emit_csv",
    "emit_json",
    "emit_svg",
    "NormDynamicsError",
    "ParameterError",
    "DegenerateDistributionError",
    "DistributionRequiredError",
    "SchemaError",
    "ConfigParseError",
    "ConfigValidationError",
]
