"""Performance limits of a semantic link under RF interference.

Monte Carlo tail-probability estimation for four interference scenarios,
the matching analytic bounds, and the threshold algebra of the logistic
similarity surrogate, behind a deterministic seeded sampling layer.
"""

from .bounds import (
    BoundReport,
    arctan_integral_bound,
    closed_form_tail,
    f_mean,
    markov_from_threshold,
    markov_upper_bound,
    outage_lower_bound,
)
from .engine import (
    SweepPoint,
    SweepResult,
    TailEstimate,
    estimate_tail,
    sweep_tail,
    wilson_interval,
)
from .logistic import (
    ConditionError,
    ConditionId,
    ConditionReport,
    LogisticParams,
    SemanticThreshold,
    alpha_of,
    beta_threshold,
    check_conditions,
    default_family,
    kappa_of,
    select_optimal_k,
    semantic_threshold,
    similarity,
)
from .scenarios import ScenarioConfig, Variant, draw_budget, realize_batch, realize_statistic
from .streams import (
    CHUNK_DRAWS,
    StreamKey,
    chi_squared_draw,
    complex_gaussian_unit_stream,
    f_ratio_draw,
    f_ratio_stream,
    standard_normal_stream,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CHUNK_DRAWS",
    "ConditionError",
    "ConditionId",
    "ConditionReport",
    "LogisticParams",
    "ScenarioConfig",
    "SemanticThreshold",
    "StreamKey",
    "SweepPoint",
    "SweepResult",
    "TailEstimate",
    "Variant",
    "alpha_of",
    "arctan_integral_bound",
    "beta_threshold",
    "check_conditions",
    "chi_squared_draw",
    "closed_form_tail",
    "complex_gaussian_unit_stream",
    "default_family",
    "draw_budget",
    "estimate_tail",
    "f_mean",
    "f_ratio_draw",
    "f_ratio_stream",
    "kappa_of",
    "markov_from_threshold",
    "markov_upper_bound",
    "outage_lower_bound",
    "realize_batch",
    "realize_statistic",
    "select_optimal_k",
    "semantic_threshold",
    "similarity",
    "standard_normal_stream",
    "sweep_tail",
    "wilson_interval",
]
