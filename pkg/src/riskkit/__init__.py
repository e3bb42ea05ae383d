"""Risk metrics over finite cost distributions.

Evaluation of the standard static metrics (tail quantiles and means,
mean-variance, entropic, semideviation, spectral mixtures), their
capacity and worst-case-expectation representations, randomized
axiom auditing, and time-consistent dynamic assessment on scenario
trees.
"""

from .audit import (
    AXIOMS,
    AuditReport,
    AxiomVerdict,
    Counterexample,
    Discrepancy,
    MetricUnderTest,
    NO_VIOLATION,
    REFERENCE_AXIOM_PROFILES,
    VIOLATED,
    VIOLATION_TOL,
    audit_all,
    audit_comonotone_additivity,
    audit_homogeneity,
    audit_law_invariance,
    audit_monotonicity,
    audit_subadditivity,
    audit_translation,
    check_convexity,
    demo_mean_variance_pitfall,
    demo_value_at_risk_pitfall,
    metric_from_spec,
    render_report,
    replay_violation,
)
from .capacities import (
    SetFunction,
    check_monotone,
    check_normalized,
    check_submodular,
    choquet_integral,
    distortion_set_function,
    monotone_witness,
    submodular_witness,
    subset_masses,
)
from .envelope import RiskEnvelope, envelope_eval, envelope_of
from .metrics import (
    MetricSpec,
    SpectralMeasure,
    cvar,
    cvar_variational,
    distortion_mixture,
    entropic,
    evaluate,
    mean_variance,
    semideviation,
    spectral_atoms,
    value_at_risk,
)
from .probability import (
    CostRandomVariable,
    Distribution,
    ProbabilitySpace,
    cost_rv,
    distribution_of,
    expectation,
    identically_distributed,
    is_comonotone,
    variance,
    worst_case,
)
from .trees import (
    CompoundedEvaluator,
    LocalPropertyResult,
    ScenarioTree,
    StaticTailEvaluator,
    TimeConsistencyCounterexample,
    TimeConsistencyResult,
    TreeNode,
    check_local_property,
    check_time_consistency,
    compounded_eval,
    random_tree,
    static_eval,
    time_inconsistency_example,
    total_cost_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "AXIOMS",
    "AuditReport",
    "AxiomVerdict",
    "CompoundedEvaluator",
    "CostRandomVariable",
    "Counterexample",
    "Discrepancy",
    "Distribution",
    "LocalPropertyResult",
    "MetricSpec",
    "MetricUnderTest",
    "NO_VIOLATION",
    "ProbabilitySpace",
    "REFERENCE_AXIOM_PROFILES",
    "RiskEnvelope",
    "ScenarioTree",
    "SetFunction",
    "SpectralMeasure",
    "StaticTailEvaluator",
    "TimeConsistencyCounterexample",
    "TimeConsistencyResult",
    "TreeNode",
    "VIOLATED",
    "VIOLATION_TOL",
    "audit_all",
    "audit_comonotone_additivity",
    "audit_homogeneity",
    "audit_law_invariance",
    "audit_monotonicity",
    "audit_subadditivity",
    "audit_translation",
    "check_convexity",
    "check_local_property",
    "check_monotone",
    "check_normalized",
    "check_submodular",
    "check_time_consistency",
    "choquet_integral",
    "compounded_eval",
    "cost_rv",
    "cvar",
    "cvar_variational",
    "demo_mean_variance_pitfall",
    "demo_value_at_risk_pitfall",
    "distortion_mixture",
    "distortion_set_function",
    "distribution_of",
    "entropic",
    "envelope_eval",
    "envelope_of",
    "evaluate",
    "expectation",
    "identically_distributed",
    "is_comonotone",
    "mean_variance",
    "metric_from_spec",
    "monotone_witness",
    "random_tree",
    "render_report",
    "replay_violation",
    "semideviation",
    "spectral_atoms",
    "static_eval",
    "submodular_witness",
    "subset_masses",
    "time_inconsistency_example",
    "total_cost_distribution",
    "value_at_risk",
    "variance",
    "worst_case",
]
