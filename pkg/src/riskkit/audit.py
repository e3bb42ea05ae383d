"""Randomized, seeded falsification of risk-metric axioms.

Each audit hunts for a counterexample to one axiom of a black-box
metric: deterministic "museum" cases (the canonical pitfall instances
below) run first so classic witnesses appear verbatim in reports, then
seeded random trials probe further.  A ``violated`` verdict always
carries a replayable counterexample whose violation exceeds the scaled
tolerance; ``no-violation-found`` is exactly that, never a proof of
satisfaction.

Tolerances are relative: a relation is flagged only beyond
``VIOLATION_TOL * (1 + max |metric value involved|)``, so metrics
evaluated on costs of magnitude 1e10 are not flagged for float dust.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from .metrics import MetricSpec, evaluate
from .probability import CostRandomVariable, ProbabilitySpace, is_comonotone

AXIOMS = (
    "monotonicity",
    "translation_invariance",
    "positive_homogeneity",
    "subadditivity",
    "comonotone_additivity",
    "law_invariance",
)

VIOLATION_TOL = 1e-7
NO_VIOLATION = "no-violation-found"
VIOLATED = "violated"

DEFAULT_TRIALS = 10_000
DEFAULT_N_RANGE = (2, 8)

_AXIOM_INDEX = {name: i for i, name in enumerate(AXIOMS)}

# Axiom profiles commonly reported for these metrics in the risk
# literature; used as the expected verdicts that audit_all compares
# against.  Disagreements are surfaced as discrepancies, not suppressed.
REFERENCE_AXIOM_PROFILES = {
    "expected": frozenset(AXIOMS),
    "worst_case": frozenset(AXIOMS),
    "cvar": frozenset(AXIOMS),
    "mixture": frozenset(AXIOMS),
    "var": frozenset(AXIOMS) - {"subadditivity"},
    "mean_variance": frozenset({"law_invariance"}),
    "entropic": frozenset({"monotonicity", "translation_invariance", "law_invariance"}),
    "semideviation": frozenset(AXIOMS) - {"comonotone_additivity"},
}

# Canonical pitfall instances.  The first pair is pointwise ordered yet
# reverses under mean-variance; the second pair differs only in a
# 0.2-probability catastrophe that the 0.3-level quantile ignores.
PITFALL_MV_PROBS = (0.25, 0.25, 0.25, 0.25)
PITFALL_MV_LOW = (1.0, 2.0, 3.0, 4.0)
PITFALL_MV_HIGH = (2.0, 2.0, 3.0, 4.0)
PITFALL_TAIL_PROBS = (0.4, 0.4, 0.2)
PITFALL_TAIL_MILD = (1.0, 2.0, 3.0)
PITFALL_TAIL_EXTREME = (1.0, 1.99, 1e10)


@dataclass(frozen=True)
class MetricUnderTest:
    """A black-box metric: a name, an evaluator, and optional expectations.

    ``eval`` must be deterministic, total on valid cost variables, and
    safe to call concurrently.  ``claimed_axioms`` is the set of axiom
    names the metric is believed to satisfy (``None`` to skip the
    comparison in :func:`audit_all`).
    """

    name: str
    eval: Callable[[CostRandomVariable], float]
    claimed_axioms: Optional[frozenset] = None


@dataclass(frozen=True)
class Counterexample:
    """Replayable witness of one failed axiom relation.

    ``probs``/``values`` define the first variable, ``other_values``
    (and ``other_probs`` when the second variable lives on its own
    space) the second, ``scalar`` the shift/scaling constant where the
    axiom uses one.  ``lhs`` and ``rhs`` are the two sides of the failed
    relation; ``violation`` exceeds ``tolerance``.
    """

    axiom: str
    label: str
    probs: tuple
    values: tuple
    other_probs: Optional[tuple]
    other_values: Optional[tuple]
    scalar: Optional[float]
    lhs: float
    rhs: float
    violation: float
    tolerance: float

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "label": self.label,
            "probs": list(self.probs),
            "values": list(self.values),
            "other_probs": None if self.other_probs is None else list(self.other_probs),
            "other_values": None
            if self.other_values is None
            else list(self.other_values),
            "scalar": self.scalar,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "violation": self.violation,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    verdict: str
    trials: int
    seed: int
    counterexample: Optional[Counterexample] = None

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "verdict": self.verdict, "trials": self.trials,
               "seed": self.seed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        return out


@dataclass(frozen=True)
class Discrepancy:
    """Disagreement between an audit verdict and the claimed profile."""

    axiom: str
    claimed_satisfied: bool
    violation_found: bool

    def describe(self) -> str:
        if self.claimed_satisfied and self.violation_found:
            return f"{self.axiom}: claimed satisfied, but a violation was found"
        return (
            f"{self.axiom}: claimed unsatisfied, but no violation was found "
            f"(the search is one-sided; this may mean the claim is too pessimistic)"
        )

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "claimed_satisfied": self.claimed_satisfied,
            "violation_found": self.violation_found,
        }


@dataclass(frozen=True)
class AuditReport:
    metric_name: str
    trials: int
    seed: int
    verdicts: Tuple[AxiomVerdict, ...]
    claimed_axioms: Optional[frozenset] = None

    def verdict_for(self, axiom: str) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    @property
    def violated_axioms(self) -> frozenset:
        return frozenset(v.axiom for v in self.verdicts if v.violated)

    @property
    def discrepancies(self) -> Tuple[Discrepancy, ...]:
        if self.claimed_axioms is None:
            return ()
        out = []
        for v in self.verdicts:
            claimed = v.axiom in self.claimed_axioms
            if claimed == v.violated:
                out.append(Discrepancy(v.axiom, claimed, v.violated))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "metric": self.metric_name,
            "trials": self.trials,
            "seed": self.seed,
            "axioms": [v.to_json() for v in self.verdicts],
            "claimed_axioms": None
            if self.claimed_axioms is None
            else sorted(self.claimed_axioms),
            "discrepancies": [d.to_json() for d in self.discrepancies],
        }


@dataclass(frozen=True)
class _Case:
    probs: tuple
    values: tuple
    other_probs: Optional[tuple] = None
    other_values: Optional[tuple] = None
    scalar: Optional[float] = None
    label: str = "randomized trial"


def _tol(*metric_values: float) -> float:
    return VIOLATION_TOL * (1.0 + max(abs(v) for v in metric_values))


def _pair_on_shared_space(case: _Case):
    space = ProbabilitySpace(case.probs)
    z = CostRandomVariable(space, case.values)
    other = CostRandomVariable(space, case.other_values)
    return z, other


def _rel_monotonicity(ev, case):
    z, higher = _pair_on_shared_space(case)
    lhs, rhs = ev(z), ev(higher)
    return lhs, rhs, lhs - rhs, _tol(lhs, rhs)


def _rel_translation(ev, case):
    z = CostRandomVariable(ProbabilitySpace(case.probs), case.values)
    shifted, base = ev(z + case.scalar), ev(z)
    return shifted, base + case.scalar, abs(shifted - base - case.scalar), _tol(shifted, base)


def _rel_homogeneity(ev, case):
    z = CostRandomVariable(ProbabilitySpace(case.probs), case.values)
    scaled, base = ev(case.scalar * z), ev(z)
    rhs = case.scalar * base
    return scaled, rhs, abs(scaled - rhs), _tol(scaled, base, rhs)


def _rel_subadditivity(ev, case):
    z, other = _pair_on_shared_space(case)
    joint, a, b = ev(z + other), ev(z), ev(other)
    return joint, a + b, joint - (a + b), _tol(joint, a, b)


def _rel_comonotone_additivity(ev, case):
    z, other = _pair_on_shared_space(case)
    if not is_comonotone(z, other):
        raise RuntimeError("internal error: comonotone audit produced a non-comonotone pair")
    joint, a, b = ev(z + other), ev(z), ev(other)
    return joint, a + b, abs(joint - (a + b)), _tol(joint, a, b)


def _rel_law_invariance(ev, case):
    z = CostRandomVariable(ProbabilitySpace(case.probs), case.values)
    other = CostRandomVariable(
        ProbabilitySpace(case.other_probs), case.other_values
    )
    lhs, rhs = ev(z), ev(other)
    return lhs, rhs, abs(lhs - rhs), _tol(lhs, rhs)


_RELATIONS = {
    "monotonicity": _rel_monotonicity,
    "translation_invariance": _rel_translation,
    "positive_homogeneity": _rel_homogeneity,
    "subadditivity": _rel_subadditivity,
    "comonotone_additivity": _rel_comonotone_additivity,
    "law_invariance": _rel_law_invariance,
}


def replay_violation(metric: MetricUnderTest, cx: Counterexample) -> Counterexample:
    """Re-evaluate a counterexample's relation from its stored inputs."""
    case = _Case(
        cx.probs, cx.values, cx.other_probs, cx.other_values, cx.scalar, cx.label
    )
    lhs, rhs, violation, tolerance = _RELATIONS[cx.axiom](metric.eval, case)
    return Counterexample(
        cx.axiom, cx.label, cx.probs, cx.values, cx.other_probs, cx.other_values,
        cx.scalar, lhs, rhs, violation, tolerance,
    )


# ---------------------------------------------------------------------------
# Samplers


def _rng(axiom: str, seed: int) -> np.random.Generator:
    return np.random.default_rng([_AXIOM_INDEX.get(axiom, len(AXIOMS)), seed])


def _sample_probs(rng, n_range) -> np.ndarray:
    lo, hi = n_range
    n = int(rng.integers(lo, hi + 1))
    roll = float(rng.random())
    if roll < 0.2:
        return np.full(n, 1.0 / n)
    p = rng.random(n) + 1e-9
    if roll < 0.3 and n >= 2:
        p[int(rng.integers(n))] = 0.0
    return p / p.sum()


def _sample_values(rng, n: int) -> np.ndarray:
    v = rng.uniform(-10.0, 10.0, n)
    heavy = rng.random(n) < 0.05
    k = int(heavy.sum())
    if k:
        sign = np.where(rng.random(k) < 0.5, -1.0, 1.0)
        v[heavy] = sign * 10.0 ** rng.uniform(2.0, 6.0, k)
    return v


def _monotone_values(rng, n_levels: int) -> np.ndarray:
    """Nondecreasing values over ``n_levels`` ranks of a driving variable."""
    increments = rng.uniform(0.0, 3.0, n_levels) * (rng.random(n_levels) > 0.3)
    increments[0] = 0.0
    if rng.random() < 0.1:
        increments[:] = 0.0
    scale = 100.0 if rng.random() < 0.1 else 1.0
    return rng.uniform(-10.0, 10.0) + scale * np.cumsum(increments)


def _case_monotonicity(rng, n_range) -> _Case:
    p = _sample_probs(rng, n_range)
    v = _sample_values(rng, p.size)
    bump = rng.uniform(0.0, 5.0, p.size)
    bump[rng.random(p.size) < 0.3] = 0.0
    return _Case(tuple(p), tuple(v), other_values=tuple(v + bump))


def _case_translation(rng, n_range) -> _Case:
    p = _sample_probs(rng, n_range)
    return _Case(
        tuple(p), tuple(_sample_values(rng, p.size)),
        scalar=float(rng.uniform(-10.0, 10.0)),
    )


def _case_homogeneity(rng, n_range) -> _Case:
    p = _sample_probs(rng, n_range)
    beta = 0.0 if rng.random() < 0.05 else float(rng.uniform(0.0, 5.0))
    return _Case(tuple(p), tuple(_sample_values(rng, p.size)), scalar=beta)


def _case_subadditivity(rng, n_range) -> _Case:
    p = _sample_probs(rng, n_range)
    return _Case(
        tuple(p),
        tuple(_sample_values(rng, p.size)),
        other_values=tuple(_sample_values(rng, p.size)),
    )


def _case_comonotone(rng, n_range) -> _Case:
    p = _sample_probs(rng, n_range)
    driver = rng.uniform(-10.0, 10.0, p.size)
    _, ranks = np.unique(driver, return_inverse=True)
    n_levels = int(ranks.max()) + 1
    z = _monotone_values(rng, n_levels)[ranks]
    other = _monotone_values(rng, n_levels)[ranks]
    return _Case(tuple(p), tuple(z), other_values=tuple(other))


def _case_law_invariance(rng, n_range) -> _Case:
    lo, hi = n_range
    if hi == lo or rng.random() < 0.5:
        n = int(rng.integers(lo, hi + 1))
        p = tuple(np.full(n, 1.0 / n))
        v = _sample_values(rng, n)
        return _Case(p, tuple(v), other_probs=p,
                     other_values=tuple(v[rng.permutation(n)]))
    n = int(rng.integers(lo, hi))
    p = _sample_probs(rng, (n, n))
    v = _sample_values(rng, n)
    j = int(rng.integers(n))
    split_p = np.concatenate([p, [p[j] / 2.0]])
    split_p[j] /= 2.0
    split_v = np.concatenate([v, [v[j]]])
    return _Case(tuple(p), tuple(v), other_probs=tuple(split_p),
                 other_values=tuple(split_v))


_SAMPLERS = {
    "monotonicity": _case_monotonicity,
    "translation_invariance": _case_translation,
    "positive_homogeneity": _case_homogeneity,
    "subadditivity": _case_subadditivity,
    "comonotone_additivity": _case_comonotone,
    "law_invariance": _case_law_invariance,
}


def _museum_cases(axiom: str) -> Tuple[_Case, ...]:
    pointwise_pair = _Case(
        PITFALL_MV_PROBS, PITFALL_MV_LOW, other_values=PITFALL_MV_HIGH,
        label="canonical pointwise-dominated pair",
    )
    tail_pair_label = "canonical heavy-tail pair"
    if axiom == "monotonicity":
        capped = tuple(np.maximum(PITFALL_TAIL_MILD, PITFALL_TAIL_EXTREME))
        return (
            pointwise_pair,
            _Case(PITFALL_TAIL_PROBS, PITFALL_TAIL_MILD, other_values=capped,
                  label=tail_pair_label),
        )
    if axiom == "translation_invariance":
        return (
            _Case(PITFALL_MV_PROBS, PITFALL_MV_LOW, scalar=2.5,
                  label="canonical pair, shift 2.5"),
            _Case(PITFALL_TAIL_PROBS, PITFALL_TAIL_EXTREME, scalar=-3.0,
                  label="heavy-tail costs, shift -3"),
        )
    if axiom == "positive_homogeneity":
        return (
            _Case(PITFALL_MV_PROBS, PITFALL_MV_LOW, scalar=2.0,
                  label="canonical pair, scale 2"),
            _Case(PITFALL_TAIL_PROBS, PITFALL_TAIL_EXTREME, scalar=0.5,
                  label="heavy-tail costs, scale 0.5"),
            _Case(PITFALL_MV_PROBS, PITFALL_MV_LOW, scalar=0.0,
                  label="degenerate scale 0"),
        )
    if axiom == "subadditivity":
        return (
            pointwise_pair,
            _Case(PITFALL_TAIL_PROBS, PITFALL_TAIL_MILD,
                  other_values=PITFALL_TAIL_EXTREME, label=tail_pair_label),
            _Case((0.5, 0.5), (0.0, 10.0), other_values=(10.0, 0.0),
                  label="anticomonotone swap pair"),
        )
    if axiom == "comonotone_additivity":
        return (
            _Case(PITFALL_TAIL_PROBS, PITFALL_TAIL_MILD,
                  other_values=PITFALL_TAIL_EXTREME, label=tail_pair_label),
            pointwise_pair,
            _Case(PITFALL_MV_PROBS, PITFALL_MV_LOW,
                  other_values=(5.0, 5.0, 5.0, 5.0),
                  label="constant second variable"),
        )
    if axiom == "law_invariance":
        return (
            _Case((0.5, 0.5), (1.0, 10.0), other_probs=(0.5, 0.5),
                  other_values=(10.0, 1.0), label="two-outcome swap"),
            _Case((0.5, 0.5), (5.0, 7.0), other_probs=(0.25, 0.25, 0.5),
                  other_values=(5.0, 5.0, 7.0), label="atom split in half"),
        )
    raise KeyError(axiom)


def _in_range(case: _Case, n_range) -> bool:
    lo, hi = n_range
    sizes = [len(case.probs)]
    if case.other_probs is not None:
        sizes.append(len(case.other_probs))
    return all(lo <= s <= hi for s in sizes)


def _run_audit(
    axiom: str,
    metric: MetricUnderTest,
    trials: int,
    seed: int,
    n_range,
) -> AxiomVerdict:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    relation = _RELATIONS[axiom]
    rng = _rng(axiom, seed)
    sampler = _SAMPLERS[axiom]
    museum = (c for c in _museum_cases(axiom) if _in_range(c, n_range))
    randomized = (sampler(rng, n_range) for _ in range(trials))
    for case in itertools.chain(museum, randomized):
        lhs, rhs, violation, tolerance = relation(metric.eval, case)
        if violation > tolerance:
            cx = Counterexample(
                axiom, case.label, case.probs, case.values, case.other_probs,
                case.other_values, case.scalar, lhs, rhs, violation, tolerance,
            )
            return AxiomVerdict(axiom, VIOLATED, trials, seed, cx)
    return AxiomVerdict(axiom, NO_VIOLATION, trials, seed, None)


def audit_monotonicity(metric, trials=DEFAULT_TRIALS, seed=0, n_range=DEFAULT_N_RANGE):
    """Search for pointwise-ordered pairs whose assessments invert."""
    return _run_audit("monotonicity", metric, trials, seed, n_range)


def audit_translation(metric, trials=DEFAULT_TRIALS, seed=0, n_range=DEFAULT_N_RANGE):
    """Search for a deterministic shift the metric does not pass through."""
    return _run_audit("translation_invariance", metric, trials, seed, n_range)


def audit_homogeneity(metric, trials=DEFAULT_TRIALS, seed=0, n_range=DEFAULT_N_RANGE):
    """Search for a nonnegative scaling the metric does not commute with."""
    return _run_audit("positive_homogeneity", metric, trials, seed, n_range)


def audit_subadditivity(metric, trials=DEFAULT_TRIALS, seed=0, n_range=DEFAULT_N_RANGE):
    """Search for pairs assessed as riskier together than apart."""
    return _run_audit("subadditivity", metric, trials, seed, n_range)


def audit_comonotone_additivity(
    metric, trials=DEFAULT_TRIALS, seed=0, n_range=DEFAULT_N_RANGE
):
    """Search for comonotone pairs on which the metric is not additive.

    Pairs are built as monotone transforms of a shared driving variable,
    so comonotonicity holds by construction (and is re-checked).
    """
    return _run_audit("comonotone_additivity", metric, trials, seed, n_range)


def audit_law_invariance(metric, trials=DEFAULT_TRIALS, seed=0, n_range=DEFAULT_N_RANGE):
    """Search for equidistributed pairs the metric tells apart.

    Pairs are generated by permuting outcomes of equiprobable spaces and
    by splitting one atom into two equal halves on a larger space.
    """
    return _run_audit("law_invariance", metric, trials, seed, n_range)


_AUDITS = {
    "monotonicity": audit_monotonicity,
    "translation_invariance": audit_translation,
    "positive_homogeneity": audit_homogeneity,
    "subadditivity": audit_subadditivity,
    "comonotone_additivity": audit_comonotone_additivity,
    "law_invariance": audit_law_invariance,
}


def audit_all(
    metric: MetricUnderTest,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    n_range=DEFAULT_N_RANGE,
    axioms: Sequence[str] = AXIOMS,
) -> AuditReport:
    """Run the requested audits and compare against the claimed profile.

    Verdicts are reported in axiom order; any disagreement with
    ``metric.claimed_axioms`` appears in ``report.discrepancies``.
    """
    verdicts = tuple(
        _AUDITS[axiom](metric, trials=trials, seed=seed, n_range=n_range)
        for axiom in axioms
    )
    return AuditReport(metric.name, trials, seed, verdicts, metric.claimed_axioms)


def check_convexity(metric, trials=DEFAULT_TRIALS, seed=0, n_range=DEFAULT_N_RANGE):
    """Spot-check convexity of the metric on random mixing weights.

    Metrics passing both the homogeneity and subadditivity audits are
    convex; this verifies the combination directly.
    """
    rng = _rng("convexity", seed)
    for _ in range(trials):
        p = _sample_probs(rng, n_range)
        space = ProbabilitySpace(p)
        z = CostRandomVariable(space, _sample_values(rng, p.size))
        other = CostRandomVariable(space, _sample_values(rng, p.size))
        lam = float(rng.random())
        mixed = lam * z + (1.0 - lam) * other
        lhs = metric.eval(mixed)
        a, b = metric.eval(z), metric.eval(other)
        rhs = lam * a + (1.0 - lam) * b
        if lhs - rhs > _tol(lhs, a, b):
            cx = Counterexample(
                "convexity", "randomized trial", tuple(p), tuple(z.values), None,
                tuple(other.values), lam, lhs, rhs, lhs - rhs, _tol(lhs, a, b),
            )
            return AxiomVerdict("convexity", VIOLATED, trials, seed, cx)
    return AxiomVerdict("convexity", NO_VIOLATION, trials, seed, None)


def metric_from_spec(spec: MetricSpec, name: Optional[str] = None) -> MetricUnderTest:
    """Wrap a metric spec as an auditable black box with its reference profile."""
    return MetricUnderTest(
        name or str(spec),
        lambda z: evaluate(spec, z),
        REFERENCE_AXIOM_PROFILES[spec.kind],
    )


def render_report(report: AuditReport) -> str:
    """Human-readable audit table, one line per axiom."""
    width = max(len(a) for a in AXIOMS)
    lines = [
        f"axiom audit of {report.metric_name}"
        f"  (trials={report.trials}, seed={report.seed})"
    ]
    for v in report.verdicts:
        if v.violated:
            cx = v.counterexample
            lines.append(f"  {v.axiom:<{width}}  VIOLATED  [{cx.label}]")
            lines.append(f"  {'':<{width}}    probs  = {list(cx.probs)}")
            lines.append(f"  {'':<{width}}    values = {list(cx.values)}")
            if cx.other_values is not None:
                lines.append(f"  {'':<{width}}    other  = {list(cx.other_values)}")
            if cx.other_probs is not None:
                lines.append(f"  {'':<{width}}    other probs = {list(cx.other_probs)}")
            if cx.scalar is not None:
                lines.append(f"  {'':<{width}}    scalar = {cx.scalar:.10g}")
            lines.append(
                f"  {'':<{width}}    lhs = {cx.lhs:.10g}, rhs = {cx.rhs:.10g}, "
                f"violation = {cx.violation:.10g} > tol {cx.tolerance:.10g}"
            )
        else:
            lines.append(
                f"  {v.axiom:<{width}}  no violation found in {v.trials} trials"
                f" (not a proof)"
            )
    if report.claimed_axioms is not None:
        lines.append(f"  claimed profile: {', '.join(sorted(report.claimed_axioms))}")
        for d in report.discrepancies:
            lines.append(f"  DISCREPANCY  {d.describe()}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Canonical pitfall demos


@dataclass(frozen=True)
class MeanVariancePitfall:
    """Mean-variance preference reversal on a pointwise-ordered pair."""

    probs: tuple
    low_costs: tuple
    high_costs: tuple
    score_low: float
    score_high: float
    metric_prefers: str
    dominance_prefers: str
    monotonicity_verdict: AxiomVerdict

    def to_json(self) -> dict:
        return {
            "metric": "mean_variance(beta=1)",
            "probs": list(self.probs),
            "low_costs": list(self.low_costs),
            "high_costs": list(self.high_costs),
            "score_low": self.score_low,
            "score_high": self.score_high,
            "metric_prefers": self.metric_prefers,
            "dominance_prefers": self.dominance_prefers,
            "monotonicity": self.monotonicity_verdict.to_json(),
        }


@dataclass(frozen=True)
class ValueAtRiskPitfall:
    """Quantile blindness to catastrophe size, and the tail-mean fix."""

    probs: tuple
    mild_costs: tuple
    extreme_costs: tuple
    alpha: float
    var_mild: float
    var_extreme: float
    var_prefers: str
    cvar_mild: float
    cvar_extreme: float
    cvar_prefers: str

    def to_json(self) -> dict:
        return {
            "probs": list(self.probs),
            "mild_costs": list(self.mild_costs),
            "extreme_costs": list(self.extreme_costs),
            "alpha": self.alpha,
            "var_mild": self.var_mild,
            "var_extreme": self.var_extreme,
            "var_prefers": self.var_prefers,
            "cvar_mild": self.cvar_mild,
            "cvar_extreme": self.cvar_extreme,
            "cvar_prefers": self.cvar_prefers,
        }


def demo_mean_variance_pitfall(trials: int = 100, seed: int = 0) -> MeanVariancePitfall:
    """Score the canonical pointwise-ordered pair under mean-variance.

    The lower-cost variable scores 3.75, the pointwise-higher one
    3.4375, so the metric prefers the dominated alternative; the
    monotonicity audit returns the same pair as witness.
    """
    metric = metric_from_spec(MetricSpec.mean_variance(1.0))
    space = ProbabilitySpace(PITFALL_MV_PROBS)
    low = CostRandomVariable(space, PITFALL_MV_LOW)
    high = CostRandomVariable(space, PITFALL_MV_HIGH)
    score_low, score_high = metric.eval(low), metric.eval(high)
    return MeanVariancePitfall(
        PITFALL_MV_PROBS,
        PITFALL_MV_LOW,
        PITFALL_MV_HIGH,
        score_low,
        score_high,
        "high" if score_high < score_low else "low",
        "low",
        audit_monotonicity(metric, trials=trials, seed=seed),
    )


def demo_value_at_risk_pitfall(alpha: float = 0.3) -> ValueAtRiskPitfall:
    """Compare quantile and tail-mean rankings of the heavy-tail pair.

    At level 0.3 the quantile reads 2 vs 1.99 and prefers the variable
    hiding a catastrophe; the tail mean reverses the preference.
    """
    from .metrics import cvar, value_at_risk

    space = ProbabilitySpace(PITFALL_TAIL_PROBS)
    mild = CostRandomVariable(space, PITFALL_TAIL_MILD)
    extreme = CostRandomVariable(space, PITFALL_TAIL_EXTREME)
    var_m, var_e = value_at_risk(mild, alpha), value_at_risk(extreme, alpha)
    cvar_m, cvar_e = cvar(mild, alpha), cvar(extreme, alpha)
    return ValueAtRiskPitfall(
        PITFALL_TAIL_PROBS,
        PITFALL_TAIL_MILD,
        PITFALL_TAIL_EXTREME,
        alpha,
        var_m,
        var_e,
        "extreme" if var_e < var_m else "mild",
        cvar_m,
        cvar_e,
        "mild" if cvar_m < cvar_e else "extreme",
    )
