"""Closed-form static risk metrics over finite cost distributions.

Tail-level convention: ``alpha`` is the probability mass of the upper
tail under scrutiny.  ``value_at_risk(z, alpha)`` is the smallest cost
threshold whose exceedance probability is at most ``alpha``;
``cvar(z, alpha)`` is the mean of the worst ``alpha`` mass of outcomes,
so ``cvar(z, 1)`` is the plain expectation and ``alpha -> 0`` recovers
the worst case.  All metrics here are law invariant: they depend on a
variable only through its canonical distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .probability import (
    CostRandomVariable,
    expectation,
    variance,
    worst_case,
)

LEVEL_MERGE_TOL = 1e-12
"""Tail levels closer than this are treated as one spectral atom."""

WEIGHT_SUM_TOL = 1e-9
"""Maximum drift of spectral weights from summing to 1."""


@dataclass(frozen=True)
class SpectralMeasure:
    """Probability weights over tail levels in ``[0, 1]``.

    ``atoms`` is a sequence of ``(level, weight)`` pairs.  Weights must
    be positive and sum to 1 within ``WEIGHT_SUM_TOL``; they are
    renormalized to sum to exactly 1 in working precision.  Equal levels
    (within ``LEVEL_MERGE_TOL``) are merged by summing their weights,
    and atoms are stored sorted by level, so equality of two measures is
    equality of their canonical forms.
    """

    atoms: tuple

    def __post_init__(self):
        pairs = [(float(a), float(w)) for a, w in self.atoms]
        if not pairs:
            raise ValueError("spectral measure needs at least one atom")
        for level, weight in pairs:
            if not (0.0 <= level <= 1.0) or not np.isfinite(level):
                raise ValueError(f"tail level {level!r} outside [0, 1]")
            if weight <= 0 or not np.isfinite(weight):
                raise ValueError(f"spectral weight {weight!r} must be positive")
        total = sum(w for _, w in pairs)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"spectral weights sum to {total!r}, not 1")
        pairs.sort()
        merged = [list(pairs[0])]
        for level, weight in pairs[1:]:
            if level - merged[-1][0] <= LEVEL_MERGE_TOL:
                merged[-1][1] += weight
            else:
                merged.append([level, weight])
        object.__setattr__(
            self, "atoms", tuple((lvl, w / total) for lvl, w in merged)
        )

    @classmethod
    def point(cls, level: float) -> "SpectralMeasure":
        """Unit mass at a single tail level."""
        return cls(((level, 1.0),))

    @classmethod
    def from_json(cls, obj) -> "SpectralMeasure":
        try:
            atoms = tuple((a["alpha"], a["weight"]) for a in obj)
        except (TypeError, KeyError) as exc:
            raise ValueError(
                'mixture atoms must be a list of {"alpha": ..., "weight": ...}'
            ) from exc
        return cls(atoms)

    def to_json(self) -> list:
        return [{"alpha": lvl, "weight": w} for lvl, w in self.atoms]


_KINDS = (
    "expected",
    "worst_case",
    "var",
    "cvar",
    "mean_variance",
    "entropic",
    "semideviation",
    "mixture",
)


@dataclass(frozen=True)
class MetricSpec:
    """Declarative description of one static risk metric instance.

    Exactly one ``kind`` with the parameters that kind requires:
    ``var``/``cvar`` take ``alpha``, ``mean_variance`` takes ``beta >= 0``,
    ``entropic`` takes ``theta > 0`` (default 1), ``semideviation`` takes
    ``c`` in [0, 1] (default 1), ``mixture`` takes a
    :class:`SpectralMeasure`.  JSON form mirrors the fields, e.g.
    ``{"kind": "cvar", "alpha": 0.3}``.
    """

    kind: str
    alpha: Optional[float] = None
    beta: Optional[float] = None
    theta: Optional[float] = None
    c: Optional[float] = None
    measure: Optional[SpectralMeasure] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown metric kind {self.kind!r}")
        needed = {
            "expected": (),
            "worst_case": (),
            "var": ("alpha",),
            "cvar": ("alpha",),
            "mean_variance": ("beta",),
            "entropic": ("theta",),
            "semideviation": ("c",),
            "mixture": ("measure",),
        }[self.kind]
        for field in ("alpha", "beta", "theta", "c", "measure"):
            value = getattr(self, field)
            if field in needed:
                if value is None:
                    raise ValueError(f"{self.kind} metric requires {field}")
            elif value is not None:
                raise ValueError(f"{self.kind} metric does not take {field}")
        if self.kind == "var" and not 0.0 <= self.alpha < 1.0:
            raise ValueError("var requires alpha in [0, 1)")
        if self.kind == "cvar" and not 0.0 <= self.alpha <= 1.0:
            raise ValueError("cvar requires alpha in [0, 1]")
        if self.kind == "mean_variance" and self.beta < 0:
            raise ValueError("mean_variance requires beta >= 0")
        if self.kind == "entropic" and self.theta <= 0:
            raise ValueError("entropic requires theta > 0")
        if self.kind == "semideviation" and not 0.0 <= self.c <= 1.0:
            raise ValueError("semideviation requires c in [0, 1]")

    # Constructors, one per kind, so call sites read like the metric itself.
    @classmethod
    def expected(cls) -> "MetricSpec":
        return cls("expected")

    @classmethod
    def worst(cls) -> "MetricSpec":
        return cls("worst_case")

    @classmethod
    def var(cls, alpha: float) -> "MetricSpec":
        return cls("var", alpha=float(alpha))

    @classmethod
    def cvar(cls, alpha: float) -> "MetricSpec":
        return cls("cvar", alpha=float(alpha))

    @classmethod
    def mean_variance(cls, beta: float) -> "MetricSpec":
        return cls("mean_variance", beta=float(beta))

    @classmethod
    def entropic(cls, theta: float = 1.0) -> "MetricSpec":
        return cls("entropic", theta=float(theta))

    @classmethod
    def semideviation(cls, c: float = 1.0) -> "MetricSpec":
        return cls("semideviation", c=float(c))

    @classmethod
    def mixture(cls, measure: SpectralMeasure) -> "MetricSpec":
        return cls("mixture", measure=measure)

    @classmethod
    def from_json(cls, obj: dict) -> "MetricSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError('metric JSON must be an object with a "kind" key')
        kind = obj["kind"]
        params = {k: v for k, v in obj.items() if k != "kind"}
        if kind == "mixture":
            atoms = params.pop("atoms", None)
            if atoms is None:
                raise ValueError('mixture metric requires an "atoms" list')
            measure = SpectralMeasure.from_json(atoms)
            spec = cls(kind, measure=measure, **params)
        else:
            spec = cls(kind, **params)
        return spec

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for field in ("alpha", "beta", "theta", "c"):
            value = getattr(self, field)
            if value is not None:
                out[field] = value
        if self.measure is not None:
            out["atoms"] = self.measure.to_json()
        return out

    def __str__(self) -> str:
        params = {
            "var": lambda: f"alpha={self.alpha:g}",
            "cvar": lambda: f"alpha={self.alpha:g}",
            "mean_variance": lambda: f"beta={self.beta:g}",
            "entropic": lambda: f"theta={self.theta:g}",
            "semideviation": lambda: f"c={self.c:g}",
            "mixture": lambda: ", ".join(
                f"{w:g}@{lvl:g}" for lvl, w in self.measure.atoms
            ),
        }
        inner = params[self.kind]() if self.kind in params else ""
        return f"{self.kind}({inner})"


def value_at_risk(z: CostRandomVariable, alpha: float) -> float:
    """Smallest cost whose exceedance probability is at most ``alpha``.

    ``min{t : P[Z > t] <= alpha}`` for ``alpha`` in [0, 1); the minimum
    is always attained at a support value, and ``alpha = 0`` gives the
    worst case.  Ties use the weak inequality, so at an exact tail
    breakpoint the lower support value wins.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError("value_at_risk requires alpha in [0, 1)")
    dist = z.distribution
    idx = int(np.argmax(dist.exceedance <= alpha))
    return float(dist.values[idx])


def cvar(z: CostRandomVariable, alpha: float) -> float:
    """Mean of the worst ``alpha`` probability mass of costs.

    Exact value of the tail-quantile average on a finite distribution:
    atoms are consumed from the top of the sorted support, the boundary
    atom contributing only the mass needed to reach ``alpha``.  By
    convention ``alpha = 0`` is the worst case (the limiting assessment)
    and ``alpha = 1`` the expectation.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("cvar requires alpha in [0, 1]")
    if alpha == 0.0:
        return worst_case(z)
    dist = z.distribution
    if dist.values.size <= 32:
        remaining = alpha
        acc = 0.0
        for value, mass in dist.desc_atoms:
            if remaining <= mass:
                acc += value * remaining
                break
            acc += value * mass
            remaining -= mass
        return acc / alpha
    v, p, mass_above = dist.upper_tail_view
    take = np.clip(alpha - mass_above, 0.0, p)
    return float(np.dot(v, take) / alpha)


def cvar_variational(z: CostRandomVariable, alpha: float) -> float:
    """Tail mean via its variational form, as an independent cross-check.

    Minimizes ``t + E[(Z - t)+] / alpha`` over thresholds ``t``.  The
    objective is piecewise linear with breakpoints at support values, so
    scanning the support finds the exact minimum.  Agrees with
    :func:`cvar` to within float rounding.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("cvar_variational requires alpha in [0, 1]")
    if alpha == 0.0:
        return worst_case(z)
    dist = z.distribution
    v, p = dist.values, dist.probs
    excess = np.clip(v[None, :] - v[:, None], 0.0, None)
    objective = v + excess @ p / alpha
    return float(objective.min())


def mean_variance(z: CostRandomVariable, beta: float) -> float:
    """Expectation plus ``beta`` times the variance (``beta >= 0``)."""
    if beta < 0:
        raise ValueError("mean_variance requires beta >= 0")
    return expectation(z) + beta * variance(z)


def entropic(z: CostRandomVariable, theta: float = 1.0) -> float:
    """Exponential-utility certainty equivalent ``log(E[exp(theta Z)]) / theta``.

    Computed as a log-sum-exp shifted by ``max(theta * Z)`` over the
    positive-mass support, so costs at any monetary scale are safe from
    overflow.
    """
    if theta <= 0:
        raise ValueError("entropic requires theta > 0")
    dist = z.distribution
    scaled = theta * dist.values
    shift = scaled.max()
    return float(shift + np.log(np.dot(dist.probs, np.exp(scaled - shift)))) / theta


def semideviation(z: CostRandomVariable, c: float = 1.0) -> float:
    """Expectation plus ``c`` times the upper second-order semideviation.

    ``E[Z] + c * sqrt(E[((Z - E[Z])+)^2])`` with ``c`` in [0, 1].
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError("semideviation requires c in [0, 1]")
    p, v = z.space.probs, z.values
    mean = float(np.dot(p, v))
    upside = np.clip(v - mean, 0.0, None)
    return mean + c * float(np.sqrt(np.dot(p, upside * upside)))


def distortion_mixture(z: CostRandomVariable, measure: SpectralMeasure) -> float:
    """Weighted mixture of tail means across the measure's levels.

    ``sum_i w_i * cvar(z, level_i)``; a level-0 atom contributes the
    worst case and a level-1 atom the expectation, matching the
    endpoint conventions of :func:`cvar`.
    """
    return sum(w * cvar(z, level) for level, w in measure.atoms)


_EVALUATORS = {
    "expected": lambda spec, z: expectation(z),
    "worst_case": lambda spec, z: worst_case(z),
    "var": lambda spec, z: value_at_risk(z, spec.alpha),
    "cvar": lambda spec, z: cvar(z, spec.alpha),
    "mean_variance": lambda spec, z: mean_variance(z, spec.beta),
    "entropic": lambda spec, z: entropic(z, spec.theta),
    "semideviation": lambda spec, z: semideviation(z, spec.c),
    "mixture": lambda spec, z: distortion_mixture(z, spec.measure),
}


def evaluate(spec: MetricSpec, z: CostRandomVariable) -> float:
    """Apply the metric a :class:`MetricSpec` describes to ``z``."""
    return _EVALUATORS[spec.kind](spec, z)


def spectral_atoms(levels: Iterable[float], weights: Iterable[float]) -> SpectralMeasure:
    """Convenience constructor pairing separate level and weight sequences."""
    return SpectralMeasure(tuple(zip(levels, weights)))
