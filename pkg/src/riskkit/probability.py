"""Finite probability spaces, cost random variables, and their laws.

Everything downstream (static metrics, Choquet integration, envelopes,
audits, scenario trees) consumes the three value types defined here.
All types are immutable after construction and every operation is a
pure function, so instances can be shared freely across threads.

Costs are plain real numbers in whatever monetary unit the caller uses;
outcome identity is the index into the probability vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

PROB_SUM_TOL = 1e-9
"""Maximum drift of ``sum(probs)`` from 1 accepted at construction."""

VALUE_MERGE_TOL = 1e-12
"""Absolute tolerance under which two cost values are merged into one atom."""

COMONOTONE_TOL = 1e-12
"""Slack allowed in the pairwise comonotonicity products."""


def _frozen(array, dtype=float) -> np.ndarray:
    out = np.ascontiguousarray(array, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class ProbabilitySpace:
    """Finite outcome set ``0..n-1`` with one probability mass per outcome.

    Masses must be nonnegative and sum to 1 within ``PROB_SUM_TOL``;
    anything beyond that is rejected, smaller drift is silently
    renormalized so the stored vector sums to exactly 1 in working
    precision.  Zero-mass outcomes are legal.  Two spaces are compatible
    iff they have the same number of outcomes.
    """

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("probs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite")
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        total = float(p.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", _frozen(p / total))

    @property
    def n(self) -> int:
        return self.probs.size

    @classmethod
    def uniform(cls, n: int) -> "ProbabilitySpace":
        return cls(np.full(n, 1.0 / n))

    def compatible_with(self, other: "ProbabilitySpace") -> bool:
        return self.n == other.n


@dataclass(frozen=True, eq=False)
class CostRandomVariable:
    """A cost per outcome of a :class:`ProbabilitySpace`.

    Values must be finite (NaN and infinities are rejected at
    construction rather than propagated).  Arithmetic with scalars and
    with variables on the same space is supported so composite costs
    like ``z + w`` or ``0.5 * z`` read naturally.
    """

    space: ProbabilitySpace
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size != self.space.n:
            raise ValueError(
                f"expected {self.space.n} cost values, got shape {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("cost values must be finite")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def n(self) -> int:
        return self.space.n

    def _same_space(self, other: "CostRandomVariable") -> None:
        if self.space is not other.space and not (
            self.space.n == other.space.n
            and np.array_equal(self.space.probs, other.space.probs)
        ):
            raise ValueError("random variables live on incompatible spaces")

    def __add__(self, other):
        if isinstance(other, CostRandomVariable):
            self._same_space(other)
            return CostRandomVariable(self.space, self.values + other.values)
        return CostRandomVariable(self.space, self.values + float(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CostRandomVariable):
            self._same_space(other)
            return CostRandomVariable(self.space, self.values - other.values)
        return CostRandomVariable(self.space, self.values - float(other))

    def __mul__(self, factor):
        return CostRandomVariable(self.space, self.values * float(factor))

    __rmul__ = __mul__

    @cached_property
    def distribution(self) -> "Distribution":
        return Distribution(self.values, self.space.probs)

    @classmethod
    def from_json(cls, obj: dict) -> "CostRandomVariable":
        """Build from the ``{"probs": [...], "values": [...]}`` wire format."""
        if not isinstance(obj, dict) or set(obj) != {"probs", "values"}:
            raise ValueError('random variable JSON must have keys "probs" and "values"')
        probs, values = obj["probs"], obj["values"]
        if len(probs) != len(values):
            raise ValueError("probs and values must have equal length")
        return cls(ProbabilitySpace(probs), values)

    def to_json(self) -> dict:
        return {"probs": self.space.probs.tolist(), "values": self.values.tolist()}


@dataclass(frozen=True, eq=False)
class Distribution:
    """Canonical law of a cost variable: sorted, merged, zero-mass-free atoms.

    Construction canonicalizes: atoms are sorted ascending by value,
    values within ``VALUE_MERGE_TOL`` of the group representative are
    merged (masses summed), and zero-mass atoms are dropped.  The result
    has strictly increasing values and strictly positive masses summing
    to 1 up to float rounding.
    """

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        p = np.asarray(self.probs, dtype=float)
        if v.shape != p.shape or v.ndim != 1:
            raise ValueError("values and probs must be 1-d and equal length")
        if v.size <= 32:
            # plain-Python path: far cheaper than numpy on desk-size supports
            pairs = sorted(
                (val, mass) for val, mass in zip(v.tolist(), p.tolist()) if mass > 0
            )
            if not pairs:
                raise ValueError("distribution needs at least one atom of positive mass")
            out_v, out_p = [pairs[0][0]], [pairs[0][1]]
            for value, mass in pairs[1:]:
                if value - out_v[-1] <= VALUE_MERGE_TOL:
                    out_p[-1] += mass
                else:
                    out_v.append(value)
                    out_p.append(mass)
            v, p = np.array(out_v), np.array(out_p)
        else:
            keep = p > 0
            if not keep.all():
                v, p = v[keep], p[keep]
            if v.size == 0:
                raise ValueError("distribution needs at least one atom of positive mass")
            order = np.argsort(v, kind="stable")
            v, p = v[order], p[order]
            if v.size > 1 and np.min(np.diff(v)) <= VALUE_MERGE_TOL:
                # merge values within tolerance of their group's first (lowest) value
                out_v, out_p = [v[0]], [p[0]]
                for value, mass in zip(v[1:].tolist(), p[1:].tolist()):
                    if value - out_v[-1] <= VALUE_MERGE_TOL:
                        out_p[-1] += mass
                    else:
                        out_v.append(value)
                        out_p.append(mass)
                v, p = np.array(out_v), np.array(out_p)
        object.__setattr__(self, "values", _frozen(v))
        object.__setattr__(self, "probs", _frozen(p))

    @property
    def atoms(self) -> tuple:
        return tuple(zip(self.values.tolist(), self.probs.tolist()))

    @cached_property
    def desc_atoms(self) -> list:
        """Atoms as a plain list of ``(value, mass)``, highest value first."""
        return list(zip(self.values[::-1].tolist(), self.probs[::-1].tolist()))

    @cached_property
    def upper_tail_view(self) -> tuple:
        """``(values, probs, mass_above)`` sorted by descending value.

        ``mass_above[i]`` is the probability mass strictly above atom i's
        value; tail-mean metrics consume atoms through these views.
        """
        v = self.values[::-1]
        p = self.probs[::-1]
        mass_above = np.concatenate([[0.0], np.cumsum(p)[:-1]])
        return v, p, mass_above

    @cached_property
    def exceedance(self) -> np.ndarray:
        """``P[Z > values[i]]`` per atom, each a direct sum of tail masses."""
        rev = np.cumsum(self.probs[::-1])[::-1]
        return _frozen(np.concatenate([rev[1:], [0.0]]))

    def approx_equal(self, other: "Distribution", tol: float = 1e-9) -> bool:
        if self.values.size != other.values.size:
            return False
        return bool(
            np.all(np.abs(self.values - other.values) <= tol)
            and np.all(np.abs(self.probs - other.probs) <= tol)
        )


def expectation(z: CostRandomVariable) -> float:
    """Probability-weighted mean cost."""
    return float(np.dot(z.space.probs, z.values))


def variance(z: CostRandomVariable) -> float:
    """Population variance, computed as E[Z^2] - (E[Z])^2."""
    p, v = z.space.probs, z.values
    mean = float(np.dot(p, v))
    return float(np.dot(p, v * v)) - mean * mean


def worst_case(z: CostRandomVariable) -> float:
    """Largest cost among outcomes of positive probability.

    Zero-mass outcomes are excluded: a cost that cannot occur must not
    drive the assessment.
    """
    return float(z.distribution.values[-1])


def distribution_of(z: CostRandomVariable) -> Distribution:
    """Canonical law of ``z``; invariant under outcome relabelling."""
    return z.distribution


def is_comonotone(z: CostRandomVariable, other: CostRandomVariable) -> bool:
    """True iff the two costs rise and fall together across outcomes.

    Checks ``(z(w) - z(w')) * (other(w) - other(w')) >= -COMONOTONE_TOL``
    for every outcome pair by brute force over all n^2 pairs.  Raises
    ``ValueError`` for variables on incompatible spaces.
    """
    if z.n != other.n:
        raise ValueError("comonotonicity requires variables on the same space")
    dz = z.values[:, None] - z.values[None, :]
    dw = other.values[:, None] - other.values[None, :]
    return bool(np.all(dz * dw >= -COMONOTONE_TOL))


def identically_distributed(
    z: CostRandomVariable, other: CostRandomVariable, tol: float = 1e-9
) -> bool:
    """True iff the two variables have the same law within ``tol`` per atom.

    The variables may live on different spaces; only the canonical
    distributions are compared.
    """
    return distribution_of(z).approx_equal(distribution_of(other), tol)


def cost_rv(probs: Sequence[float], values: Sequence[float]) -> CostRandomVariable:
    """Convenience constructor: build space and variable in one call."""
    return CostRandomVariable(ProbabilitySpace(probs), values)
