"""Set functions on the power set of a finite outcome space.

A capacity assigns a number in [0, 1] to every subset of outcomes,
encoded as an n-bit mask into a table of 2^n entries.  The module
provides the structural checks (normalized, monotone, submodular), the
Choquet integral of a cost variable against a capacity, and the
distorted-probability capacity induced by a spectral measure.

Storage is explicit, so n is capped at 20 (about a million table
entries); the quadratic-in-table submodularity scan is capped at 12.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .metrics import SpectralMeasure
from .probability import CostRandomVariable, ProbabilitySpace, _frozen

TABLE_TOL = 1e-12
"""Slack allowed in normalization, monotonicity and submodularity checks."""

MAX_OUTCOMES = 20
MAX_SUBMODULAR_OUTCOMES = 12


@dataclass(frozen=True, eq=False)
class SetFunction:
    """Table of subset values ``g(A)`` indexed by bitmask.

    Bit ``i`` of the mask selects outcome ``i``; index 0 is the empty
    set and index ``2^n - 1`` the full outcome set.  The constructor
    checks shape and finiteness only, so defective tables can be built
    and then interrogated with the ``check_*`` functions.
    """

    n: int
    table: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_OUTCOMES:
            raise ValueError(f"n must be in 1..{MAX_OUTCOMES}, got {self.n}")
        t = np.asarray(self.table, dtype=float)
        if t.shape != (1 << self.n,):
            raise ValueError(
                f"table must have {1 << self.n} entries for n={self.n}, got {t.shape}"
            )
        if not np.all(np.isfinite(t)):
            raise ValueError("table entries must be finite")
        object.__setattr__(self, "table", _frozen(t))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def of(self, subset: Iterable[int]) -> float:
        """Value at a subset given as an iterable of outcome indices."""
        mask = 0
        for i in subset:
            if not 0 <= i < self.n:
                raise ValueError(f"outcome index {i} out of range")
            mask |= 1 << i
        return float(self.table[mask])

    @classmethod
    def from_probability(cls, space: ProbabilitySpace) -> "SetFunction":
        """The additive capacity ``g(A) = P(A)``."""
        if space.n > MAX_OUTCOMES:
            raise ValueError(f"capacity tables support at most {MAX_OUTCOMES} outcomes")
        return cls(space.n, subset_masses(space.probs))

    @classmethod
    def from_json(cls, obj: dict) -> "SetFunction":
        if not isinstance(obj, dict) or set(obj) != {"n", "table"}:
            raise ValueError('set function JSON must have keys "n" and "table"')
        return cls(int(obj["n"]), obj["table"])

    def to_json(self) -> dict:
        return {"n": self.n, "table": self.table.tolist()}


def subset_masses(probs) -> np.ndarray:
    """Probability mass of every subset, bitmask-indexed.

    Doubling construction: processing outcome ``i`` appends a copy of
    the current table shifted by ``probs[i]``, which is exactly the
    bitmask indexing order.
    """
    masses = np.zeros(1)
    for p in np.asarray(probs, dtype=float):
        masses = np.concatenate([masses, masses + p])
    return masses


def check_normalized(g: SetFunction) -> bool:
    """True iff ``g(empty) = 0`` and ``g(full) = 1`` within ``TABLE_TOL``."""
    return bool(
        abs(g.table[0]) <= TABLE_TOL and abs(g.table[g.full_mask] - 1.0) <= TABLE_TOL
    )


def monotone_witness(g: SetFunction) -> Optional[Tuple[int, int]]:
    """A pair of masks ``(A, A + {i})`` with ``g(A) > g(A + {i})``, if any.

    Single-element extensions suffice: monotonicity along every chain
    implies monotonicity for all nested pairs.
    """
    masks = np.arange(1 << g.n)
    for i in range(g.n):
        without = masks[(masks >> i) & 1 == 0]
        bad = g.table[without] > g.table[without | (1 << i)] + TABLE_TOL
        if bad.any():
            a = int(without[int(np.argmax(bad))])
            return a, a | (1 << i)
    return None


def check_monotone(g: SetFunction) -> bool:
    """True iff ``g(A) <= g(B)`` whenever ``A`` is a subset of ``B``."""
    return monotone_witness(g) is None


def submodular_witness(g: SetFunction) -> Optional[Tuple[int, int]]:
    """A pair ``(A, B)`` violating ``g(A|B) + g(A&B) <= g(A) + g(B)``, if any."""
    if g.n > MAX_SUBMODULAR_OUTCOMES:
        raise ValueError(
            f"submodularity scan supports at most {MAX_SUBMODULAR_OUTCOMES} outcomes"
        )
    masks = np.arange(1 << g.n)
    t = g.table
    for a in range(1 << g.n):
        lhs = t[a | masks] + t[a & masks]
        rhs = t[a] + t[masks]
        bad = lhs > rhs + TABLE_TOL
        if bad.any():
            return a, int(np.argmax(bad))
    return None


def check_submodular(g: SetFunction) -> bool:
    """True iff ``g(A|B) + g(A&B) <= g(A) + g(B)`` for all subset pairs."""
    return submodular_witness(g) is None


def choquet_integral(z: CostRandomVariable, g: SetFunction) -> float:
    """Integral of ``z`` against a monotone, normalized capacity.

    Outcomes are ranked by descending cost (ties broken by index) and
    the integral telescopes over the upper level sets:
    ``sum_i z_(i) * (g(top i outcomes) - g(top i-1 outcomes))``.
    This is the exact value of the tail-integral definition for a
    piecewise-constant tail, and reduces to the expectation when ``g``
    is a probability measure.  The value is independent of how ties are
    ordered, since equal costs multiply identical telescoped increments.
    """
    if z.n != g.n:
        raise ValueError(f"variable has {z.n} outcomes but capacity has {g.n}")
    if not check_normalized(g):
        raise ValueError("capacity is not normalized: g(empty)=0, g(full)=1 required")
    if not check_monotone(g):
        raise ValueError("capacity is not monotone")
    order = np.argsort(-z.values, kind="stable")
    total = 0.0
    mask = 0
    prev = float(g.table[0])
    for idx in order:
        mask |= 1 << int(idx)
        cur = float(g.table[mask])
        total += float(z.values[idx]) * (cur - prev)
        prev = cur
    return total


def distortion_set_function(
    measure: SpectralMeasure, space: ProbabilitySpace
) -> SetFunction:
    """Capacity ``g(A) = psi(P(A))`` for the measure's concave distortion.

    ``psi(t) = sum_i w_i * min(t / level_i, 1)`` with a level-0 atom
    contributing ``w_i * 1{t > 0}``.  The result is always normalized,
    monotone, and submodular; integrating a variable against it matches
    the mixture-of-tail-means metric of the same measure.
    """
    if space.n > MAX_OUTCOMES:
        raise ValueError(f"capacity tables support at most {MAX_OUTCOMES} outcomes")
    masses = subset_masses(space.probs)
    table = np.zeros_like(masses)
    for level, w in measure.atoms:
        if level == 0.0:
            table += w * (masses > 0.0)
        else:
            table += w * np.minimum(masses / level, 1.0)
    return SetFunction(space.n, table)
