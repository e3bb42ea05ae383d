"""Dual (worst-case expectation) form of capacity-based risk metrics.

A coherent assessment can be written as the largest expectation of the
cost over a compact convex set of probability vectors.  For a
submodular capacity that set is the capacity's core, and its extreme
points are the greedy vectors of the n! outcome orderings: walk an
ordering, giving each outcome the increment of the capacity along the
chain.  Evaluation then only needs the vertices, since a maximum of a
linear functional over a polytope is attained at one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .capacities import SetFunction, check_monotone, check_normalized, check_submodular
from .probability import CostRandomVariable, _frozen

MAX_ENVELOPE_OUTCOMES = 7
"""Cap on the n! ordering enumeration (7! = 5040)."""

VERTEX_DEDUP_TOL = 1e-12
"""Per-entry tolerance under which two greedy vectors are one vertex."""

_PMF_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class RiskEnvelope:
    """Extreme points of a set of probability vectors, one per row.

    Each row is a pmf over the same outcome set; rows are stored
    deduplicated and sorted lexicographically so construction is
    deterministic.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValueError("envelope needs at least one vertex row")
        if np.any(v < -VERTEX_DEDUP_TOL):
            raise ValueError("vertex entries must be nonnegative")
        if np.any(np.abs(v.sum(axis=1) - 1.0) > _PMF_SUM_TOL):
            raise ValueError("every vertex must sum to 1")
        object.__setattr__(self, "vertices", _frozen(np.clip(v, 0.0, None)))

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    def to_json(self) -> list:
        return self.vertices.tolist()


def envelope_of(g: SetFunction) -> RiskEnvelope:
    """Core vertices of a monotone, normalized, submodular capacity.

    Enumerates all orderings of the outcomes and emits the greedy
    increment vector of each; monotonicity makes the increments
    nonnegative and normalization makes them sum to 1, so every vector
    is a pmf.  Requires ``n <= 7``.
    """
    if g.n > MAX_ENVELOPE_OUTCOMES:
        raise ValueError(
            f"envelope enumeration supports at most {MAX_ENVELOPE_OUTCOMES} outcomes"
        )
    if not check_normalized(g):
        raise ValueError("capacity is not normalized")
    if not check_monotone(g):
        raise ValueError("capacity is not monotone")
    if not check_submodular(g):
        raise ValueError("capacity is not submodular; core vertices would not cover it")
    table = g.table
    rows = set()
    ordered = []
    for perm in permutations(range(g.n)):
        q = [0.0] * g.n
        mask = 0
        prev = float(table[0])
        for i in perm:
            mask |= 1 << i
            cur = float(table[mask])
            q[i] = cur - prev
            prev = cur
        t = tuple(q)
        if t not in rows:
            rows.add(t)
            ordered.append(t)
    ordered.sort()
    deduped = [ordered[0]]
    for row in ordered[1:]:
        if max(abs(a - b) for a, b in zip(row, deduped[-1])) > VERTEX_DEDUP_TOL:
            deduped.append(row)
    return RiskEnvelope(np.array(deduped))


def envelope_eval(z: CostRandomVariable, env: RiskEnvelope) -> float:
    """Worst-case expectation of ``z`` over the envelope's vertices."""
    if z.n != env.n:
        raise ValueError(f"variable has {z.n} outcomes but envelope has {env.n}")
    return float((env.vertices @ z.values).max())
