"""Shared random generators for the test suite.

Everything is driven by an explicit numpy Generator so tests stay
reproducible; capacities produced here are submodular by construction
(concave distortions of measures, coverage functions, and convex
combinations of the two).
"""

import numpy as np

from riskkit import (
    CostRandomVariable,
    ProbabilitySpace,
    SetFunction,
    SpectralMeasure,
    subset_masses,
)


def random_probs(rng, n, allow_zero=True):
    p = rng.random(n) + 1e-9
    if allow_zero and n >= 2 and rng.random() < 0.15:
        p[int(rng.integers(n))] = 0.0
    return p / p.sum()


def random_rv(rng, n, scale=10.0, space=None):
    if space is None:
        space = ProbabilitySpace(random_probs(rng, n))
    return CostRandomVariable(space, rng.uniform(-scale, scale, space.n))


def random_spectral_measure(rng, max_atoms=4):
    k = int(rng.integers(1, max_atoms + 1))
    levels = []
    for _ in range(k):
        roll = rng.random()
        if roll < 0.1:
            levels.append(0.0)
        elif roll < 0.2:
            levels.append(1.0)
        else:
            levels.append(float(rng.random()))
    weights = rng.random(k) + 0.1
    weights /= weights.sum()
    return SpectralMeasure(tuple(zip(levels, weights)))


def coverage_capacity(rng, n):
    """Weighted coverage: g(A) = sum of weights of target sets A touches."""
    n_sets = int(rng.integers(1, 2 * n + 1))
    masks = np.arange(1 << n)
    table = np.zeros(1 << n)
    weights = rng.random(n_sets) + 0.1
    weights /= weights.sum()
    for w in weights:
        target = int(rng.integers(1, 1 << n))  # nonempty subset
        table += w * ((masks & target) != 0)
    return SetFunction(n, table)


def distortion_capacity(rng, n):
    space = ProbabilitySpace(random_probs(rng, n, allow_zero=False))
    from riskkit import distortion_set_function

    return distortion_set_function(random_spectral_measure(rng), space)


def random_submodular_capacity(rng, n):
    """Monotone normalized submodular capacity from a diverse family."""
    roll = rng.random()
    if roll < 0.4:
        return coverage_capacity(rng, n)
    if roll < 0.8:
        return distortion_capacity(rng, n)
    lam = float(rng.random())
    a = coverage_capacity(rng, n)
    b = distortion_capacity(rng, n)
    return SetFunction(n, lam * a.table + (1.0 - lam) * b.table)


def modular_capacity(rng, n):
    return SetFunction(n, subset_masses(random_probs(rng, n)))
