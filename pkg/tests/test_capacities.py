import itertools

import numpy as np
import pytest

from riskkit import (
    CostRandomVariable,
    ProbabilitySpace,
    SetFunction,
    SpectralMeasure,
    check_monotone,
    check_normalized,
    check_submodular,
    choquet_integral,
    cost_rv,
    cvar,
    distortion_mixture,
    distortion_set_function,
    expectation,
    is_comonotone,
    monotone_witness,
    submodular_witness,
    subset_masses,
    worst_case,
)
from _samplers import random_rv, random_spectral_measure, random_submodular_capacity


def brute_force_checks(g):
    """Independent verdicts via explicit subset enumeration."""
    outcomes = range(g.n)
    subsets = []
    for r in range(g.n + 1):
        subsets.extend(frozenset(c) for c in itertools.combinations(outcomes, r))

    def mask(s):
        return sum(1 << i for i in s)

    normalized = g.table[0] == 0.0 and g.table[mask(frozenset(outcomes))] == 1.0
    monotone = all(
        g.table[mask(a)] <= g.table[mask(b)] + 1e-12
        for a in subsets
        for b in subsets
        if a <= b
    )
    submodular = all(
        g.table[mask(a | b)] + g.table[mask(a & b)]
        <= g.table[mask(a)] + g.table[mask(b)] + 1e-12
        for a in subsets
        for b in subsets
    )
    return normalized, monotone, submodular


def nonempty_indicator(n):
    table = np.ones(1 << n)
    table[0] = 0.0
    return SetFunction(n, table)


def unanimity(n):
    table = np.zeros(1 << n)
    table[-1] = 1.0
    return SetFunction(n, table)


class TestSubsetMasses:
    def test_matches_enumeration(self):
        rng = np.random.default_rng(0)
        p = rng.random(4)
        p /= p.sum()
        masses = subset_masses(p)
        for mask in range(16):
            direct = sum(p[i] for i in range(4) if mask >> i & 1)
            assert masses[mask] == pytest.approx(direct, abs=1e-15)


class TestChecks:
    def test_probability_measure_is_modular(self):
        space = ProbabilitySpace([0.1, 0.2, 0.3, 0.4])
        g = SetFunction.from_probability(space)
        assert check_normalized(g) and check_monotone(g) and check_submodular(g)
        assert brute_force_checks(g) == (True, True, True)

    def test_nonempty_indicator(self):
        g = nonempty_indicator(3)
        assert check_normalized(g) and check_monotone(g) and check_submodular(g)
        assert brute_force_checks(g) == (True, True, True)

    def test_unanimity_is_not_submodular(self):
        g = unanimity(2)
        assert check_normalized(g) and check_monotone(g)
        assert not check_submodular(g)
        a, b = submodular_witness(g)
        assert g.table[a | b] + g.table[a & b] > g.table[a] + g.table[b] + 1e-12
        assert {a, b} == {0b01, 0b10}  # the two singletons cover the full set

    def test_monotone_witness_is_genuine(self):
        g = SetFunction(2, [0.0, 0.8, 0.3, 1.0])
        table_break = np.array(g.table)
        table_break[0b11] = 0.5  # full set below a singleton
        broken = SetFunction(2, table_break)
        assert check_monotone(g)
        pair = monotone_witness(broken)
        assert pair is not None
        a, b = pair
        assert (a & b) == a and broken.table[a] > broken.table[b]

    def test_verdicts_match_brute_force_on_random_tables(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            table = rng.random(8)
            table[0], table[-1] = 0.0, 1.0
            g = SetFunction(3, table)
            assert (
                check_normalized(g),
                check_monotone(g),
                check_submodular(g),
            ) == brute_force_checks(g)

    def test_submodular_cap(self):
        g = SetFunction(13, np.linspace(0, 1, 1 << 13))
        with pytest.raises(ValueError, match="at most 12"):
            check_submodular(g)

    def test_table_shape_validation(self):
        with pytest.raises(ValueError):
            SetFunction(2, [0.0, 1.0])
        with pytest.raises(ValueError):
            SetFunction(0, [1.0])
        with pytest.raises(ValueError):
            SetFunction(1, [0.0, float("nan")])

    def test_of_subset_lookup(self):
        g = SetFunction(3, subset_masses([0.2, 0.3, 0.5]))
        assert g.of([0, 2]) == pytest.approx(0.7)
        with pytest.raises(ValueError):
            g.of([3])


class TestChoquetIntegral:
    def test_probability_capacity_gives_expectation(self):
        rng = np.random.default_rng(2)
        for _ in range(25):
            z = random_rv(rng, int(rng.integers(1, 7)))
            g = SetFunction.from_probability(z.space)
            assert choquet_integral(z, g) == pytest.approx(expectation(z), rel=1e-12, abs=1e-12)

    def test_nonempty_indicator_gives_plain_max(self):
        z = cost_rv([0.4, 0.4, 0.2], [1.0, 2.0, 3.0])
        assert choquet_integral(z, nonempty_indicator(3)) == pytest.approx(3.0)

    def test_positive_mass_indicator_gives_worst_case(self):
        # delta at level 0 distorts to 1{P(A) > 0}, which skips zero-mass outcomes
        z = cost_rv([1.0, 0.0], [5.0, 100.0])
        g = distortion_set_function(SpectralMeasure.point(0.0), z.space)
        assert choquet_integral(z, g) == pytest.approx(worst_case(z))

    def test_tail_level_capacity_matches_cvar(self):
        z = cost_rv([0.4, 0.4, 0.2], [1.0, 2.0, 3.0])
        masses = subset_masses(z.space.probs)
        g = SetFunction(3, np.minimum(masses / 0.3, 1.0))
        assert choquet_integral(z, g) == pytest.approx(8.0 / 3.0, rel=1e-12)
        assert choquet_integral(z, g) == pytest.approx(cvar(z, 0.3), rel=1e-12)

    def test_tie_order_does_not_matter(self):
        def choquet_reversed_ties(z, g):
            # oracle with the opposite tie-break: descending value, descending index
            order = sorted(range(z.n), key=lambda i: (-z.values[i], -i))
            total, mask, prev = 0.0, 0, g.table[0]
            for i in order:
                mask |= 1 << i
                cur = g.table[mask]
                total += z.values[i] * (cur - prev)
                prev = cur
            return total

        rng = np.random.default_rng(3)
        for _ in range(25):
            n = int(rng.integers(2, 6))
            g = random_submodular_capacity(rng, n)
            values = rng.integers(-3, 3, n).astype(float)  # plenty of ties
            z = random_rv(rng, n)
            z = CostRandomVariable(z.space, values)
            assert choquet_integral(z, g) == pytest.approx(
                choquet_reversed_ties(z, g), abs=1e-12
            )

    def test_comonotone_additivity(self):
        rng = np.random.default_rng(4)
        for _ in range(40):
            n = int(rng.integers(2, 7))
            g = random_submodular_capacity(rng, n)
            space = ProbabilitySpace(np.full(n, 1.0 / n))
            driver = rng.uniform(-5, 5, n)
            z = CostRandomVariable(space, np.sort(rng.uniform(0, 4, n))[np.argsort(np.argsort(driver))])
            w = CostRandomVariable(space, np.sort(rng.uniform(0, 4, n))[np.argsort(np.argsort(driver))])
            assert is_comonotone(z, w)
            lhs = choquet_integral(z + w, g)
            rhs = choquet_integral(z, g) + choquet_integral(w, g)
            assert abs(lhs - rhs) <= 1e-9 * (1.0 + abs(lhs))

    def test_homogeneity_and_translation(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            n = int(rng.integers(1, 7))
            g = random_submodular_capacity(rng, n)
            z = random_rv(rng, n)
            beta = float(rng.uniform(0, 4))
            c = float(rng.uniform(-6, 6))
            base = choquet_integral(z, g)
            assert choquet_integral(beta * z, g) == pytest.approx(beta * base, rel=1e-9, abs=1e-9)
            assert choquet_integral(z + c, g) == pytest.approx(base + c, rel=1e-9, abs=1e-9)

    def test_subadditive_for_submodular_capacity(self):
        rng = np.random.default_rng(6)
        for _ in range(40):
            n = int(rng.integers(2, 7))
            g = random_submodular_capacity(rng, n)
            space = ProbabilitySpace(np.full(n, 1.0 / n))
            z = CostRandomVariable(space, rng.uniform(-10, 10, n))
            w = CostRandomVariable(space, rng.uniform(-10, 10, n))
            lhs = choquet_integral(z + w, g)
            rhs = choquet_integral(z, g) + choquet_integral(w, g)
            assert lhs <= rhs + 1e-9 * (1.0 + abs(rhs))

    def test_rejects_bad_capacities(self):
        z = cost_rv([0.5, 0.5], [1.0, 2.0])
        with pytest.raises(ValueError, match="not normalized"):
            choquet_integral(z, SetFunction(2, [0.0, 0.5, 0.5, 0.9]))
        with pytest.raises(ValueError, match="not monotone"):
            choquet_integral(z, SetFunction(2, [0.0, 1.2, 0.3, 1.0]))
        with pytest.raises(ValueError, match="outcomes"):
            choquet_integral(cost_rv([1.0], [1.0]), nonempty_indicator(2))


class TestDistortionSetFunction:
    def test_point_mass_at_one_recovers_probability(self):
        space = ProbabilitySpace([0.1, 0.6, 0.3])
        g = distortion_set_function(SpectralMeasure.point(1.0), space)
        assert np.allclose(g.table, subset_masses(space.probs), atol=1e-12)

    def test_point_mass_scales_tail_level(self):
        space = ProbabilitySpace([0.1, 0.6, 0.3])
        g = distortion_set_function(SpectralMeasure.point(0.4), space)
        assert np.allclose(g.table, np.minimum(subset_masses(space.probs) / 0.4, 1.0))

    def test_point_mass_at_zero_is_support_indicator(self):
        space = ProbabilitySpace([0.5, 0.0, 0.5])
        g = distortion_set_function(SpectralMeasure.point(0.0), space)
        assert np.allclose(g.table, subset_masses(space.probs) > 0)

    def test_result_passes_structure_checks(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(2, 7))
            p = rng.random(n)
            p /= p.sum()
            g = distortion_set_function(random_spectral_measure(rng), ProbabilitySpace(p))
            assert check_normalized(g) and check_monotone(g) and check_submodular(g)

    def test_cross_representation_sample(self):
        rng = np.random.default_rng(8)
        for _ in range(60):
            n = int(rng.integers(2, 9))
            z = random_rv(rng, n)
            measure = random_spectral_measure(rng)
            via_capacity = choquet_integral(z, distortion_set_function(measure, z.space))
            via_mixture = distortion_mixture(z, measure)
            assert abs(via_capacity - via_mixture) <= 1e-9 * (1.0 + abs(via_mixture))


class TestJson:
    def test_round_trip(self):
        g = nonempty_indicator(2)
        again = SetFunction.from_json(g.to_json())
        assert again.n == 2 and np.array_equal(again.table, g.table)

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            SetFunction.from_json({"n": 2})
        with pytest.raises(ValueError):
            SetFunction.from_json({"n": 2, "table": [0, 1], "extra": 1})
