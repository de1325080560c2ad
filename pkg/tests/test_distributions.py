import math

import numpy as np
import pytest
from hypothesis import given

from itlab.distributions import (
    Distribution,
    discretized_entropy,
    entropy,
    entropy_of,
    max_entropy,
    redundancy,
    self_information,
    validate_distribution,
)
from itlab.errors import (
    DuplicateLabel,
    NegativeProbability,
    NonPositiveProbability,
    NotNormalized,
    SumNotOne,
    ZeroStates,
)

from conftest import distributions


class TestValidation:
    def test_labels_default_to_indices(self):
        d = validate_distribution([0.25, 0.75])
        assert d.labels == ("0", "1")
        assert d.prob("1") == 0.75

    def test_rejects_negative(self):
        with pytest.raises(NegativeProbability):
            validate_distribution([1.2, -0.2])

    def test_rejects_bad_sum_without_renormalizing(self):
        with pytest.raises(SumNotOne):
            validate_distribution([0.5, 0.4])
        with pytest.raises(SumNotOne):
            validate_distribution([1.0, 1e-8])

    def test_accepts_sum_within_tolerance(self):
        d = validate_distribution([0.5, 0.5 + 5e-10])
        assert d.probs[1] == 0.5 + 5e-10

    def test_rejects_duplicate_labels(self):
        with pytest.raises(DuplicateLabel):
            validate_distribution([0.5, 0.5], ["a", "a"])

    def test_rejects_empty(self):
        with pytest.raises(ZeroStates):
            validate_distribution([])

    def test_probs_are_read_only(self):
        d = Distribution.uniform(3)
        with pytest.raises(ValueError):
            d.probs[0] = 1.0

    def test_outcomes_pair_labels_with_indices(self):
        d = Distribution(("x", "y"), np.array([0.3, 0.7]))
        assert [(o.label, o.index) for o in d.outcomes] == [("x", 0), ("y", 1)]


class TestSelfInformation:
    @pytest.mark.parametrize("p,bits", [(1.0, 0.0), (0.5, 1.0), (0.125, 3.0), (1 / 1024, 10.0)])
    def test_powers_of_two(self, p, bits):
        assert self_information(p) == bits

    @pytest.mark.parametrize("p", [0.0, -0.1])
    def test_rejects_nonpositive(self, p):
        with pytest.raises(NonPositiveProbability):
            self_information(p)

    def test_additive_over_independent_events(self):
        assert self_information(0.3 * 0.2) == pytest.approx(self_information(0.3) + self_information(0.2), abs=1e-12)


class TestEntropy:
    def test_skewed_four(self):
        assert entropy(validate_distribution([0.5, 0.25, 0.125, 0.125])) == 1.75

    def test_uniform_four(self):
        assert entropy(Distribution.uniform(4)) == 2.0

    def test_zero_probability_contributes_nothing(self):
        assert entropy(validate_distribution([0.5, 0.5, 0.0])) == 1.0

    def test_certain_outcome(self):
        assert entropy(validate_distribution([1.0])) == 0.0

    def test_matches_direct_sum(self, rng):
        for _ in range(20):
            p = rng.dirichlet(np.ones(7))
            want = math.fsum(-x * math.log2(x) for x in p)
            assert entropy_of(p) == pytest.approx(want, abs=1e-12)

    @given(distributions())
    def test_bounds(self, d):
        h = entropy(d)
        assert -1e-12 <= h <= max_entropy(d.size) + 1e-12

    @given(distributions())
    def test_permutation_invariant(self, d):
        perm = d.probs[::-1].copy()
        assert entropy_of(perm) == pytest.approx(entropy(d), abs=1e-12)


class TestRedundancy:
    def test_uniform_has_none(self):
        for n in range(1, 9):
            assert redundancy(Distribution.uniform(n)) == 0.0

    def test_skewed(self):
        assert redundancy(validate_distribution([0.5, 0.25, 0.125, 0.125])) == 0.25

    def test_max_entropy_needs_states(self):
        with pytest.raises(ZeroStates):
            max_entropy(0)

    @given(distributions())
    def test_nonnegative(self, d):
        assert redundancy(d) >= 0.0


class TestDiscretizedEntropy:
    def test_uniform_density(self):
        # uniform on [0, 2): differential entropy 1 bit
        delta = 1 / 64
        centers = np.arange(128) * delta + delta / 2
        pairs = np.column_stack([centers, np.full(128, 0.5)])
        assert discretized_entropy(pairs, delta) == pytest.approx(1.0 - math.log2(delta), abs=1e-12)

    def test_gaussian_approaches_differential_entropy(self):
        sigma, delta = 1.0, 1e-3
        x = np.arange(-10, 10, delta) + delta / 2
        f = np.exp(-x**2 / 2) / math.sqrt(2 * math.pi)
        f = f / (f.sum() * delta)
        h_diff = 0.5 * math.log2(2 * math.pi * math.e * sigma**2)
        got = discretized_entropy(np.column_stack([x, f]), delta)
        assert got + math.log2(delta) == pytest.approx(h_diff, abs=1e-6)

    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            discretized_entropy([(0.0, 1.0), (1.0, 1.0)], 1.0)

    def test_refinement_adds_one_bit(self):
        # halving the bin width of a piecewise-constant density adds exactly one bit
        vals = np.array([0.1, 0.4, 0.3, 0.2])
        coarse = np.column_stack([np.arange(4), vals])
        fine = np.column_stack([np.arange(8) / 2, np.repeat(vals, 2)])
        assert discretized_entropy(fine, 0.5) == pytest.approx(discretized_entropy(coarse, 1.0) + 1, abs=1e-12)
