import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itlab import catalog
from itlab.capacity import AscentConfig, channel_capacity
from itlab.channel import compose_channels, joint_distribution, make_channel, mutual_information
from itlab.distributions import Distribution, entropy
from itlab.encoders import (
    DeterministicEncoder,
    StochasticEncoder,
    _objective,
    brute_force_encoder,
    encoder_mi,
    matching_experiment,
    optimize_stochastic_encoder,
    search_space_size,
    stochastic_encoder_gradient,
)
from itlab.errors import SearchSpaceTooLarge, SpaceMismatch

from conftest import random_channel, random_simplex


def mi_through_composition(source, enc_matrix, ch):
    """I(S;Y) by building the composite channel S -> Y explicitly."""
    e = make_channel(enc_matrix, source.labels, ch.inputs)
    return mutual_information(joint_distribution(compose_channels(e, ch), source))


def random_case(rng, ns, nx, ny):
    ch = random_channel(rng, nx, ny)
    src = Distribution.from_probs(random_simplex(rng, ns), [f"s{i}" for i in range(ns)])
    return src, ch


class TestEncoderMI:
    def test_identity_encoder_on_identity_channel(self):
        src = Distribution.uniform(["p", "q", "r"])
        ch = make_channel(np.eye(3))
        enc = DeterministicEncoder(src.labels, ch.inputs, (2, 0, 1))
        assert encoder_mi(src, enc, ch) == pytest.approx(entropy(src), abs=1e-12)

    def test_collision_loses_information(self):
        src = Distribution.uniform(["p", "q"])
        ch = make_channel(np.eye(2))
        enc = DeterministicEncoder(src.labels, ch.inputs, (1, 1))
        assert not enc.injective
        assert encoder_mi(src, enc, ch) == 0.0

    def test_matches_composition(self, rng):
        for _ in range(20):
            src, ch = random_case(rng, 3, 4, 5)
            e = rng.dirichlet(np.ones(4), size=3).T
            enc = StochasticEncoder(src.labels, ch.inputs, e)
            assert encoder_mi(src, enc, ch) == pytest.approx(mi_through_composition(src, e, ch), abs=1e-12)

    def test_space_mismatch(self):
        src = Distribution.uniform(["p", "q"])
        ch = make_channel(np.eye(2))
        enc = DeterministicEncoder(("a", "b"), ch.inputs, (0, 1))
        with pytest.raises(SpaceMismatch):
            encoder_mi(src, enc, ch)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_bounded_by_capacity_and_entropy(self, seed):
        rng = np.random.default_rng(seed)
        src, ch = random_case(rng, 3, 3, 4)
        e = rng.dirichlet(np.ones(3), size=3).T
        mi = encoder_mi(src, StochasticEncoder(src.labels, ch.inputs, e), ch)
        cap = channel_capacity(ch, AscentConfig(tolerance=1e-12)).capacity
        assert mi <= cap + 1e-5
        assert mi <= entropy(src) + 1e-9


class TestBruteForce:
    def test_matches_loop_over_permutations(self, rng):
        for _ in range(5):
            src, ch = random_case(rng, 3, 4, 4)
            best = max(
                mi_through_composition(src, DeterministicEncoder(src.labels, ch.inputs, m).matrix(), ch)
                for m in itertools.permutations(range(4), 3)
            )
            _, mi = brute_force_encoder(src, ch)
            assert mi == pytest.approx(best, abs=1e-12)

    def test_non_injective_search_is_no_worse(self, rng):
        src, ch = random_case(rng, 3, 3, 4)
        assert brute_force_encoder(src, ch, injective=False)[1] >= brute_force_encoder(src, ch)[1] - 1e-12

    def test_ties_go_to_smallest_map(self):
        src = Distribution.uniform(["p", "q"])
        ch = make_channel(np.eye(3))
        enc, _ = brute_force_encoder(src, ch)
        assert enc.mapping == (0, 1)

    def test_search_space(self):
        assert search_space_size(3, 4) == 24
        assert search_space_size(3, 4, injective=False) == 64
        with pytest.raises(SearchSpaceTooLarge):
            brute_force_encoder(Distribution.uniform(8), make_channel(np.eye(8)), cap=1000)
        with pytest.raises(SearchSpaceTooLarge):
            brute_force_encoder(Distribution.uniform(3), make_channel(np.eye(2)))


class TestStochastic:
    def test_gradient_matches_central_differences(self, rng):
        h = 1e-6
        for _ in range(20):
            src, ch = random_case(rng, 3, 3, 4)
            e = rng.dirichlet(np.ones(3), size=3).T
            enc = StochasticEncoder(src.labels, ch.inputs, e)
            g = stochastic_encoder_gradient(src, enc, ch)
            fd = np.zeros_like(e)
            for idx in np.ndindex(*e.shape):
                d = np.zeros_like(e)
                d[idx] = h
                fd[idx] = (_objective(ch.matrix, src.probs, e + d) - _objective(ch.matrix, src.probs, e - d)) / (2 * h)
            np.testing.assert_allclose(g, fd, atol=1e-4)

    def test_objective_is_mi_on_simplex(self, rng):
        src, ch = random_case(rng, 3, 4, 4)
        e = rng.dirichlet(np.ones(4), size=3).T
        assert _objective(ch.matrix, src.probs, e) == pytest.approx(mi_through_composition(src, e, ch), abs=1e-12)

    def test_reaches_brute_force_on_stand_ins(self):
        for src in (catalog.symmetric_source(), catalog.asymmetric_source()):
            for ch in (catalog.symmetric_channel(), catalog.asymmetric_channel()):
                _, best = brute_force_encoder(src, ch)
                res = optimize_stochastic_encoder(src, ch, seed=1)
                assert res.mi >= best - 1e-9

    def test_without_warm_start_stays_on_simplex(self, rng):
        src, ch = random_case(rng, 3, 3, 3)
        res = optimize_stochastic_encoder(src, ch, seed=2, warm_start=False)
        np.testing.assert_allclose(res.encoder.matrix.sum(axis=0), 1.0, atol=1e-12)
        assert res.mi <= channel_capacity(ch, AscentConfig(tolerance=1e-12)).capacity + 1e-6

    def test_seeded(self, rng):
        src, ch = random_case(rng, 2, 3, 3)
        a = optimize_stochastic_encoder(src, ch, seed=5, warm_start=False)
        b = optimize_stochastic_encoder(src, ch, seed=5, warm_start=False)
        np.testing.assert_array_equal(a.encoder.matrix, b.encoder.matrix)


class TestMatching:
    def test_caption_ordering(self):
        sources = {"symmetric": catalog.symmetric_source(), "asymmetric": catalog.asymmetric_source()}
        channels = {"symmetric": catalog.symmetric_channel(), "asymmetric": catalog.asymmetric_channel()}
        rows = {(r.source, r.channel): r for r in matching_experiment(sources, channels)}
        assert rows["symmetric", "symmetric"].best_mi > rows["asymmetric", "symmetric"].best_mi
        assert rows["asymmetric", "asymmetric"].best_mi > rows["symmetric", "asymmetric"].best_mi
        assert all(r.gap >= -1e-9 for r in rows.values())

    def test_sources_share_entropy(self):
        assert entropy(catalog.asymmetric_source()) == pytest.approx(math.log2(3), abs=1e-12)
        assert entropy(catalog.symmetric_source()) == pytest.approx(math.log2(3), abs=1e-12)
