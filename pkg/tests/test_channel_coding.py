import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itlab.channel_coding import (
    binary_entropy,
    bsc,
    bsc_capacity,
    cliff_sweep,
    code_by_name,
    exact_error,
    family_codes,
    generator_matrix,
    hamming74,
    hamming_code,
    parity_check_matrix,
    rate_error_curve,
    repetition_code,
    simulate_transmission,
    HAMMING74_P,
)
from itlab.errors import EvenRepetition, OutOfRange


def rep_bit_error(r, f):
    return math.fsum(math.comb(r, k) * f**k * (1 - f) ** (r - k) for k in range(r // 2 + 1, r + 1))


def perfect_block_error(n, f):
    # a perfect single-error-correcting code fails on two or more flips
    return 1 - (1 - f) ** n - n * f * (1 - f) ** (n - 1)


def nearest_codeword_errors(code, f):
    """Bit and block error of minimum-distance decoding by listing every pattern."""
    words = np.array(list(itertools.product([0, 1], repeat=code.k)), dtype=np.uint8)
    cws = code.encode(words)
    bit = block = 0.0
    for wi, w in enumerate(words):
        for e in itertools.product([0, 1], repeat=code.n):
            e = np.array(e, dtype=np.uint8)
            p = f ** e.sum() * (1 - f) ** (code.n - e.sum())
            y = cws[wi] ^ e
            got = words[np.argmin((cws != y).sum(axis=1))]
            bit += p * np.count_nonzero(got != w) / code.k
            block += p * (not np.array_equal(got, w))
    return bit / len(words), block / len(words)


class TestCodes:
    def test_bsc_validation(self):
        with pytest.raises(OutOfRange):
            bsc(1.5)

    def test_bsc_capacity(self):
        assert bsc_capacity(0.5) == 0.0
        assert bsc_capacity(0.0) == 1.0
        assert bsc_capacity(0.11) == pytest.approx(1 - binary_entropy(0.11))

    def test_even_repetition(self):
        with pytest.raises(EvenRepetition):
            repetition_code(4)

    def test_hamming74_layout(self):
        g = generator_matrix(HAMMING74_P)
        np.testing.assert_array_equal(g[:, :4], np.eye(4))
        np.testing.assert_array_equal((g @ parity_check_matrix(HAMMING74_P).T) % 2, 0)
        # d = 1000 -> p1 = 1, p2 = 1, p3 = 0
        np.testing.assert_array_equal(hamming74().encode([1, 0, 0, 0]), [[1, 0, 0, 0, 1, 1, 0]])

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_hamming_corrects_every_single_error(self, m):
        code = hamming_code(m)
        rng = np.random.default_rng(m)
        words = rng.integers(0, 2, (20, code.k), dtype=np.uint8)
        cws = code.encode(words)
        for i in range(code.n):
            y = cws.copy()
            y[:, i] ^= 1
            np.testing.assert_array_equal(code.decode(y), words)

    def test_minimum_distance_is_three(self):
        code = hamming74()
        words = np.array(list(itertools.product([0, 1], repeat=4)), dtype=np.uint8)
        weights = code.encode(words).sum(axis=1)
        assert weights[weights > 0].min() == 3

    def test_names(self):
        assert code_by_name("rep5").n == 5
        assert code_by_name("hamming74").rate == pytest.approx(4 / 7)
        assert code_by_name("hamming1511").k == 11
        with pytest.raises(ValueError):
            code_by_name("golay")


class TestExactErrors:
    @pytest.mark.parametrize("r", [1, 3, 5, 7, 9, 11])
    @pytest.mark.parametrize("f", [0.01, 0.1, 0.2, 0.4])
    def test_repetition_binomial(self, r, f):
        e = exact_error(repetition_code(r), f)
        assert e.bit_error == pytest.approx(rep_bit_error(r, f), abs=1e-12)
        assert e.block_error == pytest.approx(e.bit_error, abs=1e-15)

    def test_rep3_at_one_fifth(self):
        assert exact_error(repetition_code(3), 0.2).bit_error == pytest.approx(0.104, abs=1e-12)

    @pytest.mark.parametrize("m", [2, 3, 4])
    @pytest.mark.parametrize("f", [0.05, 0.2, 0.35])
    def test_hamming_block_error_perfect_code(self, m, f):
        code = hamming_code(m)
        assert exact_error(code, f).block_error == pytest.approx(perfect_block_error(code.n, f), abs=1e-12)

    def test_hamming74_against_nearest_codeword(self):
        code = hamming74()
        for f in (0.1, 0.2):
            bit, block = nearest_codeword_errors(code, f)
            e = exact_error(code, f)
            assert e.bit_error == pytest.approx(bit, abs=1e-12)
            assert e.block_error == pytest.approx(block, abs=1e-12)

    def test_hamming74_values(self):
        e = exact_error(hamming74(), 0.2)
        assert e.block_error == pytest.approx(0.4232832, abs=1e-9)


class TestSimulation:
    def test_agrees_with_exact(self):
        for code in (repetition_code(3), hamming74()):
            rep = simulate_transmission(code, 0.2, 1_000_000, seed=7)
            exact = exact_error(code, 0.2)
            sigma = math.sqrt(exact.block_error * (1 - exact.block_error) / rep.trials)
            assert abs(rep.block_error_rate - exact.block_error) < 4 * sigma

    def test_seed_determinism(self):
        a = simulate_transmission(repetition_code(3), 0.2, 200_000, seed=7)
        b = simulate_transmission(repetition_code(3), 0.2, 200_000, seed=7)
        c = simulate_transmission(repetition_code(3), 0.2, 200_000, seed=8)
        assert a == b
        assert a != c

    def test_thread_count_does_not_change_result(self):
        code = hamming74()
        runs = [simulate_transmission(code, 0.1, 4 * 150_000, seed=3, threads=t) for t in (1, 2, 4)]
        assert runs[0] == runs[1] == runs[2]

    def test_noiseless(self):
        rep = simulate_transmission(hamming74(), 0.0, 4000, seed=1)
        assert rep.bit_errors == 0

    def test_bits_must_fill_blocks(self):
        with pytest.raises(ValueError):
            simulate_transmission(hamming74(), 0.1, 10, seed=0)

    def test_report_fields(self):
        d = simulate_transmission(repetition_code(3), 0.2, 30_000, seed=2).to_dict()
        assert d["confidence_halfwidth_95"] == pytest.approx(
            1.96 * math.sqrt(d["bit_error_rate"] * (1 - d["bit_error_rate"]) / d["trials"])
        )


class TestCurves:
    def test_repetition_family(self):
        curve = rate_error_curve("repetition", 0.2)
        rates = [float(p.rate) for p in curve.points]
        errs = [p.bit_error for p in curve.points]
        assert rates == [1, 1 / 3, 1 / 5, 1 / 7, 1 / 9, 1 / 11]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert curve.capacity == pytest.approx(1 - binary_entropy(0.2))

    def test_hamming_dominates_rep3_in_rate(self):
        assert hamming74().rate > repetition_code(3).rate

    def test_family_names(self):
        assert [c.name for c in family_codes("hamming")] == ["hamming31", "hamming74", "hamming1511"]
        with pytest.raises(ValueError):
            family_codes("turbo")

    def test_cliff(self):
        pts = cliff_sweep(hamming74(), 0.2, np.linspace(0, 0.5, 11))
        assert pts[0].block_error == 0.0
        blocks = [p.block_error for p in pts]
        assert all(b >= a for a, b in zip(blocks, blocks[1:]))

    @settings(max_examples=30)
    @given(st.floats(0.0, 0.5))
    def test_repetition_beats_uncoded_below_half(self, f):
        assert exact_error(repetition_code(3), f).bit_error <= f + 1e-12
