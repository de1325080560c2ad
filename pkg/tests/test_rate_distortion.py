import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itlab.channel_coding import binary_entropy
from itlab.distributions import Distribution, entropy
from itlab.errors import SpaceMismatch
from itlab.rate_distortion import (
    DistortionMatrix,
    average_distortion,
    hamming_distortion,
    max_distortion,
    rate_at_distortion,
    rd_curve,
    rd_point,
)

BINARY = Distribution.uniform(["0", "1"])


def r_uniform_hamming(m, d):
    """R(D) for a uniform m-ary source under Hamming distortion."""
    if d >= 1 - 1 / m:
        return 0.0
    return math.log2(m) - binary_entropy(d) - d * math.log2(m - 1)


def r_bernoulli(p, d):
    return max(binary_entropy(p) - binary_entropy(d), 0.0) if d < min(p, 1 - p) else 0.0


class TestPoints:
    @pytest.mark.parametrize("slope", [-0.5, -1.0, -2.0, -4.0, -8.0])
    def test_binary_on_analytic_curve(self, slope):
        pt = rd_point(BINARY, hamming_distortion(BINARY.labels), slope)
        assert pt.rate == pytest.approx(1 - binary_entropy(pt.distortion), abs=1e-6)
        # at slope s, D = 1 / (1 + 2^-s)
        assert pt.distortion == pytest.approx(1 / (1 + 2 ** -slope), abs=1e-6)

    def test_quaternary(self):
        d4 = Distribution.uniform(4)
        for s in (-1.0, -3.0, -6.0):
            pt = rd_point(d4, hamming_distortion(d4.labels), s)
            assert pt.rate == pytest.approx(r_uniform_hamming(4, pt.distortion), abs=1e-6)

    @pytest.mark.parametrize("p", [0.1, 0.3])
    def test_bernoulli(self, p):
        src = Distribution.from_probs([1 - p, p])
        for s in (-2.0, -5.0):
            pt = rd_point(src, hamming_distortion(src.labels), s)
            assert pt.rate == pytest.approx(r_bernoulli(p, pt.distortion), abs=1e-6)

    def test_joint_consistent(self):
        d = hamming_distortion(BINARY.labels)
        pt = rd_point(BINARY, d, -3.0)
        assert average_distortion(pt.joint, d) == pytest.approx(pt.distortion, abs=1e-15)
        np.testing.assert_allclose(pt.joint.px, BINARY.probs, atol=1e-12)

    def test_slope_must_be_negative(self):
        with pytest.raises(ValueError):
            rd_point(BINARY, hamming_distortion(BINARY.labels), 0.5)

    def test_space_checked(self):
        with pytest.raises(SpaceMismatch):
            rd_point(BINARY, hamming_distortion(["a", "b"]), -1.0)

    def test_rejects_negative_distortion(self):
        with pytest.raises(ValueError):
            DistortionMatrix(("a",), ("a",), np.array([[-1.0]]))


class TestCurve:
    def test_binary_interior(self):
        d = hamming_distortion(BINARY.labels)
        for target in np.linspace(0.03, 0.47, 10):
            assert rate_at_distortion(BINARY, d, target) == pytest.approx(1 - binary_entropy(target), abs=1e-4)

    def test_endpoints(self):
        for src in (BINARY, Distribution.from_probs([0.5, 0.25, 0.125, 0.125])):
            d = hamming_distortion(src.labels)
            pts = rd_curve(src, d, 30)
            assert pts[0].distortion == pytest.approx(0.0, abs=1e-6)
            assert pts[0].rate == pytest.approx(entropy(src), abs=1e-6)
            assert pts[-1].distortion == pytest.approx(max_distortion(src, d), abs=1e-6)
            assert pts[-1].rate == pytest.approx(0.0, abs=1e-6)

    def test_convex_and_nonincreasing(self):
        src = Distribution.from_probs([0.5, 0.25, 0.125, 0.125])
        pts = rd_curve(src, hamming_distortion(src.labels), 40)
        ds = np.array([p.distortion for p in pts])
        rs = np.array([p.rate for p in pts])
        assert np.all(np.diff(ds) >= -1e-12)
        assert np.all(np.diff(rs) <= 1e-9)
        for i in range(1, len(pts) - 1):
            lo, hi = i - 1, i + 1
            if ds[hi] - ds[lo] < 1e-9:
                continue
            t = (ds[i] - ds[lo]) / (ds[hi] - ds[lo])
            assert rs[i] <= (1 - t) * rs[lo] + t * rs[hi] + 1e-7

    def test_max_distortion(self):
        src = Distribution.from_probs([0.5, 0.25, 0.125, 0.125])
        assert max_distortion(src, hamming_distortion(src.labels)) == 0.5

    def test_general_distortion(self):
        # squared error on three levels; R(D) between 0 and H
        src = Distribution.uniform(3)
        levels = np.array([0.0, 1.0, 2.0])
        d = DistortionMatrix(src.labels, src.labels, (levels[:, None] - levels[None, :]) ** 2)
        pts = rd_curve(src, d, 20)
        assert pts[0].rate == pytest.approx(math.log2(3), abs=1e-6)
        assert pts[-1].distortion == pytest.approx(2 / 3, abs=1e-12)

    @settings(max_examples=15, deadline=None)
    @given(st.floats(0.02, 0.45))
    def test_uniform_binary_property(self, target):
        d = hamming_distortion(BINARY.labels)
        assert rate_at_distortion(BINARY, d, target) == pytest.approx(1 - binary_entropy(target), abs=1e-4)
