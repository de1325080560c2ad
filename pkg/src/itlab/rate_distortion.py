"""Rate-distortion curves for discrete sources.

Points on R(D) are found by Blahut-Arimoto alternation at a fixed slope
``s < 0`` (bits per unit distortion): the test channel is
p(x_hat | x) proportional to q(x_hat) 2^(s d(x, x_hat)), and q is the
output marginal it induces.  At a fixed point, dR/dD = s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import JointDistribution, mutual_information
from .distributions import Distribution, _frozen, check_labels
from .errors import SpaceMismatch

PRUNE_BELOW = 1e-12
STEEP_SLOPE = -200.0


@dataclass(frozen=True, eq=False)
class DistortionMatrix:
    """``matrix[i, j]`` is the cost of reconstructing source symbol i as j."""

    source_labels: tuple[str, ...]
    recon_labels: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        src, rec = check_labels(self.source_labels), check_labels(self.recon_labels)
        if m.shape != (len(src), len(rec)):
            raise SpaceMismatch(f"distortion matrix is {m.shape}, expected {(len(src), len(rec))}")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValueError("distortions must be finite and nonnegative")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "source_labels", src)
        object.__setattr__(self, "recon_labels", rec)


def hamming_distortion(labels) -> DistortionMatrix:
    labels = tuple(labels)
    n = len(labels)
    return DistortionMatrix(labels, labels, 1.0 - np.eye(n))


@dataclass(frozen=True)
class RDPoint:
    rate: float
    distortion: float
    slope: float
    iterations: int = 0
    converged: bool = True
    joint: JointDistribution | None = None


def average_distortion(j: JointDistribution, d: DistortionMatrix) -> float:
    """E[d(X, X_hat)] for a joint over (source, reconstruction)."""
    if j.x_labels != d.source_labels or j.y_labels != d.recon_labels:
        raise SpaceMismatch("joint and distortion matrix are over different spaces")
    return math.fsum((j.matrix.T * d.matrix).ravel())


def _check(source: Distribution, d: DistortionMatrix):
    if source.labels != d.source_labels:
        raise SpaceMismatch(f"source over {source.labels}, distortion over {d.source_labels}")


def max_distortion(source: Distribution, d: DistortionMatrix) -> float:
    """Smallest distortion reachable at zero rate: min over x_hat of E[d(X, x_hat)]."""
    _check(source, d)
    return float(np.min(source.probs @ d.matrix))


def rd_point(source: Distribution, d: DistortionMatrix, slope: float,
             tol: float = 1e-9, max_iterations: int = 100_000) -> RDPoint:
    """One point of the rate-distortion curve, where the curve has slope ``slope``.

    Reconstruction symbols whose probability falls below 1e-12 are pruned
    and the alternation restarted, at most once.
    """
    _check(source, d)
    if not slope < 0:
        raise ValueError("slope must be negative")
    p = source.probs
    keep = np.arange(len(d.recon_labels))
    # shift each row by its minimum so steep slopes do not underflow to all-zero rows
    dist = d.matrix - d.matrix.min(axis=1, keepdims=True)
    restarted = False
    it = 0
    while True:
        q = np.full(keep.size, 1.0 / keep.size)
        kern = np.exp2(slope * dist[:, keep])
        prev_r = prev_d = math.inf
        pruned = False
        converged = False
        while it < max_iterations:
            it += 1
            a = kern * q[None, :]
            cond = a / a.sum(axis=1, keepdims=True)
            q = p @ cond
            joint = cond * p[:, None]
            nz = joint > 0
            rate = float(np.sum(joint[nz] * np.log2(cond[nz] / np.broadcast_to(q, cond.shape)[nz])))
            dis = float(np.sum(joint * d.matrix[:, keep]))
            if not restarted and np.any(q < PRUNE_BELOW):
                keep = keep[q >= PRUNE_BELOW]
                restarted = pruned = True
                break
            if abs(rate - prev_r) < tol and abs(dis - prev_d) < tol:
                converged = True
                break
            prev_r, prev_d = rate, dis
        if not pruned:
            break
    full = np.zeros((p.size, len(d.recon_labels)))
    full[:, keep] = cond * p[:, None]
    j = JointDistribution(source.labels, d.recon_labels, full.T / full.sum())
    return RDPoint(mutual_information(j), average_distortion(j, d), slope, it, converged, j)


def rd_curve(source: Distribution, d: DistortionMatrix, n_points: int = 50,
             min_slope: float = 1e-2, max_slope: float = 30.0) -> list[RDPoint]:
    """Points from the zero-distortion end to (D_max, 0), sorted by distortion.

    Interior points use slopes with magnitudes log-spaced between
    ``min_slope`` and ``max_slope``.  The low end is a steep-slope point
    (distortion essentially zero) and the high end is exactly (D_max, 0).
    Slopes flatter than the curve at D_max all map to that corner.
    """
    if n_points < 2:
        raise ValueError("need at least two points")
    _check(source, d)
    slopes = [STEEP_SLOPE] + [-s for s in np.logspace(math.log10(max_slope), math.log10(min_slope), n_points - 2)]
    dmax = max_distortion(source, d)
    pts = []
    for s in slopes:
        pt = rd_point(source, d, s)
        # shallower than the curve's slope at D_max: the alternation is only
        # crawling toward the zero-rate corner
        pts.append(pt if pt.distortion < dmax else RDPoint(0.0, dmax, s))
    pts.append(RDPoint(0.0, dmax, 0.0))
    return sorted(pts, key=lambda pt: (pt.distortion, -pt.rate))


def rate_at_distortion(source: Distribution, d: DistortionMatrix, target: float,
                       tol: float = 1e-10) -> float:
    """R(target) by bisection on the slope parameter."""
    dmax = max_distortion(source, d)
    if target >= dmax:
        return 0.0
    lo, hi = STEEP_SLOPE, -1e-9
    if rd_point(source, d, lo).distortion >= target:
        return rd_point(source, d, lo).rate
    for _ in range(200):
        mid = (lo + hi) / 2
        if rd_point(source, d, mid).distortion > target:
            hi = mid
        else:
            lo = mid
        if hi - lo < tol:
            break
    # R is convex; interpolate between the bracketing points
    a, b = rd_point(source, d, lo), rd_point(source, d, hi)
    if b.distortion - a.distortion < 1e-15:
        return a.rate
    t = (target - a.distortion) / (b.distortion - a.distortion)
    return a.rate + t * (b.rate - a.rate)
