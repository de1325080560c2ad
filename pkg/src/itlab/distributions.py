"""Finite distributions and single-variable information measures.

All quantities are in bits.  Outcomes carry text labels so results stay
readable, but every computation runs on the probability vector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DuplicateLabel,
    NegativeProbability,
    NonPositiveProbability,
    NotNormalized,
    SpaceMismatch,
    SumNotOne,
    ZeroStates,
)

SUM_TOL = 1e-9


class Outcome(NamedTuple):
    label: str
    index: int


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def check_labels(labels: Sequence[str]) -> tuple[str, ...]:
    labels = tuple(str(lab) for lab in labels)
    if len(set(labels)) != len(labels):
        seen = set()
        dup = next(lab for lab in labels if lab in seen or seen.add(lab))
        raise DuplicateLabel(f"label {dup!r} appears more than once")
    return labels


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Distribution:
    """A probability mass function over labelled outcomes.

    Construction validates but never renormalizes: negative entries or a
    sum further than 1e-9 from one raise.
    """

    labels: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self):
        labels = check_labels(self.labels)
        probs = _frozen(self.probs)
        if probs.ndim != 1 or probs.size == 0:
            raise ZeroStates("a distribution needs at least one outcome")
        if probs.size != len(labels):
            raise SpaceMismatch(f"{probs.size} probabilities for {len(labels)} labels")
        if np.any(probs < 0):
            raise NegativeProbability(f"negative probability {probs.min()!r}")
        total = math.fsum(probs)
        if abs(total - 1.0) > SUM_TOL:
            raise SumNotOne(f"probabilities sum to {total!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls, n_or_labels) -> Distribution:
        labels = default_labels(n_or_labels) if isinstance(n_or_labels, int) else n_or_labels
        n = len(labels)
        if n == 0:
            raise ZeroStates("a distribution needs at least one outcome")
        return cls(tuple(labels), np.full(n, 1.0 / n))

    @classmethod
    def from_probs(cls, probs, labels=None) -> Distribution:
        probs = np.asarray(probs, dtype=float)
        return cls(default_labels(probs.size) if labels is None else tuple(labels), probs)

    @property
    def size(self) -> int:
        return self.probs.size

    @property
    def outcomes(self) -> list[Outcome]:
        return [Outcome(lab, i) for i, lab in enumerate(self.labels)]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise SpaceMismatch(f"unknown outcome {label!r}") from None

    def prob(self, label: str) -> float:
        return float(self.probs[self.index(label)])

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.probs, other.probs)

    def __repr__(self):
        body = ", ".join(f"{lab}={p:.6g}" for lab, p in zip(self.labels, self.probs))
        return f"Distribution({body})"


def validate_distribution(weights, labels=None) -> Distribution:
    """Check ``weights`` against the probability axioms and wrap them.

    >>> entropy(validate_distribution([0.5, 0.25, 0.125, 0.125]))
    1.75
    """
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or weights.size == 0:
        raise ZeroStates("weights must be a nonempty vector")
    if labels is not None and len(labels) != weights.size:
        raise SpaceMismatch(f"{weights.size} weights for {len(labels)} labels")
    return Distribution.from_probs(weights, labels)


def entropy_of(p) -> float:
    """Entropy in bits of a raw probability array, with 0 log 0 = 0.

    Works on any shape; the sum runs over every entry.
    """
    p = np.asarray(p, dtype=float).ravel()
    nz = p[p > 0]
    return float(-np.dot(nz, np.log2(nz))) + 0.0


def self_information(p: float) -> float:
    """Surprise of an event with probability ``p``: log2(1/p)."""
    if not p > 0:
        raise NonPositiveProbability(f"self-information undefined for p={p!r}")
    if p > 1 + SUM_TOL:
        raise NonPositiveProbability(f"p={p!r} is not a probability")
    return -math.log2(p) + 0.0


def entropy(d: Distribution) -> float:
    return entropy_of(d.probs)


def max_entropy(n: int) -> float:
    if n < 1:
        raise ZeroStates("the outcome space is empty")
    return math.log2(n)


def redundancy(d: Distribution) -> float:
    # clipped so rounding on uniform inputs cannot go below zero
    return max(max_entropy(d.size) - entropy(d), 0.0)


def discretized_entropy(density, delta: float) -> float:
    """Entropy of a density sampled into bins of width ``delta``.

    ``density`` is a sequence of ``(bin_center, density_value)`` pairs.
    The bin masses ``density * delta`` must sum to one within 1e-6; the
    result approximates the differential entropy minus log2(delta).
    """
    pts = np.asarray(density, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("density must be a sequence of (center, value) pairs")
    if delta <= 0:
        raise NotNormalized(f"bin width must be positive, got {delta!r}")
    values = pts[:, 1]
    if np.any(values < 0):
        raise NegativeProbability("density values must be nonnegative")
    mass = values * delta
    total = math.fsum(mass)
    if abs(total - 1.0) > 1e-6:
        raise NotNormalized(f"bin masses sum to {total!r}")
    return entropy_of(mass / total)
