"""Channels, joint distributions and two-variable information measures.

Matrix orientation is fixed everywhere: rows index outputs ``y`` and
columns index inputs ``x``.  A channel entry ``(i, j)`` is p(y_i | x_j) and
a joint entry ``(i, j)`` is p(x_j, y_i).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .distributions import (
    SUM_TOL,
    Distribution,
    _frozen,
    check_labels,
    default_labels,
    entropy_of,
)
from .errors import (
    ColumnSumNotOne,
    NegativeEntry,
    SizeCapExceeded,
    SpaceMismatch,
    SumNotOne,
    ZeroMarginal,
)

EXTEND_CAP = 2**20
SPECTRUM_BINS = 64


def _check_shape(matrix, inputs, outputs):
    if matrix.ndim != 2 or matrix.size == 0:
        raise SpaceMismatch("matrix must be a nonempty 2-d array")
    rows, cols = matrix.shape
    if len(inputs) != cols or len(outputs) != rows:
        raise SpaceMismatch(
            f"matrix is {rows}x{cols} but there are {len(outputs)} outputs and {len(inputs)} inputs"
        )


@dataclass(frozen=True, eq=False)
class Channel:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        inputs, outputs = check_labels(self.inputs), check_labels(self.outputs)
        _check_shape(m, inputs, outputs)
        if np.any(m < 0):
            raise NegativeEntry(f"channel entry {m.min()!r} is negative")
        sums = m.sum(axis=0)
        bad = np.flatnonzero(np.abs(sums - 1.0) > SUM_TOL)
        if bad.size:
            j = bad[0]
            raise ColumnSumNotOne(f"column for input {inputs[j]!r} sums to {sums[j]!r}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)

    @property
    def n_inputs(self) -> int:
        return self.matrix.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.matrix.shape[0]

    def column_entropies(self) -> np.ndarray:
        """H(Y | X = x) for every input x."""
        return np.array([entropy_of(col) for col in self.matrix.T])

    def __eq__(self, other):
        if not isinstance(other, Channel):
            return NotImplemented
        return (
            self.inputs == other.inputs
            and self.outputs == other.outputs
            and np.array_equal(self.matrix, other.matrix)
        )


@dataclass(frozen=True, eq=False)
class JointDistribution:
    x_labels: tuple[str, ...]
    y_labels: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        xs, ys = check_labels(self.x_labels), check_labels(self.y_labels)
        _check_shape(m, xs, ys)
        if np.any(m < 0):
            raise NegativeEntry(f"joint entry {m.min()!r} is negative")
        total = math.fsum(m.ravel())
        if abs(total - 1.0) > SUM_TOL:
            raise SumNotOne(f"joint distribution sums to {total!r}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "x_labels", xs)
        object.__setattr__(self, "y_labels", ys)

    @classmethod
    def from_matrix(cls, matrix, x_labels=None, y_labels=None) -> JointDistribution:
        m = np.asarray(matrix, dtype=float)
        return cls(
            default_labels(m.shape[1]) if x_labels is None else tuple(x_labels),
            default_labels(m.shape[0]) if y_labels is None else tuple(y_labels),
            m,
        )

    @classmethod
    def independent(cls, px: Distribution, py: Distribution) -> JointDistribution:
        return cls(px.labels, py.labels, np.outer(py.probs, px.probs))

    @property
    def px(self) -> np.ndarray:
        return self.matrix.sum(axis=0)

    @property
    def py(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    def marginal_x(self) -> Distribution:
        return Distribution(self.x_labels, self.px)

    def marginal_y(self) -> Distribution:
        return Distribution(self.y_labels, self.py)

    def transpose(self) -> JointDistribution:
        return JointDistribution(self.y_labels, self.x_labels, self.matrix.T)


def make_channel(matrix, inputs=None, outputs=None) -> Channel:
    """Validate a column-stochastic matrix (rows = outputs) as a channel."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise SpaceMismatch("channel matrix must be a nonempty rectangle")
    return Channel(
        default_labels(m.shape[1]) if inputs is None else tuple(inputs),
        default_labels(m.shape[0]) if outputs is None else tuple(outputs),
        m,
    )


def identity_channel(n: int, labels=None) -> Channel:
    labels = default_labels(n) if labels is None else labels
    return Channel(tuple(labels), tuple(labels), np.eye(n))


def _check_input(ch: Channel, px: Distribution):
    if px.labels != ch.inputs:
        raise SpaceMismatch(f"input distribution over {px.labels} but channel expects {ch.inputs}")


def output_distribution(ch: Channel, px: Distribution) -> Distribution:
    _check_input(ch, px)
    return Distribution(ch.outputs, ch.matrix @ px.probs)


def joint_distribution(ch: Channel, px: Distribution) -> JointDistribution:
    _check_input(ch, px)
    return JointDistribution(ch.inputs, ch.outputs, ch.matrix * px.probs[None, :])


def joint_entropy(j: JointDistribution) -> float:
    return entropy_of(j.matrix)


def _mi_terms(m: np.ndarray) -> float:
    px = m.sum(axis=0)
    py = m.sum(axis=1)
    i, k = np.nonzero(m)
    vals = m[i, k]
    return math.fsum(vals * np.log2(vals / (py[i] * px[k])))


def mutual_information(j: JointDistribution) -> float:
    """I(X;Y) = sum p(x,y) log2 p(x,y) / (p(x) p(y)), summing only p(x,y) > 0."""
    return _mi_terms(j.matrix) + 0.0


def conditional_entropy(j: JointDistribution, direction: str = "x|y") -> float:
    """H(X|Y) for ``direction="x|y"``, H(Y|X) for ``"y|x"``."""
    if direction == "x|y":
        cond = j.py[:, None]
    elif direction == "y|x":
        cond = j.px[None, :]
    else:
        raise ValueError(f"direction must be 'x|y' or 'y|x', got {direction!r}")
    m = j.matrix
    i, k = np.nonzero(m)
    vals = m[i, k]
    given = np.broadcast_to(cond, m.shape)[i, k]
    return math.fsum(vals * np.log2(given / vals)) + 0.0


class Pointwise(NamedTuple):
    pmi: float
    h_x_given_y: float
    h_y_given_x: float


def pointwise_quantities(j: JointDistribution, x: str, y: str) -> Pointwise:
    """Point-wise MI of the pair (x, y) and the entropies of its conditional slices.

    ``h_x_given_y`` is H(X | Y=y) and ``h_y_given_x`` is H(Y | X=x).
    """
    try:
        jx, iy = j.x_labels.index(str(x)), j.y_labels.index(str(y))
    except ValueError:
        raise SpaceMismatch(f"unknown outcome pair ({x!r}, {y!r})") from None
    p_x, p_y = j.px[jx], j.py[iy]
    if p_x <= 0 or p_y <= 0:
        raise ZeroMarginal(f"marginal probability of ({x!r}, {y!r}) is zero")
    p_xy = j.matrix[iy, jx]
    pmi = math.log2(p_xy / (p_x * p_y)) if p_xy > 0 else -math.inf
    return Pointwise(
        pmi,
        entropy_of(j.matrix[iy, :] / p_y),
        entropy_of(j.matrix[:, jx] / p_x),
    )


def compose_channels(a: Channel, b: Channel) -> Channel:
    """Channel from a's inputs to b's outputs: first a, then b."""
    if a.outputs != b.inputs:
        raise SpaceMismatch(f"cannot feed outputs {a.outputs} into inputs {b.inputs}")
    return Channel(a.inputs, b.outputs, b.matrix @ a.matrix)


def _product_labels(labels, n):
    sep = "" if all(len(lab) == 1 for lab in labels) else ","
    out = list(labels)
    for _ in range(n - 1):
        out = [f"{u}{sep}{v}" for u in out for v in labels]
    return tuple(out)


def extend_channel(ch: Channel, n: int, cap: int = EXTEND_CAP) -> Channel:
    """N uses of ``ch`` as one channel on blocks, first symbol most significant."""
    if n < 1:
        raise ValueError("block length must be at least 1")
    entries = (ch.n_inputs * ch.n_outputs) ** n
    if entries > cap:
        raise SizeCapExceeded(f"extended matrix would have {entries} entries (cap {cap})")
    m = ch.matrix
    for _ in range(n - 1):
        m = np.kron(m, ch.matrix)
    return Channel(_product_labels(ch.inputs, n), _product_labels(ch.outputs, n), m)


def compositions(n: int, k: int):
    """All count vectors of length k summing to n, in lexicographic order of bar positions."""
    for bars in combinations(range(n + k - 1), k - 1):
        prev = -1
        counts = []
        for b in bars:
            counts.append(b - prev - 1)
            prev = b
        counts.append(n + k - 2 - prev)
        yield tuple(counts)


def multinomial(counts) -> int:
    total, out = 0, 1
    for c in counts:
        total += c
        out *= math.comb(total, c)
    return out


@dataclass(frozen=True)
class EntropySpectrum:
    """Per-input H(Y|x)/n over an n-fold extended channel, grouped by composition.

    Every extended input sharing a symbol-count vector has the same value,
    so only the composition classes are stored; ``multiplicities`` are exact
    integers and ``class_probs`` the class masses under the input
    distribution the spectrum was built with.
    """

    channel: Channel
    n: int
    counts: tuple[tuple[int, ...], ...]
    values: np.ndarray
    multiplicities: tuple[int, ...]
    class_probs: np.ndarray
    bin_edges: np.ndarray
    bin_counts: tuple[int, ...]

    @property
    def n_sequences(self) -> int:
        return sum(self.multiplicities)

    def weighted_mean(self) -> float:
        return math.fsum(self.class_probs * self.values)

    def mean(self) -> float:
        """Unweighted mean over all |X|^n extended inputs."""
        tot = self.n_sequences
        return math.fsum(m * v for m, v in zip(self.multiplicities, self.values)) / tot

    def std(self) -> float:
        """Unweighted standard deviation over all |X|^n extended inputs."""
        mu = self.mean()
        tot = self.n_sequences
        var = math.fsum(m * (v - mu) ** 2 for m, v in zip(self.multiplicities, self.values)) / tot
        return math.sqrt(var)

    def weighted_std(self) -> float:
        mu = self.weighted_mean()
        return math.sqrt(math.fsum(self.class_probs * (self.values - mu) ** 2))

    def per_input_values(self, cap: int = EXTEND_CAP):
        """Yield ``(label, value)`` for every extended input, in block order."""
        k = self.channel.n_inputs
        if k**self.n > cap:
            raise SizeCapExceeded(f"{k}^{self.n} extended inputs exceed cap {cap}")
        per_symbol = self.channel.column_entropies()
        labels = _product_labels(self.channel.inputs, self.n)
        idx = np.indices((k,) * self.n).reshape(self.n, -1)
        vals = per_symbol[idx].sum(axis=0) / self.n
        yield from zip(labels, vals.tolist())


def conditional_entropy_spectrum(
    ch: Channel, n: int, px: Distribution | None = None, bins: int = SPECTRUM_BINS
) -> EntropySpectrum:
    """Noise level H(Y|x)/n of every extended input, without building the extended matrix.

    Uses additivity of point-wise conditional entropy over independent
    channel uses, so only composition classes need enumerating.
    """
    if n < 1:
        raise ValueError("block length must be at least 1")
    if px is None:
        px = Distribution.uniform(list(ch.inputs))
    _check_input(ch, px)
    h = ch.column_entropies()
    k = ch.n_inputs
    counts = tuple(compositions(n, k))
    c = np.array(counts, dtype=float)
    values = (c @ h) / n
    mult = tuple(multinomial(cc) for cc in counts)
    with np.errstate(divide="ignore"):
        logp = np.log2(px.probs)
    logmass = np.array(
        [
            math.log2(m) + math.fsum(ci * lp for ci, lp in zip(cc, logp) if ci)
            for m, cc in zip(mult, counts)
        ]
    )
    class_probs = np.exp2(logmass)
    lo, hi = float(values.min()), float(values.max())
    if hi - lo < 1e-12:
        edges = np.linspace(lo - 1e-9, hi + 1e-9, bins + 1)
    else:
        edges = np.linspace(lo, hi, bins + 1)
    which = np.clip(np.searchsorted(edges, values, side="right") - 1, 0, bins - 1)
    bin_counts = [0] * bins
    for b, m in zip(which.tolist(), mult):
        bin_counts[b] += m
    return EntropySpectrum(ch, n, counts, values, mult, class_probs, edges, tuple(bin_counts))
