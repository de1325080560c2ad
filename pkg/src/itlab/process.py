"""IID and Markov sources: sampling, entropy rates, typical sets and the AEP.

Sampling uses numpy's Philox counter-based generator keyed by the seed,
so a seed gives the same sequence on every platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .channel import Channel, compositions, multinomial
from .distributions import Distribution, entropy, entropy_of, max_entropy
from .errors import SizeCapExceeded, SpaceMismatch

CLASS_CAP = 10**7


def philox(seed: int, *stream: int) -> np.random.Generator:
    """Generator for ``seed``; extra integers select independent substreams."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *stream])))


@dataclass(frozen=True)
class MarkovChain:
    """First-order chain; column j of ``transition`` is p(next | current = x_j)."""

    initial: Distribution
    transition: Channel

    def __post_init__(self):
        t = self.transition
        if t.inputs != t.outputs or t.inputs != self.initial.labels:
            raise SpaceMismatch("initial distribution and transition must share one space")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.initial.labels

    def marginals(self, n: int) -> np.ndarray:
        """Rows are p(X_1) ... p(X_n)."""
        out = np.empty((n, self.initial.size))
        p = self.initial.probs
        for k in range(n):
            out[k] = p
            p = self.transition.matrix @ p
        return out


def stay_chain(n_states: int = 4, stay: float = 5 / 8, labels=None) -> MarkovChain:
    """Chain that repeats the previous symbol with probability ``stay``,
    otherwise moves uniformly to one of the others; uniform start."""
    off = (1 - stay) / (n_states - 1)
    t = np.full((n_states, n_states), off)
    np.fill_diagonal(t, stay)
    init = Distribution.uniform(n_states if labels is None else list(labels))
    return MarkovChain(init, Channel(init.labels, init.labels, t))


def iid_chain(d: Distribution) -> MarkovChain:
    t = np.repeat(d.probs[:, None], d.size, axis=1)
    return MarkovChain(d, Channel(d.labels, d.labels, t))


@dataclass(frozen=True)
class SequenceSample:
    symbols: np.ndarray
    seed: int

    def labels(self, space) -> list[str]:
        return [space[i] for i in self.symbols]


def _cdf(p: np.ndarray) -> np.ndarray:
    c = np.cumsum(p)
    c /= c[-1]
    c[np.flatnonzero(p)[-1]:] = 1.0
    return c


def sample_sequence(model: Union[Distribution, MarkovChain], n: int, seed: int) -> SequenceSample:
    if n < 1:
        raise ValueError("sequence length must be at least 1")
    rng = philox(seed)
    u = rng.random(n)
    if isinstance(model, Distribution):
        return SequenceSample(np.searchsorted(_cdf(model.probs), u, side="right"), seed)
    cdfs = [_cdf(col) for col in model.transition.matrix.T]
    out = np.empty(n, dtype=np.int64)
    state = int(np.searchsorted(_cdf(model.initial.probs), u[0], side="right"))
    out[0] = state
    for k in range(1, n):
        state = int(np.searchsorted(cdfs[state], u[k], side="right"))
        out[k] = state
    return SequenceSample(out, seed)


def _step_entropies(chain: MarkovChain, n: int) -> list[float]:
    """[H(X_1), H(X_2|X_1), ..., H(X_n|X_{n-1})]."""
    h_cols = chain.transition.column_entropies()
    marg = chain.marginals(n)
    out = [entropy_of(marg[0])]
    out += [math.fsum(marg[k - 1] * h_cols) for k in range(1, n)]
    return out


def joint_entropy_rate(chain: MarkovChain, n: int) -> float:
    """H(X_1, ..., X_n) / n, via the chain rule."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return math.fsum(_step_entropies(chain, n)) / n


def conditional_entropy_rate(chain: MarkovChain, n: int) -> float:
    """H(X_{n+1} | X_n) with X_n's marginal propagated from the start."""
    if n < 1:
        raise ValueError("n must be at least 1")
    p_n = chain.marginals(n)[-1]
    return math.fsum(p_n * chain.transition.column_entropies())


def entropy_rate_table(chain: MarkovChain, n_max: int) -> list[tuple[int, float, float]]:
    """``(n, joint_rate, cond_rate)`` for n = 1..n_max in a single pass."""
    steps = _step_entropies(chain, n_max + 1)
    rows = []
    for n in range(1, n_max + 1):
        rows.append((n, math.fsum(steps[:n]) / n, steps[n]))
    return rows


def process_redundancy(chain: MarkovChain, n: int) -> float:
    return max_entropy(chain.initial.size) - joint_entropy_rate(chain, n)


@dataclass(frozen=True)
class TypicalSetReport:
    n: int
    epsilon: float
    entropy: float
    typical_class_count: int
    typical_sequence_count: int
    typical_probability_mass: float

    @property
    def band(self) -> tuple[float, float]:
        return (self.entropy - self.epsilon, self.entropy + self.epsilon)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "epsilon": self.epsilon,
            "entropy": self.entropy,
            "band": list(self.band),
            "typical_class_count": self.typical_class_count,
            # exact integer, kept as a string so JSON readers do not truncate it
            "typical_sequence_count": str(self.typical_sequence_count),
            "typical_probability_mass": self.typical_probability_mass,
        }


@dataclass(frozen=True)
class _Classes:
    counts: list
    info: np.ndarray      # -(1/n) log2 p(sequence), inf for impossible classes
    mult: list            # exact number of sequences per class
    logmass: np.ndarray   # log2 of total class probability


def _type_classes(d: Distribution, n: int, cap: int = CLASS_CAP) -> _Classes:
    k = d.size
    n_classes = math.comb(n + k - 1, k - 1)
    if n_classes > cap:
        raise SizeCapExceeded(f"{n_classes} composition classes exceed cap {cap}")
    counts = list(compositions(n, k))
    c = np.array(counts, dtype=float).reshape(len(counts), k)
    with np.errstate(divide="ignore"):
        logp = np.log2(d.probs)
    impossible = (c[:, d.probs == 0] > 0).any(axis=1)
    safe = np.where(np.isfinite(logp), logp, 0.0)
    seq_log = c @ safe
    seq_log[impossible] = -np.inf
    mult = [multinomial(cc) for cc in counts]
    logmult = np.array([math.log2(m) for m in mult])
    return _Classes(counts, -seq_log / n, mult, logmult + seq_log)


def sequence_information(d: Distribution, symbols) -> float:
    """Per-symbol information -(1/n) log2 p(x_1..x_n) of an IID sequence."""
    symbols = np.asarray(symbols)
    p = d.probs[symbols]
    if np.any(p == 0):
        return math.inf
    return -math.fsum(np.log2(p)) / symbols.size


def in_band(info: float, h: float, epsilon: float) -> bool:
    """Half-open band (H - eps, H + eps]."""
    return h - epsilon < info <= h + epsilon


def typical_set(d: Distribution, n: int, epsilon: float, cap: int = CLASS_CAP) -> TypicalSetReport:
    """Exact size and mass of the epsilon-typical set by type-class enumeration."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    h = entropy(d)
    cls = _type_classes(d, n, cap)
    inside = (cls.info > h - epsilon) & (cls.info <= h + epsilon)
    idx = np.flatnonzero(inside)
    count = sum(cls.mult[i] for i in idx)
    mass = math.fsum(np.exp2(cls.logmass[idx]))
    return TypicalSetReport(n, epsilon, h, int(idx.size), count, min(mass, 1.0))


@dataclass(frozen=True)
class InformationHistogram:
    """Per-symbol information of every length-n sequence, binned two ways.

    ``seq_counts`` counts sequences (exact integers); ``prob_mass`` sums
    their probability.  ``mean`` and ``std`` are probability-weighted and
    computed from the exact class values, not the bins.
    """

    n: int
    bin_edges: np.ndarray
    seq_counts: tuple[int, ...]
    prob_mass: np.ndarray
    mean: float
    std: float

    def rows(self):
        for i, (c, m) in enumerate(zip(self.seq_counts, self.prob_mass)):
            yield float(self.bin_edges[i]), float(self.bin_edges[i + 1]), c, float(m)


def information_histogram(d: Distribution, n: int, bins: int = 32, cap: int = CLASS_CAP) -> InformationHistogram:
    if n < 1 or bins < 1:
        raise ValueError("n and bins must be positive")
    cls = _type_classes(d, n, cap)
    ok = np.isfinite(cls.info)
    info = cls.info[ok]
    mass = np.exp2(cls.logmass[ok])
    mult = [m for m, keep in zip(cls.mult, ok) if keep]
    lo, hi = float(info.min()), float(info.max())
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    edges = np.linspace(lo, hi, bins + 1)
    which = np.clip(np.searchsorted(edges, info, side="right") - 1, 0, bins - 1)
    counts = [0] * bins
    for b, m in zip(which.tolist(), mult):
        counts[b] += m
    masses = np.zeros(bins)
    for b in range(bins):
        masses[b] = math.fsum(mass[which == b])
    mean = math.fsum(mass * info)
    std = math.sqrt(max(math.fsum(mass * (info - mean) ** 2), 0.0))
    return InformationHistogram(n, edges, tuple(counts), masses, mean, std)
