"""Encoders that map source messages onto channel inputs.

A deterministic encoder assigns one input per message; a stochastic one
is a column-stochastic matrix p(x | s).  Either way the figure of merit is
I(S; Y), the information the channel output carries about the message.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Union

import numpy as np

from .capacity import AscentConfig, ascend, channel_capacity, project_columns
from .channel import Channel
from .distributions import Distribution, check_labels
from .errors import SearchSpaceTooLarge, SpaceMismatch
from .process import philox

SEARCH_CAP = 10**7
_BATCH = 4096


@dataclass(frozen=True)
class DeterministicEncoder:
    source_labels: tuple[str, ...]
    input_labels: tuple[str, ...]
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "source_labels", check_labels(self.source_labels))
        object.__setattr__(self, "input_labels", check_labels(self.input_labels))
        mapping = tuple(int(i) for i in self.mapping)
        if len(mapping) != len(self.source_labels):
            raise SpaceMismatch("encoder must map every source message")
        if any(not 0 <= i < len(self.input_labels) for i in mapping):
            raise SpaceMismatch("encoder maps onto an unknown channel input")
        object.__setattr__(self, "mapping", mapping)

    @property
    def injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def matrix(self) -> np.ndarray:
        m = np.zeros((len(self.input_labels), len(self.source_labels)))
        m[list(self.mapping), np.arange(len(self.mapping))] = 1.0
        return m

    def as_dict(self) -> dict[str, str]:
        return {s: self.input_labels[x] for s, x in zip(self.source_labels, self.mapping)}


@dataclass(frozen=True, eq=False)
class StochasticEncoder:
    """Column ``s`` of ``matrix`` is p(x | s)."""

    source_labels: tuple[str, ...]
    input_labels: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        ch = Channel(self.source_labels, self.input_labels, self.matrix)
        object.__setattr__(self, "source_labels", ch.inputs)
        object.__setattr__(self, "input_labels", ch.outputs)
        object.__setattr__(self, "matrix", ch.matrix)


Encoder = Union[DeterministicEncoder, StochasticEncoder]


def _encoder_matrix(enc: Encoder) -> np.ndarray:
    return enc.matrix() if isinstance(enc, DeterministicEncoder) else enc.matrix


def _source_mi(q: np.ndarray, ps: np.ndarray) -> float:
    # I(S;Y) where column s of q is p(y | s); rows of q with zero total drop out
    qy = q @ ps
    joint = q * ps[None, :]
    i, k = np.nonzero(joint)
    return math.fsum(joint[i, k] * np.log2(q[i, k] / qy[i])) + 0.0


def encoder_mi(source: Distribution, enc: Encoder, ch: Channel) -> float:
    """I(S; Y) for messages drawn from ``source``, encoded, then sent over ``ch``."""
    if enc.source_labels != source.labels:
        raise SpaceMismatch(f"encoder reads {enc.source_labels}, source emits {source.labels}")
    if enc.input_labels != ch.inputs:
        raise SpaceMismatch(f"encoder writes {enc.input_labels}, channel reads {ch.inputs}")
    return _source_mi(ch.matrix @ _encoder_matrix(enc), source.probs)


def _batch_mi(w: np.ndarray, ps: np.ndarray, maps: np.ndarray) -> np.ndarray:
    """I(S;Y) for a batch of deterministic maps, shape (batch, |S|)."""
    q = w[:, maps].transpose(1, 0, 2)            # (batch, |Y|, |S|)
    qy = q @ ps                                   # (batch, |Y|)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(q > 0, q / qy[:, :, None], 1.0)
        terms = q * np.log2(ratio)
    return (terms.sum(axis=1) * ps).sum(axis=1)


def search_space_size(n_messages: int, n_inputs: int, injective: bool = True) -> int:
    if injective:
        return math.perm(n_inputs, n_messages) if n_messages <= n_inputs else 0
    return n_inputs**n_messages


def brute_force_encoder(source: Distribution, ch: Channel, injective: bool = True,
                        cap: int = SEARCH_CAP) -> tuple[DeterministicEncoder, float]:
    """Exhaustive search over deterministic encoders.

    Maps are visited in lexicographic order and a later map only replaces
    the incumbent when it is better by more than 1e-12, so ties resolve to
    the lexicographically smallest maximizer.
    """
    ns, nx = source.size, ch.n_inputs
    size = search_space_size(ns, nx, injective)
    if injective and ns > nx:
        raise SearchSpaceTooLarge(f"no injective map from {ns} messages into {nx} inputs")
    if size > cap:
        raise SearchSpaceTooLarge(f"{size} candidate encoders exceed cap {cap}")
    gen = itertools.permutations(range(nx), ns) if injective else itertools.product(range(nx), repeat=ns)
    w, ps = ch.matrix, source.probs
    best_val, best_map = -math.inf, None
    while True:
        chunk = list(itertools.islice(gen, _BATCH))
        if not chunk:
            break
        maps = np.array(chunk, dtype=np.int64).reshape(len(chunk), ns)
        vals = _batch_mi(w, ps, maps)
        i = int(np.argmax(vals))
        if vals[i] > best_val + 1e-12:
            best_val, best_map = float(vals[i]), chunk[i]
    enc = DeterministicEncoder(source.labels, ch.inputs, best_map)
    return enc, encoder_mi(source, enc, ch)


def _grad(w: np.ndarray, ps: np.ndarray, e: np.ndarray) -> np.ndarray:
    q = w @ e
    qy = q @ ps
    with np.errstate(divide="ignore", invalid="ignore"):
        lr = np.where(q > 0, np.log2(q / qy[:, None]), 0.0)
    return (w.T @ lr) * ps[None, :]


def _objective(w, ps, e):
    # Off-simplex extension whose gradient is exactly _grad; equals I(S;Y)
    # whenever every column of e sums to one.
    q = w @ e
    qy = q @ ps
    t1 = np.where(q > 0, q * np.log2(np.where(q > 0, q, 1.0)), 0.0).sum(axis=0) @ ps
    t2 = np.dot(qy[qy > 0], np.log2(qy[qy > 0]))
    return float(t1 - t2)


def stochastic_encoder_gradient(source: Distribution, enc: StochasticEncoder, ch: Channel) -> np.ndarray:
    """dI(S;Y)/dp(x|s) in bits, same shape as the encoder matrix."""
    encoder_mi(source, enc, ch)
    return _grad(ch.matrix, source.probs, enc.matrix)


class StochasticResult(NamedTuple):
    encoder: StochasticEncoder
    mi: float
    iterations: int
    converged: bool


def optimize_stochastic_encoder(source: Distribution, ch: Channel, cfg: AscentConfig | None = None,
                                seed: int = 0, restarts: int = 4, starts=(),
                                warm_start: bool = True) -> StochasticResult:
    """Projected gradient ascent on every column of p(x | s) jointly.

    Column s moves with step ``learning_rate / p(s)``.  Each run starts
    from the uniform mixture plus a seeded perturbation.  I(S;Y) is convex
    in the encoder, so ascent can stall at a local maximum: ``restarts``
    independent runs are made, encoders in ``starts`` are extra starting
    points, and with ``warm_start`` the best injective deterministic
    encoder is added as a start whenever exhaustive search is cheap
    (at most 10^5 maps).  The best run is returned.
    """
    cfg = cfg or AscentConfig()
    w, ps = ch.matrix, source.probs
    nx, ns = ch.n_inputs, source.size

    def project(v):
        return project_columns(v.reshape(nx, ns), cfg.projection_method).ravel()

    # per-column step lambda / p(s): rare messages would otherwise crawl
    scale = np.repeat(np.where(ps > 0, 1.0 / np.where(ps > 0, ps, 1.0), 0.0)[None, :], nx, axis=0).ravel()

    inits = []
    for r in range(max(restarts, 0)):
        rng = philox(seed, r)
        e0 = np.full((nx, ns), 1.0 / nx) + (0.02 + 0.1 * r) * rng.standard_normal((nx, ns))
        inits.append(project(e0.ravel()))
    starts = list(starts)
    if warm_start and ns <= nx and search_space_size(ns, nx) <= 10**5:
        starts.append(brute_force_encoder(source, ch)[0])
    for enc in starts:
        inits.append(_encoder_matrix(enc).ravel().astype(float))
    if not inits:
        raise ValueError("need at least one start")

    best = None
    for e0 in inits:
        e, val, it, _, ok = ascend(
            w,
            lambda v: _grad(w, ps, v.reshape(nx, ns)).ravel() * scale,
            lambda v: _objective(w, ps, v.reshape(nx, ns)),
            e0,
            cfg,
            project,
        )
        if best is None or val > best[1] + 1e-12:
            best = (e, val, it, ok)
    e, _, it, ok = best
    enc = StochasticEncoder(source.labels, ch.inputs, e.reshape(nx, ns))
    return StochasticResult(enc, encoder_mi(source, enc, ch), it, ok)


class MatchRow(NamedTuple):
    source: str
    channel: str
    encoder: DeterministicEncoder
    best_mi: float
    capacity: float

    @property
    def gap(self) -> float:
        return self.capacity - self.best_mi


def matching_experiment(sources: Mapping[str, Distribution], channels: Mapping[str, Channel],
                        injective: bool = True, cfg: AscentConfig | None = None) -> list[MatchRow]:
    """Best deterministic encoder for every (source, channel) pair, with capacity and gap."""
    cfg = cfg or AscentConfig(tolerance=1e-13)
    caps = {name: channel_capacity(ch, cfg).capacity for name, ch in channels.items()}
    rows = []
    for sname, src in sources.items():
        for cname, ch in channels.items():
            enc, mi = brute_force_encoder(src, ch, injective)
            rows.append(MatchRow(sname, cname, enc, mi, caps[cname]))
    return rows


def symmetric_channel(stay: float = 0.6) -> Channel:
    """Four inputs, equally noisy, every pair overlapping equally at the output."""
    off = (1 - stay) / 3
    m = np.full((4, 4), off)
    np.fill_diagonal(m, stay)
    labels = ("a", "b", "c", "d")
    return Channel(labels, labels, m)


def asymmetric_channel(stay: float = 0.6, partner: float = 0.3) -> Channel:
    """Four equally noisy inputs in two pairs (a,b) and (c,d) that overlap more
    within a pair than across pairs."""
    other = (1 - stay - partner) / 2
    m = np.full((4, 4), other)
    np.fill_diagonal(m, stay)
    m[0, 1] = m[1, 0] = m[2, 3] = m[3, 2] = partner
    labels = ("a", "b", "c", "d")
    return Channel(labels, labels, m)


def symmetric_source() -> Distribution:
    return Distribution(("green", "gray", "blue"), np.full(3, 1 / 3))


def asymmetric_source() -> Distribution:
    """Two likely and two unlikely messages, with the same entropy (log2 3)
    as the three-message symmetric source."""
    # solve H2(t) = log2(3) - 1 for the combined mass t of the likely pair
    target = math.log2(3) - 1
    lo, hi = 0.5, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2
        h = -mid * math.log2(mid) - (1 - mid) * math.log2(1 - mid)
        lo, hi = (mid, hi) if h > target else (lo, mid)
    a = lo / 2
    return Distribution(("green", "gray", "yellow", "blue"), np.array([a, a, 0.5 - a, 0.5 - a]))
