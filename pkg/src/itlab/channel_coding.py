"""Binary symmetric channels with repetition and Hamming codes.

Bits are ``uint8`` arrays; encoders and decoders act on a batch of blocks
at once, shape ``(blocks, k)`` -> ``(blocks, n)`` and back.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from .channel import Channel
from .errors import EvenRepetition, OutOfRange, SizeCapExceeded
from .process import philox

EXACT_MAX_N = 20
CHUNK_BLOCKS = 1 << 16


def bsc(f: float) -> Channel:
    """Binary symmetric channel flipping each bit with probability ``f``."""
    if not 0.0 <= f <= 1.0:
        raise OutOfRange(f"flip probability {f!r} is outside [0, 1]")
    return Channel(("0", "1"), ("0", "1"), np.array([[1 - f, f], [f, 1 - f]]))


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def bsc_capacity(f: float) -> float:
    return 1.0 - binary_entropy(f)


@dataclass(frozen=True)
class BinaryCode:
    name: str
    k: int
    n: int
    encoder: Callable[[np.ndarray], np.ndarray]
    decoder: Callable[[np.ndarray], np.ndarray]
    linear: bool = True

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    def encode(self, words) -> np.ndarray:
        words = np.atleast_2d(np.asarray(words, dtype=np.uint8))
        return self.encoder(words)

    def decode(self, received) -> np.ndarray:
        received = np.atleast_2d(np.asarray(received, dtype=np.uint8))
        return self.decoder(received)


def repetition_code(r: int) -> BinaryCode:
    """Send each bit ``r`` times; decode by majority vote."""
    if r < 1:
        raise OutOfRange("repetition count must be at least 1")
    if r % 2 == 0:
        raise EvenRepetition(f"majority vote is undefined for r={r}")

    def enc(w):
        return np.repeat(w[:, :1], r, axis=1)

    def dec(y):
        return (y.sum(axis=1, keepdims=True, dtype=np.int64) * 2 > r).astype(np.uint8)

    return BinaryCode(f"rep{r}", 1, r, enc, dec)


# Parity sets for Hamming(7,4), layout [d1 d2 d3 d4 p1 p2 p3]:
#   p1 = d1+d2+d4, p2 = d1+d3+d4, p3 = d2+d3+d4  (mod 2)
HAMMING74_P = np.array(
    [[1, 1, 0],
     [1, 0, 1],
     [0, 1, 1],
     [1, 1, 1]],
    dtype=np.uint8,
)


def _parity_block(m: int) -> np.ndarray:
    if m == 3:
        return HAMMING74_P
    cols = [v for v in range(1, 2**m) if bin(v).count("1") >= 2]
    return np.array([[(v >> (m - 1 - b)) & 1 for b in range(m)] for v in cols], dtype=np.uint8)


def generator_matrix(p: np.ndarray) -> np.ndarray:
    k = p.shape[0]
    return np.hstack([np.eye(k, dtype=np.uint8), p])


def parity_check_matrix(p: np.ndarray) -> np.ndarray:
    m = p.shape[1]
    return np.hstack([p.T, np.eye(m, dtype=np.uint8)])


def hamming_code(m: int = 3) -> BinaryCode:
    """Systematic Hamming(2^m - 1, 2^m - 1 - m) code with syndrome decoding."""
    if m < 2:
        raise OutOfRange("Hamming codes need at least 2 parity bits")
    p = _parity_block(m)
    g = generator_matrix(p).astype(np.int64)
    h = parity_check_matrix(p).astype(np.int64)
    k, n = g.shape
    weights = 1 << np.arange(m - 1, -1, -1)
    # syndrome value -> position of the single flipped bit it indicates
    flip_at = np.full(2**m, -1)
    flip_at[h.T @ weights] = np.arange(n)

    def enc(w):
        return ((w.astype(np.int64) @ g) % 2).astype(np.uint8)

    def dec(y):
        y = y.astype(np.int64)
        s = ((y @ h.T) % 2) @ weights
        pos = flip_at[s]
        rows = np.flatnonzero(pos >= 0)
        y = y.copy()
        y[rows, pos[rows]] ^= 1
        return y[:, :k].astype(np.uint8)

    return BinaryCode(f"hamming{n}{k}", k, n, enc, dec)


def hamming74() -> BinaryCode:
    return hamming_code(3)


def code_by_name(name: str) -> BinaryCode:
    name = name.lower()
    if name.startswith("rep"):
        return repetition_code(int(name[3:]))
    if name in ("hamming74", "hamming"):
        return hamming74()
    if name == "hamming31":
        return hamming_code(2)
    if name == "hamming1511":
        return hamming_code(4)
    raise ValueError(f"unknown code {name!r}")


def _all_words(k: int) -> np.ndarray:
    v = np.arange(2**k)[:, None]
    return ((v >> np.arange(k - 1, -1, -1)) & 1).astype(np.uint8)


class ExactError(NamedTuple):
    block_error: float
    bit_error: float


def exact_error(code: BinaryCode, f: float) -> ExactError:
    """Exact block and bit error probabilities over a BSC(f).

    Enumerates all 2^n error patterns weighted by f^w (1-f)^(n-w).  For
    linear codes the error depends only on the pattern, so the zero word
    stands for every source word; otherwise all 2^k words are averaged.
    """
    if code.n > EXACT_MAX_N:
        raise SizeCapExceeded(f"n={code.n} exceeds exact-enumeration cap {EXACT_MAX_N}")
    if not 0.0 <= f <= 1.0:
        raise OutOfRange(f"flip probability {f!r} is outside [0, 1]")
    patterns = _all_words(code.n)
    w = patterns.sum(axis=1)
    weight = np.power(f, w) * np.power(1.0 - f, code.n - w)
    words = np.zeros((1, code.k), np.uint8) if code.linear else _all_words(code.k)
    block = bit = 0.0
    for word in words:
        sent = code.encode(word[None, :])
        got = code.decode(sent ^ patterns)
        wrong = (got != word).sum(axis=1)
        block += math.fsum(weight[wrong > 0])
        bit += math.fsum(weight * wrong) / code.k
    return ExactError(block / len(words), bit / len(words))


@dataclass(frozen=True)
class ErrorReport:
    code: str
    f: float
    trials: int
    source_bits: int
    bit_errors: int
    block_errors: int
    seed: int

    @property
    def bit_error_rate(self) -> float:
        return self.bit_errors / self.source_bits

    @property
    def block_error_rate(self) -> float:
        return self.block_errors / self.trials

    @property
    def confidence_halfwidth_95(self) -> float:
        p = self.bit_error_rate
        return 1.96 * math.sqrt(p * (1 - p) / self.trials)

    @property
    def block_confidence_halfwidth_95(self) -> float:
        p = self.block_error_rate
        return 1.96 * math.sqrt(p * (1 - p) / self.trials)

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "f": self.f,
            "trials": self.trials,
            "source_bits": self.source_bits,
            "bit_error_rate": self.bit_error_rate,
            "block_error_rate": self.block_error_rate,
            "confidence_halfwidth_95": self.confidence_halfwidth_95,
            "block_confidence_halfwidth_95": self.block_confidence_halfwidth_95,
            "seed": self.seed,
        }


def thread_count() -> int:
    env = os.environ.get("ITLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_chunk(code, f, blocks, seed, index):
    rng = philox(seed, index)
    words = rng.integers(0, 2, size=(blocks, code.k), dtype=np.uint8)
    noise = (rng.random((blocks, code.n)) < f).astype(np.uint8)
    got = code.decode(code.encode(words) ^ noise)
    wrong = (got != words).sum(axis=1)
    return int(wrong.sum()), int(np.count_nonzero(wrong))


def simulate_transmission(code: BinaryCode, f: float, source_bits: int, seed: int,
                          threads: int | None = None) -> ErrorReport:
    """Monte-Carlo transmission of uniform source bits through BSC(f).

    Blocks are split into fixed-size chunks, each with its own Philox
    substream keyed by ``(seed, chunk index)``, so results do not depend on
    the number of worker threads.
    """
    if source_bits <= 0 or source_bits % code.k:
        raise ValueError(f"source_bits must be a positive multiple of k={code.k}")
    if not 0.0 <= f <= 1.0:
        raise OutOfRange(f"flip probability {f!r} is outside [0, 1]")
    blocks = source_bits // code.k
    sizes = [CHUNK_BLOCKS] * (blocks // CHUNK_BLOCKS)
    if blocks % CHUNK_BLOCKS:
        sizes.append(blocks % CHUNK_BLOCKS)
    jobs = [(code, f, b, seed, i) for i, b in enumerate(sizes)]
    workers = min(threads or thread_count(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda a: _run_chunk(*a), jobs))
    else:
        results = [_run_chunk(*a) for a in jobs]
    bit_err = sum(r[0] for r in results)
    block_err = sum(r[1] for r in results)
    return ErrorReport(code.name, f, blocks, source_bits, bit_err, block_err, seed)


class CurvePoint(NamedTuple):
    code: str
    rate: Fraction
    bit_error: float
    block_error: float


@dataclass(frozen=True)
class RateErrorCurve:
    f: float
    points: tuple[CurvePoint, ...]
    capacity: float


def family_codes(family: str, r_max: int = 11) -> list[BinaryCode]:
    if family == "repetition":
        return [repetition_code(r) for r in range(1, r_max + 1, 2)]
    if family == "hamming":
        return [hamming_code(m) for m in (2, 3, 4)]
    raise ValueError(f"unknown code family {family!r}")


def rate_error_curve(codes, f: float) -> RateErrorCurve:
    """Exact (rate, error) points for each code plus the BSC capacity marker.

    ``codes`` is a family name (``"repetition"`` or ``"hamming"``) or a
    list of codes.
    """
    if isinstance(codes, str):
        codes = family_codes(codes)
    if not codes:
        raise ValueError("need at least one code")
    pts = []
    for c in codes:
        e = exact_error(c, f)
        pts.append(CurvePoint(c.name, c.rate, e.bit_error, e.block_error))
    return RateErrorCurve(f, tuple(pts), bsc_capacity(f))


class CliffPoint(NamedTuple):
    f_actual: float
    bit_error: float
    block_error: float


def cliff_sweep(code: BinaryCode, f_design: float, f_values) -> list[CliffPoint]:
    """Error of a fixed code as the real flip rate drifts away from ``f_design``.

    Majority and syndrome decoders do not use the noise level, so
    ``f_design`` only marks the operating point.
    """
    if not 0.0 <= f_design <= 1.0:
        raise OutOfRange(f"design flip probability {f_design!r} is outside [0, 1]")
    out = []
    for f in f_values:
        e = exact_error(code, float(f))
        out.append(CliffPoint(float(f), e.bit_error, e.block_error))
    return out
