"""Prefix codes: Huffman construction, encode/decode, Kraft diagnostics, block codes.

Codebooks are deterministic.  Huffman merges the two lightest nodes,
breaking probability ties by smallest symbol index and then by creation
order; the heavier branch of each merge gets bit ``1`` (on a tie, the
node popped first counts as heavier).  On (1/2, 1/4, 1/8, 1/8) this gives
``1, 01, 001, 000``.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .distributions import Distribution, check_labels, entropy
from .errors import SizeCapExceeded, SpaceMismatch, TrailingBits, UnknownSymbol

BLOCK_CAP = 2**16


@dataclass(frozen=True)
class CodeBook:
    labels: tuple[str, ...]
    codewords: tuple[str, ...]

    def __post_init__(self):
        labels = check_labels(self.labels)
        words = tuple(self.codewords)
        if len(words) != len(labels):
            raise SpaceMismatch(f"{len(words)} codewords for {len(labels)} symbols")
        for w in words:
            if not w or set(w) - {"0", "1"}:
                raise ValueError(f"codeword {w!r} is not a nonempty bit string")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "codewords", words)
        if not is_prefix_free(words):
            raise ValueError("codewords are not prefix-free")

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.codewords)

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.labels, self.codewords))


def is_prefix_free(words: Sequence[str]) -> bool:
    """Structural check: insert each word into a binary trie."""
    root: dict = {}
    for w in sorted(words, key=len):
        node = root
        for bit in w:
            if node.get("end"):
                return False
            node = node.setdefault(bit, {})
        if node.get("end") or len(node) > 0:
            return False
        node["end"] = True
    return True


def kraft_sum(cb: CodeBook) -> float:
    return math.fsum(2.0 ** -n for n in cb.lengths)


def huffman_code(d: Distribution) -> CodeBook:
    """Optimal binary prefix code for ``d``.

    A single-outcome space gets the codeword ``"0"``.  Zero-probability
    outcomes still receive (long) codewords so every symbol is encodable.
    """
    if d.size == 1:
        return CodeBook(d.labels, ("0",))
    order = itertools.count()
    # heap entries: (prob, smallest symbol index, creation order, leaves)
    heap = [(float(p), i, next(order), (i,)) for i, p in enumerate(d.probs)]
    heapq.heapify(heap)
    codes = [""] * d.size
    while len(heap) > 1:
        light = heapq.heappop(heap)
        heavy = heapq.heappop(heap)
        if light[0] == heavy[0]:
            light, heavy = heavy, light
        for i in heavy[3]:
            codes[i] = "1" + codes[i]
        for i in light[3]:
            codes[i] = "0" + codes[i]
        heapq.heappush(
            heap,
            (light[0] + heavy[0], min(light[1], heavy[1]), next(order), light[3] + heavy[3]),
        )
    return CodeBook(d.labels, tuple(codes))


def encode(cb: CodeBook, seq) -> str:
    table = cb.as_dict()
    try:
        return "".join(table[str(s)] for s in seq)
    except KeyError as exc:
        raise UnknownSymbol(f"symbol {exc.args[0]!r} is not in the codebook") from None


def decode(cb: CodeBook, bits: str) -> list[str]:
    table = {w: lab for lab, w in zip(cb.labels, cb.codewords)}
    out, cur = [], ""
    for b in bits:
        if b not in "01":
            raise ValueError(f"invalid bit {b!r}")
        cur += b
        if cur in table:
            out.append(table[cur])
            cur = ""
    if cur:
        raise TrailingBits(f"{len(cur)} bits left over after the last full codeword")
    return out


class CodeDiagnostics(NamedTuple):
    expected_length: float
    kraft_sum: float
    redundancy_of_code: float


def code_diagnostics(cb: CodeBook, d: Distribution) -> CodeDiagnostics:
    if cb.labels != d.labels:
        raise SpaceMismatch(f"codebook over {cb.labels} but distribution over {d.labels}")
    length = math.fsum(d.probs * np.array(cb.lengths))
    return CodeDiagnostics(length, kraft_sum(cb), length - entropy(d))


def product_distribution(d: Distribution, n: int, cap: int = BLOCK_CAP) -> Distribution:
    """IID distribution over length-n blocks, first symbol most significant."""
    if n < 1:
        raise ValueError("block length must be at least 1")
    if d.size**n > cap:
        raise SizeCapExceeded(f"{d.size}^{n} blocks exceed cap {cap}")
    p = d.probs
    for _ in range(n - 1):
        p = np.kron(p, d.probs)
    sep = "" if all(len(lab) == 1 for lab in d.labels) else ","
    labels = [sep.join(t) for t in itertools.product(d.labels, repeat=n)]
    return Distribution(tuple(labels), p / math.fsum(p))


def block_code(d: Distribution, n: int, cap: int = BLOCK_CAP) -> CodeBook:
    """Huffman code over length-n blocks of ``d``."""
    return huffman_code(product_distribution(d, n, cap))


def fixed_length_code(labels) -> CodeBook:
    """Equal-length binary code, codewords in counting order."""
    labels = tuple(labels)
    width = max(1, math.ceil(math.log2(len(labels))))
    return CodeBook(labels, tuple(format(i, f"0{width}b") for i in range(len(labels))))
