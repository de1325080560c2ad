"""JSON and CSV formats shared by the library and the command line.

Matrices are row-major with rows indexing *outputs* (channels, encoders)
or *source symbols* (distortion matrices)::

    distribution  {"labels": [...], "probs": [...]}
    channel       {"inputs": [...], "outputs": [...], "matrix": [[...], ...]}
    codebook      {"labels": [...], "codewords": ["1", "01", ...]}
    chain         {"labels": [...], "initial": [...], "transition": [[...], ...]}
    distortion    {"source": [...], "reconstruction": [...], "matrix": [[...], ...]}
    encoder       {"map": {"s": "x", ...}}  or channel-shaped (stochastic)

Floats are written with 12 significant digits.
"""
from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .channel import Channel
from .distributions import Distribution, validate_distribution
from .encoders import DeterministicEncoder, StochasticEncoder
from .process import MarkovChain
from .rate_distortion import DistortionMatrix
from .source_coding import CodeBook

DIGITS = 12


def fmt(x) -> str:
    """Number formatted the way every itlab output file writes it."""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x == 0:
        return "0"
    return format(x, f".{DIGITS}g")


def _round(obj):
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(format(x, f".{DIGITS}g")) + 0.0 if np.isfinite(x) else str(x)
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), indent=2) + "\n"


def csv_text(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


# -- distributions -----------------------------------------------------------

def distribution_to_dict(d: Distribution) -> dict:
    return {"labels": list(d.labels), "probs": d.probs.tolist()}


def distribution_from_dict(obj) -> Distribution:
    return validate_distribution(obj["probs"], obj.get("labels"))


def load_distribution(path) -> Distribution:
    return distribution_from_dict(read_json(path))


# -- channels ---------------------------------------------------------------

def channel_to_dict(ch: Channel) -> dict:
    return {"inputs": list(ch.inputs), "outputs": list(ch.outputs), "matrix": ch.matrix.tolist()}


def channel_from_dict(obj) -> Channel:
    m = np.asarray(obj["matrix"], dtype=float)
    inputs = obj.get("inputs") or [str(i) for i in range(m.shape[1])]
    outputs = obj.get("outputs") or [str(i) for i in range(m.shape[0])]
    return Channel(tuple(inputs), tuple(outputs), m)


def load_channel(path) -> Channel:
    return channel_from_dict(read_json(path))


# -- codebooks --------------------------------------------------------------

def codebook_to_dict(cb: CodeBook) -> dict:
    return {"labels": list(cb.labels), "codewords": list(cb.codewords)}


def codebook_from_dict(obj) -> CodeBook:
    return CodeBook(tuple(obj["labels"]), tuple(obj["codewords"]))


def load_codebook(path) -> CodeBook:
    return codebook_from_dict(read_json(path))


# -- Markov chains ----------------------------------------------------------

def chain_to_dict(chain: MarkovChain) -> dict:
    return {
        "labels": list(chain.labels),
        "initial": chain.initial.probs.tolist(),
        "transition": chain.transition.matrix.tolist(),
    }


def chain_from_dict(obj) -> MarkovChain:
    init = validate_distribution(obj["initial"], obj.get("labels"))
    t = np.asarray(obj["transition"], dtype=float)
    return MarkovChain(init, Channel(init.labels, init.labels, t))


def load_chain(path) -> MarkovChain:
    return chain_from_dict(read_json(path))


# -- distortion matrices ----------------------------------------------------

def distortion_to_dict(d: DistortionMatrix) -> dict:
    return {
        "source": list(d.source_labels),
        "reconstruction": list(d.recon_labels),
        "matrix": d.matrix.tolist(),
    }


def distortion_from_dict(obj) -> DistortionMatrix:
    m = np.asarray(obj["matrix"], dtype=float)
    src = obj.get("source") or [str(i) for i in range(m.shape[0])]
    rec = obj.get("reconstruction") or list(src)
    return DistortionMatrix(tuple(src), tuple(rec), m)


def load_distortion(path) -> DistortionMatrix:
    return distortion_from_dict(read_json(path))


# -- encoders ---------------------------------------------------------------

def encoder_to_dict(enc) -> dict:
    if isinstance(enc, DeterministicEncoder):
        return {"map": enc.as_dict()}
    return {
        "inputs": list(enc.source_labels),
        "outputs": list(enc.input_labels),
        "matrix": enc.matrix.tolist(),
    }


def encoder_from_dict(obj, source: Distribution, channel: Channel):
    if "map" in obj:
        mapping = obj["map"]
        missing = set(source.labels) - set(mapping)
        if missing:
            raise ValueError(f"encoder map has no entry for {sorted(missing)}")
        idx = [channel.inputs.index(mapping[s]) for s in source.labels]
        return DeterministicEncoder(source.labels, channel.inputs, idx)
    ch = channel_from_dict(obj)
    return StochasticEncoder(ch.inputs, ch.outputs, ch.matrix)
