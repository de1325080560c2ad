"""Regenerate the data behind each figure as CSV/JSON bundles.

Every bundle is a directory holding the data files plus ``manifest.json``
recording the parameters and seed.  Output is deterministic: the same id
and seed give byte-identical files.
"""
from __future__ import annotations

import math
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import catalog
from . import io as iio
from .capacity import AscentConfig, channel_capacity, decomposition_report
from .channel import conditional_entropy_spectrum
from .channel_coding import cliff_sweep, family_codes, hamming74, rate_error_curve, repetition_code
from .distributions import Distribution, entropy, max_entropy, redundancy
from .encoders import matching_experiment
from .errors import UnknownFigure
from .process import entropy_rate_table, information_histogram, sample_sequence, typical_set
from .rate_distortion import hamming_distortion, rd_curve
from .source_coding import code_diagnostics, encode, huffman_code

FIGURES = ("2", "3", "4", "6", "7", "9-analog", "10-analog", "12", "13")


class _Bundle:
    def __init__(self, out_dir, fig_id, seed):
        self.dir = Path(out_dir)
        self.files: list[str] = []
        self.manifest = {"figure": fig_id, "seed": seed, "parameters": {}, "files": self.files}

    def json(self, name, obj):
        iio.write_atomic(self.dir / name, iio.dumps(obj))
        self.files.append(name)

    def csv(self, name, header, rows):
        iio.write_atomic(self.dir / name, iio.csv_text(header, rows))
        self.files.append(name)

    def close(self):
        iio.write_atomic(self.dir / "manifest.json", iio.dumps(self.manifest))
        return self.manifest


def _fig2(b: _Bundle, seed):
    dists = {"uniform": catalog.uniform_colors(), "skewed": catalog.skewed_colors()}
    b.manifest["parameters"] = {"sequence_length": 16}
    books, rows = {}, []
    for name, d in dists.items():
        cb = huffman_code(d)
        diag = code_diagnostics(cb, d)
        books[name] = {
            "distribution": iio.distribution_to_dict(d),
            "codebook": iio.codebook_to_dict(cb),
            "entropy": entropy(d),
            "expected_length": diag.expected_length,
            "kraft_sum": diag.kraft_sum,
        }
        if name == "skewed":
            seq = catalog.typical_skewed_sequence()
        else:
            seq = [lab for lab in d.labels for _ in range(4)]
        cases = [(name, seq)]
        if name == "skewed":
            # most and least probable 16-draw sequences, for contrast with the typical one
            cases += [("skewed_all_blue", ["blue"] * 16), ("skewed_all_green", ["green"] * 16)]
        for case, seq in cases:
            bits = encode(cb, seq)
            rows.append((case, " ".join(seq), bits, len(bits), len(bits) / len(seq)))
    b.json("codebooks.json", books)
    b.csv("typical_encodings.csv", ["case", "sequence", "bits", "n_bits", "bits_per_symbol"], rows)


def _fig3(b: _Bundle, seed):
    d = catalog.skewed_colors()
    ns = [2, 4, 8, 16, 32]
    b.manifest["parameters"] = {"distribution": iio.distribution_to_dict(d), "n": ns, "bins": 32}
    samples = []
    for n in ns:
        h = information_histogram(d, n, bins=32)
        b.csv(f"info_hist_n{n}.csv", ["bin_left", "bin_right", "seq_count", "prob_mass"], h.rows())
        s = sample_sequence(d, n, seed)
        samples.append((n, " ".join(s.labels(d.labels)), h.mean, h.std))
    b.csv("samples.csv", ["n", "sequence", "weighted_mean_info", "weighted_std_info"], samples)


def _fig4(b: _Bundle, seed):
    cases = {
        "uniform": [0.25, 0.25, 0.25, 0.25],
        "skewed": [0.5, 0.25, 0.125, 0.125],
        "peaked": [0.85, 0.05, 0.05, 0.05],
        "certain": [1.0, 0.0, 0.0, 0.0],
    }
    ns = [4, 8, 16, 32, 64]
    eps = 0.2
    b.manifest["parameters"] = {"distributions": cases, "n": ns, "epsilon": eps}
    rows = []
    for name, p in cases.items():
        d = Distribution(catalog.COLORS, np.array(p))
        rows.append((name, entropy(d), max_entropy(d.size), redundancy(d)))
    b.csv("redundancy.csv", ["distribution", "entropy", "max_entropy", "redundancy"], rows)
    typ = []
    for name in ("uniform", "skewed"):
        d = Distribution(catalog.COLORS, np.array(cases[name]))
        for n in ns:
            r = typical_set(d, n, eps)
            typ.append((name, n, str(r.typical_sequence_count), 4**n, r.typical_probability_mass,
                        math.log2(r.typical_sequence_count) / n))
    b.csv("typical_sets.csv",
          ["distribution", "n", "typical_sequences", "all_sequences", "typical_mass", "log2_count_per_symbol"],
          typ)


def _fig6(b: _Bundle, seed):
    chain = catalog.stay_chain(labels=catalog.COLORS)
    n_max = 64
    b.manifest["parameters"] = {"chain": iio.chain_to_dict(chain), "n_max": n_max, "sample_length": 16}
    b.csv("entropy_rate.csv", ["n", "joint_rate", "cond_rate"], entropy_rate_table(chain, n_max))
    s = sample_sequence(chain, 16, seed)
    b.csv("sample.csv", ["position", "color"], [(i + 1, lab) for i, lab in enumerate(s.labels(chain.labels))])


def _fig7(b: _Bundle, seed):
    b.manifest["parameters"] = {"sources": ["uniform-2", "uniform-4", "skewed-4"], "distortion": "hamming", "points": 40}
    for name, d in (
        ("uniform2", Distribution.uniform(2)),
        ("uniform4", Distribution.uniform(4)),
        ("skewed4", catalog.skewed_colors()),
    ):
        pts = rd_curve(d, hamming_distortion(d.labels), 40)
        b.csv(f"rd_{name}.csv", ["distortion", "rate_bits", "slope"], [(p.distortion, p.rate, p.slope) for p in pts])


def _fig9(b: _Bundle, seed):
    ch = catalog.straddle_channel()
    cfg = AscentConfig(tolerance=1e-13)
    b.manifest["parameters"] = {"ascent": asdict(cfg)}
    b.json("channel.json", iio.channel_to_dict(ch))
    res = channel_capacity(ch, cfg)
    b.json("capacity.json", res.to_dict())
    strategies = {
        "max_output_entropy": np.array([0.5, 0.0, 0.5]),
        "min_input_noise": np.array([0.0, 1.0, 0.0]),
        "capacity": res.optimal_input.probs,
    }
    rows = []
    for name, p in strategies.items():
        rep = decomposition_report(ch, Distribution(ch.inputs, p))
        rows.append((name, *p.tolist(), rep.mi, rep.h_y, rep.h_y_given_x))
    b.csv("strategies.csv", ["strategy", *(f"p_{x}" for x in ch.inputs), "mi", "h_y", "h_y_given_x"], rows)


def _fig10(b: _Bundle, seed):
    sources = {"symmetric": catalog.symmetric_source(), "asymmetric": catalog.asymmetric_source()}
    channels = {"symmetric": catalog.symmetric_channel(), "asymmetric": catalog.asymmetric_channel()}
    b.manifest["parameters"] = {"search": "injective brute force"}
    for name, s in sources.items():
        b.json(f"source_{name}.json", iio.distribution_to_dict(s))
    for name, c in channels.items():
        b.json(f"channel_{name}.json", iio.channel_to_dict(c))
    rows = matching_experiment(sources, channels)
    b.csv("match.csv", ["source", "channel", "best_mi", "capacity", "gap"],
          [(r.source, r.channel, r.best_mi, r.capacity, r.gap) for r in rows])
    b.json("encoders.json", {f"{r.source}/{r.channel}": iio.encoder_to_dict(r.encoder) for r in rows})


def _fig12(b: _Bundle, seed):
    f = 0.2
    b.manifest["parameters"] = {"f": f, "repetition_r_max": 11, "cliff_f": [0.0, 0.5, 51]}
    rep = rate_error_curve(family_codes("repetition", 11), f)
    ham = rate_error_curve([hamming74()], f)
    rows = [(p.code, p.rate, p.bit_error, p.block_error) for p in rep.points + ham.points]
    b.csv("rate_error.csv", ["code", "rate", "bit_error", "block_error"], rows)
    b.json("capacity.json", {"f": f, "capacity": rep.capacity})
    grid = np.linspace(0.0, 0.5, 51)
    for code in (repetition_code(3), hamming74()):
        pts = cliff_sweep(code, f, grid)
        b.csv(f"cliff_{code.name}.csv", ["f_actual", "bit_error", "block_error"], pts)


def _fig13(b: _Bundle, seed):
    ch = catalog.heterogeneous_channel()
    ns = [1, 2, 4, 8, 16]
    b.manifest["parameters"] = {"channel": iio.channel_to_dict(ch), "n": ns, "bins": 64}
    rows = []
    for n in ns:
        sp = conditional_entropy_spectrum(ch, n)
        b.csv(f"spectrum_hist_n{n}.csv", ["bin_left", "bin_right", "count"],
              [(sp.bin_edges[i], sp.bin_edges[i + 1], c) for i, c in enumerate(sp.bin_counts)])
        rows.append((n, sp.mean(), sp.std()))
    b.csv("spectrum_summary.csv", ["n", "mean_bits", "std_bits"], rows)


_BUILDERS = {
    "2": _fig2, "3": _fig3, "4": _fig4, "6": _fig6, "7": _fig7,
    "9-analog": _fig9, "10-analog": _fig10, "12": _fig12, "13": _fig13,
}


def figure(fig_id, out_dir, seed: int = 0) -> dict:
    """Write the data bundle for ``fig_id`` into ``out_dir``; returns the manifest."""
    key = str(fig_id)
    if key in ("9", "10"):
        key += "-analog"
    if key not in _BUILDERS:
        raise UnknownFigure(f"no figure {fig_id!r}; choose from {', '.join(FIGURES)}")
    b = _Bundle(out_dir, key, seed)
    _BUILDERS[key](b, seed)
    return b.close()
