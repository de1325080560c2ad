"""Command-line entry point: ``itlab <command> [flags]``.

Every command loads and validates all of its input files first, then
computes, then writes its result atomically to ``--out`` (or stdout).
Exit status is 0 on success, 2 on usage or input-file errors and 1 when
the computation itself rejects the input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as iio
from .capacity import PROJECTIONS, AscentConfig, channel_capacity
from .channel import conditional_entropy_spectrum
from .channel_coding import cliff_sweep, code_by_name, family_codes, rate_error_curve, simulate_transmission
from .distributions import entropy, max_entropy, redundancy
from .encoders import matching_experiment
from .errors import ITLabError
from .figures import FIGURES, figure
from .process import entropy_rate_table, information_histogram, typical_set
from .rate_distortion import hamming_distortion, rd_curve
from .source_coding import block_code, code_diagnostics, decode, encode, huffman_code, product_distribution


class InputError(Exception):
    """An input file is missing or malformed."""


class Table:
    def __init__(self, header, rows):
        self.header = list(header)
        self.rows = [tuple(r) for r in rows]


class Text(str):
    pass


def _load(loader, path):
    try:
        return loader(path)
    except ITLabError:
        raise
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from None
    except (KeyError, TypeError) as e:
        raise InputError(f"{path}: missing or malformed field {e}") from None
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def _read_text(path):
    if path in (None, "-"):
        return sys.stdin.read()
    return _load(lambda p: Path(p).read_text(), path)


def _render(result, fmt: str | None) -> str:
    if isinstance(result, Text):
        return str(result)
    if isinstance(result, Table):
        if fmt == "json":
            return iio.dumps([dict(zip(result.header, r)) for r in result.rows])
        return iio.csv_text(result.header, result.rows)
    if fmt == "csv":
        flat = {k: v for k, v in result.items() if not isinstance(v, (dict, list))}
        return iio.csv_text(list(flat), [tuple(flat.values())])
    return iio.dumps(result)


# -- commands: each loads its inputs, then returns the computation ------------

def cmd_entropy(a):
    d = _load(iio.load_distribution, a.dist)

    def run():
        h = entropy(d)
        if a.format is None:
            return Text(iio.fmt(h) + "\n")
        return {"entropy": h, "max_entropy": max_entropy(d.size), "redundancy": redundancy(d)}
    return run


def cmd_capacity(a):
    ch = _load(iio.load_channel, a.channel)

    def run():
        cfg = AscentConfig(a.lr, a.max_iter, a.tol, a.projection)
        trace = [] if a.trace else None
        res = channel_capacity(ch, cfg, trace)
        if a.trace:
            iio.write_atomic(a.trace, iio.csv_text(["iteration", "mi_bits", "grad_norm"], trace))
        return res.to_dict()
    return run


def cmd_typical(a):
    d = _load(iio.load_distribution, a.dist)
    return lambda: typical_set(d, a.n, a.eps).to_dict()


def cmd_info_hist(a):
    d = _load(iio.load_distribution, a.dist)

    def run():
        h = information_histogram(d, a.n, a.bins)
        return Table(["bin_left", "bin_right", "seq_count", "prob_mass"], h.rows())
    return run


def cmd_entropy_rate(a):
    chain = _load(iio.load_chain, a.chain)
    return lambda: Table(["n", "joint_rate", "cond_rate"], entropy_rate_table(chain, a.n_max))


def cmd_huffman(a):
    d = _load(iio.load_distribution, a.dist)

    def run():
        src = d if a.block == 1 else product_distribution(d, a.block)
        cb = huffman_code(d) if a.block == 1 else block_code(d, a.block)
        diag = code_diagnostics(cb, src)
        out = iio.codebook_to_dict(cb)
        out.update(
            block=a.block,
            entropy=entropy(src),
            expected_length=diag.expected_length,
            bits_per_symbol=diag.expected_length / a.block,
            kraft_sum=diag.kraft_sum,
        )
        return out
    return run


def cmd_encode(a):
    cb = _load(iio.load_codebook, a.code)
    src = a.input or "stdin"
    try:
        seq = json.loads(_read_text(a.input))
    except json.JSONDecodeError as e:
        raise InputError(f"{src}: not valid JSON ({e.msg})") from None
    if not isinstance(seq, list):
        raise InputError(f"{src}: expected a JSON array of symbols")
    return lambda: Text(encode(cb, [str(s) for s in seq]) + "\n")


def cmd_decode(a):
    cb = _load(iio.load_codebook, a.code)
    bits = "".join(_read_text(a.input).split())
    return lambda: decode(cb, bits)


def _code(name):
    try:
        return code_by_name(name)
    except ValueError as e:
        raise InputError(f"--code: {e}") from None


def cmd_simulate(a):
    code = _code(a.code)
    return lambda: simulate_transmission(code, a.f, a.bits, a.seed).to_dict()


def cmd_rate_curve(a):
    def run():
        curve = rate_error_curve(family_codes(a.family, a.r_max), a.f)
        return Table(["rate", "bit_error", "block_error", "code"],
                     [(float(p.rate), p.bit_error, p.block_error, p.code) for p in curve.points])
    return run


def cmd_cliff(a):
    code = _code(a.code)

    def run():
        grid = np.linspace(a.f_min, a.f_max, a.steps)
        return Table(["f_actual", "bit_error", "block_error"], cliff_sweep(code, a.f_design, grid))
    return run


def _named(paths, loader):
    out = {}
    for p in paths:
        name = Path(p).stem
        while name in out:
            name += "'"
        out[name] = _load(loader, p)
    return out


def cmd_match(a):
    sources = _named(a.sources, iio.load_distribution)
    channels = _named(a.channels, iio.load_channel)

    def run():
        rows = matching_experiment(sources, channels, injective=not a.allow_collisions)
        return Table(["source", "channel", "best_mi", "capacity", "gap"],
                     [(r.source, r.channel, r.best_mi, r.capacity, r.gap) for r in rows])
    return run


def cmd_rd_curve(a):
    src = _load(iio.load_distribution, a.source)
    dist = _load(iio.load_distortion, a.distortion) if a.distortion else None

    def run():
        d = dist or hamming_distortion(src.labels)
        pts = rd_curve(src, d, a.points)
        return Table(["distortion", "rate_bits", "slope"], [(p.distortion, p.rate, p.slope) for p in pts])
    return run


def cmd_extend_spectrum(a):
    ch = _load(iio.load_channel, a.channel)
    px = _load(iio.load_distribution, a.input) if a.input else None

    def run():
        sp = conditional_entropy_spectrum(ch, a.n, px, a.bins)
        if a.format == "json":
            return {
                "n": sp.n,
                "mean": sp.mean(),
                "std": sp.std(),
                "weighted_mean": sp.weighted_mean(),
                "weighted_std": sp.weighted_std(),
                "bin_edges": sp.bin_edges.tolist(),
                "bin_counts": list(sp.bin_counts),
            }
        return Table(["bin_left", "bin_right", "count"],
                     [(sp.bin_edges[i], sp.bin_edges[i + 1], c) for i, c in enumerate(sp.bin_counts)])
    return run


def cmd_figure(a):
    out = a.out or f"figure-{a.id}"
    a.out = None

    def run():
        manifest = figure(a.id, out, a.seed)
        return Text("".join(f"{Path(out) / f}\n" for f in manifest["files"] + ["manifest.json"]))
    return run


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out", help="output file (directory for `figure`); stdout if omitted")
    common.add_argument("--format", choices=("json", "csv"), help="override the command's output format")

    p = argparse.ArgumentParser(prog="itlab", description="Discrete information-theory laboratory.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("entropy", cmd_entropy, "entropy of a distribution")
    sp.add_argument("--dist", required=True)

    sp = add("capacity", cmd_capacity, "channel capacity by projected gradient ascent")
    sp.add_argument("--channel", required=True)
    sp.add_argument("--lr", type=float, default=0.05)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--max-iter", type=int, default=100_000)
    sp.add_argument("--projection", choices=PROJECTIONS, default="euclidean")
    sp.add_argument("--trace", help="write the iteration trace to this CSV file")

    sp = add("typical", cmd_typical, "typical-set size and mass")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--eps", type=float, required=True)

    sp = add("info-hist", cmd_info_hist, "histogram of per-symbol sequence information")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bins", type=int, default=32)

    sp = add("entropy-rate", cmd_entropy_rate, "entropy-rate table for a Markov chain")
    sp.add_argument("--chain", required=True)
    sp.add_argument("--n-max", type=int, default=64)

    sp = add("huffman", cmd_huffman, "Huffman code for a distribution or its n-blocks")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--block", type=int, default=1)

    sp = add("encode", cmd_encode, "encode a JSON symbol array with a codebook")
    sp.add_argument("--code", required=True)
    sp.add_argument("--input", help="JSON array file (stdin if omitted)")

    sp = add("decode", cmd_decode, "decode 0/1 text with a codebook")
    sp.add_argument("--code", required=True)
    sp.add_argument("--input", help="bit text file (stdin if omitted)")

    sp = add("simulate", cmd_simulate, "Monte-Carlo transmission over a binary symmetric channel")
    sp.add_argument("--code", required=True)
    sp.add_argument("--f", type=float, required=True)
    sp.add_argument("--bits", type=int, default=1_000_000)

    sp = add("rate-curve", cmd_rate_curve, "exact rate/error points for a code family")
    sp.add_argument("--family", choices=("repetition", "hamming"), default="repetition")
    sp.add_argument("--r-max", type=int, default=11)
    sp.add_argument("--f", type=float, required=True)

    sp = add("cliff", cmd_cliff, "error of a fixed code as the flip probability varies")
    sp.add_argument("--code", required=True)
    sp.add_argument("--f-min", type=float, default=0.0)
    sp.add_argument("--f-max", type=float, default=0.5)
    sp.add_argument("--steps", type=int, default=51)
    sp.add_argument("--f-design", type=float, default=0.2)

    sp = add("match", cmd_match, "best deterministic encoder for each source/channel pair")
    sp.add_argument("--sources", nargs="+", required=True)
    sp.add_argument("--channels", nargs="+", required=True)
    sp.add_argument("--allow-collisions", action="store_true", help="search non-injective maps too")

    sp = add("rd-curve", cmd_rd_curve, "rate-distortion curve")
    sp.add_argument("--source", required=True)
    sp.add_argument("--distortion", help="distortion matrix JSON (Hamming if omitted)")
    sp.add_argument("--points", type=int, default=50)

    sp = add("extend-spectrum", cmd_extend_spectrum, "spread of H(Y|x)/n over an extended channel")
    sp.add_argument("--channel", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bins", type=int, default=64)
    sp.add_argument("--input", help="input distribution JSON (uniform if omitted)")

    sp = add("figure", cmd_figure, f"regenerate figure data ({', '.join(FIGURES)})")
    sp.add_argument("--id", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        run = args.fn(args)
    except InputError as e:
        print(f"itlab {args.command}: {e}", file=sys.stderr)
        return 2
    except (ITLabError, ValueError) as e:
        print(f"itlab {args.command}: {e}", file=sys.stderr)
        return 1
    try:
        text = _render(run(), args.format)
    except (ITLabError, ValueError) as e:
        print(f"itlab {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if args.out:
        iio.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
