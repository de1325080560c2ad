"""Ready-made distributions, joints and channels used by the figures and demos.

Several are reconstructions: channels that only exist as pictures are
rebuilt here with the stated structure, not the drawn numbers.
"""
import numpy as np

from .channel import Channel, JointDistribution
from .distributions import Distribution
from .encoders import asymmetric_channel, asymmetric_source, symmetric_channel, symmetric_source
from .process import stay_chain

COLORS = ("blue", "gray", "yellow", "green")
SHAPES = ("diamond", "triangle", "star", "circle")

__all__ = [
    "COLORS",
    "SHAPES",
    "uniform_colors",
    "skewed_colors",
    "typical_skewed_sequence",
    "shape_color_joint",
    "mi_joints",
    "straddle_channel",
    "heterogeneous_channel",
    "binary_erasure_channel",
    "stay_chain",
    "symmetric_channel",
    "asymmetric_channel",
    "symmetric_source",
    "asymmetric_source",
]


def uniform_colors() -> Distribution:
    return Distribution(COLORS, np.full(4, 0.25))


def skewed_colors() -> Distribution:
    """(1/2, 1/4, 1/8, 1/8) over blue, gray, yellow, green."""
    return Distribution(COLORS, np.array([0.5, 0.25, 0.125, 0.125]))


def typical_skewed_sequence() -> list[str]:
    """16 draws holding exactly the expected count of each color (8, 4, 2, 2)."""
    return ["blue"] * 8 + ["gray"] * 4 + ["yellow"] * 2 + ["green"] * 2


def shape_color_joint() -> JointDistribution:
    """Colors (x) and shapes (y) with six equally likely combinations.

    Circles come in green, yellow or blue; stars are always green;
    triangles are blue and diamonds gray.  So H(color | circle) = log2 3,
    H(color | star) = 0 and H(shape | blue) = 1.
    """
    pairs = [
        ("gray", "diamond"),
        ("blue", "triangle"),
        ("green", "star"),
        ("green", "circle"),
        ("yellow", "circle"),
        ("blue", "circle"),
    ]
    m = np.zeros((len(SHAPES), len(COLORS)))
    for color, shape in pairs:
        m[SHAPES.index(shape), COLORS.index(color)] = 1 / len(pairs)
    return JointDistribution(COLORS, SHAPES, m)


def mi_joints() -> dict[str, JointDistribution]:
    """Uniform color/shape joints carrying 2, 1 and 0 bits of mutual information."""
    one = np.zeros((4, 4))
    one[:2, :2] = one[2:, 2:] = 1 / 8
    return {
        "two_bits": JointDistribution(COLORS, SHAPES, np.eye(4) / 4),
        "one_bit": JointDistribution(COLORS, SHAPES, one),
        "zero_bits": JointDistribution(COLORS, SHAPES, np.full((4, 4), 1 / 16)),
    }


def straddle_channel() -> Channel:
    """Three inputs over eight outputs.

    The outer inputs are noisy (uniform over four outputs each) but never
    overlap; the middle input is cleaner (two outputs) and straddles both
    halves.  Spending everything on the outer pair gives 1 bit, everything
    on the middle input gives 0; the capacity is about 1.13 bits.
    """
    m = np.zeros((8, 3))
    m[:4, 0] = 0.25
    m[3:5, 1] = 0.5
    m[4:, 2] = 0.25
    return Channel(("left", "middle", "right"), tuple(f"y{i}" for i in range(8)), m)


def heterogeneous_channel() -> Channel:
    """Four inputs with noise entropies 0, 1, log2 3 and 2 bits."""
    m = np.array(
        [
            [1.0, 0.5, 0.0, 0.25],
            [0.0, 0.5, 1 / 3, 0.25],
            [0.0, 0.0, 1 / 3, 0.25],
            [0.0, 0.0, 1 / 3, 0.25],
        ]
    )
    return Channel(("a", "b", "c", "d"), ("w", "x", "y", "z"), m)


def binary_erasure_channel(e: float) -> Channel:
    m = np.array([[1 - e, 0.0], [e, e], [0.0, 1 - e]])
    return Channel(("0", "1"), ("0", "?", "1"), m)
