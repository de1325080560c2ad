"""itlab: a discrete information-theory laboratory.

Entropies and mutual information, channel capacity by projected gradient
ascent, typical sets, entropy rates, source and channel codes, encoder
search and rate-distortion curves, all in bits.
"""
from .capacity import AscentConfig, CapacityResult, channel_capacity, decomposition_report, project_simplex
from .channel import (
    Channel,
    JointDistribution,
    compose_channels,
    conditional_entropy,
    conditional_entropy_spectrum,
    extend_channel,
    joint_distribution,
    joint_entropy,
    mutual_information,
    output_distribution,
    pointwise_quantities,
)
from .channel_coding import (
    bsc,
    bsc_capacity,
    cliff_sweep,
    exact_error,
    hamming74,
    hamming_code,
    rate_error_curve,
    repetition_code,
    simulate_transmission,
)
from .distributions import Distribution, entropy, max_entropy, redundancy, self_information, validate_distribution
from .encoders import (
    DeterministicEncoder,
    StochasticEncoder,
    brute_force_encoder,
    encoder_mi,
    matching_experiment,
    optimize_stochastic_encoder,
)
from .errors import ITLabError
from .figures import figure
from .process import (
    MarkovChain,
    conditional_entropy_rate,
    information_histogram,
    joint_entropy_rate,
    sample_sequence,
    stay_chain,
    typical_set,
)
from .rate_distortion import DistortionMatrix, hamming_distortion, rd_curve, rd_point
from .source_coding import CodeBook, block_code, code_diagnostics, decode, encode, huffman_code

__version__ = "0.1.0"
