import numpy as np
import pytest
from hypothesis import strategies as st

from itlab.channel import JointDistribution, make_channel
from itlab.distributions import Distribution


def random_simplex(rng, n, sparsity=0.0):
    """Dirichlet draw with some entries optionally zeroed."""
    p = rng.dirichlet(np.full(n, 0.7))
    if sparsity and n > 1:
        mask = rng.random(n) < sparsity
        if mask.all():
            mask[rng.integers(n)] = False
        p = np.where(mask, 0.0, p)
        p = p / p.sum()
    return p


def random_channel(rng, nx, ny, sparsity=0.0):
    m = np.column_stack([random_simplex(rng, ny, sparsity) for _ in range(nx)])
    return make_channel(m)


def random_distribution(rng, n, sparsity=0.0):
    return Distribution.from_probs(random_simplex(rng, n, sparsity))


@st.composite
def seeds(draw):
    return draw(st.integers(0, 2**32 - 1))


@st.composite
def channels(draw, max_in=5, max_out=5):
    rng = np.random.default_rng(draw(seeds()))
    nx, ny = draw(st.integers(1, max_in)), draw(st.integers(1, max_out))
    return random_channel(rng, nx, ny, draw(st.sampled_from([0.0, 0.3])))


@st.composite
def distributions(draw, max_size=6):
    rng = np.random.default_rng(draw(seeds()))
    n = draw(st.integers(1, max_size))
    return random_distribution(rng, n, draw(st.sampled_from([0.0, 0.3])))


@st.composite
def joints(draw, max_x=5, max_y=5):
    rng = np.random.default_rng(draw(seeds()))
    nx, ny = draw(st.integers(1, max_x)), draw(st.integers(1, max_y))
    m = random_simplex(rng, nx * ny, draw(st.sampled_from([0.0, 0.3]))).reshape(ny, nx)
    return JointDistribution.from_matrix(m)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@st.composite
def input_and_channel(draw, max_in=4, max_out=4):
    """A channel with an input distribution over its inputs."""
    rng = np.random.default_rng(draw(seeds()))
    nx, ny = draw(st.integers(1, max_in)), draw(st.integers(1, max_out))
    sp = draw(st.sampled_from([0.0, 0.3]))
    ch = random_channel(rng, nx, ny, sp)
    return Distribution(ch.inputs, random_simplex(rng, nx, sp)), ch


@st.composite
def markov_triples(draw, max_size=4):
    """X -> Y -> Z: input distribution plus two chained channels."""
    px, a = draw(input_and_channel(max_size, max_size))
    rng = np.random.default_rng(draw(seeds()))
    nz = draw(st.integers(1, max_size))
    b = make_channel(np.column_stack([random_simplex(rng, nz, 0.3) for _ in range(a.n_outputs)]),
                     inputs=a.outputs)
    return px, a, b


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
