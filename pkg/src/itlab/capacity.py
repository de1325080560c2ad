"""Channel capacity by projected gradient ascent on the probability simplex."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .channel import Channel, _check_input, entropy_of
from .distributions import Distribution

LOG2E = math.log2(math.e)

PAPER_HEURISTIC = "paper-heuristic"
EUCLIDEAN = "euclidean"
PROJECTIONS = (PAPER_HEURISTIC, EUCLIDEAN)


@dataclass(frozen=True)
class AscentConfig:
    learning_rate: float = 0.05
    max_iterations: int = 100_000
    tolerance: float = 1e-9
    projection_method: str = EUCLIDEAN

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.projection_method not in PROJECTIONS:
            raise ValueError(f"projection_method must be one of {PROJECTIONS}")


@dataclass
class CapacityResult:
    capacity: float
    optimal_input: Distribution
    iterations: int
    final_gradient_norm: float
    converged: bool
    trace: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "optimal_input": {
                "labels": list(self.optimal_input.labels),
                "probs": self.optimal_input.probs.tolist(),
            },
            "iterations": self.iterations,
            "final_gradient_norm": self.final_gradient_norm,
            "converged": self.converged,
        }


def _plogp_columns(w: np.ndarray) -> np.ndarray:
    """sum_y w log2 w for every column of w."""
    nz = w > 0
    out = np.where(nz, w * np.log2(np.where(nz, w, 1.0)), 0.0).sum(axis=0)
    return out


def _mi(w: np.ndarray, negent: np.ndarray, p: np.ndarray) -> float:
    # I(p) = sum_x p(x) sum_y w log w - sum_y q log q; valid off the simplex too,
    # which is what the finite-difference checks perturb.
    q = w @ p
    return float(negent @ p - np.dot(q[q > 0], np.log2(q[q > 0])))


def _divergences(w: np.ndarray, negent: np.ndarray, p: np.ndarray) -> np.ndarray:
    q = w @ p
    logq = np.log2(np.maximum(q, 1e-300))
    return negent - w.T @ logq


def mutual_information_at(ch: Channel, p) -> float:
    """I(X;Y) for input probabilities ``p`` (a raw vector)."""
    w = ch.matrix
    return _mi(w, _plogp_columns(w), np.asarray(p, dtype=float))


def input_divergences(ch: Channel, px: Distribution) -> np.ndarray:
    """D(p(.|x) || p_Y) in bits for every input x."""
    _check_input(ch, px)
    w = ch.matrix
    return _divergences(w, _plogp_columns(w), px.probs)


def mi_gradient(ch: Channel, px: Distribution) -> np.ndarray:
    """dI/dp(x) = D(p(.|x) || p_Y) - log2(e), in bits per unit probability.

    At boundary points where an output has zero probability the divergence
    is infinite; it is capped (log of 1e-300) so ascent stays finite.
    """
    return input_divergences(ch, px) - LOG2E


def _euclidean(m: np.ndarray) -> np.ndarray:
    """Nearest simplex point for every column of ``m`` (sort-based)."""
    u = -np.sort(-m, axis=0)
    css = np.cumsum(u, axis=0) - 1.0
    ind = np.arange(1, m.shape[0] + 1)[:, None]
    rho = np.count_nonzero(u - css / ind > 0, axis=0)
    theta = css[rho - 1, np.arange(m.shape[1])] / rho
    return np.maximum(m - theta, 0.0)


def _clamp_and_shift(m: np.ndarray, max_rounds: int = 10_000) -> np.ndarray:
    # Clamp at zero, then spread the deficit (or excess) evenly, repeated.
    # When the clamped sum exceeds one, a shift pushes zero entries negative
    # again, so the loop converges geometrically rather than terminating.
    n = m.shape[0]
    p = np.maximum(m, 0.0)
    for _ in range(max_rounds):
        gap = 1.0 - p.sum(axis=0)
        if np.all(np.abs(gap) <= 1e-15):
            break
        p = np.maximum(p + gap / n, 0.0)
    return p


def project_columns(m: np.ndarray, method: str = EUCLIDEAN) -> np.ndarray:
    """Project every column of ``m`` onto the simplex."""
    if method == EUCLIDEAN:
        p = _euclidean(m)
    elif method == PAPER_HEURISTIC:
        p = _clamp_and_shift(m)
    else:
        raise ValueError(f"unknown projection method {method!r}")
    return p / p.sum(axis=0)


def project_simplex(v, method: str = EUCLIDEAN) -> Distribution:
    """Map an arbitrary real vector onto the probability simplex.

    ``"euclidean"`` returns the nearest simplex point; ``"paper-heuristic"``
    iterates clamp-at-zero followed by a uniform shift restoring the sum.
    """
    v = np.asarray(v, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("cannot project an empty vector")
    return Distribution.from_probs(project_columns(v[:, None], method)[:, 0])


def _project(v, method):
    return project_columns(v[:, None], method)[:, 0]


def ascend(w: np.ndarray, grad_fn, mi_fn, p0: np.ndarray, cfg: AscentConfig, project, trace=None):
    """Generic projected ascent loop shared by capacity and encoder search.

    A step that lowers the objective is rejected and the learning rate
    halved, so accepted iterates never decrease.  Returns
    ``(p, value, iterations, gradient_mapping_norm, converged)``.
    """
    p = p0
    value = mi_fn(p)
    lr = cfg.learning_rate
    converged = False
    it = 0
    step_norm = math.inf
    while it < cfg.max_iterations:
        it += 1
        g = grad_fn(p)
        p_new = project(p + lr * g)
        step_norm = float(np.linalg.norm(p_new - p)) / lr
        new_value = mi_fn(p_new)
        gain = new_value - value
        if trace is not None:
            trace.append((it, new_value if gain >= 0 else value, step_norm))
        if gain < -1e-15:
            lr *= 0.5
            if lr < 1e-12 * cfg.learning_rate:
                converged = True
                break
            continue
        p, value = p_new, max(new_value, value)
        if gain < cfg.tolerance:
            converged = True
            break
    return p, value, it, step_norm, converged


def channel_capacity(ch: Channel, cfg: AscentConfig | None = None, trace: list | None = None) -> CapacityResult:
    """Capacity and an optimal input distribution, starting from uniform.

    ``trace``, if given, receives ``(iteration, mi_bits, grad_norm)`` rows.
    """
    cfg = cfg or AscentConfig()
    w = ch.matrix
    negent = _plogp_columns(w)
    p0 = np.full(ch.n_inputs, 1.0 / ch.n_inputs)
    p, value, it, gnorm, ok = ascend(
        w,
        lambda p: _divergences(w, negent, p) - LOG2E,
        lambda p: _mi(w, negent, p),
        p0,
        cfg,
        lambda v: _project(v, cfg.projection_method),
        trace,
    )
    return CapacityResult(max(value, 0.0), Distribution(ch.inputs, p), it, gnorm, ok, trace or [])


class Decomposition(NamedTuple):
    mi: float
    h_y: float
    h_y_given_x: float


def decomposition_report(ch: Channel, px: Distribution) -> Decomposition:
    """Split I(X;Y) into output entropy and average input noise."""
    _check_input(ch, px)
    h_y = entropy_of(ch.matrix @ px.probs)
    h_y_given_x = math.fsum(px.probs * ch.column_entropies())
    return Decomposition(h_y - h_y_given_x, h_y, h_y_given_x)
