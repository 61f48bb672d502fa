"""Hashtag diffusion as noisy biased random walks on a frozen network.

Each simulated hashtag repetition draws one noise intensity eta, then spends
a fixed step budget walking chains that start at random initiator nodes. The
traversal counts form the hashtag's imprint; the underlying network is never
mutated (adiabatic assumption).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import StuckWalkerError
from .network import WeightedNetwork
from .util import derived_rng, worker_count

_STREAM_INITIATORS = 0
_STREAM_WALKS = 1


@dataclass(frozen=True)
class DiffusionConfig:
    """Walk-ensemble protocol: hashtag count, repetitions, noise, budgets."""

    n_hashtags: int
    reps_per_hashtag: int
    step_budgets: tuple[int, ...]
    initiator_fraction: float = 0.25
    noise_mean: float = 0.3
    noise_std: float = 0.15
    chain_length: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.n_hashtags < 1:
            raise ValueError("n_hashtags must be >= 1")
        if self.reps_per_hashtag < 1:
            raise ValueError("reps_per_hashtag must be >= 1")
        budgets = tuple(int(b) for b in self.step_budgets)
        object.__setattr__(self, "step_budgets", budgets)
        if len(budgets) != self.n_hashtags:
            raise ValueError("step_budgets must have one entry per hashtag")
        if any(b < 1 for b in budgets):
            raise ValueError("step budgets must be positive")
        if not 0.0 < self.initiator_fraction <= 1.0:
            raise ValueError("initiator_fraction must be in (0, 1]")
        if self.noise_std < 0.0:
            raise ValueError("noise_std must be nonnegative")
        if self.chain_length < 1:
            raise ValueError("chain_length must be >= 1")


@dataclass
class Imprint:
    """Traversal-count network left by one hashtag repetition."""

    network: WeightedNetwork
    hashtag_id: int
    eta_used: float
    steps_taken: int


def noise_map(p, eta: float, n_nodes: int):
    """Mix a jump probability with uniform noise:
    p * (1 - eta) + eta / (n_nodes - 1).

    Accepts a scalar or an ndarray of probabilities. eta = 0 leaves p
    unchanged; eta = 1 yields the uniform value regardless of p.
    """
    p_arr = np.asarray(p, dtype=np.float64)
    if np.any(p_arr < 0.0) or np.any(p_arr > 1.0):
        raise ValueError("p must lie in [0, 1]")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    if n_nodes < 2:
        raise ValueError("n_nodes must be >= 2")
    out = p_arr * (1.0 - eta) + eta / (n_nodes - 1.0)
    return float(out) if np.isscalar(p) else out


def sample_eta(mean: float, std: float, rng: np.random.Generator) -> float:
    """One Gaussian noise-intensity draw, clipped into [0, 1]."""
    if std < 0.0:
        raise ValueError("std must be nonnegative")
    return float(np.clip(rng.normal(mean, std), 0.0, 1.0))


def jump(net: WeightedNetwork, current: int, eta: float, rng: np.random.Generator) -> int:
    """Single walker jump from `current` under noise intensity eta.

    The next node is drawn over j != current with probability
    noise_map(weights[current, j] / k_current, eta, N); a zero-degree node
    jumps uniformly when eta > 0 and is stuck when eta == 0.
    """
    if not 0 <= current < net.n_nodes:
        raise IndexError(f"node id {current} out of range")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    nxt = kernels.sample_jump(net.weights, net.degrees, current, eta, rng.random())
    if nxt < 0:
        raise StuckWalkerError(
            f"walker stuck on zero-degree node {current} with eta == 0"
        )
    return nxt


def _start_pool(net: WeightedNetwork, initiators: np.ndarray, eta: float) -> np.ndarray:
    """Initiators able to take a first step. Only eta == 0 filters anything:
    zero-degree initiators would strand the walker immediately (mid-chain a
    zero-noise walker can never reach a zero-degree node)."""
    if eta > 0.0:
        return initiators
    pool = initiators[net.degrees[initiators] > 0.0]
    if pool.shape[0] == 0:
        raise StuckWalkerError("eta == 0 and every initiator has zero degree")
    return pool


def simulate_hashtag(
    net: WeightedNetwork,
    budget: int,
    chain_length: int,
    initiators: Sequence[int],
    eta: float,
    rng: np.random.Generator,
    hashtag_id: int = 0,
) -> Imprint:
    """Spend `budget` walk steps in chains of at most chain_length, each
    chain starting at a uniformly drawn initiator; returns the imprint."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if chain_length < 1:
        raise ValueError("chain_length must be >= 1")
    init = np.asarray(initiators, dtype=np.int64)
    if init.size == 0:
        raise ValueError("initiator set must be nonempty")
    if np.any(init < 0) or np.any(init >= net.n_nodes):
        raise IndexError("initiator ids out of range")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    pool = _start_pool(net, init, eta)
    n_chains = math.ceil(budget / chain_length)
    uniforms = rng.random(n_chains + budget)
    counts = np.zeros((net.n_nodes, net.n_nodes), dtype=np.float64)
    status = kernels.walk_imprint(
        net.weights, net.degrees, float(eta), pool, int(chain_length), int(budget),
        uniforms, counts,
    )
    if status == kernels.STATUS_STUCK:
        raise StuckWalkerError("walker stuck mid-chain (zero degree, zero noise)")
    imprint_net = WeightedNetwork.from_matrix(
        counts, labels=net.labels, copy=False, validate=False
    )
    return Imprint(
        network=imprint_net, hashtag_id=hashtag_id, eta_used=float(eta), steps_taken=budget
    )


def draw_initiators(net: WeightedNetwork, fraction: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform initiator subset of round(fraction * N) nodes, no replacement."""
    size = max(1, round(fraction * net.n_nodes))
    chosen = rng.choice(net.n_nodes, size=size, replace=False)
    return np.sort(chosen).astype(np.int64)


def run_ensemble(net: WeightedNetwork, cfg: DiffusionConfig) -> list[Imprint]:
    """All n_hashtags x reps_per_hashtag imprints on a frozen network.

    The initiator subset is drawn once for the whole ensemble. Every
    repetition owns an independent RNG stream keyed by (seed, hashtag,
    repetition), so results do not depend on scheduling; imprints are
    returned ordered by (hashtag, repetition).
    """
    initiators = draw_initiators(
        net, cfg.initiator_fraction, derived_rng(cfg.seed, _STREAM_INITIATORS)
    )
    tasks = [(h, r) for h in range(cfg.n_hashtags) for r in range(cfg.reps_per_hashtag)]

    def one(task: tuple[int, int]) -> Imprint:
        h, r = task
        rng = derived_rng(cfg.seed, _STREAM_WALKS, h, r)
        eta = sample_eta(cfg.noise_mean, cfg.noise_std, rng)
        return simulate_hashtag(
            net, cfg.step_budgets[h], cfg.chain_length, initiators, eta, rng, hashtag_id=h
        )

    workers = worker_count(len(tasks))
    if workers == 1:
        return [one(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, tasks))


def budgets_from_ratios(ratios: Sequence[float], n_nodes: int) -> tuple[int, ...]:
    """Step budgets from retweets-per-user ratios: round(ratio * N), min 1."""
    out = []
    for r in ratios:
        if not r > 0.0:
            raise ValueError("ratios must be positive")
        out.append(max(1, round(r * n_nodes)))
    return tuple(out)
