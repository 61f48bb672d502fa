"""Route-preference overlap measures between two imprint networks.

The weighted-overlap index is the fraction of combined link weight lying on
links that carry positive weight in both networks. Functional similarity is
the cosine between a node's weight rows across the two networks; averaging
it over nodes active in both gives the pairwise similarity score.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import UndefinedMeasureError, ZeroRowError
from .network import WeightedNetwork, intersect_nodes


class Half(Enum):
    FIRST = "first"
    SECOND = "second"
    WHOLE = "whole"


@dataclass(frozen=True)
class PairResult:
    """Both measures for one compared pair of hashtag networks."""

    id_a: str
    id_b: str
    half_a: Half
    half_b: Half
    jaccard: float
    mean_similarity: float
    nodes_compared: int

    def __post_init__(self):
        if self.id_a == self.id_b and self.half_a == self.half_b:
            raise ValueError("a pair must differ in hashtag or half")
        if not 0.0 <= self.jaccard <= 1.0:
            raise ValueError("jaccard out of [0, 1]")
        if not 0.0 <= self.mean_similarity <= 1.0:
            raise ValueError("mean_similarity out of [0, 1]")


def _check_same_dim(a: WeightedNetwork, b: WeightedNetwork) -> None:
    if a.n_nodes != b.n_nodes:
        raise ValueError(
            f"networks must have equal size, got {a.n_nodes} and {b.n_nodes}; "
            "align them with preprocess_pair first"
        )


def modified_weighted_jaccard(a: WeightedNetwork, b: WeightedNetwork) -> float:
    """Fraction of total link weight on links positive in both networks.

    Positivity is exact (weight > 0); the operation does not normalize its
    inputs, so raw traversal counts can be checked directly.
    """
    _check_same_dim(a, b)
    wa, wb = a.weights, b.weights
    combined = wa + wb
    total = combined.sum()
    if not total > 0.0:
        raise UndefinedMeasureError("both networks have zero total weight")
    shared = combined[(wa > 0.0) & (wb > 0.0)].sum()
    return float(min(max(shared / total, 0.0), 1.0))


def state_vector(net: WeightedNetwork, i: int) -> np.ndarray:
    """Node i's weight row scaled to unit Euclidean norm."""
    if not 0 <= i < net.n_nodes:
        raise IndexError(f"node id {i} out of range")
    row = net.weights[i]
    norm = float(np.linalg.norm(row))
    if not norm > 0.0:
        raise ZeroRowError(f"node {i} has an all-zero row")
    return row / norm


def functional_similarity(a: WeightedNetwork, b: WeightedNetwork, i: int) -> float:
    """Cosine similarity of node i's weight rows across the two networks."""
    _check_same_dim(a, b)
    if not 0 <= i < a.n_nodes:
        raise IndexError(f"node id {i} out of range")
    ra, rb = a.weights[i], b.weights[i]
    na = float(np.linalg.norm(ra))
    nb = float(np.linalg.norm(rb))
    if not (na > 0.0 and nb > 0.0):
        raise ZeroRowError(f"node {i} is inactive in one of the networks")
    sim = float(np.dot(ra, rb) / (na * nb))
    return min(max(sim, 0.0), 1.0)


def mean_functional_similarity(
    a: WeightedNetwork, b: WeightedNetwork
) -> tuple[float, int]:
    """Average functional similarity over nodes active in both networks.

    Nodes with a zero row in either network are excluded rather than scored
    zero; the eligible-node count is returned for transparency.
    """
    _check_same_dim(a, b)
    na = np.linalg.norm(a.weights, axis=1)
    nb = np.linalg.norm(b.weights, axis=1)
    eligible = (na > 0.0) & (nb > 0.0)
    n_eligible = int(eligible.sum())
    if n_eligible == 0:
        raise UndefinedMeasureError("no node is active in both networks")
    dots = np.einsum("ij,ij->i", a.weights[eligible], b.weights[eligible])
    sims = np.clip(dots / (na[eligible] * nb[eligible]), 0.0, 1.0)
    return float(sims.mean()), n_eligible


def preprocess_pair(
    a: WeightedNetwork, b: WeightedNetwork
) -> tuple[WeightedNetwork, WeightedNetwork]:
    """Align a labeled pair for measurement: restrict both networks to their
    common node set, then scale each to unit total weight."""
    a_sub, b_sub, _ = intersect_nodes(a, b)
    return a_sub.normalize_total(), b_sub.normalize_total()


def measure_pair(
    a: WeightedNetwork,
    b: WeightedNetwork,
    id_a: str,
    id_b: str,
    half_a: Half = Half.WHOLE,
    half_b: Half = Half.WHOLE,
    preprocess: bool = True,
) -> PairResult:
    """Run the full pair pipeline (optional preprocessing, both measures)."""
    if preprocess:
        a, b = preprocess_pair(a, b)
    jac = modified_weighted_jaccard(a, b)
    sim, n_eligible = mean_functional_similarity(a, b)
    return PairResult(
        id_a=id_a,
        id_b=id_b,
        half_a=half_a,
        half_b=half_b,
        jaccard=jac,
        mean_similarity=sim,
        nodes_compared=n_eligible,
    )
