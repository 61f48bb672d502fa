"""Weighted, undirected, fixed-size networks with cached weighted degrees.

The weight table is dense (float64, symmetric, zero diagonal). Degrees are
cached row sums and the total weight is the sum over unordered node pairs;
both are maintained incrementally by `add_weight` and recomputed from the
matrix by bulk constructors.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import EmptyNetworkError, NoCommonUsersError


class WeightedNetwork:
    """Symmetric nonnegative link-weight table over N fixed nodes.

    Attributes:
        n_nodes: number of nodes N.
        weights: (N, N) float64 array, symmetric, zero diagonal.
        degrees: (N,) float64 array of row sums (weighted degrees).
        total_weight: sum of link weights over unordered pairs.
        labels: optional tuple of external node labels (user ids), one per
            node, in index order.

    After evolution finishes a network is treated as frozen: readers may
    share it across threads, and diffusion never mutates it.
    """

    __slots__ = ("n_nodes", "weights", "degrees", "total_weight", "labels")

    def __init__(self, n_nodes: int, labels: Optional[Sequence[str]] = None):
        if int(n_nodes) != n_nodes or n_nodes < 2:
            raise ValueError(f"n_nodes must be an integer >= 2, got {n_nodes!r}")
        n_nodes = int(n_nodes)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n_nodes:
                raise ValueError("labels length must equal n_nodes")
            if len(set(labels)) != n_nodes:
                raise ValueError("labels must be unique")
        self.n_nodes = n_nodes
        self.weights = np.zeros((n_nodes, n_nodes), dtype=np.float64)
        self.degrees = np.zeros(n_nodes, dtype=np.float64)
        self.total_weight = 0.0
        self.labels = labels

    @classmethod
    def from_matrix(
        cls,
        matrix: np.ndarray,
        labels: Optional[Sequence[str]] = None,
        copy: bool = True,
        validate: bool = True,
    ) -> "WeightedNetwork":
        """Build a network from a full weight matrix; degrees are recomputed."""
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("weight matrix must be square")
        n = matrix.shape[0]
        if validate:
            if np.any(matrix < 0.0):
                raise ValueError("weights must be nonnegative")
            if np.any(np.diagonal(matrix) != 0.0):
                raise ValueError("diagonal must be zero (no self-loops)")
            if not np.array_equal(matrix, matrix.T):
                raise ValueError("weight matrix must be symmetric")
        net = cls(n, labels=labels)
        net.weights = np.array(matrix, copy=True) if copy else matrix
        net.degrees = net.weights.sum(axis=1)
        net.total_weight = float(net.degrees.sum()) / 2.0
        return net

    def _check_ids(self, i: int, j: int) -> None:
        n = self.n_nodes
        if not (0 <= i < n) or not (0 <= j < n):
            raise IndexError(f"node ids ({i}, {j}) out of range for {n} nodes")
        if i == j:
            raise ValueError(f"self-loop on node {i} is not allowed")

    def add_weight(self, i: int, j: int, x: float) -> "WeightedNetwork":
        """Increment link (i, j) by x > 0, updating degrees and total."""
        self._check_ids(i, j)
        if not x > 0.0:
            raise ValueError(f"increment must be positive, got {x!r}")
        x = float(x)
        self.weights[i, j] += x
        self.weights[j, i] += x
        self.degrees[i] += x
        self.degrees[j] += x
        self.total_weight += x
        return self

    def normalize_total(self) -> "WeightedNetwork":
        """Return a copy with every weight divided by the current total.

        The result has total weight 1 (exactly, up to 1e-12). Raises
        EmptyNetworkError on an all-zero network.
        """
        if not self.total_weight > 0.0:
            raise EmptyNetworkError("cannot normalize a network with zero total weight")
        t = self.total_weight
        out = WeightedNetwork(self.n_nodes, labels=self.labels)
        out.weights = self.weights / t
        out.degrees = self.degrees / t
        out.total_weight = self.total_weight / t
        return out

    def copy(self) -> "WeightedNetwork":
        out = WeightedNetwork(self.n_nodes, labels=self.labels)
        out.weights = self.weights.copy()
        out.degrees = self.degrees.copy()
        out.total_weight = self.total_weight
        return out

    def __repr__(self) -> str:  # pragma: no cover
        lab = "labeled" if self.labels is not None else "unlabeled"
        return (
            f"WeightedNetwork(n_nodes={self.n_nodes}, total_weight={self.total_weight!r}, {lab})"
        )


def new_network(n_nodes: int, labels: Optional[Sequence[str]] = None) -> WeightedNetwork:
    """Create an all-zero network on n_nodes >= 2 nodes."""
    return WeightedNetwork(n_nodes, labels=labels)


def intersect_nodes(
    a: WeightedNetwork, b: WeightedNetwork
) -> tuple[WeightedNetwork, WeightedNetwork, tuple[str, ...]]:
    """Restrict two labeled networks to their common label set.

    Both outputs use the same node ordering (common labels, sorted), so they
    can be compared entry by entry. Returns (a', b', common_labels). Raises
    NoCommonUsersError when the label sets are disjoint.
    """
    if a.labels is None or b.labels is None:
        raise ValueError("intersect_nodes requires labeled networks")
    common = sorted(set(a.labels) & set(b.labels))
    if not common:
        raise NoCommonUsersError("the two networks share no node labels")
    if len(common) < 2:
        raise NoCommonUsersError(
            f"only {len(common)} common node; need at least 2 to form a network"
        )
    common_t = tuple(common)

    def project(net: WeightedNetwork) -> WeightedNetwork:
        pos = {lab: k for k, lab in enumerate(net.labels)}
        idx = np.array([pos[lab] for lab in common_t], dtype=np.intp)
        sub = net.weights[np.ix_(idx, idx)]
        return WeightedNetwork.from_matrix(sub, labels=common_t, copy=False, validate=False)

    return project(a), project(b), common_t
