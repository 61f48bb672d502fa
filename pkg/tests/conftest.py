"""Shared fixtures and independent brute-force oracles.

The oracle implementations here deliberately avoid the library's vectorized
code paths: plain Python double loops and fixed-step integration, so they
stay independent of what they check.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from prefnet.network import WeightedNetwork


def brute_jaccard(a: np.ndarray, b: np.ndarray) -> float:
    """Double-loop weighted overlap with explicit Heaviside masks."""
    num = 0.0
    den = 0.0
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            s = a[i][j] + b[i][j]
            den += s
            if a[i][j] > 0.0 and b[i][j] > 0.0:
                num += s
    return num / den


def brute_mean_similarity(a: np.ndarray, b: np.ndarray) -> tuple[float, int]:
    """Double-loop cosine of rows, averaged over rows nonzero in both."""
    n = a.shape[0]
    sims = []
    for i in range(n):
        sa = sum(a[i][j] * a[i][j] for j in range(n))
        sb = sum(b[i][j] * b[i][j] for j in range(n))
        if sa > 0.0 and sb > 0.0:
            dot = sum(a[i][j] * b[i][j] for j in range(n))
            sims.append(dot / (math.sqrt(sa) * math.sqrt(sb)))
    if not sims:
        return float("nan"), 0
    return sum(sims) / len(sims), len(sims)


def brute_ks(a, b) -> float:
    """ECDF sup-difference scanned at every sample point of both samples."""
    best = 0.0
    for x in list(a) + list(b):
        fa = sum(1 for v in a if v <= x) / len(a)
        fb = sum(1 for v in b if v <= x) / len(b)
        best = max(best, abs(fa - fb))
    return best


def euler_meanfield_degree(k0: float, t: float, m: float, n: float, m0: float,
                           h: float = 1e-3) -> float:
    """Fixed-step Euler integration of dk/dt = m/N + m k / (2 m t + m0)."""
    steps = int(round(t / h))
    k = k0
    s = 0.0
    for _ in range(steps):
        k += h * (m / n + m * k / (2.0 * m * s + m0))
        s += h
    return k


def random_symmetric_net(rng: np.random.Generator, n: int, density: float = 0.5,
                         labels=None, integer: bool = True) -> WeightedNetwork:
    """Random sparse symmetric nonnegative weight table as a network."""
    mat = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                w = float(rng.integers(1, 10)) if integer else float(rng.random())
                mat[i, j] = mat[j, i] = w
    return WeightedNetwork.from_matrix(mat, labels=labels)


def write_synth_csv(path, n_hashtags: int, rng: np.random.Generator,
                    n_users: int = 30, events_per_half: int = 20,
                    shared_users: bool = True) -> int:
    """Synthetic retweet CSV spanning timestamps 0..10000 with both temporal
    halves populated for every hashtag. Returns the number of data rows.

    With shared_users the hashtags draw from one common user pool (so pairs
    intersect); otherwise every hashtag gets a disjoint pool.
    """
    lines = ["hashtag,user_a,user_b,timestamp"]
    n_rows = 0
    for h in range(n_hashtags):
        offset = 0 if shared_users else h * n_users
        pool = [f"u{offset + k:04d}" for k in range(n_users)]
        for half_base in (0, 5000):
            for e in range(events_per_half):
                i, j = rng.choice(n_users, size=2, replace=False)
                if h == 0 and half_base == 0 and e == 0:
                    ts = 0
                elif h == 0 and half_base == 5000 and e == 0:
                    ts = 10000
                else:
                    ts = int(half_base + rng.integers(0, 4999))
                lines.append(f"tag{h:02d},{pool[i]},{pool[j]},{ts}")
                n_rows += 1
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return n_rows


@pytest.fixture
def rng():
    return np.random.default_rng(20210429)
