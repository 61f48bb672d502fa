"""Hot inner loops: evolution event sampling and walk imprinting.

Each kernel exists twice: a loop version compiled with numba (the default)
and a pure-numpy version. Set PREFNET_PURE_NUMPY=1 to force the numpy path;
the same fallback engages automatically when numba is not importable. Both
paths consume an identical pre-drawn uniform stream and are written so their
floating-point operations happen in the same order, which makes their
outputs bit-identical (asserted by the test suite and exercised by
benchmarks/bench_kernels.py).

All categorical draws use a single uniform u and an inverse-CDF scan:
pick the first candidate j with u * total < cumsum(j). If rounding pushes
u * total past the final cumulative sum (a ~1e-16 probability event), the
draw clamps to the last candidate with positive mass.

Kernel status codes: 0 ok, 1 stuck walker, 2 degenerate sender row.
"""

from __future__ import annotations

import os
from typing import Callable, Optional

import numpy as np

ENV_PURE_NUMPY = "PREFNET_PURE_NUMPY"

STATUS_OK = 0
STATUS_STUCK = 1
STATUS_DEGENERATE = 2


def pure_numpy_requested() -> bool:
    return os.environ.get(ENV_PURE_NUMPY, "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# Scalar sampling helpers (reference semantics, numpy path)
# ---------------------------------------------------------------------------

def _uniform_excluding(n: int, skip: int, u: float) -> int:
    """Uniform draw over {0..n-1} \\ {skip} from one uniform u in [0, 1)."""
    idx = int(u * (n - 1))
    if idx >= n - 1:
        idx = n - 2
    return idx if idx < skip else idx + 1


def sample_recipient_global(degrees: np.ndarray, sender: int, u: float) -> int:
    """Recipient j != sender with probability degrees[j] / sum of the rest.

    Falls back to a uniform draw over the non-senders when every candidate
    degree is zero.
    """
    n = degrees.shape[0]
    d = degrees.copy()
    d[sender] = 0.0
    c = np.cumsum(d)
    total = c[-1]
    if total <= 0.0:
        return _uniform_excluding(n, sender, u)
    j = int(np.searchsorted(c, u * total, side="right"))
    if j >= n:
        j = int(np.flatnonzero(d > 0.0)[-1])
    return j


def sample_recipient_local(weights: np.ndarray, degrees: np.ndarray, sender: int, u: float) -> int:
    """Recipient j with probability weights[sender, j] / degrees[sender].

    Returns -1 when the sender row has zero degree (degenerate).
    """
    n = degrees.shape[0]
    k = degrees[sender]
    if k <= 0.0:
        return -1
    row = weights[sender]
    c = np.cumsum(row)
    j = int(np.searchsorted(c, u * k, side="right"))
    if j >= n:
        j = int(np.flatnonzero(row > 0.0)[-1])
    return j


def sample_jump(
    weights: np.ndarray, degrees: np.ndarray, current: int, eta: float, u: float
) -> int:
    """One noisy biased-walk jump from `current`; -1 means stuck.

    Target distribution over j != current is
    (weights[current, j] / k) * (1 - eta) + eta / (N - 1); when the current
    node has zero degree the base term vanishes and the draw is uniform over
    the other nodes (impossible for eta == 0, which reports stuck).
    """
    n = degrees.shape[0]
    k = degrees[current]
    if k <= 0.0:
        if eta <= 0.0:
            return -1
        return _uniform_excluding(n, current, u)
    q = (weights[current] / k) * (1.0 - eta) + eta / (n - 1.0)
    q[current] = 0.0
    c = np.cumsum(q)
    j = int(np.searchsorted(c, u, side="right"))
    if j >= n:
        j = int(np.flatnonzero(q > 0.0)[-1])
    return j


# ---------------------------------------------------------------------------
# Pure-numpy kernels
# ---------------------------------------------------------------------------

def run_global_events_numpy(
    weights: np.ndarray, degrees: np.ndarray, x: float, uniforms: np.ndarray
) -> int:
    """Run len(uniforms)//2 degree-preferential events, mutating in place."""
    n = degrees.shape[0]
    n_events = uniforms.shape[0] // 2
    for e in range(n_events):
        s = int(uniforms[2 * e] * n)
        if s >= n:
            s = n - 1
        r = sample_recipient_global(degrees, s, uniforms[2 * e + 1])
        weights[s, r] += x
        weights[r, s] += x
        degrees[s] += x
        degrees[r] += x
    return STATUS_OK


def run_local_events_numpy(
    weights: np.ndarray, degrees: np.ndarray, x: float, uniforms: np.ndarray
) -> int:
    """Run len(uniforms)//2 link-weight-preferential events in place."""
    n = degrees.shape[0]
    n_events = uniforms.shape[0] // 2
    for e in range(n_events):
        s = int(uniforms[2 * e] * n)
        if s >= n:
            s = n - 1
        r = sample_recipient_local(weights, degrees, s, uniforms[2 * e + 1])
        if r < 0:
            return STATUS_DEGENERATE
        weights[s, r] += x
        weights[r, s] += x
        degrees[s] += x
        degrees[r] += x
    return STATUS_OK


def walk_imprint_numpy(
    weights: np.ndarray,
    degrees: np.ndarray,
    eta: float,
    initiators: np.ndarray,
    chain_length: int,
    budget: int,
    uniforms: np.ndarray,
    counts: np.ndarray,
) -> int:
    """Accumulate `budget` noisy-walk steps into the symmetric counts table.

    Chains of at most chain_length steps each start at a uniformly drawn
    initiator; the underlying weights/degrees are read-only.
    """
    n = degrees.shape[0]
    n_init = initiators.shape[0]
    ptr = 0
    steps_left = int(budget)
    while steps_left > 0:
        idx = int(uniforms[ptr] * n_init)
        ptr += 1
        if idx >= n_init:
            idx = n_init - 1
        cur = int(initiators[idx])
        seg = chain_length if steps_left > chain_length else steps_left
        for _ in range(seg):
            nxt = sample_jump(weights, degrees, cur, eta, uniforms[ptr])
            ptr += 1
            if nxt < 0:
                return STATUS_STUCK
            counts[cur, nxt] += 1.0
            counts[nxt, cur] += 1.0
            cur = nxt
        steps_left -= seg
    return STATUS_OK


# ---------------------------------------------------------------------------
# Loop twins for numba compilation
# ---------------------------------------------------------------------------
# These mirror the numpy versions operation for operation; keep both in sync.

def _run_global_events_loop(weights, degrees, x, uniforms):
    n = degrees.shape[0]
    n_events = uniforms.shape[0] // 2
    for e in range(n_events):
        u1 = uniforms[2 * e]
        u2 = uniforms[2 * e + 1]
        s = int(u1 * n)
        if s >= n:
            s = n - 1
        total = 0.0
        for j in range(n):
            if j != s:
                total += degrees[j]
        if total <= 0.0:
            idx = int(u2 * (n - 1))
            if idx >= n - 1:
                idx = n - 2
            r = idx if idx < s else idx + 1
        else:
            target = u2 * total
            acc = 0.0
            r = -1
            last_pos = -1
            for j in range(n):
                if j == s:
                    continue
                dj = degrees[j]
                acc += dj
                if dj > 0.0:
                    last_pos = j
                if target < acc:
                    r = j
                    break
            if r < 0:
                r = last_pos
        weights[s, r] += x
        weights[r, s] += x
        degrees[s] += x
        degrees[r] += x
    return STATUS_OK


def _run_local_events_loop(weights, degrees, x, uniforms):
    n = degrees.shape[0]
    n_events = uniforms.shape[0] // 2
    for e in range(n_events):
        u1 = uniforms[2 * e]
        u2 = uniforms[2 * e + 1]
        s = int(u1 * n)
        if s >= n:
            s = n - 1
        k = degrees[s]
        if k <= 0.0:
            return STATUS_DEGENERATE
        target = u2 * k
        acc = 0.0
        r = -1
        last_pos = -1
        for j in range(n):
            if j == s:
                continue
            w = weights[s, j]
            acc += w
            if w > 0.0:
                last_pos = j
            if target < acc:
                r = j
                break
        if r < 0:
            r = last_pos
        weights[s, r] += x
        weights[r, s] += x
        degrees[s] += x
        degrees[r] += x
    return STATUS_OK


def _walk_imprint_loop(weights, degrees, eta, initiators, chain_length, budget, uniforms, counts):
    n = degrees.shape[0]
    n_init = initiators.shape[0]
    base = eta / (n - 1.0)
    keep = 1.0 - eta
    ptr = 0
    steps_left = budget
    while steps_left > 0:
        idx = int(uniforms[ptr] * n_init)
        ptr += 1
        if idx >= n_init:
            idx = n_init - 1
        cur = initiators[idx]
        seg = chain_length if steps_left > chain_length else steps_left
        for _ in range(seg):
            u = uniforms[ptr]
            ptr += 1
            k = degrees[cur]
            if k <= 0.0:
                if eta <= 0.0:
                    return STATUS_STUCK
                j = int(u * (n - 1))
                if j >= n - 1:
                    j = n - 2
                nxt = j if j < cur else j + 1
            else:
                acc = 0.0
                nxt = -1
                last_pos = -1
                for j in range(n):
                    if j == cur:
                        continue
                    q = (weights[cur, j] / k) * keep + base
                    acc += q
                    if q > 0.0:
                        last_pos = j
                    if u < acc:
                        nxt = j
                        break
                if nxt < 0:
                    nxt = last_pos
            counts[cur, nxt] += 1.0
            counts[nxt, cur] += 1.0
            cur = nxt
        steps_left -= seg
    return STATUS_OK


_numba_cache: Optional[dict] = None


def numba_kernels() -> Optional[dict[str, Callable]]:
    """Compile (once) and return the numba kernels, or None if unavailable."""
    global _numba_cache
    if _numba_cache is None:
        try:
            from numba import njit
        except ImportError:
            return None
        jit = njit(cache=True, nogil=True)
        _numba_cache = {
            "global_events": jit(_run_global_events_loop),
            "local_events": jit(_run_local_events_loop),
            "walk_imprint": jit(_walk_imprint_loop),
        }
    return _numba_cache


def _select() -> tuple[bool, Callable, Callable, Callable]:
    if not pure_numpy_requested():
        compiled = numba_kernels()
        if compiled is not None:
            return (
                True,
                compiled["global_events"],
                compiled["local_events"],
                compiled["walk_imprint"],
            )
    return False, run_global_events_numpy, run_local_events_numpy, walk_imprint_numpy


USE_NUMBA, run_global_events, run_local_events, walk_imprint = _select()
