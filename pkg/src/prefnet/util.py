"""Seed derivation and worker-count helpers."""

from __future__ import annotations

import os

import numpy as np

ENV_THREADS = "PREFNET_THREADS"


def derive_seed(master: int, *key: int) -> int:
    """Derive an independent 64-bit seed from a master seed and an int key path."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def derived_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the stream identified by (seed, *key)."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(ss)


def worker_count(n_tasks: int) -> int:
    """Worker cap for parallel sections: PREFNET_THREADS, else cpu count."""
    raw = os.environ.get(ENV_THREADS, "").strip()
    if raw:
        try:
            cap = int(raw)
        except ValueError as exc:
            raise ValueError(f"{ENV_THREADS} must be an integer, got {raw!r}") from exc
        if cap < 1:
            raise ValueError(f"{ENV_THREADS} must be >= 1, got {cap}")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_tasks))
