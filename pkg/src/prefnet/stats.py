"""Distribution summaries: Sturges histograms, error bands, two-sample KS.

The KS statistic is computed with integer cross-multiplied ECDF counts and a
single final division, so rationally exact values (e.g. 1/3) come out as
their nearest float rather than accumulating per-step rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class HistogramResult:
    """Density histogram over [0, 1] with optional per-bin error envelopes."""

    bin_edges: tuple[float, ...]
    densities: tuple[float, ...]
    n_samples: int
    band_low: Optional[tuple[float, ...]] = None
    band_high: Optional[tuple[float, ...]] = None


@dataclass(frozen=True)
class KsResult:
    statistic: float
    n_a: int
    n_b: int


def sturges_bins(n: int) -> int:
    """Sturges bin count ceil(log2 n) + 1, computed exactly on integers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (int(n) - 1).bit_length() + 1


def _densities(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    counts, _ = np.histogram(values, bins=edges)
    widths = np.diff(edges)
    return counts / (values.shape[0] * widths)


def histogram(
    values: Sequence[float],
    bands_from: Optional[Sequence[Sequence[float]]] = None,
) -> HistogramResult:
    """Density histogram of values in [0, 1] with a Sturges bin count.

    When `bands_from` supplies repeated ensembles, the per-bin band is the
    ensemble mean density plus/minus its standard error (zero width for a
    single ensemble).
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("values must be nonempty")
    if np.any(arr < -1e-9) or np.any(arr > 1.0 + 1e-9):
        raise ValueError("values must lie in [0, 1]")
    arr = np.clip(arr, 0.0, 1.0)
    k = sturges_bins(arr.size)
    edges = np.linspace(0.0, 1.0, k + 1)
    dens = _densities(arr, edges)

    band_low = band_high = None
    if bands_from is not None:
        ensembles = [np.clip(np.asarray(e, dtype=np.float64), 0.0, 1.0) for e in bands_from]
        if not ensembles or any(e.size == 0 for e in ensembles):
            raise ValueError("bands_from must contain nonempty ensembles")
        stack = np.vstack([_densities(e, edges) for e in ensembles])
        mean = stack.mean(axis=0)
        if stack.shape[0] > 1:
            sem = stack.std(axis=0, ddof=1) / np.sqrt(stack.shape[0])
        else:
            sem = np.zeros_like(mean)
        band_low = tuple(float(v) for v in np.maximum(mean - sem, 0.0))
        band_high = tuple(float(v) for v in (mean + sem))

    return HistogramResult(
        bin_edges=tuple(float(e) for e in edges),
        densities=tuple(float(d) for d in dens),
        n_samples=int(arr.size),
        band_low=band_low,
        band_high=band_high,
    )


def ks_statistic(a: Sequence[float], b: Sequence[float]) -> KsResult:
    """Two-sample Kolmogorov-Smirnov statistic: the largest absolute ECDF
    difference, evaluated at every sample point of both samples (ECDFs are
    right-continuous with jumps of multiplicity/n)."""
    xa = np.sort(np.asarray(a, dtype=np.float64))
    xb = np.sort(np.asarray(b, dtype=np.float64))
    if xa.size == 0 or xb.size == 0:
        raise ValueError("both samples must be nonempty")
    pts = np.concatenate([xa, xb])
    count_a = np.searchsorted(xa, pts, side="right").astype(np.int64)
    count_b = np.searchsorted(xb, pts, side="right").astype(np.int64)
    num = np.abs(count_a * xb.size - count_b * xa.size).max()
    return KsResult(
        statistic=float(int(num) / (xa.size * xb.size)),
        n_a=int(xa.size),
        n_b=int(xb.size),
    )
