"""Scalar summaries of barcodes: persistent entropy and total bar length.

Persistent entropy is the Shannon entropy of the bar-length distribution
normalized by its sum; it is invariant under rescaling all lengths by a
common factor.  Infinite bars must be handled (stripped or capped) before
any of these statistics.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EmptyBarcodeError, InfiniteBarError, SingleBarError
from .persistence import Barcode


def bar_lengths(barcode: Barcode, dim: int) -> np.ndarray:
    """Lengths of the dimension-``dim`` bars; rejects infinite bars."""
    bars = barcode.in_dim(dim)
    if any(not b.finite for b in bars):
        raise InfiniteBarError(f"dimension {dim} still contains an infinite bar")
    return np.array([b.length for b in bars], dtype=float)


def _checked_lengths(lengths, allow_empty=False) -> np.ndarray:
    arr = np.asarray(lengths, dtype=float).ravel()
    if np.any(np.isinf(arr)):
        raise InfiniteBarError("bar lengths must be finite")
    if not np.all(np.isfinite(arr)):
        raise ValueError("bar lengths must not be NaN")
    if arr.size == 0 and not allow_empty:
        raise EmptyBarcodeError("no bars")
    if np.any(arr <= 0.0):
        raise ValueError("bar lengths must be positive")
    return arr


def persistent_entropy(lengths, base: float = math.e) -> float:
    """Shannon entropy of the normalized bar lengths.

    ``base`` selects the logarithm (natural by default; 2 for bits); the
    value lies in [0, log_base(n)] for n bars.
    """
    arr = _checked_lengths(lengths)
    p = arr / arr.sum()
    h = float(-(p * np.log(p)).sum())
    if base != math.e:
        h /= math.log(base)
    return max(h, 0.0)


def normalized_entropy(lengths, base: float = math.e) -> float:
    """Persistent entropy divided by log(n); in [0, 1] for n >= 2 bars.

    Kept for comparison only: the variance of the normalized statistic
    still depends on the number of bars, so it is not the default anywhere.
    """
    arr = _checked_lengths(lengths)
    if arr.size == 1:
        raise SingleBarError("normalization by log(1) = 0 is undefined")
    return persistent_entropy(arr, base=base) / (math.log(arr.size) / math.log(base))


def total_length(lengths) -> float:
    """Sum of the bar lengths (scale-sensitive companion statistic)."""
    arr = _checked_lengths(lengths, allow_empty=True)
    return float(arr.sum())
