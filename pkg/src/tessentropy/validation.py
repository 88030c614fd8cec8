"""Input validation helpers shared by the library and the estimator API."""

from __future__ import annotations

import numpy as np

from .errors import DuplicatePointsError, FewerThanThreePointsError


def as_points(points) -> np.ndarray:
    """Coerce to a float64 array of shape (n, 2) with finite entries."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {pts.shape}")
    if not np.isfinite(pts).all():
        raise ValueError("point coordinates must be finite")
    return pts


def check_points(points, min_points: int = 3) -> np.ndarray:
    """Validate a point set for triangulation-style operations.

    Rejects non-finite coordinates, fewer than ``min_points`` points and
    exact coordinate duplicates (duplicates are never merged silently).
    """
    pts = as_points(points)
    if pts.shape[0] < min_points:
        raise FewerThanThreePointsError(
            f"need at least {min_points} points, got {pts.shape[0]}"
        )
    seen = set()
    for i, (x, y) in enumerate(pts):
        key = (float(x), float(y))
        if key in seen:
            raise DuplicatePointsError(f"duplicate point {key} at index {i}")
        seen.add(key)
    return pts


def check_point_set_list(point_sets) -> list[np.ndarray]:
    """Validate a sequence of point sets (the estimator transform input)."""
    return [check_points(ps) for ps in point_sets]
