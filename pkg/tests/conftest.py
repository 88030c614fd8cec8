"""Shared brute-force oracles used across test modules."""

import numpy as np
import pytest


def hull_boundary_count(pts: np.ndarray) -> int:
    """Number of points on the convex hull boundary (vertices and points
    lying on hull edges), by exhaustive supporting-line search."""
    n = len(pts)
    count = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = pts[j] - pts[i]
            d = pts - pts[i]
            cross = v[0] * d[:, 1] - v[1] * d[:, 0]
            if (cross >= 0.0).all() or (cross <= 0.0).all():
                count += 1
                break
    return count


def circumcircle_margins(pts: np.ndarray, triangles: np.ndarray) -> float:
    """Worst relative signed clearance of non-vertex points from each
    triangle's circumcircle (negative means a point intrudes)."""
    from tessentropy.geometry import circumcircle

    worst = np.inf
    for a, b, c in triangles:
        center, r2 = circumcircle(pts[a], pts[b], pts[c])
        d2 = ((pts - center) ** 2).sum(axis=1)
        d2[[a, b, c]] = np.inf
        worst = min(worst, (d2.min() - r2) / r2)
    return float(worst)


def random_point_set(seed: int, n: int, low=0.0, high=1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(low, high, (n, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
