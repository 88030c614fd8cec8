"""Planar geometry kernel: Delaunay triangulation, clipped Voronoi cells,
circumcircles, polygon centroids, and alpha-complex filtration values.

Determinants are evaluated with compensated summation (``math.fsum``).
Magnitudes below ``DEGENERACY_FACTOR * scale**2`` (orientation) or
``DEGENERACY_FACTOR * scale**4`` (in-circle, the squared-length analogue)
are treated as degenerate and resolved by a deterministic perturbation
rule ordered by point index, so ties such as cocircular quadruples break
the same way on every run.

The incremental triangulation encloses the input in a virtual triangle
whose three vertices live at infinity in fixed directions; predicates
involving them are evaluated combinatorially (as limits), never with
large floating-point coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    CollinearError,
    DegeneratePolygonError,
    DuplicatePointsError,
    FewerThanThreePointsError,
    NotConvexError,
    PointOutsideBoxError,
)
from .persistence import Filtration
from .validation import check_points

DEGENERACY_FACTOR = 1e-12

# Directions of the three far vertices, counter-clockwise.  The 0.7 rad
# offset keeps axis-aligned input edges from ever being parallel to one.
_FAR_ANGLES = (0.7, 0.7 + 2.0 * math.pi / 3.0, 0.7 + 4.0 * math.pi / 3.0)
_FAR_DIRS = tuple((math.cos(a), math.sin(a)) for a in _FAR_ANGLES)


# --------------------------------------------------------------------------
# basic shapes


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("box must have positive width and height")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def area(self) -> float:
        return self.width * self.height

    def corners(self) -> np.ndarray:
        """Counter-clockwise corners starting at (xmin, ymin)."""
        return np.array(
            [
                [self.xmin, self.ymin],
                [self.xmax, self.ymin],
                [self.xmax, self.ymax],
                [self.xmin, self.ymax],
            ]
        )

    def contains(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return (
            (pts[:, 0] >= self.xmin)
            & (pts[:, 0] <= self.xmax)
            & (pts[:, 1] >= self.ymin)
            & (pts[:, 1] <= self.ymax)
        )


def polygon_area(vertices) -> float:
    """Signed shoelace area (positive for counter-clockwise vertices)."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with counter-clockwise vertices and positive area.

    Construction normalizes orientation, merges consecutive near-duplicate
    vertices, and rejects degenerate or concave input.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise DegeneratePolygonError(f"expected (m, 2) vertices, got {v.shape}")
        scale = max(1e-300, float(np.abs(v).max()))
        keep = []
        for p in v:
            if not keep or not np.allclose(p, keep[-1], rtol=0.0, atol=1e-12 * scale):
                keep.append(p)
        if len(keep) > 1 and np.allclose(keep[0], keep[-1], rtol=0.0, atol=1e-12 * scale):
            keep.pop()
        v = np.array(keep)
        if v.shape[0] < 3:
            raise DegeneratePolygonError("fewer than three distinct vertices")
        area = polygon_area(v)
        if area < 0.0:
            v = v[::-1].copy()
            area = -area
        if area <= DEGENERACY_FACTOR * scale * scale:
            raise DegeneratePolygonError(f"polygon area {area} is degenerate")
        # every consecutive edge pair must turn left (counter-clockwise)
        nxt = np.roll(v, -1, axis=0)
        e = nxt - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        if np.any(cross < -DEGENERACY_FACTOR * scale * scale):
            raise NotConvexError("vertices do not describe a convex polygon")
        object.__setattr__(self, "vertices", v)

    @property
    def area(self) -> float:
        return polygon_area(self.vertices)


def polygon_centroid(polygon) -> np.ndarray:
    """Area centroid of a convex polygon (shoelace formula)."""
    v = polygon.vertices if isinstance(polygon, ConvexPolygon) else np.asarray(polygon, float)
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    w = x * yn - xn * y
    a = 0.5 * float(np.sum(w))
    if a == 0.0:
        raise DegeneratePolygonError("zero-area polygon has no centroid")
    cx = float(np.sum((x + xn) * w)) / (6.0 * a)
    cy = float(np.sum((y + yn) * w)) / (6.0 * a)
    return np.array([cx, cy])


# --------------------------------------------------------------------------
# predicates


def _orient_det(ax, ay, bx, by, cx, cy) -> float:
    # cross(b - a, c - a), compensated
    return math.fsum(((bx - ax) * (cy - ay), -((by - ay) * (cx - ax))))


def _incircle_det(ax, ay, bx, by, cx, cy, dx, dy) -> float:
    # positive iff d lies inside the circumcircle of ccw triangle (a, b, c)
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    ad2 = adx * adx + ady * ady
    bd2 = bdx * bdx + bdy * bdy
    cd2 = cdx * cdx + cdy * cdy
    return math.fsum(
        (
            adx * bdy * cd2,
            -adx * cdy * bd2,
            -ady * bdx * cd2,
            ady * cdx * bd2,
            ad2 * bdx * cdy,
            -ad2 * bdy * cdx,
        )
    )


def circumcircle(a, b, c) -> tuple[np.ndarray, float]:
    """Circumcenter and squared circumradius of a non-degenerate triangle.

    Raises :class:`CollinearError` when the three points are collinear
    under the degeneracy tolerance.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    c = np.asarray(c, float)
    scale = max(1e-300, float(np.abs(np.array([a, b, c])).max()))
    det = _orient_det(a[0], a[1], b[0], b[1], c[0], c[1])
    if abs(det) <= DEGENERACY_FACTOR * scale * scale:
        raise CollinearError("circumcircle of collinear points is undefined")
    # work in the frame of a to limit cancellation
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    d = 2.0 * det
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = np.array([a[0] + ux, a[1] + uy])
    return center, ux * ux + uy * uy


# --------------------------------------------------------------------------
# incremental Delaunay (Bowyer-Watson)


@dataclass(frozen=True)
class Triangulation:
    """Delaunay triangulation: points plus counter-clockwise index triples."""

    points: np.ndarray
    triangles: np.ndarray

    @cached_property
    def edges(self) -> np.ndarray:
        """Unique edges as sorted index pairs, ordered lexicographically."""
        t = self.triangles
        pairs = np.vstack([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        pairs.sort(axis=1)
        return np.unique(pairs, axis=0)

    def neighbor_sets(self) -> list[set[int]]:
        """Adjacent vertex indices for each point."""
        nbrs: list[set[int]] = [set() for _ in range(len(self.points))]
        for i, j in self.edges:
            nbrs[i].add(int(j))
            nbrs[j].add(int(i))
        return nbrs


class _Triangulator:
    """Bowyer-Watson insertion with three symbolic far vertices.

    Far vertices carry indices n, n+1, n+2 and exist only as directions;
    every predicate touching them is a limit rule on real coordinates.
    """

    def __init__(self, pts: np.ndarray):
        self.pts = pts
        self.n = len(pts)
        scale = max(1e-300, float(np.abs(pts).max()))
        self.eps1 = DEGENERACY_FACTOR * scale
        self.eps2 = DEGENERACY_FACTOR * scale * scale
        self.eps4 = DEGENERACY_FACTOR * scale ** 4
        cap = 4 * self.n + 16
        self.verts = np.empty((cap, 3), dtype=np.int64)
        self.cx = np.full(cap, np.nan)
        self.cy = np.full(cap, np.nan)
        self.r2 = np.full(cap, -1.0)
        self.alive = np.zeros(cap, dtype=bool)
        self.has_far = np.zeros(cap, dtype=bool)
        self.m = 0
        self._new_triangle(self.n, self.n + 1, self.n + 2)

    # -- far-vertex helpers

    def _is_far(self, i: int) -> bool:
        return i >= self.n

    def _dir(self, i: int) -> tuple[float, float]:
        return _FAR_DIRS[i - self.n]

    # -- storage

    def _grow(self):
        cap = len(self.verts)
        new = 2 * cap
        for name in ("verts", "cx", "cy", "r2", "alive", "has_far"):
            arr = getattr(self, name)
            fill = np.empty((new,) + arr.shape[1:], dtype=arr.dtype)
            fill[:cap] = arr
            setattr(self, name, fill)

    def _new_triangle(self, a: int, b: int, c: int) -> int:
        if self.m == len(self.verts):
            self._grow()
        t = self.m
        self.m += 1
        self.verts[t] = (a, b, c)
        self.alive[t] = True
        far = self._is_far(a) or self._is_far(b) or self._is_far(c)
        self.has_far[t] = far
        if far:
            self.cx[t] = np.nan
            self.cy[t] = np.nan
            self.r2[t] = -1.0
        else:
            pa, pb, pc = self.pts[a], self.pts[b], self.pts[c]
            center, r2 = circumcircle(pa, pb, pc)
            self.cx[t], self.cy[t] = center
            self.r2[t] = r2
        return t

    # -- predicates with far cases

    def _orient(self, i: int, j: int, k: int) -> int:
        """Sign of the (limit) orientation of the index triple."""
        tri = [i, j, k]
        far = [t for t in tri if self._is_far(t)]
        if not far:
            (ax, ay), (bx, by), (cx, cy) = self.pts[i], self.pts[j], self.pts[k]
            det = _orient_det(ax, ay, bx, by, cx, cy)
            if abs(det) <= self.eps2:
                return 0
            return 1 if det > 0 else -1
        if len(far) == 1:
            # cyclic rotations preserve the sign; put the far vertex last
            while not self._is_far(tri[2]):
                tri = tri[1:] + tri[:1]
            a, b, c = tri
            # real a, real b, far c: dominant term is cross(b - a, dir_c)
            ux, uy = self._dir(c)
            pa, pb = self.pts[a], self.pts[b]
            det = (pb[0] - pa[0]) * uy - (pb[1] - pa[1]) * ux
            if det > self.eps1:
                return 1
            if det < -self.eps1:
                return -1
            return 0
        if len(far) == 2:
            while self._is_far(tri[0]):
                tri = tri[1:] + tri[:1]
            _, b, c = tri
            # real, far, far: constant sign of cross(dir_b, dir_c)
            ub, uc = self._dir(b), self._dir(c)
            det = ub[0] * uc[1] - ub[1] * uc[0]
            return 1 if det > 0 else -1
        # three far vertices: parity of the permutation of (0, 1, 2)
        perm = (i - self.n, j - self.n, k - self.n)
        even = perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
        return 1 if even else -1

    def _incircle_real(self, t: int, d: int) -> bool:
        """Exact-path in-circle test for an all-real triangle."""
        a, b, c = self.verts[t]
        (ax, ay), (bx, by), (cx, cy) = self.pts[a], self.pts[b], self.pts[c]
        dx, dy = self.pts[d]
        det = _incircle_det(ax, ay, bx, by, cx, cy, dx, dy)
        if abs(det) > self.eps4:
            return det > 0
        # degenerate: perturb each participant by an amount that shrinks
        # with its index; the first non-vanishing lifted cofactor decides
        cof = {
            a: _orient_det(dx, dy, bx, by, cx, cy),
            b: -_orient_det(dx, dy, ax, ay, cx, cy),
            c: _orient_det(dx, dy, ax, ay, bx, by),
            d: -_orient_det(ax, ay, bx, by, cx, cy),
        }
        for idx in sorted(cof):
            v = cof[idx]
            if abs(v) > self.eps2:
                return v > 0
        return False

    def _in_circumcircle(self, t: int, d: int) -> bool:
        """Does real point d violate triangle t (lie inside its circumdisk)?"""
        a, b, c = self.verts[t]
        far = [v for v in (a, b, c) if self._is_far(v)]
        if not far:
            return self._incircle_real(t, d)
        if len(far) == 3:
            return True
        dx, dy = self.pts[d]
        if len(far) == 1:
            # circle through two real points and one point at infinity is a
            # half-plane bounded by the real edge, on the far vertex's side;
            # points exactly on the line count as inside only between them
            tri = [int(a), int(b), int(c)]
            while not self._is_far(tri[2]):
                tri = tri[1:] + tri[:1]
            p, q, f = tri
            side_far = self._orient(p, q, f)
            (px, py), (qx, qy) = self.pts[p], self.pts[q]
            det = _orient_det(px, py, qx, qy, dx, dy)
            if abs(det) <= self.eps2:
                dot = (dx - px) * (qx - px) + (dy - py) * (qy - py)
                return 0.0 < dot < (qx - px) ** 2 + (qy - py) ** 2
            return (det > 0) == (side_far > 0)
        # one real vertex p and two far: the limit disk is the half-plane
        # through p whose inward normal is the sum of the two directions
        tri = [int(a), int(b), int(c)]
        while self._is_far(tri[0]):
            tri = [tri[1], tri[2], tri[0]]
        p, f1, f2 = tri
        u1, u2 = self._dir(f1), self._dir(f2)
        wx, wy = u1[0] + u2[0], u1[1] + u2[1]
        px, py = self.pts[p]
        return (dx - px) * wx + (dy - py) * wy > 0.0

    def _contains_point(self, t: int, d: int) -> bool:
        a, b, c = (int(v) for v in self.verts[t])
        return (
            self._orient(a, b, d) >= 0
            and self._orient(b, c, d) >= 0
            and self._orient(c, a, d) >= 0
        )

    # -- insertion

    def insert(self, d: int):
        dx, dy = self.pts[d]
        m = self.m
        # vectorized scan of cached circumcircles for all-real triangles
        margin = self.r2[:m] - ((self.cx[:m] - dx) ** 2 + (self.cy[:m] - dy) ** 2)
        band = 1e-10 * np.maximum(self.r2[:m], 1e-300)
        real_alive = self.alive[:m] & ~self.has_far[:m]
        sure = real_alive & (margin > band)
        near = real_alive & (np.abs(margin) <= band)
        bad = set(np.nonzero(sure)[0].tolist())
        for t in np.nonzero(near)[0]:
            if self._incircle_real(int(t), d):
                bad.add(int(t))
        for t in np.nonzero(self.alive[:m] & self.has_far[:m])[0]:
            if self._in_circumcircle(int(t), d):
                bad.add(int(t))
        # keep only the cavity component containing d (guards against
        # tie-break artifacts splitting the violated region)
        seed = None
        for t in bad:
            if self._contains_point(t, d):
                seed = t
                break
        if seed is not None and len(bad) > 1:
            edge_map: dict[tuple[int, int], list[int]] = {}
            for t in bad:
                a, b, c = (int(v) for v in self.verts[t])
                for e in ((a, b), (b, c), (c, a)):
                    edge_map.setdefault(tuple(sorted(e)), []).append(t)
            component = {seed}
            queue = [seed]
            while queue:
                cur = queue.pop()
                a, b, c = (int(v) for v in self.verts[cur])
                for e in ((a, b), (b, c), (c, a)):
                    for other in edge_map[tuple(sorted(e))]:
                        if other not in component:
                            component.add(other)
                            queue.append(other)
            bad = component
        # cavity boundary: directed edges seen exactly once across bad set
        boundary: dict[tuple[int, int], tuple[int, int]] = {}
        for t in bad:
            a, b, c = (int(v) for v in self.verts[t])
            for u, v in ((a, b), (b, c), (c, a)):
                key = (min(u, v), max(u, v))
                if key in boundary:
                    del boundary[key]
                else:
                    boundary[key] = (u, v)
        for t in bad:
            self.alive[t] = False
        for u, v in boundary.values():
            self._new_triangle(u, v, d)

    def finish(self) -> np.ndarray:
        out = []
        for t in np.nonzero(self.alive[: self.m])[0]:
            if self.has_far[t]:
                continue
            a, b, c = (int(v) for v in self.verts[t])
            (ax, ay), (bx, by), (cx, cy) = self.pts[a], self.pts[b], self.pts[c]
            if _orient_det(ax, ay, bx, by, cx, cy) < 0:
                a, b, c = a, c, b
            # canonical rotation: smallest index first, ccw order kept
            if b < a and b < c:
                a, b, c = b, c, a
            elif c < a and c < b:
                a, b, c = c, a, b
            out.append((a, b, c))
        out.sort()
        return np.array(out, dtype=np.int64).reshape(-1, 3)


def delaunay(points) -> Triangulation:
    """Delaunay triangulation of a planar point set.

    Incremental Bowyer-Watson insertion in input order; cocircular ties
    are resolved by the index-ordered perturbation rule, so the result is
    deterministic.  Requires at least three points, no exact duplicates,
    and at least one non-collinear triple.
    """
    pts = check_points(points, min_points=3)
    scale = max(1e-300, float(np.abs(pts).max()))
    eps2 = DEGENERACY_FACTOR * scale * scale
    anchor = None
    for j in range(1, len(pts)):
        if pts[j][0] != pts[0][0] or pts[j][1] != pts[0][1]:
            anchor = j
            break
    ok = False
    for k in range(len(pts)):
        if k in (0, anchor):
            continue
        det = _orient_det(pts[0][0], pts[0][1], pts[anchor][0], pts[anchor][1], pts[k][0], pts[k][1])
        if abs(det) > eps2:
            ok = True
            break
    if not ok:
        raise CollinearError("all points are collinear")
    builder = _Triangulator(pts)
    for i in range(len(pts)):
        builder.insert(i)
    return Triangulation(points=pts, triangles=builder.finish())


# --------------------------------------------------------------------------
# Voronoi cells clipped to a box


def _clip_halfplane(vertices: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Keep the part of a convex polygon closer to a than to b."""
    mid = 0.5 * (a + b)
    normal = b - a
    f = (mid - vertices) @ normal
    out = []
    k = len(vertices)
    for i in range(k):
        j = (i + 1) % k
        fi, fj = f[i], f[j]
        if fi >= 0.0:
            out.append(vertices[i])
        if (fi > 0.0 and fj < 0.0) or (fi < 0.0 and fj > 0.0):
            t = fi / (fi - fj)
            out.append(vertices[i] + t * (vertices[j] - vertices[i]))
    return np.array(out)


def voronoi_cells(points, box: Box) -> list[ConvexPolygon]:
    """Voronoi region of each point clipped to the box, in input order.

    Each clipped cell is the box intersected with the bisector half-planes
    toward the point's Delaunay neighbors (sufficient: the full Voronoi
    region is already the intersection over neighbors).
    """
    pts = check_points(points, min_points=1)
    if not bool(box.contains(pts).all()):
        raise PointOutsideBoxError("every point must lie inside the box")
    n = len(pts)
    if n == 1:
        return [ConvexPolygon(box.corners())]
    if n == 2:
        cells = []
        for i, j in ((0, 1), (1, 0)):
            clipped = _clip_halfplane(box.corners(), pts[i], pts[j])
            cells.append(ConvexPolygon(clipped))
        return cells
    tri = delaunay(pts)
    neighbors = tri.neighbor_sets()
    cells = []
    for i in range(n):
        poly = box.corners()
        for j in sorted(neighbors[i]):
            poly = _clip_halfplane(poly, pts[i], pts[j])
            if len(poly) < 3:
                raise DegeneratePolygonError(f"cell of point {i} clipped away")
        cells.append(ConvexPolygon(poly))
    return cells


# --------------------------------------------------------------------------
# alpha-complex filtration values


def alpha_complex(points, convention: str = "squared") -> Filtration:
    """Filtration over the Delaunay triangulation of the point set.

    Values follow the squared-radius convention by default: vertices enter
    at 0, a triangle at its squared circumradius, and an edge at its
    squared half-length if its diametral disk is empty of the opposite
    vertices of adjacent triangles, otherwise at the smallest adjacent
    triangle value.  ``convention="radius"`` takes square roots of all
    values (a monotone relabeling of the same filtration).
    """
    if convention not in ("squared", "radius"):
        raise ValueError(f"unknown alpha value convention: {convention!r}")
    tri = delaunay(points)
    pts = tri.points
    tri_value: dict[tuple[int, int, int], float] = {}
    edge_adjacent: dict[tuple[int, int], list[tuple[float, int]]] = {}
    for a, b, c in tri.triangles:
        a, b, c = int(a), int(b), int(c)
        _, r2 = circumcircle(pts[a], pts[b], pts[c])
        key = tuple(sorted((a, b, c)))
        tri_value[key] = r2
        for u, v in ((a, b), (b, c), (c, a)):
            e = (min(u, v), max(u, v))
            w = a + b + c - u - v
            edge_adjacent.setdefault(e, []).append((r2, w))
    simplices: list[tuple[tuple[int, ...], float]] = []
    for i in range(len(pts)):
        simplices.append(((i,), 0.0))
    for (u, v), adj in edge_adjacent.items():
        mid = 0.5 * (pts[u] + pts[v])
        half_sq = 0.25 * float(np.sum((pts[u] - pts[v]) ** 2))
        gabriel = all(float(np.sum((pts[w] - mid) ** 2)) > half_sq for _, w in adj)
        value = half_sq if gabriel else min(r2 for r2, _ in adj)
        simplices.append(((u, v), value))
    for key, r2 in tri_value.items():
        simplices.append((key, r2))
    if convention == "radius":
        simplices = [(s, math.sqrt(v)) for s, v in simplices]
    return Filtration.from_simplices(simplices)
