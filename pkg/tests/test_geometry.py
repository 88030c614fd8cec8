import math

import numpy as np
import pytest

from tessentropy.errors import (
    CollinearError,
    DegeneratePolygonError,
    DuplicatePointsError,
    FewerThanThreePointsError,
    NotConvexError,
    PointOutsideBoxError,
)
from tessentropy.geometry import (
    Box,
    ConvexPolygon,
    alpha_complex,
    circumcircle,
    delaunay,
    polygon_area,
    polygon_centroid,
    voronoi_cells,
)

from conftest import circumcircle_margins, hull_boundary_count, random_point_set


# --------------------------------------------------------------------------
# delaunay


class TestDelaunay:
    def test_three_points_single_triangle(self):
        tri = delaunay([(0, 0), (1, 0), (0, 1)])
        assert tri.triangles.tolist() == [[0, 1, 2]]

    def test_unit_square_two_triangles_deterministic(self):
        pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
        tri = delaunay(pts)
        assert len(tri.triangles) == 2
        # cocircular ties: both diagonals are Delaunay-legal, the produced
        # one must still pass the empty-circumcircle check
        assert circumcircle_margins(tri.points, tri.triangles) >= -1e-10
        for _ in range(5):
            again = delaunay(pts)
            assert np.array_equal(again.triangles, tri.triangles)

    def test_count_identity_20_random_points(self):
        pts = random_point_set(7, 20)
        tri = delaunay(pts)
        h = hull_boundary_count(pts)
        assert len(tri.triangles) == 2 * 20 - h - 2
        assert len(tri.edges) == 3 * 20 - h - 3

    def test_errors(self):
        with pytest.raises(FewerThanThreePointsError):
            delaunay([(0, 0), (1, 1)])
        with pytest.raises(CollinearError):
            delaunay([(0, 0), (1, 0), (2, 0), (3, 0)])
        with pytest.raises(DuplicatePointsError):
            delaunay([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_every_input_point_is_a_vertex(self):
        pts = random_point_set(3, 40)
        tri = delaunay(pts)
        assert set(np.unique(tri.triangles)) == set(range(40))

    def test_empty_circumcircle_property_100_seeds(self):
        for seed in range(100):
            rng = np.random.default_rng(seed)
            n = int(rng.integers(3, 51))
            pts = rng.uniform(0.0, 1.0, (n, 2))
            tri = delaunay(pts)
            assert circumcircle_margins(tri.points, tri.triangles) >= -1e-10, f"seed {seed}"

    def test_count_identity_random_sizes(self):
        for seed in range(40):
            rng = np.random.default_rng(1000 + seed)
            n = int(rng.integers(3, 41))
            pts = rng.uniform(0.0, 1.0, (n, 2))
            tri = delaunay(pts)
            h = hull_boundary_count(pts)
            assert len(tri.triangles) == 2 * n - h - 2, f"seed {seed}"
            assert len(tri.edges) == 3 * n - h - 3, f"seed {seed}"

    def test_grid_with_exact_ties(self):
        xs, ys = np.meshgrid(np.arange(6.0), np.arange(5.0))
        pts = np.c_[xs.ravel(), ys.ravel()]
        tri = delaunay(pts)
        n, h = 30, 18
        assert len(tri.triangles) == 2 * n - h - 2
        assert circumcircle_margins(tri.points, tri.triangles) >= -1e-10

    def test_triangles_are_counter_clockwise(self):
        pts = random_point_set(11, 25)
        tri = delaunay(pts)
        for a, b, c in tri.triangles:
            u, v = pts[b] - pts[a], pts[c] - pts[a]
            assert u[0] * v[1] - u[1] * v[0] > 0


# --------------------------------------------------------------------------
# circumcircle


class TestCircumcircle:
    def test_right_triangle(self):
        center, r2 = circumcircle((0, 0), (1, 0), (0, 1))
        assert np.allclose(center, [0.5, 0.5])
        assert r2 == pytest.approx(0.5, abs=1e-15)

    def test_equilateral_side_one(self):
        center, r2 = circumcircle((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
        assert r2 == pytest.approx(1.0 / 3.0, rel=1e-12)
        assert np.allclose(center, [0.5, 0.5 / math.sqrt(3)])

    def test_near_collinear_rejected_by_tolerance(self):
        with pytest.raises(CollinearError):
            circumcircle((0, 0), (2, 0), (1, 1e-14))

    def test_equidistance_postcondition(self, rng):
        for _ in range(50):
            a, b, c = rng.uniform(-5, 5, (3, 2))
            try:
                center, r2 = circumcircle(a, b, c)
            except CollinearError:
                continue
            for p in (a, b, c):
                assert np.sum((p - center) ** 2) == pytest.approx(r2, rel=1e-9)


# --------------------------------------------------------------------------
# voronoi cells


class TestVoronoiCells:
    def test_single_point_whole_box(self):
        box = Box(0, 0, 2, 1)
        (cell,) = voronoi_cells([(0.3, 0.4)], box)
        assert cell.area == pytest.approx(box.area)

    def test_two_points_bisector_split(self):
        box = Box(0, 0, 1, 1)
        cells = voronoi_cells([(0.25, 0.5), (0.75, 0.5)], box)
        assert cells[0].area == pytest.approx(0.5)
        assert cells[1].area == pytest.approx(0.5)
        assert np.max(cells[0].vertices[:, 0]) == pytest.approx(0.5)

    def test_four_symmetric_points_quadrants(self):
        box = Box(-0.5, -0.5, 0.5, 0.5)
        pts = [(-0.25, -0.25), (0.25, -0.25), (0.25, 0.25), (-0.25, 0.25)]
        cells = voronoi_cells(pts, box)
        for cell, p in zip(cells, pts):
            assert cell.area == pytest.approx(0.25, rel=1e-12)
            assert np.allclose(polygon_centroid(cell), p, atol=1e-12)

    def test_tiling_property(self):
        for seed in (0, 1, 2):
            pts = random_point_set(seed, 60)
            box = Box(0, 0, 1, 1)
            total = sum(c.area for c in voronoi_cells(pts, box))
            assert total == pytest.approx(box.area, rel=1e-9)

    def test_point_outside_box(self):
        with pytest.raises(PointOutsideBoxError):
            voronoi_cells([(2.0, 0.5), (0.5, 0.5), (0.2, 0.2)], Box(0, 0, 1, 1))

    def test_cells_contain_their_points(self):
        pts = random_point_set(5, 30)
        box = Box(0, 0, 1, 1)
        for p, cell in zip(pts, voronoi_cells(pts, box)):
            v = cell.vertices
            nxt = np.roll(v, -1, axis=0)
            e = nxt - v
            rel = p - v
            assert np.all(e[:, 0] * rel[:, 1] - e[:, 1] * rel[:, 0] >= -1e-9)


# --------------------------------------------------------------------------
# polygons


class TestPolygon:
    def test_unit_square_centroid(self):
        sq = ConvexPolygon(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float))
        assert np.allclose(polygon_centroid(sq), [0.5, 0.5])

    def test_triangle_centroid_is_vertex_mean(self):
        t = ConvexPolygon(np.array([[0, 0], [3, 0], [0, 3]], float))
        assert np.allclose(polygon_centroid(t), [1.0, 1.0])

    def test_l_shape_rejected_at_construction(self):
        l_shape = np.array([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]], float)
        with pytest.raises(NotConvexError):
            ConvexPolygon(l_shape)

    def test_degenerate_rejected(self):
        with pytest.raises(DegeneratePolygonError):
            ConvexPolygon(np.array([[0, 0], [1, 0], [2, 0]], float))
        with pytest.raises(DegeneratePolygonError):
            ConvexPolygon(np.array([[0, 0], [1, 1]], float))

    def test_orientation_normalized(self):
        cw = ConvexPolygon(np.array([[0, 0], [0, 1], [1, 1], [1, 0]], float))
        assert polygon_area(cw.vertices) > 0


# --------------------------------------------------------------------------
# alpha complex


class TestAlphaComplex:
    def test_equilateral_values(self):
        pts = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]
        f = alpha_complex(pts)
        values = {s: v for s, v in zip(f.simplices, f.values)}
        for i in range(3):
            assert values[(i,)] == 0.0
        assert values[(0, 1)] == pytest.approx(0.25, rel=1e-12)
        assert values[(0, 2)] == pytest.approx(0.25, rel=1e-12)
        assert values[(1, 2)] == pytest.approx(0.25, rel=1e-12)
        assert values[(0, 1, 2)] == pytest.approx(1.0 / 3.0, rel=1e-12)

    def test_obtuse_triangle_non_gabriel_edge(self):
        # the long edge's diametral disk contains the apex, so the edge
        # enters together with the triangle at the squared circumradius
        pts = [(0.0, 0.0), (4.0, 0.0), (2.0, 0.5)]
        f = alpha_complex(pts)
        values = {s: v for s, v in zip(f.simplices, f.values)}
        _, r2 = circumcircle(*pts)
        assert r2 == pytest.approx(18.0625, rel=1e-12)
        assert values[(0, 1)] == pytest.approx(r2, rel=1e-12)
        assert values[(0, 1, 2)] == pytest.approx(r2, rel=1e-12)
        # short edges are Gabriel: squared half-length
        assert values[(0, 2)] == pytest.approx(4.25 / 4.0, rel=1e-12)
        assert values[(1, 2)] == pytest.approx(4.25 / 4.0, rel=1e-12)

    def test_monotone_face_before_coface(self):
        for seed in range(20):
            pts = random_point_set(seed, 25)
            f = alpha_complex(pts)
            values = {s: v for s, v in zip(f.simplices, f.values)}
            for s, v in values.items():
                if len(s) == 1:
                    continue
                for drop in range(len(s)):
                    face = s[:drop] + s[drop + 1 :]
                    assert values[face] <= v + 1e-15

    def test_edge_lower_bound(self):
        for seed in range(20):
            pts = random_point_set(100 + seed, 30)
            f = alpha_complex(pts)
            for s, v in zip(f.simplices, f.values):
                if len(s) == 2:
                    half_sq = 0.25 * np.sum((pts[s[0]] - pts[s[1]]) ** 2)
                    assert v >= half_sq - 1e-12

    def test_radius_convention_is_sqrt(self):
        pts = random_point_set(42, 15)
        sq = alpha_complex(pts, convention="squared")
        ra = alpha_complex(pts, convention="radius")
        sq_map = {s: v for s, v in zip(sq.simplices, sq.values)}
        for s, v in zip(ra.simplices, ra.values):
            assert v == pytest.approx(math.sqrt(sq_map[s]), abs=1e-15)

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            alpha_complex([(0, 0), (1, 0), (0, 1)], convention="diameter")


def _region_intersection_simplices(pts: np.ndarray, r2: float, step: float) -> set:
    """Simplices whose ball-within-Voronoi-region intersections are hit by
    dense grid sampling (the independent definition oracle)."""
    r = math.sqrt(r2)
    kappa = 2.2 * step
    lo = pts.min(axis=0) - (r + 4 * kappa)
    hi = pts.max(axis=0) + (r + 4 * kappa)
    nx = int(np.ceil((hi[0] - lo[0]) / step)) + 1
    ny = int(np.ceil((hi[1] - lo[1]) / step)) + 1
    found: set = set()
    n = len(pts)
    weights = 1 << np.arange(n, dtype=np.int64)
    ys = lo[1] + step * np.arange(ny)
    xs = lo[0] + step * np.arange(nx)
    chunk = max(1, 200_000 // max(nx, 1))
    for y0 in range(0, ny, chunk):
        yy = ys[y0 : y0 + chunk]
        gx, gy = np.meshgrid(xs, yy)
        nodes = np.c_[gx.ravel(), gy.ravel()]
        d = np.sqrt(((nodes[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
        dmin = d.min(axis=1)
        member = (d <= r + kappa) & (d <= (dmin + kappa)[:, None])
        masks = np.unique(member @ weights)
        for mask in masks:
            sites = tuple(int(i) for i in range(n) if mask >> i & 1)
            for i in range(len(sites)):
                found.add((sites[i],))
                for j in range(i + 1, len(sites)):
                    found.add((sites[i], sites[j]))
                    for k in range(j + 1, len(sites)):
                        found.add((sites[i], sites[j], sites[k]))
    return found


class TestAlphaDefinitionOracle:
    """Compare the computed filtration against grid sampling of the
    ball-intersected-Voronoi-region definition, probing between critical
    values (at a critical value itself the witness set can be a single
    point no grid hits)."""

    @pytest.mark.parametrize("seed,n", [(1, 4), (2, 5), (3, 6), (4, 7), (5, 8), (6, 8)])
    def test_matches_definition(self, seed, n):
        pts = random_point_set(seed, n)
        f = alpha_complex(pts)
        diam = max(
            math.dist(pts[i], pts[j]) for i in range(n) for j in range(i + 1, n)
        )
        step = 1e-3 * diam
        kappa = 2.2 * step
        distinct = sorted(set(f.values))
        vmax = distinct[-1]
        # probes: midpoints of consecutive distinct values separated by more
        # than the sampling resolution window, plus one past the maximum
        window = 4.0 * math.sqrt(vmax) * kappa + 4.0 * kappa * kappa
        probes = []
        for a, b in zip(distinct, distinct[1:]):
            if b - a > 2.0 * window:
                probes.append(0.5 * (a + b))
        probes = probes[:10] + [1.05 * vmax + window]
        for r2 in probes:
            expected = {
                s for s, v in zip(f.simplices, f.values) if v <= r2
            }
            sampled = _region_intersection_simplices(pts, r2, step)
            assert sampled == expected, f"probe r2={r2}"
