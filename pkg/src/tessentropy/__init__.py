"""Topological organization statistics for planar tessellations.

Quantifies how cells (segmented tissue images or synthetic centroidal
Voronoi tessellations) are arranged, by computing persistent entropy of
alpha-complex barcodes over cell centroids and comparing groups with
nonparametric tests.
"""

from .entropy import bar_lengths, normalized_entropy, persistent_entropy, total_length
from .geometry import (
    Box,
    ConvexPolygon,
    Triangulation,
    alpha_complex,
    circumcircle,
    delaunay,
    polygon_centroid,
    voronoi_cells,
)
from .persistence import (
    Bar,
    Barcode,
    Filtration,
    betti_at,
    boundary_matrix_persistence,
    cap_infinite_dim0,
    compute_persistence,
    read_barcode,
    strip_infinite_dim0,
    write_barcode,
)

__version__ = "0.1.0"

__all__ = [
    "Bar",
    "Barcode",
    "Box",
    "ConvexPolygon",
    "Filtration",
    "Triangulation",
    "alpha_complex",
    "bar_lengths",
    "betti_at",
    "boundary_matrix_persistence",
    "cap_infinite_dim0",
    "circumcircle",
    "compute_persistence",
    "delaunay",
    "normalized_entropy",
    "persistent_entropy",
    "polygon_centroid",
    "read_barcode",
    "strip_infinite_dim0",
    "total_length",
    "voronoi_cells",
    "write_barcode",
]
