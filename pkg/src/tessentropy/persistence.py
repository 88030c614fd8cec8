"""Persistent homology over Z/2 for filtered complexes of dimension <= 2.

The production pairing uses a union-find sweep for dimension 0 and a
column reduction of the triangle boundary matrix for dimension 1 (the
decreasing-dimension order means edges killed by triangles never need
their own reduction).  A plain full-matrix reduction is kept alongside as
a reference path; tests require both to agree.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    CapBelowMaxDeathError,
    FaceAfterCofaceError,
    UnexpectedInfiniteBarsError,
    UnsortedFiltrationError,
)

INF = math.inf


# --------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class Bar:
    """A persistence interval; ``death`` may be ``math.inf``."""

    dim: int
    birth: float
    death: float

    @property
    def finite(self) -> bool:
        return math.isfinite(self.death)

    @property
    def length(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class Barcode:
    """Multiset of bars plus provenance metadata.

    ``meta`` records at least the filtration value convention and, after a
    policy operation, how the infinite bar was handled.
    """

    bars: tuple[Bar, ...]
    n_vertices: int
    meta: Mapping[str, str] = field(default_factory=dict)

    def in_dim(self, dim: int) -> tuple[Bar, ...]:
        return tuple(b for b in self.bars if b.dim == dim)

    def infinite_bars(self) -> tuple[Bar, ...]:
        return tuple(b for b in self.bars if not b.finite)


class Filtration:
    """Ordered simplices of dimension <= 2 with monotone filtration values.

    The constructor validates the invariants: simplices sorted by
    ``(value, dimension, vertex tuple)``, values finite and non-negative,
    every face present and never after a coface.
    """

    __slots__ = ("simplices", "values", "_index")

    def __init__(self, simplices: Sequence[tuple[int, ...]], values: Sequence[float]):
        simplices = tuple(tuple(int(v) for v in s) for s in simplices)
        values = tuple(float(v) for v in values)
        if len(simplices) != len(values):
            raise ValueError("simplices and values must have equal length")
        index: dict[tuple[int, ...], int] = {}
        prev_key = None
        for pos, (verts, value) in enumerate(zip(simplices, values)):
            if not verts or len(verts) > 3:
                raise ValueError(f"simplex {verts} has unsupported dimension")
            if tuple(sorted(verts)) != verts or len(set(verts)) != len(verts):
                raise ValueError(f"simplex {verts} must be a sorted tuple of distinct vertices")
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"filtration value {value} must be finite and non-negative")
            key = (value, len(verts), verts)
            if prev_key is not None and key < prev_key:
                raise UnsortedFiltrationError(
                    f"simplex {verts} at value {value} breaks the filtration order"
                )
            prev_key = key
            if verts in index:
                raise ValueError(f"duplicate simplex {verts}")
            index[verts] = pos
        for pos, (verts, value) in enumerate(zip(simplices, values)):
            if len(verts) == 1:
                continue
            for face in _faces(verts):
                fpos = index.get(face)
                if fpos is None:
                    raise FaceAfterCofaceError(f"face {face} of {verts} is missing")
                if fpos > pos:
                    raise FaceAfterCofaceError(f"face {face} appears after coface {verts}")
        self.simplices = simplices
        self.values = values
        self._index = index

    @classmethod
    def from_simplices(cls, items: Iterable[tuple[Sequence[int], float]]) -> "Filtration":
        """Sort (vertices, value) pairs into filtration order and validate."""
        normalized = [(tuple(sorted(int(v) for v in verts)), float(val)) for verts, val in items]
        normalized.sort(key=lambda sv: (sv[1], len(sv[0]), sv[0]))
        return cls([s for s, _ in normalized], [v for _, v in normalized])

    def __len__(self) -> int:
        return len(self.simplices)

    def index_of(self, verts: Sequence[int]) -> int:
        return self._index[tuple(sorted(int(v) for v in verts))]

    @property
    def n_vertices(self) -> int:
        return sum(1 for s in self.simplices if len(s) == 1)

    @property
    def max_value(self) -> float:
        return max(self.values) if self.values else 0.0


def _faces(verts: tuple[int, ...]):
    for i in range(len(verts)):
        yield verts[:i] + verts[i + 1 :]


# --------------------------------------------------------------------------
# union-find


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


# --------------------------------------------------------------------------
# persistence


def compute_persistence(filtration: Filtration) -> Barcode:
    """Persistence pairing of the filtration, reported for dimensions 0 and 1.

    Dimension 0 follows the elder rule during a union-find sweep over the
    edges; dimension 1 comes from reducing triangle boundary columns over
    the edges.  Zero-length bars are dropped.  Ties are resolved by the
    total simplex order, so output is deterministic.
    """
    vertex_ids: dict[int, int] = {}
    order = []  # (birth value, filtration position) per vertex slot
    edge_pos: dict[tuple[int, int], int] = {}
    bars: list[Bar] = []
    positive_edges: dict[int, tuple[int, int]] = {}

    for pos, (verts, value) in enumerate(zip(filtration.simplices, filtration.values)):
        if len(verts) == 1:
            vertex_ids[verts[0]] = len(order)
            order.append((value, pos))
    uf = _UnionFind(len(order))
    root_record = {i: order[i] for i in range(len(order))}

    for pos, (verts, value) in enumerate(zip(filtration.simplices, filtration.values)):
        if len(verts) != 2:
            continue
        edge_pos[verts] = pos
        a, b = vertex_ids[verts[0]], vertex_ids[verts[1]]
        ra, rb = uf.find(a), uf.find(b)
        if ra == rb:
            positive_edges[pos] = verts
            continue
        # elder rule: the component created later dies at this edge
        if root_record[ra] <= root_record[rb]:
            elder, younger = ra, rb
        else:
            elder, younger = rb, ra
        birth = root_record[younger][0]
        if value != birth:
            bars.append(Bar(0, birth, value))
        uf.parent[younger] = elder
        del root_record[younger]
    for root, (birth, _) in root_record.items():
        bars.append(Bar(0, birth, INF))

    # dimension 1: reduce triangle columns over edge indices (Z/2)
    pivot_of: dict[int, frozenset | set] = {}
    pivot_col_value: dict[int, float] = {}
    for pos, (verts, value) in enumerate(zip(filtration.simplices, filtration.values)):
        if len(verts) != 3:
            continue
        col = set()
        for face in _faces(verts):
            col ^= {edge_pos[face]}
        while col:
            low = max(col)
            if low not in pivot_of:
                break
            col ^= pivot_of[low]
        if col:
            low = max(col)
            pivot_of[low] = col
            pivot_col_value[low] = value
    for epos, verts in positive_edges.items():
        birth = filtration.values[epos]
        if epos in pivot_col_value:
            death = pivot_col_value[epos]
            if death != birth:
                bars.append(Bar(1, birth, death))
        else:
            bars.append(Bar(1, birth, INF))

    bars.sort(key=lambda b: (b.dim, b.birth, b.death))
    return Barcode(bars=tuple(bars), n_vertices=len(order))


def boundary_matrix_persistence(filtration: Filtration) -> Barcode:
    """Reference pairing: plain left-to-right reduction of the full boundary
    matrix.  Used to cross-check :func:`compute_persistence`."""
    m = len(filtration)
    columns: list[set[int]] = []
    for verts in filtration.simplices:
        if len(verts) == 1:
            columns.append(set())
        else:
            columns.append({filtration.index_of(f) for f in _faces(verts)})
    pivot_owner: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    for j in range(m):
        col = columns[j]
        while col:
            low = max(col)
            owner = pivot_owner.get(low)
            if owner is None:
                break
            col ^= columns[owner]
        if col:
            low = max(col)
            pivot_owner[low] = j
            pairs.append((low, j))
    killed = {i for i, _ in pairs} | {j for _, j in pairs if columns[j]}
    bars = []
    for i, j in pairs:
        dim = len(filtration.simplices[i]) - 1
        if dim > 1:
            continue
        birth, death = filtration.values[i], filtration.values[j]
        if birth != death:
            bars.append(Bar(dim, birth, death))
    for i in range(m):
        if i in killed:
            continue
        dim = len(filtration.simplices[i]) - 1
        if dim <= 1:
            bars.append(Bar(dim, filtration.values[i], INF))
    bars.sort(key=lambda b: (b.dim, b.birth, b.death))
    return Barcode(bars=tuple(bars), n_vertices=filtration.n_vertices)


def betti_at(filtration: Filtration, t: float) -> tuple[int, int]:
    """Betti numbers (b0, b1) of the sublevel complex at value <= t.

    Brute-force oracle: connected components by a fresh union-find pass,
    then b1 from the Euler characteristic b1 = b0 - V + E - F.
    """
    verts = []
    edges = []
    faces = 0
    for s, v in zip(filtration.simplices, filtration.values):
        if v > t:
            continue
        if len(s) == 1:
            verts.append(s[0])
        elif len(s) == 2:
            edges.append(s)
        else:
            faces += 1
    if not verts:
        return 0, 0
    ids = {v: i for i, v in enumerate(verts)}
    uf = _UnionFind(len(verts))
    for a, b in edges:
        uf.union(ids[a], ids[b])
    b0 = len({uf.find(i) for i in range(len(verts))})
    b1 = b0 - len(verts) + len(edges) - faces
    return b0, b1


# --------------------------------------------------------------------------
# infinite-bar policies


def _the_single_infinite_bar(barcode: Barcode) -> Bar:
    infinite = barcode.infinite_bars()
    if len(infinite) != 1 or infinite[0].dim != 0:
        raise UnexpectedInfiniteBarsError(
            f"expected exactly one infinite bar in dimension 0, found "
            f"{[(b.dim, b.birth) for b in infinite]}"
        )
    return infinite[0]


def strip_infinite_dim0(barcode: Barcode) -> Barcode:
    """Remove the single infinite dimension-0 bar."""
    bar = _the_single_infinite_bar(barcode)
    bars = tuple(b for b in barcode.bars if b is not bar)
    meta = dict(barcode.meta)
    meta["bar_policy"] = "strip_infinite"
    return Barcode(bars=bars, n_vertices=barcode.n_vertices, meta=meta)


def cap_infinite_dim0(barcode: Barcode, cap: float) -> Barcode:
    """Replace the infinite bar's death by ``cap`` (legacy behavior).

    ``cap`` must not fall below the largest finite death.  Capping makes
    the entropy of the dimension-0 barcode scale-dependent.
    """
    bar = _the_single_infinite_bar(barcode)
    finite_deaths = [b.death for b in barcode.bars if b.finite]
    max_death = max(finite_deaths, default=bar.birth)
    if cap < max_death or cap < bar.birth:
        raise CapBelowMaxDeathError(f"cap {cap} is below the maximum death {max_death}")
    bars = tuple(Bar(b.dim, b.birth, cap) if b is bar else b for b in barcode.bars)
    meta = dict(barcode.meta)
    meta["bar_policy"] = "cap_infinite"
    meta["cap"] = repr(float(cap))
    return Barcode(bars=bars, n_vertices=barcode.n_vertices, meta=meta)


# --------------------------------------------------------------------------
# serialization


def write_barcode(barcode: Barcode, csv_path, meta_path=None) -> None:
    """CSV with columns dimension,birth,death ("inf" for immortal bars)
    plus a JSON metadata sidecar."""
    csv_path = Path(csv_path)
    if meta_path is None:
        meta_path = csv_path.with_suffix(".meta.json")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dimension", "birth", "death"])
        for b in barcode.bars:
            writer.writerow([b.dim, repr(b.birth), "inf" if not b.finite else repr(b.death)])
    meta = {"n_vertices": barcode.n_vertices, **dict(barcode.meta)}
    with open(meta_path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_barcode(csv_path, meta_path=None) -> Barcode:
    csv_path = Path(csv_path)
    if meta_path is None:
        meta_path = csv_path.with_suffix(".meta.json")
    bars = []
    with open(csv_path, newline="") as fh:
        for row in csv.DictReader(fh):
            death = INF if row["death"] == "inf" else float(row["death"])
            bars.append(Bar(int(row["dimension"]), float(row["birth"]), death))
    meta = {}
    n_vertices = 0
    p = Path(meta_path)
    if p.exists():
        meta = json.loads(p.read_text())
        n_vertices = int(meta.pop("n_vertices", 0))
    return Barcode(bars=tuple(bars), n_vertices=n_vertices, meta=meta)
