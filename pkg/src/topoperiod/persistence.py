"""Vietoris-Rips filtrations and persistent homology over GF(2).

A Rips filtration on a point cloud assigns every simplex the largest
pairwise distance among its vertices. Persistent homology then pairs the
simplex that creates each homology class with the simplex that fills it
in, producing birth/death intervals per dimension. Dimension 0 is handled
with a union-find sweep (which yields the same interval multiset as
matrix reduction, since every vertex is born at 0) and dimensions 1 and
up with the standard boundary-matrix column reduction, processed from the
top dimension down so columns already known to be births are cleared.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .embedding import PointCloud
from .errors import EmptyCloudError


@dataclass(frozen=True)
class Filtration:
    """Simplices of a filtered complex, grouped and sorted by dimension.

    ``simplices[d]`` is an (n_d, d+1) integer array of vertex ids, each
    row ascending; ``values[d]`` the matching filtration values. Rows are
    ordered by (value, lexicographic vertex order), so a row's index is
    its rank among simplices of that dimension. Every face of a simplex
    appears at an earlier or equal value.
    """

    n_vertices: int
    max_dim: int
    max_eps: float
    simplices: tuple[np.ndarray, ...]
    values: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return int(sum(v.size for v in self.values))

    def _stream(self, d: int) -> Iterator[tuple[float, int, tuple[int, ...]]]:
        rows, vals = self.simplices[d], self.values[d]
        for i in range(vals.size):
            yield float(vals[i]), d, tuple(int(v) for v in rows[i])

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], int, float]]:
        """Yield (vertices, dim, value) in global filtration order.

        The global order sorts by value, then dimension, then vertex
        tuple, which guarantees faces precede cofaces.
        """
        streams = [self._stream(d) for d in range(self.max_dim + 1)]
        for value, dim, verts in heapq.merge(*streams):
            yield verts, dim, value


def rips_filtration(
    cloud: PointCloud, max_dim: int = 2, max_eps: float | str | None = "auto"
) -> Filtration:
    """Build the Rips filtration of a cloud up to a simplex dimension.

    Parameters
    ----------
    cloud : PointCloud
        Nonempty input cloud.
    max_dim : int
        Largest simplex dimension to include; 2 (triangles) is enough to
        resolve the death of every 1-dimensional class.
    max_eps : float, "auto", or None
        Distance cutoff for simplex inclusion. "auto" (or None) uses the
        cloud diameter, so nothing is truncated.
    """
    n = len(cloud)
    if n == 0:
        raise EmptyCloudError("cannot build a filtration on an empty cloud")
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")

    if n == 1:
        dist = np.zeros((1, 1))
        diameter = 0.0
    else:
        dist = squareform(pdist(cloud.points))
        diameter = float(dist.max())
    if max_eps is None or max_eps == "auto":
        eps = diameter
    else:
        eps = float(max_eps)
        if eps < 0:
            raise ValueError("max_eps must be nonnegative")

    simplices: list[np.ndarray] = [np.arange(n, dtype=np.int64).reshape(-1, 1)]
    values: list[np.ndarray] = [np.zeros(n)]

    adj = dist <= eps
    np.fill_diagonal(adj, False)
    iu, ju = np.nonzero(np.triu(adj, 1))
    ev = dist[iu, ju]
    order = np.lexsort((ju, iu, ev))
    edges = np.column_stack((iu, ju))[order].astype(np.int64)
    simplices.append(edges)
    values.append(ev[order])

    if max_dim >= 2:
        tri_rows, tri_vals = _enumerate_triangles(dist, adj)
        simplices.append(tri_rows)
        values.append(tri_vals)

    for d in range(3, max_dim + 1):
        rows, vals = _extend_cliques(simplices[d - 1], values[d - 1], dist, adj)
        simplices.append(rows)
        values.append(vals)

    return Filtration(
        n_vertices=n,
        max_dim=max_dim,
        max_eps=eps,
        simplices=tuple(simplices),
        values=tuple(values),
    )


def _enumerate_triangles(dist: np.ndarray, adj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All 3-cliques of the adjacency graph with their filtration values."""
    n = adj.shape[0]
    parts: list[np.ndarray] = []
    for i in range(n):
        nb = np.nonzero(adj[i, i + 1 :])[0] + i + 1
        if nb.size < 2:
            continue
        sub = adj[np.ix_(nb, nb)]
        pj, pk = np.nonzero(np.triu(sub, 1))
        if pj.size:
            parts.append(np.column_stack((np.full(pj.size, i, dtype=np.int64), nb[pj], nb[pk])))
    if not parts:
        return np.empty((0, 3), dtype=np.int64), np.empty(0)
    rows = np.concatenate(parts)
    vals = np.maximum(
        dist[rows[:, 0], rows[:, 1]],
        np.maximum(dist[rows[:, 0], rows[:, 2]], dist[rows[:, 1], rows[:, 2]]),
    )
    order = np.lexsort((rows[:, 2], rows[:, 1], rows[:, 0], vals))
    return rows[order], vals[order]


def _extend_cliques(
    prev: np.ndarray, prev_vals: np.ndarray, dist: np.ndarray, adj: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Grow (d-1)-simplices into d-simplices by one common neighbor."""
    n = adj.shape[0]
    out_rows: list[np.ndarray] = []
    out_vals: list[float] = []
    idx = np.arange(n)
    for row, val in zip(prev, prev_vals):
        common = np.all(adj[row], axis=0) & (idx > row[-1])
        for c in np.nonzero(common)[0]:
            out_rows.append(np.append(row, c))
            out_vals.append(max(float(val), float(dist[row, c].max())))
    if not out_rows:
        width = prev.shape[1] + 1
        return np.empty((0, width), dtype=np.int64), np.empty(0)
    rows = np.asarray(out_rows, dtype=np.int64)
    vals = np.asarray(out_vals)
    keys = tuple(rows[:, c] for c in range(rows.shape[1] - 1, -1, -1)) + (vals,)
    order = np.lexsort(keys)
    return rows[order], vals[order]


@dataclass(frozen=True, order=True)
class PersistenceInterval:
    """One barcode interval; ``death`` is ``math.inf`` for essential classes."""

    dim: int
    birth: float
    death: float

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.death)

    @property
    def length(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of persistence intervals, stored in canonical order."""

    intervals: tuple[PersistenceInterval, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", tuple(sorted(self.intervals)))

    def __len__(self) -> int:
        return len(self.intervals)

    def in_dim(self, dim: int) -> list[PersistenceInterval]:
        return [iv for iv in self.intervals if iv.dim == dim]

    def finite(self, dim: int) -> list[PersistenceInterval]:
        return [iv for iv in self.intervals if iv.dim == dim and iv.is_finite]

    def essential(self, dim: int) -> list[PersistenceInterval]:
        return [iv for iv in self.intervals if iv.dim == dim and not iv.is_finite]

    def to_dicts(self) -> list[dict]:
        """JSON-ready form: death is null for essential intervals."""
        return [
            {
                "dim": iv.dim,
                "birth": iv.birth,
                "death": iv.death if iv.is_finite else None,
            }
            for iv in self.intervals
        ]

    @classmethod
    def from_dicts(cls, rows: list[dict]) -> "PersistenceDiagram":
        return cls(
            tuple(
                PersistenceInterval(
                    int(r["dim"]),
                    float(r["birth"]),
                    math.inf if r.get("death") is None else float(r["death"]),
                )
                for r in rows
            )
        )


def persistent_homology(filtration: Filtration) -> PersistenceDiagram:
    """Compute the persistence diagram of a Rips filtration.

    Homology is reported for dimensions 0 through ``max_dim - 1``; classes
    of dimension ``max_dim`` cannot die without one-higher simplices, so
    they are artifacts of the dimension cutoff and are not emitted.
    Zero-length intervals are discarded.

    Returns
    -------
    PersistenceDiagram
        Intervals sorted by (dim, birth, death), death ``inf`` for classes
        that never die within the filtration.
    """
    out: list[PersistenceInterval] = []

    edges = filtration.simplices[1]
    edge_vals = filtration.values[1]

    # Dimension 0: Kruskal sweep. Every vertex is born at value 0, each
    # component-merging edge kills exactly one class at its own value, so
    # union-find reproduces the interval multiset of full reduction.
    n = filtration.n_vertices
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree_edge = np.zeros(len(edges), dtype=bool)
    components = n
    for idx in range(len(edges)):
        ru = find(int(edges[idx, 0]))
        rv = find(int(edges[idx, 1]))
        if ru != rv:
            parent[ru] = rv
            tree_edge[idx] = True
            components -= 1
            val = float(edge_vals[idx])
            if val > 0.0:
                out.append(PersistenceInterval(0, 0.0, val))
    out.extend(PersistenceInterval(0, 0.0, math.inf) for _ in range(components))

    # Dimensions >= 1: reduce boundary matrices from the top dimension
    # down. Lows of the reduced matrix one dimension up are simplices
    # already known to be births, so their columns are cleared (skipped).
    cleared: set[int] = set()
    dim1_lows: set[int] = set()
    for p in range(filtration.max_dim, 1, -1):
        cols = filtration.simplices[p]
        col_vals = filtration.values[p]
        rows = filtration.simplices[p - 1]
        row_vals = filtration.values[p - 1]
        if p == 2:
            rank_of = np.full((n, n), -1, dtype=np.int64)
            rank_of[edges[:, 0], edges[:, 1]] = np.arange(len(edges))
            facet_ranks = [
                rank_of[cols[:, 0], cols[:, 1]],
                rank_of[cols[:, 0], cols[:, 2]],
                rank_of[cols[:, 1], cols[:, 2]],
            ]
        else:
            lookup = {tuple(int(v) for v in rows[i]): i for i in range(len(rows))}
            facet_ranks = []
            for drop in range(p + 1):
                keep = [c for c in range(p + 1) if c != drop]
                facet_ranks.append(
                    np.asarray(
                        [lookup[tuple(int(v) for v in r[keep])] for r in cols],
                        dtype=np.int64,
                    )
                )
        paired_rows, zero_cols = _reduce_dim(facet_ranks, len(rows), len(cols), cleared)
        if p < filtration.max_dim:
            # Columns that vanished are births of p-classes; nothing one
            # dimension up paired them (those were cleared), so they are
            # essential.
            out.extend(
                PersistenceInterval(p, float(col_vals[c]), math.inf) for c in zero_cols
            )
        for row_rank, col_rank in paired_rows.items():
            birth = float(row_vals[row_rank])
            death = float(col_vals[col_rank])
            if death > birth:
                out.append(PersistenceInterval(p - 1, birth, death))
        if p == 2:
            dim1_lows = set(paired_rows)
        cleared = set(paired_rows)

    if filtration.max_dim >= 2:
        # Cycle-creating edges never paired by a triangle are essential.
        for r in np.nonzero(~tree_edge)[0]:
            if int(r) not in dim1_lows:
                out.append(PersistenceInterval(1, float(edge_vals[r]), math.inf))

    return PersistenceDiagram(tuple(out))


def _reduce_dim(
    facet_ranks: list[np.ndarray],
    n_rows: int,
    n_cols: int,
    skip_cols: set[int],
) -> tuple[dict[int, int], list[int]]:
    """Column-reduce one boundary matrix over GF(2).

    Columns are processed in filtration order as big-integer bitmasks over
    row ranks. Returns the pairing (row rank of each pivot mapped to its
    column rank) and the list of columns that reduced to zero.
    """
    shifts = [1 << r for r in range(n_rows)]
    facet_lists = [fr.tolist() for fr in facet_ranks]
    pivot_col_of_row: dict[int, int] = {}
    stored: dict[int, int] = {}
    zero_cols: list[int] = []
    n_facets = len(facet_lists)
    for c in range(n_cols):
        if c in skip_cols:
            continue
        col = 0
        for fl in range(n_facets):
            col ^= shifts[facet_lists[fl][c]]
        while col:
            low = col.bit_length() - 1
            other = stored.get(low)
            if other is None:
                stored[low] = col
                pivot_col_of_row[low] = c
                break
            col ^= other
        else:
            zero_cols.append(c)
    return pivot_col_of_row, zero_cols


def h1_diagram(cloud: PointCloud, max_eps: float | str | None = "auto") -> PersistenceDiagram:
    """Dimension 0 and 1 persistence of a cloud without storing triangles.

    Produces the same diagram as ``persistent_homology`` of a max_dim=2
    Rips filtration, but works on the coboundary side: one column per
    edge, holding the triangles that contain it, processed in reverse
    filtration order. Pairing a column's reduced pivot with the column's
    edge yields the same interval multiset as boundary reduction, while
    never materializing the cubically many triangles, so clouds of a few
    hundred points stay cheap where the explicit two-skeleton would not
    fit in memory.

    Dimension 0 comes from a union-find sweep; its death edges (the
    spanning-tree edges) are exactly the columns the edge-side reduction
    may skip.
    """
    n = len(cloud)
    if n == 0:
        raise EmptyCloudError("cannot compute persistence of an empty cloud")
    if n == 1:
        return PersistenceDiagram((PersistenceInterval(0, 0.0, math.inf),))

    dist = squareform(pdist(cloud.points))
    if max_eps is None or max_eps == "auto":
        eps = float(dist.max())
    else:
        eps = float(max_eps)
        if eps < 0:
            raise ValueError("max_eps must be nonnegative")

    adj = dist <= eps
    np.fill_diagonal(adj, False)
    iu, ju = np.nonzero(np.triu(adj, 1))
    ev = dist[iu, ju]
    order = np.lexsort((ju, iu, ev))
    iu, ju, ev = iu[order], ju[order], ev[order]
    n_edges = int(iu.size)

    out: list[PersistenceInterval] = []

    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree_edge = np.zeros(n_edges, dtype=bool)
    components = n
    for idx in range(n_edges):
        ru = find(int(iu[idx]))
        rv = find(int(ju[idx]))
        if ru != rv:
            parent[ru] = rv
            tree_edge[idx] = True
            components -= 1
            val = float(ev[idx])
            if val > 0.0:
                out.append(PersistenceInterval(0, 0.0, val))
    out.extend(PersistenceInterval(0, 0.0, math.inf) for _ in range(components))

    if n_edges == 0:
        return PersistenceDiagram(tuple(out))

    rank = np.zeros((n, n), dtype=np.int64)
    rank[iu, ju] = np.arange(n_edges)
    rank[ju, iu] = np.arange(n_edges)

    # A triangle is keyed by (rank of its last edge, vertex triple), one
    # int64. Key order refines filtration-value order, and the key's high
    # part recovers the triangle's value, which is its last edge's value.
    n2 = n * n
    n3 = n2 * n
    ev_list = [float(x) for x in ev]
    iu_list = iu.tolist()
    ju_list = ju.tolist()
    tree_list = tree_edge.tolist()

    stored: dict[int, np.ndarray] = {}
    for t in range(n_edges - 1, -1, -1):
        if tree_list[t]:
            # Tree edges were paired as deaths in dimension 0 already;
            # their columns are guaranteed to reduce to zero.
            continue
        u = iu_list[t]
        v = ju_list[t]
        ws = np.flatnonzero(adj[u] & adj[v])
        if ws.size:
            tstar = np.maximum(np.maximum(rank[u, ws], rank[v, ws]), t)
            lo = np.minimum(min(u, v), ws)
            hi = np.maximum(max(u, v), ws)
            mid = (u + v) + ws - lo - hi
            col = np.sort(tstar * n3 + lo * n2 + mid * n + hi)
        else:
            col = np.empty(0, dtype=np.int64)
        if col.size == 0:
            out.append(PersistenceInterval(1, ev_list[t], math.inf))
            continue
        low = int(col[0])
        other = stored.get(low)
        if other is None:
            stored[low] = col
            birth = ev_list[t]
            death = ev_list[low // n3]
            if death > birth:
                out.append(PersistenceInterval(1, birth, death))
            continue
        # Collision: resolve by addition chains. The working column lives
        # in a min-heap as a multiset whose odd-multiplicity keys are the
        # column; adding a stored column pushes its entries instead of
        # rewriting the whole working set. A sorted array is already a
        # valid heap, and stored pivots cancel the popped one, so only
        # the tails get pushed. Popped pivots increase strictly, which
        # keeps the materialized remainder sorted.
        heap = col.tolist()
        heappush = heapq.heappush
        heappop = heapq.heappop
        while True:
            low = -1
            while heap:
                x = heappop(heap)
                parity = 1
                while heap and heap[0] == x:
                    heappop(heap)
                    parity ^= 1
                if parity:
                    low = x
                    break
            if low < 0:
                out.append(PersistenceInterval(1, ev_list[t], math.inf))
                break
            other = stored.get(low)
            if other is None:
                if heap:
                    vals, counts = np.unique(
                        np.fromiter(heap, dtype=np.int64, count=len(heap)),
                        return_counts=True,
                    )
                    rest = vals[counts % 2 == 1]
                    stored[low] = np.concatenate(
                        (np.asarray([low], dtype=np.int64), rest)
                    )
                else:
                    stored[low] = np.asarray([low], dtype=np.int64)
                birth = ev_list[t]
                death = ev_list[low // n3]
                if death > birth:
                    out.append(PersistenceInterval(1, birth, death))
                break
            for x in other[1:].tolist():
                heappush(heap, x)

    return PersistenceDiagram(tuple(out))


@dataclass(frozen=True)
class BettiCurve:
    """Betti number of one dimension as a step function of the scale."""

    dim: int
    births: np.ndarray
    deaths: np.ndarray

    def __call__(self, eps: float) -> int:
        alive = np.searchsorted(self.births, eps, side="right")
        dead = np.searchsorted(self.deaths, eps, side="right")
        return int(alive - dead)

    @property
    def thresholds(self) -> np.ndarray:
        """Scales where the count can change, ascending and unique."""
        finite_deaths = self.deaths[np.isfinite(self.deaths)]
        return np.unique(np.concatenate((self.births, finite_deaths)))


def betti_curve(diagram: PersistenceDiagram, dim: int) -> BettiCurve:
    """Step function counting intervals with ``birth <= eps < death``."""
    ivs = diagram.in_dim(dim)
    births = np.sort(np.asarray([iv.birth for iv in ivs]))
    deaths = np.sort(np.asarray([iv.death for iv in ivs]))
    return BettiCurve(dim=dim, births=births, deaths=deaths)
