"""Distances between point clouds and between persistence diagrams.

The bottleneck distance is computed exactly: the optimum is always one of
the finitely many candidate costs (pairwise interval distances and
diagonal projection costs), so a binary search over the sorted candidates
with a bipartite matching feasibility test at each step finds it.
"""

from __future__ import annotations

import math

import numpy as np

from .embedding import PointCloud
from .errors import DimensionMismatchError, EmptyCloudError
from .persistence import PersistenceDiagram


def hausdorff(a: PointCloud, b: PointCloud) -> float:
    """Symmetric Hausdorff distance between two clouds.

    The larger of the two directed distances, where the directed distance
    is the worst nearest-neighbor distance from one cloud into the other.
    Euclidean throughout.
    """
    if len(a) == 0 or len(b) == 0:
        raise EmptyCloudError("Hausdorff distance needs two nonempty clouds")
    if a.dim != b.dim:
        raise DimensionMismatchError(f"cloud dimensions differ: {a.dim} vs {b.dim}")
    if len(a) * len(b) > 4_000_000:
        from scipy.spatial import cKDTree

        d_ab = cKDTree(b.points).query(a.points)[0].max()
        d_ba = cKDTree(a.points).query(b.points)[0].max()
        return float(max(d_ab, d_ba))
    from scipy.spatial.distance import cdist

    d = cdist(a.points, b.points)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def _interval_arrays(diagram: PersistenceDiagram, dim: int) -> tuple[np.ndarray, list[float]]:
    finite = np.asarray(
        [(iv.birth, iv.death) for iv in diagram.finite(dim)], dtype=np.float64
    ).reshape(-1, 2)
    essential_births = [iv.birth for iv in diagram.essential(dim)]
    return finite, essential_births


def _saturates(adj: list[list[int]], must: list[int], n_right: int) -> bool:
    """Can a matching cover every left node in ``must``?

    Kuhn's augmenting-path search started from the mandatory nodes only.
    Optional left nodes are drawn into the matching only via alternating
    paths, so success means exactly that all mandatory nodes are covered.
    """
    match_right: list[int] = [-1] * n_right

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if match_right[j] == -1 or augment(match_right[j], seen):
                    match_right[j] = i
                    return True
        return False

    for i in must:
        if not augment(i, [False] * n_right):
            return False
    return True


def _feasible(cost: np.ndarray, diag_a: np.ndarray, diag_b: np.ndarray, t: float) -> bool:
    """Is there a partial matching with every assignment cost <= t?

    Intervals whose diagonal cost exceeds t must be matched across; for
    bipartite graphs, if each side's mandatory set can be covered
    separately then both can be covered by one matching.
    """
    edges_ok = cost <= t
    must_a = [i for i in range(len(diag_a)) if diag_a[i] > t]
    must_b = [j for j in range(len(diag_b)) if diag_b[j] > t]
    if must_a:
        adj_a = [list(np.nonzero(edges_ok[i])[0]) for i in range(len(diag_a))]
        if not _saturates(adj_a, must_a, len(diag_b)):
            return False
    if must_b:
        adj_b = [list(np.nonzero(edges_ok[:, j])[0]) for j in range(len(diag_b))]
        if not _saturates(adj_b, must_b, len(diag_a)):
            return False
    return True


def bottleneck(a: PersistenceDiagram, b: PersistenceDiagram, dim: int) -> float:
    """Exact bottleneck distance between two diagrams in one dimension.

    Finite intervals may be matched to each other (L-infinity cost) or to
    the diagonal (half their length); essential intervals only to other
    essential intervals. Diagrams with different essential counts are
    infinitely far apart.
    """
    fin_a, ess_a = _interval_arrays(a, dim)
    fin_b, ess_b = _interval_arrays(b, dim)

    if len(ess_a) != len(ess_b):
        return math.inf
    ess_cost = 0.0
    if ess_a:
        # Matching sorted births pairwise minimizes the worst birth gap.
        ess_cost = float(np.max(np.abs(np.sort(ess_a) - np.sort(ess_b))))

    m, n = len(fin_a), len(fin_b)
    if m == 0 and n == 0:
        return ess_cost
    diag_a = (fin_a[:, 1] - fin_a[:, 0]) / 2.0
    diag_b = (fin_b[:, 1] - fin_b[:, 0]) / 2.0
    if m == 0 or n == 0:
        only = diag_a if n == 0 else diag_b
        return max(ess_cost, float(only.max()))

    cost = np.maximum(
        np.abs(fin_a[:, 0, None] - fin_b[None, :, 0]),
        np.abs(fin_a[:, 1, None] - fin_b[None, :, 1]),
    )
    candidates = np.unique(np.concatenate((cost.ravel(), diag_a, diag_b, [0.0])))
    lo, hi = 0, len(candidates) - 1
    # The largest diagonal cost is always feasible (match nothing across).
    top = float(max(diag_a.max(), diag_b.max()))
    hi = int(np.searchsorted(candidates, top))
    best = candidates[hi]
    while lo <= hi:
        mid = (lo + hi) // 2
        t = float(candidates[mid])
        if _feasible(cost, diag_a, diag_b, t):
            best = t
            hi = mid - 1
        else:
            lo = mid + 1
    return max(ess_cost, float(best))
