"""Independent reference implementations used only by the test suite.

Everything here is deliberately written with different algorithms and
different data structures than the library: persistence comes from GF(2)
ranks of boundary submatrices instead of column reduction, the bottleneck
distance from exhaustive matching enumeration instead of binary search,
the ellipse parameters from a least-squares conic fit. Slow is fine; these
only ever see tiny inputs.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np


def gf2_rank(columns: list[int]) -> int:
    """Rank over GF(2) of a matrix given as column bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            lead = col.bit_length() - 1
            if lead in pivots:
                col ^= pivots[lead]
            else:
                pivots[lead] = col
                rank += 1
                break
    return rank


def _pairwise_distances(points: np.ndarray) -> np.ndarray:
    n = len(points)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = math.dist(points[i], points[j])
    return d


def rank_diagram(
    points: np.ndarray, max_eps: float | None = None, decimals: int = 9
) -> Counter:
    """Dimension 0/1 persistence multiset via persistent Betti ranks.

    For sublevel complexes K_1 ⊆ ... ⊆ K_L at the distinct filtration
    values, the rank of the map H_p(K_i) → H_p(K_j) is

        beta_p(i, j) = rank([D_{p+1}(K_j) | E_i]) - rank D_p(K_i)
                       - rank D_{p+1}(K_j)

    where D is the boundary matrix and E_i the indicator columns of the
    p-simplices present in K_i (a boundary supported on K_i simplices is a
    K_i cycle, which turns the intersection dimension into pure ranks).
    Interval multiplicities follow by inclusion-exclusion over the grid,
    essential classes from the last column of the table. Zero-length
    intervals never appear because the grid only has distinct values.

    Returns a Counter keyed by (dim, birth, death) with death = math.inf
    for essential classes, values rounded to ``decimals``.
    """
    n = len(points)
    dist = _pairwise_distances(points)

    edges = [
        (dist[i, j], i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if max_eps is None or dist[i, j] <= max_eps
    ]
    triangles = [
        (max(dist[i, j], dist[i, k], dist[j, k]), i, j, k)
        for i in range(n)
        for j in range(i + 1, n)
        for k in range(j + 1, n)
        if max_eps is None or max(dist[i, j], dist[i, k], dist[j, k]) <= max_eps
    ]

    levels = sorted({0.0} | {e[0] for e in edges} | {t[0] for t in triangles})
    nlev = len(levels)
    edge_index = {(i, j): idx for idx, (_, i, j) in enumerate(edges)}

    # Column bitmasks of the two boundary matrices of the full complex.
    # Rows of D1 are vertices, rows of D2 are edges.
    d1_cols = [(1 << i) | (1 << j) for (_, i, j) in edges]
    d2_cols = [
        (1 << edge_index[(i, j)])
        | (1 << edge_index[(i, k)])
        | (1 << edge_index[(j, k)])
        for (_, i, j, k) in triangles
    ]

    # Simplex counts and matrix column lists per level, cumulative.
    edge_upto = [[] for _ in range(nlev)]
    tri_upto = [[] for _ in range(nlev)]
    for li, v in enumerate(levels):
        edge_upto[li] = [d1_cols[e] for e in range(len(edges)) if edges[e][0] <= v]
        tri_upto[li] = [d2_cols[t] for t in range(len(triangles)) if triangles[t][0] <= v]
    edge_ids_upto = [
        [e for e in range(len(edges)) if edges[e][0] <= v] for v in levels
    ]

    rank_d1 = [gf2_rank(edge_upto[li]) for li in range(nlev)]
    rank_d2 = [gf2_rank(tri_upto[li]) for li in range(nlev)]

    def beta(p: int, li: int, lj: int) -> int:
        if li < 0:
            return 0
        if p == 0:
            # All vertices are present from level 0, so the map on H0 is
            # onto and the rank equals the component count of K_j.
            return n - rank_d1[lj]
        cols = list(tri_upto[lj]) + [1 << e for e in edge_ids_upto[li]]
        return gf2_rank(cols) - rank_d1[li] - rank_d2[lj]

    table = {
        p: [[beta(p, li, lj) for lj in range(nlev)] for li in range(nlev)]
        for p in (0, 1)
    }

    out: Counter = Counter()
    for p in (0, 1):
        bt = table[p]
        for li in range(nlev):
            for lj in range(li + 1, nlev):
                prev_i = bt[li - 1] if li > 0 else None
                mu = bt[li][lj - 1] - bt[li][lj]
                if prev_i is not None:
                    mu -= prev_i[lj - 1] - prev_i[lj]
                if mu:
                    out[(p, round(levels[li], decimals), round(levels[lj], decimals))] = (
                        out[(p, round(levels[li], decimals), round(levels[lj], decimals))]
                        + mu
                    )
            ess = bt[li][nlev - 1] - (bt[li - 1][nlev - 1] if li > 0 else 0)
            if ess:
                out[(p, round(levels[li], decimals), math.inf)] += ess
    return +out


def diagram_multiset(diagram, dims=(0, 1), decimals: int = 9) -> Counter:
    """The implementation's diagram as a Counter comparable to rank_diagram."""
    out: Counter = Counter()
    for iv in diagram.intervals:
        if iv.dim in dims:
            death = math.inf if math.isinf(iv.death) else round(iv.death, decimals)
            out[(iv.dim, round(iv.birth, decimals), death)] += 1
    return out


def persistent_beta1(points: np.ndarray, eps_i: float, eps_j: float) -> int:
    """Rank of the map H1(K_i) -> H1(K_j) between two Rips sublevels.

    Same rank identity as rank_diagram, evaluated at a single level pair,
    which keeps it usable on clouds whose full grid would be too slow.
    """
    if eps_i > eps_j:
        raise ValueError("eps_i must not exceed eps_j")
    n = len(points)
    dist = _pairwise_distances(points)

    edges = [
        (dist[i, j], i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if dist[i, j] <= eps_j
    ]
    edge_index = {(i, j): idx for idx, (_, i, j) in enumerate(edges)}

    d1_i = [(1 << i) | (1 << j) for (v, i, j) in edges if v <= eps_i]
    e_i = [1 << edge_index[(i, j)] for (v, i, j) in edges if v <= eps_i]
    d2_j = [
        (1 << edge_index[(i, j)])
        | (1 << edge_index[(i, k)])
        | (1 << edge_index[(j, k)])
        for i in range(n)
        for j in range(i + 1, n)
        if dist[i, j] <= eps_j
        for k in range(j + 1, n)
        if max(dist[i, j], dist[i, k], dist[j, k]) <= eps_j
    ]
    return gf2_rank(d2_j + e_i) - gf2_rank(d1_i) - gf2_rank(d2_j)


def bottleneck_exhaustive(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> float:
    """Bottleneck distance by enumerating every partial matching.

    Intervals are (birth, death) pairs; death may be math.inf. Essential
    intervals only match essential intervals. Finite intervals match across
    at L-infinity cost or to the diagonal at half their length.
    """
    ess_a = sorted(x[0] for x in a if math.isinf(x[1]))
    ess_b = sorted(x[0] for x in b if math.isinf(x[1]))
    if len(ess_a) != len(ess_b):
        return math.inf
    best_ess = 0.0
    if ess_a:
        best_ess = math.inf
        for perm in itertools.permutations(range(len(ess_b))):
            cost = max(abs(ea - ess_b[p]) for ea, p in zip(ess_a, perm))
            best_ess = min(best_ess, cost)

    fa = [x for x in a if not math.isinf(x[1])]
    fb = [x for x in b if not math.isinf(x[1])]
    diag_a = [(d - b0) / 2.0 for b0, d in fa]
    diag_b = [(d - b0) / 2.0 for b0, d in fb]

    best_fin = math.inf
    idx_b = range(len(fb))
    for k in range(0, min(len(fa), len(fb)) + 1):
        for subset_a in itertools.combinations(range(len(fa)), k):
            for images in itertools.permutations(idx_b, k):
                used_b = set(images)
                cost = 0.0
                for i, j in zip(subset_a, images):
                    cost = max(
                        cost,
                        abs(fa[i][0] - fb[j][0]),
                        abs(fa[i][1] - fb[j][1]),
                    )
                for i in range(len(fa)):
                    if i not in subset_a:
                        cost = max(cost, diag_a[i])
                for j in range(len(fb)):
                    if j not in used_b:
                        cost = max(cost, diag_b[j])
                best_fin = min(best_fin, cost)
    if not fa and not fb:
        best_fin = 0.0
    return max(best_ess, best_fin)


def fit_conic(points: np.ndarray) -> tuple[float, float, float]:
    """Least-squares central conic fit a·x² + b·xy + c·y² = 1.

    Returns (rotation_deg in [0, 90), major radius, minor radius). Only
    meaningful for points tracing an origin-centered ellipse.
    """
    x, y = points[:, 0], points[:, 1]
    design = np.column_stack((x * x, x * y, y * y))
    coef, *_ = np.linalg.lstsq(design, np.ones(len(points)), rcond=None)
    a, b, c = coef
    quad = np.array([[a, b / 2.0], [b / 2.0, c]])
    evals, evecs = np.linalg.eigh(quad)
    radii = 1.0 / np.sqrt(evals)
    # eigh sorts ascending, so the first eigenvector's axis is the major one
    major_axis = evecs[:, 0]
    angle = math.degrees(math.atan2(major_axis[1], major_axis[0])) % 180.0
    if angle >= 90.0:
        angle -= 90.0
        radii = radii[::-1]
    return angle, float(max(radii)), float(min(radii))


def hausdorff_brute(a: np.ndarray, b: np.ndarray) -> float:
    """Hausdorff distance with plain loops."""

    def directed(p: np.ndarray, q: np.ndarray) -> float:
        return max(min(math.dist(x, y) for y in q) for x in p)

    return max(directed(a, b), directed(b, a))


class _SplitMix:
    """Same deterministic stream as the library's SplitMix64."""

    def __init__(self, seed: int) -> None:
        self.state = seed & 0xFFFFFFFFFFFFFFFF

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return (self.next_u64() * n) >> 64


def maxmin_brute(points: np.ndarray, n: int, seed: int = 0) -> np.ndarray:
    """Greedy farthest-point subsample recomputed from the definition.

    Every index is a candidate each round (already-chosen ones sit at
    distance zero and lose any tie to the lowest index), matching the
    argmax convention of the implementation under test.
    """
    total = len(points)
    rng = _SplitMix(seed)
    chosen = [rng.below(total)]
    for _ in range(n - 1):
        best_idx, best_dist = 0, -1.0
        for cand in range(total):
            dmin = min(math.dist(points[cand], points[c]) for c in chosen)
            if dmin > best_dist:
                best_dist, best_idx = dmin, cand
        chosen.append(best_idx)
    return points[chosen]
