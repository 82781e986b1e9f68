"""Channel ranking algorithms and their numeric substrates.

Three rankers share one output type: a weight-based ranker driven by
near-hit/near-miss differences, a greedy relevance-minus-redundancy ranker
over discretized mutual information, and an unsupervised locality score on
a k-nearest-neighbour graph.  Scores order channels best-first; for the
locality score lower is better, for the other two higher is better.

All tie-breaks resolve to the lower channel id so results are reproducible
across platforms and thread counts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .dataset import LabeledMatrix

__all__ = [
    "RankingList",
    "ReliefParams",
    "MrmrParams",
    "LaplacianParams",
    "relief_rank",
    "mrmr_rank",
    "laplacian_rank",
    "rank_channels",
    "discretize",
    "mutual_information",
    "knn_graph",
    "RANKER_METHODS",
]

# chunk budget for pairwise-distance blocks, in float64 cells
_CHUNK_CELLS = 4_000_000


@dataclass(frozen=True)
class RankingList:
    """Ranked channels, best first, with the score that put them there."""

    order: np.ndarray
    scores: np.ndarray
    method: str

    def __post_init__(self):
        order = np.asarray(self.order, dtype=np.int64)
        scores = np.asarray(self.scores, dtype=np.float64)
        if order.ndim != 1 or scores.shape != order.shape:
            raise ValueError("order and scores must be 1-D and aligned")
        if len(set(order.tolist())) != order.size:
            raise ValueError("ranking order contains duplicate channels")
        order.flags.writeable = False
        scores.flags.writeable = False
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "scores", scores)

    def filtered(self, threshold: float) -> np.ndarray:
        """Channels whose score clears a threshold, ranking order kept.

        Direction-aware: lower-is-better methods keep scores <= threshold,
        the others keep scores >= threshold.  Unused by the pipeline, which
        sweeps ranking prefixes instead.
        """
        if self.method == "laplacian":
            keep = self.scores <= threshold
        else:
            keep = self.scores >= threshold
        return self.order[keep]


@dataclass(frozen=True)
class ReliefParams:
    """iterations: probe count, or "all" to cycle every sample once.

    neighbor_mode "nearest" picks the closest same/other-class sample for
    each probe (deterministic); "random" draws probe, near-hit and near-miss
    uniformly with the seeded generator.
    """

    iterations: int | str = "all"
    neighbor_mode: str = "nearest"
    seed: int = 0

    def __post_init__(self):
        if self.iterations != "all" and int(self.iterations) < 1:
            raise ValueError("iterations must be >= 1 or 'all'")
        if self.neighbor_mode not in ("nearest", "random"):
            raise ValueError(f"unknown neighbor_mode {self.neighbor_mode!r}")


@dataclass(frozen=True)
class MrmrParams:
    """bins=3 uses the mean +- std three-level scheme; other counts fall
    back to equal-width binning.  Information is measured in bits."""

    bins: int = 3

    def __post_init__(self):
        if self.bins < 2:
            raise ValueError("at least 2 discretization levels are required")


@dataclass(frozen=True)
class LaplacianParams:
    k_neighbors: int = 5
    kernel_width: float | str = "auto"
    subsample_cap: int | None = 2000
    seed: int = 0

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise ValueError("k_neighbors must be positive")
        if self.kernel_width != "auto" and float(self.kernel_width) <= 0:
            raise ValueError("kernel_width must be positive or 'auto'")
        if self.subsample_cap is not None and self.subsample_cap < 2:
            raise ValueError("subsample_cap must be >= 2 (or None to disable)")


def _order_by(channel_ids: np.ndarray, primary: np.ndarray) -> np.ndarray:
    """Positions sorted by primary score, ties to the lower channel id."""
    return np.lexsort((channel_ids, primary))


# ---------------------------------------------------------------------------
# Relief


def _normalize_ranges(X: np.ndarray) -> np.ndarray:
    """Scale each column to [0, 1] by its range; zero-range columns go to 0,
    which makes their per-feature differences (and weight) exactly zero."""
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    out = np.zeros_like(X)
    nz = span > 0
    out[:, nz] = (X[:, nz] - lo[nz]) / span[nz]
    return out


def _nearest_hit_miss(Xn: np.ndarray, y: np.ndarray, rows: np.ndarray):
    """Nearest same-class and other-class row for each probe row.

    Distance ties resolve to the lower row index.  Returns (hit, miss,
    valid) arrays; a probe with no same-class peer is marked invalid.
    """
    n = Xn.shape[0]
    sq = np.einsum("ij,ij->i", Xn, Xn)
    hit = np.zeros(rows.size, dtype=np.int64)
    miss = np.zeros(rows.size, dtype=np.int64)
    valid = np.ones(rows.size, dtype=bool)
    chunk = max(1, _CHUNK_CELLS // n)
    for start in range(0, rows.size, chunk):
        r = rows[start : start + chunk]
        d2 = sq[r, None] + sq[None, :] - 2.0 * (Xn[r] @ Xn.T)
        np.maximum(d2, 0.0, out=d2)
        d2[np.arange(r.size), r] = np.inf
        same = y[r, None] == y[None, :]
        d_hit = np.where(same, d2, np.inf)
        d_miss = np.where(same, np.inf, d2)
        hit[start : start + chunk] = np.argmin(d_hit, axis=1)
        miss[start : start + chunk] = np.argmin(d_miss, axis=1)
        valid[start : start + chunk] = np.isfinite(np.min(d_hit, axis=1))
    return hit, miss, valid


def relief_rank(matrix: LabeledMatrix, params: ReliefParams | None = None) -> RankingList:
    """Rank channels by accumulated near-miss minus near-hit differences.

    The weight of channel f after m probes is
    sum over probes of (diff(f, x, near_miss)^2 - diff(f, x, near_hit)^2) / m
    with diff the absolute difference divided by the channel's range over
    the whole matrix.  Higher weight ranks earlier.
    """
    params = params or ReliefParams()
    X = matrix.features
    y = matrix.labels
    n = X.shape[0]
    if len(matrix.present_labels) < 2:
        raise ValueError("relief needs at least 2 classes present")
    m = n if params.iterations == "all" else int(params.iterations)
    Xn = _normalize_ranges(X)

    if params.neighbor_mode == "nearest":
        probes = np.arange(m, dtype=np.int64) % n
        rows, counts = np.unique(probes, return_counts=True)
        hit, miss, valid = _nearest_hit_miss(Xn, y, rows)
        weights = counts.astype(np.float64)
    else:
        rng = np.random.default_rng(params.seed)
        rows = rng.integers(0, n, size=m)
        by_class = {c: np.flatnonzero(y == c) for c in matrix.present_labels}
        hit = np.zeros(m, dtype=np.int64)
        miss = np.zeros(m, dtype=np.int64)
        valid = np.ones(m, dtype=bool)
        for i, p in enumerate(rows):
            members = by_class[y[p]]
            peers = members[members != p]
            if peers.size == 0:
                valid[i] = False
                continue
            hit[i] = rng.choice(peers)
            others = np.flatnonzero(y != y[p])
            miss[i] = rng.choice(others)
        weights = np.ones(m)

    if not valid.any():
        raise ValueError("every probe was skipped: no class has two samples")
    n_skipped = int(weights[~valid].sum())
    if n_skipped:
        warnings.warn(
            f"relief skipped {n_skipped} of {m} probes (single-sample class)",
            stacklevel=2,
        )
    pr, ph, pm, w = rows[valid], hit[valid], miss[valid], weights[valid]
    d_hit = (Xn[pr] - Xn[ph]) ** 2
    d_miss = (Xn[pr] - Xn[pm]) ** 2
    W = ((d_miss - d_hit) * w[:, None]).sum(axis=0) / m

    pos = _order_by(matrix.channel_ids, -W)
    return RankingList(order=matrix.channel_ids[pos], scores=W[pos], method="relief")


# ---------------------------------------------------------------------------
# Discretization and mutual information


def discretize(column, levels: int = 3) -> np.ndarray:
    """Map a real column to small integer levels.

    The default 3-level scheme cuts at mean +- sample std: below gets 0,
    within gets 1, above gets 2; a constant (or single-value) column is all
    1.  Other level counts use equal-width bins over the observed range.
    """
    column = np.asarray(column, dtype=np.float64)
    if not np.isfinite(column).all():
        raise ValueError("column must be finite")
    if levels == 3:
        mu = column.mean()
        sigma = column.std(ddof=1) if column.size > 1 else 0.0
        if not np.isfinite(sigma) or sigma == 0.0:
            return np.ones(column.size, dtype=np.int64)
        out = np.ones(column.size, dtype=np.int64)
        out[column < mu - sigma] = 0
        out[column > mu + sigma] = 2
        return out
    lo, hi = column.min(), column.max()
    if hi == lo:
        return np.zeros(column.size, dtype=np.int64)
    codes = np.floor((column - lo) / (hi - lo) * levels).astype(np.int64)
    return np.clip(codes, 0, levels - 1)


def mutual_information(x, y) -> float:
    """Plug-in mutual information of two discrete vectors, in bits.

    Computed from integer cell counts, so exact product-count independents
    give exactly 0.0 and the result is bitwise symmetric in its arguments
    (terms are summed in sorted order).
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    if x.size == 0:
        raise ValueError("vectors must be non-empty")
    _, xc = np.unique(x, return_inverse=True)
    _, yc = np.unique(y, return_inverse=True)
    nx = int(xc.max()) + 1
    ny = int(yc.max()) + 1
    joint = np.bincount(xc * ny + yc, minlength=nx * ny).reshape(nx, ny)
    cx = joint.sum(axis=1)
    cy = joint.sum(axis=0)
    n = x.size
    i, j = np.nonzero(joint)
    cell = joint[i, j].astype(np.float64)
    # integer products stay exact below 2**53, so independent counts give
    # a ratio of exactly 1.0 and a term of exactly 0.0
    ratio = (cell * n) / (cx[i] * cy[j]).astype(np.float64)
    terms = (cell / n) * np.log2(ratio)
    return float(np.sort(terms).sum())


def _channel_codes(column: np.ndarray, levels: int) -> np.ndarray:
    """Codes for one channel: columns with fewer distinct values than the
    level count are already discrete and pass through as categories; real
    continuous columns go through the level scheme."""
    uniques, inverse = np.unique(column, return_inverse=True)
    if uniques.size < levels:
        return inverse.astype(np.int64)
    return discretize(column, levels)


def mrmr_rank(matrix: LabeledMatrix, params: MrmrParams | None = None) -> RankingList:
    """Greedy relevance-minus-mean-redundancy ranking over discretized data.

    The first pick maximizes I(channel; class); each later pick maximizes
    I(channel; class) - mean over selected s of I(channel; s).  The stored
    score is the greedy objective at selection time.
    """
    params = params or MrmrParams()
    X = matrix.features
    n, f = X.shape
    if n < 2:
        raise ValueError("mrmr needs at least 2 rows")
    if len(matrix.present_labels) < 2:
        raise ValueError("mrmr needs at least 2 classes present")

    codes = np.column_stack([_channel_codes(X[:, j], params.bins) for j in range(f)])
    relevance = np.array(
        [mutual_information(codes[:, j], matrix.labels) for j in range(f)]
    )

    ids = matrix.channel_ids
    remaining = list(range(f))
    red_sum = np.zeros(f)
    order = np.empty(f, dtype=np.int64)
    scores = np.empty(f)
    for step in range(f):
        if step == 0:
            objective = {j: relevance[j] for j in remaining}
        else:
            objective = {j: relevance[j] - red_sum[j] / step for j in remaining}
        best = min(remaining, key=lambda j: (-objective[j], ids[j]))
        order[step] = ids[best]
        scores[step] = objective[best]
        remaining.remove(best)
        for j in remaining:
            red_sum[j] += mutual_information(codes[:, j], codes[:, best])
    return RankingList(order=order, scores=scores, method="mrmr")


# ---------------------------------------------------------------------------
# Laplacian score


def knn_graph(rows, k: int, kernel_width: float | str = "auto") -> sp.csr_matrix:
    """Symmetrized k-nearest-neighbour heat-kernel weight matrix.

    Edge (i, j) exists iff j is among the k nearest of i or vice versa
    (Euclidean, self excluded, distance ties to the lower row index); edge
    weights are exp(-d^2 / t).  kernel_width "auto" sets t to the mean
    squared distance over the graph's edges.
    """
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2:
        raise ValueError("rows must be 2-D")
    n = rows.shape[0]
    if n < k + 1:
        raise ValueError(f"need at least k+1={k + 1} rows, got {n}")
    sq = np.einsum("ij,ij->i", rows, rows)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (rows @ rows.T)
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, np.inf)
    nn = np.argsort(d2, axis=1, kind="stable")[:, :k]
    adj = np.zeros((n, n), dtype=bool)
    adj[np.arange(n)[:, None], nn] = True
    adj |= adj.T
    if kernel_width == "auto":
        t = float(d2[adj].mean())
    else:
        t = float(kernel_width)
    if t <= 0.0:
        t = 1.0  # all edge distances zero; exp(0) = 1 either way
    weights = np.where(adj, np.exp(-d2 / t), 0.0)
    return sp.csr_matrix(weights)


def laplacian_rank(
    matrix: LabeledMatrix, params: LaplacianParams | None = None
) -> RankingList:
    """Rank channels by locality preservation on a kNN graph (lower first).

    Labels are ignored.  With degree vector d and weights W, each centered
    channel column ft scores (ft' D ft - ft' W ft) / (ft' D ft); constant
    channels get +inf and rank last.  Row count above subsample_cap is
    reduced by seeded uniform subsampling before the quadratic-cost graph
    build (set subsample_cap=None to disable).
    """
    params = params or LaplacianParams()
    X = matrix.features
    n = X.shape[0]
    if params.subsample_cap is not None and n > params.subsample_cap:
        rng = np.random.default_rng(params.seed)
        keep = np.sort(rng.choice(n, size=params.subsample_cap, replace=False))
        X = X[keep]
        n = X.shape[0]
    if n < params.k_neighbors + 1:
        raise ValueError(
            f"laplacian needs at least k+1={params.k_neighbors + 1} rows, got {n}"
        )
    W = knn_graph(X, params.k_neighbors, params.kernel_width)
    d = np.asarray(W.sum(axis=1)).ravel()
    dsum = d.sum()

    f = X.shape[1]
    scores = np.empty(f)
    for j in range(f):
        col = X[:, j]
        if col.max() == col.min():
            scores[j] = np.inf
            continue
        ft = col - (col @ d) / dsum
        denom = (ft * ft) @ d
        if denom <= 0.0:
            scores[j] = np.inf
            continue
        scores[j] = (denom - ft @ (W @ ft)) / denom

    pos = _order_by(matrix.channel_ids, scores)
    return RankingList(
        order=matrix.channel_ids[pos], scores=scores[pos], method="laplacian"
    )


# ---------------------------------------------------------------------------
# Dispatch

RANKER_METHODS = {
    "relief": (relief_rank, ReliefParams),
    "mrmr": (mrmr_rank, MrmrParams),
    "laplacian": (laplacian_rank, LaplacianParams),
}


def rank_channels(matrix: LabeledMatrix, method, params=None) -> RankingList:
    """Run a ranker by name (or any callable taking a LabeledMatrix)."""
    if callable(method):
        return method(matrix) if params is None else method(matrix, params)
    try:
        fn, _ = RANKER_METHODS[method]
    except KeyError:
        raise ValueError(
            f"unknown ranking method {method!r}; expected one of "
            f"{sorted(RANKER_METHODS)}"
        ) from None
    return fn(matrix, params)
