"""Built-in classifiers behind a single fit/predict interface.

Three kinds: a memory-based k-nearest-neighbour voter, Gaussian linear
discriminant analysis with a pooled covariance, and a CART-style decision
tree grown on Gini impurity with midpoint thresholds.  Every tie anywhere
(neighbour distance, vote, discriminant, split quality) resolves to the
lowest index or label, so predictions are reproducible everywhere.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Any

import numpy as np

from .dataset import LabeledMatrix

__all__ = ["ClassifierSpec", "ClassifierModel", "fit", "predict", "accuracy"]

_CHUNK_CELLS = 4_000_000


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    knn_k: int = 3
    tree_max_depth: int = 10
    tree_min_leaf: int = 5
    lda_ridge: float = 1e-6

    def __post_init__(self):
        if self.kind not in ("knn", "lda", "tree"):
            raise ValueError(f"unknown classifier kind {self.kind!r}")
        if self.knn_k < 1:
            raise ValueError("knn_k must be positive")
        if self.tree_max_depth < 1 or self.tree_min_leaf < 1:
            raise ValueError("tree parameters must be positive")
        if self.lda_ridge < 0:
            raise ValueError("lda_ridge must be non-negative")


@dataclass(frozen=True)
class ClassifierModel:
    """A trained predictor.  classes holds the original labels in ascending
    order; payload is kind-specific and uses dense class indices 0..K-1.
    Prediction requires the exact channel set (ids and order) seen at fit."""

    kind: str
    channel_ids: np.ndarray
    classes: np.ndarray
    payload: dict[str, Any]


def _dense_labels(labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    classes, dense = np.unique(labels, return_inverse=True)
    return classes, dense


def fit(spec: ClassifierSpec, train: LabeledMatrix) -> ClassifierModel:
    """Train a model of the requested kind on a labeled matrix."""
    classes, dense = _dense_labels(train.labels)
    if classes.size < 2:
        raise ValueError("training data must contain at least 2 classes")
    if spec.kind == "knn":
        if classes.size == 2 and spec.knn_k % 2 == 0:
            warnings.warn(
                f"knn_k={spec.knn_k} is even with 2 classes; ties resolve to "
                "the smaller label",
                stacklevel=2,
            )
        payload = {"features": train.features, "labels": dense, "k": spec.knn_k}
    elif spec.kind == "lda":
        payload = _fit_lda(train.features, dense, classes.size, spec.lda_ridge)
    else:
        payload = _fit_tree(
            train.features,
            dense,
            train.channel_ids,
            classes.size,
            spec.tree_max_depth,
            spec.tree_min_leaf,
        )
    return ClassifierModel(
        kind=spec.kind,
        channel_ids=train.channel_ids,
        classes=classes,
        payload=payload,
    )


def predict(model: ClassifierModel, test: LabeledMatrix) -> np.ndarray:
    """Predict labels for a matrix with the training-time channel layout."""
    if not np.array_equal(model.channel_ids, test.channel_ids):
        raise ValueError(
            f"channel mismatch: model trained on {model.channel_ids.tolist()}, "
            f"got {test.channel_ids.tolist()}"
        )
    X = test.features
    if model.kind == "knn":
        dense = _predict_knn(model.payload, X)
    elif model.kind == "lda":
        dense = _predict_lda(model.payload, X)
    else:
        dense = _predict_tree(model.payload, X)
    return model.classes[dense]


def accuracy(predicted, truth) -> float:
    """Percent of matching positions."""
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape or predicted.ndim != 1:
        raise ValueError(f"length mismatch: {predicted.shape} vs {truth.shape}")
    if predicted.size == 0:
        raise ValueError("label vectors must be non-empty")
    return 100.0 * float(np.mean(predicted == truth))


# ---------------------------------------------------------------------------
# kNN


def _predict_knn(payload, X: np.ndarray) -> np.ndarray:
    train = payload["features"]
    labels = payload["labels"]
    k = payload["k"]
    n_train = train.shape[0]
    if k > n_train:
        raise ValueError(f"k={k} exceeds {n_train} training rows")
    n_classes = int(labels.max()) + 1
    sq_train = np.einsum("ij,ij->i", train, train)
    out = np.empty(X.shape[0], dtype=np.int64)
    chunk = max(1, _CHUNK_CELLS // max(n_train, 1))
    for start in range(0, X.shape[0], chunk):
        block = X[start : start + chunk]
        d2 = (
            np.einsum("ij,ij->i", block, block)[:, None]
            + sq_train[None, :]
            - 2.0 * (block @ train.T)
        )
        # stable sort: equal distances keep the lower training-row index
        nearest = np.argsort(d2, axis=1, kind="stable")[:, :k]
        votes = labels[nearest]
        counts = np.zeros((block.shape[0], n_classes), dtype=np.int64)
        np.add.at(counts, (np.arange(block.shape[0])[:, None], votes), 1)
        out[start : start + chunk] = np.argmax(counts, axis=1)
    return out


# ---------------------------------------------------------------------------
# LDA


def _fit_lda(X: np.ndarray, dense: np.ndarray, n_classes: int, ridge: float) -> dict:
    n, f = X.shape
    means = np.empty((n_classes, f))
    scatter = np.zeros((f, f))
    priors = np.empty(n_classes)
    for c in range(n_classes):
        rows = X[dense == c]
        if rows.shape[0] < 2:
            raise ValueError(f"lda needs at least 2 rows per class, class {c} has {rows.shape[0]}")
        means[c] = rows.mean(axis=0)
        centered = rows - means[c]
        scatter += centered.T @ centered
        priors[c] = rows.shape[0] / n
    pooled = scatter / (n - n_classes)
    pooled = pooled + ridge * float(np.mean(np.diag(pooled))) * np.eye(f)
    try:
        np.linalg.cholesky(pooled)
    except np.linalg.LinAlgError:
        raise ValueError(
            "pooled covariance is singular even after ridge regularization"
        ) from None
    inv_cov = np.linalg.inv(pooled)
    return {"means": means, "inv_cov": inv_cov, "log_priors": np.log(priors)}


def _predict_lda(payload, X: np.ndarray) -> np.ndarray:
    means = payload["means"]
    inv_cov = payload["inv_cov"]
    proj = inv_cov @ means.T  # (f, K)
    offsets = -0.5 * np.einsum("kf,fk->k", means, proj) + payload["log_priors"]
    scores = X @ proj + offsets[None, :]
    return np.argmax(scores, axis=1)  # first max: smallest class label


# ---------------------------------------------------------------------------
# CART decision tree


def _gini(counts: np.ndarray, total: float) -> float:
    return 1.0 - float(((counts / total) ** 2).sum())


def _best_split(X, dense, idx, channel_ids, min_leaf, n_classes):
    """Best (weighted-gini, channel-id, threshold, column) split of a node.

    Candidates are midpoints between consecutive distinct sorted values;
    both children must keep min_leaf rows.  Ties across columns go to the
    lower channel id, ties within a column to the lower threshold.
    """
    s = idx.size
    best = None
    for p in range(X.shape[1]):
        v = X[idx, p]
        order = np.argsort(v, kind="stable")
        vs = v[order]
        onehot = np.zeros((s, n_classes))
        onehot[np.arange(s), dense[idx][order]] = 1.0
        left_counts = onehot.cumsum(axis=0)
        total = left_counts[-1]
        cuts = np.flatnonzero(vs[:-1] < vs[1:])
        cuts = cuts[(cuts + 1 >= min_leaf) & (s - cuts - 1 >= min_leaf)]
        if cuts.size == 0:
            continue
        nl = (cuts + 1).astype(np.float64)
        nr = s - nl
        cl = left_counts[cuts]
        cr = total[None, :] - cl
        g_left = 1.0 - ((cl / nl[:, None]) ** 2).sum(axis=1)
        g_right = 1.0 - ((cr / nr[:, None]) ** 2).sum(axis=1)
        weighted = (nl * g_left + nr * g_right) / s
        k = int(np.argmin(weighted))  # first min: lowest threshold wins ties
        cand = (
            float(weighted[k]),
            int(channel_ids[p]),
            float((vs[cuts[k]] + vs[cuts[k] + 1]) / 2.0),
            p,
        )
        if best is None or cand[:3] < best[:3]:
            best = cand
    return best


def _fit_tree(X, dense, channel_ids, n_classes, max_depth, min_leaf) -> dict:
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    label: list[int] = []

    def new_node():
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        label.append(-1)
        return len(feature) - 1

    def grow(idx: np.ndarray, depth: int) -> int:
        node = new_node()
        counts = np.bincount(dense[idx], minlength=n_classes)
        label[node] = int(np.argmax(counts))  # majority; first max = smallest
        pure = counts.max() == idx.size
        if depth >= max_depth or pure or idx.size < 2 * min_leaf:
            return node
        split = _best_split(X, dense, idx, channel_ids, min_leaf, n_classes)
        if split is None or split[0] >= _gini(counts, idx.size):
            return node
        _, _, thr, col = split
        go_left = X[idx, col] <= thr
        feature[node] = col
        threshold[node] = thr
        left[node] = grow(idx[go_left], depth + 1)
        right[node] = grow(idx[~go_left], depth + 1)
        return node

    grow(np.arange(X.shape[0]), 0)
    return {
        "feature": np.asarray(feature, dtype=np.int64),
        "threshold": np.asarray(threshold, dtype=np.float64),
        "left": np.asarray(left, dtype=np.int64),
        "right": np.asarray(right, dtype=np.int64),
        "label": np.asarray(label, dtype=np.int64),
    }


def _predict_tree(payload, X: np.ndarray) -> np.ndarray:
    feature = payload["feature"]
    node = np.zeros(X.shape[0], dtype=np.int64)
    rows = np.arange(X.shape[0])
    while True:
        internal = feature[node] >= 0
        if not internal.any():
            return payload["label"][node]
        sub = node[internal]
        go_left = X[rows[internal], feature[sub]] <= payload["threshold"][sub]
        node[internal] = np.where(go_left, payload["left"][sub], payload["right"][sub])
