"""Comparison classifier families used alongside the random forest.

k-nearest neighbours, logistic regression, and the linear SVM operate
on z-score standardized features (statistics from the training set);
the single decision tree reuses the forest's tree grower without
bootstrap and with every feature eligible at each node.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SingleClassData
from .features import FeatureVector
from .forest import (
    BOT,
    HUMAN,
    UNKNOWN,
    LabeledExample,
    Prediction,
    Split,
    TreeNode,
    _grow,
    _to_arrays,
    _tree_votes,
)


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    scale: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "Standardizer":
        scale = X.std(axis=0)
        scale = np.where(scale == 0.0, 1.0, scale)
        return cls(mean=X.mean(axis=0), scale=scale)

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.scale


def _check_two_classes(y: np.ndarray):
    if len(np.unique(y)) < 2:
        raise SingleClassData("training data must contain both classes")


def _predict_one(model, features: FeatureVector | None) -> Prediction:
    if features is None:
        return Prediction(UNKNOWN, 0.0)
    X = features.as_array().reshape(1, -1)
    label = int(model.predict_labels(X)[0])
    confidence = float(model.vote_fractions(X)[0])
    return Prediction(BOT if label == 1 else HUMAN, confidence)


@dataclass(frozen=True)
class KnnModel:
    X: np.ndarray  # standardized training features
    y: np.ndarray
    k: int
    scaler: Standardizer

    def predict_labels(self, X: np.ndarray) -> np.ndarray:
        return (self._bot_fraction(X) > 0.5).astype(np.int64)

    def vote_fractions(self, X: np.ndarray) -> np.ndarray:
        frac = self._bot_fraction(X)
        return np.maximum(frac, 1.0 - frac)

    def _bot_fraction(self, X: np.ndarray) -> np.ndarray:
        Z = self.scaler.transform(X)
        d2 = ((Z[:, None, :] - self.X[None, :, :]) ** 2).sum(axis=2)
        # stable sort keeps training order on distance ties
        nearest = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        return self.y[nearest].mean(axis=1)

    def predict(self, features: FeatureVector | None) -> Prediction:
        return _predict_one(self, features)


def train_knn(data: list[LabeledExample], k: int = 5) -> KnnModel:
    X, y = _to_arrays(data)
    _check_two_classes(y)
    if k < 1 or k > len(y):
        raise ValueError("k must be in [1, n_examples]")
    scaler = Standardizer.fit(X)
    return KnnModel(X=scaler.transform(X), y=y, k=k, scaler=scaler)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass(frozen=True)
class LogisticModel:
    weights: np.ndarray
    bias: float
    scaler: Standardizer
    converged: bool
    n_iter: int

    def _scores(self, X: np.ndarray) -> np.ndarray:
        return self.scaler.transform(X) @ self.weights + self.bias

    def predict_labels(self, X: np.ndarray) -> np.ndarray:
        return (self._scores(X) > 0.0).astype(np.int64)

    def vote_fractions(self, X: np.ndarray) -> np.ndarray:
        p = _sigmoid(self._scores(X))
        return np.maximum(p, 1.0 - p)

    def predict(self, features: FeatureVector | None) -> Prediction:
        return _predict_one(self, features)


def train_logistic(
    data: list[LabeledExample],
    l2: float = 1e-3,
    lr: float = 1.0,
    tol: float = 1e-6,
    max_iter: int = 10000,
) -> LogisticModel:
    """Minimize L2-penalized binary cross-entropy by gradient descent."""
    X, y = _to_arrays(data)
    _check_two_classes(y)
    scaler = Standardizer.fit(X)
    Z = scaler.transform(X)
    n = len(y)
    w = np.zeros(Z.shape[1])
    b = 0.0
    converged = False
    iteration = 0
    for iteration in range(1, max_iter + 1):
        residual = _sigmoid(Z @ w + b) - y
        grad_w = Z.T @ residual / n + l2 * w
        grad_b = residual.mean()
        w -= lr * grad_w
        b -= lr * grad_b
        if max(np.abs(grad_w).max(), abs(grad_b)) < tol:
            converged = True
            break
    if not converged:
        warnings.warn("logistic regression hit the iteration cap without converging")
    return LogisticModel(weights=w, bias=float(b), scaler=scaler, converged=converged, n_iter=iteration)


@dataclass(frozen=True)
class LinearSvmModel:
    weights: np.ndarray
    bias: float
    scaler: Standardizer
    converged: bool
    n_iter: int

    def _scores(self, X: np.ndarray) -> np.ndarray:
        return self.scaler.transform(X) @ self.weights + self.bias

    def predict_labels(self, X: np.ndarray) -> np.ndarray:
        return (self._scores(X) > 0.0).astype(np.int64)

    def vote_fractions(self, X: np.ndarray) -> np.ndarray:
        p = _sigmoid(self._scores(X))
        return np.maximum(p, 1.0 - p)

    def predict(self, features: FeatureVector | None) -> Prediction:
        return _predict_one(self, features)


def train_linear_svm(
    data: list[LabeledExample],
    l2: float = 1e-2,
    tol: float = 1e-8,
    max_iter: int = 5000,
) -> LinearSvmModel:
    """Minimize hinge loss plus L2 penalty by subgradient descent.

    Full-batch updates with the 1/(l2 * t) step schedule; convergence
    is declared when the objective stops improving.
    """
    X, y = _to_arrays(data)
    _check_two_classes(y)
    scaler = Standardizer.fit(X)
    Z = scaler.transform(X)
    n = len(y)
    sy = 2.0 * y - 1.0
    w = np.zeros(Z.shape[1])
    b = 0.0
    converged = False
    iteration = 0
    prev_obj = np.inf
    for iteration in range(1, max_iter + 1):
        margins = sy * (Z @ w + b)
        violating = margins < 1.0
        obj = np.maximum(0.0, 1.0 - margins).mean() + 0.5 * l2 * (w @ w)
        if abs(prev_obj - obj) < tol * max(1.0, abs(prev_obj)):
            converged = True
            break
        prev_obj = obj
        step = 1.0 / (l2 * iteration)
        grad_w = l2 * w - Z[violating].T @ sy[violating] / n
        grad_b = -sy[violating].sum() / n
        w -= step * grad_w
        b -= step * grad_b
    if not converged:
        warnings.warn("linear SVM hit the iteration cap without converging")
    return LinearSvmModel(weights=w, bias=float(b), scaler=scaler, converged=converged, n_iter=iteration)


@dataclass(frozen=True)
class SingleTreeModel:
    tree: TreeNode
    max_depth: int
    criterion: str

    def predict_labels(self, X: np.ndarray) -> np.ndarray:
        return _tree_votes(self.tree, X)

    def vote_fractions(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(len(X))
        for i, x in enumerate(X):
            node = self.tree
            while isinstance(node, Split):
                node = node.left if x[node.feature] <= node.threshold else node.right
            humans, bots = node.counts
            out[i] = max(humans, bots) / (humans + bots)
        return out

    def predict(self, features: FeatureVector | None) -> Prediction:
        return _predict_one(self, features)


def train_single_tree(
    data: list[LabeledExample], max_depth: int = 8, criterion: str = "entropy"
) -> SingleTreeModel:
    """One tree on the full data, all four features eligible per node."""
    X, y = _to_arrays(data)
    _check_two_classes(y)
    rng = np.random.default_rng(0)  # unused: all features are always candidates
    tree = _grow(X, y, 0, max_depth, X.shape[1], rng, criterion)
    return SingleTreeModel(tree=tree, max_depth=max_depth, criterion=criterion)
