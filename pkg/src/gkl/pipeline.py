"""Classification pipeline: deterministic split, precomputed-kernel SVM
trained by sequential minimal optimization, one-vs-one multiclass, accuracy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidShape, InvalidSpec, NumericalError

_SMO_TOLERANCE = 1e-3
_SMO_MAX_ITERATIONS = 100_000


def train_test_split(n: int, test_fraction: float = 0.1, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Disjoint covering (train, test) index arrays from a seeded shuffle.

    Test size is round(n * test_fraction) clamped to [1, n-1].
    """
    if n < 2:
        raise InvalidSpec(f"need at least 2 items to split, got {n}")
    if not (0 < test_fraction < 1):
        raise InvalidSpec(f"test_fraction must be in (0, 1), got {test_fraction}")
    size = int(math.floor(n * test_fraction + 0.5))
    size = min(max(size, 1), n - 1)
    perm = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF).permutation(n)
    return perm[size:], perm[:size]


@dataclass(frozen=True)
class SvmModel:
    """Soft-margin dual solution for a precomputed kernel."""

    alpha: np.ndarray
    y: np.ndarray
    bias: float
    c: float

    @property
    def support_indices(self) -> np.ndarray:
        return np.nonzero(self.alpha > 0)[0]

    def dual_objective(self, k: np.ndarray) -> float:
        ay = self.alpha * self.y
        return float(self.alpha.sum() - 0.5 * ay @ k @ ay)


def _check_kernel_matrix(k: np.ndarray) -> None:
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise InvalidShape(f"training kernel matrix must be square, got {k.shape}")
    scale = max(1.0, float(np.abs(k).max())) if k.size else 1.0
    if float(np.abs(k - k.T).max()) > 1e-8 * scale:
        raise NumericalError("training kernel matrix is not symmetric")
    eigenvalues = np.linalg.eigvalsh((k + k.T) / 2.0)
    lam_max = float(eigenvalues[-1]) if eigenvalues.size else 0.0
    if eigenvalues.size and eigenvalues[0] < -1e-8 * max(1.0, lam_max):
        raise NumericalError(
            f"training kernel matrix is not PSD: min eigenvalue {eigenvalues[0]:.3e}"
        )


def svm_train(
    k_train: np.ndarray,
    y: np.ndarray,
    c: float = 1.0,
    tolerance: float = _SMO_TOLERANCE,
    max_iterations: int = _SMO_MAX_ITERATIONS,
) -> SvmModel:
    """Solve the soft-margin dual by SMO with maximal-violating-pair selection.

    The dual is max sum(alpha) - 1/2 alpha^T (yy^T * K) alpha subject to
    0 <= alpha <= C and sum(alpha * y) = 0, solved to the KKT tolerance.
    """
    k = np.asarray(k_train, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or y.shape[0] != k.shape[0]:
        raise InvalidShape(f"labels length {y.shape} does not match matrix {k.shape}")
    if c <= 0:
        raise InvalidSpec(f"box constraint C must be positive, got {c}")
    if set(np.unique(y)) != {-1.0, 1.0}:
        raise InvalidSpec("labels must contain both classes, encoded as -1/+1")
    _check_kernel_matrix(k)

    n = k.shape[0]
    q = k * np.outer(y, y)
    alpha = np.zeros(n)
    grad = -np.ones(n)

    for _ in range(max_iterations):
        v = -y * grad
        up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
        low = ((y < 0) & (alpha < c)) | ((y > 0) & (alpha > 0))
        if not up.any() or not low.any():
            break
        i = int(np.nonzero(up)[0][np.argmax(v[up])])
        j = int(np.nonzero(low)[0][np.argmin(v[low])])
        if v[i] - v[j] <= tolerance:
            break
        eta = max(k[i, i] + k[j, j] - 2.0 * k[i, j], 1e-12)
        s = y[i] * y[j]
        if s < 0:
            gamma = alpha[j] - alpha[i]
            lo, hi = max(0.0, gamma), min(c, c + gamma)
        else:
            gamma = alpha[i] + alpha[j]
            lo, hi = max(0.0, gamma - c), min(c, gamma)
        new_j = min(max(alpha[j] + y[j] * (v[j] - v[i]) / eta, lo), hi)
        # derive alpha[i] from the preserved linear constraint rather than by
        # increment, so hitting a box corner leaves exact 0.0 / C values
        new_i = (gamma - new_j) if s > 0 else (new_j - gamma)
        new_i = min(max(new_i, 0.0), c)
        delta_j = new_j - alpha[j]
        delta_i = new_i - alpha[i]
        if delta_j == 0.0 and delta_i == 0.0:
            break
        alpha[i] = new_i
        alpha[j] = new_j
        grad += q[:, i] * delta_i + q[:, j] * delta_j
    else:
        raise NumericalError(f"SMO did not converge within {max_iterations} iterations")

    v = -y * grad
    free = (alpha > 0) & (alpha < c)
    if free.any():
        bias = float(v[free].mean())
    else:
        up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
        low = ((y < 0) & (alpha < c)) | ((y > 0) & (alpha > 0))
        hi = float(v[up].max()) if up.any() else 0.0
        lo = float(v[low].min()) if low.any() else 0.0
        bias = (hi + lo) / 2.0
    return SvmModel(alpha=alpha, y=y, bias=bias, c=float(c))


def svm_predict(model: SvmModel, k_query_train: np.ndarray) -> np.ndarray:
    """Predicted -1/+1 labels; a zero decision value maps to +1."""
    k = np.asarray(k_query_train, dtype=float)
    if k.ndim != 2 or k.shape[1] != model.alpha.shape[0]:
        raise InvalidShape(
            f"query matrix must have {model.alpha.shape[0]} columns, got {k.shape}"
        )
    scores = k @ (model.alpha * model.y) + model.bias
    return np.where(scores >= 0, 1, -1)


def decision_values(model: SvmModel, k_query_train: np.ndarray) -> np.ndarray:
    k = np.asarray(k_query_train, dtype=float)
    return k @ (model.alpha * model.y) + model.bias


@dataclass(frozen=True)
class PairProblem:
    class_lo: int
    class_hi: int
    indices: np.ndarray
    model: SvmModel


@dataclass(frozen=True)
class OneVsOneModel:
    classes: tuple
    problems: tuple[PairProblem, ...]


def one_vs_one(k_train: np.ndarray, y, c: float = 1.0) -> OneVsOneModel:
    """Train one binary SVM per class pair; smaller class literal maps to -1."""
    y = np.asarray(y)
    classes = sorted(set(y.tolist()))
    if len(classes) < 2:
        raise InvalidSpec("need at least two classes")
    k = np.asarray(k_train, dtype=float)
    problems = []
    for a, b in itertools.combinations(classes, 2):
        idx = np.nonzero((y == a) | (y == b))[0]
        sub_y = np.where(y[idx] == a, -1.0, 1.0)
        model = svm_train(k[np.ix_(idx, idx)], sub_y, c)
        problems.append(PairProblem(class_lo=a, class_hi=b, indices=idx, model=model))
    return OneVsOneModel(classes=tuple(classes), problems=tuple(problems))


def one_vs_one_predict(ensemble: OneVsOneModel, k_query_train: np.ndarray) -> np.ndarray:
    """Majority vote over the pairwise models; ties break to the lowest class id."""
    k = np.asarray(k_query_train, dtype=float)
    votes = np.zeros((k.shape[0], len(ensemble.classes)), dtype=int)
    position = {cls: p for p, cls in enumerate(ensemble.classes)}
    for problem in ensemble.problems:
        pred = svm_predict(problem.model, k[:, problem.indices])
        votes[pred < 0, position[problem.class_lo]] += 1
        votes[pred > 0, position[problem.class_hi]] += 1
    winners = np.argmax(votes, axis=1)
    return np.array([ensemble.classes[w] for w in winners])


def accuracy(y_true, y_pred) -> float:
    """Fraction of matching entries."""
    a = np.asarray(y_true)
    b = np.asarray(y_pred)
    if a.shape != b.shape:
        raise InvalidShape(f"length mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        raise InvalidShape("empty label vectors")
    return float(np.mean(a == b))
