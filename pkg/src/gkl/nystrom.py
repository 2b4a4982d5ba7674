"""Nystrom low-rank approximation of a PSD kernel matrix.

Landmarks are drawn uniformly without replacement; the landmark block is
eigendecomposed and directions below a relative cutoff are discarded so the
inverse square root stays bounded. The approximate kernel is the Gram matrix
of the explicit embedding, hence PSD by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateKernel, InvalidShape, InvalidSpec, NumericalError

#: Relative eigenvalue cutoff below which directions are treated as noise.
EIGENVALUE_CUTOFF = 1e-10


@dataclass(frozen=True)
class NystromState:
    """Fitted landmark selection and embedding map.

    ``coefficients`` maps a row of kernel values against the landmarks to the
    embedding: phi = k_to_landmarks @ coefficients.
    """

    landmarks: np.ndarray
    eigenvalues: np.ndarray
    coefficients: np.ndarray

    @property
    def n_components(self) -> int:
        return len(self.landmarks)

    @property
    def embedding_dim(self) -> int:
        return self.coefficients.shape[1]


def nystrom_fit(k_fit: np.ndarray, q: int, seed: int = 0) -> NystromState:
    """Select q landmarks from an n x n PSD fit matrix and build the embedding map."""
    k_fit = np.asarray(k_fit, dtype=float)
    if k_fit.ndim != 2 or k_fit.shape[0] != k_fit.shape[1]:
        raise InvalidShape(f"fit matrix must be square, got {k_fit.shape}")
    n = k_fit.shape[0]
    if not (1 <= q <= n):
        raise InvalidSpec(f"nystrom components must satisfy 1 <= q <= {n}, got {q}")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    landmarks = np.sort(rng.choice(n, size=q, replace=False))
    w = k_fit[np.ix_(landmarks, landmarks)]
    w = (w + w.T) / 2.0
    eigenvalues, vectors = np.linalg.eigh(w)
    lam_max = float(eigenvalues[-1])
    if eigenvalues[0] < -1e-8 * max(1.0, abs(lam_max)):
        raise NumericalError(
            f"landmark block is not PSD: min eigenvalue {eigenvalues[0]:.3e}"
        )
    if lam_max <= 0:
        raise DegenerateKernel("no landmark eigenvalue above the cutoff")
    keep = eigenvalues > EIGENVALUE_CUTOFF * lam_max
    if not keep.any():
        raise DegenerateKernel("no landmark eigenvalue above the cutoff")
    kept = eigenvalues[keep]
    coefficients = vectors[:, keep] / np.sqrt(kept)
    return NystromState(
        landmarks=landmarks,
        eigenvalues=kept[::-1].copy(),
        coefficients=coefficients,
    )


def nystrom_embed(state: NystromState, k_to_landmarks: np.ndarray) -> np.ndarray:
    """Embed graphs given their kernel values against the landmark graphs.

    The approximate kernel between any two collections is the dot product of
    their embeddings.
    """
    k = np.asarray(k_to_landmarks, dtype=float)
    if k.ndim != 2 or k.shape[1] != state.n_components:
        raise InvalidShape(
            f"expected {state.n_components} landmark columns, got shape {k.shape}"
        )
    return k @ state.coefficients
