"""Regularized ratio-trace eigensolver shared by all discriminant fits.

Every criterion in this package reduces to the same generalized problem:
given a numerator scatter A and a denominator scatter B, find the top-d
eigenpairs of A w = value * (B + ridge * I) w. The regularized
denominator is positive definite for ridge > 0, so the pencil is solved
by Cholesky reduction to a standard symmetric eigenproblem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import eigh, get_lapack_funcs, solve_triangular

__all__ = ["ScatterPair", "EigenBasis", "regularize", "solve_ratio_trace"]


@dataclass(frozen=True)
class ScatterPair:
    """Numerator and denominator scatter matrices of one criterion.

    Both must be square and equally sized; by construction they are
    symmetric positive semidefinite.
    """

    numerator: np.ndarray
    denominator: np.ndarray

    def __post_init__(self):
        num = np.asarray(self.numerator, dtype=np.float64)
        den = np.asarray(self.denominator, dtype=np.float64)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise ValueError(f"numerator must be square, got shape {num.shape}")
        if den.shape != num.shape:
            raise ValueError(
                f"denominator shape {den.shape} does not match numerator "
                f"shape {num.shape}"
            )
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def size(self) -> int:
        return self.numerator.shape[0]


@dataclass(frozen=True)
class EigenBasis:
    """Top generalized eigenpairs.

    `vectors` is n x d with columns orthonormal in the regularized
    denominator inner product; `values` is sorted non-increasing. Each
    column is sign-fixed so its largest-magnitude entry is nonnegative.
    """

    vectors: np.ndarray
    values: np.ndarray


def regularize(s, ridge: float) -> np.ndarray:
    """Return s + ridge * I for a square matrix s."""
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {s.shape}")
    return s + float(ridge) * np.eye(s.shape[0])


def solve_ratio_trace(pair: ScatterPair, d: int, ridge: float = 0.0) -> EigenBasis:
    """Top-d eigenpairs of numerator w = value (denominator + ridge I) w.

    With B = L L^T the pencil reduces to the symmetric standard problem
    on L^-1 A L^-T; eigenvectors y map back through w = L^-T y, which
    makes the returned columns B-orthonormal automatically.

    Raises ValueError when d is outside 1..n and LinAlgError naming the
    failing pivot when the regularized denominator is not positive
    definite.
    """
    n = pair.size
    d = int(d)
    if not 1 <= d <= n:
        raise ValueError(f"subspace dimension {d} out of range 1..{n}")
    a = pair.numerator
    b = regularize(pair.denominator, ridge)
    (potrf,) = get_lapack_funcs(("potrf",), (b,))
    ell, info = potrf(b, lower=True, overwrite_a=False, clean=True)
    if info != 0:
        raise LinAlgError(
            "Cholesky factorization of the regularized denominator failed "
            f"at pivot {info}; it is not positive definite"
        )
    # c = L^-1 A L^-T, symmetrized against roundoff before eigh
    c = solve_triangular(ell, a, lower=True)
    c = solve_triangular(ell, c.T, lower=True).T
    c = 0.5 * (c + c.T)
    values, y = eigh(c)
    # eigh sorts ascending; flip to non-increasing and keep the top d
    values = values[::-1][:d].copy()
    y = y[:, ::-1][:, :d]
    vectors = solve_triangular(ell, y, lower=True, trans="T")
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        if col[np.argmax(np.abs(col))] < 0:
            vectors[:, j] = -col
    return EigenBasis(vectors=vectors, values=values)
