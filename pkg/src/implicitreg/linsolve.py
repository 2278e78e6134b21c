"""Small dense linear algebra: the normal-equation solve shared by every
fitter, plus the explicit 2x2 determinant-ratio solve used as a cross check.

Systems here are tiny (m <= ~12), so Gaussian elimination with partial
pivoting on the Gram matrix is plenty; no QR/SVD, no sparsity.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularSystem

TOL_SINGULAR_FACTOR = 1e-12


def singular_tolerance(A: np.ndarray) -> float:
    """Scale-aware rank tolerance: 1e-12 times the largest entry magnitude."""
    return TOL_SINGULAR_FACTOR * max(float(np.max(np.abs(A))), 1e-300)


def gauss_solve(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve A X = B by Gaussian elimination with partial pivoting.

    B may be a vector or a matrix of right-hand sides.  Raises
    SingularSystem with the offending pivot index when the best available
    pivot falls below the scale-aware tolerance.
    """
    A = np.array(A, dtype=float)
    B = np.array(B, dtype=float)
    vector = B.ndim == 1
    if vector:
        B = B[:, None]
    m = A.shape[0]
    if A.shape != (m, m) or B.shape[0] != m:
        raise ValueError("shape mismatch")
    tol = singular_tolerance(A)
    for k in range(m):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if abs(A[p, k]) < tol:
            raise SingularSystem(pivot_index=k)
        if p != k:
            A[[k, p]] = A[[p, k]]
            B[[k, p]] = B[[p, k]]
        for i in range(k + 1, m):
            if A[i, k] != 0.0:
                lam = A[i, k] / A[k, k]
                A[i, k + 1:] -= lam * A[k, k + 1:]
                A[i, k] = 0.0
                B[i] -= lam * B[k]
    X = np.zeros_like(B)
    for k in range(m - 1, -1, -1):
        X[k] = (B[k] - A[k, k + 1:] @ X[k + 1:]) / A[k, k]
    return X[:, 0] if vector else X


def solve_normal(W: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve the normal equations W'W c = W't.

    Returns the coefficients and the explicit Gram inverse (needed for the
    coefficient covariance).  Both come from one elimination pass over the
    Gram system augmented with the identity.
    """
    W = np.asarray(W, dtype=float)
    t = np.asarray(t, dtype=float)
    m = W.shape[1]
    G = W.T @ W
    rhs = W.T @ t
    aug = np.column_stack([rhs, np.eye(m)])
    X = gauss_solve(G, aug)
    return X[:, 0], X[:, 1:]


def cramer_2x2(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Explicit determinant-ratio solve; independent of gauss_solve."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det) < singular_tolerance(A):
        raise SingularSystem(message="2x2 determinant below tolerance")
    n0 = b[0] * A[1, 1] - A[0, 1] * b[1]
    n1 = A[0, 0] * b[1] - b[0] * A[1, 0]
    return np.array([n0 / det, n1 / det])
