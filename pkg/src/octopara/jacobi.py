"""Cyclic Jacobi eigensolver for real symmetric matrices."""

from __future__ import annotations

import numpy as np


class JacobiNotConverged(RuntimeError):
    pass


def jacobi_eigh(A, rtol: float = 1e-13, max_sweeps: int = 100):
    """Eigenvalues (ascending) and orthonormal eigenvectors of symmetric ``A``.

    Sweeps over all (p, q) pairs in row order, zeroing each off-diagonal entry
    by a plane rotation, until the off-diagonal Frobenius norm falls below
    ``rtol * ||A||_F``.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    A = 0.5 * (A + A.T)
    N = A.shape[0]
    V = np.eye(N)
    scale = np.linalg.norm(A)
    if N < 2 or scale == 0.0:
        return np.diag(A).copy(), V
    target = rtol * scale
    skip = target / N

    def off(M):
        return np.linalg.norm(M - np.diag(np.diag(M)))

    for sweep in range(max_sweeps):
        if off(A) <= target:
            break
        for p in range(N - 1):
            for q in range(p + 1, N):
                apq = A[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        if off(A) > target:
            raise JacobiNotConverged(f"off-diagonal norm {off(A):.3e} after {max_sweeps} sweeps")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
