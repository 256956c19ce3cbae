"""Dense complex matrix helpers and a cyclic Jacobi eigensolver for Hermitian matrices."""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import connected_components


class NotConvergedError(RuntimeError):
    pass


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def is_unitary(a: np.ndarray, tol: float = 1e-12) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a @ a.conj().T - np.eye(a.shape[0]))) <= tol)


def is_psd(a: np.ndarray, tol: float = 1e-12) -> bool:
    if not is_hermitian(a, tol):
        return False
    return bool(np.linalg.eigvalsh(a)[0] >= -tol)


def is_density_matrix(a: np.ndarray, tol: float = 1e-8) -> bool:
    a = np.asarray(a)
    return is_psd(a, tol) and abs(np.trace(a) - 1.0) <= tol


def off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def kron(*ops: np.ndarray) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def _jacobi_block(a: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = a.astype(complex, copy=True)
    v = np.eye(n, dtype=complex)
    if n == 1:
        return a.real.diagonal().copy(), v
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        if off_diagonal_norm(a) < tol * scale:
            return a.diagonal().real.copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                c = a[p, q]
                mag = abs(c)
                if mag < 1e-300:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                # Phase rotation makes the (p, q) entry real, then a real Givens rotation zeroes it.
                phase = c / mag
                theta = (aqq - app) / (2.0 * mag)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                cs = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * cs
                rot = np.array([[cs, sn], [-sn * phase.conjugate(), cs * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ rot
    if off_diagonal_norm(a) < tol * scale:
        return a.diagonal().real.copy(), v
    raise NotConvergedError(f"Jacobi did not converge in {max_sweeps} sweeps")


def jacobi_eigh(
    a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60, split_blocks: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a Hermitian matrix with cyclic Jacobi rotations.

    Sweeps until the Frobenius norm of the off-diagonal part drops below
    ``tol * max(1, ||a||_F)``.  When ``split_blocks`` is set, the matrix is
    first partitioned into the connected components of its nonzero
    pattern and every block is rotated separately.  Couplings smaller than
    ``tol * scale / n`` count as zero, so the dropped part has Frobenius norm
    below the convergence threshold itself.

    Returns
    -------
    w : ndarray
        Eigenvalues sorted ascending.
    v : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """
    a = np.asarray(a)
    if not is_hermitian(a, tol=1e-10 * max(1.0, float(np.abs(a).max(initial=0.0)))):
        raise ValueError("jacobi_eigh expects a Hermitian matrix")
    n = a.shape[0]
    a = (a + a.conj().T) / 2
    if split_blocks and n > 1:
        scale = max(1.0, float(np.linalg.norm(a)))
        ncomp, labels = connected_components(np.abs(a) > tol * scale / n, directed=False)
    else:
        ncomp, labels = 1, np.zeros(n, dtype=int)
    w = np.empty(n)
    v = np.zeros((n, n), dtype=complex)
    for comp in range(ncomp):
        idx = np.nonzero(labels == comp)[0]
        wb, vb = _jacobi_block(a[np.ix_(idx, idx)], tol, max_sweeps)
        w[idx] = wb
        v[np.ix_(idx, idx)] = vb
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def jacobi_eigvalsh(a: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    return jacobi_eigh(a, tol=tol)[0]
