"""Small dense complex kernels used throughout the package.

Index conventions
-----------------
A 2x2 matrix ``A`` is flattened row by row: component ``2*i + j`` of the
vector holds ``A[i, j]``. The Kronecker product follows the same rule, so
``kron(A, B)[2*i + k, 2*j + l] == A[i, j] * B[k, l]``.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitian

HERMITIAN_TOL = 1e-10
SWEEP_TOL = 1e-14
MAX_SWEEPS = 100
DEGENERACY_TOL = 1e-10


def as_complex(x, shape: tuple[int, ...] | None = None, name: str = "matrix") -> np.ndarray:
    """Return ``x`` as a complex array, rejecting NaN/Inf and wrong shapes."""
    arr = np.asarray(x, dtype=complex)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_real(x, shape: tuple[int, ...] | None = None, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(x)
    if np.iscomplexobj(arr):
        raise TypeError(f"{name} must be real")
    arr = arr.astype(float)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def vectorize(a) -> np.ndarray:
    """Flatten a 2x2 matrix into a 4-vector, row by row."""
    return as_complex(a, (2, 2)).reshape(4).copy()


def matricize(v) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    return as_complex(v, (4,), "vector").reshape(2, 2).copy()


def kron(a, b) -> np.ndarray:
    """Kronecker product with ``c[2i+k, 2j+l] = a[i, j] * b[k, l]``."""
    return np.kron(as_complex(a, (2, 2)), as_complex(b, (2, 2)))


def per(x) -> np.ndarray:
    """Partial row exchange of a 4x4 matrix.

    Writing the row index as ``2n + m`` and the column index as ``2p + q``,
    the result satisfies ``per(X)[2n + p, 2m + q] == X[2n + m, 2p + q]``.
    The map is linear and its own inverse.
    """
    x = as_complex(x, (4, 4))
    return x.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4).copy()


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt scalar product ``Tr(A^dagger B)``."""
    a = as_complex(a)
    b = as_complex(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.sum(a.conj() * b))


def hermitian_defect(h) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def require_hermitian(h, tol: float = HERMITIAN_TOL, name: str = "matrix") -> np.ndarray:
    h = as_complex(h, name=name)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"{name} must be square, got {h.shape}")
    defect = hermitian_defect(h)
    if defect > tol:
        raise NotHermitian(f"{name} is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    return h


def _jacobi(a: np.ndarray, sweep_tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.linalg.norm(a[offdiag]) <= sweep_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                # Unitary acting on the (p, q) plane: phase removal then a real rotation.
                r = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ r
                a[idx, :] = r.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ r
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    return np.diag(a).real.copy(), v


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    mags = np.abs(vec)
    k = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
    out = vec * (vec[k].conjugate() / mags[k])
    out[k] = mags[k]
    return out


def hermitian_eigensystem(
    h,
    *,
    hermitian_tol: float = HERMITIAN_TOL,
    sweep_tol: float = SWEEP_TOL,
    max_sweeps: int = MAX_SWEEPS,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a small Hermitian matrix with cyclic complex Jacobi rotations.

    Args:
        h: Square Hermitian matrix.
        hermitian_tol: Largest accepted ``|H - H^dagger|`` entry.
        sweep_tol: Convergence threshold on the off-diagonal Frobenius norm,
            relative to ``|H|``.
        max_sweeps: Upper bound on full Jacobi sweeps.
        degeneracy_tol: Eigenvalues closer than this (relative to the
            spectral radius) are treated as one cluster.

    Returns:
        ``(eigenvalues, eigenvectors)`` with eigenvalues in descending order
        and eigenvectors stored as columns. Each eigenvector has its
        largest-magnitude component (first one on ties) real and positive.
        Inside a degenerate cluster vectors are ordered by descending
        component magnitudes, compared first component first.

    Raises:
        NotHermitian: if ``h`` is not Hermitian within ``hermitian_tol``.
    """
    h = require_hermitian(h, hermitian_tol)
    a = 0.5 * (h + h.conj().T)
    lam, vecs = _jacobi(a.copy(), sweep_tol, max_sweeps)
    vecs = np.column_stack([_fix_phase(vecs[:, k]) for k in range(vecs.shape[1])])

    order = sorted(range(len(lam)), key=lambda k: -lam[k])
    radius = max(np.max(np.abs(lam)), np.finfo(float).tiny)
    clusters: list[list[int]] = []
    for k in order:
        if clusters and lam[clusters[-1][-1]] - lam[k] <= degeneracy_tol * radius:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    final: list[int] = []
    for cluster in clusters:
        final.extend(sorted(cluster, key=lambda k: tuple(-np.round(np.abs(vecs[:, k]), 12))))
    return lam[final], vecs[:, final]
