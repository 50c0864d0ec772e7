"""Spectral (Cloude) decomposition of a Mueller matrix and the Kraus form of the channel.

The Hermitian matrix ``H`` of a Mueller matrix ``M`` is diagonalised,
``H = sum lambda_a v_a v_a^dagger``. Reading each eigenvector as a 2x2 Jones
matrix ``T_a`` gives ``M = sum lambda_a Phi_a`` where every ``Phi_a`` is the
Mueller matrix of ``T_a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import as_complex, hermitian_eigensystem, matricize
from .bases import LAMBDA
from .errors import NonphysicalMatrix
from .mueller import h_from_mueller, mueller_from_jones

CLAMP_TOL = 1e-9
ZERO_TOL = 1e-13
TRACE_PRESERVING_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CloudeDecomposition:
    """Result of :func:`cloude_decompose`.

    Arrays are indexed by the eigenvalue number first: ``jones_factors[a]``
    is ``T_a`` and ``eigvecs_h[a]`` is ``v_a``.
    """

    lambdas: np.ndarray
    jones_factors: np.ndarray
    mj_factors: np.ndarray
    eigvecs_c: np.ndarray
    eigvecs_h: np.ndarray
    m00: float

    def reconstruct(self) -> np.ndarray:
        return np.einsum("a,aij->ij", self.lambdas, self.mj_factors)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Operator-sum form ``J' = sum A_a J A_a^dagger``.

    ``probabilities[a] = lambda_a / (2 M00)`` and ``scaled[a] = sqrt(2 M00) T_a``
    so that ``ops[a] = sqrt(probabilities[a]) * scaled[a]``.
    """

    ops: np.ndarray
    probabilities: np.ndarray
    scaled: np.ndarray

    def __len__(self) -> int:
        return len(self.ops)


class TraceCheck(NamedTuple):
    preserving: bool
    defect: np.ndarray


def cloude_decompose(m) -> CloudeDecomposition:
    """Split ``M`` into at most four weighted Mueller-Jones matrices.

    Non-physical input is accepted; its negative eigenvalues are reported
    as they are.
    """
    h = h_from_mueller(m)
    lam, vecs = hermitian_eigensystem(h)
    v = vecs.T.copy()
    jones = np.array([matricize(x) for x in v])
    phi = np.array([mueller_from_jones(t) for t in jones])
    u = v @ LAMBDA.conj()  # rows are Lambda^dagger v_a
    return CloudeDecomposition(
        lambdas=lam,
        jones_factors=jones,
        mj_factors=phi,
        eigvecs_c=u,
        eigvecs_h=v,
        m00=float(np.asarray(m, dtype=float)[0, 0]),
    )


def kraus_from_decomposition(
    d: CloudeDecomposition, m00: float | None = None, tol: float = CLAMP_TOL
) -> KrausSet:
    """Build Kraus operators ``A_a = sqrt(lambda_a) T_a``.

    Eigenvalues in ``[-tol * Tr H, 0)`` are treated as zero and terms with a
    vanishing eigenvalue are dropped, so a deterministic matrix yields a
    single operator.

    Raises:
        NonphysicalMatrix: if an eigenvalue is below ``-tol * Tr H``.
    """
    m00 = d.m00 if m00 is None else float(m00)
    if not m00 > 0:
        raise NonphysicalMatrix(f"M00 must be positive, got {m00}")
    trace = float(np.sum(d.lambdas))
    limit = tol * abs(trace)
    if np.any(d.lambdas < -limit):
        raise NonphysicalMatrix(
            f"H has eigenvalue {d.lambdas.min():.6g} below -{limit:.3g}"
        )
    keep = d.lambdas > ZERO_TOL * abs(trace)
    lam = d.lambdas[keep]
    t = d.jones_factors[keep]
    return KrausSet(
        ops=np.sqrt(lam)[:, None, None] * t,
        probabilities=lam / (2.0 * m00),
        scaled=np.sqrt(2.0 * m00) * t,
    )


def _ops(k: "KrausSet | Sequence") -> np.ndarray:
    ops = k.ops if isinstance(k, KrausSet) else k
    ops = as_complex(ops, name="Kraus operators")
    if ops.ndim != 3 or ops.shape[1:] != (2, 2):
        raise ValueError(f"Kraus operators must have shape (K, 2, 2), got {ops.shape}")
    return ops


def apply_channel(j, k: "KrausSet | Sequence") -> np.ndarray:
    """Act on a coherency matrix: ``J' = sum A J A^dagger``."""
    j = as_complex(j, (2, 2), "coherency matrix")
    ops = _ops(k)
    return np.einsum("aij,jk,alk->il", ops, j, ops.conj())


def check_trace_preserving(k: "KrausSet | Sequence", tol: float = TRACE_PRESERVING_TOL) -> TraceCheck:
    """Report ``sum A^dagger A - I`` and whether its entries stay below ``tol``."""
    ops = _ops(k)
    defect = np.einsum("aji,ajk->ik", ops.conj(), ops) - np.eye(2)
    return TraceCheck(bool(np.max(np.abs(defect)) < tol), defect)
