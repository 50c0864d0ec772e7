"""Mueller matrices and their Hermitian companions H and C.

For a Jones matrix ``T`` the Mueller matrix is
``M[mu, nu] = Tr(sigma_mu T sigma_nu T^dagger)``. Three further 4x4 objects
carry the same information:

* ``F = Lambda M Lambda^dagger`` (equal to ``T kron conj(T)`` for a
  deterministic device), the Mueller matrix in the standard basis;
* ``H = per(F) = sum M[mu, nu] sigma_mu kron conj(sigma_nu)``, Hermitian and
  positive semidefinite exactly when ``M`` is completely positive;
* ``C = Lambda^dagger H Lambda = sum M[mu, nu] Gamma_{mu nu}``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .algebra import as_complex, as_real, hermitian_eigensystem, per, require_hermitian
from .bases import GAMMA, LAMBDA, PAULI_UNNORMALIZED

REAL_TOL = 1e-12
HERMITIAN_TOL = 1e-12
MUELLER_JONES_TOL = 1e-10
CP_TOL = 1e-9

_RAW = np.array(PAULI_UNNORMALIZED)
_PAULI_KRON = np.array([np.kron(a, b.conj()) / 2 for a in _RAW for b in _RAW])
_GAMMA = np.array(GAMMA)


def _drop_imag(x: np.ndarray, tol: float, what: str) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(x))))
    residue = float(np.max(np.abs(x.imag)))
    if residue > tol * scale:
        raise ValueError(f"{what} has imaginary residue {residue:.3e}")
    return x.real.copy()


def _jones(t) -> np.ndarray:
    return as_complex(t, (2, 2), "Jones matrix")


def _mueller(m) -> np.ndarray:
    return as_real(m, (4, 4), "Mueller matrix")


def mueller_from_jones(t, tol: float = REAL_TOL) -> np.ndarray:
    """Mueller matrix of a Jones device from the trace formula."""
    t = _jones(t)
    m = np.einsum("aij,jk,bkl,il->ab", _RAW, t, _RAW, t.conj()) / 2
    return _drop_imag(m, tol, "Mueller matrix")


def mueller_from_jones_kron(t, tol: float = REAL_TOL) -> np.ndarray:
    """Mueller matrix as ``Lambda^dagger (T kron conj(T)) Lambda``."""
    t = _jones(t)
    return _drop_imag(LAMBDA.conj().T @ np.kron(t, t.conj()) @ LAMBDA, tol, "Mueller matrix")


def jones_pauli_components(t) -> np.ndarray:
    """``c[alpha] = Tr(sigma_alpha T)``, so that ``T = sum c[alpha] sigma_alpha``."""
    return np.einsum("aij,ji->a", _RAW, _jones(t)) / np.sqrt(2.0)


def mueller_from_jones_gamma(t, tol: float = REAL_TOL) -> np.ndarray:
    """Mueller matrix as ``Tr(C Gamma_{mu nu})`` with ``C = c c^dagger``."""
    c = jones_pauli_components(t)
    cc = np.outer(c, c.conj())
    return _drop_imag(mueller_from_c_unchecked(cc), tol, "Mueller matrix")


def f_from_mueller(m) -> np.ndarray:
    """``F = Lambda M Lambda^dagger``, the Mueller matrix in the standard basis.

    Evaluated as ``per(H)``, which keeps dyadic inputs exact.
    """
    return per(h_from_mueller(m))


mueller_to_standard = f_from_mueller


def standard_to_mueller(mm, tol: float = REAL_TOL) -> np.ndarray:
    """Inverse of :func:`mueller_to_standard`: ``M = Lambda^dagger F Lambda``."""
    mm = as_complex(mm, (4, 4), "standard-basis Mueller matrix")
    return _drop_imag(LAMBDA.conj().T @ mm @ LAMBDA, tol, "Mueller matrix")


def h_from_mueller(m) -> np.ndarray:
    """``H = sum M[mu, nu] sigma_mu kron conj(sigma_nu)``."""
    return np.einsum("a,aij->ij", _mueller(m).reshape(16).astype(complex), _PAULI_KRON)


def h_from_mueller_table(m) -> np.ndarray:
    """Element-by-element expression of H in terms of the Mueller entries.

    Independent of the basis tables; used as a cross-check of
    :func:`h_from_mueller`.
    """
    M = _mueller(m)
    i = 1j
    h = np.array(
        [
            [
                M[0, 0] + M[0, 3] + M[3, 0] + M[3, 3],
                M[0, 1] + M[3, 1] + i * M[0, 2] + i * M[3, 2],
                M[1, 0] + M[1, 3] - i * M[2, 0] - i * M[2, 3],
                M[1, 1] + M[2, 2] + i * M[1, 2] - i * M[2, 1],
            ],
            [
                M[0, 1] + M[3, 1] - i * M[0, 2] - i * M[3, 2],
                M[0, 0] - M[0, 3] + M[3, 0] - M[3, 3],
                M[1, 1] - M[2, 2] - i * M[1, 2] - i * M[2, 1],
                M[1, 0] - M[1, 3] - i * M[2, 0] + i * M[2, 3],
            ],
            [
                M[1, 0] + M[1, 3] + i * M[2, 0] + i * M[2, 3],
                M[1, 1] - M[2, 2] + i * M[1, 2] + i * M[2, 1],
                M[0, 0] + M[0, 3] - M[3, 0] - M[3, 3],
                M[0, 1] - M[3, 1] + i * M[0, 2] - i * M[3, 2],
            ],
            [
                M[1, 1] + M[2, 2] - i * M[1, 2] + i * M[2, 1],
                M[1, 0] - M[1, 3] + i * M[2, 0] - i * M[2, 3],
                M[0, 1] - M[3, 1] - i * M[0, 2] + i * M[3, 2],
                M[0, 0] - M[0, 3] - M[3, 0] + M[3, 3],
            ],
        ],
        dtype=complex,
    )
    return h / 2


def mueller_from_h(h, tol: float = REAL_TOL) -> np.ndarray:
    """Recover M from H through ``F = per(H)``."""
    return standard_to_mueller(per(as_complex(h, (4, 4), "H matrix")), tol)


def c_from_mueller(m) -> np.ndarray:
    """``C = sum M[mu, nu] Gamma_{mu nu}``."""
    return np.einsum("a,aij->ij", _mueller(m).reshape(16).astype(complex), _GAMMA)


def c_from_h(h) -> np.ndarray:
    """``C = Lambda^dagger H Lambda``."""
    return LAMBDA.conj().T @ as_complex(h, (4, 4), "H matrix") @ LAMBDA


def h_from_c(c) -> np.ndarray:
    return LAMBDA @ as_complex(c, (4, 4), "C matrix") @ LAMBDA.conj().T


def mueller_from_c_unchecked(c: np.ndarray) -> np.ndarray:
    # M[mu, nu] = Tr(Gamma_{mu nu} C), complex result
    return np.einsum("aij,ji->a", _GAMMA, c).reshape(4, 4)


def mueller_from_c(c, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Invert :func:`c_from_mueller` using ``M[mu, nu] = Tr(Gamma_{mu nu} C)``.

    Raises:
        NotHermitian: if ``C`` is not Hermitian within ``tol``.
    """
    c = require_hermitian(as_complex(c, (4, 4), "C matrix"), tol, "C matrix")
    return _drop_imag(mueller_from_c_unchecked(c), max(tol, REAL_TOL), "Mueller matrix")


def is_mueller_jones(m, tol: float = MUELLER_JONES_TOL) -> bool:
    """True when ``Tr(M^T M) = (2 M00)^2`` within a relative tolerance.

    This is the condition for M to come from a single Jones matrix.
    """
    m = _mueller(m)
    target = (2.0 * m[0, 0]) ** 2
    return bool(abs(np.sum(m * m) - target) <= tol * target)


class Physicality(NamedTuple):
    cp: bool
    eigenvalues: np.ndarray


def is_physical(m, tol: float = CP_TOL) -> Physicality:
    """Complete-positivity test: all eigenvalues of H at least ``-tol * Tr H``.

    Eigenvalues are reported in descending order.
    """
    h = h_from_mueller(m)
    lam, _ = hermitian_eigensystem(h)
    trace = float(np.trace(h).real)
    cp = bool(trace >= 0 and lam[-1] >= -tol * abs(trace))
    return Physicality(cp, lam)
