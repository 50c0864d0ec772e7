"""Two-photon states, one-sided scattering and Mueller reconstruction from an entangled probe.

Two-photon density matrices use the basis ``|2i + j> = |i j>``, photon A
first. A Mueller matrix acts on photon A only.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .algebra import as_complex, per, require_hermitian
from .bases import BELL_UNNORMALIZED, LAMBDA, PAULI_UNNORMALIZED
from .errors import SingularProbe
from .mueller import f_from_mueller, is_physical

PROBE_DET_TOL = 1e-12
CONSISTENCY_TOL = 1e-11
REAL_TOL = 1e-10

# sigma_a kron sigma_b for the normalised Paulis.
_SIGMA_PAIRS = np.array([[np.kron(a, b) / 2 for b in PAULI_UNNORMALIZED] for a in PAULI_UNNORMALIZED])
_SWAP = np.eye(4)[[0, 2, 1, 3]]


def _density(rho, name: str = "density matrix") -> np.ndarray:
    return as_complex(rho, (4, 4), name)


def bell_state(k: int) -> np.ndarray:
    """Projector onto Bell ket ``k``; ``k = 3`` is the singlet."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be 0..3, got {k!r}")
    b = BELL_UNNORMALIZED[k]
    return np.outer(b, b.conj()) / 2


def dtilde(rho) -> np.ndarray:
    """Row-exchanged coordinates ``per(rho)``; the map is its own inverse."""
    return per(_density(rho))


density_from_dtilde = dtilde


def two_photon_stokes(rho) -> np.ndarray:
    """``D[a, b] = Tr(rho (sigma_a kron sigma_b))``, a real 4x4 array."""
    rho = require_hermitian(_density(rho), 1e-12, "density matrix")
    d = np.einsum("abij,ji->ab", _SIGMA_PAIRS, rho)
    return d.real.copy()


def density_from_two_photon_stokes(d) -> np.ndarray:
    """``rho = sum D[a, b] sigma_a kron sigma_b``."""
    d = np.asarray(d, dtype=float)
    if d.shape != (4, 4):
        raise ValueError(f"two-photon Stokes array must be 4x4, got {d.shape}")
    return np.einsum("ab,abij->ij", d, _SIGMA_PAIRS)


class ScatterResult(NamedTuple):
    """Unnormalised output state, its trace, and whether M passed the CP test."""

    rho: np.ndarray
    trace: float
    physical: bool


def scatter_one_photon(rho, m, *, check_tol: float = CONSISTENCY_TOL) -> ScatterResult:
    """Send photon A through a device with Mueller matrix ``M``.

    Computes ``rho' = per(F dtilde(rho))`` with ``F = Lambda M Lambda^dagger``.
    The result is not renormalised, since the map is linear in ``M`` and
    reconstruction relies on that; see :func:`normalize_density`. A
    non-physical ``M`` is allowed and flagged in the result.
    """
    rho = _density(rho)
    f = f_from_mueller(m)
    out = per(f @ per(rho))
    # Same action written on the two-photon Stokes parameters: D' = M D.
    d_out = np.asarray(m, dtype=float) @ np.einsum("abij,ji->ab", _SIGMA_PAIRS, rho)
    alt = np.einsum("ab,abij->ij", d_out, _SIGMA_PAIRS)
    scale = max(1.0, float(np.max(np.abs(out))))
    if np.max(np.abs(out - alt)) > check_tol * scale:
        raise RuntimeError("scattering formulas disagree; convention error")
    return ScatterResult(out, float(np.trace(out).real), is_physical(m).cp)


def normalize_density(rho) -> np.ndarray:
    rho = as_complex(rho, name="density matrix")
    tr = np.trace(rho)
    if abs(tr) == 0:
        raise ValueError("cannot normalise a state with zero trace")
    return rho / tr.real


def swap_photons(rho) -> np.ndarray:
    """Exchange photons A and B, e.g. to let a device act on photon B."""
    return _SWAP @ _density(rho) @ _SWAP


def reconstruct_mueller(rho_in, rho_out, *, det_tol: float = PROBE_DET_TOL, real_tol: float = REAL_TOL) -> np.ndarray:
    """Recover ``M`` from a probe state and the state after scattering photon A.

    ``M = Lambda^dagger per(rho_out) per(rho_in)^-1 Lambda``, evaluated in the
    equivalent Pauli form ``M = D_out D_in^-1`` on the two-photon Stokes
    parameters (``per(rho) = Lambda D Lambda^T`` with ``Lambda`` unitary).

    Raises:
        SingularProbe: if ``|det per(rho_in)|`` of the unit-trace probe is at
            most ``det_tol``.
    """
    rho_in = _density(rho_in, "input state")
    rho_out = _density(rho_out, "output state")
    tr = np.trace(rho_in).real
    if tr <= 0:
        raise SingularProbe("probe state has non-positive trace")
    det = abs(np.linalg.det(per(rho_in) / tr))
    if det <= det_tol:
        raise SingularProbe(
            f"probe is not invertible: |det| = {det:.3e} <= {det_tol:.1e} after normalising the trace"
        )
    d_in = np.einsum("abij,ji->ab", _SIGMA_PAIRS, rho_in)
    d_out = np.einsum("abij,ji->ab", _SIGMA_PAIRS, rho_out)
    m = np.linalg.solve(d_in.T, d_out.T).T
    residue = float(np.max(np.abs(m.imag)))
    if residue > real_tol * max(1.0, float(np.max(np.abs(m)))):
        raise ValueError(f"reconstructed Mueller matrix is not real (residue {residue:.3e})")
    return m.real.copy()


def reconstruct_mueller_standard(rho_in, rho_out) -> np.ndarray:
    """Literal standard-basis form of :func:`reconstruct_mueller`, without checks."""
    m = LAMBDA.conj().T @ per(_density(rho_out)) @ np.linalg.inv(per(_density(rho_in))) @ LAMBDA
    return m.real.copy()


def _unit_interval(x: float, name: str) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")
    return x


def mems_g(gamma: float) -> float:
    gamma = _unit_interval(gamma, "gamma")
    return gamma / 2 if gamma >= 2 / 3 else 1 / 3


def mems_target(gamma: float) -> np.ndarray:
    """Maximally entangled mixed state with concurrence parameter ``gamma``."""
    g = mems_g(gamma)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = g
    rho[0, 3] = rho[3, 0] = gamma / 2
    rho[1, 1] = 1 - 2 * g
    return rho


def mems_mueller(gamma: float) -> np.ndarray:
    """Mueller matrix turning the singlet into :func:`mems_target`."""
    g = mems_g(gamma)
    return np.array(
        [
            [1, 0, 0, 1 - 2 * g],
            [0, -gamma, 0, 0],
            [0, 0, gamma, 0],
            [1 - 2 * g, 0, 0, 1 - 4 * g],
        ],
        dtype=float,
    )


def werner_target(p: float) -> np.ndarray:
    """Werner state ``p |singlet><singlet| + (1 - p) I / 4``."""
    p = _unit_interval(p, "p")
    rho = np.diag([1 - p, 1 + p, 1 + p, 1 - p]).astype(complex) / 4
    rho[1, 2] = rho[2, 1] = -p / 2
    return rho
