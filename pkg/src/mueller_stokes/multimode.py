"""Multi-mode field model restricted to the one-photon (and product two-photon) sector.

Each mode ``n`` carries two orthonormal complex polarization directions
``e[n, 0]`` and ``e[n, 1]`` in 3-space. One-photon operators are
``2N x 2N`` matrices in the basis ``|n alpha>`` with flat index
``2 n + alpha``. The polarization analyser is modelled by three mutually
unbiased bases of 3-space, from which four Stokes operators are formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import as_complex, require_hermitian
from .bases import PAULI, PAULI_UNNORMALIZED
from .errors import InvalidFrame, NormalizationError, NotReconstructible

MAX_MODES = 8
MAX_KRAUS = 16
FRAME_TOL = 1e-12
NORMALIZATION_TOL = 1e-9
REAL_TOL = 1e-10
GATE_TOL = 1e-12

_R2 = np.sqrt(2.0)
_PAULI = np.array(PAULI)
_PAULI_RAW = np.array(PAULI_UNNORMALIZED)

# Columns are basis vectors of C^3.
MUB_U = np.eye(3, dtype=complex)
MUB_V = np.array([[1, 1, 0], [1, -1, 0], [0, 0, _R2]], dtype=complex) / _R2
MUB_W = np.array([[1, 1, 0], [1j, -1j, 0], [0, 0, _R2]], dtype=complex) / _R2

# Rows: Stokes index; columns: (U0, U1, V0, V1, W0, W1).
P_MATRIX = (
    np.array(
        [
            [1, 1, 0, 0, 0, 0],
            [0, 0, 1, -1, 0, 0],
            [0, 0, 0, 0, 1, -1],
            [1, -1, 0, 0, 0, 0],
        ],
        dtype=complex,
    )
    / _R2
)


def _analyser_projectors() -> np.ndarray:
    # Built from unnormalised vectors so that every entry is a dyadic rational.
    xi = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (1, 1j, 0), (1, -1j, 0)]
    return np.array([np.outer(x, np.conj(x)) / np.vdot(x, x).real for x in np.array(xi, dtype=complex)])


# sqrt(2) * Omega, with integer entries
_OMEGA_RAW = np.einsum("ax,xij->aij", np.round(P_MATRIX.real * _R2), _analyser_projectors())


def omega_matrices() -> np.ndarray:
    """The four 3x3 matrices ``sum_X P[A, X] xi_X xi_X^dagger``.

    Each equals a normalised Pauli matrix placed in the upper-left 2x2 block.
    """
    return _OMEGA_RAW / _R2


@dataclass(frozen=True, eq=False)
class ModeFrame:
    """Polarization triads for ``N`` modes.

    ``e0`` and ``e1`` have shape ``(N, 3)``. The third direction is
    ``conj(e0 x e1)``, which for real frames is the plain cross product and in
    general completes the orthonormal triad under the Hermitian product.
    ``frequencies`` is stored for bookkeeping only.
    """

    e0: np.ndarray
    e1: np.ndarray
    frequencies: tuple[float, ...] | None = field(default=None, compare=False)
    tol: float = field(default=FRAME_TOL, compare=False)

    def __post_init__(self):
        e0 = as_complex(self.e0, name="e0")
        e1 = as_complex(self.e1, name="e1")
        if e0.ndim == 1:
            e0, e1 = e0[None, :], e1[None, :]
        if e0.shape != e1.shape or e0.ndim != 2 or e0.shape[1] != 3:
            raise InvalidFrame(f"frame vectors must have shape (N, 3), got {e0.shape} and {e1.shape}")
        if not 1 <= e0.shape[0] <= MAX_MODES:
            raise InvalidFrame(f"number of modes must be in 1..{MAX_MODES}, got {e0.shape[0]}")
        for n in range(e0.shape[0]):
            e = np.column_stack([e0[n], e1[n]])
            gram_err = np.max(np.abs(e.conj().T @ e - np.eye(2)))
            if gram_err > self.tol:
                raise InvalidFrame(f"mode {n}: directions not orthonormal (error {gram_err:.3e})")
        e0.setflags(write=False)
        e1.setflags(write=False)
        object.__setattr__(self, "e0", e0)
        object.__setattr__(self, "e1", e1)
        if self.frequencies is not None:
            freqs = tuple(float(w) for w in self.frequencies)
            if len(freqs) != e0.shape[0]:
                raise InvalidFrame("one frequency per mode is required")
            object.__setattr__(self, "frequencies", freqs)
        for n in range(e0.shape[0]):
            err = np.max(np.abs(self.projector_p(n) + self.projector_q(n) - np.eye(3)))
            if err > self.tol:
                raise InvalidFrame(f"mode {n}: triad incomplete (error {err:.3e})")

    @classmethod
    def canonical(cls, n_modes: int = 1) -> "ModeFrame":
        """Every mode polarized along x and y, propagating along z."""
        x = np.tile([1.0, 0.0, 0.0], (n_modes, 1))
        y = np.tile([0.0, 1.0, 0.0], (n_modes, 1))
        return cls(x, y)

    @property
    def n_modes(self) -> int:
        return self.e0.shape[0]

    @property
    def e2(self) -> np.ndarray:
        return np.cross(self.e0, self.e1).conj()

    def pair(self, n: int) -> np.ndarray:
        """3x2 matrix whose columns are ``e[n, 0]`` and ``e[n, 1]``."""
        return np.column_stack([self.e0[n], self.e1[n]])

    def projector_p(self, n: int) -> np.ndarray:
        e = self.pair(n)
        return e @ e.conj().T

    def projector_q(self, n: int) -> np.ndarray:
        e2 = self.e2[n]
        return np.outer(e2, e2.conj())


def _frames(frames: ModeFrame | None, n_modes: int) -> ModeFrame:
    if frames is None:
        return ModeFrame.canonical(n_modes)
    if frames.n_modes != n_modes:
        raise ValueError(f"frames describe {frames.n_modes} modes, data has {n_modes}")
    return frames


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = len(blocks)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for k, b in enumerate(blocks):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = b
    return out


def povm_operators(frames: ModeFrame, basis=None) -> np.ndarray:
    """One-photon matrices of the three intensity operators for ``basis``.

    ``basis`` is a 3x3 unitary whose columns are the analyser directions;
    the default is the Cartesian basis.
    """
    f = MUB_U if basis is None else as_complex(basis, (3, 3), "analyser basis")
    out = []
    for i in range(3):
        proj = np.outer(f[:, i], f[:, i].conj())
        out.append(_block_diag([frames.pair(n).conj().T @ proj @ frames.pair(n) for n in range(frames.n_modes)]))
    return np.array(out)


def povm_check(frames: ModeFrame, basis=None) -> float:
    """Largest entry of ``sum_i F_i - I`` on the one-photon sector."""
    total = povm_operators(frames, basis).sum(axis=0)
    return float(np.max(np.abs(total - np.eye(2 * frames.n_modes))))


def mode_pauli(frames: ModeFrame, n: int) -> np.ndarray:
    """``[sigma_{n,A}]_{ab} = (e[n,a], Omega_A e[n,b])`` for ``A = 0..3``."""
    return _mode_pauli_raw(frames, n) / _R2


def _mode_pauli_raw(frames: ModeFrame, n: int) -> np.ndarray:
    e = frames.pair(n)
    return np.einsum("ia,Aij,jb->Aab", e.conj(), _OMEGA_RAW, e)


def stokes_operators(frames: ModeFrame) -> np.ndarray:
    """The four Stokes operators as ``2N x 2N`` matrices, block diagonal in the mode."""
    per_mode = [mode_pauli(frames, n) for n in range(frames.n_modes)]
    return np.array([_block_diag([p[a] for p in per_mode]) for a in range(4)])


def delta_matrix(n: int, frames: ModeFrame) -> np.ndarray:
    """``Delta[A, B] = Tr(sigma_{n,A} sigma_B)``; the identity for a paraxial mode."""
    d = np.einsum("Aij,Bji->AB", _mode_pauli_raw(frames, n), _PAULI_RAW) / 2
    if np.max(np.abs(d.imag)) > REAL_TOL:
        raise RuntimeError("Delta matrix is not real")
    return d.real.copy()


def _state(rho) -> tuple[np.ndarray, int]:
    rho = as_complex(rho, name="one-photon state")
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] % 2:
        raise ValueError(f"one-photon state must be 2N x 2N, got {rho.shape}")
    return rho, rho.shape[0] // 2


@dataclass(frozen=True, eq=False)
class MeasuredStokes:
    """Expectation values of the four Stokes operators."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        if v.shape != (4,) or not np.all(np.isfinite(v)):
            raise ValueError("four finite Stokes expectation values are required")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def scaled(self) -> np.ndarray:
        """``s_A = <S_A> / (sqrt(2) <S_0>)``, so ``s_0 = 1/sqrt(2)``."""
        if not self.values[0] > 0:
            raise NotReconstructible("<S_0> must be positive")
        return self.values / (_R2 * self.values[0])


def expectation_stokes(rho, frames: ModeFrame | None = None) -> MeasuredStokes:
    """``<S_A> = sum_n Tr(D_n sigma_{n,A})`` with ``D_n`` the mode-``n`` block of ``rho``."""
    rho, n_modes = _state(rho)
    frames = _frames(frames, n_modes)
    values = np.zeros(4)
    for n in range(n_modes):
        block = rho[2 * n : 2 * n + 2, 2 * n : 2 * n + 2]
        values += np.einsum("ab,Aba->A", block, mode_pauli(frames, n)).real
    return MeasuredStokes(values)


def reduced_density(rho) -> np.ndarray:
    """Sum of the diagonal 2x2 mode blocks."""
    rho, n_modes = _state(rho)
    return rho.reshape(n_modes, 2, n_modes, 2)[np.arange(n_modes), :, np.arange(n_modes), :].sum(axis=0)


def relevant_density(measured: MeasuredStokes, tol: float = GATE_TOL) -> np.ndarray:
    """Maximum-entropy polarization state ``sum_A s_A sigma_A``.

    Raises:
        NotReconstructible: if ``<S_0>^2 < sum_B <S_B>^2`` beyond a relative
            slack ``tol``.
    """
    v = measured.values
    excess = v[0] ** 2 - np.sum(v[1:] ** 2)
    if not v[0] > 0 or excess < -tol * v[0] ** 2:
        raise NotReconstructible(
            f"Stokes expectations outside the Poincare ball (S0^2 - |S|^2 = {excess:.3e})"
        )
    return np.einsum("a,aij->ij", measured.scaled.astype(complex), _PAULI)


def kraus_blocks(kraus, n_modes: int | None = None) -> np.ndarray:
    """Normalise a Kraus family to blocks ``A[i, m, n]`` of shape ``(K, N, N, 2, 2)``.

    Accepts either full one-photon operators ``(K, 2N, 2N)`` or blocks.
    """
    k = as_complex(kraus, name="Kraus family")
    if k.ndim == 2:
        k = k[None]
    if k.ndim == 3:
        if k.shape[1] != k.shape[2] or k.shape[1] % 2:
            raise ValueError(f"Kraus operators must be 2N x 2N, got {k.shape[1:]}")
        n = k.shape[1] // 2
        k = k.reshape(k.shape[0], n, 2, n, 2).transpose(0, 1, 3, 2, 4)
    if k.ndim != 5 or k.shape[1] != k.shape[2] or k.shape[3:] != (2, 2):
        raise ValueError(f"Kraus blocks must have shape (K, N, N, 2, 2), got {k.shape}")
    if not 1 <= k.shape[0] <= MAX_KRAUS:
        raise ValueError(f"between 1 and {MAX_KRAUS} Kraus operators are supported")
    if not 1 <= k.shape[1] <= MAX_MODES:
        raise ValueError(f"number of modes must be in 1..{MAX_MODES}")
    if n_modes is not None and k.shape[1] != n_modes:
        raise ValueError(f"Kraus family has {k.shape[1]} modes, expected {n_modes}")
    return k


def kraus_operators(blocks) -> np.ndarray:
    """Inverse of :func:`kraus_blocks`: full ``(K, 2N, 2N)`` matrices."""
    b = kraus_blocks(blocks)
    k, n = b.shape[:2]
    return b.transpose(0, 1, 3, 2, 4).reshape(k, 2 * n, 2 * n)


def check_kraus_normalization(kraus, tol: float = NORMALIZATION_TOL) -> float:
    """Return ``max |sum_i A_i A_i^dagger - I|``; raise if it exceeds ``tol``."""
    ops = kraus_operators(kraus)
    defect = float(np.max(np.abs(np.einsum("kij,klj->il", ops, ops.conj()) - np.eye(ops.shape[1]))))
    if defect > tol:
        raise NormalizationError(f"sum A A^dagger differs from the identity by {defect:.3e}")
    return defect


def block_mueller(kraus) -> np.ndarray:
    """``G[n, p, q, A, C] = sum_i Tr(sigma_A A_i(n,p) sigma_C A_i(n,q)^dagger)``."""
    b = kraus_blocks(kraus)
    return np.einsum("Axy,inpyz,Czw,inqxw->npqAC", _PAULI, b, _PAULI, b.conj())


def _mode_density(r, dim: int, name: str) -> np.ndarray:
    r = require_hermitian(as_complex(r, (dim, dim), name), NORMALIZATION_TOL, name)
    if abs(np.trace(r) - 1) > NORMALIZATION_TOL:
        raise NormalizationError(f"{name} must have unit trace")
    return r


def _frame_weighted(kraus, frames: ModeFrame | None, require_normalized: bool) -> np.ndarray:
    # H[p, q, A, C] = sum_n sum_B Delta(n)[A, B] G[n, p, q, B, C]
    b = kraus_blocks(kraus)
    n_modes = b.shape[1]
    frames = _frames(frames, n_modes)
    if require_normalized:
        check_kraus_normalization(b)
    deltas = np.array([delta_matrix(n, frames) for n in range(n_modes)])
    return np.einsum("nAB,npqBC->pqAC", deltas, block_mueller(b))


def _real(m: np.ndarray, what: str) -> np.ndarray:
    residue = float(np.max(np.abs(m.imag)))
    if residue > REAL_TOL * max(1.0, float(np.max(np.abs(m)))):
        raise ValueError(f"{what} has imaginary residue {residue:.3e}")
    return m.real.copy()


def effective_mueller(kraus, r_in, frames: ModeFrame | None = None, *, require_normalized: bool = True) -> np.ndarray:
    """Effective 4x4 Mueller matrix of a mode-mixing channel for a mode state ``R``.

    Args:
        kraus: Kraus family as ``(K, 2N, 2N)`` operators or ``(K, N, N, 2, 2)`` blocks.
        r_in: ``N x N`` mode density matrix of the input.
        frames: Polarization frames of the modes (canonical by default).
        require_normalized: Enforce ``sum A A^dagger = I``. Disable to apply the
            formula to an arbitrary, e.g. lossy, Jones matrix.

    Raises:
        NormalizationError: for a non-normalised family or ``Tr R != 1``.
    """
    b = kraus_blocks(kraus)
    r = _mode_density(r_in, b.shape[1], "mode density")
    h = _frame_weighted(b, frames, require_normalized)
    return _real(np.einsum("pq,pqAC->AC", r, h), "effective Mueller matrix")


def two_photon_mueller(
    kraus_a,
    kraus_b,
    r_in,
    frames_a: ModeFrame | None = None,
    frames_b: ModeFrame | None = None,
    *,
    require_normalized: bool = True,
) -> np.ndarray:
    """16x16 Mueller matrix acting on two-photon Stokes parameters.

    ``r_in`` is the joint mode density of the pair, indexed ``a * N_B + b``.
    Row and column index ``4 A + B`` label ``<S_A kron S_B>``. For channels
    that do not mix modes the result is ``kron(M_A, M_B)``.
    """
    ha = _frame_weighted(kraus_a, frames_a, require_normalized)
    hb = _frame_weighted(kraus_b, frames_b, require_normalized)
    na, nb = ha.shape[0], hb.shape[0]
    r = _mode_density(r_in, na * nb, "two-photon mode density").reshape(na, nb, na, nb)
    m = np.einsum("xyzw,xzAC,ywBD->ABCD", r, ha, hb).reshape(16, 16)
    return _real(m, "two-photon Mueller matrix")
