"""Constant matrix families: standard and Pauli bases, Lambda, Upsilon, Gamma, Bell.

Every table is built from first principles when the module is imported and
then compared with hand-transcribed reference values (``GOLDEN_*``). A
mismatch raises ``RuntimeError`` at import time, so an index-convention
slip can never go unnoticed.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .algebra import kron, vectorize

_R2 = np.sqrt(2.0)
GOLDEN_TOL = 1e-15


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _index(mu: int) -> int:
    if isinstance(mu, bool) or not isinstance(mu, (int, np.integer)) or not 0 <= mu <= 3:
        raise ValueError(f"basis index must be an integer in 0..3, got {mu!r}")
    return int(mu)


def _build_epsilon() -> tuple[np.ndarray, ...]:
    out = []
    for mu in range(4):
        e = np.zeros((2, 2), dtype=complex)
        e[mu // 2, mu % 2] = 1.0
        out.append(_frozen(e))
    return tuple(out)


# Plain Pauli matrices; products of pairs divided by 2 are exact in floating point.
PAULI_UNNORMALIZED = tuple(
    _frozen(m)
    for m in (
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    )
)

EPSILON = _build_epsilon()
PAULI = tuple(_frozen(m / _R2) for m in PAULI_UNNORMALIZED)

# Lambda[alpha, mu] = Tr(eps_alpha^T sigma_mu): column mu is the flattened sigma_mu.
LAMBDA = _frozen(
    [[np.trace(EPSILON[a].T @ PAULI[m]) for m in range(4)] for a in range(4)]
)

# sqrt(2) * Lambda and sqrt(2) * Upsilon have entries in {0, +-1, +-i}; building
# the products from them keeps Gamma free of rounding.
_LAMBDA_RAW = np.array(
    [[np.trace(EPSILON[a].T @ PAULI_UNNORMALIZED[m]) for m in range(4)] for a in range(4)]
)
_UPSILON_RAW = [
    np.array(
        [
            [np.trace(PAULI_UNNORMALIZED[m] @ PAULI_UNNORMALIZED[a] @ PAULI_UNNORMALIZED[b]) / 2 for b in range(4)]
            for a in range(4)
        ]
    )
    for m in range(4)
]

UPSILON = tuple(_frozen(u / _R2) for u in _UPSILON_RAW)

# Flat index 4*mu + nu.
GAMMA = tuple(
    _frozen(
        _LAMBDA_RAW.conj().T
        @ kron(PAULI_UNNORMALIZED[m], PAULI_UNNORMALIZED[n].conj())
        @ _LAMBDA_RAW
        / 4
    )
    for m, n in product(range(4), repeat=2)
)
GAMMA_ALT = tuple(
    _frozen(_UPSILON_RAW[m].T @ _UPSILON_RAW[n] / 2) for m, n in product(range(4), repeat=2)
)

BELL_UNNORMALIZED = _frozen(
    [[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]]
)
BELL = _frozen(BELL_UNNORMALIZED / _R2)

GOLDEN_LAMBDA = _frozen(
    np.array(
        [[1, 0, 0, 1], [0, 1, -1j, 0], [0, 1, 1j, 0], [1, 0, 0, -1]], dtype=complex
    )
    / _R2
)
GOLDEN_UPSILON = tuple(
    _frozen(np.array(m, dtype=complex) / _R2)
    for m in (
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1j], [0, 0, -1j, 0]],
        [[0, 0, 1, 0], [0, 0, 0, -1j], [1, 0, 0, 0], [0, 1j, 0, 0]],
        [[0, 0, 0, 1], [0, 0, 1j, 0], [0, -1j, 0, 0], [1, 0, 0, 0]],
    )
)


def epsilon_basis(mu: int) -> np.ndarray:
    """Single-entry 2x2 matrix with a one at ``(mu // 2, mu % 2)``."""
    return EPSILON[_index(mu)].copy()


def pauli_basis(mu: int) -> np.ndarray:
    """Pauli matrix ``mu`` scaled by ``1/sqrt(2)`` so the set is orthonormal."""
    return PAULI[_index(mu)].copy()


def lambda_matrix() -> np.ndarray:
    """Unitary change of basis whose column ``mu`` is the flattened ``sigma_mu``."""
    return LAMBDA.copy()


def upsilon_matrix(mu: int) -> np.ndarray:
    """``[Upsilon_mu]_{ab} = Tr(sigma_mu sigma_a sigma_b)``."""
    return UPSILON[_index(mu)].copy()


def gamma_matrix(mu: int, nu: int) -> np.ndarray:
    """``Lambda^dagger (sigma_mu kron conj(sigma_nu)) Lambda``."""
    return GAMMA[4 * _index(mu) + _index(nu)].copy()


def gamma_matrix_alt(mu: int, nu: int) -> np.ndarray:
    """Same matrix as :func:`gamma_matrix`, built as ``Upsilon_mu^T Upsilon_nu``."""
    return GAMMA_ALT[4 * _index(mu) + _index(nu)].copy()


def gamma_table() -> np.ndarray:
    """All sixteen Gamma matrices stacked along the flat index ``4*mu + nu``."""
    return np.array(GAMMA)


def bell_matrix() -> np.ndarray:
    """The Bell change-of-basis matrix.

    Row ``k`` holds the standard-basis coordinates of Bell ket ``k``:

    ====  ==========================  =====
    k     ket                          label
    ====  ==========================  =====
    0     (|00> + |11>)/sqrt(2)        psi+
    1     (|00> - |11>)/sqrt(2)        psi-
    2     (|01> + |10>)/sqrt(2)        phi+
    3     (|01> - |10>)/sqrt(2)        phi- (singlet)
    ====  ==========================  =====

    These psi/phi labels are swapped with respect to the usual
    quantum-information naming, where psi denotes the odd-parity pair.
    """
    return BELL.copy()


def bell_ket(k: int) -> np.ndarray:
    """Coordinates of Bell ket ``k`` in the two-photon basis ``|2i+j> = |ij>``."""
    return BELL[_index(k)].copy()


def e_basis(mu: int, nu: int) -> np.ndarray:
    """Single-entry 4x4 matrix with a one at ``(mu, nu)``."""
    e = np.zeros((4, 4), dtype=complex)
    e[_index(mu), _index(nu)] = 1.0
    return e


def selftest(tol: float = GOLDEN_TOL) -> list[tuple[str, bool, float]]:
    """Compare the computed tables with the reference values.

    Returns a list of ``(name, passed, max_error)`` triples.
    """
    checks = []

    def add(name, err, limit=tol):
        checks.append((name, bool(err <= limit), float(err)))

    add("lambda", np.max(np.abs(LAMBDA - GOLDEN_LAMBDA)))
    add("lambda_unitary", np.max(np.abs(LAMBDA.conj().T @ LAMBDA - np.eye(4))))
    for m in range(4):
        add(f"upsilon_{m}", np.max(np.abs(UPSILON[m] - GOLDEN_UPSILON[m])))
    for m in range(4):
        add(f"lambda_column_{m}", np.max(np.abs(LAMBDA[:, m] - vectorize(PAULI[m]))))
    add(
        "gamma_alt",
        max(np.max(np.abs(g - h)) for g, h in zip(GAMMA, GAMMA_ALT)),
        max(tol, 1e-14),
    )
    add(
        "gamma_00_entry",
        max(
            abs(GAMMA[4 * m + n][0, 0] - (0.5 if m == n else 0.0))
            for m, n in product(range(4), repeat=2)
        ),
    )
    add("bell_unitary", np.max(np.abs(BELL.conj().T @ BELL - np.eye(4))))
    return checks


def _check_at_import() -> None:
    failed = [c for c in selftest() if not c[1]]
    if failed:
        raise RuntimeError(f"constant tables disagree with reference values: {failed}")


_check_at_import()
