from itertools import product

import numpy as np
import pytest

from mueller_stokes import bases
from mueller_stokes.algebra import hs_inner, kron, per, vectorize
from mueller_stokes.bases import (
    bell_ket,
    bell_matrix,
    e_basis,
    epsilon_basis,
    gamma_matrix,
    gamma_matrix_alt,
    lambda_matrix,
    pauli_basis,
    upsilon_matrix,
)

from oracles import PAULIS, random_complex

R = 1 / np.sqrt(2)
LEVI = np.zeros((4, 4, 4))
for (i, j, k), s in {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}.items():
    LEVI[i, j, k] = s


def test_epsilon_basis():
    np.testing.assert_array_equal(epsilon_basis(0), [[1, 0], [0, 0]])
    np.testing.assert_array_equal(epsilon_basis(3), [[0, 0], [0, 1]])
    assert hs_inner(epsilon_basis(1), epsilon_basis(2)) == 0
    with pytest.raises(ValueError):
        epsilon_basis(4)


def test_pauli_basis_values_and_products():
    np.testing.assert_array_equal(pauli_basis(0), np.eye(2) * R)
    for mu in range(4):
        np.testing.assert_allclose(pauli_basis(mu), PAULIS[mu], atol=0)
    np.testing.assert_allclose(np.sqrt(2) * pauli_basis(1) @ pauli_basis(2), 1j * pauli_basis(3), atol=1e-15)
    for i, j in product(range(1, 4), repeat=2):
        expected = ((i == j) * pauli_basis(0) + 1j * sum(LEVI[i, j, l] * pauli_basis(l) for l in range(1, 4))) * R
        np.testing.assert_allclose(pauli_basis(i) @ pauli_basis(j), expected, atol=1e-15)


def test_orthonormal_bases():
    for mu, nu in product(range(4), repeat=2):
        assert hs_inner(epsilon_basis(mu), epsilon_basis(nu)) == (mu == nu)
        assert abs(hs_inner(pauli_basis(mu), pauli_basis(nu)) - (mu == nu)) < 1e-15


def test_lambda_golden_form():
    reference = R * np.array([[1, 0, 0, 1], [0, 1, -1j, 0], [0, 1, 1j, 0], [1, 0, 0, -1]])
    lam = lambda_matrix()
    assert np.max(np.abs(lam - reference)) <= 1e-15
    assert np.max(np.abs(lam.conj().T @ lam - np.eye(4))) <= 1e-15
    np.testing.assert_array_equal(lam[:, 2], vectorize(pauli_basis(2)))


def test_lambda_definition():
    lam = lambda_matrix()
    for a, mu in product(range(4), repeat=2):
        assert lam[a, mu] == np.trace(epsilon_basis(a).T @ pauli_basis(mu))


def test_basis_change():
    lam = lambda_matrix()
    for mu in range(4):
        s = sum(epsilon_basis(nu) * lam[nu, mu] for nu in range(4))
        assert np.max(np.abs(s - pauli_basis(mu))) <= 1e-15
        e = sum(pauli_basis(m) * lam.conj().T[m, mu] for m in range(4))
        assert np.max(np.abs(e - epsilon_basis(mu))) <= 1e-15


def test_completeness():
    for i, j, k, l in product(range(2), repeat=4):
        total = sum(pauli_basis(m)[i, j] * pauli_basis(m).conj()[k, l] for m in range(4))
        assert abs(total - (i == k) * (j == l)) <= 1e-15


def test_upsilon_golden_forms():
    reference = [
        np.eye(4),
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1j], [0, 0, -1j, 0]],
        [[0, 0, 1, 0], [0, 0, 0, -1j], [1, 0, 0, 0], [0, 1j, 0, 0]],
        [[0, 0, 0, 1], [0, 0, 1j, 0], [0, -1j, 0, 0], [1, 0, 0, 0]],
    ]
    for mu in range(4):
        assert np.max(np.abs(upsilon_matrix(mu) - R * np.array(reference[mu]))) <= 1e-15
    u3 = upsilon_matrix(3)
    assert abs(u3[3, 0] - R) <= 1e-15 and abs(u3[1, 2] - 1j * R) <= 1e-15


def test_upsilon_levi_civita_and_cyclic():
    for i, j, k in product(range(1, 4), repeat=3):
        assert abs(upsilon_matrix(i)[j, k] - 1j * R * LEVI[i, j, k]) <= 1e-15
    for m, a, b in product(range(4), repeat=3):
        v = upsilon_matrix(m)[a, b]
        assert abs(v - upsilon_matrix(b)[m, a]) <= 1e-15
        assert abs(v - upsilon_matrix(a)[b, m]) <= 1e-15


def _gamma_trace(mu, nu):
    return np.array(
        [[np.trace(PAULIS[a] @ PAULIS[mu] @ PAULIS[b] @ PAULIS[nu]) for b in range(4)] for a in range(4)]
    )


def test_gamma_three_constructions():
    for mu, nu in product(range(4), repeat=2):
        g = gamma_matrix(mu, nu)
        assert np.max(np.abs(g - gamma_matrix_alt(mu, nu))) <= 1e-14
        assert np.max(np.abs(g - _gamma_trace(mu, nu))) <= 1e-14
        assert np.max(np.abs(g - g.conj().T)) < 1e-14
        assert g[0, 0] == (0.5 if mu == nu else 0.0)


def test_gamma_special_values():
    np.testing.assert_allclose(gamma_matrix(0, 0), np.eye(4) / 2, atol=1e-15)
    np.testing.assert_allclose(gamma_matrix_alt(0, 0), np.eye(4) / 2, atol=1e-15)


def test_gamma_orthonormal():
    g = bases.gamma_table()
    gram = np.einsum("aij,bji->ab", g, g)
    assert np.max(np.abs(gram - np.eye(16))) <= 1e-13


def test_gamma_transpose_symmetry():
    for mu, nu in product(range(4), repeat=2):
        np.testing.assert_allclose(gamma_matrix(mu, nu), gamma_matrix(nu, mu).T, atol=1e-15)


def test_bell_matrix():
    b = bell_matrix()
    reference = R * np.array([[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]])
    np.testing.assert_array_equal(b, reference)
    assert np.max(np.abs(b.conj().T @ b - np.eye(4))) <= 1e-15
    np.testing.assert_array_equal(bell_ket(0), R * np.array([1, 0, 0, 1]))
    np.testing.assert_array_equal(bell_ket(3), R * np.array([0, 1, -1, 0]))


def test_e_basis():
    e = e_basis(0, 0)
    assert e[0, 0] == 1 and np.count_nonzero(e) == 1
    np.testing.assert_array_equal(per(e_basis(1, 2)), kron(epsilon_basis(1), epsilon_basis(2)))
    for mu, nu in product(range(4), repeat=2):
        np.testing.assert_array_equal(per(e_basis(mu, nu)), kron(epsilon_basis(mu), epsilon_basis(nu)))


def test_e_basis_expansion(rng):
    a = random_complex(rng, (4, 4))
    total = sum(a[m, n] * e_basis(m, n) for m, n in product(range(4), repeat=2))
    np.testing.assert_array_equal(total, a)


def test_selftest_passes():
    assert all(ok for _, ok, _ in bases.selftest())


def test_constants_are_read_only():
    with pytest.raises(ValueError):
        bases.LAMBDA[0, 0] = 0
    lam = lambda_matrix()
    lam[0, 0] = 99
    assert bases.LAMBDA[0, 0] != 99
