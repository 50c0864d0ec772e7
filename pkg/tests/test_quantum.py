import numpy as np
import pytest

from mueller_stokes.algebra import per
from mueller_stokes.errors import SingularProbe
from mueller_stokes.quantum import (
    bell_state,
    density_from_two_photon_stokes,
    dtilde,
    mems_g,
    mems_mueller,
    mems_target,
    normalize_density,
    reconstruct_mueller,
    reconstruct_mueller_standard,
    scatter_one_photon,
    swap_photons,
    two_photon_stokes,
    werner_target,
)

from oracles import PAULIS, random_complex, random_physical_mueller, random_unitary

SINGLET = np.array([[0, 0, 0, 0], [0, 0.5, -0.5, 0], [0, -0.5, 0.5, 0], [0, 0, 0, 0]])


def stokes_brute(rho):
    return np.array([[np.trace(rho @ np.kron(a, b)).real for b in PAULIS] for a in PAULIS])


def random_density(rng, n=4):
    a = random_complex(rng, (n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_bell_states():
    np.testing.assert_array_equal(bell_state(3), SINGLET)
    b0 = np.zeros((4, 4))
    for r, c in [(0, 0), (0, 3), (3, 0), (3, 3)]:
        b0[r, c] = 0.5
    np.testing.assert_array_equal(bell_state(0), b0)
    total = sum(bell_state(k) for k in range(4))
    np.testing.assert_allclose(total, np.eye(4), atol=1e-15)
    with pytest.raises(ValueError):
        bell_state(4)


def test_dtilde():
    d = dtilde(SINGLET)
    for n, m, p, q in np.ndindex(2, 2, 2, 2):
        assert d[2 * n + m, 2 * p + q] == SINGLET[2 * n + p, 2 * m + q]
    np.testing.assert_array_equal(dtilde(dtilde(SINGLET)), SINGLET)


def test_dtilde_product_state(rng):
    ra, rb = random_density(rng, 2), random_density(rng, 2)
    d = dtilde(np.kron(ra, rb))
    for i, j, k, l in np.ndindex(2, 2, 2, 2):
        assert abs(d[2 * i + j, 2 * k + l] - ra[i, j] * rb[k, l]) < 1e-15
    np.testing.assert_allclose(d, np.outer(ra.reshape(4), rb.reshape(4)), atol=1e-15)


def test_two_photon_stokes_examples(rng):
    np.testing.assert_allclose(two_photon_stokes(SINGLET), np.diag([0.5, -0.5, -0.5, -0.5]), atol=1e-16)
    np.testing.assert_allclose(two_photon_stokes(np.eye(4) / 4), np.diag([0.5, 0, 0, 0]), atol=1e-16)
    ra, rb = random_density(rng, 2), random_density(rng, 2)
    sa = [np.trace(ra @ s).real for s in PAULIS]
    sb = [np.trace(rb @ s).real for s in PAULIS]
    np.testing.assert_allclose(two_photon_stokes(np.kron(ra, rb)), np.outer(sa, sb), atol=1e-15)


def test_two_photon_stokes_round_trip(rng):
    for _ in range(20):
        rho = random_density(rng)
        d = two_photon_stokes(rho)
        np.testing.assert_allclose(d, stokes_brute(rho), atol=1e-15)
        np.testing.assert_allclose(density_from_two_photon_stokes(d), rho, atol=1e-15)


def test_scatter_identity(rng):
    rho = random_density(rng)
    out = scatter_one_photon(rho, np.eye(4))
    np.testing.assert_allclose(out.rho, rho, atol=1e-15)
    assert abs(out.trace - 1) < 1e-14 and out.physical


def test_scatter_matches_kraus_action(rng):
    for _ in range(20):
        u = random_unitary(rng, 2)
        m = np.array([[np.trace(a @ u @ b @ u.conj().T).real for b in PAULIS] for a in PAULIS])
        rho = random_density(rng)
        big = np.kron(u, np.eye(2))
        np.testing.assert_allclose(scatter_one_photon(rho, m).rho, big @ rho @ big.conj().T, atol=1e-13)


def test_scatter_stokes_action(rng):
    for _ in range(20):
        m = random_physical_mueller(rng)
        rho = random_density(rng)
        np.testing.assert_allclose(two_photon_stokes(scatter_one_photon(rho, m).rho), m @ stokes_brute(rho), atol=1e-13)


def test_scatter_flags_nonphysical():
    out = scatter_one_photon(SINGLET, np.diag([1.0, 1, 1, -1]))
    assert not out.physical


def test_werner_scatter():
    for p in (0, 0.3, 1):
        out = scatter_one_photon(SINGLET, np.diag([1, p, p, p])).rho
        np.testing.assert_allclose(out, werner_target(p), atol=1e-15)


def test_mems_scatter():
    out = scatter_one_photon(SINGLET, mems_mueller(0.8)).rho
    g = 0.4
    expected = np.array([[g, 0, 0, 0.4], [0, 1 - 2 * g, 0, 0], [0, 0, 0, 0], [0.4, 0, 0, g]])
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_targets():
    t = mems_target(1)
    np.testing.assert_array_equal(t, bell_state(0))
    assert mems_g(0.5) == 1 / 3 and mems_g(0.8) == 0.4
    assert mems_target(0.5)[1, 1] == 1 - 2 / 3
    np.testing.assert_array_equal(werner_target(0), np.eye(4) / 4)
    np.testing.assert_allclose(werner_target(1), SINGLET, atol=1e-16)
    with pytest.raises(ValueError):
        werner_target(1.5)
    with pytest.raises(ValueError):
        mems_target(-0.1)


def test_reconstruct_targets():
    for gamma in (0.4, 2 / 3, 0.9):
        m = reconstruct_mueller(SINGLET, mems_target(gamma))
        g = gamma / 2 if gamma >= 2 / 3 else 1 / 3
        expected = np.array(
            [[1, 0, 0, 1 - 2 * g], [0, -gamma, 0, 0], [0, 0, gamma, 0], [1 - 2 * g, 0, 0, 1 - 4 * g]]
        )
        np.testing.assert_allclose(m, expected, atol=1e-10)
    for p in (0, 0.3, 1):
        np.testing.assert_allclose(reconstruct_mueller(SINGLET, werner_target(p)), np.diag([1, p, p, p]), atol=1e-10)


def test_reconstruct_identity(rng):
    rho = random_density(rng)
    np.testing.assert_allclose(reconstruct_mueller(rho, rho), np.eye(4), atol=1e-10)


def test_reconstruct_round_trip(rng):
    for _ in range(50):
        m = random_physical_mueller(rng)
        rho = random_density(rng)
        out = scatter_one_photon(rho, m).rho
        np.testing.assert_allclose(reconstruct_mueller(rho, out), m, atol=1e-9)
        np.testing.assert_allclose(reconstruct_mueller_standard(rho, out), m, atol=1e-9)


def test_singular_probe():
    with pytest.raises(SingularProbe):
        reconstruct_mueller(np.diag([1.0, 0, 0, 0]), np.diag([1.0, 0, 0, 0]))
    with pytest.raises(SingularProbe):
        reconstruct_mueller(np.zeros((4, 4)), np.eye(4))


def test_swap_and_normalize(rng):
    ra, rb = random_density(rng, 2), random_density(rng, 2)
    np.testing.assert_allclose(swap_photons(np.kron(ra, rb)), np.kron(rb, ra), atol=1e-15)
    np.testing.assert_allclose(swap_photons(SINGLET), SINGLET)
    np.testing.assert_allclose(np.trace(normalize_density(3 * SINGLET)), 1)
    with pytest.raises(ValueError):
        normalize_density(np.zeros((4, 4)))


def test_per_definition_of_scatter(rng):
    m = random_physical_mueller(rng)
    rho = random_density(rng)
    from mueller_stokes.mueller import f_from_mueller

    np.testing.assert_allclose(scatter_one_photon(rho, m).rho, per(f_from_mueller(m) @ per(rho)), atol=1e-15)
