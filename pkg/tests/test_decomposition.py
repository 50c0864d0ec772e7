import numpy as np
import pytest

from mueller_stokes.decomposition import (
    KrausSet,
    apply_channel,
    check_trace_preserving,
    cloude_decompose,
    kraus_from_decomposition,
)
from mueller_stokes.errors import NonphysicalMatrix
from mueller_stokes.mueller import c_from_mueller, mueller_from_jones
from mueller_stokes.polarization import coherency_from_stokes, stokes_from_coherency

from oracles import random_jones, random_physical_mueller, random_unitary


def test_rank_one(rng):
    for _ in range(20):
        t = random_jones(rng)
        t *= np.sqrt(2 / np.trace(t @ t.conj().T).real)
        d = cloude_decompose(mueller_from_jones(t))
        np.testing.assert_allclose(d.lambdas, [2, 0, 0, 0], atol=1e-12)
        t0 = d.jones_factors[0]
        k = np.argmax(np.abs(t))
        phase = (t.flat[k] / np.sqrt(2)) / t0.flat[k]
        assert abs(abs(phase) - 1) < 1e-12
        np.testing.assert_allclose(t0 * phase, t / np.sqrt(2), atol=1e-12)


def test_depolarizer():
    d = cloude_decompose(np.diag([1.0, 0, 0, 0]))
    np.testing.assert_allclose(d.lambdas, [0.5] * 4, atol=1e-15)
    np.testing.assert_allclose(d.reconstruct(), np.diag([1.0, 0, 0, 0]), atol=1e-15)


def test_partial_depolarizer():
    d = cloude_decompose(np.diag([1.0, 0.5, 0.5, 0.5]))
    np.testing.assert_allclose(d.lambdas, [5 / 4, 1 / 4, 1 / 4, 1 / 4], atol=1e-14)


def test_eigvecs_diagonalize_c(rng):
    m = random_physical_mueller(rng)
    d = cloude_decompose(m)
    u = d.eigvecs_c.T
    np.testing.assert_allclose(u.conj().T @ c_from_mueller(m) @ u, np.diag(d.lambdas), atol=1e-12)


def test_kraus_deterministic(rng):
    q, _ = np.linalg.qr(random_jones(rng))
    k = kraus_from_decomposition(cloude_decompose(mueller_from_jones(q)))
    assert len(k.ops) == 1
    assert abs(np.trace(k.ops[0].conj().T @ k.ops[0]) - 2) < 1e-12
    np.testing.assert_allclose(k.probabilities, [1.0])


def test_kraus_depolarizer():
    k = kraus_from_decomposition(cloude_decompose(np.diag([1.0, 0, 0, 0])))
    assert len(k.ops) == 4
    np.testing.assert_allclose(k.probabilities, [0.25] * 4, atol=1e-15)
    assert check_trace_preserving(k).preserving
    j = np.array([[0.7, 0.1 - 0.2j], [0.1 + 0.2j, 0.3]])
    np.testing.assert_allclose(apply_channel(j, k), np.eye(2) / 2, atol=1e-15)


def test_kraus_rejects_nonphysical():
    with pytest.raises(NonphysicalMatrix):
        kraus_from_decomposition(cloude_decompose(np.diag([1, 1, 1, -1.5])))
    with pytest.raises(NonphysicalMatrix):
        kraus_from_decomposition(cloude_decompose(np.zeros((4, 4))))


def test_tiny_negative_eigenvalue_is_clamped():
    m = np.eye(4)
    m[1, 1] = m[2, 2] = 1 + 1e-11  # pushes one eigenvalue just below zero
    k = kraus_from_decomposition(cloude_decompose(m))
    assert np.all(k.probabilities >= 0)


def test_identity_channel(rng):
    k = kraus_from_decomposition(cloude_decompose(np.eye(4)))
    j = random_jones(rng)
    j = j @ j.conj().T
    np.testing.assert_allclose(apply_channel(j, k), j, atol=1e-14)


def test_channel_matches_mueller_action(rng):
    for _ in range(100):
        m = random_physical_mueller(rng)
        k = kraus_from_decomposition(cloude_decompose(m))
        s = rng.normal(size=4)
        j = coherency_from_stokes(s)
        np.testing.assert_allclose(stokes_from_coherency(apply_channel(j, k)).s, m @ s, atol=1e-10)


def test_trace_preservation(rng):
    for _ in range(20):
        u = random_unitary(rng, 2)
        k = kraus_from_decomposition(cloude_decompose(mueller_from_jones(u)))
        tc = check_trace_preserving(k)
        assert tc.preserving and np.max(np.abs(tc.defect)) < 1e-12
    k = kraus_from_decomposition(cloude_decompose(mueller_from_jones(np.diag([0.5, 0.5]))))
    tc = check_trace_preserving(k)
    assert not tc.preserving
    np.testing.assert_allclose(tc.defect, np.diag([-0.75, -0.75]), atol=1e-15)
    tc = check_trace_preserving([np.diag([0.5, 0.5])])
    np.testing.assert_allclose(tc.defect, np.diag([-0.75, -0.75]))


def test_invariants_random(rng):
    for _ in range(100):
        m = random_physical_mueller(rng)
        d = cloude_decompose(m)
        assert np.max(np.abs(d.reconstruct() - m)) < 1e-9
        assert abs(np.sum(d.lambdas) - 2 * m[0, 0]) < 1e-10
        for phi, t in zip(d.mj_factors, d.jones_factors):
            assert abs(phi[0, 0] - 0.5) < 1e-9
            assert abs(np.sum(phi * phi) - 1) < 1e-9
            assert abs(np.trace(t.conj().T @ t) - 1) < 1e-10
        k = kraus_from_decomposition(d)
        assert abs(np.sum(k.probabilities) - 1) < 1e-12
        assert isinstance(k, KrausSet)


def test_apply_channel_validates():
    with pytest.raises(ValueError):
        apply_channel(np.eye(2), np.eye(2))
