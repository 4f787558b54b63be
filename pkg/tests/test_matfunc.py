"""Kernel tests against independent oracles.

The kernels run on numpy.linalg.eigh / scipy schur+expm; the oracles here
use different routes (scipy sqrtm, an eigenvector sign reconstruction, a
scaling-and-squaring Taylor exponential) so agreement is meaningful.
"""

import numpy as np
import pytest
import scipy.linalg

from fwlab import (
    frobenius,
    inv_sqrt,
    matrix_exp,
    principal_sqrt,
    sign_operator,
    spectral_gap,
    unitary_log,
)
from fwlab.errors import (
    BranchCutProximity,
    NotPositiveSemidefinite,
    NotUnitary,
    SingularHamiltonian,
    SingularOperand,
)


def _random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def _random_psd(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return a.conj().T @ a


def _random_gapped_hermitian(rng, dim, gap=0.3):
    """Hermitian matrix with |eigenvalues| >= gap, mixed signs."""
    h = _random_hermitian(rng, dim)
    w, v = np.linalg.eigh(h)
    w = np.where(w >= 0.0, w + gap, w - gap)
    return (v * w) @ v.conj().T


def _taylor_expm(a, terms=40):
    """Scaling-and-squaring Taylor series, independent of scipy.expm."""
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a, 2)
    squarings = max(int(np.ceil(np.log2(norm))) + 3, 0) if norm > 0 else 0
    b = a / (2.0 ** squarings)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ b / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def test_spectral_gap_known_spectrum():
    h = np.diag([3.0, -0.25, 1.5, -2.0])
    report = spectral_gap(h)
    assert report.min_abs_eigenvalue == pytest.approx(0.25, rel=1e-14)
    assert report.is_definite
    assert not spectral_gap(np.diag([1.0, 0.0])).is_definite


def test_principal_sqrt_against_scipy():
    rng = np.random.default_rng(10)
    for dim in (2, 5, 12):
        a = _random_psd(rng, dim)
        root = principal_sqrt(a)
        oracle = scipy.linalg.sqrtm(a)
        assert frobenius(root - oracle) <= 1e-9 * frobenius(oracle)
        assert frobenius(root @ root - a) <= 1e-11 * frobenius(a)
        # principal branch: PSD result
        assert np.linalg.eigvalsh(root).min() >= -1e-12


def test_principal_sqrt_identity():
    np.testing.assert_allclose(principal_sqrt(np.eye(6)), np.eye(6), atol=1e-15)


def test_principal_sqrt_clamps_rounding_noise():
    # an eigenvalue at -1e-16 is rounding noise, not indefiniteness
    a = np.diag([1.0, -1e-16])
    root = principal_sqrt(a)
    assert np.linalg.eigvalsh(root).min() >= 0.0


def test_principal_sqrt_rejects_indefinite():
    with pytest.raises(NotPositiveSemidefinite):
        principal_sqrt(np.diag([1.0, -1.0]))


def test_inv_sqrt_inverts():
    rng = np.random.default_rng(11)
    a = _random_psd(rng, 8) + 0.1 * np.eye(8)
    isq = inv_sqrt(a)
    np.testing.assert_allclose(isq @ a @ isq, np.eye(8), atol=1e-11)
    oracle = np.linalg.inv(scipy.linalg.sqrtm(a))
    assert frobenius(isq - oracle) <= 1e-9 * frobenius(oracle)


def test_inv_sqrt_rejects_singular():
    with pytest.raises(SingularOperand):
        inv_sqrt(np.diag([1.0, 0.0]))


def test_sign_operator_against_eigen_reconstruction():
    rng = np.random.default_rng(12)
    for dim in (4, 9):
        h = _random_gapped_hermitian(rng, dim)
        lam = sign_operator(h)
        w, v = np.linalg.eigh(h)
        oracle = (v * np.sign(w)) @ v.conj().T
        np.testing.assert_allclose(lam, oracle, atol=1e-12)
        np.testing.assert_allclose(lam @ lam, np.eye(dim), atol=1e-12)
        np.testing.assert_allclose(lam, lam.conj().T, atol=1e-13)


def test_sign_operator_rejects_gapless():
    with pytest.raises(SingularHamiltonian):
        sign_operator(np.diag([1.0, 0.0, -1.0]))


def test_matrix_exp_against_taylor():
    rng = np.random.default_rng(13)
    for dim in (3, 7):
        s = _random_hermitian(rng, dim)
        got = matrix_exp(1j * s)
        oracle = _taylor_expm(1j * s)
        assert frobenius(got - oracle) <= 1e-12 * max(frobenius(oracle), 1.0)
        # exp(iS) of Hermitian S is unitary
        np.testing.assert_allclose(got.conj().T @ got, np.eye(dim), atol=1e-13)


def test_matrix_exp_of_zero_is_identity():
    np.testing.assert_array_equal(matrix_exp(np.zeros((4, 4))), np.eye(4))


def test_unitary_log_roundtrip():
    rng = np.random.default_rng(14)
    for scale in (0.1, 1.0, 2.5):
        s = scale * _random_hermitian(rng, 6)
        # keep eigenphases inside (-pi, pi) so the principal log recovers s
        phases = np.linalg.eigvalsh(s)
        if np.max(np.abs(phases)) >= np.pi - 0.1:
            s = s * (np.pi - 0.2) / np.max(np.abs(phases))
        u = matrix_exp(1j * s)
        recovered = unitary_log(u)
        np.testing.assert_allclose(recovered, s, atol=1e-11)


def test_unitary_log_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        unitary_log(np.diag([1.0, 2.0]))


def test_unitary_log_rejects_branch_cut():
    with pytest.raises(BranchCutProximity):
        unitary_log(np.diag([-1.0 + 0.0j, 1.0]))
    with pytest.raises(BranchCutProximity):
        unitary_log(np.diag([np.exp(1j * (np.pi - 1e-10)), 1.0 + 0.0j]))


def test_unitary_log_hermitian_output():
    rng = np.random.default_rng(15)
    s = 0.3 * _random_hermitian(rng, 5)
    recovered = unitary_log(matrix_exp(1j * s))
    assert frobenius(recovered - recovered.conj().T) <= 1e-12
