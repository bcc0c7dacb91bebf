import numpy as np
import numpy.testing as npt
import pytest

from phlab.linalg import (cholesky_lower, force_symmetric, gauss_legendre,
                          legendre_derivatives, legendre_eval, min_singular_value,
                          realify_hermitian, solve_gen_eig)
from phlab.model import CapabilityError, InvalidArgumentError, NumericalError


def test_gauss_legendre_weights_sum():
    for n in (1, 2, 5, 16, 40, 64):
        t, w = gauss_legendre(n)
        assert t.shape == w.shape == (n,)
        assert np.all(np.diff(t) > 0)
        assert abs(np.sum(w) - 2.0) < 1e-13


def test_gauss_legendre_polynomial_exactness():
    # an n-point rule integrates monomials up to degree 2n-1 exactly
    for n in (3, 7, 12):
        t, w = gauss_legendre(n)
        for p in range(2 * n):
            exact = 0.0 if p % 2 else 2.0 / (p + 1)
            assert abs(np.dot(w, t ** p) - exact) < 1e-13


def test_gauss_legendre_capability_bounds():
    with pytest.raises(CapabilityError):
        gauss_legendre(0)
    with pytest.raises(CapabilityError):
        gauss_legendre(257)


def test_legendre_recurrence_values():
    t = np.array([-1.0, -0.3, 0.0, 0.7, 1.0])
    table = legendre_derivatives(5, t, 2)
    npt.assert_allclose(table[0, 0], 1.0)
    npt.assert_allclose(table[0, 1], t)
    npt.assert_allclose(table[0, 2], 0.5 * (3 * t ** 2 - 1), atol=1e-15)
    npt.assert_allclose(table[1, 2], 3 * t, atol=1e-15)
    npt.assert_allclose(table[2, 4], 7.5 * (7 * t ** 2 - 1), rtol=1e-14)


def test_legendre_endpoint_value():
    # P_i(1) = 1 and P_i'(1) = i(i+1)/2 for every order
    for i in (0, 1, 4, 9):
        vals = legendre_eval(i, 1.0, 1)
        assert abs(vals[0] - 1.0) < 1e-14
        assert abs(vals[1] - i * (i + 1) / 2.0) < 1e-11 * max(1.0, i * (i + 1) / 2.0)


def test_legendre_eval_argument_checks():
    with pytest.raises(InvalidArgumentError):
        legendre_eval(-1, 0.0, 0)
    with pytest.raises(InvalidArgumentError):
        legendre_eval(2, 1.5, 0)
    with pytest.raises(InvalidArgumentError):
        legendre_eval(2, 0.0, 7)


def test_cholesky_hand_case():
    L = cholesky_lower(np.array([[4.0, 2.0], [2.0, 3.0]]))
    npt.assert_allclose(L, [[2.0, 0.0], [1.0, np.sqrt(2.0)]], rtol=1e-15)


def test_cholesky_rejects_indefinite():
    with pytest.raises(NumericalError, match="pivot"):
        cholesky_lower(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_cholesky_random_reconstruction():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = rng.integers(2, 30)
        X = rng.standard_normal((n, n))
        B = X @ X.T + n * np.eye(n)
        L = cholesky_lower(B)
        npt.assert_allclose(L @ L.T, B, rtol=1e-12, atol=1e-12 * n)
        assert np.all(np.triu(L, 1) == 0.0)


def test_force_symmetric_rejects_gross_asymmetry():
    with pytest.raises(NumericalError):
        force_symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_solve_gen_eig_hand_case():
    w, V = solve_gen_eig(np.diag([1.0, 2.0]), np.diag([2.0, 1.0]))
    npt.assert_allclose(w, [0.5, 2.0], rtol=1e-14)
    npt.assert_allclose(V.T @ np.diag([2.0, 1.0]) @ V, np.eye(2), atol=1e-14)


def test_solve_gen_eig_random_pencils():
    # residual and B-orthonormality on seeded pencils up to n=200
    rng = np.random.default_rng(42)
    for n in (5, 40, 200):
        X = rng.standard_normal((n, n))
        A = X + X.T
        Y = rng.standard_normal((n, n))
        B = Y @ Y.T + n * np.eye(n)
        w, V = solve_gen_eig(A, B)
        assert np.all(np.diff(w) >= -1e-12 * max(1.0, np.abs(w).max()))
        scale = np.abs(A).max()
        res = np.abs(A @ V - B @ V @ np.diag(w)).max() / scale
        assert res < 1e-10
        npt.assert_allclose(V.T @ B @ V, np.eye(n), atol=1e-10)


def test_solve_gen_eig_congruence_invariance():
    # a congruence by a positive diagonal leaves pencil eigenvalues unchanged
    rng = np.random.default_rng(3)
    n = 30
    X = rng.standard_normal((n, n))
    A = X + X.T
    Y = rng.standard_normal((n, n))
    B = Y @ Y.T + n * np.eye(n)
    w0, _ = solve_gen_eig(A, B)
    D = np.diag(np.exp(rng.uniform(-6, 6, size=n)))
    w1, _ = solve_gen_eig(D @ A @ D, D @ B @ D)
    npt.assert_allclose(w1, w0, rtol=1e-9, atol=1e-11)


def test_solve_gen_eig_dimension_cap():
    n = 2501
    with pytest.raises(CapabilityError):
        solve_gen_eig(np.eye(n), np.eye(n))


def test_realify_hermitian_spectrum():
    rng = np.random.default_rng(11)
    n = 12
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = Z @ Z.conj().T
    R = realify_hermitian(H)
    wh = np.linalg.eigvalsh(H)
    wr = np.linalg.eigvalsh(R)
    # each eigenvalue of H appears twice in the real embedding
    npt.assert_allclose(wr, np.sort(np.repeat(wh, 2)), rtol=1e-10, atol=1e-10)


def test_min_singular_value_known():
    M = np.diag([3.0, 0.25])
    assert abs(min_singular_value(M) - 0.25) < 1e-14
