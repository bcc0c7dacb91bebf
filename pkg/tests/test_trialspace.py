import numpy as np
import numpy.testing as npt
import pytest

from phlab.galerkin import solve_2d_eigensystem
from phlab.model import (BC_NEUMANN, CapabilityError, Domain, GramDegeneracyError,
                         InvalidArgumentError)
from phlab.trialspace import (TrialSpace, certified_chain_bound, mth_gradient_square,
                              roots_of_unity, select_omega, trial_eval,
                              vandermonde_check, verify_mth_gradient_identity,
                              verify_pde_identity, wave_gram_min_sv)

SQUARE = Domain.rectangle(1.0, 1.0)


def _random_space(m, rng, scale=5.0):
    theta = rng.uniform(0.0, 2 * np.pi)
    r = rng.uniform(1.0, scale)
    alpha = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return TrialSpace(m=m, omega=np.array([r * np.cos(theta), r * np.sin(theta)]),
                      alpha=alpha)


def test_roots_of_unity_basic():
    for m in (1, 2, 3, 7):
        xi = roots_of_unity(m)
        npt.assert_allclose(xi ** m, np.ones(m), atol=1e-14)
        assert len({complex(round(z.real, 9), round(z.imag, 9)) for z in xi}) == m


def test_vandermonde_hand_values():
    assert abs(vandermonde_check(roots_of_unity(1)) - 1.0) < 1e-15
    assert abs(vandermonde_check(roots_of_unity(2)) - 2.0) < 1e-14
    assert abs(vandermonde_check(roots_of_unity(4)) - 16.0) < 1e-12


def test_trial_space_validation():
    with pytest.raises(InvalidArgumentError):
        TrialSpace(m=1, omega=np.array([0.0, 0.0]), alpha=np.array([1.0 + 0j]))
    with pytest.raises(InvalidArgumentError):
        TrialSpace(m=2, omega=np.array([1.0, 0.0]), alpha=np.array([1.0 + 0j]))
    with pytest.raises(CapabilityError):
        TrialSpace(m=4, omega=np.array([1.0, 0.0]), alpha=np.ones(4, dtype=complex))


def test_eigen_equation_identity_seeded():
    rng = np.random.default_rng(2024)
    for m in (1, 2, 3):
        for _ in range(5):
            ts = _random_space(m, rng)
            pts = rng.uniform(-1.0, 1.0, size=(100, 2))
            assert verify_pde_identity(ts, pts) <= 1e-12
            assert verify_mth_gradient_identity(ts, pts) <= 1e-12


def test_identity_residual_zero_for_zero_member():
    ts = TrialSpace(m=2, omega=np.array([3.0, 4.0]), alpha=np.zeros(2, dtype=complex))
    pts = np.array([[0.1, 0.2], [0.5, 0.5]])
    assert verify_pde_identity(ts, pts) == 0.0


def test_single_wave_closed_forms():
    # m=1: v = e^(i omega.x), |grad v|^2 = |omega|^2, (-Lap) v = |omega|^2 v
    ts = TrialSpace(m=1, omega=np.array([2.0, -1.0]), alpha=np.array([1.0 + 0j]))
    pts = np.array([[0.3, 0.7]])
    ev = trial_eval(ts, pts)
    level = 5.0
    npt.assert_allclose(ev.polyharmonic, level * ev.values, rtol=1e-14)
    g = mth_gradient_square(ts, pts)
    npt.assert_allclose(g, level * np.abs(ev.values) ** 2, rtol=1e-13)


def test_grouped_and_ungrouped_gradient_agree():
    rng = np.random.default_rng(99)
    for m in (1, 2, 3):
        ts = _random_space(m, rng)
        pts = rng.uniform(0.0, 1.0, size=(40, 2))
        a = mth_gradient_square(ts, pts, grouped=False)
        b = mth_gradient_square(ts, pts, grouped=True)
        scale = max(float(np.abs(a).max()), 1e-300)
        assert np.abs(a - b).max() / scale < 1e-13


def test_select_omega_hits_target_level():
    sysd = solve_2d_eigensystem(2, "dirichlet", 10, SQUARE, count=3)
    lam = sysd.spectrum.value(2)
    omega = select_omega(2, lam, sysd, 2)
    level = np.hypot(*omega) ** 4
    npt.assert_allclose(level, lam, rtol=1e-12)
    with pytest.raises(InvalidArgumentError):
        select_omega(2, -5.0, sysd, 2)


def test_chain_certificate_contents():
    for m, k, n in ((1, 3, 10), (2, 2, 10)):
        sysd = solve_2d_eigensystem(m, "dirichlet", n, SQUARE, count=k)
        lam = sysd.spectrum.value(k)
        omega = select_omega(m, lam, sysd, k)
        cert = certified_chain_bound(m, k, sysd, omega)
        assert cert.dim_w == k + m
        assert cert.gram_min_sv > 1e-8
        assert cert.max_rayleigh <= lam * (1.0 + 1e-8)
        assert cert.bound_ok


def test_chain_certificate_preconditions():
    sysd = solve_2d_eigensystem(2, "dirichlet", 8, SQUARE, count=2)
    lam = sysd.spectrum.value(1)
    good = select_omega(2, lam, sysd, 1)
    sysn = solve_2d_eigensystem(2, BC_NEUMANN, 8, SQUARE, count=4)
    with pytest.raises(InvalidArgumentError):
        certified_chain_bound(2, 1, sysn, good)
    with pytest.raises(InvalidArgumentError):
        certified_chain_bound(2, 9, sysd, good)
    with pytest.raises(InvalidArgumentError):
        certified_chain_bound(2, 1, sysd, good * 1.5)
    with pytest.raises(InvalidArgumentError):
        certified_chain_bound(2, 1, sysd, good, quad_nodes=4)


def test_chain_gram_degeneracy_detected():
    # duplicating an eigenvector in the basis must trip the conditioning gate
    sysd = solve_2d_eigensystem(1, "dirichlet", 8, SQUARE, count=2)
    lam = sysd.spectrum.value(2)
    omega = select_omega(1, lam, sysd, 2)
    V = sysd.vectors.copy()
    V[:, 1] = V[:, 0]
    broken = type(sysd)(pencil=sysd.pencil, spectrum=sysd.spectrum, vectors=V)
    with pytest.raises(GramDegeneracyError):
        certified_chain_bound(1, 2, broken, omega)


def test_wave_families_at_distinct_angles_independent():
    for m in (1, 2):
        r = 6.0
        th1, th2 = 0.3, 1.2
        omegas = [r * np.array([np.cos(th1), np.sin(th1)]),
                  r * np.array([np.cos(th2), np.sin(th2)])]
        sv = wave_gram_min_sv(m, omegas)
        assert sv > 1e-4
        # coincident directions collapse the combined family
        sv_same = wave_gram_min_sv(m, [omegas[0], omegas[0]])
        assert sv_same < 1e-12
