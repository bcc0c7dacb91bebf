import numpy as np
import numpy.testing as npt
import pytest

from phlab.model import (BC_DIRICHLET, BC_NEUMANN, InvalidArgumentError,
                         ToleranceConfig)
from phlab.oned import (boundary_matrix, characteristic_roots, check_root_coincidence,
                        det_indicator, positive_roots, real_solution_basis,
                        solve_1d_spectrum)

# first positive roots of cos(b) cosh(b) = 1, frozen from a plain bisection
BEAM_BETAS = np.array([
    4.7300407448627038, 7.8532046240958380, 10.995607838001671,
    14.137165491257463, 17.278759657399483, 20.420352245626063,
    23.561944902040452, 26.703537555508184,
])


def test_characteristic_roots_power_identity():
    # every root r satisfies r^(2m) = (-1)^m lam
    rng = np.random.default_rng(5)
    for m in (1, 2, 3):
        for lam in rng.uniform(1.0, 1e4, size=4):
            roots = characteristic_roots(m, lam)
            assert roots.shape == (2 * m,)
            npt.assert_allclose(roots ** (2 * m), (-1.0) ** m * lam,
                                rtol=1e-10, atol=1e-10 * lam)
            # roots are pairwise distinct
            diffs = np.abs(roots[:, None] - roots[None, :])[~np.eye(2 * m, dtype=bool)]
            assert diffs.min() > 1e-8 * lam ** (1.0 / (2 * m))


def test_characteristic_roots_hand_case_m2():
    roots = sorted(characteristic_roots(2, 16.0), key=lambda z: (round(z.real, 9), z.imag))
    npt.assert_allclose(roots, [-2.0, 0.0 - 2.0j, 0.0 + 2.0j, 2.0], atol=1e-12)


def test_characteristic_roots_real_count_by_parity():
    # odd m: no purely real root; even m: exactly two
    for m, expect in ((1, 0), (2, 2), (3, 0)):
        roots = characteristic_roots(m, 123.456)
        n_real = int(np.sum(np.abs(roots.imag) < 1e-9 * np.abs(roots).max()))
        assert n_real == expect


def test_real_solution_basis_solves_ode():
    # numerically differentiate members 2m times and compare to (-1)^m lam u
    for m, lam in ((1, 30.0), (2, 700.0)):
        members = real_solution_basis(m, lam)
        assert len(members) == 2 * m
        x = 0.37
        for mem in members:
            d2m = mem.deriv(2 * m, x)
            u = mem.deriv(0, x)
            npt.assert_allclose(d2m, (-1.0) ** m * lam * u, rtol=1e-12, atol=1e-12)


def test_boundary_matrix_laplace_dirichlet():
    lam = 7.3
    M = boundary_matrix(1, lam, BC_DIRICHLET)
    b = np.sqrt(lam)
    npt.assert_allclose(M, [[1.0, 0.0], [np.cos(b), np.sin(b)]], atol=1e-15)


def test_det_indicator_sign_change_at_root():
    lam_root = np.pi ** 2
    s_lo, _ = det_indicator(1, lam_root * 0.9, BC_DIRICHLET)
    s_hi, _ = det_indicator(1, lam_root * 1.1, BC_DIRICHLET)
    assert s_lo * s_hi == -1


def test_positive_roots_laplace_exact():
    k = np.arange(1, 11)
    lam_d = positive_roots(1, BC_DIRICHLET, 10)
    npt.assert_allclose(lam_d, (k * np.pi) ** 2, rtol=1e-10)
    lam_n = positive_roots(1, BC_NEUMANN, 10)
    npt.assert_allclose(lam_n, (k * np.pi) ** 2, rtol=1e-10)


def test_positive_roots_beam_oracle():
    lam = positive_roots(2, BC_DIRICHLET, 8)
    npt.assert_allclose(lam, BEAM_BETAS ** 4, rtol=1e-9)


def test_roots_are_simple():
    # sign of the indicator flips across every reported root
    for m, bc in ((2, BC_DIRICHLET), (3, BC_NEUMANN)):
        roots = positive_roots(m, bc, 4)
        for lam in roots:
            lo, _ = det_indicator(m, lam * (1 - 1e-6), bc)
            hi, _ = det_indicator(m, lam * (1 + 1e-6), bc)
            assert lo * hi == -1


def test_interval_scaling_law():
    # lam(L) = lam(1) / L^(2m)
    for m in (1, 2):
        base = positive_roots(m, BC_DIRICHLET, 3, length=1.0)
        for L in (0.5, 2.0):
            scaled = positive_roots(m, BC_DIRICHLET, 3, length=L)
            npt.assert_allclose(scaled, base / L ** (2 * m), rtol=1e-9)


def test_spectrum_zero_modes_free():
    s = solve_1d_spectrum(3, BC_NEUMANN, 5)
    assert list(s.values[:3]) == [0.0, 0.0, 0.0]
    assert s.zero_count == 3
    assert np.all(s.values[3:] > 0.0)
    assert s.trusted_count == 5
    # clamped spectrum has no zero block
    d = solve_1d_spectrum(3, BC_DIRICHLET, 2)
    assert np.all(d.values > 0.0)


def test_spectrum_count_shorter_than_zero_block():
    s = solve_1d_spectrum(2, BC_NEUMANN, 1)
    assert s.values.shape == (1,) and s.values[0] == 0.0


def test_root_coincidence_claim():
    rep = check_root_coincidence(2, 6)
    assert rep.passed and rep.claim_id == "oned-coincidence"
    assert len(rep.details) == 6
    assert rep.margin > 0.0


def test_root_coincidence_failure_injection():
    rep = check_root_coincidence(1, 4, perturb=1e-6)
    assert not rep.passed
    assert rep.config_echo["perturb"] == 1e-6


def test_tight_root_tolerance_respected():
    tol = ToleranceConfig(tol_root=1e-13)
    lam = positive_roots(1, BC_DIRICHLET, 2, tol=tol)
    npt.assert_allclose(lam, [np.pi ** 2, 4 * np.pi ** 2], rtol=1e-12)


def test_invalid_arguments():
    with pytest.raises(InvalidArgumentError):
        positive_roots(1, "periodic", 3)
    with pytest.raises(InvalidArgumentError):
        solve_1d_spectrum(1, BC_DIRICHLET, 0)
