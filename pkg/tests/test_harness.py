import numpy as np
import numpy.testing as npt
import pytest

from phlab.galerkin import convergence_study, solve_2d_spectrum
from phlab.harness import (ALIASES, CLAIMS, SUITE_JOBS, conjecture_probe,
                           dm_norm_sq, h0_sample_coeffs, laplacian_power_norm,
                           merge_reports, oned_counterexample, resolve_claim_id,
                           run_claim, run_suite, square_laplacian_eigs,
                           suite_passed, verify_convex_square, verify_theorem_main,
                           verify_weak_minmax, verify_zero_modes)
from phlab.model import (BC_DIRICHLET, BC_NEUMANN, Domain, InvalidArgumentError,
                         merge_config, validate_config)
from phlab.oned import solve_1d_spectrum

SQUARE = Domain.rectangle(1.0, 1.0)


def _cfg(**kv):
    return validate_config(merge_config(kv))


def test_square_enumeration_values():
    d = square_laplacian_eigs(BC_DIRICHLET, 6)
    npt.assert_allclose(d / np.pi ** 2, [2, 5, 5, 8, 10, 10], rtol=1e-14)
    n = square_laplacian_eigs(BC_NEUMANN, 6)
    npt.assert_allclose(n / np.pi ** 2, [0, 1, 1, 2, 4, 4], rtol=1e-14, atol=1e-14)


def test_polynomial_energy_hand_case():
    # u = (1-x^2)(1-y^2) on the reference square
    C = np.outer([1.0, 0.0, -1.0], [1.0, 0.0, -1.0])
    npt.assert_allclose(dm_norm_sq(C, 0), 256.0 / 225.0, rtol=1e-14)
    npt.assert_allclose(dm_norm_sq(C, 1), 256.0 / 45.0, rtol=1e-14)
    npt.assert_allclose(dm_norm_sq(C, 2), 1408.0 / 45.0, rtol=1e-14)


def test_laplacian_power_identity_on_samples():
    for m in (1, 2, 3):
        for C in h0_sample_coeffs(m, 5, seed=7):
            a = dm_norm_sq(C, m)
            b = laplacian_power_norm(C, m)
            npt.assert_allclose(b, a, rtol=1e-11)


def test_interpolation_claim_records():
    rep = run_claim("interpolation", _cfg(m=2, count=12, seed=3))
    assert rep.passed
    assert len(rep.details) == 24  # two records per sample
    assert rep.margin >= 0.0


def test_theorem_claim_rejects_interval():
    d = solve_1d_spectrum(1, BC_DIRICHLET, 4)
    n = solve_1d_spectrum(1, BC_NEUMANN, 5)
    tab = convergence_study(1, BC_DIRICHLET, SQUARE, [8, 10], count=3)
    with pytest.raises(InvalidArgumentError, match="interval"):
        verify_theorem_main(d, n, tab, k_max=3)


def test_theorem_claim_square_m1():
    tab = convergence_study(1, BC_DIRICHLET, SQUARE, [10, 12], count=4)
    spec_d = solve_2d_spectrum(1, BC_DIRICHLET, 12, SQUARE, count=4)
    spec_n = solve_2d_spectrum(1, BC_NEUMANN, 12, SQUARE, count=5)
    rep = verify_theorem_main(spec_d, spec_n, tab, k_max=4)
    assert rep.passed
    # the m=1 square gap mu_{k+1} -> lam_k is at least pi^2
    assert rep.margin > 0.9 * np.pi ** 2


def test_weak_minmax_matched_size():
    spec_d = solve_2d_spectrum(2, BC_DIRICHLET, 10, SQUARE, count=6)
    spec_n = solve_2d_spectrum(2, BC_NEUMANN, 10, SQUARE, count=6)
    rep = verify_weak_minmax(spec_d, spec_n, k_max=6)
    assert rep.passed
    with pytest.raises(InvalidArgumentError):
        verify_weak_minmax(spec_n, spec_d, k_max=6)


def test_zero_mode_claim_and_mismatch():
    spec = solve_2d_spectrum(2, BC_NEUMANN, 10, SQUARE, count=5)
    rep = verify_zero_modes(spec, 2, 2)
    assert rep.passed
    with pytest.raises(InvalidArgumentError):
        verify_zero_modes(spec, 1, 2)


def test_convex_square_needs_unit_square():
    spec = solve_2d_spectrum(2, BC_NEUMANN, 10, Domain.rectangle(2.0, 1.0), count=4)
    with pytest.raises(InvalidArgumentError):
        verify_convex_square(spec, k_max=4)


def test_conjecture_probe_never_fails():
    spec_d = solve_2d_spectrum(2, BC_DIRICHLET, 10, SQUARE, count=2)
    spec_n = solve_2d_spectrum(2, BC_NEUMANN, 10, SQUARE, count=5)
    rep = conjecture_probe(spec_d, spec_n, 2, 2, k_max=2)
    assert rep.passed
    assert "not asserted" in rep.notes


def test_counterexample_identities():
    for k in (1, 2, 3):
        rep = oned_counterexample(k)
        assert rep.passed
        assert all(abs(r.lhs) <= 1e-14 for r in rep.details)


def test_claim_aliases_resolve():
    assert resolve_claim_id("remark12") == "oned-coincidence"
    assert resolve_claim_id("theorem") == "theorem-strict"
    assert resolve_claim_id("weak-minmax") == "weak-minmax"
    for alias, target in ALIASES.items():
        assert target in CLAIMS
    with pytest.raises(InvalidArgumentError, match="unknown claim"):
        resolve_claim_id("no-such-claim")


def test_merge_reports_combines_parts():
    r1 = run_claim("remark12", _cfg(m=1, count=3))
    r2 = run_claim("remark12", _cfg(m=2, count=3))
    merged = merge_reports("oned-coincidence", [r1, r2])
    assert merged.passed
    assert len(merged.details) == 6
    assert merged.margin == min(r1.margin, r2.margin)
    assert merged.config_echo["jobs"] == [r1.config_echo, r2.config_echo]
    with pytest.raises(InvalidArgumentError):
        merge_reports("oned-coincidence", [])


def test_suite_jobs_cover_every_claim():
    assert {cid for cid, _ in SUITE_JOBS} == set(CLAIMS)


def test_suite_deterministic_across_worker_counts():
    cfg = _cfg()
    serial = run_suite(cfg, max_workers=1)
    threaded = run_suite(cfg, max_workers=4)
    assert suite_passed(serial)
    assert [r.claim_id for r in serial] == sorted(CLAIMS)
    assert [r.as_json() for r in serial] == [r.as_json() for r in threaded]


def test_suite_worker_count_validated():
    with pytest.raises(InvalidArgumentError):
        run_suite(_cfg(), max_workers=0)
