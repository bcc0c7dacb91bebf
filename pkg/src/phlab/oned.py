"""Exact spectra of the order-2m eigenproblems on an interval.

On (0, L) the equation is (-1)^m u^(2m) = lam u.  Substituting u = e^(rho x)
gives rho^(2m) = (-1)^m lam, so the 2m characteristic exponents are

    rho_j = lam^(1/(2m)) * exp(i pi (2 j + m) / (2 m)),   j = 0 .. 2m-1.

For odd m all exponents have nonzero imaginary part; for even m exactly two
are purely real.  A real solution basis is built from one member per real
exponent and a cos/sin pair per conjugate pair, each damped by the exponent's
real part measured from the nearer endpoint so nothing overflows for large
lam.  Eigenvalues are the lam > 0 where the 2m x 2m matrix of boundary
conditions applied to that basis is singular; clamped ends constrain
derivative orders 0..m-1, free ends the complementary orders m..2m-1.
The determinant sign is scanned on a uniform grid in beta = lam^(1/(2m)) and
each sign change is sharpened by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (BC_DIRICHLET, BC_NEUMANN, CheckRecord, Domain, InvalidArgumentError,
                    MethodInfo, NumericalError, Spectrum, ToleranceConfig,
                    VerificationReport, check_bc, check_order, make_spectrum)


def characteristic_roots(m: int, lam: float) -> np.ndarray:
    """The 2m complex solutions rho of rho^(2m) = (-1)^m lam, for lam > 0.

    Returned sorted by (angle, magnitude); closed under conjugation.
    """
    m = check_order(m)
    if not lam > 0.0:
        raise InvalidArgumentError(f"characteristic roots need lam > 0, got {lam!r}")
    beta = lam ** (1.0 / (2 * m))
    j = np.arange(2 * m)
    ang = np.pi * (2 * j + m) / (2 * m)
    roots = beta * np.exp(1j * ang)
    return roots[np.argsort(np.angle(roots))]


@dataclass(frozen=True)
class BasisMember:
    """One real solution e^(a (x - shift)) * {cos(b x), sin(b x), 1}.

    shift is 0 for decaying members and L for growing ones, so evaluations on
    [0, L] stay bounded by 1 in the exponential factor.
    """

    a: float
    b: float
    shift: float
    kind: str  # "cos", "sin", or "exp"

    def deriv(self, p: int, x: float) -> float:
        """p-th derivative at x, through the complex closed form."""
        if self.kind == "exp":
            return self.a ** p * np.exp(self.a * (x - self.shift)) if p else np.exp(self.a * (x - self.shift))
        z = (self.a + 1j * self.b) ** p * np.exp(self.a * (x - self.shift)) * np.exp(1j * self.b * x)
        return float(z.real) if self.kind == "cos" else float(z.imag)


def real_solution_basis(m: int, lam: float, length: float = 1.0) -> tuple[BasisMember, ...]:
    """2m real solutions of (-1)^m u^(2m) = lam u on (0, length)."""
    roots = characteristic_roots(m, lam)
    beta = lam ** (1.0 / (2 * m))
    members: list[BasisMember] = []
    for rho in roots:
        a, b = float(rho.real), float(rho.imag)
        shift = length if a > 0.0 else 0.0
        if abs(b) <= 1e-12 * beta:
            members.append(BasisMember(a, 0.0, shift, "exp"))
        elif b > 0.0:
            members.append(BasisMember(a, b, shift, "cos"))
            members.append(BasisMember(a, b, shift, "sin"))
    if len(members) != 2 * m:
        raise NumericalError(f"built {len(members)} basis members, expected {2 * m}")
    return tuple(members)


def boundary_matrix(m: int, lam: float, bc: str, length: float = 1.0) -> np.ndarray:
    """2m x 2m matrix of boundary conditions applied to the solution basis.

    Rows run over constrained derivative orders (0..m-1 clamped, m..2m-1
    free), each evaluated at x = 0 then x = length; columns over basis
    members.  lam is an eigenvalue iff this matrix is singular.
    """
    check_bc(bc)
    members = real_solution_basis(m, lam, length)
    orders = range(0, m) if bc == BC_DIRICHLET else range(m, 2 * m)
    M = np.empty((2 * m, 2 * m))
    r = 0
    for p in orders:
        for x in (0.0, length):
            M[r] = [f.deriv(p, x) for f in members]
            r += 1
    return M


def det_indicator(m: int, lam: float, bc: str, length: float = 1.0) -> tuple[int, float]:
    """Sign and log-magnitude of the boundary determinant at lam.

    Rows are scaled to unit max beforehand; positive row scaling changes the
    determinant's magnitude but never its sign or zero set, and it keeps the
    LU factorization well scaled out to large lam.
    """
    M = boundary_matrix(m, lam, bc, length)
    scale = np.max(np.abs(M), axis=1)
    scale[scale == 0.0] = 1.0
    sign, logmag = np.linalg.slogdet(M / scale[:, None])
    return int(sign), float(logmag)


def _bisect(m: int, bc: str, length: float, blo: float, bhi: float,
            slo: int, tol_root: float) -> float:
    """Shrink a sign-change bracket in beta until the lam interval is tight."""
    two_m = 2 * m
    for _ in range(200):
        lam_lo, lam_hi = blo ** two_m, bhi ** two_m
        mid = 0.5 * (blo + bhi)
        lam_mid = mid ** two_m
        if lam_hi - lam_lo <= tol_root * lam_mid or mid <= blo or mid >= bhi:
            return lam_mid
        s, _ = det_indicator(m, lam_mid, bc, length)
        if s == 0:
            return lam_mid
        if s == slo:
            blo = mid
        else:
            bhi = mid
    raise NumericalError("bisection exceeded 200 steps without meeting tol_root")


def positive_roots(m: int, bc: str, count: int, length: float = 1.0,
                   tol: ToleranceConfig = ToleranceConfig()) -> np.ndarray:
    """First `count` lam > 0 where the boundary determinant vanishes."""
    m = check_order(m)
    bc = check_bc(bc)
    if count < 1:
        raise InvalidArgumentError(f"count must be >= 1, got {count}")
    if not length > 0.0:
        raise InvalidArgumentError(f"length must be positive, got {length!r}")
    step = 0.02 * np.pi / length
    beta_max = (count + 4 * m + 8) * np.pi / length
    roots: list[float] = []
    beta = step
    s_prev, _ = det_indicator(m, beta ** (2 * m), bc, length)
    while len(roots) < count:
        beta_next = beta + step
        if beta_next > beta_max:
            raise NumericalError(
                f"found only {len(roots)} of {count} roots below beta={beta_max:.3g}"
            )
        s, _ = det_indicator(m, beta_next ** (2 * m), bc, length)
        if s == 0:
            roots.append(beta_next ** (2 * m))
            beta_next += step
            s, _ = det_indicator(m, beta_next ** (2 * m), bc, length)
        elif s != s_prev:
            roots.append(_bisect(m, bc, length, beta, beta_next, s_prev, tol.tol_root))
        beta, s_prev = beta_next, s
    return np.asarray(roots)


def solve_1d_spectrum(m: int, bc: str, count: int, length: float = 1.0,
                      tol: ToleranceConfig = ToleranceConfig()) -> Spectrum:
    """First `count` eigenvalues on (0, length), zeros of the free problem included.

    The free (natural) problem starts with exactly m zero eigenvalues, the
    polynomials of degree < m; every following eigenvalue is a positive root
    of the boundary determinant.
    """
    m = check_order(m)
    bc = check_bc(bc)
    if count < 1:
        raise InvalidArgumentError(f"count must be >= 1, got {count}")
    zeros = m if bc == BC_NEUMANN else 0
    n_pos = max(count - zeros, 0)
    vals = [0.0] * min(zeros, count)
    if n_pos:
        vals.extend(positive_roots(m, bc, n_pos, length, tol))
    return make_spectrum(m, bc, Domain.interval(length), MethodInfo("Exact1D"),
                         np.asarray(vals), trusted_count=count, tol=tol)


def check_root_coincidence(m: int, count: int, length: float = 1.0,
                           rel_tol: float = 1e-8,
                           tol: ToleranceConfig = ToleranceConfig(),
                           perturb: float = 0.0) -> VerificationReport:
    """Claim: on an interval the two boundary determinants share every positive root.

    Compares the first `count` positive eigenvalues of the clamped and the
    free problem pairwise; with the free problem's m zero modes this means
    the free eigenvalue with index k+m equals the clamped one with index k.
    perturb scales the free roots by (1 + perturb) and exists purely as a
    failure-injection hook for exit-code testing.
    """
    lam_d = positive_roots(m, BC_DIRICHLET, count, length, tol)
    lam_n = positive_roots(m, BC_NEUMANN, count, length, tol) * (1.0 + perturb)
    records = []
    for k in range(count):
        rel = abs(lam_n[k] - lam_d[k]) / lam_d[k]
        records.append(CheckRecord(k=k + 1, lhs=float(lam_n[k]), rhs=float(lam_d[k]),
                                   slack=float(rel_tol - rel)))
    margin = min(r.slack for r in records)
    return VerificationReport(
        claim_id="oned-coincidence",
        passed=margin >= 0.0,
        margin=margin,
        details=tuple(records),
        notes=(f"first {count} positive roots of the clamped and free boundary "
               f"determinants on (0, {length:g}) at m={m}, compared to "
               f"relative tolerance {rel_tol:g}"),
        config_echo={"m": m, "count": count, "length": length, "rel_tol": rel_tol,
                     "perturb": perturb},
    )
