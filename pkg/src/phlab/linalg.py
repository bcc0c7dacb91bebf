"""Dense numerical kernels: quadrature, Legendre evaluation, factorizations.

Everything here works on plain ndarrays.  The generalized symmetric solve
reduces the pencil to a standard symmetric problem through our own Cholesky
factorization and hands only that dense symmetric problem to LAPACK.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import eigh, solve_triangular

from .model import CapabilityError, InvalidArgumentError, NumericalError


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Newton iteration on P_n from the Chebyshev-like initial guess; exact for
    polynomials of degree <= 2n - 1.

    Parameters
    ----------
    n : int
        Number of nodes, within the supported range 1..256.

    Returns
    -------
    x, w : ndarray
        Nodes in ascending order and the matching positive weights.
    """
    if not 1 <= n <= 256:
        raise CapabilityError(f"quadrature size n={n} outside the supported range 1..256")
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        pn = p1 if n > 1 else x
        if n == 1:
            pn, dpn = x, np.ones_like(x)
        else:
            dpn = n * (x * p1 - p0) / (x * x - 1.0)
        dx = pn / dpn
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise NumericalError("Gauss-Legendre Newton iteration did not converge")
    # recompute P_n' at the converged nodes for the weights
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dpn = n * (x * p1 - p0) / (x * x - 1.0) if n > 1 else np.ones_like(x)
    w = 2.0 / ((1.0 - x * x) * dpn * dpn)
    order = np.argsort(x)
    return x[order], w[order]


def legendre_derivatives(num: int, t: np.ndarray, max_deriv: int) -> np.ndarray:
    """Evaluate P_0 .. P_{num-1} and their first max_deriv derivatives.

    Uses the differentiated three-term recurrence
        i P_i^(r) = (2i-1) (t P_{i-1}^(r) + r P_{i-1}^(r-1)) - (i-1) P_{i-2}^(r).

    Returns an array of shape (max_deriv + 1, num, len(t)).
    """
    t = np.asarray(t, dtype=float)
    if num < 1 or max_deriv < 0:
        raise InvalidArgumentError("need num >= 1 and max_deriv >= 0")
    out = np.zeros((max_deriv + 1, num, t.size))
    out[0, 0] = 1.0
    if num > 1:
        out[0, 1] = t
        if max_deriv >= 1:
            out[1, 1] = 1.0
    for i in range(2, num):
        for r in range(max_deriv + 1):
            low = out[r - 1, i - 1] if r >= 1 else 0.0
            out[r, i] = ((2 * i - 1) * (t * out[r, i - 1] + r * low)
                         - (i - 1) * out[r, i - 2]) / i
    return out


def legendre_eval(i: int, t: float, max_deriv: int) -> np.ndarray:
    """P_i(t) and its derivatives up to order max_deriv (<= 6), |t| <= 1."""
    if i < 0:
        raise InvalidArgumentError(f"polynomial index must be >= 0, got {i}")
    if not 0 <= max_deriv <= 6:
        raise InvalidArgumentError(f"max_deriv must be in 0..6, got {max_deriv}")
    if abs(t) > 1.0:
        raise InvalidArgumentError(f"evaluation point {t!r} outside [-1, 1]")
    table = legendre_derivatives(i + 1, np.array([t]), max_deriv)
    return table[:, i, 0]


def cholesky_lower(B: np.ndarray) -> np.ndarray:
    """Lower-triangular Cholesky factor of a symmetric positive definite matrix.

    Left-looking column sweep; raises NumericalError naming the first pivot
    that fails, which is how indefiniteness of an assembled mass matrix
    surfaces.
    """
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise InvalidArgumentError("cholesky_lower expects a square matrix")
    n = B.shape[0]
    L = np.zeros_like(B)
    for j in range(n):
        col = B[j:, j] - L[j:, :j] @ L[j, :j]
        pivot = col[0]
        if not np.isfinite(pivot) or pivot <= 0.0:
            raise NumericalError(f"Cholesky pivot {j} is {pivot:.3e}, matrix not positive definite")
        L[j, j] = np.sqrt(pivot)
        L[j + 1:, j] = col[1:] / L[j, j]
    return L


def force_symmetric(M: np.ndarray, rel_tol: float = 1e-12) -> np.ndarray:
    """Symmetrize M after checking the asymmetry is roundoff-sized."""
    M = np.asarray(M, dtype=float)
    scale = np.max(np.abs(M), initial=0.0)
    asym = np.max(np.abs(M - M.T), initial=0.0)
    if scale > 0.0 and asym > rel_tol * scale:
        raise NumericalError(f"matrix asymmetry {asym:.3e} exceeds {rel_tol:.1e} * scale")
    return 0.5 * (M + M.T)


def force_hermitian(M: np.ndarray, rel_tol: float = 1e-12) -> np.ndarray:
    """Hermitian counterpart of force_symmetric for complex assemblies."""
    M = np.asarray(M, dtype=complex)
    scale = np.max(np.abs(M), initial=0.0)
    asym = np.max(np.abs(M - M.conj().T), initial=0.0)
    if scale > 0.0 and asym > rel_tol * scale:
        raise NumericalError(f"matrix deviation from Hermitian {asym:.3e} exceeds {rel_tol:.1e} * scale")
    return 0.5 * (M + M.conj().T)


def realify_hermitian(H: np.ndarray) -> np.ndarray:
    """Real symmetric image [[Re H, -Im H], [Im H, Re H]] of a Hermitian matrix.

    Each eigenvalue of H appears twice; eigenvectors x + iy map to stacked
    real vectors (x, y), so generalized pencils can be solved in real
    arithmetic.
    """
    H = np.asarray(H, dtype=complex)
    R = np.block([[H.real, -H.imag], [H.imag, H.real]])
    return 0.5 * (R + R.T)


def min_singular_value(M: np.ndarray) -> float:
    return float(np.linalg.svd(np.asarray(M), compute_uv=False)[-1])


def solve_gen_eig(A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve A v = w B v for symmetric A and symmetric positive definite B.

    The pencil is first rescaled by the diagonal congruence d = diag(B)^(-1/2),
    which leaves eigenvalues unchanged and tames the condition number of mass
    matrices built from non-orthogonal shape functions.  Reduction to a
    standard symmetric problem goes through cholesky_lower; the dense
    symmetric eigensolve itself is LAPACK's.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    V : ndarray
        Columns are eigenvectors, B-orthonormal: V.T @ B @ V = I.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidArgumentError("solve_gen_eig expects two square matrices of equal shape")
    if A.shape[0] > 2500:
        raise CapabilityError(f"pencil dimension {A.shape[0]} exceeds the supported cap 2500")
    db = np.diag(B)
    if np.any(db <= 0.0) or not np.all(np.isfinite(db)):
        raise NumericalError("mass matrix has a nonpositive diagonal entry")
    d = 1.0 / np.sqrt(db)
    As = 0.5 * ((d[:, None] * A * d[None, :]) + (d[:, None] * A * d[None, :]).T)
    Bs = 0.5 * ((d[:, None] * B * d[None, :]) + (d[:, None] * B * d[None, :]).T)
    L = cholesky_lower(Bs)
    Y = solve_triangular(L, As, lower=True)
    C = solve_triangular(L, Y.T, lower=True).T
    C = 0.5 * (C + C.T)
    w, Q = eigh(C)
    V = solve_triangular(L.T, Q, lower=False)
    V = d[:, None] * V
    return w, V
