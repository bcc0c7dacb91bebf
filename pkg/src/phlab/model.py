"""Core types shared across the package: domains, spectra, tolerances, config."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import comb, isfinite
from typing import Optional

import numpy as np


class PhlabError(Exception):
    """Base class for errors raised by this package."""


class InvalidArgumentError(PhlabError):
    """A caller-supplied argument or config value is malformed."""


class CapabilityError(PhlabError):
    """The request is well formed but outside the supported range."""


class NumericalError(PhlabError):
    """A numerical routine failed to meet its contract."""


class GramDegeneracyError(NumericalError):
    """A combined basis is too close to linearly dependent to certify."""


BC_DIRICHLET = "dirichlet"
BC_NEUMANN = "neumann"

M_MIN, M_MAX = 1, 3


def check_bc(bc: str) -> str:
    if bc not in (BC_DIRICHLET, BC_NEUMANN):
        raise InvalidArgumentError(f"bc must be 'dirichlet' or 'neumann', got {bc!r}")
    return bc


def check_order(m: int) -> int:
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise InvalidArgumentError(f"m must be an integer, got {m!r}")
    if not (M_MIN <= m <= M_MAX):
        raise CapabilityError(
            f"operator order m={m} is unsupported; supported orders are {M_MIN}..{M_MAX}"
        )
    return int(m)


def n_poly_dim(d: int, m: int) -> int:
    """Dimension of the space of polynomials of degree <= m-1 in d variables.

    This is the multiplicity of the zero eigenvalue of the order-2m natural
    (free) problem on any bounded Lipschitz domain in R^d.
    """
    if d < 1 or m < 1:
        raise InvalidArgumentError(f"need d >= 1 and m >= 1, got d={d}, m={m}")
    return comb(d + m - 1, d)


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used throughout.

    tol_zero      relative threshold for clamping near-zero eigenvalues
    tol_root      relative width target for 1d root bisection
    tol_identity  bound for pointwise identity residuals in the trial space
    margin_factor strictness safety factor against discretization error
    """

    tol_zero: float = 1e-6
    tol_root: float = 1e-12
    tol_identity: float = 1e-9
    margin_factor: float = 5.0

    def __post_init__(self):
        for name in ("tol_zero", "tol_root", "tol_identity"):
            v = getattr(self, name)
            if not (isinstance(v, float) and isfinite(v) and v > 0.0):
                raise InvalidArgumentError(f"{name} must be a positive finite float, got {v!r}")
        if not (isinstance(self.margin_factor, float) and self.margin_factor >= 1.0):
            raise InvalidArgumentError(
                f"margin_factor must be a float >= 1, got {self.margin_factor!r}"
            )


@dataclass(frozen=True)
class Domain:
    """An interval (0, lx) or an axis-aligned rectangle (0, lx) x (0, ly)."""

    shape: str  # "interval" or "rectangle"
    lx: float
    ly: Optional[float] = None

    def __post_init__(self):
        if self.shape not in ("interval", "rectangle"):
            raise InvalidArgumentError(f"unknown domain shape {self.shape!r}")
        if not (isfinite(self.lx) and self.lx > 0.0):
            raise InvalidArgumentError(f"lx must be positive and finite, got {self.lx!r}")
        if self.shape == "rectangle":
            if self.ly is None or not (isfinite(self.ly) and self.ly > 0.0):
                raise InvalidArgumentError(f"ly must be positive and finite, got {self.ly!r}")
        elif self.ly is not None:
            raise InvalidArgumentError("interval domains take a single length")

    @staticmethod
    def interval(length: float = 1.0) -> "Domain":
        return Domain("interval", float(length))

    @staticmethod
    def rectangle(lx: float = 1.0, ly: float = 1.0) -> "Domain":
        return Domain("rectangle", float(lx), float(ly))

    @property
    def dimension(self) -> int:
        return 1 if self.shape == "interval" else 2

    def as_json(self) -> dict:
        if self.shape == "interval":
            return {"shape": "interval", "length": self.lx}
        return {"shape": "rectangle", "lx": self.lx, "ly": self.ly}


@dataclass(frozen=True)
class MethodInfo:
    """How a spectrum was computed."""

    kind: str  # "Exact1D" or "Galerkin2D"
    n_per_axis: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Exact1D", "Galerkin2D"):
            raise InvalidArgumentError(f"unknown method kind {self.kind!r}")
        if self.kind == "Galerkin2D" and (self.n_per_axis is None or self.n_per_axis < 1):
            raise InvalidArgumentError("Galerkin2D requires n_per_axis >= 1")

    def as_json(self) -> dict:
        if self.kind == "Exact1D":
            return {"kind": "Exact1D"}
        return {"kind": "Galerkin2D", "n_per_axis": self.n_per_axis}


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of one boundary-condition problem.

    For the natural (free) problem the leading n_poly_dim(d, m) entries are
    exact zeros; everything else is strictly positive.  Entries with 1-based
    index <= trusted_count are accurate enough to compare against other
    spectra; anything beyond is not exposed.
    """

    m: int
    bc: str
    domain: Domain
    method: MethodInfo
    values: np.ndarray
    trusted_count: int
    tol: ToleranceConfig = field(default_factory=ToleranceConfig)

    @property
    def zero_count(self) -> int:
        return n_poly_dim(self.domain.dimension, self.m) if self.bc == BC_NEUMANN else 0

    def value(self, k: int) -> float:
        """1-based eigenvalue access, restricted to the trusted range."""
        if not (1 <= k <= self.trusted_count):
            raise InvalidArgumentError(
                f"index k={k} outside trusted range 1..{self.trusted_count}"
            )
        return float(self.values[k - 1])

    @property
    def positive_values(self) -> np.ndarray:
        return self.values[self.zero_count:]

    def as_json(self) -> dict:
        return {
            "schema_version": "1",
            "m": self.m,
            "bc": self.bc,
            "domain": self.domain.as_json(),
            "method": self.method.as_json(),
            "eigenvalues": [float(v) for v in self.values],
            "trusted_count": self.trusted_count,
            "tolerances": {
                "tol_zero": self.tol.tol_zero,
                "tol_root": self.tol.tol_root,
                "tol_identity": self.tol.tol_identity,
                "margin_factor": self.tol.margin_factor,
            },
        }


def make_spectrum(m: int, bc: str, domain: Domain, method: MethodInfo,
                  values: np.ndarray, trusted_count: int,
                  tol: ToleranceConfig = ToleranceConfig()) -> Spectrum:
    """Clamp the zero block, validate sign/order structure, and freeze a Spectrum.

    Clamping is relative: entries are zeroed when |v| <= tol_zero * ref with
    ref the first entry past the expected zero block.  Any residual negative
    entry, a nonzero inside the zero block, or a zero outside it is treated as
    a failure of the numerics, not of the caller.
    """
    m = check_order(m)
    bc = check_bc(bc)
    vals = np.asarray(values, dtype=float).copy()
    if vals.ndim != 1:
        raise InvalidArgumentError("values must be a 1d array")
    if not (1 <= trusted_count <= vals.size):
        raise InvalidArgumentError(
            f"trusted_count={trusted_count} outside 1..{vals.size}"
        )
    z = n_poly_dim(domain.dimension, m) if bc == BC_NEUMANN else 0
    ref = float(vals[z]) if z < vals.size else float(np.max(np.abs(vals), initial=1.0))
    if ref <= 0.0:
        raise NumericalError(
            f"first eigenvalue past the zero block is {ref!r}, expected positive"
        )
    vals[np.abs(vals) <= tol.tol_zero * ref] = 0.0
    if np.any(vals[:z] != 0.0):
        bad = int(np.nonzero(vals[:z])[0][0])
        raise NumericalError(
            f"eigenvalue {bad + 1} should sit in the zero block but is {vals[bad]:.3e}"
        )
    if np.any(vals[z:] <= 0.0):
        bad = z + int(np.nonzero(vals[z:] <= 0.0)[0][0])
        raise NumericalError(
            f"eigenvalue {bad + 1} is {vals[bad]:.3e}, expected strictly positive"
        )
    if np.any(np.diff(vals) < 0.0):
        raise NumericalError("eigenvalues are not ascending after clamping")
    return Spectrum(m=m, bc=bc, domain=domain, method=method, values=vals,
                    trusted_count=int(trusted_count), tol=tol)


@dataclass(frozen=True)
class CheckRecord:
    """One compared pair inside a verification claim; slack >= 0 means ok."""

    k: int
    lhs: float
    rhs: float
    slack: float


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    passed: bool
    margin: float
    details: tuple[CheckRecord, ...]
    notes: str = ""
    config_echo: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {
            "schema_version": "1",
            "claim_id": self.claim_id,
            "passed": bool(self.passed),
            "margin": float(self.margin),
            "details": [
                {"k": int(r.k), "lhs": float(r.lhs), "rhs": float(r.rhs),
                 "slack": float(r.slack)}
                for r in self.details
            ],
            "notes": self.notes,
            "config": self.config_echo,
        }


# Config handling.  A flat dict of primitives comes in (defaults, then file,
# then command-line flags, later sources winning); validate_config turns it
# into a typed RunConfig or raises.

CONFIG_DEFAULTS: dict = {
    "m": 2,
    "bc": None,
    "n": 16,
    "count": 10,
    "k_max": 8,
    "length": 1.0,
    "lx": 1.0,
    "ly": 1.0,
    "seed": 1729,
    "perturb": 0.0,
    "tol_zero": 1e-6,
    "tol_root": 1e-12,
    "tol_identity": 1e-9,
    "margin_factor": 5.0,
}


@dataclass(frozen=True)
class RunConfig:
    m: int
    bc: Optional[str]
    n: int
    count: int
    k_max: int
    length: float
    lx: float
    ly: float
    seed: int
    perturb: float
    tol: ToleranceConfig

    def with_overrides(self, **kv) -> "RunConfig":
        return replace(self, **kv)


def merge_config(*layers: dict) -> dict:
    """Later layers win; None values do not override earlier settings."""
    out = dict(CONFIG_DEFAULTS)
    for layer in layers:
        for k, v in layer.items():
            if v is not None:
                out[k] = v
    return out


def validate_config(raw: dict) -> RunConfig:
    """Validate a merged flat config dict and return a typed RunConfig.

    Unknown keys are rejected rather than ignored so that a typo in a config
    file cannot silently fall back to a default.
    """
    unknown = sorted(set(raw) - set(CONFIG_DEFAULTS))
    if unknown:
        raise InvalidArgumentError(f"unknown config key: {unknown[0]!r}")
    cfg = dict(CONFIG_DEFAULTS)
    cfg.update({k: v for k, v in raw.items() if v is not None})

    m = cfg["m"]
    if isinstance(m, float) and m.is_integer():
        m = int(m)
    m = check_order(m)

    bc = cfg["bc"]
    if bc is not None:
        bc = check_bc(bc)

    def _int(name, lo):
        v = cfg[name]
        if isinstance(v, float) and v.is_integer():
            v = int(v)
        if not isinstance(v, int) or isinstance(v, bool) or v < lo:
            raise InvalidArgumentError(f"{name} must be an integer >= {lo}, got {cfg[name]!r}")
        return v

    def _pos(name):
        v = cfg[name]
        if isinstance(v, int) and not isinstance(v, bool):
            v = float(v)
        if not isinstance(v, float) or not isfinite(v) or v <= 0.0:
            raise InvalidArgumentError(f"{name} must be a positive finite number, got {cfg[name]!r}")
        return v

    n = _int("n", 1)
    count = _int("count", 1)
    k_max = _int("k_max", 1)
    seed = _int("seed", 0)
    length, lx, ly = _pos("length"), _pos("lx"), _pos("ly")
    perturb = cfg["perturb"]
    if isinstance(perturb, int) and not isinstance(perturb, bool):
        perturb = float(perturb)
    if not isinstance(perturb, float) or not isfinite(perturb) or perturb < 0.0:
        raise InvalidArgumentError(f"perturb must be a nonnegative finite number, got {cfg['perturb']!r}")
    tol = ToleranceConfig(
        tol_zero=_pos("tol_zero"),
        tol_root=_pos("tol_root"),
        tol_identity=_pos("tol_identity"),
        margin_factor=float(cfg["margin_factor"])
        if isinstance(cfg["margin_factor"], (int, float)) and not isinstance(cfg["margin_factor"], bool)
        else cfg["margin_factor"],
    )
    return RunConfig(m=m, bc=bc, n=n, count=count, k_max=k_max,
                     length=length, lx=lx, ly=ly, seed=seed, perturb=perturb, tol=tol)
