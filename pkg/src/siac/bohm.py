"""Bohm speed from (optionally filtered) plasma moment profiles.

Conventions: normalised units (``Z = m_i = e = 1`` by default), heat-flux
gradients by central differences with first-order one-sided ends, and
``dq/dphi = -(dq/dx) / E``. Per-variable kernel scalings are given in grid
cells and converted with the grid spacing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .convolution import filter_grid
from .exceptions import InvalidInputError, SIACError
from .grid import PointwiseData, build_mesh, lagrange_interpolant
from .kernel import KernelSpec

__all__ = [
    "VARIABLES",
    "DEFAULT_SCALINGS",
    "VALID",
    "COMPLEX_MODULUS",
    "DEGENERATE",
    "MomentSet",
    "BohmConfig",
    "BohmResult",
    "gradient",
    "compute_beta",
    "compute_bohm_speed",
    "filter_moments",
]

VARIABLES = (
    "q_n_e", "q_n_i", "Q_ee", "Q_ei", "Q_ii", "E", "R_T",
    "n_e", "n_i", "u_ex", "u_ix", "T_ex", "T_ix",
)

# per-variable kernel scalings in grid cells
DEFAULT_SCALINGS = {
    "q_n_e": 8, "q_n_i": 4, "Q_ee": 16, "Q_ei": 16, "Q_ii": 16, "E": 2, "R_T": 32,
    "n_e": 6, "n_i": 6, "u_ex": 8, "u_ix": 8, "T_ex": 16, "T_ix": 4,
}

VALID, COMPLEX_MODULUS, DEGENERATE = 0, 1, 2


@dataclass(frozen=True)
class MomentSet:
    """The thirteen moment profiles on a common uniform grid ``xs``."""

    xs: np.ndarray
    profiles: dict

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        if xs.ndim != 1 or xs.size < 2:
            raise InvalidInputError("a moment set needs at least two grid points")
        if np.any(np.diff(xs) <= 0):
            raise InvalidInputError("grid must be strictly increasing")
        missing = [v for v in VARIABLES if v not in self.profiles]
        if missing:
            raise InvalidInputError(f"missing moment profile(s): {', '.join(missing)}")
        profiles = {}
        for name in VARIABLES:
            arr = np.asarray(self.profiles[name], dtype=float)
            if arr.shape != xs.shape:
                raise InvalidInputError(
                    f"profile {name} has length {arr.size}, grid has {xs.size}"
                )
            profiles[name] = arr
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "profiles", profiles)

    @property
    def dx(self) -> float:
        return float((self.xs[-1] - self.xs[0]) / (self.xs.size - 1))

    @property
    def domain(self) -> tuple:
        h = self.dx
        return float(self.xs[0] - h / 2), float(self.xs[-1] + h / 2)

    def __getitem__(self, name):
        return self.profiles[name]


@dataclass(frozen=True)
class BohmConfig:
    """Physical constants, degeneracy tolerances and per-variable filtering.

    ``scalings`` maps variable names to kernel scalings in grid cells and
    defaults to DEFAULT_SCALINGS; partial overrides are merged onto it.
    """

    Z: float = 1.0
    m_i: float = 1.0
    e_charge: float = 1.0
    scalings: dict = field(default_factory=lambda: dict(DEFAULT_SCALINGS))
    r: int = 2
    order: int = 2
    generalized_spline: bool = True
    adaptive: bool = False
    eps_den: float = 1e-12
    eps_E: float = 1e-12
    eps_flux: float = 1e-12

    def __post_init__(self):
        for name in ("Z", "m_i", "e_charge"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"{name} must be positive")
        unknown = set(self.scalings) - set(VARIABLES)
        if unknown:
            raise InvalidInputError(f"unknown variable(s) in scalings: {sorted(unknown)}")
        merged = dict(DEFAULT_SCALINGS)
        merged.update({k: float(v) for k, v in self.scalings.items()})
        bad = [k for k, v in merged.items() if not v > 0]
        if bad:
            raise InvalidInputError(f"scalings must be positive: {bad}")
        object.__setattr__(self, "scalings", merged)

    def with_scalings(self, overrides: dict) -> "BohmConfig":
        merged = dict(self.scalings)
        merged.update(overrides)
        return replace(self, scalings=merged)


@dataclass(frozen=True)
class BohmResult:
    """Bohm speed modulus, beta, and a validity code per grid point."""

    xs: np.ndarray
    u_bohm: np.ndarray
    beta: np.ndarray
    validity: np.ndarray

    @property
    def n_complex(self) -> int:
        return int(np.count_nonzero(self.validity == COMPLEX_MODULUS))

    @property
    def n_degenerate(self) -> int:
        return int(np.count_nonzero(self.validity == DEGENERATE))


def gradient(values, dx: float) -> np.ndarray:
    """Central differences inside, first-order one-sided at the two ends."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise InvalidInputError("gradient needs at least two values")
    return np.gradient(v, dx, edge_order=1)


def _beta_and_flags(m: MomentSet, cfg: BohmConfig):
    dx = m.dx
    E = m["E"]
    gamma_e = m["n_e"] * m["u_ex"]
    gamma_i = m["n_i"] * m["u_ix"]
    dTe = gradient(m["T_ex"], dx)
    bad = (np.abs(E) < cfg.eps_E) | (np.abs(gamma_e) < cfg.eps_flux) | (
        np.abs(gamma_i) < cfg.eps_flux
    )
    R_T = m["R_T"]
    alpha_den = m["n_e"] * dTe
    # no thermal force means no alpha, even where the temperature is flat
    alpha_undefined = (R_T != 0) & (np.abs(alpha_den) < cfg.eps_den)
    bad |= alpha_undefined

    with np.errstate(divide="ignore", invalid="ignore"):
        alpha = np.where(R_T == 0, 0.0, -R_T / alpha_den)
        dqe_dphi = -gradient(m["q_n_e"], dx) / E
        dqi_dphi = -gradient(m["q_n_i"], dx) / E
        electron = (dqe_dphi + (m["Q_ee"] + m["Q_ei"]) / E) / (cfg.e_charge * gamma_e)
        ion = (dqi_dphi + m["Q_ii"] / E) / (cfg.Z * cfg.e_charge * gamma_i)
        num = 3 - (3 + 2 * alpha) * ion + alpha * electron
        den = 1 + (1 + alpha) * electron
        bad |= ~np.isfinite(den) | (np.abs(den) < cfg.eps_den)
        beta = num / den
    beta = np.where(bad, np.nan, beta)
    return beta, bad


def compute_beta(m: MomentSet, cfg: BohmConfig | None = None) -> np.ndarray:
    """Correction factor beta at every grid point (NaN where degenerate)."""
    return _beta_and_flags(m, cfg or BohmConfig())[0]


def compute_bohm_speed(m: MomentSet, cfg: BohmConfig | None = None) -> BohmResult:
    """Bohm speed profile; negative radicands report the modulus and a flag."""
    cfg = cfg or BohmConfig()
    beta, bad = _beta_and_flags(m, cfg)
    radicand = (cfg.Z * beta * m["T_ex"] + 3 * m["T_ix"]) / cfg.m_i
    validity = np.full(m.xs.size, VALID, dtype=int)
    validity[np.nan_to_num(radicand, nan=0.0) < 0] = COMPLEX_MODULUS
    validity[bad] = DEGENERATE
    u = np.sqrt(np.abs(radicand))
    return BohmResult(m.xs.copy(), u, beta, validity)


def variable_spec(m: MomentSet, cfg: BohmConfig, name: str, template: KernelSpec | None = None):
    """Kernel spec for one variable, scaled by its cell count times the spacing."""
    H = cfg.scalings[name] * m.dx
    kw = dict(r=cfg.r, order=cfg.order, generalized_spline=cfg.generalized_spline)
    if template is not None:
        kw = dict(r=template.r, order=template.order,
                  generalized_spline=template.generalized_spline)
    adaptive = cfg.adaptive if template is None else template.adaptive
    if adaptive:
        return KernelSpec(domain=m.domain, adaptive=True, H_int=H, h_grid=m.dx, **kw)
    return KernelSpec(domain=m.domain, H=H, **kw)


def filter_moments(m: MomentSet, cfg: BohmConfig | None = None,
                   template: KernelSpec | None = None, n_jobs=None) -> MomentSet:
    """Filter every profile with its own scaling on a piecewise-constant start.

    ``template`` (optional) supplies ``r``, the spline order and the boundary
    treatment instead of ``cfg``; its scaling and domain are ignored.
    """
    cfg = cfg or BohmConfig()
    mesh = None
    out = {}
    a, b = m.domain
    for name in VARIABLES:
        try:
            data = PointwiseData(a, b, m.xs, m[name])
            mesh = mesh or build_mesh(data)
            interp = lagrange_interpolant(data, mesh)
            spec = variable_spec(m, cfg, name, template)
            out[name] = filter_grid(interp, spec, m.xs, n_jobs=n_jobs)
        except SIACError as exc:
            raise type(exc)(f"filtering {name}: {exc}") from exc
    return MomentSet(m.xs, out)
