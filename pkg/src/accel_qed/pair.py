"""Van der Waals / Casimir-Polder energy of two uniformly accelerated atoms.

The interaction at lab time t (atoms at rest at t = 0) is

    E = E_static + E_linear + E_quadratic

    E_static    = -(hbar c / pi R^2) int aA aB [1 + 2/uR + 5/u^2R^2 + 6/u^3R^3 + 3/u^4R^4] u^4 e^{-2uR} du
    E_linear    = (a^2 t / 2c^3) (hbar c / pi R^3) int aA aB (3 + 4/uR + 2/u^2R^2) u^2 e^{-2uR} du
    E_quadratic = (a^2 t^2 / 6c^2) (hbar c / pi R^2) int aA aB (-1 + 4/uR + 8/u^2R^2 + 8/u^3R^3 + 4/u^4R^4) u^4 e^{-2uR} du

where u is a wavenumber and aX = alpha_X(i c u).  Substituting x = uR turns
each kernel into a polynomial in x times e^{-2x}; the integrals are done in
that form, which keeps them regular at x = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .atom import PolarizabilityModel, Static, london_integral
from .core import check_acceleration, constants
from .quad import DEFAULT_CONFIG, IntegralResult, QuadConfig, QuadratureError, integrate_decaying

__all__ = [
    "PairConfig",
    "InteractionBreakdown",
    "static_vdw",
    "linear_correction",
    "quadratic_correction",
    "total_interaction",
    "zone_asymptote",
    "classify_zone",
    "powerlaw_exponent",
    "relative_correction",
    "TERMS",
]

TERMS = ("static", "linear", "quadratic")

# polynomial coefficients, lowest power of x first
_STATIC_POLY = (3.0, 6.0, 5.0, 2.0, 1.0)
_LINEAR_POLY = (2.0, 4.0, 3.0)
_QUADRATIC_POLY = (4.0, 8.0, 8.0, 4.0, -1.0)


@dataclass(frozen=True)
class PairConfig:
    R: float  # cm
    alpha_a: PolarizabilityModel
    alpha_b: PolarizabilityModel
    a: float = 0.0  # cm/s^2
    t: float = 0.0  # s

    def __post_init__(self):
        if not (math.isfinite(self.R) and self.R > 0):
            raise ValueError(f"R must be finite and positive (cm), got {self.R!r}")
        check_acceleration(self.a)
        if not (math.isfinite(self.t) and self.t >= 0):
            raise ValueError(f"t must be finite and >= 0 (s), got {self.t!r}")
        if not math.isfinite(self.atc2):
            raise ValueError("a^2 t^2 / c^2 is not finite")

    @property
    def atc2(self) -> float:
        """a^2 t^2 / c^2."""
        return (self.a * self.t / constants().c) ** 2

    @property
    def perturbative(self) -> bool:
        """False once a^2 t^2 / c^2 > 1, beyond the moderate-time regime."""
        return self.atc2 <= 1.0

    @property
    def resonance(self) -> float | None:
        """Lowest resonance (rad/s) among both atoms, None if both are static."""
        res = [m.resonance for m in (self.alpha_a, self.alpha_b) if m.resonance is not None]
        return min(res) if res else None

    def with_R(self, R: float) -> "PairConfig":
        return PairConfig(R, self.alpha_a, self.alpha_b, self.a, self.t)


@dataclass(frozen=True)
class InteractionBreakdown:
    static_term: float
    linear_t_term: float
    quadratic_t_term: float
    total: float
    converged: bool = True


def _kernel_integral(cfg: PairConfig, poly, q: QuadConfig) -> IntegralResult:
    """int_0^inf aA(i c x / R) aB(i c x / R) poly(x) e^{-2x} dx (cm^6)."""
    c = constants().c
    A, B, R = cfg.alpha_a, cfg.alpha_b, cfg.R
    coeffs = np.array(poly[::-1])

    def f(x):
        u = c * x / R
        return A.alpha_iu(u) * B.alpha_iu(u) * np.polyval(coeffs, x) * np.exp(-2.0 * x)

    points = sorted(
        {R * m.resonance / c for m in (A, B) if m.resonance is not None}
    )
    # resonances far below the decay scale need a few extra seeds to be seen
    seeds = [p * s for p in points for s in (1.0, 10.0, 100.0) if p * s < 18.0]
    return integrate_decaying(f, 0.5, q, points=seeds, vectorized=True)


def _checked(res: IntegralResult, strict: bool) -> IntegralResult:
    if strict and not res.converged:
        raise QuadratureError(
            f"pair integral did not converge (value {res.value!r}, "
            f"error estimate {res.abs_error_estimate!r}, {res.evaluations} evaluations)"
        )
    return res


def _is_zero(cfg: PairConfig) -> bool:
    return cfg.alpha_a.static_value == 0.0 or cfg.alpha_b.static_value == 0.0


def _static(cfg: PairConfig, q: QuadConfig, strict: bool):
    if _is_zero(cfg):
        return 0.0, True
    k = constants()
    res = _checked(_kernel_integral(cfg, _STATIC_POLY, q), strict)
    return -k.hbar * k.c / (math.pi * cfg.R**7) * res.value, res.converged


def _linear(cfg: PairConfig, q: QuadConfig, strict: bool):
    if cfg.a == 0.0 or cfg.t == 0.0 or _is_zero(cfg):
        return 0.0, True
    k = constants()
    res = _checked(_kernel_integral(cfg, _LINEAR_POLY, q), strict)
    pref = cfg.a**2 * cfg.t / (2.0 * k.c**3) * k.hbar * k.c / (math.pi * cfg.R**6)
    return pref * res.value, res.converged


def _quadratic(cfg: PairConfig, q: QuadConfig, strict: bool):
    if cfg.a == 0.0 or cfg.t == 0.0 or _is_zero(cfg):
        return 0.0, True
    k = constants()
    res = _checked(_kernel_integral(cfg, _QUADRATIC_POLY, q), strict)
    pref = cfg.atc2 / 6.0 * k.hbar * k.c / (math.pi * cfg.R**7)
    return pref * res.value, res.converged


def static_vdw(cfg: PairConfig, q: QuadConfig = DEFAULT_CONFIG) -> float:
    """Interaction energy (erg) of the two atoms at rest; negative for ground states."""
    return _static(cfg, q, True)[0]


def linear_correction(cfg: PairConfig, q: QuadConfig = DEFAULT_CONFIG) -> float:
    """Correction proportional to a^2 t (erg); exactly zero without quadrature if a t = 0."""
    return _linear(cfg, q, True)[0]


def quadratic_correction(cfg: PairConfig, q: QuadConfig = DEFAULT_CONFIG) -> float:
    """Correction proportional to a^2 t^2 (erg)."""
    return _quadratic(cfg, q, True)[0]


def total_interaction(
    cfg: PairConfig, q: QuadConfig = DEFAULT_CONFIG, *, strict: bool = True
) -> InteractionBreakdown:
    s, ok_s = _static(cfg, q, strict)
    lin, ok_l = _linear(cfg, q, strict)
    quad, ok_q = _quadratic(cfg, q, strict)
    return InteractionBreakdown(s, lin, quad, s + lin + quad, ok_s and ok_l and ok_q)


def relative_correction(cfg: PairConfig, q: QuadConfig = DEFAULT_CONFIG) -> float:
    """|linear + quadratic| / |static|."""
    b = total_interaction(cfg, q)
    if b.static_term == 0.0:
        raise ZeroDivisionError("static term is zero; relative correction undefined")
    return abs(b.linear_t_term + b.quadratic_t_term) / abs(b.static_term)


# --- zone asymptotics ---------------------------------------------------------

def classify_zone(cfg: PairConfig, margin: float = 10.0) -> str:
    """'near' if R < (c/w0)/margin, 'far' if R > margin c/w0, else 'intermediate'.

    w0 is the lowest resonance among both atoms; two static atoms are
    always 'far'.
    """
    res = cfg.resonance
    if res is None:
        return "far"
    x = cfg.R * res / constants().c
    if x < 1.0 / margin:
        return "near"
    if x > margin:
        return "far"
    return "intermediate"


def zone_asymptote(term: str, zone: str, cfg: PairConfig, q: QuadConfig = DEFAULT_CONFIG) -> float:
    """Leading near- or far-zone closed form of one term (erg).

    near: static -3 hbar c L / pi R^6, linear (a^2 t / c^3) hbar c L / pi R^5,
          quadratic (2 a^2 t^2 / 3 c^2) hbar c L / pi R^6, with L the London
          integral over wavenumber;
    far:  static -(23/4 pi) hbar c aA aB / R^7, linear (11/8 pi)(a^2 t / c^3)
          hbar c aA aB / R^6, quadratic (9/8 pi)(a^2 t^2 / c^2) hbar c aA aB / R^7,
          with static polarizabilities aA, aB.
    """
    if term not in TERMS:
        raise ValueError(f"unknown term {term!r}; expected one of {TERMS}")
    k = constants()
    hc = k.hbar * k.c
    R = cfg.R
    if zone == "near":
        if isinstance(cfg.alpha_a, Static) or isinstance(cfg.alpha_b, Static):
            raise ValueError("near-zone asymptotes need frequency-dependent (Lorentz or transition) models")
        L = london_integral(cfg.alpha_a, cfg.alpha_b, q)
        if not L.converged:
            raise QuadratureError("London integral did not converge")
        base = hc * L.value / math.pi
        if term == "static":
            return -3.0 * base / R**6
        if term == "linear":
            return cfg.a**2 * cfg.t / k.c**3 * base / R**5
        return 2.0 * cfg.atc2 / 3.0 * base / R**6
    if zone == "far":
        base = hc * cfg.alpha_a.static_value * cfg.alpha_b.static_value / math.pi
        if term == "static":
            return -23.0 / 4.0 * base / R**7
        if term == "linear":
            return 11.0 / 8.0 * cfg.a**2 * cfg.t / k.c**3 * base / R**6
        return 9.0 / 8.0 * cfg.atc2 * base / R**7
    raise ValueError(f"unknown zone {zone!r}; expected 'near' or 'far'")


_TERM_FUNCS = {"static": static_vdw, "linear": linear_correction, "quadratic": quadratic_correction}


def powerlaw_exponent(
    term: str, cfg: PairConfig, dlogR: float = 1e-3, q: QuadConfig = DEFAULT_CONFIG
) -> float:
    """Centered log-log slope d ln|E| / d ln R of one term at ``cfg.R``."""
    try:
        fn = _TERM_FUNCS[term]
    except KeyError:
        raise ValueError(f"unknown term {term!r}; expected one of {TERMS}") from None
    if not 0 < dlogR < 1:
        raise ValueError(f"dlogR must lie in (0, 1), got {dlogR!r}")
    hi = fn(cfg.with_R(cfg.R * (1.0 + dlogR)), q)
    lo = fn(cfg.with_R(cfg.R * (1.0 - dlogR)), q)
    if hi == 0.0 or lo == 0.0:
        raise ValueError(f"{term} term vanishes at R={cfg.R!r}; exponent undefined")
    return (math.log(abs(hi)) - math.log(abs(lo))) / (math.log1p(dlogR) - math.log1p(-dlogR))
