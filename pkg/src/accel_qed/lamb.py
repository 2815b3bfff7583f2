"""Radiative level shifts of a uniformly accelerated atom in free space.

With the isotropic contraction, every transition a -> b contributes

    vf:  (e^2 / 3 pi c^3) |r_ab|^2  P int dw w^3 (1 + a^2 / c^2 w^2) coth(pi c w / a) g_vf(w)
    rr: -(e^2 / 3 pi c^3) |r_ab|^2  P int dw w^3 g_rr(w)

with g_vf = 1/(w + w_ab) - 1/(w - w_ab) = 2 w_ba / (w^2 - w_ba^2) and
g_rr = 1/(w + w_ab) + 1/(w - w_ab) = 2 w / (w^2 - w_ba^2).  Both have their
only pole on the positive axis at w = |w_ba|, for ground and excited states
alike.

Writing coth(y) = 1 + 2 n(2y), with n the Bose occupation, splits the vf
integral into four pieces.  The two "1" pieces diverge at large w and are
cut off at Lambda; the two Bose pieces converge on their own with decay
scale a / (2 pi c).
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .atom import AtomModel, Transition
from .core import check_acceleration, constants
from .quad import (
    DEFAULT_CONFIG,
    IntegralResult,
    QuadConfig,
    QuadratureError,
    bose_occupation,
    integrate_principal_value,
)

__all__ = [
    "CutoffPolicy",
    "ShiftBreakdown",
    "Crossover",
    "BracketError",
    "rr_shift",
    "vf_shift",
    "comparable_acceleration",
    "thermal_ratio",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutoffPolicy:
    """UV regularization of the non-Bose pieces.

    ``hard`` integrates up to ``lam``; ``exponential`` multiplies the
    integrand by exp(-w / lam) and integrates to infinity.
    """

    lam: float | None = None  # rad/s; None -> m c^2 / hbar
    shape: str = "hard"

    def __post_init__(self):
        if self.shape not in ("hard", "exponential"):
            raise ValueError(f"cutoff shape must be 'hard' or 'exponential', got {self.shape!r}")
        if self.lam is not None and not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"cutoff lambda must be finite and positive, got {self.lam!r}")

    @property
    def value(self) -> float:
        return self.lam if self.lam is not None else constants().electron_rest_frequency

    def check(self, atom: AtomModel):
        if self.value <= atom.max_frequency:
            raise ValueError(
                f"cutoff {self.value:.6g} rad/s must exceed the largest transition "
                f"frequency {atom.max_frequency:.6g} rad/s"
            )


@dataclass(frozen=True)
class ShiftBreakdown:
    inertial_vf: float
    thermal_vf: float
    nonthermal_a2_bose: float
    nonthermal_a2_cutoff: float
    rr: float
    cutoff_lambda: float
    cutoff_shape: str
    acceleration: float
    converged: bool = True

    @property
    def total_vf(self) -> float:
        return self.inertial_vf + self.thermal_vf + self.nonthermal_a2_bose + self.nonthermal_a2_cutoff

    @property
    def nonthermal(self) -> float:
        return self.nonthermal_a2_bose + self.nonthermal_a2_cutoff

    def to_record(self) -> dict:
        """Flat JSON-ready record with unit-annotated keys."""
        return {
            "acceleration_cm_s2": self.acceleration,
            "cutoff_lambda_rad_s": self.cutoff_lambda,
            "cutoff_shape": self.cutoff_shape,
            "inertial_vf_erg": self.inertial_vf,
            "thermal_vf_erg": self.thermal_vf,
            "nonthermal_a2_bose_erg": self.nonthermal_a2_bose,
            "nonthermal_a2_cutoff_erg": self.nonthermal_a2_cutoff,
            "total_vf_erg": self.total_vf,
            "rr_erg": self.rr,
            "converged": self.converged,
        }


def _prefactor() -> float:
    k = constants()
    return k.e_charge**2 / (3.0 * math.pi * k.c**3)


def _g_vf(t: Transition):
    w = t.omega_ba
    aw = abs(w)
    return lambda om: 2.0 * w / ((om - aw) * (om + aw))


def _g_rr(t: Transition):
    aw = abs(t.omega_ba)
    return lambda om: 2.0 * om / ((om - aw) * (om + aw))


def _cutoff_integral(f, t: Transition, cutoff: CutoffPolicy, cfg: QuadConfig) -> IntegralResult:
    """P int_0^Lambda f (hard) or P int_0^inf f exp(-w/Lambda) (exponential)."""
    lam = cutoff.value
    pole = abs(t.omega_ba)
    if cutoff.shape == "hard":
        return integrate_principal_value(f, pole, cfg, upper=lam, vectorized=True)
    return integrate_principal_value(
        lambda om: f(om) * np.exp(-om / lam), pole, cfg, decay_scale=lam, vectorized=True
    )


def _bose_integral(f, t: Transition, a: float, cfg: QuadConfig) -> IntegralResult:
    """P int_0^inf f(w) 2 n(2 pi c w / a) dw."""
    scale = a / (2.0 * math.pi * constants().c)

    def weighted(om):
        return f(om) * 2.0 * bose_occupation(om / scale)

    return integrate_principal_value(
        weighted, abs(t.omega_ba), cfg, decay_scale=scale, vectorized=True
    )


def _require(result: IntegralResult, what: str, strict: bool) -> IntegralResult:
    if strict and not result.converged:
        raise QuadratureError(
            f"{what} did not converge: value {result.value!r}, "
            f"error estimate {result.abs_error_estimate!r} after {result.evaluations} evaluations"
        )
    return result


def rr_shift(
    atom: AtomModel,
    cutoff: CutoffPolicy = CutoffPolicy(),
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    strict: bool = True,
) -> float:
    """Radiation-reaction shift (erg).  Takes no acceleration: it has none."""
    cutoff.check(atom)
    pref = _prefactor()
    terms = []
    for t in atom.transitions:
        if t.dipole_sq == 0.0:
            continue
        g = _g_rr(t)
        res = _require(_cutoff_integral(lambda om: om**3 * g(om), t, cutoff, cfg), "rr integral", strict)
        terms.append(-pref * t.dipole_sq * res.value)
    return math.fsum(terms)


def vf_shift(
    atom: AtomModel,
    a: float,
    cutoff: CutoffPolicy = CutoffPolicy(),
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    strict: bool = True,
    with_rr: bool = True,
) -> ShiftBreakdown:
    """Vacuum-fluctuation shift of ``atom`` at proper acceleration ``a``, split into parts.

    The ``rr`` field is filled from :func:`rr_shift` unless ``with_rr`` is off
    (then it is NaN).  With ``strict`` off, unconverged integrals are kept
    and flagged instead of raising.
    """
    a = check_acceleration(a)
    cutoff.check(atom)
    c = constants().c
    pref = _prefactor()
    a2c2 = (a / c) ** 2
    inertial, thermal, nt_bose, nt_cut = [], [], [], []
    ok = True
    for t in atom.transitions:
        if t.dipole_sq == 0.0:
            continue
        g = _g_vf(t)
        weight = pref * t.dipole_sq
        parts = [_cutoff_integral(lambda om: om**3 * g(om), t, cutoff, cfg)]
        inertial.append(weight * parts[-1].value)
        if a > 0.0:
            parts.append(_bose_integral(lambda om: om**3 * g(om), t, a, cfg))
            thermal.append(weight * parts[-1].value)
            parts.append(_bose_integral(lambda om: om * g(om), t, a, cfg))
            nt_bose.append(weight * a2c2 * parts[-1].value)
            parts.append(_cutoff_integral(lambda om: om * g(om), t, cutoff, cfg))
            nt_cut.append(weight * a2c2 * parts[-1].value)
        for p in parts:
            _require(p, "vf integral", strict)
            ok = ok and p.converged
    rr = rr_shift(atom, cutoff, cfg, strict=strict) if with_rr else math.nan
    return ShiftBreakdown(
        inertial_vf=math.fsum(inertial),
        thermal_vf=math.fsum(thermal),
        nonthermal_a2_bose=math.fsum(nt_bose),
        nonthermal_a2_cutoff=math.fsum(nt_cut),
        rr=rr,
        cutoff_lambda=cutoff.value,
        cutoff_shape=cutoff.shape,
        acceleration=a,
        converged=ok,
    )


# --- thermal vs non-thermal crossover ---------------------------------------

class BracketError(ValueError):
    def __init__(self, lo: float, hi: float, ratio_lo: float, ratio_hi: float):
        super().__init__(
            f"|thermal| / |non-thermal| does not cross 1 in [{lo:.6g}, {hi:.6g}] cm/s^2: "
            f"ratio is {ratio_lo:.6g} at the lower end and {ratio_hi:.6g} at the upper end"
        )
        self.bracket = (lo, hi)
        self.ratios = (ratio_lo, ratio_hi)


@dataclass(frozen=True)
class Crossover:
    acceleration: float
    log_ratio: float
    thermal_vf: float
    nonthermal: float
    cutoff_lambda: float
    cutoff_shape: str
    iterations: int

    def to_record(self) -> dict:
        return asdict(self)


def thermal_ratio(atom: AtomModel, a: float, cutoff: CutoffPolicy, cfg: QuadConfig):
    """ln(|thermal_vf| / |nonthermal_a2_bose + nonthermal_a2_cutoff|) and the breakdown."""
    b = vf_shift(atom, a, cutoff, cfg, with_rr=False)
    log.debug(
        "a=%.6g thermal_vf=%.6g nonthermal_a2_bose=%.6g nonthermal_a2_cutoff=%.6g",
        a, b.thermal_vf, b.nonthermal_a2_bose, b.nonthermal_a2_cutoff,
    )
    return math.log(abs(b.thermal_vf)) - math.log(abs(b.nonthermal)), b


def comparable_acceleration(
    atom: AtomModel,
    cutoff: CutoffPolicy = CutoffPolicy(),
    bracket: Sequence[float] = (1e23, 1e27),
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    rtol: float = 1e-3,
) -> Crossover:
    """Acceleration where the thermal and a^2 parts of the vf shift have equal size.

    Bisects ln|thermal| - ln|non-thermal| in ln a until the bracket is
    narrower than ``rtol`` relative.
    """
    lo, hi = (check_acceleration(x, "bracket end") for x in bracket)
    if not 0.0 < lo < hi:
        raise ValueError(f"bracket must satisfy 0 < lo < hi, got {bracket!r}")
    f_lo, _ = thermal_ratio(atom, lo, cutoff, cfg)
    f_hi, _ = thermal_ratio(atom, hi, cutoff, cfg)
    if f_lo == 0.0:
        hi, f_hi = lo, f_lo
    elif f_hi == 0.0:
        lo, f_lo = hi, f_hi
    elif (f_lo > 0) == (f_hi > 0):
        raise BracketError(lo, hi, math.exp(f_lo), math.exp(f_hi))
    it = 0
    best = (abs(f_lo), lo) if abs(f_lo) <= abs(f_hi) else (abs(f_hi), hi)
    while hi / lo - 1.0 > rtol:
        mid = math.sqrt(lo * hi)
        f_mid, _ = thermal_ratio(atom, mid, cutoff, cfg)
        it += 1
        best = min(best, (abs(f_mid), mid))
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    a_star = best[1]
    f_star, b = thermal_ratio(atom, a_star, cutoff, cfg)
    return Crossover(a_star, f_star, b.thermal_vf, b.nonthermal, cutoff.value, cutoff.shape, it)
