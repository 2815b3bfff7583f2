"""Atom-wall Casimir-Polder shifts of an accelerated atom with a pluggable kernel.

The boundary kernel K(w; z0, a) is supplied by the caller, either as a
closed-form callable or as a tabulated CSV, and is contracted isotropically
(a scalar).  Per transition:

    vf = -(e^2 |r_ab|^2 / 3) / (8 pi^2 c^3 (2 z0)^3) P int K coth(pi c w / a) g_vf dw
    rr = +(e^2 |r_ab|^2 / 3) / (8 pi^2 c^3 (2 z0)^3) P int K g_rr dw

with g_vf and g_rr as in :mod:`accel_qed.lamb`.  coth is split into 1 + 2n
exactly as there: the "1" part obeys the cutoff policy, the Bose part
runs to infinity with decay scale a / (2 pi c).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .atom import AtomModel, Transition
from .core import check_acceleration, constants
from .lamb import CutoffPolicy, _bose_integral, _cutoff_integral, _g_rr, _g_vf, _require
from .quad import DEFAULT_CONFIG, QuadConfig

__all__ = [
    "WallKernel",
    "WallConfig",
    "KernelContractError",
    "tabulated_kernel",
    "vf_shift_wall",
    "rr_shift_wall",
    "total_wall_shift",
]


class KernelContractError(ValueError):
    pass


@dataclass(frozen=True)
class WallKernel:
    """Isotropically contracted boundary kernel K(w, z0, a), dimensionless.

    ``evaluator`` must accept numpy arrays of w.  ``k_max`` bounds |K|; every
    sample the quadrature draws is checked against it.
    """

    evaluator: Callable
    k_max: float
    source: str = "closed_form_user"

    def __post_init__(self):
        if self.source not in ("closed_form_user", "tabulated"):
            raise ValueError(f"unknown kernel source {self.source!r}")
        if not (self.k_max > 0 and math.isfinite(self.k_max)):
            raise ValueError(f"k_max must be finite and positive, got {self.k_max!r}")

    def __call__(self, omega, z0: float, a: float):
        om = np.asarray(omega, dtype=float)
        val = np.asarray(self.evaluator(om, z0, a), dtype=float) * np.ones_like(om)
        bad = ~(np.abs(val) <= self.k_max)
        if bad.any():
            i = np.flatnonzero(bad.ravel())[0]
            raise KernelContractError(
                f"kernel value {val.ravel()[i]!r} at omega={om.ravel()[i]!r} rad/s "
                f"violates |K| <= {self.k_max!r}"
            )
        return val

    def check_origin(self, z0: float, a: float, scale: float):
        """Probe K(w)/w towards w -> 0; it must stay bounded (K = O(w))."""
        probes = scale * 10.0 ** -np.arange(4, 10, dtype=float)
        ratios = np.abs(self(probes, z0, a)) / probes
        for w, r_prev, r in zip(probes[1:], ratios[:-1], ratios[1:]):
            if r > 3.0 * r_prev and r > 0:
                raise KernelContractError(
                    f"kernel is not O(omega) at the origin: |K|/omega grows to {r:.6g} "
                    f"at omega={w!r} rad/s"
                )


@dataclass(frozen=True)
class WallConfig:
    z0: float  # cm
    a: float = 0.0  # cm/s^2
    cutoff: CutoffPolicy = field(default_factory=CutoffPolicy)

    def __post_init__(self):
        if not (math.isfinite(self.z0) and self.z0 > 0):
            raise ValueError(f"z0 must be finite and positive (cm), got {self.z0!r}")
        check_acceleration(self.a)


def tabulated_kernel(path: str | Path, k_max: float | None = None) -> WallKernel:
    """Kernel from a CSV with header ``omega_rad_s,K_value`` and increasing omega.

    Monotone cubic (PCHIP) interpolation in between, zero outside the table.
    The table carries no z0 or a dependence.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader, [])]
        if header != ["omega_rad_s", "K_value"]:
            raise ValueError(f"kernel CSV header must be 'omega_rad_s,K_value', got {header!r}")
        rows = []
        for line, r in enumerate(reader, start=2):
            if not r:
                continue
            try:
                om_i, k_i = (float(v) for v in r)
            except ValueError:
                raise ValueError(f"{path}: line {line}: expected two numbers, got {r!r}") from None
            rows.append((om_i, k_i))
    if len(rows) < 2:
        raise ValueError("kernel CSV needs at least two rows")
    om, kv = map(np.array, zip(*rows))
    if np.any(np.diff(om) <= 0):
        raise ValueError("kernel CSV omega column must be strictly increasing")
    interp = PchipInterpolator(om, kv, extrapolate=False)

    def evaluator(w, z0, a):
        return np.nan_to_num(interp(w), nan=0.0)

    bound = k_max if k_max is not None else float(np.max(np.abs(kv))) * (1 + 1e-12)
    return WallKernel(evaluator, bound, source="tabulated")


def _wall_prefactor(t: Transition, z0: float) -> float:
    k = constants()
    return (k.e_charge**2 * t.dipole_sq / 3.0) / (8.0 * math.pi**2 * k.c**3 * (2.0 * z0) ** 3)


def vf_shift_wall(
    atom: AtomModel,
    kernel: WallKernel,
    wc: WallConfig,
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    strict: bool = True,
) -> float:
    """Vacuum-fluctuation part of the atom-wall shift (erg)."""
    wc.cutoff.check(atom)
    kernel.check_origin(wc.z0, wc.a, atom.max_frequency)
    terms = []
    for t in atom.transitions:
        if t.dipole_sq == 0.0:
            continue
        g = _g_vf(t)

        def f(om):
            return kernel(om, wc.z0, wc.a) * g(om)

        total = _require(_cutoff_integral(f, t, wc.cutoff, cfg), "wall vf integral", strict).value
        if wc.a > 0.0:
            total += _require(_bose_integral(f, t, wc.a, cfg), "wall vf integral", strict).value
        terms.append(-_wall_prefactor(t, wc.z0) * total)
    return math.fsum(terms)


def rr_shift_wall(
    atom: AtomModel,
    kernel: WallKernel,
    wc: WallConfig,
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    strict: bool = True,
) -> float:
    """Radiation-reaction part of the atom-wall shift (erg); a enters only through K."""
    wc.cutoff.check(atom)
    kernel.check_origin(wc.z0, wc.a, atom.max_frequency)
    terms = []
    for t in atom.transitions:
        if t.dipole_sq == 0.0:
            continue
        g = _g_rr(t)

        def f(om):
            return kernel(om, wc.z0, wc.a) * g(om)

        res = _require(_cutoff_integral(f, t, wc.cutoff, cfg), "wall rr integral", strict)
        terms.append(_wall_prefactor(t, wc.z0) * res.value)
    return math.fsum(terms)


def total_wall_shift(
    atom: AtomModel,
    kernel: WallKernel,
    wc: WallConfig,
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    strict: bool = True,
) -> float:
    return vf_shift_wall(atom, kernel, wc, cfg, strict=strict) + rr_shift_wall(
        atom, kernel, wc, cfg, strict=strict
    )
