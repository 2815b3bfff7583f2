"""Physical constants (Gaussian/CGS) and the Unruh temperature map.

Everything inside the package works in CGS: energies in erg, lengths in cm,
accelerations in cm/s^2, charges in esu.  SI only shows up at the CLI
boundary through :func:`convert_acceleration`.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "CODATA_CGS",
    "CONSTANT_SET_ID",
    "constants",
    "override_constants",
    "unruh_temperature",
    "unruh_acceleration",
    "convert_acceleration",
    "ACCELERATION_UNITS",
    "check_acceleration",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float  # erg s
    c: float  # cm / s
    k_boltzmann: float  # erg / K
    e_charge: float  # esu
    bohr_radius: float  # cm
    electron_mass: float  # g

    def __post_init__(self):
        for name, value in vars(self).items():
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"constant {name} must be finite and positive, got {value!r}")

    @property
    def electron_rest_frequency(self) -> float:
        """m c^2 / hbar in rad/s."""
        return self.electron_mass * self.c**2 / self.hbar


# CODATA 2018, converted to CGS.  e = 1.602176634e-19 C * (c / 10) esu/C.
CODATA_CGS = PhysicalConstants(
    hbar=1.054571817e-27,
    c=2.99792458e10,
    k_boltzmann=1.380649e-16,
    e_charge=1.602176634e-19 * 2.99792458e9,
    bohr_radius=5.29177210903e-9,
    electron_mass=9.1093837015e-28,
)
CONSTANT_SET_ID = "CODATA2018-CGS"

_active: contextvars.ContextVar[PhysicalConstants] = contextvars.ContextVar(
    "accel_qed_constants", default=CODATA_CGS
)


def constants() -> PhysicalConstants:
    """Return the constant set in effect (CODATA unless a test overrides it)."""
    return _active.get()


@contextlib.contextmanager
def override_constants(**changes):
    """Test-only hook: temporarily replace selected constants.

    >>> with override_constants(c=1.0):
    ...     constants().c
    1.0
    """
    from dataclasses import replace

    token = _active.set(replace(_active.get(), **changes))
    try:
        yield _active.get()
    finally:
        _active.reset(token)


def check_acceleration(a: float, name: str = "acceleration") -> float:
    a = float(a)
    if not math.isfinite(a) or a < 0:
        raise ValueError(f"{name} must be finite and >= 0 (cm/s^2), got {a!r}")
    return a


def unruh_temperature(a: float) -> float:
    """Unruh temperature T = hbar a / (2 pi c k_B) in kelvin for ``a`` in cm/s^2."""
    a = check_acceleration(a)
    k = constants()
    return k.hbar * a / (2.0 * math.pi * k.c * k.k_boltzmann)


def unruh_acceleration(temperature: float) -> float:
    """Proper acceleration (cm/s^2) whose Unruh temperature is ``temperature`` K."""
    temperature = float(temperature)
    if not math.isfinite(temperature) or temperature < 0:
        raise ValueError(f"temperature must be finite and >= 0 K, got {temperature!r}")
    k = constants()
    return 2.0 * math.pi * k.c * k.k_boltzmann * temperature / k.hbar


STANDARD_GRAVITY = 980.665  # cm/s^2, exact by definition

# cm/s^2 per unit
ACCELERATION_UNITS = {
    "cm/s2": 1.0,
    "m/s2": 100.0,
    "g0": STANDARD_GRAVITY,
}
_ALIASES = {"cm/s^2": "cm/s2", "m/s^2": "m/s2", "g": "g0"}


def convert_acceleration(value: float, from_unit: str, to_unit: str) -> float:
    """Convert an acceleration between ``cm/s2``, ``m/s2`` and ``g0``."""
    try:
        src = ACCELERATION_UNITS[_ALIASES.get(from_unit, from_unit)]
        dst = ACCELERATION_UNITS[_ALIASES.get(to_unit, to_unit)]
    except KeyError as exc:
        raise ValueError(
            f"unknown acceleration unit {exc.args[0]!r}; known: {sorted(ACCELERATION_UNITS)}"
        ) from None
    if src == dst:
        return float(value)
    return float(value) * src / dst
