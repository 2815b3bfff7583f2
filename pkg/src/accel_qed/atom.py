"""Atomic transition data and dynamic polarizabilities at imaginary frequency.

Frequencies are angular (rad/s).  ``alpha_iu(u)`` takes the imaginary
frequency ``u`` in rad/s and returns cm^3.  The dispersion integrals of the
pair module run over a wavenumber ``k`` (cm^-1) and evaluate the
polarizability at ``u = c k``; :func:`london_integral` follows that
convention so its result is in cm^5.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Union

import jsonschema
import numpy as np

from .core import constants
from .quad import IntegralResult, QuadConfig, integrate_interval

__all__ = [
    "Transition",
    "AtomModel",
    "Static",
    "Lorentz",
    "FromTransitions",
    "PolarizabilityModel",
    "polarizability_iu",
    "london_integral",
    "load_atom",
    "builtin_atom",
    "BUILTIN_ATOMS",
    "hydrogen_lorentz",
]


@dataclass(frozen=True)
class Transition:
    """One dipole transition a -> b out of the reference state a.

    ``omega_ba`` is omega_b - omega_a (negative for a downward transition),
    ``dipole_sq`` is |<a|r|b>|^2 summed over the components, in cm^2.
    """

    omega_ba: float
    dipole_sq: float

    def __post_init__(self):
        if not math.isfinite(self.omega_ba) or self.omega_ba == 0.0:
            raise ValueError(f"omega_ba must be finite and nonzero, got {self.omega_ba!r}")
        if not (math.isfinite(self.dipole_sq) and self.dipole_sq >= 0.0):
            raise ValueError(f"dipole_sq must be finite and >= 0, got {self.dipole_sq!r}")


@dataclass(frozen=True)
class AtomModel:
    name: str
    state_label: str
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if not self.transitions:
            raise ValueError("an atom model needs at least one transition")

    @property
    def is_ground_state(self) -> bool:
        return all(t.omega_ba > 0 for t in self.transitions)

    @property
    def max_frequency(self) -> float:
        return max(abs(t.omega_ba) for t in self.transitions)

    def scaled(self, *, omega: float = 1.0, dipole: float = 1.0) -> "AtomModel":
        """Copy with every frequency and/or squared dipole multiplied."""
        return AtomModel(
            self.name,
            self.state_label,
            tuple(Transition(t.omega_ba * omega, t.dipole_sq * dipole) for t in self.transitions),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "state": self.state_label,
            "transitions": [
                {"omega_ba_rad_s": t.omega_ba, "dipole_sq_cm2": t.dipole_sq}
                for t in self.transitions
            ],
        }


# --- polarizability models -------------------------------------------------

@dataclass(frozen=True)
class Static:
    """Frequency-independent polarizability alpha0 (cm^3)."""

    alpha0: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha0) and self.alpha0 >= 0):
            raise ValueError(f"alpha0 must be finite and >= 0, got {self.alpha0!r}")

    def alpha_iu(self, u):
        return self.alpha0 * np.ones_like(np.asarray(u, dtype=float))

    @property
    def static_value(self) -> float:
        return self.alpha0

    @property
    def resonance(self) -> float | None:
        return None


@dataclass(frozen=True)
class Lorentz:
    """Single-oscillator model alpha0 w0^2 / (w0^2 + u^2)."""

    alpha0: float
    omega0: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha0) and self.alpha0 >= 0):
            raise ValueError(f"alpha0 must be finite and >= 0, got {self.alpha0!r}")
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise ValueError(f"omega0 must be finite and > 0, got {self.omega0!r}")

    def alpha_iu(self, u):
        r = np.asarray(u, dtype=float) / self.omega0
        return self.alpha0 / (1.0 + r * r)

    @property
    def static_value(self) -> float:
        return self.alpha0

    @property
    def resonance(self) -> float:
        return self.omega0


@dataclass(frozen=True)
class FromTransitions:
    """Sum-over-states polarizability (2e^2/3hbar) sum_b w_ba |r_ab|^2 / (w_ba^2 + u^2)."""

    atom: AtomModel

    def __post_init__(self):
        if not self.atom.is_ground_state:
            raise ValueError(
                f"FromTransitions needs a ground-state model; {self.atom.name} "
                f"{self.atom.state_label} has downward transitions"
            )

    def alpha_iu(self, u):
        k = constants()
        u = np.asarray(u, dtype=float)
        total = np.zeros_like(u)
        for t in self.atom.transitions:
            total = total + t.omega_ba * t.dipole_sq / (t.omega_ba**2 + u * u)
        return 2.0 * k.e_charge**2 / (3.0 * k.hbar) * total

    @property
    def static_value(self) -> float:
        return float(self.alpha_iu(0.0))

    @property
    def resonance(self) -> float:
        return min(t.omega_ba for t in self.atom.transitions)

    def as_lorentz(self) -> Lorentz:
        """Equivalent Lorentz model; exact only for a single transition."""
        return Lorentz(self.static_value, self.resonance)


PolarizabilityModel = Union[Static, Lorentz, FromTransitions]


def polarizability_iu(model: PolarizabilityModel, u):
    """alpha(i u) in cm^3 for imaginary frequency ``u`` >= 0 (rad/s)."""
    arr = np.asarray(u, dtype=float)
    if np.any(~(arr >= 0)):
        raise ValueError(f"imaginary frequency must be >= 0, got {u!r}")
    out = model.alpha_iu(arr)
    return float(out) if np.ndim(out) == 0 else out


def london_integral(
    a: PolarizabilityModel, b: PolarizabilityModel, cfg: QuadConfig | None = None
) -> IntegralResult:
    """Integral over wavenumber k of alpha_A(i c k) alpha_B(i c k), in cm^5.

    For two identical Lorentz atoms this is pi alpha0^2 (omega0 / c) / 4.
    """
    if isinstance(a, Static) and isinstance(b, Static):
        raise ValueError(
            "london_integral diverges for two Static polarizabilities: "
            "the integrand does not decay in k"
        )
    c = constants().c
    if a.static_value == 0.0 or b.static_value == 0.0:
        return IntegralResult(0.0, 0.0, 0, True)
    res = min(m.resonance for m in (a, b) if m.resonance is not None) / c

    def integrand(k):
        return a.alpha_iu(c * k) * b.alpha_iu(c * k)

    # the decay is algebraic, not exponential: map k = res x / (1 - x) onto [0, 1)
    def mapped(x):
        x = np.asarray(x, dtype=float)
        one = 1.0 - x
        k = res * x / one
        return integrand(k) * res / (one * one)

    return integrate_interval(mapped, 0.0, 1.0, cfg, points=(0.5,), vectorized=True)


# --- datasets -----------------------------------------------------------------

ATOM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["name", "state", "transitions"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "state": {"type": "string", "minLength": 1},
        "source": {"type": "string"},
        "transitions": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["omega_ba_rad_s", "dipole_sq_cm2"],
                "properties": {
                    "omega_ba_rad_s": {"type": "number", "not": {"const": 0}},
                    "dipole_sq_cm2": {"type": "number", "minimum": 0},
                },
            },
        },
    },
}


def atom_from_dict(doc: dict) -> AtomModel:
    errors = sorted(jsonschema.Draft202012Validator(ATOM_SCHEMA).iter_errors(doc), key=str)
    if errors:
        msgs = "; ".join(f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}" for e in errors)
        raise ValueError(f"invalid atom dataset: {msgs}")
    return AtomModel(
        doc["name"],
        doc["state"],
        tuple(Transition(t["omega_ba_rad_s"], t["dipole_sq_cm2"]) for t in doc["transitions"]),
    )


def load_atom(path: str | Path) -> AtomModel:
    """Load and validate an atom dataset JSON file."""
    with open(path, encoding="utf-8") as fh:
        return atom_from_dict(json.load(fh))


BUILTIN_ATOMS = {"hydrogen_1s": "hydrogen_1s.json"}


def builtin_atom(name: str = "hydrogen_1s") -> AtomModel:
    try:
        fname = BUILTIN_ATOMS[name]
    except KeyError:
        raise ValueError(f"unknown builtin atom {name!r}; known: {sorted(BUILTIN_ATOMS)}") from None
    text = resources.files("accel_qed.data").joinpath(fname).read_text(encoding="utf-8")
    return atom_from_dict(json.loads(text))


def hydrogen_lorentz() -> Lorentz:
    """Lorentz model matched to the built-in hydrogen 1s-2p transition."""
    return FromTransitions(builtin_atom("hydrogen_1s")).as_lorentz()
