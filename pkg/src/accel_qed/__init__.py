"""Radiative shifts and dispersion interactions of uniformly accelerated atoms."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CODATA_CGS,
    PhysicalConstants,
    constants,
    convert_acceleration,
    unruh_acceleration,
    unruh_temperature,
)
from .quad import (  # noqa: E402
    IntegralResult,
    QuadConfig,
    bose_occupation,
    coth_stable,
    integrate_decaying,
    integrate_principal_value,
)
from .atom import (  # noqa: E402
    AtomModel,
    FromTransitions,
    Lorentz,
    Static,
    Transition,
    builtin_atom,
    hydrogen_lorentz,
    london_integral,
    polarizability_iu,
)
from .lamb import CutoffPolicy, ShiftBreakdown, comparable_acceleration, rr_shift, vf_shift  # noqa: E402
from .wall import WallConfig, WallKernel, rr_shift_wall, total_wall_shift, vf_shift_wall  # noqa: E402
from .pair import (  # noqa: E402
    InteractionBreakdown,
    PairConfig,
    linear_correction,
    powerlaw_exponent,
    quadratic_correction,
    relative_correction,
    static_vdw,
    total_interaction,
    zone_asymptote,
)
