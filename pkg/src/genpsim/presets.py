"""Reference interferometer geometries used by the shipped configs.

Coupling strengths are calibrated from pulse areas by quadrature, so the
two-mode device realizes an exact half-pi area (full state swap) and the
four-mode device realizes the recorded per-window areas.
"""

from __future__ import annotations

import math

from scipy.integrate import quad

from .evolution import CouplingSchedule, CouplingWindow, PhysicalConstants


def window_area(window: CouplingWindow, length_um: float, constants: PhysicalConstants) -> float:
    """Dimensionless pulse area (1/(hbar vg)) * integral of J(z) over the device."""
    val, _ = quad(lambda z: float(window.profile(z)), 0.0, length_um, limit=200)
    return val / constants.hbar_vg


def calibrate_strength(
    area: float,
    z0_um: float,
    sigma_um: float,
    d: int,
    pair,
    length_um: float,
    constants: PhysicalConstants | None = None,
) -> CouplingWindow:
    """Window whose pulse area over [0, length] equals `area` (area is
    linear in J, so one quadrature fixes it)."""
    constants = constants or PhysicalConstants()
    unit = CouplingWindow(pair=pair, j_mev=1.0, z0_um=z0_um, sigma_um=sigma_um, d=d)
    per_unit = window_area(unit, length_um, constants)
    return CouplingWindow(
        pair=pair, j_mev=area / per_unit, z0_um=z0_um, sigma_um=sigma_um, d=d
    )


def two_mode_schedule(
    area: float = math.pi / 2,
    length_um: float = 20000.0,
    sigma_um: float = 250.0,
    d: int = 8,
    constants: PhysicalConstants | None = None,
) -> CouplingSchedule:
    """One window centered mid-device; the default half-pi area swaps the
    two mode contents completely."""
    constants = constants or PhysicalConstants()
    window = calibrate_strength(
        area, length_um / 2.0, sigma_um, d, (0, 1), length_um, constants
    )
    return CouplingSchedule(
        modes=2, windows=(window,), length_um=length_um, constants=constants
    )


# Four-mode geometry: staggered windows so every mode interacts (directly or
# through intermediaries) with every other; areas stay within (0, pi/2].
FOUR_MODE_LENGTH_UM = 30000.0
FOUR_MODE_SIGMA_UM = 1200.0
FOUR_MODE_D = 8
FOUR_MODE_WINDOWS = (
    # (pair 0-based, z0_um, area); areas tuned so the correlation readout
    # separates the spirals while occupations alone stay near the classical
    # baseline accuracy
    ((0, 1), 4000.0, math.pi / 3),
    ((1, 2), 10000.0, 0.45 * math.pi),
    ((2, 3), 16000.0, math.pi / 2),
    ((1, 2), 22000.0, math.pi / 3),
    ((0, 1), 27000.0, math.pi / 6),
)


def four_mode_schedule(constants: PhysicalConstants | None = None) -> CouplingSchedule:
    constants = constants or PhysicalConstants()
    windows = tuple(
        calibrate_strength(
            area, z0, FOUR_MODE_SIGMA_UM, FOUR_MODE_D, pair, FOUR_MODE_LENGTH_UM, constants
        )
        for pair, z0, area in FOUR_MODE_WINDOWS
    )
    return CouplingSchedule(
        modes=4, windows=windows, length_um=FOUR_MODE_LENGTH_UM, constants=constants
    )
