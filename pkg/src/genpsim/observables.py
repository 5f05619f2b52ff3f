"""Expectation values, photon statistics and Wigner functions.

All estimators follow the weighted rule: an observable is the real part of
the weight-summed c-number expression obtained by acting on the kernel,
one term per component. For delta components the multimode expressions
factorize over modes, so no joint grids are ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalInvariantError
from .states import GeneralizedPState

# Imaginary residue above this (absolute, after Hermitian pairing) means the
# state or the caller's arithmetic is broken; we fail loudly instead of
# silently taking the real part.
IMAG_RESIDUE_TOL = 1e-10

# Below this occupation, cross-g2 would divide by numerical noise; it is
# reported as NaN (undefined) rather than raising.
OCCUPATION_FLOOR = 1e-9

# Switch the photon-number estimator to log space above this n to avoid
# overflow of z^n / n!.
_LOG_SPACE_MIN_N = 31


@dataclass(frozen=True)
class PhotonDistribution:
    """Fock populations P(0..n_max) of one mode."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @property
    def n_max(self) -> int:
        return self.probabilities.shape[0] - 1

    def mean(self) -> float:
        return float(np.arange(self.probabilities.shape[0]) @ self.probabilities)

    def total(self) -> float:
        return float(self.probabilities.sum())


@dataclass(frozen=True)
class CorrelationSet:
    """Per-mode occupations and all cross-mode g2 values (i < j)."""

    occupations: np.ndarray
    cross_g2: dict

    def g2_pairs(self):
        return sorted(self.cross_g2.keys())


@dataclass(frozen=True)
class WignerGrid:
    """W(xi) sampled on a rectangular grid; rows follow Im(xi), columns Re(xi)."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    resolution: int
    values: np.ndarray

    def axes(self):
        xs = np.linspace(self.re_min, self.re_max, self.resolution)
        ys = np.linspace(self.im_min, self.im_max, self.resolution)
        return xs, ys

    def cell_area(self) -> float:
        dx = (self.re_max - self.re_min) / (self.resolution - 1)
        dy = (self.im_max - self.im_min) / (self.resolution - 1)
        return dx * dy

    def integral(self) -> float:
        """Riemann sum; accurate when the window covers the state."""
        return float(self.values.sum() * self.cell_area())


def _check_mode(state: GeneralizedPState, mode: int) -> None:
    if not (0 <= mode < state.modes):
        raise ValueError(f"mode index {mode} out of range for {state.modes} modes")


def _real_with_residue(value: complex, what: str, scale: float = 1.0) -> float:
    tol = IMAG_RESIDUE_TOL * max(1.0, scale)
    if abs(value.imag) > tol:
        raise NumericalInvariantError(
            f"{what}: imaginary residue {value.imag:.3e} exceeds {tol:.1e}"
        )
    return float(value.real)


def mean_occupation(state: GeneralizedPState, mode: int) -> float:
    """<n_mode> = Re[sum_nu w_nu alpha_nu conj(alpha_tilde_nu)]."""
    _check_mode(state, mode)
    val = np.sum(state.weights * state.alpha[:, mode] * np.conj(state.alpha_tilde[:, mode]))
    return _real_with_residue(val, f"mean_occupation(mode={mode})", abs(val))


def cross_g2(state: GeneralizedPState, i: int, j: int) -> float:
    """Normalized cross-correlation <a_i+ a_j+ a_i a_j> / (<n_i><n_j>).

    Returns NaN when either occupation is below OCCUPATION_FLOOR.
    """
    _check_mode(state, i)
    _check_mode(state, j)
    if i == j:
        raise ValueError("cross_g2 needs two distinct modes")
    n_i = mean_occupation(state, i)
    n_j = mean_occupation(state, j)
    if n_i < OCCUPATION_FLOOR or n_j < OCCUPATION_FLOOR:
        return math.nan
    num = np.sum(
        state.weights
        * np.conj(state.alpha_tilde[:, i])
        * np.conj(state.alpha_tilde[:, j])
        * state.alpha[:, i]
        * state.alpha[:, j]
    )
    return _real_with_residue(num, f"cross_g2({i},{j})", abs(num)) / (n_i * n_j)


def correlation_set(state: GeneralizedPState) -> CorrelationSet:
    """Occupations of every mode plus g2 for every pair i < j."""
    occ = np.array([mean_occupation(state, m) for m in range(state.modes)])
    if np.any(occ < -IMAG_RESIDUE_TOL):
        raise NumericalInvariantError(f"negative occupation beyond tolerance: {occ}")
    g2 = {}
    for i in range(state.modes):
        for j in range(i + 1, state.modes):
            g2[(i, j)] = cross_g2(state, i, j)
    return CorrelationSet(occupations=occ, cross_g2=g2)


def photon_distribution(state: GeneralizedPState, mode: int, n_max: int) -> PhotonDistribution:
    """P(n) = Re[sum_nu w_nu z_nu^n / n! e^{-z_nu}], z = alpha conj(alpha_tilde).

    Cross-mode factors are exactly 1 for delta components, so the multimode
    estimator reduces to the single-mode expression. Terms with n above
    _LOG_SPACE_MIN_N are evaluated in log space.
    """
    _check_mode(state, mode)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    z = state.alpha[:, mode] * np.conj(state.alpha_tilde[:, mode])
    w = state.weights
    damp = np.exp(-z)

    probs = np.empty(n_max + 1)
    nonzero = z != 0
    logz = np.where(nonzero, np.log(np.where(nonzero, z, 1.0)), 0.0)
    for n in range(n_max + 1):
        if n < _LOG_SPACE_MIN_N:
            terms = w * z**n / math.factorial(n) * damp
        else:
            terms = np.where(
                nonzero,
                w * np.exp(n * logz - math.lgamma(n + 1) - z),
                0.0,
            )
        val = terms.sum()
        probs[n] = _real_with_residue(val, f"photon_distribution(n={n})", abs(val))
    return PhotonDistribution(probabilities=probs)


def wigner(
    state: GeneralizedPState,
    mode: int,
    re_min: float = -4.0,
    re_max: float = 4.0,
    im_min: float = -4.0,
    im_max: float = 4.0,
    resolution: int = 201,
) -> WignerGrid:
    """Single-mode Wigner function of one mode of the state.

    W(xi) = sum_nu (2/pi) Re{ w_nu exp(-2 (conj(xi) - conj(alpha_tilde_nu))
    (xi - alpha_nu)) }; real by the Hermitian pairing of components.
    """
    _check_mode(state, mode)
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    for v in (re_min, re_max, im_min, im_max):
        if not math.isfinite(v):
            raise ValueError("grid extents must be finite")
    xs = np.linspace(re_min, re_max, resolution)
    ys = np.linspace(im_min, im_max, resolution)
    xi = xs[None, :] + 1j * ys[:, None]

    values = np.zeros((resolution, resolution))
    for w, a, at in zip(state.weights, state.alpha[:, mode], state.alpha_tilde[:, mode]):
        values += (2.0 / math.pi) * np.real(
            w * np.exp(-2.0 * (np.conj(xi) - np.conj(at)) * (xi - a))
        )
    return WignerGrid(
        re_min=re_min,
        re_max=re_max,
        im_min=im_min,
        im_max=im_max,
        resolution=resolution,
        values=values,
    )
