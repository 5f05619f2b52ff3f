"""Multimode quantum states as finite weighted sums of coherent dyadic kernels.

A state is stored as a list of components (w, alpha_vec, alpha_tilde_vec).
Each component stands for the unit-trace kernel |alpha><alpha_tilde| /
<alpha_tilde|alpha> scaled by the complex weight w, so a finite component
list represents the density operator exactly. Coherent states need one
component; a superposition of M coherent states needs M^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

# Components whose normalized weight magnitude falls below this are dropped:
# they contribute nothing but inflate product-state cost quadratically.
ZERO_WEIGHT_CUTOFF = 1e-15

TRACE_TOL = 1e-12
PAIRING_ATOL = 1e-12
PAIRING_RTOL = 1e-9

SQRT_HALF = 1.0 / math.sqrt(2.0)


def _require_finite(name: str, value: complex) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class CoherentSpec:
    """Single-mode coherent state |beta>."""

    beta: complex

    def __post_init__(self):
        _require_finite("beta", self.beta)

    def to_state(self) -> "GeneralizedPState":
        return coherent_state(self.beta)


@dataclass(frozen=True)
class CatSpec:
    """Superposition (a|beta> + b e^{i theta} |-beta>) / sqrt(norm)."""

    beta: complex
    a: float
    b: float
    theta: float = 0.0

    def __post_init__(self):
        _require_finite("beta", self.beta)
        for name in ("a", "b", "theta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if abs(self.a**2 + self.b**2 - 1.0) > TRACE_TOL:
            raise ValueError(
                f"cat coefficients must satisfy a^2 + b^2 = 1, got {self.a**2 + self.b**2!r}"
            )

    def to_state(self) -> "GeneralizedPState":
        return cat_state(self)


def kitten_spec(beta: complex = 1.0, theta: float = 0.0) -> CatSpec:
    """Balanced cat (|beta> + e^{i theta}|-beta>) / sqrt(norm)."""
    return CatSpec(beta=beta, a=SQRT_HALF, b=SQRT_HALF, theta=theta)


@dataclass(frozen=True)
class MultiCatSpec:
    """Superposition sum_j c_j |beta_j> / sqrt(norm) of M coherent states."""

    amplitudes: tuple
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", tuple(complex(b) for b in self.amplitudes))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if len(self.amplitudes) != len(self.coeffs):
            raise ValueError(
                f"amplitudes ({len(self.amplitudes)}) and coeffs ({len(self.coeffs)}) "
                "must have equal length"
            )
        if len(self.amplitudes) < 1:
            raise ValueError("need at least one coherent component")
        for b in self.amplitudes:
            _require_finite("amplitude", b)
        for c in self.coeffs:
            _require_finite("coefficient", c)
        if all(abs(c) == 0.0 for c in self.coeffs):
            raise ValueError("coefficient vector must be nonzero")

    def to_state(self) -> "GeneralizedPState":
        return multi_cat_state(list(self.amplitudes), list(self.coeffs))


@dataclass(frozen=True)
class GeneralizedPState:
    """Finite-component representation of an N-mode density operator.

    weights: (C,) complex, alpha / alpha_tilde: (C, N) complex. Immutable
    after construction; safe to share across workers.
    """

    modes: int
    weights: np.ndarray
    alpha: np.ndarray
    alpha_tilde: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        a = np.atleast_2d(np.asarray(self.alpha, dtype=complex))
        at = np.atleast_2d(np.asarray(self.alpha_tilde, dtype=complex))
        if a.shape != at.shape or a.shape != (w.shape[0], self.modes):
            raise ValueError(
                f"shape mismatch: weights {w.shape}, alpha {a.shape}, "
                f"alpha_tilde {at.shape}, modes {self.modes}"
            )
        for name, arr in (("weights", w), ("alpha", a), ("alpha_tilde", at)):
            if not np.all(np.isfinite(arr.view(float))):
                raise ValueError(f"{name} contains non-finite entries")
        if np.any(w == 0):
            raise ValueError("weights must be nonzero (drop zero components)")
        trace = w.sum()
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"weights must sum to 1 (unit trace), got {trace!r}")
        _check_hermiticity_pairing(w, a, at)
        for arr in (w, a, at):
            arr.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "alpha_tilde", at)

    @property
    def n_components(self) -> int:
        return self.weights.shape[0]


def _check_hermiticity_pairing(w: np.ndarray, a: np.ndarray, at: np.ndarray) -> None:
    """Every component (w, alpha, alpha_tilde) must have a partner
    (w*, alpha_tilde, alpha) so the represented operator is Hermitian."""
    n = w.shape[0]
    unmatched = set(range(n))
    for i in range(n):
        if i not in unmatched:
            continue
        found = None
        for j in unmatched:
            if (
                np.isclose(w[j], np.conj(w[i]), rtol=PAIRING_RTOL, atol=PAIRING_ATOL)
                and np.allclose(a[j], at[i], rtol=PAIRING_RTOL, atol=PAIRING_ATOL)
                and np.allclose(at[j], a[i], rtol=PAIRING_RTOL, atol=PAIRING_ATOL)
            ):
                found = j
                break
        if found is None:
            raise ValueError(f"component {i} has no Hermitian partner")
        unmatched.discard(i)
        unmatched.discard(found)


def _log_coherent_overlap(bra: complex, ket: complex) -> complex:
    """log <bra|ket> = -|ket|^2/2 - |bra|^2/2 + conj(bra)*ket."""
    return -0.5 * (abs(ket) ** 2 + abs(bra) ** 2) + bra.conjugate() * ket


def coherent_overlap(bra: complex, ket: complex) -> complex:
    """<bra|ket>, evaluated in log space so large amplitudes underflow
    gracefully instead of losing the phase first."""
    return cmath.exp(_log_coherent_overlap(bra, ket))


def coherent_state(beta: complex) -> GeneralizedPState:
    """Single-mode coherent state: one diagonal component, w = 1."""
    beta = _require_finite("beta", beta)
    arr = np.array([[beta]], dtype=complex)
    return GeneralizedPState(
        modes=1, weights=np.array([1.0 + 0.0j]), alpha=arr, alpha_tilde=arr.copy()
    )


def multi_cat_state(amplitudes, coeffs) -> GeneralizedPState:
    """Superposition sum_j c_j |beta_j>, normalized, as M^2 components.

    Component (j, k) carries the dyad |beta_j><beta_k| with weight
    c_j c_k^* <beta_k|beta_j> / norm; the normalization is recomputed from
    the weights themselves (single code path for all superpositions).
    Components are emitted in lexicographic (bra, ket) order and
    zero-weight entries are dropped.
    """
    spec = MultiCatSpec(tuple(amplitudes), tuple(coeffs))
    betas = spec.amplitudes
    cs = spec.coeffs
    m = len(betas)

    weights = []
    kets = []
    bras = []
    for k in range(m):  # bra index
        for j in range(m):  # ket index
            w = cs[j] * cs[k].conjugate() * coherent_overlap(betas[k], betas[j])
            weights.append(w)
            kets.append(betas[j])
            bras.append(betas[k])
    weights = np.array(weights, dtype=complex)
    norm = weights.sum()
    if abs(norm) < 1e-300 or norm.real <= 0:
        raise ValueError("superposition has (numerically) zero norm")
    weights = weights / norm.real

    keep = np.abs(weights) >= ZERO_WEIGHT_CUTOFF
    weights = weights[keep]
    # renormalize the tiny deficit from dropped components
    weights = weights / weights.sum().real
    alpha = np.array(kets, dtype=complex)[keep].reshape(-1, 1)
    alpha_tilde = np.array(bras, dtype=complex)[keep].reshape(-1, 1)
    return GeneralizedPState(modes=1, weights=weights, alpha=alpha, alpha_tilde=alpha_tilde)


def cat_state(spec: CatSpec) -> GeneralizedPState:
    """Two-component superposition a|beta> + b e^{i theta} |-beta>.

    Yields at most four components centered at (+-beta, +-beta) with weights
    proportional to a^2, a b e^{+-i theta} <beta|-beta>, b^2 over the
    recomputed normalization.
    """
    return multi_cat_state(
        [spec.beta, -complex(spec.beta)],
        [spec.a, spec.b * cmath.exp(1j * spec.theta)],
    )


def product_state(single_mode_states) -> GeneralizedPState:
    """Tensor product of single-mode states: Cartesian product of the
    component lists (first mode outermost), weights multiplied."""
    states = list(single_mode_states)
    if not states:
        raise ValueError("product_state needs at least one mode")
    for s in states:
        if s.modes != 1:
            raise ValueError("product_state inputs must be single-mode states")

    weights = states[0].weights
    alpha = states[0].alpha
    alpha_tilde = states[0].alpha_tilde
    for s in states[1:]:
        c_prev, c_new = weights.shape[0], s.weights.shape[0]
        weights = (weights[:, None] * s.weights[None, :]).reshape(-1)
        alpha = np.concatenate(
            [
                np.repeat(alpha, c_new, axis=0),
                np.tile(s.alpha, (c_prev, 1)),
            ],
            axis=1,
        )
        alpha_tilde = np.concatenate(
            [
                np.repeat(alpha_tilde, c_new, axis=0),
                np.tile(s.alpha_tilde, (c_prev, 1)),
            ],
            axis=1,
        )
    return GeneralizedPState(
        modes=alpha.shape[1], weights=weights, alpha=alpha, alpha_tilde=alpha_tilde
    )
