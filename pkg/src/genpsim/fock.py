"""Brute-force reference integrator in a truncated multimode Fock basis.

Exists to validate the phase-space route, not to scale: the density matrix
dimension grows as cutoff^N, so the module refuses anything beyond a
configurable limit. Inputs are expanded as truncated kets, renormalized,
and evolved through the commutator equation d(rho)/dz = [H(z), rho]/(i hbar vg)
with a classical 4th-order fixed-step scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalInvariantError, ResourceLimitError
from .evolution import CouplingSchedule, default_dz, _record_positions
from .evolution import propagate as _propagate
from .observables import OCCUPATION_FLOOR, CorrelationSet
from .states import CatSpec, CoherentSpec, MultiCatSpec

DEFAULT_DIMENSION_LIMIT = 2**16

# The 4th-order scheme tolerates a much coarser step than the 2nd-order
# midpoint evolution; 1e-2 rad per step leaves errors ~1e-8, far below the
# truncation error it is used to measure.
ORACLE_RAD_PER_STEP = 1e-2

HERMITICITY_TOL = 1e-8
TRACE_DRIFT_TOL = 1e-8


@dataclass(frozen=True)
class FockDensityMatrix:
    modes: int
    cutoff: int
    rho: np.ndarray
    leakage: float = 0.0

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        dim = self.cutoff**self.modes
        if rho.shape != (dim, dim):
            raise ValueError(f"rho must be {dim}x{dim}, got {rho.shape}")
        herm = np.abs(rho - rho.conj().T).max()
        if herm > HERMITICITY_TOL:
            raise NumericalInvariantError(f"rho Hermiticity defect {herm:.3e}")
        tr = rho.trace()
        if abs(tr - 1.0) > TRACE_DRIFT_TOL:
            raise NumericalInvariantError(f"rho trace {tr!r} drifted from 1")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dimension(self) -> int:
        return self.cutoff**self.modes


@dataclass(frozen=True)
class CutoffStudyResult:
    cutoffs: tuple
    dimensions: tuple
    mse_g2: tuple


def check_dimension(modes: int, cutoff: int, limit: int = DEFAULT_DIMENSION_LIMIT) -> int:
    dim = cutoff**modes
    if dim > limit:
        raise ResourceLimitError(
            f"Fock dimension {cutoff}^{modes} = {dim} exceeds the limit {limit}; "
            "raise the limit explicitly if you really want this"
        )
    return dim


def coherent_ket(beta: complex, cutoff: int) -> np.ndarray:
    """<n|beta> for n < cutoff."""
    n = np.arange(cutoff)
    log_fact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, cutoff)))))
    if beta == 0:
        ket = np.zeros(cutoff, dtype=complex)
        ket[0] = 1.0
        return ket
    logs = n * np.log(complex(beta)) - 0.5 * log_fact - 0.5 * abs(beta) ** 2
    return np.exp(logs)


def mode_ket(spec, cutoff: int) -> np.ndarray:
    """Truncated normalized-state coefficients for one input mode."""
    if isinstance(spec, CoherentSpec):
        return coherent_ket(spec.beta, cutoff)
    if isinstance(spec, CatSpec):
        beta = complex(spec.beta)
        overlap = math.exp(-2.0 * abs(beta) ** 2)
        norm = spec.a**2 + spec.b**2 + 2.0 * spec.a * spec.b * math.cos(spec.theta) * overlap
        ket = spec.a * coherent_ket(beta, cutoff) + spec.b * np.exp(
            1j * spec.theta
        ) * coherent_ket(-beta, cutoff)
        return ket / math.sqrt(norm)
    if isinstance(spec, MultiCatSpec):
        betas = spec.amplitudes
        cs = np.asarray(spec.coeffs)
        norm = 0.0
        for j, bj in enumerate(betas):
            for k, bk in enumerate(betas):
                ov = np.exp(
                    -0.5 * (abs(bj) ** 2 + abs(bk) ** 2) + np.conj(bk) * bj
                )
                norm += (cs[j] * np.conj(cs[k]) * ov).real
        ket = sum(c * coherent_ket(b, cutoff) for c, b in zip(cs, betas))
        return ket / math.sqrt(norm)
    raise TypeError(f"unsupported mode spec {type(spec).__name__}")


def encode_state(
    mode_specs, cutoff: int, limit: int = DEFAULT_DIMENSION_LIMIT
) -> FockDensityMatrix:
    """Product of truncated single-mode states, renormalized to unit trace.

    The reported leakage is the pre-renormalization trace deficit caused by
    the cutoff.
    """
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    specs = list(mode_specs)
    check_dimension(len(specs), cutoff, limit)
    ket = np.array([1.0 + 0.0j])
    for spec in specs:
        ket = np.kron(ket, mode_ket(spec, cutoff))
    norm_sq = float(np.vdot(ket, ket).real)
    ket = ket / math.sqrt(norm_sq)
    return FockDensityMatrix(
        modes=len(specs), cutoff=cutoff, rho=np.outer(ket, ket.conj()), leakage=1.0 - norm_sq
    )


def lowering_operator(cutoff: int) -> np.ndarray:
    a = np.zeros((cutoff, cutoff))
    n = np.arange(1, cutoff)
    a[n - 1, n] = np.sqrt(n)
    return a


def mode_operator(op: np.ndarray, mode: int, modes: int, cutoff: int) -> np.ndarray:
    """Embed a single-mode operator at position `mode` in the product basis."""
    out = np.array([[1.0]])
    eye = np.eye(cutoff)
    for m in range(modes):
        out = np.kron(out, op if m == mode else eye)
    return out


def _hopping_terms(schedule: CouplingSchedule, cutoff: int):
    """Constant matrices H_p so that H(z) = sum_i hbar w_i a_i a_i^dag
    + sum_p J_p(z) H_p, each adjacent pair counted once."""
    n = schedule.modes
    a_ops = [mode_operator(lowering_operator(cutoff), m, n, cutoff) for m in range(n)]
    pair_ops = {}
    for w in schedule.windows:
        i, j = w.pair
        if (i, j) not in pair_ops:
            pair_ops[(i, j)] = a_ops[i].T @ a_ops[j] + a_ops[i] @ a_ops[j].T
    onsite = np.zeros((cutoff**n, cutoff**n))
    for m, e in enumerate(schedule.onsite_mev):
        if e != 0.0:
            onsite += e * (a_ops[m] @ a_ops[m].T)
    return a_ops, pair_ops, onsite


def integrate_von_neumann(
    rho: FockDensityMatrix,
    schedule: CouplingSchedule,
    dz: float | None = None,
    record_every: float | None = None,
    limit: int = DEFAULT_DIMENSION_LIMIT,
):
    """Trajectory [(z, FockDensityMatrix)] under the commutator equation."""
    if rho.modes != schedule.modes:
        raise ValueError("mode count mismatch between rho and schedule")
    check_dimension(rho.modes, rho.cutoff, limit)
    if dz is None:
        dz = default_dz(schedule, rad_per_step=ORACLE_RAD_PER_STEP)
    if dz <= 0:
        raise ValueError("dz must be positive")
    if record_every is None:
        record_every = schedule.length_um / 200.0

    _, pair_ops, onsite = _hopping_terms(schedule, rho.cutoff)
    windows_by_pair = {}
    for w in schedule.windows:
        windows_by_pair.setdefault(w.pair, []).append(w)

    def hamiltonian(z: float) -> np.ndarray:
        h = onsite.copy()
        for pair, op in pair_ops.items():
            j = sum(float(w.profile(z)) for w in windows_by_pair[pair])
            h += j * op
        return h

    inv_ihv = 1.0 / (1j * schedule.constants.hbar_vg)

    def commutator(h: np.ndarray, r: np.ndarray) -> np.ndarray:
        return inv_ihv * (h @ r - r @ h)

    z_records = _record_positions(schedule.length_um, record_every)
    out = [(0.0, rho)]
    r = np.array(rho.rho)
    leak = rho.leakage
    for z0, z1 in zip(z_records[:-1], z_records[1:]):
        seg = z1 - z0
        m_steps = max(1, int(math.ceil(seg / dz - 1e-12)))
        h_step = seg / m_steps
        for s in range(m_steps):
            z = z0 + s * h_step
            h_lo = hamiltonian(z).astype(complex)
            h_mid = hamiltonian(z + h_step / 2).astype(complex)
            h_hi = hamiltonian(z + h_step).astype(complex)
            k1 = commutator(h_lo, r)
            k2 = commutator(h_mid, r + h_step / 2 * k1)
            k3 = commutator(h_mid, r + h_step / 2 * k2)
            k4 = commutator(h_hi, r + h_step * k3)
            r = r + (h_step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(
            (float(z1), FockDensityMatrix(modes=rho.modes, cutoff=rho.cutoff, rho=r, leakage=leak))
        )
    return out


def oracle_observables(rho: FockDensityMatrix) -> CorrelationSet:
    """Occupations and cross-g2 by direct traces in the truncated basis."""
    n = rho.modes
    num_ops = []
    for m in range(n):
        a = mode_operator(lowering_operator(rho.cutoff), m, n, rho.cutoff)
        num_ops.append(a.T @ a)
    occ = np.array([float(np.einsum("ij,ji->", rho.rho, op).real) for op in num_ops])
    g2 = {}
    for i in range(n):
        for j in range(i + 1, n):
            if occ[i] < OCCUPATION_FLOOR or occ[j] < OCCUPATION_FLOOR:
                g2[(i, j)] = math.nan
                continue
            val = np.einsum("ij,ji->", rho.rho, num_ops[i] @ num_ops[j]).real
            g2[(i, j)] = float(val) / (occ[i] * occ[j])
    return CorrelationSet(occupations=occ, cross_g2=g2)


def reduced_density(rho: FockDensityMatrix, mode: int) -> np.ndarray:
    """Single-mode reduced density matrix (partial trace over the rest)."""
    c, n = rho.cutoff, rho.modes
    if not (0 <= mode < n):
        raise ValueError(f"mode {mode} out of range")
    t = rho.rho.reshape((c,) * n * 2)
    for m in reversed(range(n)):
        if m == mode:
            continue
        t = np.trace(t, axis1=m, axis2=t.ndim // 2 + m)
    return t


def fock_populations(rho: FockDensityMatrix, mode: int) -> np.ndarray:
    """Diagonal of the reduced density matrix: P(n) for n < cutoff."""
    return np.real(np.diag(reduced_density(rho, mode)))


def cutoff_study(
    schedule: CouplingSchedule,
    mode_specs,
    cutoffs,
    reference_g2=None,
    dz: float | None = None,
    record_every: float | None = None,
    limit: int = DEFAULT_DIMENSION_LIMIT,
) -> CutoffStudyResult:
    """Integrate at each cutoff and report the MSE of g2_12 along z against
    the phase-space reference sampled on the same record grid.

    When reference_g2 is omitted it is computed here through the exact
    phase-space route (the independent path this oracle exists to check).
    """
    cutoffs = [int(c) for c in cutoffs]
    for c in cutoffs:
        if c < 2:
            raise ValueError("cutoffs must be at least 2")
    if reference_g2 is None:
        from .observables import cross_g2 as _cross_g2
        from .states import product_state

        state = product_state([spec.to_state() for spec in mode_specs])
        traj = _propagate(state, schedule, record_every=record_every)
        reference_g2 = [_cross_g2(s, 0, 1) for _, s in traj]
    reference_g2 = np.asarray(reference_g2, dtype=float)
    dims = []
    mses = []
    for c in cutoffs:
        rho0 = encode_state(mode_specs, c, limit)
        traj = integrate_von_neumann(rho0, schedule, dz, record_every, limit)
        if len(traj) != reference_g2.shape[0]:
            raise ValueError(
                f"reference has {reference_g2.shape[0]} samples, oracle produced {len(traj)}"
            )
        g2 = np.array([oracle_observables(r).cross_g2[(0, 1)] for _, r in traj])
        dims.append(c**schedule.modes)
        mses.append(float(np.mean((g2 - reference_g2) ** 2)))
    return CutoffStudyResult(cutoffs=tuple(cutoffs), dimensions=tuple(dims), mse_g2=tuple(mses))
