"""Spiral classification with the four-mode interferometer as feature map.

Point coordinates enter as phases of coherent inputs, one mode carries the
nonclassical kitten state, and the trained part is only a logistic readout
on the measured occupations and cross-correlations. Feature extraction is
a pure function of (x, y) and the schedule, so features are computed once
per dataset point and reused across every resample.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .evolution import CouplingSchedule, TransferMatrix, transfer_matrix
from .observables import correlation_set
from .states import CoherentSpec, kitten_spec, product_state

FEATURE_NAMES = (
    "n_1",
    "n_2",
    "n_3",
    "n_4",
    "g2_12",
    "g2_13",
    "g2_14",
    "g2_23",
    "g2_24",
    "g2_34",
)

MASKS = {
    "occupations": np.arange(0, 4),
    "correlations": np.arange(4, 10),
    "all": np.arange(0, 10),
}


@dataclass(frozen=True)
class SpiralDataset:
    x: np.ndarray
    y: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        for name in ("x", "y", "labels"):
            arr = np.asarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (self.x.shape == self.y.shape == self.labels.shape):
            raise ValueError("coordinate and label arrays must have equal shapes")

    @property
    def size(self) -> int:
        return self.x.shape[0]


def generate_spirals(
    n_points: int,
    noise: float = 0.03,
    seed: int = 0,
    t_min: float = math.pi / 4,
    t_max: float = 2 * math.pi,
) -> SpiralDataset:
    """Two interlaced spirals, class k at angle t + k*pi, radius t/t_max.

    Gaussian noise of scale `noise` is added in the rescaled coordinates,
    which are then clipped to the unit square. One turn per arm (t_max =
    2*pi) keeps the task solvable by the correlation readout yet out of
    reach for occupations alone.
    """
    if n_points % 2 != 0:
        raise ValueError("n_points must be even (balanced classes)")
    rng = np.random.default_rng(seed)
    half = n_points // 2
    t = np.linspace(t_min, t_max, half)
    xs, ys, labels = [], [], []
    for k in (0, 1):
        phi = t + k * math.pi
        r = t / t_max
        xs.append(r * np.cos(phi))
        ys.append(r * np.sin(phi))
        labels.append(np.full(half, k, dtype=int))
    x = np.concatenate(xs) + rng.normal(0.0, noise, n_points)
    y = np.concatenate(ys) + rng.normal(0.0, noise, n_points)
    return SpiralDataset(
        x=np.clip(x, -1.0, 1.0), y=np.clip(y, -1.0, 1.0), labels=np.concatenate(labels)
    )


@dataclass(frozen=True)
class EncodingSpec:
    """Input templates for the four modes.

    mode 1 carries x in its phase, mode 3 carries y, mode 4 is a fixed
    phase reference; mode 2 is the kitten state, or a coherent state of the
    same amplitude for the classical baseline.
    """

    kitten: bool = True

    def mode_specs(self, x: float, y: float):
        if not (-1.0 <= x <= 1.0 and -1.0 <= y <= 1.0):
            raise ValueError(f"coordinates must lie in [-1, 1]^2, got ({x}, {y})")
        mode2 = kitten_spec(1.0, theta=0.0) if self.kitten else CoherentSpec(1.0)
        return [
            CoherentSpec(np.exp(1j * math.pi * x / 2.0)),
            mode2,
            CoherentSpec(1.4 * np.exp(1j * (math.pi / 2.0 + math.pi * y / 2.0))),
            CoherentSpec(1j),
        ]


@dataclass(frozen=True)
class FeatureRecord:
    occupations: np.ndarray
    cross_g2: np.ndarray
    label: int

    def vector(self) -> np.ndarray:
        return np.concatenate([self.occupations, self.cross_g2])


def _features_for_point(u: TransferMatrix, encoding: EncodingSpec, x, y, label) -> FeatureRecord:
    state = product_state([s.to_state() for s in encoding.mode_specs(x, y)])
    out = correlation_set(u.apply(state))
    if encoding.kitten:
        g2 = np.array([out.cross_g2[p] for p in out.g2_pairs()])
    else:
        # all-coherent baseline: the correlations are identically 1
        g2 = np.ones(len(out.cross_g2))
    if not np.all(np.isfinite(out.occupations)) or not np.all(np.isfinite(g2)):
        raise ValueError(f"non-finite features at point ({x}, {y})")
    return FeatureRecord(occupations=out.occupations, cross_g2=g2, label=int(label))


def extract_features(
    dataset: SpiralDataset,
    encoding: EncodingSpec,
    schedule: CouplingSchedule,
    dz: float | None = None,
    threads: int = 1,
):
    """One FeatureRecord per dataset point: 4 occupations + 6 cross-g2."""
    if schedule.modes != 4:
        raise ValueError("the feature map needs a four-mode schedule")
    u = transfer_matrix(schedule, dz)
    points = list(zip(dataset.x, dataset.y, dataset.labels))

    def work(p):
        x, y, label = p
        try:
            return _features_for_point(u, encoding, float(x), float(y), label)
        except Exception as exc:
            raise RuntimeError(f"feature extraction failed at point ({x}, {y})") from exc

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, points))
    return [work(p) for p in points]


def feature_matrix(records) -> tuple[np.ndarray, np.ndarray]:
    """(n, 10) feature matrix and (n,) label vector."""
    xs = np.array([r.vector() for r in records])
    ys = np.array([r.label for r in records])
    return xs, ys


@dataclass(frozen=True)
class ReadoutModel:
    mask_name: str
    mean: np.ndarray
    std: np.ndarray
    weights: np.ndarray
    bias: float
    converged: bool

    def _standardize(self, features: np.ndarray) -> np.ndarray:
        cols = MASKS[self.mask_name]
        x = features[:, cols]
        safe = np.where(self.std > 0.0, self.std, 1.0)
        z = (x - self.mean) / safe
        return np.where(self.std > 0.0, z, 0.0)

    def predict_proba(self, features: np.ndarray) -> np.ndarray:
        z = self._standardize(np.atleast_2d(features))
        logits = z @ self.weights + self.bias
        return np.exp(logits - np.logaddexp(0.0, logits))

    def predict(self, features: np.ndarray) -> np.ndarray:
        return (self.predict_proba(features) >= 0.5).astype(int)

    def accuracy(self, features: np.ndarray, labels: np.ndarray) -> float:
        return float(np.mean(self.predict(features) == labels))


def _logistic_loss_grad(params, x, y):
    w, b = params[:-1], params[-1]
    logits = x @ w + b
    # sum over samples of softplus(logits) - y*logits
    loss = float(np.sum(np.logaddexp(0.0, logits) - y * logits))
    p = np.exp(logits - np.logaddexp(0.0, logits))
    grad_w = x.T @ (p - y)
    grad_b = float(np.sum(p - y))
    return loss, np.concatenate([grad_w, [grad_b]])


def fit_readout(
    records,
    mask: str = "all",
    gtol: float = 1e-8,
    max_iter: int = 10_000,
) -> ReadoutModel:
    """Standardize with training statistics, then minimize the unregularized
    logistic loss with a quasi-Newton method."""
    if mask not in MASKS:
        raise ValueError(f"mask must be one of {sorted(MASKS)}, got {mask!r}")
    if not records:
        raise ValueError("training set is empty")
    full, labels = feature_matrix(records)
    cols = MASKS[mask]
    x = full[:, cols]
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    if np.any(std == 0.0):
        warnings.warn(
            "zero-variance feature(s) in training data; their standardized "
            "values are set to 0",
            RuntimeWarning,
            stacklevel=2,
        )
    safe = np.where(std > 0.0, std, 1.0)
    z = np.where(std > 0.0, (x - mean) / safe, 0.0)

    x0 = np.zeros(len(cols) + 1)
    result = minimize(
        _logistic_loss_grad,
        x0,
        args=(z, labels.astype(float)),
        jac=True,
        method="L-BFGS-B",
        options={"gtol": gtol, "maxiter": max_iter},
    )
    return ReadoutModel(
        mask_name=mask,
        mean=mean,
        std=std,
        weights=result.x[:-1],
        bias=float(result.x[-1]),
        converged=bool(result.success),
    )


@dataclass(frozen=True)
class EvaluationReport:
    variant: str
    accuracies: np.ndarray

    @property
    def mean(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def std(self) -> float:
        return float(np.std(self.accuracies))


DEFAULT_VARIANTS = (
    ("classical_occupations", False, "occupations"),
    ("quantum_occupations", True, "occupations"),
    ("quantum_correlations", True, "correlations"),
)


def _balanced_resample(rng, labels, subset_size, train_size, test_size):
    train_idx, test_idx = [], []
    per_class = subset_size // 2
    tr_per_class = train_size // 2
    te_per_class = test_size // 2
    for cls in (0, 1):
        pool = np.flatnonzero(labels == cls)
        if pool.size < per_class:
            raise ValueError(
                f"class {cls} has {pool.size} points, need {per_class} per resample"
            )
        chosen = rng.choice(pool, size=per_class, replace=False)
        rng.shuffle(chosen)
        train_idx.append(chosen[:tr_per_class])
        test_idx.append(chosen[tr_per_class : tr_per_class + te_per_class])
    return np.concatenate(train_idx), np.concatenate(test_idx)


def evaluate(
    dataset: SpiralDataset,
    schedule: CouplingSchedule,
    n_resamples: int = 100,
    seed: int = 0,
    variants=DEFAULT_VARIANTS,
    subset_size: int = 400,
    train_size: int = 300,
    test_size: int = 100,
    dz: float | None = None,
    threads: int = 1,
):
    """Resampled accuracy for each encoding/mask variant.

    Every resample draws `subset_size` points class-balanced and splits them
    class-balanced into train/test; the features themselves are extracted
    once per encoding and shared across resamples.
    """
    if dataset.size < subset_size:
        raise ValueError(f"dataset has {dataset.size} points, need {subset_size}")
    if train_size + test_size != subset_size:
        raise ValueError("train_size + test_size must equal subset_size")

    feature_cache: dict[bool, tuple[np.ndarray, np.ndarray]] = {}
    for _, kitten, _ in variants:
        if kitten not in feature_cache:
            records = extract_features(
                dataset, EncodingSpec(kitten=kitten), schedule, dz=dz, threads=threads
            )
            feature_cache[kitten] = feature_matrix(records)

    reports = {}
    for name, kitten, mask in variants:
        full, labels = feature_cache[kitten]
        rng = np.random.default_rng(seed)
        accs = np.empty(n_resamples)
        for r in range(n_resamples):
            tr, te = _balanced_resample(rng, labels, subset_size, train_size, test_size)
            records = [
                FeatureRecord(occupations=full[i, :4], cross_g2=full[i, 4:], label=labels[i])
                for i in tr
            ]
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                model = fit_readout(records, mask)
            accs[r] = model.accuracy(full[te], labels[te])
        reports[name] = EvaluationReport(variant=name, accuracies=accs)
    return reports


def decision_boundary(
    model: ReadoutModel,
    schedule: CouplingSchedule,
    encoding: EncodingSpec,
    resolution: int = 101,
    dz: float | None = None,
    threads: int = 1,
):
    """p(class=1) over a square grid in the unit box; returns (xs, ys, P)."""
    xs = np.linspace(-1.0, 1.0, resolution)
    ys = np.linspace(-1.0, 1.0, resolution)
    gx, gy = np.meshgrid(xs, ys)
    grid = SpiralDataset(
        x=gx.ravel(), y=gy.ravel(), labels=np.zeros(resolution * resolution, dtype=int)
    )
    records = extract_features(grid, encoding, schedule, dz=dz, threads=threads)
    full, _ = feature_matrix(records)
    p = model.predict_proba(full).reshape(resolution, resolution)
    return xs, ys, p
