"""CSV/JSON/PGM emission with a provenance header on every file."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .observables import PhotonDistribution, WignerGrid


def provenance(config_hash: str) -> str:
    return f"# genpsim {__version__} config={config_hash}"


def _fmt(v: float) -> str:
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return f"{v:.17g}"


def g2_column_names(modes: int):
    return [f"g2_{i + 1}{j + 1}" for i in range(modes) for j in range(i + 1, modes)]


def write_trajectory_csv(path, zs, occupations, g2_rows, config_hash: str) -> None:
    """Columns: z_um, n_1..n_N, then g2_ij for every pair i<j."""
    occupations = np.asarray(occupations)
    modes = occupations.shape[1]
    names = [f"n_{m + 1}" for m in range(modes)] + g2_column_names(modes)
    lines = [provenance(config_hash), "z_um," + ",".join(names)]
    for k, z in enumerate(zs):
        row = [_fmt(float(z))]
        row += [_fmt(v) for v in occupations[k]]
        row += [_fmt(v) for v in g2_rows[k]]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_photon_csv(path, dist: PhotonDistribution, config_hash: str) -> None:
    lines = [provenance(config_hash), "n,probability"]
    for n, p in enumerate(dist.probabilities):
        lines.append(f"{n},{_fmt(float(p))}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_wigner_csv(path, grid: WignerGrid, config_hash: str) -> None:
    """Four header lines (provenance, extents, resolution), then the value
    matrix: one row per Im(xi) sample, columns along Re(xi)."""
    lines = [
        provenance(config_hash),
        f"# re_min={_fmt(grid.re_min)} re_max={_fmt(grid.re_max)}",
        f"# im_min={_fmt(grid.im_min)} im_max={_fmt(grid.im_max)}",
        f"# resolution={grid.resolution}",
    ]
    for row in grid.values:
        lines.append(",".join(_fmt(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_wigner_pgm(path, grid: WignerGrid) -> None:
    """8-bit PGM, symmetric scale about zero so negativity is visible."""
    vmax = float(np.abs(grid.values).max()) or 1.0
    pixels = np.round((grid.values + vmax) / (2 * vmax) * 255).astype(int)
    pixels = np.clip(pixels, 0, 255)[::-1]  # top row = largest Im(xi)
    lines = [f"P2 {grid.resolution} {grid.resolution} 255"]
    for row in pixels:
        lines.append(" ".join(str(int(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_features_csv(path, dataset, features, labels, config_hash: str) -> None:
    from .qrc import FEATURE_NAMES

    lines = [provenance(config_hash), "x,y,label," + ",".join(FEATURE_NAMES)]
    for k in range(len(labels)):
        row = [_fmt(float(dataset.x[k])), _fmt(float(dataset.y[k])), str(int(labels[k]))]
        row += [_fmt(float(v)) for v in features[k]]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_report_json(path, reports, config_hash: str) -> None:
    payload = {
        "tool": "genpsim",
        "version": __version__,
        "config": config_hash,
        "variants": {
            name: {
                "mean_accuracy": rep.mean,
                "std_accuracy": rep.std,
                "n_resamples": int(rep.accuracies.shape[0]),
                "accuracies": [float(a) for a in rep.accuracies],
            }
            for name, rep in reports.items()
        },
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_boundary_csv(path, xs, ys, p, config_hash: str) -> None:
    lines = [provenance(config_hash), "x,y,p"]
    for iy, yv in enumerate(ys):
        for ix, xv in enumerate(xs):
            lines.append(f"{_fmt(float(xv))},{_fmt(float(yv))},{_fmt(float(p[iy, ix]))}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_dataset_csv(path, dataset, config_hash: str) -> None:
    lines = [provenance(config_hash), "x,y,label"]
    for k in range(dataset.size):
        lines.append(
            f"{_fmt(float(dataset.x[k]))},{_fmt(float(dataset.y[k]))},{int(dataset.labels[k])}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_cutoff_csv(path, result, config_hash: str) -> None:
    lines = [provenance(config_hash), "cutoff,dimension,mse_g2"]
    for c, dim, mse in zip(result.cutoffs, result.dimensions, result.mse_g2):
        lines.append(f"{c},{dim},{_fmt(mse)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_overlay_csv(path, zs, occ_pp, g2_pp, occ_me, g2_me, config_hash: str) -> None:
    """Two-route comparison trajectory for one cutoff."""
    modes = occ_pp.shape[1]
    names = (
        [f"n_{m + 1}_pp" for m in range(modes)]
        + ["g2_12_pp"]
        + [f"n_{m + 1}_me" for m in range(modes)]
        + ["g2_12_me"]
    )
    lines = [provenance(config_hash), "z_um," + ",".join(names)]
    for k, z in enumerate(zs):
        row = [_fmt(float(z))]
        row += [_fmt(v) for v in occ_pp[k]]
        row.append(_fmt(float(g2_pp[k])))
        row += [_fmt(v) for v in occ_me[k]]
        row.append(_fmt(float(g2_me[k])))
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")
