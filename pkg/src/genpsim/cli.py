"""Command-line entry point: one subcommand per experiment.

Exit codes: 0 success, 2 config error, 3 resource-limit error,
4 numerical-invariant violation.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, load_config
from .errors import ConfigError, NumericalInvariantError, ResourceLimitError
from .evolution import propagate
from .fock import cutoff_study, encode_state, integrate_von_neumann, oracle_observables
from .observables import correlation_set, photon_distribution, wigner
from .qrc import (
    DEFAULT_VARIANTS,
    EncodingSpec,
    SpiralDataset,
    evaluate,
    extract_features,
    feature_matrix,
    fit_readout,
    generate_spirals,
)
from .states import product_state
from . import output

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_NUMERICAL = 4


def _apply_overrides(cfg_raw: dict, args) -> dict:
    run = dict(cfg_raw.get("run", {}))
    if args.seed is not None:
        run["seed"] = args.seed
    if args.threads is not None:
        run["threads"] = args.threads
    if args.reproducible:
        run["reproducible"] = True
        run["threads"] = 1
    if run:
        cfg_raw = {**cfg_raw, "run": run}
    return cfg_raw


def _load(args) -> RunConfig:
    cfg = load_config(args.config)
    raw = _apply_overrides(dict(cfg.raw), args)
    from .config import parse_config

    return parse_config(raw)


def _require_schedule(cfg: RunConfig, modes: int | None = None):
    if cfg.schedule is None:
        raise ConfigError("schedule", "this command needs a coupling schedule")
    if modes is not None and cfg.schedule.modes != modes:
        raise ConfigError("schedule.modes", f"this command needs {modes} modes")
    return cfg.schedule


def _require_states(cfg: RunConfig, modes: int):
    if len(cfg.states) != modes:
        raise ConfigError("states", f"this command needs {modes} per-mode state entries")
    return cfg.states


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_validate(args) -> int:
    cfg = _load(args)
    print(f"config ok (hash {cfg.config_hash})")
    return EXIT_OK


def cmd_states(args) -> int:
    cfg = _load(args)
    if not cfg.panels:
        raise ConfigError("panels", "the states command needs at least one panel")
    out = _outdir(args)
    for panel in cfg.panels:
        state = panel.state.to_state()
        dist = photon_distribution(state, 0, panel.photon_nmax)
        output.write_photon_csv(out / f"photon_{panel.name}.csv", dist, cfg.config_hash)
        if panel.wigner is not None:
            w = panel.wigner
            grid = wigner(
                state,
                0,
                re_min=w.re_min,
                re_max=w.re_max,
                im_min=w.im_min,
                im_max=w.im_max,
                resolution=w.resolution,
            )
            output.write_wigner_csv(out / f"wigner_{panel.name}.csv", grid, cfg.config_hash)
            if w.pgm:
                output.write_wigner_pgm(out / f"wigner_{panel.name}.pgm", grid)
        print(f"states: wrote panel '{panel.name}'")
    return EXIT_OK


def _trajectory_outputs(cfg: RunConfig, schedule, state):
    traj = propagate(
        state,
        schedule,
        dz=cfg.integration.dz_um,
        record_every=cfg.integration.record_every_um,
    )
    zs = [z for z, _ in traj]
    sets = [correlation_set(s) for _, s in traj]
    occ = np.array([c.occupations for c in sets])
    g2_rows = [[c.cross_g2[p] for p in c.g2_pairs()] for c in sets]
    return traj, zs, occ, g2_rows


def _write_mode_wigners(cfg: RunConfig, out, state, tag: str):
    w = cfg.wigner
    for m in range(state.modes):
        grid = wigner(
            state,
            m,
            re_min=w.re_min,
            re_max=w.re_max,
            im_min=w.im_min,
            im_max=w.im_max,
            resolution=w.resolution,
        )
        output.write_wigner_csv(out / f"wigner_{tag}_mode{m + 1}.csv", grid, cfg.config_hash)
        if w.pgm:
            output.write_wigner_pgm(out / f"wigner_{tag}_mode{m + 1}.pgm", grid)


def cmd_twomode(args) -> int:
    cfg = _load(args)
    schedule = _require_schedule(cfg, modes=2)
    specs = _require_states(cfg, 2)
    out = _outdir(args)
    state = product_state([s.to_state() for s in specs])
    traj, zs, occ, g2_rows = _trajectory_outputs(cfg, schedule, state)
    output.write_trajectory_csv(out / "trajectory.csv", zs, occ, g2_rows, cfg.config_hash)
    _write_mode_wigners(cfg, out, traj[0][1], "input")
    _write_mode_wigners(cfg, out, traj[-1][1], "output")
    print(f"twomode: wrote trajectory with {len(zs)} snapshots")
    return EXIT_OK


def cmd_fourmode(args) -> int:
    cfg = _load(args)
    schedule = _require_schedule(cfg, modes=4)
    specs = _require_states(cfg, 4)
    out = _outdir(args)
    state = product_state([s.to_state() for s in specs])
    traj, zs, occ, g2_rows = _trajectory_outputs(cfg, schedule, state)
    output.write_trajectory_csv(out / "trajectory.csv", zs, occ, g2_rows, cfg.config_hash)
    _write_mode_wigners(cfg, out, traj[-1][1], "output")
    print(f"fourmode: wrote trajectory with {len(zs)} snapshots")
    return EXIT_OK


def cmd_cutoff_study(args) -> int:
    cfg = _load(args)
    schedule = _require_schedule(cfg, modes=2)
    specs = _require_states(cfg, 2)
    out = _outdir(args)

    state = product_state([s.to_state() for s in specs])
    traj, zs, occ_pp, g2_rows = _trajectory_outputs(cfg, schedule, state)
    g2_pp = np.array([row[0] for row in g2_rows])

    result = cutoff_study(
        schedule,
        specs,
        cfg.oracle.cutoffs,
        reference_g2=g2_pp,
        dz=cfg.oracle.dz_um,
        record_every=cfg.integration.record_every_um,
        limit=cfg.oracle.dimension_limit,
    )
    output.write_cutoff_csv(out / "cutoff_study.csv", result, cfg.config_hash)

    for cutoff in cfg.oracle.cutoffs:
        rho0 = encode_state(specs, cutoff, cfg.oracle.dimension_limit)
        rho_traj = integrate_von_neumann(
            rho0,
            schedule,
            dz=cfg.oracle.dz_um,
            record_every=cfg.integration.record_every_um,
            limit=cfg.oracle.dimension_limit,
        )
        sets = [oracle_observables(r) for _, r in rho_traj]
        occ_me = np.array([c.occupations for c in sets])
        g2_me = np.array([c.cross_g2[(0, 1)] for c in sets])
        output.write_overlay_csv(
            out / f"overlay_cutoff{cutoff}.csv",
            zs,
            occ_pp,
            g2_pp,
            occ_me,
            g2_me,
            cfg.config_hash,
        )
    print(f"cutoff-study: cutoffs {list(result.cutoffs)} mse {list(result.mse_g2)}")
    return EXIT_OK


def cmd_classify(args) -> int:
    cfg = _load(args)
    schedule = _require_schedule(cfg, modes=4)
    out = _outdir(args)
    q = cfg.qrc

    dataset = generate_spirals(q.n_points, noise=q.noise, seed=q.dataset_seed)
    output.write_dataset_csv(out / "dataset.csv", dataset, cfg.config_hash)

    point_records = {}
    for kitten, tag in ((True, "quantum"), (False, "classical")):
        records = extract_features(
            dataset,
            EncodingSpec(kitten=kitten),
            schedule,
            dz=cfg.integration.dz_um,
            threads=cfg.run.threads,
        )
        point_records[kitten] = records
        feats, labels = feature_matrix(records)
        output.write_features_csv(
            out / f"features_{tag}.csv", dataset, feats, labels, cfg.config_hash
        )

    reports = evaluate(
        dataset,
        schedule,
        n_resamples=q.n_resamples,
        seed=cfg.run.seed,
        subset_size=q.subset_size,
        train_size=q.train_size,
        test_size=q.test_size,
        dz=cfg.integration.dz_um,
        threads=cfg.run.threads,
    )
    output.write_report_json(out / "report.json", reports, cfg.config_hash)

    # one grid feature pass per encoding, shared across the variant models
    res = q.boundary_resolution
    xs = np.linspace(-1.0, 1.0, res)
    ys = np.linspace(-1.0, 1.0, res)
    gx, gy = np.meshgrid(xs, ys)
    grid = SpiralDataset(x=gx.ravel(), y=gy.ravel(), labels=np.zeros(res * res, dtype=int))
    grid_features = {}
    for name, kitten, mask in DEFAULT_VARIANTS:
        if kitten not in grid_features:
            recs = extract_features(
                grid,
                EncodingSpec(kitten=kitten),
                schedule,
                dz=cfg.integration.dz_um,
                threads=cfg.run.threads,
            )
            grid_features[kitten], _ = feature_matrix(recs)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            model = fit_readout(point_records[kitten], mask)
        p = model.predict_proba(grid_features[kitten]).reshape(res, res)
        output.write_boundary_csv(out / f"boundary_{name}.csv", xs, ys, p, cfg.config_hash)

    for name, rep in reports.items():
        print(f"classify: {name}: {100 * rep.mean:.1f}% +- {100 * rep.std:.1f}%")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genpsim",
        description="Phase-space simulator for coherent-state superpositions "
        "in coupled-waveguide arrays, plus a spiral-classification pipeline.",
    )
    parser.add_argument("--version", action="version", version=f"genpsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the YAML run configuration")
        p.add_argument("--out", default="out", help="output directory (created if missing)")
        p.add_argument("--seed", type=int, default=None, help="override run.seed")
        p.add_argument("--threads", type=int, default=None, help="override run.threads")
        p.add_argument(
            "--reproducible",
            action="store_true",
            help="force single-threaded, fixed-order computation",
        )
        p.set_defaults(func=func)
        return p

    add("states", cmd_states, "photon distributions and Wigner grids for configured states")
    add("twomode", cmd_twomode, "two-mode trajectory plus input/output Wigner grids")
    add("cutoff-study", cmd_cutoff_study, "Fock-cutoff convergence study against the exact route")
    add("fourmode", cmd_fourmode, "four-mode trajectory plus output Wigner grids")
    add("classify", cmd_classify, "spiral classification: features, report, boundaries")
    add("validate", cmd_validate, "schema-check a config file and exit")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NumericalInvariantError as exc:
        print(f"numerical invariant violated: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
