"""Run configuration: YAML loading, strict schema validation, hashing.

Every config is a single key-value tree. Unknown keys are rejected and all
diagnostics carry the field path, so a typo fails before any computation.
"""

from __future__ import annotations

import cmath
import hashlib
import json
import math
from dataclasses import dataclass, field

import yaml

from .errors import ConfigError
from .evolution import CouplingSchedule, CouplingWindow, PhysicalConstants
from .states import CatSpec, CoherentSpec, MultiCatSpec


def _expect_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected a mapping, got {type(obj).__name__}")
    return obj


def _expect_list(obj, path: str) -> list:
    if not isinstance(obj, list):
        raise ConfigError(path, f"expected a list, got {type(obj).__name__}")
    return obj


def _reject_unknown(d: dict, allowed, path: str) -> None:
    unknown = set(d) - set(allowed)
    if unknown:
        raise ConfigError(path, f"unknown key(s): {', '.join(sorted(map(str, unknown)))}")


def _require(d: dict, key: str, path: str):
    if key not in d:
        raise ConfigError(path, f"missing required key '{key}'")
    return d[key]


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise ConfigError(path, f"must be finite, got {v!r}")
    return v


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    return value


def _as_bool(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(path, f"expected a boolean, got {value!r}")
    return value


def _parse_complex(d, path: str) -> complex:
    d = _expect_mapping(d, path)
    _reject_unknown(d, {"magnitude", "phase"}, path)
    mag = _as_float(_require(d, "magnitude", path), f"{path}.magnitude")
    phase = _as_float(d.get("phase", 0.0), f"{path}.phase")
    return mag * cmath.exp(1j * phase)


def parse_state_spec(d, path: str):
    d = _expect_mapping(d, path)
    kind = _require(d, "kind", path)
    try:
        if kind == "coherent":
            _reject_unknown(d, {"kind", "magnitude", "phase"}, path)
            return CoherentSpec(_parse_complex({k: d[k] for k in d if k != "kind"}, path))
        if kind == "cat":
            _reject_unknown(d, {"kind", "magnitude", "phase", "a", "b", "theta"}, path)
            beta = _parse_complex(
                {k: d[k] for k in d if k in ("magnitude", "phase")}, path
            )
            return CatSpec(
                beta=beta,
                a=_as_float(_require(d, "a", path), f"{path}.a"),
                b=_as_float(_require(d, "b", path), f"{path}.b"),
                theta=_as_float(d.get("theta", 0.0), f"{path}.theta"),
            )
        if kind == "multi_cat":
            _reject_unknown(d, {"kind", "amplitudes", "coeffs"}, path)
            amps = [
                _parse_complex(a, f"{path}.amplitudes[{i}]")
                for i, a in enumerate(_expect_list(_require(d, "amplitudes", path), path))
            ]
            coeffs = [
                _parse_complex(c, f"{path}.coeffs[{i}]")
                for i, c in enumerate(_expect_list(_require(d, "coeffs", path), path))
            ]
            return MultiCatSpec(tuple(amps), tuple(coeffs))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc
    raise ConfigError(f"{path}.kind", f"must be coherent, cat or multi_cat, got {kind!r}")


def _parse_constants(d, path: str) -> PhysicalConstants:
    if d is None:
        return PhysicalConstants()
    d = _expect_mapping(d, path)
    _reject_unknown(d, {"hbar_meVps", "vg_um_per_ps"}, path)
    try:
        return PhysicalConstants(
            hbar_mev_ps=_as_float(d.get("hbar_meVps", 0.6582), f"{path}.hbar_meVps"),
            vg_um_per_ps=_as_float(d.get("vg_um_per_ps", 70.0), f"{path}.vg_um_per_ps"),
        )
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def _parse_schedule(d, path: str, constants: PhysicalConstants) -> CouplingSchedule:
    d = _expect_mapping(d, path)
    _reject_unknown(d, {"modes", "length_um", "onsite_meV", "windows"}, path)
    modes = _as_int(_require(d, "modes", path), f"{path}.modes")
    length = _as_float(_require(d, "length_um", path), f"{path}.length_um")
    onsite = [
        _as_float(v, f"{path}.onsite_meV[{i}]")
        for i, v in enumerate(d.get("onsite_meV", [0.0] * modes))
    ]
    windows = []
    for i, w in enumerate(_expect_list(_require(d, "windows", path), f"{path}.windows")):
        wpath = f"{path}.windows[{i}]"
        w = _expect_mapping(w, wpath)
        _reject_unknown(w, {"pair", "J_meV", "z0_um", "sigma_um", "d"}, wpath)
        pair = _expect_list(_require(w, "pair", wpath), f"{wpath}.pair")
        if len(pair) != 2:
            raise ConfigError(f"{wpath}.pair", "must be a two-element list")
        # config uses 1-based mode indices
        i0 = _as_int(pair[0], f"{wpath}.pair[0]") - 1
        i1 = _as_int(pair[1], f"{wpath}.pair[1]") - 1
        try:
            windows.append(
                CouplingWindow(
                    pair=(i0, i1),
                    j_mev=_as_float(_require(w, "J_meV", wpath), f"{wpath}.J_meV"),
                    z0_um=_as_float(_require(w, "z0_um", wpath), f"{wpath}.z0_um"),
                    sigma_um=_as_float(_require(w, "sigma_um", wpath), f"{wpath}.sigma_um"),
                    d=_as_int(w.get("d", 2), f"{wpath}.d"),
                )
            )
        except ValueError as exc:
            raise ConfigError(wpath, str(exc)) from exc
    try:
        return CouplingSchedule(
            modes=modes,
            windows=tuple(windows),
            length_um=length,
            onsite_mev=tuple(onsite),
            constants=constants,
        )
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


@dataclass(frozen=True)
class WignerOptions:
    re_min: float = -4.0
    re_max: float = 4.0
    im_min: float = -4.0
    im_max: float = 4.0
    resolution: int = 201
    pgm: bool = False


def _parse_wigner(d, path: str) -> WignerOptions:
    if d is None:
        return WignerOptions()
    d = _expect_mapping(d, path)
    allowed = {"re_min", "re_max", "im_min", "im_max", "resolution", "pgm"}
    _reject_unknown(d, allowed, path)
    opts = WignerOptions(
        re_min=_as_float(d.get("re_min", -4.0), f"{path}.re_min"),
        re_max=_as_float(d.get("re_max", 4.0), f"{path}.re_max"),
        im_min=_as_float(d.get("im_min", -4.0), f"{path}.im_min"),
        im_max=_as_float(d.get("im_max", 4.0), f"{path}.im_max"),
        resolution=_as_int(d.get("resolution", 201), f"{path}.resolution"),
        pgm=_as_bool(d.get("pgm", False), f"{path}.pgm"),
    )
    if opts.resolution < 2:
        raise ConfigError(f"{path}.resolution", "must be at least 2")
    if opts.re_max <= opts.re_min or opts.im_max <= opts.im_min:
        raise ConfigError(path, "grid extents must satisfy min < max")
    return opts


@dataclass(frozen=True)
class Panel:
    name: str
    state: object
    photon_nmax: int
    wigner: WignerOptions | None


@dataclass(frozen=True)
class IntegrationOptions:
    dz_um: float | None = None
    record_every_um: float | None = None


@dataclass(frozen=True)
class OracleOptions:
    cutoffs: tuple = (2, 4, 6, 8)
    dimension_limit: int = 2**16
    dz_um: float | None = None


@dataclass(frozen=True)
class QrcOptions:
    n_points: int = 800
    noise: float = 0.03
    dataset_seed: int = 7
    n_resamples: int = 100
    subset_size: int = 400
    train_size: int = 300
    test_size: int = 100
    boundary_resolution: int = 101


@dataclass(frozen=True)
class RunOptions:
    seed: int = 0
    threads: int = 1
    reproducible: bool = False


@dataclass(frozen=True)
class RunConfig:
    raw: dict
    constants: PhysicalConstants
    schedule: CouplingSchedule | None
    states: tuple
    panels: tuple
    integration: IntegrationOptions
    wigner: WignerOptions
    photon_nmax: int
    oracle: OracleOptions
    qrc: QrcOptions
    run: RunOptions

    @property
    def config_hash(self) -> str:
        canon = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:12]


TOP_LEVEL_KEYS = {
    "constants",
    "schedule",
    "integration",
    "states",
    "panels",
    "wigner",
    "photon_nmax",
    "oracle",
    "qrc",
    "run",
}


def parse_config(raw: dict) -> RunConfig:
    raw = _expect_mapping(raw, "<root>")
    _reject_unknown(raw, TOP_LEVEL_KEYS, "<root>")
    constants = _parse_constants(raw.get("constants"), "constants")

    schedule = None
    if "schedule" in raw:
        schedule = _parse_schedule(raw["schedule"], "schedule", constants)

    states = ()
    if "states" in raw:
        entries = _expect_list(raw["states"], "states")
        states = tuple(
            parse_state_spec(s, f"states[{i}]") for i, s in enumerate(entries)
        )

    panels = []
    if "panels" in raw:
        for i, p in enumerate(_expect_list(raw["panels"], "panels")):
            ppath = f"panels[{i}]"
            p = _expect_mapping(p, ppath)
            _reject_unknown(p, {"name", "state", "photon_nmax", "wigner"}, ppath)
            name = _require(p, "name", ppath)
            if not isinstance(name, str) or not name:
                raise ConfigError(f"{ppath}.name", "must be a non-empty string")
            nmax = _as_int(p.get("photon_nmax", 20), f"{ppath}.photon_nmax")
            if nmax < 0:
                raise ConfigError(f"{ppath}.photon_nmax", "must be nonnegative")
            panels.append(
                Panel(
                    name=name,
                    state=parse_state_spec(_require(p, "state", ppath), f"{ppath}.state"),
                    photon_nmax=nmax,
                    wigner=_parse_wigner(p["wigner"], f"{ppath}.wigner")
                    if "wigner" in p
                    else None,
                )
            )

    integration = IntegrationOptions()
    if "integration" in raw:
        d = _expect_mapping(raw["integration"], "integration")
        _reject_unknown(d, {"dz_um", "record_every_um"}, "integration")
        dz = d.get("dz_um")
        rec = d.get("record_every_um")
        integration = IntegrationOptions(
            dz_um=None if dz is None else _as_float(dz, "integration.dz_um"),
            record_every_um=None
            if rec is None
            else _as_float(rec, "integration.record_every_um"),
        )
        if integration.dz_um is not None and integration.dz_um <= 0:
            raise ConfigError("integration.dz_um", "must be positive")
        if integration.record_every_um is not None and integration.record_every_um <= 0:
            raise ConfigError("integration.record_every_um", "must be positive")

    wigner_opts = _parse_wigner(raw.get("wigner"), "wigner")
    photon_nmax = _as_int(raw.get("photon_nmax", 20), "photon_nmax")
    if photon_nmax < 0:
        raise ConfigError("photon_nmax", "must be nonnegative")

    oracle = OracleOptions()
    if "oracle" in raw:
        d = _expect_mapping(raw["oracle"], "oracle")
        _reject_unknown(d, {"cutoffs", "dimension_limit", "dz_um"}, "oracle")
        cutoffs = tuple(
            _as_int(c, f"oracle.cutoffs[{i}]")
            for i, c in enumerate(_expect_list(d.get("cutoffs", [2, 4, 6, 8]), "oracle.cutoffs"))
        )
        if any(c < 2 for c in cutoffs):
            raise ConfigError("oracle.cutoffs", "every cutoff must be at least 2")
        dz = d.get("dz_um")
        oracle = OracleOptions(
            cutoffs=cutoffs,
            dimension_limit=_as_int(d.get("dimension_limit", 2**16), "oracle.dimension_limit"),
            dz_um=None if dz is None else _as_float(dz, "oracle.dz_um"),
        )

    qrc = QrcOptions()
    if "qrc" in raw:
        d = _expect_mapping(raw["qrc"], "qrc")
        allowed = {
            "n_points",
            "noise",
            "dataset_seed",
            "n_resamples",
            "subset_size",
            "train_size",
            "test_size",
            "boundary_resolution",
        }
        _reject_unknown(d, allowed, "qrc")
        qrc = QrcOptions(
            n_points=_as_int(d.get("n_points", 800), "qrc.n_points"),
            noise=_as_float(d.get("noise", 0.03), "qrc.noise"),
            dataset_seed=_as_int(d.get("dataset_seed", 7), "qrc.dataset_seed"),
            n_resamples=_as_int(d.get("n_resamples", 100), "qrc.n_resamples"),
            subset_size=_as_int(d.get("subset_size", 400), "qrc.subset_size"),
            train_size=_as_int(d.get("train_size", 300), "qrc.train_size"),
            test_size=_as_int(d.get("test_size", 100), "qrc.test_size"),
            boundary_resolution=_as_int(
                d.get("boundary_resolution", 101), "qrc.boundary_resolution"
            ),
        )
        if qrc.n_points % 2 != 0 or qrc.n_points <= 0:
            raise ConfigError("qrc.n_points", "must be a positive even integer")
        if qrc.train_size + qrc.test_size != qrc.subset_size:
            raise ConfigError("qrc", "train_size + test_size must equal subset_size")

    run = RunOptions()
    if "run" in raw:
        d = _expect_mapping(raw["run"], "run")
        _reject_unknown(d, {"seed", "threads", "reproducible"}, "run")
        run = RunOptions(
            seed=_as_int(d.get("seed", 0), "run.seed"),
            threads=_as_int(d.get("threads", 1), "run.threads"),
            reproducible=_as_bool(d.get("reproducible", False), "run.reproducible"),
        )
        if run.threads < 1:
            raise ConfigError("run.threads", "must be at least 1")

    return RunConfig(
        raw=raw,
        constants=constants,
        schedule=schedule,
        states=states,
        panels=tuple(panels),
        integration=integration,
        wigner=wigner_opts,
        photon_nmax=photon_nmax,
        oracle=oracle,
        qrc=qrc,
        run=run,
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(path, "config file not found") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(path, f"YAML parse error: {exc}") from exc
    if raw is None:
        raise ConfigError(path, "config file is empty")
    return parse_config(raw)
