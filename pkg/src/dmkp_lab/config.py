"""Run configuration: strict JSON parsing mapped onto module preconditions.

Unknown keys are rejected at every level so sweep scripts fail loudly on
typos.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .grid import GridError, SpectralField, SpectralGrid, build_grid
from .initial_data import gaussian_field, phi_n_field, random_field, single_mode_field
from .symbols import PRESETS, ModelParams


class ConfigError(ValueError):
    """Invalid or unknown configuration content."""


def _take(section: dict, name: str, allowed: set[str], required: set[str] = frozenset()) -> dict:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {name!r}: {sorted(unknown)}")
    missing = required - set(section)
    if missing:
        raise ConfigError(f"missing keys in {name!r}: {sorted(missing)}")
    return section


@dataclass
class RunConfig:
    params: ModelParams
    grid: SpectralGrid
    t_final: float
    dt: float
    output_every: int
    init: dict
    output_dir: str
    norm_s1: float = 1.0
    norm_s2: float = 0.0

    def initial_field(self) -> SpectralField:
        kind = self.init["kind"]
        if kind == "gaussian":
            return gaussian_field(
                self.grid, self.init.get("amplitude", 0.01), self.init.get("sigma", 1.0)
            )
        if kind == "random":
            return random_field(
                self.grid,
                self.init.get("seed", 0),
                self.init.get("spectrum_slope", -2.0),
                self.init.get("amplitude", 0.01),
            )
        if kind == "single_mode":
            return single_mode_field(
                self.grid, self.init["j"], self.init["k"], self.init.get("amplitude", 1.0)
            )
        if kind == "phiN":
            return phi_n_field(self.grid, self.init["N"], self.init["s"])
        if kind == "file":
            from .grid import forward
            from .io import read_field

            fgrid, samples, _ = read_field(self.init["path"])
            if fgrid.shape != self.grid.shape or (fgrid.lx, fgrid.ly) != (self.grid.lx, self.grid.ly):
                raise ConfigError("snapshot grid does not match the configured grid")
            return forward(self.grid, samples)
        raise ConfigError(f"unknown init kind {kind!r}")


_INIT_KEYS = {
    "gaussian": {"kind", "amplitude", "sigma"},
    "random": {"kind", "seed", "spectrum_slope", "amplitude"},
    "single_mode": {"kind", "j", "k", "amplitude"},
    "phiN": {"kind", "N", "s"},
    "file": {"kind", "path"},
}


def parse_config(data: dict) -> RunConfig:
    _take(data, "config", {"model", "grid", "time", "init", "output", "norms"},
          {"model", "grid", "time", "init"})

    model = _take(dict(data["model"]), "model",
                  {"preset", "alpha", "beta", "epsilon", "dissipation_kind"})
    try:
        if "preset" in model:
            name = model.pop("preset")
            if name not in PRESETS:
                raise ConfigError(f"unknown preset {name!r}; choices: {sorted(PRESETS)}")
            base = PRESETS[name]()
            merged = {
                "alpha": base.alpha, "beta": base.beta,
                "epsilon": base.epsilon, "dissipation_kind": base.dissipation_kind,
            }
            merged.update(model)
            params = ModelParams(**merged)
        else:
            params = ModelParams(**model)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    gsec = _take(dict(data["grid"]), "grid", {"nx", "ny", "lx", "ly"}, {"nx", "ny", "lx", "ly"})
    try:
        grid = build_grid(gsec["nx"], gsec["ny"], gsec["lx"], gsec["ly"])
    except GridError as exc:
        raise ConfigError(str(exc)) from exc

    tsec = _take(dict(data["time"]), "time", {"t_final", "dt", "output_every"}, {"t_final", "dt"})
    t_final, dt = float(tsec["t_final"]), float(tsec["dt"])
    if not (t_final > 0 and dt > 0 and dt <= t_final):
        raise ConfigError("need 0 < dt <= t_final")
    output_every = int(tsec.get("output_every", 1))
    if output_every < 1:
        raise ConfigError("output_every must be >= 1")

    init = dict(data["init"])
    kind = init.get("kind")
    if kind not in _INIT_KEYS:
        raise ConfigError(f"unknown init kind {kind!r}; choices: {sorted(_INIT_KEYS)}")
    _take(init, f"init[{kind}]", _INIT_KEYS[kind])

    out = _take(dict(data.get("output", {})), "output", {"dir"})
    norms = _take(dict(data.get("norms", {})), "norms", {"s1", "s2"})

    return RunConfig(
        params=params,
        grid=grid,
        t_final=t_final,
        dt=dt,
        output_every=output_every,
        init=init,
        output_dir=out.get("dir", "out"),
        norm_s1=float(norms.get("s1", 1.0)),
        norm_s2=float(norms.get("s2", 0.0)),
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return parse_config(data)
