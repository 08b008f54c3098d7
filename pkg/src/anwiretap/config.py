"""Experiment configuration: TOML schema, validation, canonical dump.

Power ratios may be given linearly (``alpha``) or in decibels
(``alpha_db``); decibel values are converted with 10**(db/10) at parse
time and never appear downstream.  Every validation error names the
offending key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from .closed_form import QuadratureSpec
from .montecarlo import SWEEPABLE_FIELDS, SimulationMode
from .wiretap_core import SystemConfig

__all__ = [
    "ConfigError",
    "OutputSpec",
    "SweepSpec",
    "ExperimentConfig",
    "load_config",
    "parse_config",
    "dumps_config",
]


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending key."""


@dataclass(frozen=True)
class OutputSpec:
    csv_path: str
    include_analytic: bool = True
    include_approx: bool = False
    include_asymptotic: bool = False


@dataclass(frozen=True)
class SweepSpec:
    vary: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class ExperimentConfig:
    system: SystemConfig
    mode: SimulationMode
    trials: int
    seed: int
    quadrature: QuadratureSpec
    output: OutputSpec
    sweep: SweepSpec | None = None


def _section(data: dict, name: str, required: bool = True) -> dict:
    if name not in data:
        if required:
            raise ConfigError(f"missing section [{name}]")
        return {}
    sec = data[name]
    if not isinstance(sec, dict):
        raise ConfigError(f"[{name}] must be a table")
    return dict(sec)


def _take(sec: dict, section: str, key: str, kind, required: bool = True,
          default=None):
    if key not in sec:
        if required:
            raise ConfigError(f"missing key '{key}' in [{section}]")
        return default
    value = sec.pop(key)
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(
                f"key '{key}' in [{section}] must be a number, "
                f"got {value!r}")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(
                f"key '{key}' in [{section}] must be an integer, "
                f"got {value!r}")
        return value
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigError(
                f"key '{key}' in [{section}] must be a boolean, "
                f"got {value!r}")
        return value
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(
                f"key '{key}' in [{section}] must be a string, "
                f"got {value!r}")
        return value
    raise AssertionError(kind)


def _reject_unknown(sec: dict, section: str) -> None:
    if sec:
        key = sorted(sec)[0]
        raise ConfigError(f"unknown key '{key}' in [{section}]")


def _ratio(sec: dict, section: str, name: str) -> float:
    linear = name in sec
    db = f"{name}_db" in sec
    if linear and db:
        raise ConfigError(
            f"keys '{name}' and '{name}_db' in [{section}] are mutually "
            f"exclusive")
    if not linear and not db:
        raise ConfigError(
            f"missing key '{name}' (or '{name}_db') in [{section}]")
    if linear:
        return _take(sec, section, name, float)
    return 10.0 ** (_take(sec, section, f"{name}_db", float) / 10.0)


def parse_config(data: dict) -> ExperimentConfig:
    """Build a validated ExperimentConfig from parsed TOML data."""
    data = dict(data)
    for name in list(data):
        if name not in ("system", "run", "sweep", "quadrature", "output"):
            raise ConfigError(f"unknown section [{name}]")

    sec = _section(data, "system")
    try:
        system = SystemConfig(
            n_a=_take(sec, "system", "n_a", int),
            n_b=_take(sec, "system", "n_b", int),
            n_e=_take(sec, "system", "n_e", int),
            alpha=_ratio(sec, "system", "alpha"),
            beta=_ratio(sec, "system", "beta"),
            gamma=_ratio(sec, "system", "gamma"),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid [system] values: {exc}") from exc
    _reject_unknown(sec, "system")

    sec = _section(data, "run")
    mode_name = _take(sec, "run", "mode", str)
    try:
        mode = SimulationMode(mode_name)
    except ValueError:
        valid = ", ".join(m.value for m in SimulationMode)
        raise ConfigError(
            f"key 'mode' in [run] must be one of {valid}, "
            f"got {mode_name!r}") from None
    trials = _take(sec, "run", "trials", int)
    if trials < 2:
        raise ConfigError(f"key 'trials' in [run] must be >= 2, got {trials}")
    seed = _take(sec, "run", "seed", int)
    if not 0 <= seed < 2 ** 64:
        raise ConfigError(f"key 'seed' in [run] must fit in 64 bits")
    _reject_unknown(sec, "run")

    sweep = None
    if "sweep" in data:
        sec = _section(data, "sweep")
        vary = _take(sec, "sweep", "vary", str)
        if vary not in SWEEPABLE_FIELDS:
            raise ConfigError(
                f"key 'vary' in [sweep] must be one of "
                f"{', '.join(SWEEPABLE_FIELDS)}, got {vary!r}")
        raw = sec.pop("values", None)
        if not isinstance(raw, list) or not raw:
            raise ConfigError("key 'values' in [sweep] must be a "
                              "non-empty array of numbers")
        values = []
        for v in raw:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(
                    f"key 'values' in [sweep] must contain only numbers, "
                    f"got {v!r}")
            values.append(float(v))
        _reject_unknown(sec, "sweep")
        sweep = SweepSpec(vary=vary, values=tuple(values))

    sec = _section(data, "quadrature", required=False)
    try:
        quadrature = QuadratureSpec(
            nodes_per_dim=_take(sec, "quadrature", "nodes_per_dim", int,
                                required=False, default=64),
            refinement_tolerance=_take(sec, "quadrature",
                                       "refinement_tolerance", float,
                                       required=False, default=1e-6),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid [quadrature] values: {exc}") from exc
    _reject_unknown(sec, "quadrature")

    sec = _section(data, "output")
    output = OutputSpec(
        csv_path=_take(sec, "output", "csv_path", str),
        include_analytic=_take(sec, "output", "include_analytic", bool,
                               required=False, default=True),
        include_approx=_take(sec, "output", "include_approx", bool,
                             required=False, default=False),
        include_asymptotic=_take(sec, "output", "include_asymptotic", bool,
                                 required=False, default=False),
    )
    _reject_unknown(sec, "output")

    return ExperimentConfig(system=system, mode=mode, trials=trials,
                            seed=seed, quadrature=quadrature, output=output,
                            sweep=sweep)


def load_config(path) -> ExperimentConfig:
    """Parse and validate a TOML experiment file."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML in {path}: {exc}") from exc
    return parse_config(data)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value) or math.isnan(value):
            raise ConfigError(f"cannot serialize non-finite value {value}")
        if value.is_integer() and abs(value) < 1e15:
            return f"{value:.1f}"
        return repr(value)
    if isinstance(value, int):
        return str(value)
    return '"' + str(value).replace("\\", "\\\\").replace('"', '\\"') + '"'


def dumps_config(cfg: ExperimentConfig) -> str:
    """Canonical TOML for a configuration, ratios in linear units."""
    lines = ["[system]"]
    for k in ("n_a", "n_b", "n_e"):
        lines.append(f"{k} = {_fmt(getattr(cfg.system, k))}")
    for k in ("alpha", "beta", "gamma"):
        lines.append(f"{k} = {_fmt(getattr(cfg.system, k))}")
    lines += ["", "[run]",
              f"mode = {_fmt(cfg.mode.value)}",
              f"trials = {_fmt(cfg.trials)}",
              f"seed = {_fmt(cfg.seed)}"]
    if cfg.sweep is not None:
        vals = ", ".join(_fmt(v) for v in cfg.sweep.values)
        lines += ["", "[sweep]",
                  f"vary = {_fmt(cfg.sweep.vary)}",
                  f"values = [{vals}]"]
    lines += ["", "[quadrature]",
              f"nodes_per_dim = {_fmt(cfg.quadrature.nodes_per_dim)}",
              f"refinement_tolerance = {_fmt(cfg.quadrature.refinement_tolerance)}"]
    lines += ["", "[output]",
              f"csv_path = {_fmt(cfg.output.csv_path)}",
              f"include_analytic = {_fmt(cfg.output.include_analytic)}",
              f"include_approx = {_fmt(cfg.output.include_approx)}",
              f"include_asymptotic = {_fmt(cfg.output.include_asymptotic)}"]
    return "\n".join(lines) + "\n"
