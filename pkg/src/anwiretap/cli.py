"""Command line entry points.

Two subcommands:

``run <config.toml>``
    Execute the experiment described by a TOML config and write one
    CSV row per sweep point (or a single row when no sweep is given).
    ``--dump-config`` prints the parsed config back as canonical TOML
    and exits without running anything.

``figure <id>``
    Rebuild one of the packaged figure datasets (``fig2`` .. ``fig17``)
    at ``desk`` or ``full`` scale.

Exit codes: 0 on success, 1 for config problems (the message names the
offending key or figure id), 2 when any row failed; all rows are still
written and the first failure is reported with its stage.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace

from . import asymptotics, closed_form, figures, montecarlo
from .asymptotics import AsymptoticRatios
from .config import ConfigError, ExperimentConfig, dumps_config, load_config
from .montecarlo import SimulationMode
from .wiretap_core import SystemConfig

__all__ = ["main", "run_experiment", "reproduce_figure"]

DEFAULT_FIGURE_SEED = 20127

_RUN_FIELDS = ("sweep_value", "mc_mean", "mc_stderr", "mc_rb", "mc_re",
               "analytic", "approx", "asymptotic", "error")


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"refusing to write non-finite cell {value!r}")
        return repr(value)
    return str(value)


def _write_csv(path: str, fieldnames, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_format_cell(row.get(name)) for name in fieldnames])


def _first_error(rows) -> str | None:
    for row in rows:
        if row.get("error"):
            return str(row["error"])
    return None


def _sweep_cfg(template: SystemConfig, vary: str, value) -> SystemConfig:
    if vary in ("n_e", "n_b"):
        if float(value) != int(value):
            raise ValueError(f"{vary} must be an integer, got {value!r}")
        return replace(template, **{vary: int(value)})
    return replace(template, **{vary: float(value)})


def _total_asymptotic(cfg: SystemConfig, mode: SimulationMode) -> float:
    ratios = AsymptoticRatios.from_config(cfg)
    if mode is SimulationMode.AN_WITH_ANE:
        per_antenna = asymptotics.normalized_secrecy_rate_an(
            ratios, cfg.n_b, cfg.alpha, cfg.gamma)
    else:
        per_antenna = asymptotics.normalized_secrecy_rate_no_an(
            ratios, cfg.n_b, cfg.alpha, cfg.beta, cfg.gamma)
    return cfg.n_b * per_antenna


def _experiment_row(exp: ExperimentConfig, value) -> dict:
    row: dict = {"sweep_value": value}
    errors: list[str] = []
    try:
        if value is None:
            cfg = exp.system
        else:
            cfg = _sweep_cfg(exp.system, exp.sweep.vary, value)
    except Exception as exc:
        row["error"] = f"config: {exc}"
        return row
    try:
        est = montecarlo.estimate(cfg, exp.mode, exp.trials, exp.seed)
        row["mc_mean"] = est.mean
        row["mc_stderr"] = est.std_error
        row["mc_rb"] = est.per_term_means["bob"]
        row["mc_re"] = est.per_term_means["eve"]
    except Exception as exc:
        errors.append(f"trial stage: {exc}")
    out = exp.output
    analytic_columns = (
        (out.include_analytic, "analytic",
         lambda: closed_form.avg_secrecy_rate_an(cfg, exp.quadrature)
         if exp.mode is SimulationMode.AN_WITH_ANE
         else closed_form.avg_secrecy_rate_no_an(cfg)),
        (out.include_approx, "approx",
         lambda: closed_form.approx_secrecy_rate_an(cfg)
         if exp.mode is SimulationMode.AN_WITH_ANE
         else closed_form.approx_secrecy_rate_no_an(cfg)),
        (out.include_asymptotic, "asymptotic",
         lambda: _total_asymptotic(cfg, exp.mode)),
    )
    for wanted, field, compute in analytic_columns:
        if not wanted:
            continue
        try:
            row[field] = compute()
        except Exception as exc:
            errors.append(f"quadrature stage: {exc}")
    if errors:
        row["error"] = "; ".join(errors)
    return row


def run_experiment(exp: ExperimentConfig) -> list[dict]:
    values = exp.sweep.values if exp.sweep is not None else (None,)
    return [_experiment_row(exp, value) for value in values]


def _run_fieldnames(exp: ExperimentConfig) -> list[str]:
    skipped = {
        "analytic": not exp.output.include_analytic,
        "approx": not exp.output.include_approx,
        "asymptotic": not exp.output.include_asymptotic,
    }
    return [name for name in _RUN_FIELDS if not skipped.get(name, False)]


def _cmd_run(args) -> int:
    try:
        exp = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    if args.dump_config:
        sys.stdout.write(dumps_config(exp))
        return 0
    rows = run_experiment(exp)
    _write_csv(exp.output.csv_path, _run_fieldnames(exp), rows)
    print(f"wrote {len(rows)} rows to {exp.output.csv_path}")
    failure = _first_error(rows)
    if failure is not None:
        print(f"run failed: {failure}", file=sys.stderr)
        return 2
    return 0


def reproduce_figure(fig_id: str, scale: str = "desk",
                     seed: int = DEFAULT_FIGURE_SEED) -> tuple[list[str], list[dict]]:
    """Rebuild one figure dataset; returns (fieldnames, rows)."""
    try:
        spec = figures.FIGURES[fig_id]
    except KeyError:
        known = ", ".join(sorted(figures.FIGURES, key=lambda s: int(s[3:])))
        raise ConfigError(f"unknown figure id {fig_id!r}; expected one of {known}")
    if scale not in ("desk", "full"):
        raise ConfigError(f"scale must be 'desk' or 'full', got {scale!r}")
    if not 0 <= int(seed) < 2 ** 64:
        raise ConfigError(f"seed must fit in 64 bits, got {seed}")
    rows = spec.build(scale, seed)
    present = {name for row in rows for name in row}
    fieldnames = [name for name in figures.FIELD_ORDER if name in present]
    return fieldnames, rows


def _cmd_figure(args) -> int:
    try:
        fieldnames, rows = reproduce_figure(args.fig_id, args.scale, args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    out_path = args.out or f"{args.fig_id}_{args.scale}.csv"
    _write_csv(out_path, fieldnames, rows)
    print(f"wrote {len(rows)} rows to {out_path}")
    failure = _first_error(rows)
    if failure is not None:
        print(f"figure {args.fig_id} failed: {failure}", file=sys.stderr)
        return 2
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anwiretap",
        description="Secrecy-rate experiments for artificial-noise "
                    "wiretap channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a TOML-described experiment")
    run_p.add_argument("config", help="path to the experiment TOML file")
    run_p.add_argument("--dump-config", action="store_true",
                       help="print the parsed config as canonical TOML "
                            "and exit")
    run_p.set_defaults(func=_cmd_run)

    fig_p = sub.add_parser("figure", help="rebuild a packaged figure dataset")
    fig_p.add_argument("fig_id", help="figure id, fig2 through fig17")
    fig_p.add_argument("--scale", choices=("desk", "full"), default="desk",
                       help="desk keeps runtimes short; full runs the "
                            "complete grids")
    fig_p.add_argument("--out", default=None,
                       help="output CSV path (default <id>_<scale>.csv)")
    fig_p.add_argument("--seed", type=int, default=DEFAULT_FIGURE_SEED,
                       help="base seed for the channel draws")
    fig_p.set_defaults(func=_cmd_figure)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
