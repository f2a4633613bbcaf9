"""Command-line entry point: one config file in, one artifact set out.

Usage: norm-dynamics <config-path> [--out-dir DIR] [--seed N]

Every run writes a CSV (metadata + rows), a JSON summary, and for models
with a natural picture an SVG plus a matplotlib PNG, all sharing the
config's output stem.  Identical config and seed give byte-identical
delimited outputs.
"""

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .collaboration import (
    failure_report,
    monte_carlo_failure,
    norm_comparison_grid,
    preference_grid,
)
from .credit import BiasParams, GameParams
from .config import RunConfig, load_config
from .dynamics import (
    OUTCOME_CODES,
    basin_fractions,
    basin_sweep,
    find_interior_equilibrium,
    stream_field_grid,
)
from .errors import (
    ConfigParseError,
    ConfigValidationError,
    DegenerateDistributionError,
    DistributionRequiredError,
)
from .priors import BetaPrior, beta_cdf, derive_contribution_stats, stats_from_explicit
from .report import ResultTable, emit_csv, emit_json, emit_svg
from . import figures

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_DEGENERATE = 4
EXIT_IO = 5

# SVG value encoding for basin outcomes: the norm corners sit at the ends of
# the diverging scale, the no-collaboration corner half way up the grey
# side, stalls at the white center.
_BASIN_SVG_VALUES = {0: -1.0, 1: 1.0, 2: 0.5, 3: 0.0}


def _contribution_stats(config: RunConfig):
    if config.uses_explicit_stats:
        return stats_from_explicit(config.w_j, config.b_j, config.b_s)
    return derive_contribution_stats(BetaPrior(config.alpha, config.beta), wj_mode=config.wj_mode)


def _game_params(config: RunConfig) -> GameParams:
    return GameParams(_contribution_stats(config), BiasParams(config.epsilon, config.chi), config.c_hat)


def _metadata(config: RunConfig):
    meta = config.resolved()
    meta["artifact_version"] = __version__
    return meta


# ---------------------------------------------------------------------------
# model runners; each returns the list of files it wrote

def _run_phase(config, out, base, meta):
    params = _game_params(config)
    grid = stream_field_grid(params, config.resolution, config.payoff_mode)
    rows = tuple(
        (grid.p_j[i, j], grid.p_s[i, j], grid.dp_j[i, j], grid.dp_s[i, j])
        for i in range(config.resolution)
        for j in range(config.resolution)
    )
    table = ResultTable(("p_j", "p_s", "dp_j", "dp_s"), rows, meta)
    equilibrium = find_interior_equilibrium(params, config.integrator(), config.payoff_mode)
    summary = {
        "equilibrium": None
        if equilibrium is None
        else {"p_j": equilibrium.p_j, "p_s": equilibrium.p_s}
    }
    paths = [out(base + ".csv"), out(base + ".json"), out(base + ".svg"), out(base + ".png")]
    emit_csv(table, paths[0])
    emit_json(table, paths[1], summary)
    svg_table = ResultTable(("x", "y", "dx", "dy"), rows, meta)
    emit_svg(
        "vector-field", svg_table, paths[2], title="adoption field",
        x_label="junior share p_j", y_label="senior share p_s",
    )
    figures.render_phase(grid, equilibrium, paths[3])
    return paths


def _run_basin(config, out, base, meta):
    params = _game_params(config)
    report = basin_fractions(params, config.integrator(), config.resolution, config.payoff_mode)
    axis = (np.arange(config.resolution) + 0.5) / config.resolution
    rows = tuple(
        (axis[i], axis[j], int(report.labels[i, j]))
        for i in range(config.resolution)
        for j in range(config.resolution)
    )
    meta = dict(meta)
    meta["outcome_codes"] = "; ".join(f"{code}={label}" for label, code in OUTCOME_CODES.items())
    table = ResultTable(("p_j", "p_s", "outcome"), rows, meta)
    summary = {
        "fraction_C": report.fraction_C,
        "fraction_I": report.fraction_I,
        "fraction_other": report.fraction_other,
        "grid_resolution": report.grid_resolution,
    }
    paths = [out(base + ".csv"), out(base + ".json"), out(base + ".svg"), out(base + ".png")]
    emit_csv(table, paths[0])
    emit_json(table, paths[1], summary)
    svg_rows = tuple((pj, ps, _BASIN_SVG_VALUES[code]) for pj, ps, code in rows)
    emit_svg(
        "heatmap", ResultTable(("x", "y", "value"), svg_rows, meta), paths[2],
        title="basins: red contribution-order, grey junior-first",
        x_label="initial junior share", y_label="initial senior share",
    )
    figures.render_basin(axis, report.labels, paths[3])
    return paths


def _run_basin_sweep(config, out, base, meta):
    points = basin_sweep(
        config.a_values,
        BiasParams(config.epsilon, config.chi),
        config.c_hat,
        config.integrator(),
        config.resolution,
        config.wj_mode,
        config.payoff_mode,
    )
    meta = dict(meta)
    gaps = [p for p in points if p.error is not None]
    if gaps:
        meta["sweep_gaps"] = "; ".join(f"a={p.a:g}: {p.error}" for p in gaps)
    rows = tuple((p.a, p.delta, p.fraction_I, p.fraction_C, p.fraction_other) for p in points)
    table = ResultTable(("a", "delta", "fraction_I", "fraction_C", "fraction_other"), rows, meta)
    summary = {"members": len(points), "gaps": len(gaps)}
    paths = [out(base + ".csv"), out(base + ".json"), out(base + ".svg"), out(base + ".png")]
    emit_csv(table, paths[0])
    emit_json(table, paths[1], summary)
    svg_rows = tuple(
        (p.delta, 0.0, p.fraction_I - p.fraction_C) for p in points if p.error is None
    )
    emit_svg(
        "heatmap", ResultTable(("x", "y", "value"), svg_rows, meta), paths[2],
        title="junior-first basin minus contribution basin",
        x_label="credit asymmetry delta", y_label="",
    )
    figures.render_sweep(points, paths[3])
    return paths


def _run_m2_failure(config, out, base, meta):
    prior = BetaPrior(config.alpha, config.beta)
    stats = derive_contribution_stats(prior, wj_mode=config.wj_mode)
    report = failure_report(config.norm, stats, config.c_hat)
    interval_rows = []
    for code, interval_set in (
        (0, report.success),
        (1, report.junior_refuses),
        (2, report.senior_refuses),
    ):
        for lo, hi in interval_set.intervals:
            mass = float(np.clip(beta_cdf(prior, hi) - beta_cdf(prior, lo), 0.0, 1.0))
            interval_rows.append((code, lo, hi, mass))
    interval_rows.sort(key=lambda r: (r[1], r[0]))
    table = ResultTable(("set", "lo", "hi", "mass"), tuple(interval_rows), meta)
    summary = {
        "norm": config.norm,
        "failure_probability": report.failure_probability,
        "public_good_loss": report.public_good_loss,
    }
    if config.mc_samples > 0:
        estimate, stderr = monte_carlo_failure(
            config.norm, stats, config.c_hat, config.mc_samples, config.seed
        )
        summary["monte_carlo"] = {
            "estimate": estimate,
            "standard_error": stderr,
            "samples": config.mc_samples,
        }
    paths = [out(base + ".csv"), out(base + ".json"), out(base + ".svg"), out(base + ".png")]
    emit_csv(table, paths[0])
    emit_json(table, paths[1], summary)
    svg_rows = tuple((float(code), lo, hi) for code, lo, hi, _ in interval_rows)
    emit_svg(
        "interval-diagram", ResultTable(("set", "lo", "hi"), svg_rows, meta), paths[2],
        title=f"{config.norm} refusal bands, c_hat = {config.c_hat:g}",
    )
    figures.render_failure(prior, report, paths[3])
    return paths


def _grid_axes(config):
    mu_values = np.linspace(config.mu_min, config.mu_max, config.mu_steps)
    c_hat_values = np.linspace(config.c_hat_min, config.c_hat_max, config.c_hat_steps)
    return mu_values, c_hat_values


def _run_m2_compare(config, out, base, meta):
    mu_values, c_hat_values = _grid_axes(config)
    cells = norm_comparison_grid(mu_values, c_hat_values, config.family_sum, config.wj_mode)
    rows = tuple(tuple(cell) for cell in cells)
    table = ResultTable(("mu_j", "c_hat", "fail_I", "fail_C", "fail_diff", "loss_diff"), rows, meta)
    finite = [c for c in cells if np.isfinite(c.loss_diff)]
    summary = {
        "cells": len(cells),
        "missing_cells": len(cells) - len(finite),
        "share_C_weakly_better_loss": (
            sum(1 for c in finite if c.loss_diff <= 0) / len(finite) if finite else None
        ),
    }
    paths = [
        out(base + ".csv"),
        out(base + ".json"),
        out(base + "_fail_diff.svg"),
        out(base + "_loss_diff.svg"),
        out(base + ".png"),
    ]
    emit_csv(table, paths[0])
    emit_json(table, paths[1], summary)
    for path, column, title in (
        (paths[2], "fail_diff", "failure difference, C minus I (red: C fails less)"),
        (paths[3], "loss_diff", "surplus loss difference, C minus I (red: C loses less)"),
    ):
        idx = table.columns.index(column)
        svg_rows = tuple((c.mu_j, c.c_hat, row[idx]) for c, row in zip(cells, rows))
        emit_svg(
            "heatmap", ResultTable(("x", "y", "value"), svg_rows, meta), path,
            title=title, x_label="mu_j", y_label="c_hat",
        )
    fail = np.array([c.fail_diff for c in cells]).reshape(len(mu_values), len(c_hat_values))
    loss = np.array([c.loss_diff for c in cells]).reshape(len(mu_values), len(c_hat_values))
    figures.render_compare(mu_values, c_hat_values, fail, loss, paths[4])
    return paths


def _run_m2_preference(config, out, base, meta):
    mu_values, c_hat_values = _grid_axes(config)
    cells = preference_grid(mu_values, c_hat_values, config.family_sum, config.wj_mode)
    rows = tuple(tuple(cell) for cell in cells)
    table = ResultTable(("mu_j", "c_hat", "junior_pref", "senior_pref"), rows, meta)
    finite = [c for c in cells if np.isfinite(c.junior_pref)]
    summary = {
        "cells": len(cells),
        "missing_cells": len(cells) - len(finite),
        "share_players_disagree": (
            sum(1 for c in finite if np.sign(c.junior_pref) * np.sign(c.senior_pref) < 0)
            / len(finite)
            if finite
            else None
        ),
    }
    paths = [
        out(base + ".csv"),
        out(base + ".json"),
        out(base + "_junior.svg"),
        out(base + "_senior.svg"),
        out(base + ".png"),
    ]
    emit_csv(table, paths[0])
    emit_json(table, paths[1], summary)
    for path, column, title in (
        (paths[2], "junior_pref", "junior: C-norm value minus I-norm value"),
        (paths[3], "senior_pref", "senior: C-norm value minus I-norm value"),
    ):
        idx = table.columns.index(column)
        svg_rows = tuple((c.mu_j, c.c_hat, row[idx]) for c, row in zip(cells, rows))
        emit_svg(
            "heatmap", ResultTable(("x", "y", "value"), svg_rows, meta), path,
            title=title, x_label="mu_j", y_label="c_hat",
        )
    junior = np.array([c.junior_pref for c in cells]).reshape(len(mu_values), len(c_hat_values))
    senior = np.array([c.senior_pref for c in cells]).reshape(len(mu_values), len(c_hat_values))
    figures.render_preference(mu_values, c_hat_values, junior, senior, paths[4])
    return paths


def _run_derive_prior(config, out, base, meta):
    stats = derive_contribution_stats(BetaPrior(config.alpha, config.beta), wj_mode=config.wj_mode)
    delta = 1.0 - 2.0 * stats.mu_j
    rows = ((config.alpha, config.beta, stats.w_j, stats.b_j, stats.b_s, stats.mu_j, delta),)
    table = ResultTable(("alpha", "beta", "w_j", "b_j", "b_s", "mu_j", "delta"), rows, meta)
    summary = {
        "w_j": stats.w_j,
        "b_j": stats.b_j,
        "b_s": stats.b_s,
        "mu_j": stats.mu_j,
        "delta": delta,
    }
    paths = [out(base + ".csv"), out(base + ".json")]
    emit_csv(table, paths[0])
    emit_json(table, paths[1], summary)
    return paths


_RUNNERS = {
    "phase": _run_phase,
    "basin": _run_basin,
    "basin-sweep": _run_basin_sweep,
    "m2-failure": _run_m2_failure,
    "m2-compare": _run_m2_compare,
    "m2-preference": _run_m2_preference,
    "derive-prior": _run_derive_prior,
}


def run_command(config: RunConfig, out_dir: str = "."):
    """Execute one validated config and return the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    base = config.output_base
    meta = _metadata(config)
    out = lambda name: os.path.join(out_dir, name)
    return _RUNNERS[config.model](config, out, base, meta)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="norm-dynamics",
        description="Authorship-norm evolution and collaboration models: "
        "run one configured model and write CSV/JSON/SVG/PNG artifacts.",
    )
    parser.add_argument("config", help="path to a key = value config file")
    parser.add_argument("--out-dir", default=".", help="directory for outputs (default: current)")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigValidationError(f"seed: must be nonnegative, got {args.seed}")
            config = replace(config, seed=args.seed)
        paths = run_command(config, args.out_dir)
    except ConfigParseError as exc:
        print(f"config parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigValidationError as exc:
        print(f"config validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DegenerateDistributionError, DistributionRequiredError) as exc:
        print(f"numeric degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # pragma: no cover - last-resort diagnostics
        print(f"unexpected error: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED

    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
