"""
Experiment runners: one function per figure experiment, each returning a long-format DataFrame

Columns: the sweep axes, gamma_db where the metric is a coverage curve, metric, analytic,
simulated, stderr and gap (simulated - analytic). Disabled engines leave their columns NaN.
"""
import itertools

import numpy as np
import pandas as pd

from src.analytic_coverage.association import mmwave_selection_probability, tier_probabilities
from src.analytic_coverage.overall import overall_coverage
from src.analytic_coverage.sinr_coverage import sinr_coverage_mm
from src.core.logger_manager import get_logger
from src.model.link_class import ALL_CLASSES, SL_MM, TIER_VISIBILITY_KEYS
from src.model.units import db_to_linear
from src.simulator.estimator import AssociationFreqs, RatSelectionFreq, estimate, estimate_coverage
from src.simulator.rng import RngSpec
from src.simulator.sinr import InterferenceModel

log = get_logger("EXPERIMENTS")

RESULT_COLUMNS = ("metric", "analytic", "simulated", "stderr", "gap")


def sweep_points(config):
    """Cartesian product of the sweep grids as a list of {parameter: value}; [{}] without a sweep"""
    names = [axis.parameter for axis in config.sweep]
    grids = [axis.grid for axis in config.sweep]
    return [dict(zip(names, values)) for values in itertools.product(*grids)]


def _row(point, metric, analytic=np.nan, simulated=np.nan, stderr=np.nan, gamma_db=None):
    row = dict(point)
    if gamma_db is not None:
        row["gamma_db"] = float(gamma_db)
    row.update(
        metric=metric,
        analytic=float(analytic),
        simulated=float(simulated),
        stderr=float(stderr),
        gap=float(simulated) - float(analytic),
    )
    return row


def _curve_rows(point, metric, gamma_db, analytic, sim_estimate):
    analytic = np.full(len(gamma_db), np.nan) if analytic is None else np.asarray(analytic, dtype=float)
    if sim_estimate is None:
        simulated = stderr = np.full(len(gamma_db), np.nan)
    else:
        simulated = np.broadcast_to(np.asarray(sim_estimate.value, dtype=float), (len(gamma_db),))
        stderr = np.broadcast_to(np.asarray(sim_estimate.stderr, dtype=float), (len(gamma_db),))
    return [
        _row(point, metric, analytic[i], simulated[i], stderr[i], gamma_db=g)
        for i, g in enumerate(gamma_db)
    ]


def _frame(rows, config, with_gamma):
    columns = [axis.parameter for axis in config.sweep] + (["gamma_db"] if with_gamma else []) + list(RESULT_COLUMNS)
    return pd.DataFrame(rows, columns=columns)


def _rng(config):
    return RngSpec(config.seed)


def _log_point(config, point):
    where = ", ".join(f"{k}={v:g}" for k, v in point.items()) or "base parameters"
    log.info(f"{config.experiment}: evaluating {where}")


# ============================================================================
# COVERAGE EXPERIMENTS
# ============================================================================

def _coverage_experiment(config, analytic, simulate, per_class):
    rows = []
    gamma = list(config.gamma_db)
    for point in sweep_points(config):
        _log_point(config, point)
        params = config.system_params(point)
        curve = overall_coverage(gamma, params, method=config.association_method) if analytic else None
        sims = None
        if simulate:
            sims = estimate_coverage(params, gamma, config.trials, _rng(config), window_radius=config.window_radius_m)
        full = InterferenceModel.FULL
        rows += _curve_rows(
            point, "coverage_overall", gamma,
            curve.overall if curve else None, sims[(full, None)] if sims else None,
        )
        if per_class:
            for cls in ALL_CLASSES:
                rows += _curve_rows(
                    point, f"coverage_{cls.key}", gamma,
                    curve.per_class[cls] if curve else None, sims[(full, cls)] if sims else None,
                )
    return _frame(rows, config, with_gamma=True)


def run_fig2_validation(config, analytic=True, simulate=True):
    """Overall and per-class coverage, analytic against full Monte Carlo"""
    return _coverage_experiment(config, analytic, simulate, per_class=True)


def run_fig6_coverage_sweep(config, analytic=True, simulate=True):
    """Overall coverage across road and SBS densities"""
    return _coverage_experiment(config, analytic, simulate, per_class=False)


def run_fig7_mm_gain(config, analytic=True, simulate=True):
    """Overall coverage across SBS density and mm-wave antenna gain"""
    return _coverage_experiment(config, analytic, simulate, per_class=False)


def run_fig3_interference_models(config, analytic=True, simulate=True):
    """mm-wave coverage: the analytic curve against the full, dominant and noise-limited simulators"""
    rows = []
    gamma = list(config.gamma_db)
    for point in sweep_points(config):
        _log_point(config, point)
        params = config.system_params(point)
        curve = sinr_coverage_mm(db_to_linear(np.asarray(gamma)), params) if analytic else None
        sims = None
        if simulate:
            sims = estimate_coverage(
                params, gamma, config.trials, _rng(config),
                models=config.interference_models, window_radius=config.window_radius_m,
            )
        for model in config.interference_models:
            model = InterferenceModel(model)
            rows += _curve_rows(
                point, f"coverage_SL_MM_{model.value}", gamma,
                curve, sims[(model, SL_MM)] if sims else None,
            )
    return _frame(rows, config, with_gamma=True)


# ============================================================================
# ASSOCIATION EXPERIMENTS
# ============================================================================

def run_fig4_association_sweep(config, analytic=True, simulate=True):
    """Tier association probabilities across the sweep"""
    rows = []
    for point in sweep_points(config):
        _log_point(config, point)
        params = config.system_params(point)
        tiers = tier_probabilities(params, config.association_method).as_dict() if analytic else {}
        sim = None
        if simulate:
            sim = estimate(AssociationFreqs(), params, config.trials, _rng(config), config.window_radius_m)
        offset = len(ALL_CLASSES)
        for i, key in enumerate(TIER_VISIBILITY_KEYS):
            rows.append(_row(
                point, f"p_{key}",
                tiers.get(key, np.nan),
                sim.value[offset + i] if sim else np.nan,
                sim.stderr[offset + i] if sim else np.nan,
            ))
    return _frame(rows, config, with_gamma=False)


def run_fig5_rat_selection(config, analytic=True, simulate=True):
    """Conditional mm-wave selection probability across SBS density and antenna gain"""
    rows = []
    for point in sweep_points(config):
        _log_point(config, point)
        params = config.system_params(point)
        p_m = mmwave_selection_probability(params) if analytic else np.nan
        sim = None
        if simulate:
            sim = estimate(RatSelectionFreq(), params, config.trials, _rng(config), config.window_radius_m)
        rows.append(_row(point, "p_m", p_m, sim.value if sim else np.nan, sim.stderr if sim else np.nan))
    return _frame(rows, config, with_gamma=False)


def run_custom(config, analytic=True, simulate=True):
    """Association probabilities and overall coverage for arbitrary sweeps"""
    association = run_fig4_association_sweep(config, analytic, simulate)
    coverage = _coverage_experiment(config, analytic, simulate, per_class=False)
    return pd.concat([association, coverage], ignore_index=True)


RUNNERS = {
    "fig2_validation": run_fig2_validation,
    "fig3_interference_models": run_fig3_interference_models,
    "fig4_association_sweep": run_fig4_association_sweep,
    "fig5_rat_selection": run_fig5_rat_selection,
    "fig6_coverage_sweep": run_fig6_coverage_sweep,
    "fig7_mm_gain": run_fig7_mm_gain,
    "custom": run_custom,
}


def run_experiment(config, analytic=True, simulate=True):
    return RUNNERS[config.experiment](config, analytic=analytic, simulate=simulate)
