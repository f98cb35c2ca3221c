"""
Overall coverage: association-weighted mixture of the conditional coverages over a threshold grid
"""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from src.analytic_coverage.association import association_report
from src.analytic_coverage.sinr_coverage import sinr_coverage
from src.analytic_coverage.spillover import spillover_probability
from src.core.errors import UndefinedConditionalError, ValidationError
from src.core.logger_manager import get_logger
from src.model.link_class import ALL_CLASSES, SL_MM
from src.model.units import db_to_linear

log = get_logger("COVERAGE")

# below this weight a class is left out of the mixture
NEGLIGIBLE_WEIGHT = 1e-12


@dataclass(frozen=True)
class CoverageCurve:
    gamma_grid: np.ndarray          # dB, ascending
    per_class: dict = field(default_factory=dict)
    overall: np.ndarray = None
    report: object = None

    def to_frame(self):
        data = {"gamma_db": self.gamma_grid}
        for cls, values in self.per_class.items():
            data[f"coverage_{cls.key}"] = values
        if self.overall is not None:
            data["coverage_overall"] = self.overall
        return pd.DataFrame(data)


def threshold_grid(gamma_db):
    """Validated ascending grid of thresholds in dB"""
    grid = np.atleast_1d(np.asarray(gamma_db, dtype=float))
    if grid.size == 0 or grid.ndim != 1 or not np.all(np.isfinite(grid)):
        raise ValidationError("gamma grid must be a non-empty 1-D sequence of finite dB values")
    if np.any(np.diff(grid) <= 0):
        raise ValidationError("gamma grid must be strictly increasing")
    return grid


def enforce_nonincreasing(values):
    """Clamp quadrature noise so that coverage never rises with the threshold"""
    values = np.clip(np.asarray(values, dtype=float), 0.0, 1.0)
    return np.minimum.accumulate(values, axis=-1)


def coverage_curve_for_class(cls, gamma_db, params, p_g=None):
    grid = threshold_grid(gamma_db)
    return enforce_nonincreasing(sinr_coverage(cls, db_to_linear(grid), params, p_g))


def mix_coverage(report, per_class):
    """Sum over classes of P_tvr times the conditional coverage; classes without weight drop out"""
    total = None
    for cls, weight in report.p_tvr.items():
        if weight <= NEGLIGIBLE_WEIGHT:
            continue
        values = np.asarray(per_class[cls], dtype=float)
        term = weight * values
        total = term if total is None else total + term
    if total is None:
        raise UndefinedConditionalError("association report carries no weight")
    return np.clip(total, 0.0, 1.0)


def overall_coverage(gamma_db, params, report=None, method="joint"):
    """CoverageCurve with the conditional curve of every realizable class and their mixture"""
    grid = threshold_grid(gamma_db)
    report = report or association_report(params, method)
    p_g = spillover_probability(params) if report.p_tvr.get(SL_MM, 0.0) > NEGLIGIBLE_WEIGHT else 0.0

    per_class = {}
    for cls in ALL_CLASSES:
        if report.p_tvr.get(cls, 0.0) <= NEGLIGIBLE_WEIGHT:
            per_class[cls] = np.full(grid.shape, np.nan)
            continue
        try:
            per_class[cls] = coverage_curve_for_class(cls, grid, params, p_g)
        except UndefinedConditionalError:
            log.warning(f"{cls.key} carries weight {report.p_tvr[cls]:.3g} but no serving-distance mass; skipped")
            per_class[cls] = np.full(grid.shape, np.nan)
        log.info(f"{cls.key}: P_tvr={report.p_tvr[cls]:.4f}, coverage at {grid[0]:g} dB = {per_class[cls][0]:.4f}")

    usable = {cls: v for cls, v in per_class.items() if not np.all(np.isnan(v))}
    weights = {cls: w for cls, w in report.p_tvr.items() if cls in usable}
    norm = sum(weights.values())
    mixed = mix_coverage(_ReweightedReport(weights, norm), usable)
    return CoverageCurve(grid, per_class, enforce_nonincreasing(mixed), report)


class _ReweightedReport:
    """p_tvr renormalised over the classes whose conditional coverage could be evaluated"""

    def __init__(self, weights, norm):
        if not norm > 0:
            raise UndefinedConditionalError("no class with a defined conditional coverage")
        self.p_tvr = {cls: w / norm for cls, w in weights.items()}
