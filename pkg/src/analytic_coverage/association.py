"""
Tier association and RAT selection.

Association compares mean u-wave powers of the strongest ML (or MN when no LOS MBS exists),
SL and SN base stations. The four processes are independent, so the density of serving class
tv at distance x is its nearest-distance density times the void probabilities of every other
class inside its power-equivalent radius.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from src.analytic_geometry.nearest_distance import (
    los_sbs_nearest_pdf,
    macro_void_probability,
    nlos_nearest_pdf,
    nlos_void_probability,
)
from src.core.errors import DegenerateParameterError, ValidationError
from src.core.logger_manager import get_logger
from src.model.channel import mean_rx_power, power_equivalent_radius
from src.model.link_class import ML, MN, SL_MM, SL_MU, SN
from src.numerics.quadrature import QuadratureSpec, integrate, integrate_improper

log = get_logger("ASSOCIATION")

ASSOCIATION_SPEC = QuadratureSpec(order=2, panels=32, tail_tol=1e-8, abs_tol=1e-15, max_panels=4096)

# serving distances are clipped here before powers are formed
DISTANCE_FLOOR = 1e-9

# association uses u-wave powers; SL is compared through its u-wave constants
SERVING_CLASS = {"ML": ML, "MN": MN, "SL": SL_MU, "SN": SN}


@dataclass(frozen=True)
class TierProbabilities:
    p_ml: float
    p_mn: float
    p_sl: float
    p_sn: float
    method: str = "joint"

    def as_dict(self):
        return {"ML": self.p_ml, "MN": self.p_mn, "SL": self.p_sl, "SN": self.p_sn}


@dataclass(frozen=True)
class AssociationReport:
    p_ml: float
    p_mn: float
    p_sl: float
    p_sn: float
    p_m_given_sl: float
    p_tvr: dict = field(default_factory=dict)
    method: str = "joint"

    @classmethod
    def from_tiers(cls, tiers, p_m_given_sl):
        p_tvr = {
            ML: tiers.p_ml,
            MN: tiers.p_mn,
            SL_MU: tiers.p_sl * (1.0 - p_m_given_sl),
            SL_MM: tiers.p_sl * p_m_given_sl,
            SN: tiers.p_sn,
        }
        return cls(tiers.p_ml, tiers.p_mn, tiers.p_sl, tiers.p_sn, p_m_given_sl, p_tvr, tiers.method)

    @property
    def total(self):
        return self.p_ml + self.p_mn + self.p_sl + self.p_sn


# ----------------------------------------------------------------------------
# power-equivalent exclusion radii
# ----------------------------------------------------------------------------

def serving_power(tv, x, params):
    return mean_rx_power(SERVING_CLASS[tv], x, params)


def macro_exclusion_bounds(power, params):
    """
    Inner radii of the ML and MN interferer annuli when every MBS delivers less than `power`:
    ML points live in (min(e_ML, D_M), D_M) and MN points in (max(e_MN, D_M), inf).
    """
    e_ml = power_equivalent_radius(ML, power, params)
    e_mn = power_equivalent_radius(MN, power, params)
    return np.minimum(e_ml, params.d_m)[()], np.maximum(e_mn, params.d_m)[()]


def macro_exclusion_radius(power, params):
    """Radius of the disc with the same area as the MBS-free region implied by `power`"""
    ml_bound, mn_bound = macro_exclusion_bounds(power, params)
    return np.sqrt(ml_bound ** 2 + mn_bound ** 2 - params.d_m ** 2)[()]


def exclusion_radii(tv, x, params):
    """Per competing class, the radius inside which it would out-power serving class tv at x"""
    power = serving_power(tv, x, params)
    radii = {}
    if tv not in ("ML", "MN"):
        radii["M"] = macro_exclusion_radius(power, params)
    if tv != "SL":
        radii["SL"] = power_equivalent_radius(SL_MU, power, params)
    if tv != "SN":
        radii["SN"] = power_equivalent_radius(SN, power, params)
    return radii


def class_density(tv, x, params):
    """Joint density of {serving class is tv, serving distance is x}"""
    x = np.asarray(x, dtype=float)
    radii = exclusion_radii(tv, np.maximum(x, DISTANCE_FLOOR), params)
    if tv in ("ML", "MN"):
        base = 2.0 * np.pi * params.lambda_m * x * np.exp(-np.pi * params.lambda_m * x ** 2)
        base = np.where(x < params.d_m, base, 0.0) if tv == "ML" else np.where(x >= params.d_m, base, 0.0)
    elif tv == "SL":
        base = los_sbs_nearest_pdf(x, params)
    elif tv == "SN":
        base = nlos_nearest_pdf(x, params)
    else:
        raise ValidationError(f"unknown association class '{tv}'")
    density = np.asarray(base, dtype=float)
    if "M" in radii:
        density = density * macro_void_probability(radii["M"], params)
    if "SL" in radii:
        density = density * np.exp(-2.0 * params.lambda_s * radii["SL"])
    if "SN" in radii:
        density = density * nlos_void_probability(radii["SN"], params)
    return density[()]


def class_support(tv, params):
    if tv == "ML":
        return 0.0, params.d_m
    if tv == "MN":
        return params.d_m, math.inf
    return 0.0, math.inf


def natural_scale(tv, params):
    if tv in ("ML", "MN"):
        return params.d_m
    if tv == "SL":
        return 1.0 / (2.0 * params.lambda_s)
    return max(1.0, 1.0 / (128.0 * np.pi * params.lambda_r))


def integrate_over_interval(f, lo, hi, params, tv, spec=ASSOCIATION_SPEC):
    """Integral of f over [lo, hi] where hi may be infinite; returns (value, effective upper radius)"""
    if hi <= lo:
        return 0.0, lo
    if math.isinf(hi):
        result = integrate_improper(f, lo, spec, scale=natural_scale(tv, params))
        return result.value, result.radius
    return integrate(f, lo, hi, spec), hi


def class_probability(tv, params, lo=None, hi=None):
    """P(serving class is tv and the serving distance lies in [lo, hi])"""
    support_lo, support_hi = class_support(tv, params)
    lo = support_lo if lo is None else max(lo, support_lo)
    hi = support_hi if hi is None else min(hi, support_hi)
    value, _ = integrate_over_interval(lambda x: class_density(tv, x, params), lo, hi, params, tv)
    return float(value)


# ----------------------------------------------------------------------------
# tier probabilities
# ----------------------------------------------------------------------------

def _joint_tiers(params):
    p_ml = class_probability("ML", params)
    p_mn = class_probability("MN", params)
    p_sl = class_probability("SL", params)
    return p_ml, p_mn, p_sl


def _expect_sl(g, params):
    return integrate_improper(
        lambda x: los_sbs_nearest_pdf(x, params) * g(x), 0.0, ASSOCIATION_SPEC, scale=natural_scale("SL", params)
    ).value


def _expect_sn(g, params):
    return integrate_improper(lambda x: nlos_nearest_pdf(x, params) * g(x), 0.0, ASSOCIATION_SPEC).value


def _macro_win(cls, power, params):
    """P(nearest MBS inside the radius where it out-powers `power`)"""
    radius = power_equivalent_radius(cls, power, params)
    return -np.expm1(-np.pi * params.lambda_m * radius ** 2)


def _comparison_product_tiers(params):
    p_los = params.p_macro_los
    sl_power = lambda x: serving_power("SL", np.maximum(x, DISTANCE_FLOOR), params)
    sn_power = lambda x: serving_power("SN", np.maximum(x, DISTANCE_FLOOR), params)

    ml_over_sl = _expect_sl(lambda x: _macro_win(ML, sl_power(x), params), params)
    mn_over_sl = _expect_sl(lambda x: _macro_win(MN, sl_power(x), params), params)
    ml_over_sn = _expect_sn(lambda x: _macro_win(ML, sn_power(x), params), params)
    mn_over_sn = _expect_sn(lambda x: _macro_win(MN, sn_power(x), params), params)
    # the strongest SL out-powers the strongest SN
    sl_over_sn = _expect_sn(
        lambda x: -np.expm1(-2.0 * params.lambda_s * power_equivalent_radius(SL_MU, sn_power(x), params)), params
    )

    p_ml = p_los * ml_over_sl * ml_over_sn
    p_mn = (1.0 - p_los) * mn_over_sl * mn_over_sn
    p_sl = sl_over_sn * (p_los * (1.0 - ml_over_sl) + (1.0 - p_los) * (1.0 - mn_over_sl))
    return p_ml, p_mn, p_sl


def tier_probabilities(params, method="joint"):
    """P_ML, P_MN, P_SL by integration and P_SN as their complement"""
    if method == "joint":
        p_ml, p_mn, p_sl = _joint_tiers(params)
    elif method == "comparison_product":
        p_ml, p_mn, p_sl = _comparison_product_tiers(params)
    else:
        raise ValidationError(f"unknown association method '{method}'")
    clip = lambda p: float(min(max(p, 0.0), 1.0))
    p_ml, p_mn, p_sl = clip(p_ml), clip(p_mn), clip(p_sl)
    p_sn = clip(1.0 - p_ml - p_mn - p_sl)
    return TierProbabilities(p_ml, p_mn, p_sl, p_sn, method)


# ----------------------------------------------------------------------------
# RAT selection
# ----------------------------------------------------------------------------

def mmwave_threshold_distance(params):
    """Distance c at which the mm-wave and u-wave powers of an LOS SBS are equal"""
    alpha_mu, alpha_mm = params.alpha_of(SL_MU), params.alpha_of(SL_MM)
    ratio = params.k_of(SL_MU) / (params.k_of(SL_MM) * params.g0)
    if alpha_mu == alpha_mm:
        dominant = "mm-wave" if ratio < 1.0 else "u-wave"
        raise DegenerateParameterError(
            f"alpha_SL_MU == alpha_SL_MM: RAT choice does not depend on distance ({dominant} always wins)"
        )
    return ratio ** (1.0 / (alpha_mu - alpha_mm))


def mmwave_region(params):
    """Interval of LOS-SBS distances where mm-wave is selected"""
    c = mmwave_threshold_distance(params)
    if params.alpha_of(SL_MU) > params.alpha_of(SL_MM):
        return c, math.inf
    return 0.0, c


def mmwave_selection_probability(params):
    """P(mm-wave | nearest LOS SBS): exp(-2 lambda_S c), or its complement when alpha_mu < alpha_mm"""
    c = mmwave_threshold_distance(params)
    beyond = math.exp(-2.0 * params.lambda_s * c)
    if params.alpha_of(SL_MU) > params.alpha_of(SL_MM):
        return beyond
    return 1.0 - beyond


def association_report(params, method="joint"):
    tiers = tier_probabilities(params, method)
    report = AssociationReport.from_tiers(tiers, mmwave_selection_probability(params))
    log.debug(f"association ({method}): ML={report.p_ml:.4f} MN={report.p_mn:.4f} SL={report.p_sl:.4f} SN={report.p_sn:.4f}")
    return report
