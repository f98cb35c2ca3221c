"""
Conditional SINR coverage given the serving link class.

u-wave links see Rayleigh fading and interference from every MBS and SBS, evaluated through the
probability generating functionals of each deployment process. The mm-wave link sees Nakagami
fading and at most the spillover interferer on its own road.
"""
import math

import numpy as np
from scipy.special import comb, gammaln

from src.analytic_coverage.association import DISTANCE_FLOOR, macro_exclusion_bounds
from src.analytic_coverage.serving_distance import expect_over_serving_distance
from src.analytic_coverage.spillover import spillover_probability
from src.analytic_geometry.pgf import InterferenceFactor, cox_pgf, line_pgf, ppp_pgfl_annulus
from src.core.errors import IntegrationError, NonConvergenceError, ValidationError
from src.core.logger_manager import get_logger
from src.model.channel import mean_rx_power, power_equivalent_radius
from src.model.link_class import ML, MN, SL_MM, SL_MU, SN
from src.numerics.quadrature import QuadratureSpec, Rule, integrate, integrate_improper

log = get_logger("SINR_COVERAGE")

MU_WAVE_CLASSES = (ML, MN, SL_MU, SN)
MM_INTERFERENCE_FORMS = ("gated", "factored")

# the x-expectation wraps one PGF evaluation per node, so both levels use fixed rules
SERVING_SPEC = QuadratureSpec(rule=Rule.NEWTON_COTES, order=2, panels=8, tail_tol=1e-4, abs_tol=1e-12)
INTERFERENCE_SPEC = QuadratureSpec(rule=Rule.NEWTON_COTES, order=2, panels=8, tail_tol=1e-4, abs_tol=1e-12)
ANGLE_SPEC = QuadratureSpec(rule=Rule.NEWTON_COTES, order=2, panels=16, tail_tol=1e-4, abs_tol=1e-12)
NEIGHBOUR_SPEC = QuadratureSpec(order=2, panels=16, tail_tol=1e-7, abs_tol=1e-14, max_panels=1024)


def _thresholds(gamma):
    gamma = np.atleast_1d(np.asarray(gamma, dtype=float))
    if gamma.ndim != 1 or np.any(~(gamma > 0)) or not np.all(np.isfinite(gamma)):
        raise ValidationError("SINR thresholds must be finite and > 0 (linear scale)")
    return gamma


def _named(operation, fn, *args, **kwargs):
    """Run one coverage factor and tag numeric failures with its name"""
    try:
        return fn(*args, **kwargs)
    except NonConvergenceError as e:
        raise NonConvergenceError(e.last, e.previous, operation) from e
    except IntegrationError as e:
        raise IntegrationError(e.abscissa, f"{operation}: non-finite integrand at x={e.abscissa!r}") from e


# the scaled tail int_L^inf ds / (1 + s^alpha) is summed as a series once L reaches this point
ROAD_SERIES_START = 2.0
ROAD_SERIES_TERMS = 48
ROAD_SPEC = QuadratureSpec(order=4, panels=16, tail_tol=1e-10, abs_tol=1e-15, max_panels=1024)


def _road_tail_series(L, alpha):
    """int_L^inf ds / (1 + s^alpha) for L >= ROAD_SERIES_START, expanding 1/(1 + s^-alpha)"""
    k = np.arange(1, ROAD_SERIES_TERMS + 1, dtype=float)
    signs = (-1.0) ** (k + 1)
    with np.errstate(under="ignore"):
        terms = signs * np.power(L[:, None], 1.0 - k * alpha) / (k * alpha - 1.0)
    return terms.sum(axis=1)


def road_interference_integral(a, alpha, exclusion, spec=ROAD_SPEC):
    """
    int_e^inf a / (t^alpha + a) dt for every strength in `a`.

    With t = a^(1/alpha) s the integral is a^(1/alpha) times int_L^inf ds / (1 + s^alpha),
    L = e / a^(1/alpha), which no longer depends on how strong the interferer is.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if alpha <= 1.0:
        raise ValidationError(f"road interference diverges for alpha <= 1 (got {alpha})")
    if np.any(a < 0) or exclusion < 0:
        raise ValidationError("interference strength and exclusion radius must be >= 0")
    scale = np.power(a, 1.0 / alpha)
    with np.errstate(divide="ignore"):
        L = np.where(scale > 0, float(exclusion) / np.where(scale > 0, scale, 1.0), np.inf)

    tail = np.zeros_like(L)
    far = np.isfinite(L) & (L >= ROAD_SERIES_START)
    if np.any(far):
        tail[far] = _road_tail_series(L[far], alpha)
    near = L < ROAD_SERIES_START
    if np.any(near):
        lo = L[near]
        width = ROAD_SERIES_START - lo

        def finite_part(u):
            s = lo[:, None] + width[:, None] * u
            return width[:, None] / (1.0 + np.power(s, alpha))

        head = np.asarray(integrate(finite_part, 0.0, 1.0, spec))
        tail[near] = head + _road_tail_series(np.array([ROAD_SERIES_START]), alpha)[0]
    return scale * tail


def road_laplace(a, alpha, lam, exclusion, spec=ROAD_SPEC):
    """
    Interference factor of a 1-D PPP(lam) on both sides of the user, points beyond `exclusion`:

        exp(-2 lam int_e^inf a / (t^alpha + a) dt)
    """
    return np.exp(-2.0 * lam * road_interference_integral(a, alpha, exclusion, spec))


def _interference_bounds(cls, x, power, params):
    """Inner radius of each interferer set given service by cls at distance x with mean power `power`"""
    tv = cls.tier_visibility
    if tv == "ML":
        ml_lo, mn_lo = x, max(params.d_m, float(power_equivalent_radius(MN, power, params)))
    elif tv == "MN":
        ml_lo, mn_lo = params.d_m, x
    else:
        ml_lo, mn_lo = (float(b) for b in macro_exclusion_bounds(power, params))
    sl_lo = x if tv == "SL" else float(power_equivalent_radius(SL_MU, power, params))
    sn_lo = x if tv == "SN" else float(power_equivalent_radius(SN, power, params))
    return ml_lo, mn_lo, sl_lo, sn_lo


def mu_wave_coverage_at(cls, gamma, x, params):
    """P(SINR > gamma | serving class cls at distance x) for every threshold in gamma"""
    gamma = _thresholds(gamma)
    if x <= DISTANCE_FLOOR:
        return np.ones_like(gamma)
    power = float(mean_rx_power(cls, x, params))
    coverage = np.exp(-gamma * params.noise_mu / power)

    def strength(interferer):
        return gamma * params.tx_power(interferer) * params.k_of(interferer) / power

    ml_lo, mn_lo, sl_lo, sn_lo = _interference_bounds(cls, x, power, params)
    if ml_lo < params.d_m:
        nu = InterferenceFactor(strength(ML), params.alpha_of(ML))
        coverage = coverage * _named("ML interference", ppp_pgfl_annulus, nu, params.lambda_m, ml_lo, params.d_m, INTERFERENCE_SPEC)
    nu = InterferenceFactor(strength(MN), params.alpha_of(MN))
    coverage = coverage * _named("MN interference", ppp_pgfl_annulus, nu, params.lambda_m, mn_lo, math.inf, INTERFERENCE_SPEC)

    coverage = coverage * _named(
        "SL interference", road_laplace, strength(SL_MU), params.alpha_of(SL_MU), params.lambda_s, sl_lo
    )

    nu_sn = InterferenceFactor(strength(SN), params.alpha_of(SN))
    coverage = coverage * _named(
        "SN interference", cox_pgf, nu_sn, params, exclusion_radius=sn_lo, spec=INTERFERENCE_SPEC
    )
    if cls == SN:
        # the serving road carries further SBSs beyond the serving one
        coverage = coverage * _named(
            "serving-road interference", line_pgf, nu_sn, x, params,
            convention="one_ray", exclusion_radius=x, spec=INTERFERENCE_SPEC, angle_spec=ANGLE_SPEC,
        )
    return np.clip(coverage, 0.0, 1.0)


def sinr_coverage_mu(cls, gamma, params):
    """P(SINR > gamma | cls) on the u-wave RAT, averaged over the serving-distance law"""
    if cls not in MU_WAVE_CLASSES:
        raise ValidationError(f"u-wave coverage is defined for ML, MN, SL_MU and SN (got {cls})")
    gamma = _thresholds(gamma)

    def conditional(x_nodes):
        out = np.empty((gamma.size, x_nodes.size))
        for j, x in enumerate(x_nodes):
            out[:, j] = mu_wave_coverage_at(cls, gamma, float(x), params)
        return out

    result = _named(f"{cls.key} serving-distance expectation", expect_over_serving_distance, conditional, cls, params, SERVING_SPEC)
    log.debug(f"{cls.key} u-wave coverage evaluated at {gamma.size} thresholds")
    return np.clip(np.asarray(result, dtype=float), 0.0, 1.0)


# ----------------------------------------------------------------------------
# mm-wave
# ----------------------------------------------------------------------------

def alzer_scale(n0):
    """n0 (n0!)^(-1/n0), the constant of the Gamma-tail bound used for Nakagami fading"""
    return n0 * math.exp(-gammaln(n0 + 1) / n0)


def spillover_interference_factor(gamma, p_g, alpha, spec=NEIGHBOUR_SPEC):
    """
    E[1 / (1 + gamma p_G (x/y)^alpha)] over the serving distance x and the distance y > x of the
    next SBS on the road. With x = v / (2 lambda_S) and y = x + w / lambda_S the law reduces to two
    unit exponentials, so the factor does not depend on lambda_S.
    """
    gamma = _thresholds(gamma)
    if p_g <= 0.0:
        return np.ones_like(gamma)
    strength = gamma * p_g

    def inner(v):
        v = np.maximum(v, 1e-300)[:, None]

        def over_w(w):
            with np.errstate(over="ignore", divide="ignore"):
                ratio = np.power(1.0 + 2.0 * w / v, -alpha)
            return np.exp(-w) / (1.0 + strength[:, None, None] * ratio)

        return integrate_improper(over_w, 0.0, spec, scale=1.0).value

    factor = integrate_improper(lambda v: np.exp(-v) * inner(v), 0.0, spec, scale=1.0).value
    return np.clip(factor, 0.0, 1.0)


def neighbour_interference_laplace(strength, x, lam, alpha, n0, spec=NEIGHBOUR_SPEC):
    """
    E[(1 + s (x/y)^alpha / n0)^(-n0)] over the opposite-side neighbour y = x + w, w ~ Exp(lam),
    for every strength s in `strength` (any leading shape) and serving distance x in `x`.
    Returned with shape strength.shape + x.shape.
    """
    strength = np.asarray(strength, dtype=float)
    x = np.maximum(np.atleast_1d(np.asarray(x, dtype=float)), DISTANCE_FLOOR)
    s = strength.reshape(strength.shape + (1, 1))
    lx = (lam * x)[:, None]

    def over_u(u):
        ratio = np.power(1.0 + u / lx, -alpha)
        return np.exp(-u) * np.power(1.0 + s * ratio / n0, -float(n0))

    return integrate_improper(over_u, 0.0, spec, scale=1.0).value


def sinr_coverage_mm(gamma, params, p_g=None, interference="gated"):
    """
    P(SINR > gamma | SL_MM): alternating binomial sum over n = 1..n0 of the Nakagami tail bound.

    interference="gated" keeps the neighbour inside each term of the sum and switches it on with
    probability p_G, so the result is a mixture of SINR tails and stays in [0, 1].
    interference="factored" multiplies the noise-only sum by E[1 / (1 + gamma p_G (x/y)^alpha)].
    """
    gamma = _thresholds(gamma)
    if interference not in MM_INTERFERENCE_FORMS:
        raise ValidationError(f"mm-wave interference form must be one of {MM_INTERFERENCE_FORMS} (got {interference!r})")
    n0 = int(params.nakagami_m)
    a = alzer_scale(n0)
    p_g = spillover_probability(params) if p_g is None else float(p_g)
    if not 0.0 <= p_g <= 1.0:
        raise ValidationError(f"spillover probability must lie in [0, 1] (got {p_g})")
    orders = np.arange(1, n0 + 1, dtype=float)
    weights = (-1.0) ** (orders + 1) * comb(n0, orders)
    alpha = params.alpha_of(SL_MM)
    gated = interference == "gated" and p_g > 0.0

    def terms(x_nodes):
        power = mean_rx_power(SL_MM, np.maximum(x_nodes, DISTANCE_FLOOR), params)
        exponent = orders[:, None, None] * a * gamma[None, :, None] * params.noise_mm / power[None, None, :]
        out = np.exp(-exponent)
        if gated:
            strength = orders[:, None] * a * gamma[None, :]
            neighbour = neighbour_interference_laplace(strength, x_nodes, params.lambda_s, alpha, n0)
            out = out * ((1.0 - p_g) + p_g * neighbour)
        return out

    summed = _named("mm-wave coverage expectation", expect_over_serving_distance, terms, SL_MM, params, SERVING_SPEC)
    coverage = (weights[:, None] * np.asarray(summed)).sum(axis=0)
    if interference == "factored":
        coverage = coverage * _named(
            "mm-wave spillover interference", spillover_interference_factor, gamma, p_g, alpha
        )
    return np.clip(coverage, 0.0, 1.0)


def sinr_coverage(cls, gamma, params, p_g=None):
    if cls == SL_MM:
        return sinr_coverage_mm(gamma, params, p_g)
    return sinr_coverage_mu(cls, gamma, params)
