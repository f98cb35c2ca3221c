"""
Nearest-distance laws of the four deployment processes seen from the typical user.

SL: 1-D PPP on the user's road; ML/MN: planar PPP split by the LOS ball; SN: the Cox process
on all other roads, obtained from its void probability.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.core.errors import DomainError, ValidationError
from src.numerics.series import DEFAULT_SERIES_TERMS, kernel_integral


def _distances(x, strict=False):
    x = np.asarray(x, dtype=float)
    bad = ~(x > 0) if strict else ~(x >= 0)
    if np.any(bad):
        raise DomainError(f"distance must be {'> 0' if strict else '>= 0'} (got {x[bad].ravel()[0]!r})")
    return x


def los_sbs_nearest_pdf(x, params):
    x = _distances(x)
    return (2.0 * params.lambda_s * np.exp(-2.0 * params.lambda_s * x))[()]


def los_sbs_nearest_cdf(x, params):
    x = _distances(x)
    return (-np.expm1(-2.0 * params.lambda_s * x))[()]


def macro_nearest_pdfs(x, params):
    """(ML density on [0, D_M), MN density on [D_M, inf)); the MN branch is conditioned on no LOS MBS"""
    x = _distances(x)
    lam, d_m = params.lambda_m, params.d_m
    inside = x < d_m
    ml = np.where(inside, 2.0 * np.pi * lam * x * np.exp(-np.pi * lam * x ** 2), 0.0)
    mn = np.where(inside, 0.0, 2.0 * np.pi * lam * x * np.exp(-np.pi * lam * (x ** 2 - d_m ** 2)))
    return ml[()], mn[()]


def macro_nearest_cdfs(x, params):
    x = _distances(x)
    lam, d_m = params.lambda_m, params.d_m
    ml = -np.expm1(-np.pi * lam * np.minimum(x, d_m) ** 2)
    mn = np.where(x < d_m, 0.0, -np.expm1(-np.pi * lam * (np.maximum(x, d_m) ** 2 - d_m ** 2)))
    return ml[()], mn[()]


def macro_void_probability(radius, params):
    """P(no MBS in B(0, radius))"""
    radius = np.asarray(radius, dtype=float)
    return np.exp(-np.pi * params.lambda_m * radius ** 2)[()]


def nlos_chord_integral(x, params, n_terms=DEFAULT_SERIES_TERMS):
    """C(x): integral over r in (0, x) of the void probability of a chord at distance r"""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    if np.any(pos):
        out[pos] = kernel_integral(2.0 * params.lambda_s, x[pos], singular=False, n_terms=n_terms)
    return out[()]


def nlos_void_probability(x, params, n_terms=DEFAULT_SERIES_TERMS):
    """P(no NLOS SBS in B(0, x)) = exp(-2 pi lambda_R (x - C(x)))"""
    x = _distances(x)
    excess = np.maximum(x - nlos_chord_integral(x, params, n_terms), 0.0)
    return np.exp(-2.0 * np.pi * params.lambda_r * excess)[()]


def nlos_nearest_cdf(x, params, n_terms=DEFAULT_SERIES_TERMS):
    return (1.0 - nlos_void_probability(x, params, n_terms))[()]


def nlos_nearest_pdf(x, params, n_terms=DEFAULT_SERIES_TERMS):
    """
    Density of the distance to the nearest NLOS SBS, the x-derivative of the CDF:

        2 pi lambda_R exp(-2 pi lambda_R (x - C(x))) * 2 lambda_S x * S(x),
        S(x) = integral_0^x exp(-2 lambda_S sqrt(x^2 - r^2)) / sqrt(x^2 - r^2) dr
    """
    x = _distances(x)
    out = np.zeros_like(x)
    pos = x > 0
    if np.any(pos):
        xp = x[pos]
        kernel = kernel_integral(2.0 * params.lambda_s, xp, singular=True, n_terms=n_terms)
        void = nlos_void_probability(xp, params, n_terms)
        out[pos] = 2.0 * np.pi * params.lambda_r * void * 2.0 * params.lambda_s * xp * kernel
    return out[()]


@dataclass(frozen=True)
class NearestDistanceLaw:
    name: str
    pdf: Callable
    cdf: Callable
    support: tuple
    mass: float


def nearest_distance_law(name, params):
    """Law of the nearest point of class SL, ML, MN or SN (RAT-free)"""
    if name == "SL":
        return NearestDistanceLaw(
            "SL", lambda x: los_sbs_nearest_pdf(x, params), lambda x: los_sbs_nearest_cdf(x, params),
            (0.0, np.inf), 1.0,
        )
    if name == "ML":
        return NearestDistanceLaw(
            "ML", lambda x: macro_nearest_pdfs(x, params)[0], lambda x: macro_nearest_cdfs(x, params)[0],
            (0.0, params.d_m), params.p_macro_los,
        )
    if name == "MN":
        return NearestDistanceLaw(
            "MN", lambda x: macro_nearest_pdfs(x, params)[1], lambda x: macro_nearest_cdfs(x, params)[1],
            (params.d_m, np.inf), 1.0,
        )
    if name == "SN":
        return NearestDistanceLaw(
            "SN", lambda x: nlos_nearest_pdf(x, params), lambda x: nlos_nearest_cdf(x, params),
            (0.0, np.inf), 1.0,
        )
    raise ValidationError(f"unknown nearest-distance class '{name}' (expected SL, ML, MN or SN)")
