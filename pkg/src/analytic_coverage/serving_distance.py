"""
Serving-distance law given the serving link class, and expectations over it.

SL_MU and SL_MM restrict the SL tier density to the distances where that RAT is selected.
"""
import math

import numpy as np

from src.analytic_coverage.association import (
    ASSOCIATION_SPEC,
    class_density,
    class_support,
    integrate_over_interval,
    mmwave_region,
)
from src.core.errors import UndefinedConditionalError, ValidationError
from src.core.logger_manager import get_logger
from src.model.link_class import LinkClass, SL_MM, SL_MU

log = get_logger("SERVING_DISTANCE")

_MASS_FLOOR = 1e-300


def _tier_key(cls):
    if not isinstance(cls, LinkClass):
        raise ValidationError(f"expected a LinkClass, got {cls!r}")
    return cls.tier_visibility


def serving_support(cls, params):
    """Interval of serving distances the class can be served at"""
    lo, hi = class_support(_tier_key(cls), params)
    if cls in (SL_MU, SL_MM):
        mm_lo, mm_hi = mmwave_region(params)
        if cls == SL_MM:
            lo, hi = max(lo, mm_lo), min(hi, mm_hi)
        elif mm_lo > 0:
            hi = min(hi, mm_lo)
        else:
            lo = max(lo, mm_hi)
    return lo, hi


def _unnormalised(cls, x, params):
    x = np.asarray(x, dtype=float)
    lo, hi = serving_support(cls, params)
    density = np.asarray(class_density(_tier_key(cls), x, params), dtype=float)
    return np.where((x >= lo) & (x <= hi), density, 0.0)[()]


def serving_mass(cls, params):
    """P(serving class is cls); for the SL classes the exact RAT-region mass"""
    lo, hi = serving_support(cls, params)
    value, _ = integrate_over_interval(
        lambda x: _unnormalised(cls, x, params), lo, hi, params, _tier_key(cls)
    )
    return float(value)


def serving_distance_pdf(cls, x, params, mass=None):
    """Density of the serving distance given that the user is served by class cls"""
    mass = serving_mass(cls, params) if mass is None else mass
    if not mass > _MASS_FLOOR:
        raise UndefinedConditionalError(f"P({cls.key}) = 0: serving distance is undefined")
    return (np.asarray(_unnormalised(cls, x, params)) / mass)[()]


def expect_over_serving_distance(g, cls, params, spec=ASSOCIATION_SPEC):
    """
    E[g(x)] over the serving-distance law of cls.

    g takes a 1-D array of distances and returns values whose last axis matches it; leading
    axes (one per threshold, say) are carried through.
    """
    mass = serving_mass(cls, params)
    if not mass > _MASS_FLOOR:
        raise UndefinedConditionalError(f"P({cls.key}) = 0: serving distance is undefined")
    lo, hi = serving_support(cls, params)

    def integrand(x):
        return np.asarray(g(x)) * _unnormalised(cls, x, params)

    value, radius = integrate_over_interval(integrand, lo, hi, params, _tier_key(cls), spec)
    # normalise with the same rule so that E[1] == 1 whatever the quadrature error
    norm, _ = integrate_over_interval(lambda x: _unnormalised(cls, x, params), lo, hi, params, _tier_key(cls), spec)
    if not norm > _MASS_FLOOR:
        norm = mass
    if math.isinf(hi):
        log.debug(f"{cls.key} serving-distance expectation truncated at {radius:.4g} m")
    return (np.asarray(value) / norm)[()]
