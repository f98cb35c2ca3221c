"""
Probability that a mm-wave user is hit by the beam its neighbouring SBS points at a cell-edge user.

x is the inter-site distance between the serving and the neighbouring SBS, y the distance of
the neighbour's own user from the neighbour. The neighbour spills into the serving cell when
y exceeds d'(x); x must lie in (d*, d_hat) for the beam to cross the cell edge without passing
the serving SBS.
"""
import math
from dataclasses import dataclass

import numpy as np

from src.core.logger_manager import get_logger
from src.numerics.quadrature import QuadratureSpec, integrate, integrate_improper

log = get_logger("SPILLOVER")

SPILLOVER_SPEC = QuadratureSpec(order=2, panels=32, tail_tol=1e-8, abs_tol=1e-15, max_panels=2048)


@dataclass(frozen=True)
class SpilloverGeometry:
    d_star: float
    d_hat: float
    h: float
    theta: float
    feasible: bool

    def d_prime(self, x):
        """Smallest neighbour-user distance whose beam edge crosses the cell boundary x/2"""
        x = np.asarray(x, dtype=float)
        return (self.h * np.tan(np.arctan(x / (2.0 * self.h)) - self.theta / 2.0))[()]

    def beam_far_edge(self, y):
        """Ground distance from the neighbour to the far edge of a beam aimed at a user at y"""
        angle = self.theta / 2.0 + np.arctan(np.asarray(y, dtype=float) / self.h)
        safe = np.where(angle < np.pi / 2.0, angle, 0.0)
        return np.where(angle < np.pi / 2.0, self.h * np.tan(safe), np.inf)[()]


def spillover_geometry(params):
    h, theta = params.h, params.theta
    t = math.tan(theta / 2.0)
    if params.spillover_feasible:
        root = h * math.sqrt(1.0 - 8.0 * t)
        d_star = max((h - root) / (2.0 * t), 2.0 * h * t)
        d_hat = (h + root) / (2.0 * t)
        return SpilloverGeometry(d_star=d_star, d_hat=d_hat, h=h, theta=theta, feasible=True)
    return SpilloverGeometry(d_star=2.0 * h * t, d_hat=math.inf, h=h, theta=theta, feasible=False)


def spillover_integrand(x, params, geometry):
    """Inner integral over y in (d'(x), x/2) for an array of inter-site distances x"""
    lam_s, lam_ou = params.lambda_s, params.lambda_ou
    x = np.asarray(x, dtype=float)
    lower = np.maximum(geometry.d_prime(x), 0.0)
    upper = x / 2.0
    width = np.maximum(upper - lower, 0.0)
    user_present = -np.expm1(-lam_ou * width)
    joint = 2.0 * lam_s ** 2 * np.exp(-lam_s * x)

    def over_y(s):
        y = lower[:, None] + width[:, None] * s
        gap = np.maximum(x[:, None] - geometry.beam_far_edge(y), 0.0)
        return np.exp(-lam_s * gap) * width[:, None]

    inner = integrate(over_y, 0.0, 1.0, SPILLOVER_SPEC)
    return inner * user_present * joint


def spillover_probability(params, spec=SPILLOVER_SPEC):
    """p_G: probability that the typical mm-wave user lies in its neighbour's spillover region"""
    geometry = spillover_geometry(params)

    def integrand(x):
        return spillover_integrand(x, params, geometry)

    if geometry.feasible:
        if geometry.d_star >= geometry.d_hat:
            return 0.0
        value = integrate(integrand, geometry.d_star, geometry.d_hat, spec)
    else:
        log.warning(
            f"beamwidth {math.degrees(params.theta):.3g} deg outside the spillover feasibility bound; "
            f"integrating x over [{geometry.d_star:.3g}, inf)"
        )
        value = integrate_improper(integrand, geometry.d_star, spec, scale=1.0 / params.lambda_s).value
    return float(min(max(value, 0.0), 1.0))
