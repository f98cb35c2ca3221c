"""
Probability generating functionals of the deployment processes for radially symmetric nu.

Every functional accepts nu evaluated on numpy arrays. A nu may carry leading batch axes
(see InterferenceFactor); the functional then returns one value per batch member.
"""
from typing import Protocol

import numpy as np

from src.core.errors import ValidationError
from src.numerics.quadrature import QuadratureSpec, integrate, integrate_improper

PGF_SPEC = QuadratureSpec(order=2, panels=16, tail_tol=1e-6, abs_tol=1e-12, max_panels=256)
ANGLE_SPEC = QuadratureSpec(order=2, panels=32, tail_tol=1e-6, abs_tol=1e-12, max_panels=512)

_ADMISSIBILITY_GRID = np.concatenate([[0.0], np.geomspace(1e-3, 1e6, 64)])
_ONE_SIDED = 1e-12


class RadialFunction(Protocol):
    def __call__(self, r: np.ndarray) -> np.ndarray:
        ...


class IndicatorBeyond:
    """nu(r) = 1{r > radius}; the breakpoint lets the functionals split their integrals there"""

    def __init__(self, radius):
        self.radius = float(radius)
        self.breakpoint = self.radius

    def __call__(self, r):
        return (np.asarray(r, dtype=float) > self.radius).astype(float)


class InterferenceFactor:
    """nu(r) = r^alpha / (r^alpha + a): Laplace factor of one Rayleigh-faded interferer"""

    def __init__(self, a, alpha):
        self.a = np.asarray(a, dtype=float)
        self.alpha = float(alpha)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        a = self.a.reshape(self.a.shape + (1,) * r.ndim)
        ra = np.power(r, self.alpha)
        denom = ra + a
        return np.divide(ra, denom, out=np.ones(np.broadcast_shapes(ra.shape, a.shape)), where=denom > 0)


def check_admissible(nu):
    """Reject nu that leaves [0, 1] on a sample grid of radii"""
    values = np.asarray(nu(_ADMISSIBILITY_GRID), dtype=float)
    if not np.all(np.isfinite(values)) or values.min() < -1e-12 or values.max() > 1.0 + 1e-12:
        raise ValidationError("PGF argument must map [0, inf) into [0, 1]")


def _chord(radius, r):
    return np.sqrt(np.maximum(radius ** 2 - r ** 2, 0.0))


def cox_pgf(nu, params, exclusion_radius=0.0, spec=PGF_SPEC, length_scale=None):
    """
    PGF of the Poisson line Cox process of SBSs:

        exp(-2 pi lambda_R int_0^inf [1 - exp(-2 lambda_S int_0^inf (1 - nu(sqrt(r^2 + t^2))) dt)] dr)

    With exclusion_radius e > 0 the functional is conditioned on B(0, e) holding no point,
    i.e. G(nu * 1{r > e}) / G(1{r > e}).
    """
    check_admissible(nu)
    lam_s = params.lambda_s
    e = float(exclusion_radius)
    b = getattr(nu, "breakpoint", None)
    if b is not None and b <= e:
        b = None
    scale = length_scale or max(e, b or 0.0, 1.0)

    def inside(rho):
        return nu(np.minimum(rho, b * (1.0 - _ONE_SIDED)))

    def outside(rho):
        floor = max(e, b or 0.0)
        return nu(np.maximum(rho, floor * (1.0 + _ONE_SIDED)) if floor > 0 else rho)

    def beyond_chord(r):
        r = r[:, None]
        lower = _chord(e, r)
        total = 0.0
        if b is not None:
            width = _chord(b, r) - lower
            total = integrate(
                lambda s: (1.0 - inside(np.sqrt(r ** 2 + (lower + width * s) ** 2))) * width, 0.0, 1.0, spec
            )
            lower = lower + width
        tail = integrate_improper(
            lambda tau: 1.0 - outside(np.sqrt(r ** 2 + (lower + tau) ** 2)), 0.0, spec, scale=scale
        )
        return total + tail.value

    def outer(r):
        weight = np.exp(-2.0 * lam_s * _chord(e, r))
        return weight * -np.expm1(-2.0 * lam_s * beyond_chord(r))

    knots = sorted(k for k in (e, b) if k)
    total, lo = 0.0, 0.0
    for knot in knots:
        total = total + integrate(outer, lo, knot, spec)
        lo = knot
    total = total + integrate_improper(outer, lo, spec, scale=scale).value
    return np.exp(-2.0 * np.pi * params.lambda_r * total)[()]


def line_pgf(nu, d, params, convention="one_ray", exclusion_radius=0.0, spec=PGF_SPEC, angle_spec=ANGLE_SPEC):
    """
    PGF of a PPP(lambda_S) on a uniformly oriented line through a point at distance d.

    convention="one_ray" integrates one ray from the point with density 2 lambda_S;
    convention="full_line" integrates both rays with density lambda_S (exact for a whole line).
    A positive exclusion_radius conditions on no point of the line inside B(0, e).
    """
    if d < 0:
        raise ValidationError(f"line_pgf needs d >= 0 (got {d!r})")
    if convention not in ("one_ray", "full_line"):
        raise ValidationError(f"unknown line_pgf convention '{convention}'")
    check_admissible(nu)
    lam_s = params.lambda_s
    e = float(exclusion_radius)
    scale = max(d, e, 1.0)

    def ray(cos_t):
        disc = np.sqrt(np.maximum(e ** 2 - d ** 2 * (1.0 - cos_t ** 2), 0.0))
        t_lo = np.maximum(0.0, -d * cos_t - disc)
        t_hi = np.maximum(0.0, -d * cos_t + disc)
        c = cos_t[:, None]

        def rho(t):
            value = np.sqrt(np.maximum(d ** 2 + t ** 2 + 2.0 * t * d * c, 0.0))
            return np.maximum(value, e) if e > 0 else value

        near = 0.0
        if np.any(t_lo > 0):
            lo = t_lo[:, None]
            near = integrate(lambda s: (1.0 - nu(rho(lo * s))) * lo, 0.0, 1.0, spec)
        far = integrate_improper(lambda tau: 1.0 - nu(rho(t_hi[:, None] + tau)), 0.0, spec, scale=scale)
        return near + far.value, t_hi - t_lo

    def numerator(theta):
        cos_t = np.cos(theta)
        j, chord = ray(cos_t)
        if convention == "one_ray":
            return np.exp(-2.0 * lam_s * (j + chord))
        j_back, chord_back = ray(-cos_t)
        return np.exp(-lam_s * (j + chord + j_back + chord_back))

    def denominator(theta):
        cos_t = np.cos(theta)
        chord = ray_chord(cos_t)
        if convention == "one_ray":
            return np.exp(-2.0 * lam_s * chord)
        return np.exp(-lam_s * (chord + ray_chord(-cos_t)))

    def ray_chord(cos_t):
        disc = np.sqrt(np.maximum(e ** 2 - d ** 2 * (1.0 - cos_t ** 2), 0.0))
        return np.maximum(0.0, -d * cos_t + disc) - np.maximum(0.0, -d * cos_t - disc)

    num = integrate(numerator, 0.0, 2.0 * np.pi, angle_spec)
    den = integrate(denominator, 0.0, 2.0 * np.pi, angle_spec) if e > 0 else 2.0 * np.pi
    return np.minimum(num / den, 1.0)[()]


def ppp_pgfl_annulus(nu, lam, r_min, r_max, spec=PGF_SPEC):
    """exp(-2 pi lambda int_{r_min}^{r_max} (1 - nu(r)) r dr) for a planar PPP; r_max may be inf"""
    if not 0 <= r_min <= r_max:
        raise ValidationError(f"annulus needs 0 <= r_min <= r_max (got {r_min!r}, {r_max!r})")
    check_admissible(nu)

    def integrand(r):
        return (1.0 - nu(r)) * r

    if np.isinf(r_max):
        total = integrate_improper(integrand, r_min, spec, scale=max(r_min, 1.0)).value
    else:
        total = integrate(integrand, r_min, r_max, spec)
    return np.exp(-2.0 * np.pi * lam * total)[()]
