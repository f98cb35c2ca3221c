"""
Kernels of the nearest-NLOS-SBS law:

    singular:      integral_0^x exp(-c*sqrt(x^2 - r^2)) / sqrt(x^2 - r^2) dr
    non-singular:  integral_0^x exp(-c*sqrt(x^2 - r^2)) dr

evaluated either by term-wise integration of the exponential's power series (each term is a
Beta-function closed form) or by direct quadrature after r = x*sin(u).
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln, gammaln

from src.core.errors import DomainError
from src.core.logger_manager import get_logger
from src.numerics.quadrature import QuadratureSpec, integrate

log = get_logger("NUMERICS")

DEFAULT_SERIES_TERMS = 30
# the alternating series loses digits to cancellation beyond this c*x
SERIES_ARGUMENT_LIMIT = 5.0
SERIES_REL_TOL = 1e-10

ORACLE_SPEC = QuadratureSpec(order=4, panels=32, tail_tol=1e-13, abs_tol=1e-16, max_panels=8192)
# exp(-z*sin(v)) <= exp(-2*z*v/pi) is below e^-40 past this multiple of pi/z
_WINDOW_FACTOR = 20.0


@dataclass(frozen=True)
class SeriesResult:
    value: float
    truncation_bound: float
    n_terms: int
    converged: bool


def _series_terms(c, x, k, singular):
    """Signed series terms, shape x.shape + k.shape"""
    x = np.asarray(x, dtype=float)[..., None]
    z = c * x
    # log of integral_0^x (x^2 - r^2)^(m/2) dr = (m+1) log x + log B(1/2, m/2 + 1) - log 2
    m = k - 1 if singular else k
    log_moment = (m + 1) * np.log(x) + betaln(0.5, m / 2.0 + 1.0) - np.log(2.0)
    with np.errstate(divide="ignore"):
        log_z = np.where(z > 0, np.log(np.where(z > 0, z, 1.0)), -np.inf)
    log_coef = k * np.where(k == 0, 0.0, log_z) - gammaln(k + 1.0)
    # (-c)^k/k! * x^(m+1) * B / 2  ==  (-1)^k * z^k/k! * x^(m+1-k) * B / 2
    magnitude = np.exp(log_coef + log_moment - k * np.log(x))
    return np.where(k % 2 == 0, 1.0, -1.0) * magnitude


def exp_series_integral(c, x, n_terms=DEFAULT_SERIES_TERMS, singular=True):
    """Power-series evaluation of the kernel; reports the next-term magnitude as truncation bound"""
    if c < 0 or not x > 0 or n_terms < 1:
        raise DomainError(f"exp_series_integral needs c >= 0, x > 0, n_terms >= 1 (got {c}, {x}, {n_terms})")
    k = np.arange(n_terms + 1, dtype=float)
    terms = _series_terms(c, x, k, singular)
    value = float(np.sum(terms[:-1]))
    bound = float(abs(terms[-1]))
    converged = bound <= SERIES_REL_TOL * max(abs(value), np.finfo(float).tiny)
    if not converged:
        log.warning(f"series kernel not converged at {n_terms} terms (c*x={c * x:.4g}, next term {bound:.3e})")
    return SeriesResult(value=value, truncation_bound=bound, n_terms=n_terms, converged=converged)


def exp_series_kernel(c, x, n_terms=DEFAULT_SERIES_TERMS, singular=True):
    """Vectorised partial sums over an array of x (no diagnostics)"""
    k = np.arange(n_terms, dtype=float)
    return np.sum(_series_terms(c, x, k, singular), axis=-1)[()]


def direct_kernel_integral(c, x, singular=True, spec=ORACLE_SPEC):
    """Quadrature oracle for the kernel, vectorised over x; the endpoint singularity is removed by r = x*sin(u)"""
    x = np.asarray(x, dtype=float)
    if c < 0 or np.any(~(x > 0)):
        raise DomainError("direct_kernel_integral needs c >= 0 and x > 0")
    z = (c * x)[..., None]
    # v = pi/2 - u, truncated where the integrand is negligible
    v_max = np.minimum(np.pi / 2.0, _WINDOW_FACTOR * np.pi / np.where(z > 0, z, 1.0))
    v_max = np.where(z > 0, v_max, np.pi / 2.0)
    xx = x[..., None]

    def integrand(w):
        v = v_max * w
        values = v_max * np.exp(-z * np.sin(v))
        if not singular:
            values = values * xx * np.sin(v)
        return values

    return integrate(integrand, 0.0, 1.0, spec)


def kernel_integral(c, x, singular=True, n_terms=DEFAULT_SERIES_TERMS):
    """Series where c*x is small enough for it, direct quadrature elsewhere"""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = c * x <= SERIES_ARGUMENT_LIMIT
    if np.any(small):
        out[small] = exp_series_kernel(c, x[small], n_terms, singular)
    if np.any(~small):
        out[~small] = direct_kernel_integral(c, x[~small], singular)
    return out[()]
