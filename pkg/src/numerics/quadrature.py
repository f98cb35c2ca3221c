"""
Composite Newton-Cotes quadrature with panel doubling, and improper integrals by radius doubling.

Integrands are vectorised: f(x) receives a 1-D array of abscissae and may return an array whose
last axis matches them. Leading axes form a batch that is integrated independently.
"""
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

import numpy as np

from src.core.errors import DomainError, IntegrationError, NonConvergenceError, ValidationError
from src.core.logger_manager import get_logger

log = get_logger("NUMERICS")

# closed Newton-Cotes weights on one panel of `order` sub-intervals, scaled by h
_PANEL_WEIGHTS = {
    1: np.array([1.0, 1.0]) / 2.0,                          # trapezoid
    2: np.array([1.0, 4.0, 1.0]) / 3.0,                     # Simpson
    4: np.array([7.0, 32.0, 12.0, 32.0, 7.0]) * 2.0 / 45.0,  # Boole
}


class Rule(str, Enum):
    NEWTON_COTES = "newton_cotes"
    ADAPTIVE = "adaptive"


@dataclass(frozen=True)
class QuadratureSpec:
    rule: Rule = Rule.ADAPTIVE
    order: int = 2
    panels: int = 16
    tail_cutoff: float = None
    tail_tol: float = 1e-6
    abs_tol: float = 1e-14
    max_panels: int = 4096
    radius_cap: float = 1e9

    def __post_init__(self):
        errors = []
        if self.order not in _PANEL_WEIGHTS:
            errors.append(f"order: must be one of 1, 2, 4 (got {self.order!r})")
        if not (isinstance(self.panels, int) and self.panels >= 1):
            errors.append(f"panels: must be an integer >= 1 (got {self.panels!r})")
        if not (0.0 < self.tail_tol < 1.0):
            errors.append(f"tail_tol: must lie in (0, 1) (got {self.tail_tol!r})")
        if self.tail_cutoff is not None and not self.tail_cutoff > 0:
            errors.append(f"tail_cutoff: must be > 0 when set (got {self.tail_cutoff!r})")
        if self.max_panels < self.panels:
            errors.append("max_panels: must be >= panels")
        if errors:
            raise ValidationError(errors)

    def with_changes(self, **changes):
        return replace(self, **changes)


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class ImproperResult:
    value: object
    radius: float


@lru_cache(maxsize=64)
def _unit_nodes_and_weights(order, panels):
    n = order * panels
    nodes = np.linspace(0.0, 1.0, n + 1)
    weights = np.zeros(n + 1)
    base = _PANEL_WEIGHTS[order]
    for p in range(panels):
        weights[p * order:(p + 1) * order + 1] += base
    weights /= n
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def nodes_and_weights(a, b, order=2, panels=16):
    """Composite Newton-Cotes abscissae and weights on [a, b]"""
    nodes, weights = _unit_nodes_and_weights(order, panels)
    return a + (b - a) * nodes, (b - a) * weights


def _apply_rule(f, a, b, order, panels):
    x, w = nodes_and_weights(a, b, order, panels)
    values = np.asarray(f(x), dtype=float)
    values = np.broadcast_to(values, np.broadcast_shapes(values.shape, x.shape))
    finite = np.isfinite(values)
    if not finite.all():
        bad = np.nonzero(~finite.reshape(-1, x.size).all(axis=0))[0][0]
        raise IntegrationError(float(x[bad]))
    result = values @ w
    return result[()] if isinstance(result, np.ndarray) else result


def _settled(new, old, rel_tol, abs_tol):
    return bool(np.all(np.abs(new - old) <= rel_tol * np.abs(new) + abs_tol))


def integrate(f, a, b, spec=DEFAULT_SPEC):
    """Composite Newton-Cotes estimate of the integral of f over [a, b]"""
    if not a <= b:
        raise DomainError(f"integrate needs a <= b (got a={a!r}, b={b!r})")
    panels = spec.panels
    estimate = _apply_rule(f, a, b, spec.order, panels)
    if a == b or spec.rule is not Rule.ADAPTIVE:
        return estimate
    while panels * 2 <= spec.max_panels:
        panels *= 2
        refined = _apply_rule(f, a, b, spec.order, panels)
        if _settled(refined, estimate, spec.tail_tol, spec.abs_tol):
            return refined
        estimate = refined
    log.debug(f"panel cap {spec.max_panels} reached on [{a:.6g}, {b:.6g}]")
    return estimate


def integrate_improper(f, a, spec=DEFAULT_SPEC, scale=None):
    """
    Integral of f over [a, inf) by doubling the truncation radius.

    Stops after two consecutive doublings each change the estimate by less than tail_tol
    (relative). Returns ImproperResult(value, radius).
    """
    if spec.tail_cutoff is not None:
        return ImproperResult(integrate(f, a, a + spec.tail_cutoff, spec), a + spec.tail_cutoff)

    span = float(scale) if scale else 1.0
    lo, hi = a, a + span
    total = integrate(f, lo, hi, spec)
    previous = total
    quiet = 0
    while quiet < 2:
        lo, hi = hi, a + 2.0 * (hi - a)
        if hi - a > spec.radius_cap:
            raise NonConvergenceError(total, previous)
        delta = integrate(f, lo, hi, spec)
        previous, total = total, total + delta
        if np.all(np.abs(delta) <= spec.tail_tol * np.abs(total) + spec.abs_tol):
            quiet += 1
        else:
            quiet = 0
    return ImproperResult(total, hi)
