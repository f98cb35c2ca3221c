"""
Path loss and mean received power shared by both engines
"""
import numpy as np

from src.core.errors import DomainError, ValidationError
from src.model.link_class import LinkClass


def _check_class(cls):
    if not isinstance(cls, LinkClass):
        raise ValidationError(f"expected a LinkClass, got {cls!r}")


def path_loss(cls, d, params):
    """K_tvr * d^-alpha_tvr; accepts scalars or arrays of distances"""
    _check_class(cls)
    d = np.asarray(d, dtype=float)
    if np.any(~(d > 0)):
        raise DomainError(f"path_loss needs d > 0 (got min {np.min(d)!r})")
    return (params.k_of(cls) * d ** (-params.alpha_of(cls)))[()]


def mean_rx_power(cls, d, params):
    """P_t K d^-alpha, times G_0 on the mm-wave class"""
    gain = params.g0 if cls.is_mm_wave else 1.0
    return gain * params.tx_power(cls) * path_loss(cls, d, params)


def power_equivalent_radius(competitor, power, params):
    """Distance at which `competitor` delivers mean power `power` (watts)"""
    _check_class(competitor)
    power = np.asarray(power, dtype=float)
    gain = params.g0 if competitor.is_mm_wave else 1.0
    scale = gain * params.tx_power(competitor) * params.k_of(competitor)
    return ((scale / power) ** (1.0 / params.alpha_of(competitor)))[()]
