"""
Decibel / linear conversions. Engines compute in SI linear units; dB only at the boundary.
"""
import numpy as np

from src.core.errors import DomainError

THERMAL_NOISE_DBM_PER_HZ = -174.0


def db_to_linear(value_db):
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)[()]


def linear_to_db(value):
    return (10.0 * np.log10(np.asarray(value, dtype=float)))[()]


def dbm_to_watts(value_dbm):
    return db_to_linear(np.asarray(value_dbm, dtype=float) - 30.0)


def watts_to_dbm(value_w):
    return linear_to_db(value_w) + 30.0


def noise_power_watts(bandwidth_hz, noise_figure_db):
    """Thermal noise -174 dBm/Hz over the bandwidth plus the receiver noise figure"""
    if bandwidth_hz <= 0:
        raise DomainError(f"bandwidth must be positive, got {bandwidth_hz}")
    noise_dbm = THERMAL_NOISE_DBM_PER_HZ + 10.0 * np.log10(bandwidth_hz) + noise_figure_db
    return float(dbm_to_watts(noise_dbm))


# human-unit density helpers
def per_km2_to_per_m2(value):
    return value * 1e-6


def per_m2_to_per_km2(value):
    return value * 1e6


def per_km_to_per_m(value):
    return value * 1e-3


def per_m_to_per_km(value):
    return value * 1e3
