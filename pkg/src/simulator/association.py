"""
Exact association rule on a sampled realization
"""
from dataclasses import dataclass

import numpy as np

from src.core.errors import EmptyWindowError
from src.model.channel import mean_rx_power
from src.model.link_class import ML, MN, SL_MM, SL_MU, SN


@dataclass(frozen=True)
class Association:
    serving_class: object
    distance: float
    index: int           # row of the server in mbs_xy (macro) or sbs_xy (small cell)
    power: float         # mean u-wave power used for the tier comparison, W


def strongest_macro(real, params):
    """(class, distance, index, power) of the strongest MBS, or None; LOS iff within D_M"""
    d = real.mbs_distance
    if d.size == 0:
        return None
    d = np.maximum(d, 1e-9)
    los = d < params.d_m
    power = np.where(los, mean_rx_power(ML, d, params), mean_rx_power(MN, d, params))
    i = int(np.argmax(power))
    return (ML if los[i] else MN), float(d[i]), i, float(power[i])


def nearest_sbs(real, params, los):
    mask = real.on_typical_line if los else ~real.on_typical_line
    if not np.any(mask):
        return None
    candidates = np.nonzero(mask)[0]
    d = np.maximum(real.sbs_distance[candidates], 1e-9)
    j = int(np.argmin(d))
    cls = SL_MU if los else SN
    return cls, float(d[j]), int(candidates[j]), float(mean_rx_power(cls, d[j], params))


def prefers_mm_wave(d, params):
    """RAT rule on an LOS SBS at distance d: mm-wave iff its mean power beats the u-wave one"""
    d = np.maximum(np.asarray(d, dtype=float), 1e-9)
    return (mean_rx_power(SL_MM, d, params) > mean_rx_power(SL_MU, d, params))[()]


def associate(real, params):
    """Strongest mean u-wave power across the best ML/MN, SL and SN candidates, then the RAT rule"""
    candidates = [
        c for c in (strongest_macro(real, params), nearest_sbs(real, params, True), nearest_sbs(real, params, False))
        if c is not None
    ]
    if not candidates:
        raise EmptyWindowError("no base station inside the simulation window")
    cls, distance, index, power = max(candidates, key=lambda c: c[3])
    if cls == SL_MU and prefers_mm_wave(distance, params):
        cls = SL_MM
    return Association(cls, distance, index, power)
