"""
Per-trial SINR of the typical user.

u-wave links carry unit-mean exponential fading and see every other base station. The mm-wave
link carries unit-mean Gamma(n0) fading; each other SBS on the user's road aims its beam at a user
drawn in its own cell, and the three interference models read from the same draws.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.model.channel import mean_rx_power
from src.model.link_class import ML, MN, SL_MM, SL_MU, SN


class InterferenceModel(str, Enum):
    FULL = "full"
    DOMINANT_ONLY = "dominant"
    NOISE_LIMITED = "noise_limited"


@dataclass(frozen=True)
class TrialOutcome:
    serving_class: object
    serving_distance: float
    sinr: float = None
    sinr_full: float = None
    sinr_dominant: float = None
    sinr_noise_limited: float = None
    spillover_flag: bool = False

    def sinr_for(self, model=InterferenceModel.FULL):
        if not self.serving_class.is_mm_wave:
            return self.sinr
        model = InterferenceModel(model)
        if model is InterferenceModel.FULL:
            return self.sinr_full
        if model is InterferenceModel.DOMINANT_ONLY:
            return self.sinr_dominant
        return self.sinr_noise_limited


def _mu_wave_sinr(real, assoc, params, rng):
    mbs_d = np.maximum(real.mbs_distance, 1e-9)
    sbs_d = np.maximum(real.sbs_distance, 1e-9)
    los = real.on_typical_line
    mbs_power = np.where(mbs_d < params.d_m, mean_rx_power(ML, mbs_d, params), mean_rx_power(MN, mbs_d, params))
    sbs_power = np.where(los, mean_rx_power(SL_MU, sbs_d, params), mean_rx_power(SN, sbs_d, params))
    mbs_power = mbs_power * rng.exponential(1.0, mbs_d.size)
    sbs_power = sbs_power * rng.exponential(1.0, sbs_d.size)

    if assoc.serving_class.tier_visibility in ("ML", "MN"):
        signal = mbs_power[assoc.index]
        mbs_power[assoc.index] = 0.0
    else:
        signal = sbs_power[assoc.index]
        sbs_power[assoc.index] = 0.0
    interference = mbs_power.sum() + sbs_power.sum()
    return float(signal / (params.noise_mu + interference))


def beam_covers_origin(sbs_offset, user_offset, params):
    """
    Whether a beam from an SBS at sbs_offset (height h) aimed at a ground user at user_offset
    illuminates the origin; all positions are signed offsets along the user's road.
    """
    aim = np.asarray(user_offset, dtype=float) - sbs_offset
    sign = np.where(aim >= 0.0, 1.0, -1.0)
    boresight = np.arctan(np.abs(aim) / params.h)
    origin = np.arctan(-np.asarray(sbs_offset, dtype=float) * sign / params.h)
    half = params.theta / 2.0
    return (origin >= boresight - half) & (origin <= boresight + half)


def cell_users(sorted_offsets, params, window_radius, rng):
    """One served user per Voronoi cell on the road, or NaN where the cell holds no user"""
    mids = (sorted_offsets[1:] + sorted_offsets[:-1]) / 2.0
    lo = np.concatenate([[-window_radius], mids])
    hi = np.concatenate([mids, [window_radius]])
    counts = rng.poisson(params.lambda_ou * (hi - lo))
    users = rng.uniform(lo, hi)
    return np.where(counts > 0, users, np.nan)


def _mm_wave_sinrs(real, assoc, params, rng):
    n0 = int(params.nakagami_m)
    los_index = np.nonzero(real.on_typical_line)[0]
    offsets = real.sbs_offset[los_index]
    order = np.argsort(offsets)
    sorted_offsets = offsets[order]
    server = int(np.nonzero(los_index[order] == assoc.index)[0][0])

    fading = rng.gamma(n0, 1.0 / n0, sorted_offsets.size)
    users = cell_users(sorted_offsets, params, real.window_radius, rng)

    signal = mean_rx_power(SL_MM, assoc.distance, params) * fading[server]
    others = np.ones(sorted_offsets.size, dtype=bool)
    others[server] = False
    has_user = ~np.isnan(users)
    active = others & has_user & beam_covers_origin(sorted_offsets, np.nan_to_num(users), params)

    distance = np.maximum(np.abs(sorted_offsets), 1e-9)
    received = np.where(active, mean_rx_power(SL_MM, distance, params) * fading, 0.0)
    full = received.sum()

    # nearest SBS on the far side of the user from its server
    serving_side = np.sign(sorted_offsets[server]) or 1.0
    opposite = others & (np.sign(sorted_offsets) != serving_side)
    dominant, flag = 0.0, False
    if np.any(opposite):
        k = int(np.argmin(np.where(opposite, distance, np.inf)))
        dominant, flag = float(received[k]), bool(active[k])

    noise = params.noise_mm
    return float(signal / (noise + full)), float(signal / (noise + dominant)), float(signal / noise), flag


def compute_sinr(real, assoc, params, rng):
    """TrialOutcome for the association; mm-wave outcomes carry all three interference models"""
    if assoc.serving_class == SL_MM:
        full, dominant, noise_limited, flag = _mm_wave_sinrs(real, assoc, params, rng)
        return TrialOutcome(
            assoc.serving_class, assoc.distance,
            sinr_full=full, sinr_dominant=dominant, sinr_noise_limited=noise_limited, spillover_flag=flag,
        )
    return TrialOutcome(assoc.serving_class, assoc.distance, sinr=_mu_wave_sinr(real, assoc, params, rng))
