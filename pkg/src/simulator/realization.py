"""
One realization of the road network seen from the typical user at the origin.

Roads hitting B(0, R) are drawn from the Poisson line process; the user's own road (the Palm
line, index 0) passes through the origin. SBSs form a 1-D PPP on every chord and MBSs a planar
PPP in the window.
"""
from dataclasses import dataclass

import numpy as np

from src.core.errors import ValidationError
from src.core.logger_manager import get_logger

log = get_logger("REALIZATION")

MIN_WINDOW_RADIUS = 3000.0
TYPICAL_LINE = 0


def default_window_radius(params):
    """max(5 / sqrt(pi lambda_M), 5 D_M, 3000 m)"""
    return float(max(5.0 / np.sqrt(np.pi * params.lambda_m), 5.0 * params.d_m, MIN_WINDOW_RADIUS))


@dataclass(frozen=True)
class NetworkRealization:
    line_distance: np.ndarray    # distance of each line from the origin, m
    line_angle: np.ndarray       # angle of each line's normal, rad
    sbs_line: np.ndarray         # index of the line carrying each SBS
    sbs_offset: np.ndarray       # signed position of each SBS along its line from the foot point, m
    sbs_xy: np.ndarray           # planar SBS coordinates, shape (n, 2)
    mbs_xy: np.ndarray           # planar MBS coordinates, shape (m, 2)
    window_radius: float
    typical_user_line: int = TYPICAL_LINE

    @property
    def n_lines(self):
        return self.line_distance.size

    @property
    def on_typical_line(self):
        return self.sbs_line == self.typical_user_line

    @property
    def sbs_distance(self):
        return np.hypot(self.sbs_xy[:, 0], self.sbs_xy[:, 1])

    @property
    def mbs_distance(self):
        return np.hypot(self.mbs_xy[:, 0], self.mbs_xy[:, 1])

    @property
    def los_offsets(self):
        """Signed positions of the SBSs on the user's road; |offset| is their distance"""
        return self.sbs_offset[self.on_typical_line]

    @property
    def nlos_distances(self):
        return self.sbs_distance[~self.on_typical_line]

    @property
    def is_empty(self):
        return self.sbs_xy.shape[0] == 0 and self.mbs_xy.shape[0] == 0


def line_directions(angle):
    """Unit normal and unit direction of lines with normal angle `angle`"""
    normal = np.stack([np.cos(angle), np.sin(angle)], axis=-1)
    direction = np.stack([-np.sin(angle), np.cos(angle)], axis=-1)
    return normal, direction


def sample_points_on_chords(distance, angle, lam, window_radius, rng):
    """1-D PPP(lam) on the chord of each line inside B(0, R); returns (line index, offset, xy)"""
    half = np.sqrt(np.maximum(window_radius ** 2 - distance ** 2, 0.0))
    counts = rng.poisson(2.0 * lam * half)
    line_index = np.repeat(np.arange(distance.size), counts)
    offset = rng.uniform(-half[line_index], half[line_index])
    normal, direction = line_directions(angle[line_index])
    xy = distance[line_index, None] * normal + offset[:, None] * direction
    return line_index, offset, xy.reshape(-1, 2)


def sample_realization(params, window_radius, rng):
    if not window_radius > 0:
        raise ValidationError(f"window_radius must be > 0 (got {window_radius!r})")
    radius = float(window_radius)

    n_other = rng.poisson(2.0 * np.pi * params.lambda_r * radius)
    distance = np.concatenate([[0.0], rng.uniform(0.0, radius, n_other)])
    angle = np.concatenate([[rng.uniform(0.0, np.pi)], rng.uniform(0.0, 2.0 * np.pi, n_other)])

    sbs_line, sbs_offset, sbs_xy = sample_points_on_chords(distance, angle, params.lambda_s, radius, rng)

    n_mbs = rng.poisson(params.lambda_m * np.pi * radius ** 2)
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n_mbs))
    phi = rng.uniform(0.0, 2.0 * np.pi, n_mbs)
    mbs_xy = np.stack([r * np.cos(phi), r * np.sin(phi)], axis=-1).reshape(-1, 2)

    return NetworkRealization(
        line_distance=distance,
        line_angle=angle,
        sbs_line=sbs_line,
        sbs_offset=sbs_offset,
        sbs_xy=sbs_xy,
        mbs_xy=mbs_xy,
        window_radius=radius,
    )
