"""
Monte Carlo estimators for every quantity the analytic engine computes.

Each query maps one realization (or one geometric draw) to a sample; samples are folded into
RunningStats and reported as Estimate(value, stderr, trials). Trial i always uses stream i of the
RngSpec, so estimates do not depend on evaluation order.
"""
import math
from dataclasses import dataclass

import numpy as np

from src.analytic_coverage.spillover import spillover_geometry
from src.core.errors import EmptyWindowError, ValidationError
from src.core.logger_manager import get_logger
from src.model.link_class import ALL_CLASSES, TIER_VISIBILITY_KEYS
from src.model.units import db_to_linear
from src.simulator.association import associate, prefers_mm_wave
from src.simulator.realization import default_window_radius, line_directions, sample_realization
from src.simulator.rng import Estimate, RunningStats
from src.simulator.sinr import InterferenceModel, beam_covers_origin, compute_sinr

log = get_logger("SIMULATOR")

# resampling cap per trial before the window is declared unusable
MAX_RESAMPLES = 1000


# ----------------------------------------------------------------------------
# queries
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class NearestDistanceCDF:
    name: str        # SL, ML, MN or SN
    x: float


@dataclass(frozen=True)
class NearestDistanceSample:
    name: str


@dataclass(frozen=True)
class VoidProbability:
    name: str
    x: float


@dataclass(frozen=True)
class AssociationFreqs:
    """Frequencies of ML, MN, SL_MU, SL_MM, SN followed by the RAT-free ML, MN, SL, SN"""


@dataclass(frozen=True)
class CoverageCurve:
    gamma_db: tuple
    model: InterferenceModel = InterferenceModel.FULL
    serving_class: object = None     # restrict to trials served by this class


@dataclass(frozen=True)
class PgfMean:
    nu: object
    process: str = "cox"     # cox, line or ppp
    d: float = 0.0           # distance of the line from the origin for process="line"


@dataclass(frozen=True)
class SpilloverFreq:
    """Fraction of mm-wave trials whose dominant neighbour beam covers the user"""


@dataclass(frozen=True)
class RatSelectionFreq:
    """Fraction of trials whose nearest LOS SBS would be served on mm-wave"""


ASSOCIATION_LABELS = tuple(c.key for c in ALL_CLASSES) + TIER_VISIBILITY_KEYS


def _nearest(real, name, params):
    """Distance to the nearest point of a RAT-free class, or inf when there is none"""
    if name == "SL":
        d = np.abs(real.los_offsets)
    elif name == "SN":
        d = real.nlos_distances
    elif name in ("ML", "MN"):
        d = real.mbs_distance
    else:
        raise ValidationError(f"unknown nearest-distance class '{name}' (expected SL, ML, MN or SN)")
    return float(d.min()) if d.size else math.inf


def _macro_sample(real, name, params, value):
    """ML uses the nearest MBS only inside D_M; MN is conditioned on an empty LOS ball"""
    nearest = _nearest(real, name, params)
    if name == "ML":
        return value(nearest if nearest < params.d_m else math.inf)
    if nearest < params.d_m:
        return None
    return value(nearest)


def _sample_line(params, d, window_radius, rng):
    """SBS distances on one uniformly oriented line at distance d from the origin"""
    angle = rng.uniform(0.0, 2.0 * np.pi)
    half = math.sqrt(max(window_radius ** 2 - d ** 2, 0.0))
    count = rng.poisson(2.0 * params.lambda_s * half)
    offsets = rng.uniform(-half, half, count)
    normal, direction = line_directions(np.array([angle]))
    xy = d * normal + offsets[:, None] * direction
    return np.hypot(xy[:, 0], xy[:, 1])


def _pgf_sample(query, real, params, rng):
    if query.process == "cox":
        r = real.nlos_distances
    elif query.process == "ppp":
        r = real.mbs_distance
    elif query.process == "line":
        r = _sample_line(params, query.d, real.window_radius, rng)
    else:
        raise ValidationError(f"unknown point process '{query.process}' (expected cox, line or ppp)")
    if r.size == 0:
        return 1.0
    return float(np.prod(np.asarray(query.nu(r), dtype=float)))


def _association_sample(assoc):
    one_hot = np.array([float(assoc.serving_class == c) for c in ALL_CLASSES])
    tiers = np.array([float(assoc.serving_class.tier_visibility == k) for k in TIER_VISIBILITY_KEYS])
    return np.concatenate([one_hot, tiers])


def _associated(params, window_radius, rng, counter):
    """Sample realizations until one has a base station; counter[0] counts the empty ones"""
    for _ in range(MAX_RESAMPLES):
        real = sample_realization(params, window_radius, rng)
        try:
            return real, associate(real, params)
        except EmptyWindowError:
            counter[0] += 1
    raise EmptyWindowError(f"{MAX_RESAMPLES} consecutive empty windows of radius {window_radius:.4g} m")


def _trial_sample(query, params, window_radius, rng, counter):
    if isinstance(query, (NearestDistanceCDF, VoidProbability)):
        real = sample_realization(params, window_radius, rng)
        within = (lambda d: float(d <= query.x)) if isinstance(query, NearestDistanceCDF) else (lambda d: float(d > query.x))
        if query.name in ("ML", "MN"):
            return _macro_sample(real, query.name, params, within)
        return within(_nearest(real, query.name, params))

    if isinstance(query, NearestDistanceSample):
        real = sample_realization(params, window_radius, rng)
        if query.name in ("ML", "MN"):
            return _macro_sample(real, query.name, params, lambda d: d)
        return _nearest(real, query.name, params)

    if isinstance(query, PgfMean):
        return _pgf_sample(query, sample_realization(params, window_radius, rng), params, rng)

    if isinstance(query, RatSelectionFreq):
        nearest = _nearest(sample_realization(params, window_radius, rng), "SL", params)
        if not math.isfinite(nearest):
            return None
        return float(prefers_mm_wave(nearest, params))

    real, assoc = _associated(params, window_radius, rng, counter)
    if isinstance(query, AssociationFreqs):
        return _association_sample(assoc)
    if isinstance(query, SpilloverFreq):
        if not assoc.serving_class.is_mm_wave:
            return None
        return float(compute_sinr(real, assoc, params, rng).spillover_flag)
    if isinstance(query, CoverageCurve):
        if query.serving_class is not None and assoc.serving_class != query.serving_class:
            return None
        outcome = compute_sinr(real, assoc, params, rng)
        thresholds = db_to_linear(np.asarray(query.gamma_db, dtype=float))
        return (outcome.sinr_for(query.model) > thresholds).astype(float)
    raise ValidationError(f"unsupported simulator query {query!r}")


def estimate(query, params, trials, rng_spec, window_radius=None, first_trial=0):
    """
    Estimate of a query over `trials` independent realizations.

    Conditional queries (MN distances, class-restricted coverage, spillover) skip trials
    where the condition fails, so Estimate.trials counts only the contributing ones.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1 (got {trials!r})")
    radius = window_radius or default_window_radius(params)
    stats = RunningStats()
    counter = [0]
    for trial in range(first_trial, first_trial + trials):
        sample = _trial_sample(query, params, radius, rng_spec.generator(trial), counter)
        if sample is not None:
            stats.push(sample)
    if counter[0]:
        log.info(f"{counter[0]} empty windows resampled over {trials} trials")
    return stats.estimate(counter[0])


def sample_nearest_distances(name, params, trials, rng_spec, window_radius=None):
    """Raw nearest-distance draws for distribution tests; infinite and skipped draws are dropped"""
    radius = window_radius or default_window_radius(params)
    query = NearestDistanceSample(name)
    draws = (_trial_sample(query, params, radius, rng_spec.generator(t), [0]) for t in range(trials))
    values = np.array([d for d in draws if d is not None], dtype=float)
    return values[np.isfinite(values)]


def sample_serving_distances(serving_class, params, trials, rng_spec, window_radius=None):
    """Serving distances of the trials associated with serving_class"""
    radius = window_radius or default_window_radius(params)
    counter = [0]
    distances = []
    for trial in range(trials):
        _, assoc = _associated(params, radius, rng_spec.generator(trial), counter)
        if assoc.serving_class == serving_class:
            distances.append(assoc.distance)
    return np.asarray(distances, dtype=float)


def _spillover_trial(params, geometry, rng):
    """One draw of the spillover construction on a fresh road stretch; True when the user is hit"""
    lam_s = params.lambda_s
    # the typical user sits between its serving SBS and the opposite-side neighbour
    serving_gap, neighbour_gap = rng.exponential(1.0 / lam_s, 2)
    x = serving_gap + neighbour_gap
    y = rng.uniform(0.0, x / 2.0)
    users = rng.uniform(0.0, x / 2.0, rng.poisson(params.lambda_ou * x / 2.0))
    next_gap = rng.exponential(1.0 / lam_s)
    if not geometry.d_star < x < geometry.d_hat:
        return False

    # offsets relative to the cell boundary, neighbour SBS on the negative side
    boundary = x / 2.0
    if not beam_covers_origin(-boundary, -boundary + y, params):
        return False
    if not np.any(beam_covers_origin(-boundary, -boundary + users, params)):
        return False

    edge_angle = math.atan(y / params.h) + params.theta / 2.0
    far = params.h * math.tan(edge_angle) if edge_angle < math.pi / 2.0 else math.inf
    return next_gap >= max(x - far, 0.0)


def simulate_spillover(params, trials, rng_spec):
    """
    Monte Carlo of the spillover construction. Per trial: the two SBSs around the user, a
    neighbour user aimed at uniformly in the neighbour's half cell, the neighbour's other users as
    a PPP(lambda_OU), and the gap to the next SBS behind the serving one. The neighbour's beam
    must cross the cell boundary, some user must sit where that happens, and the beam's far edge
    must reach past the next gap. Only the feasible inter-site window [d*, d_hat] is taken from
    the analytic geometry.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1 (got {trials!r})")
    geometry = spillover_geometry(params)
    hits = np.fromiter(
        (_spillover_trial(params, geometry, rng_spec.generator(trial)) for trial in range(trials)),
        dtype=bool, count=trials,
    )
    p = float(hits.mean())
    return Estimate(p, math.sqrt(p * (1.0 - p) / trials), trials)


def estimate_coverage(params, gamma_db, trials, rng_spec, models=(InterferenceModel.FULL,), window_radius=None):
    """
    Coverage curves from one pass over the trials: keys are (model, None) for the overall curve
    and (model, serving class) for the curves conditioned on each class.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1 (got {trials!r})")
    radius = window_radius or default_window_radius(params)
    thresholds = db_to_linear(np.asarray(gamma_db, dtype=float))
    models = tuple(InterferenceModel(m) for m in models)
    stats = {(m, c): RunningStats() for m in models for c in (None,) + ALL_CLASSES}
    counter = [0]
    for trial in range(trials):
        rng = rng_spec.generator(trial)
        real, assoc = _associated(params, radius, rng, counter)
        outcome = compute_sinr(real, assoc, params, rng)
        for model in models:
            covered = (outcome.sinr_for(model) > thresholds).astype(float)
            stats[(model, None)].push(covered)
            stats[(model, assoc.serving_class)].push(covered)
    if counter[0]:
        log.info(f"{counter[0]} empty windows resampled over {trials} trials")
    return {key: s.estimate(counter[0]) for key, s in stats.items()}
