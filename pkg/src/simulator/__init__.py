from .association import Association, associate, prefers_mm_wave
from .estimator import (
    ASSOCIATION_LABELS,
    AssociationFreqs,
    CoverageCurve,
    NearestDistanceCDF,
    NearestDistanceSample,
    PgfMean,
    RatSelectionFreq,
    SpilloverFreq,
    VoidProbability,
    estimate,
    estimate_coverage,
    sample_nearest_distances,
    sample_serving_distances,
    simulate_spillover,
)
from .realization import NetworkRealization, default_window_radius, sample_realization
from .rng import Estimate, RngSpec, RunningStats
from .sinr import InterferenceModel, TrialOutcome, beam_covers_origin, compute_sinr
