from .association import (
    AssociationReport,
    TierProbabilities,
    association_report,
    class_density,
    class_probability,
    exclusion_radii,
    macro_exclusion_bounds,
    macro_exclusion_radius,
    mmwave_region,
    mmwave_selection_probability,
    mmwave_threshold_distance,
    tier_probabilities,
)
from .overall import CoverageCurve, coverage_curve_for_class, enforce_nonincreasing, mix_coverage, overall_coverage
from .serving_distance import expect_over_serving_distance, serving_distance_pdf, serving_mass, serving_support
from .sinr_coverage import (
    alzer_scale,
    mu_wave_coverage_at,
    neighbour_interference_laplace,
    road_interference_integral,
    road_laplace,
    sinr_coverage,
    sinr_coverage_mm,
    sinr_coverage_mu,
    spillover_interference_factor,
)
from .spillover import SpilloverGeometry, spillover_geometry, spillover_probability
