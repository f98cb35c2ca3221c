from .quadrature import DEFAULT_SPEC, ImproperResult, QuadratureSpec, Rule, integrate, integrate_improper, nodes_and_weights
from .series import (
    DEFAULT_SERIES_TERMS,
    SeriesResult,
    direct_kernel_integral,
    exp_series_integral,
    exp_series_kernel,
    kernel_integral,
)
