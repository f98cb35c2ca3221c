from .nearest_distance import (
    NearestDistanceLaw,
    los_sbs_nearest_cdf,
    los_sbs_nearest_pdf,
    macro_nearest_cdfs,
    macro_nearest_pdfs,
    macro_void_probability,
    nearest_distance_law,
    nlos_chord_integral,
    nlos_nearest_cdf,
    nlos_nearest_pdf,
    nlos_void_probability,
)
from .pgf import (
    IndicatorBeyond,
    InterferenceFactor,
    RadialFunction,
    check_admissible,
    cox_pgf,
    line_pgf,
    ppp_pgfl_annulus,
)
