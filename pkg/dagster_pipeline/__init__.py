"""
Dagster pipeline for the roadsignal figure experiments
"""
from dagster import Definitions
from .assets import (
    fig2_validation,
    fig3_interference_models,
    fig4_association_sweep,
    fig5_rat_selection,
    fig6_coverage_sweep,
    fig7_mm_gain,
)

defs = Definitions(
    assets=[
        # Validation
        fig2_validation,
        fig3_interference_models,
        # Sweeps
        fig4_association_sweep,
        fig5_rat_selection,
        fig6_coverage_sweep,
        fig7_mm_gain,
    ],
)
