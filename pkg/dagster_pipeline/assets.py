"""
Dagster assets for the roadsignal figure experiments
"""
from dagster import asset, AssetExecutionContext, Output, MetadataValue
import sys
import os

# Add project root to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.cli.config_parser import load_config
from src.cli.main import execute_run
from src.core.config_manager import EXPERIMENTS_DIR


def run_figure(context, experiment):
    """Run the default config of one figure experiment and describe its artifacts"""
    config, warnings = load_config(EXPERIMENTS_DIR / f"{experiment}.json")
    output_dir = os.getenv("ROADSIGNAL_OUTPUT_DIR")
    if output_dir:
        config = config.with_overrides(output_dir=output_dir)
    context.log.info(f"Running {experiment} with {config.trials} trials (seed {config.seed})...")
    artifacts = execute_run(config, warnings)

    return Output(
        None,
        metadata={
            "experiment": MetadataValue.text(experiment),
            "trials": MetadataValue.int(config.trials),
            "seed": MetadataValue.int(config.seed),
            "csv": MetadataValue.path(str(artifacts["csv"])),
            "manifest": MetadataValue.path(str(artifacts["manifest"])),
            "warnings": MetadataValue.int(len(warnings)),
        }
    )


# ============================================================================
# VALIDATION: analytic engine against the simulator
# ============================================================================

@asset(group_name="validation")
def fig2_validation(context: AssetExecutionContext) -> Output[None]:
    """Overall and per-class coverage, analytic against full Monte Carlo"""
    return run_figure(context, "fig2_validation")


@asset(group_name="validation")
def fig3_interference_models(context: AssetExecutionContext) -> Output[None]:
    """mm-wave coverage under the full, dominant-interferer and noise-limited models"""
    return run_figure(context, "fig3_interference_models")


# ============================================================================
# SWEEPS: association, RAT selection and coverage trends
# ============================================================================

@asset(group_name="sweeps")
def fig4_association_sweep(context: AssetExecutionContext) -> Output[None]:
    """Tier association probabilities across road and SBS densities"""
    return run_figure(context, "fig4_association_sweep")


@asset(group_name="sweeps")
def fig5_rat_selection(context: AssetExecutionContext) -> Output[None]:
    """mm-wave selection probability across SBS density and antenna gain"""
    return run_figure(context, "fig5_rat_selection")


@asset(group_name="sweeps")
def fig6_coverage_sweep(context: AssetExecutionContext) -> Output[None]:
    """Overall coverage across road and SBS densities"""
    return run_figure(context, "fig6_coverage_sweep")


@asset(group_name="sweeps")
def fig7_mm_gain(context: AssetExecutionContext) -> Output[None]:
    """Overall coverage across SBS density for two mm-wave antenna gains"""
    return run_figure(context, "fig7_mm_gain")
