"""
roadsignal command line: run, validate and list the figure experiments

    python -m src.cli.main run src/config/experiments/fig2_validation.json --trials 2000
    python -m src.cli.main validate my_config.json
    python -m src.cli.main list-experiments
"""
import argparse
import os
import sys
import time

# Add project root to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from report_utils.artifact_utils import build_manifest, experiment_dir, write_manifest, write_results_csv
from report_utils.chart_utils import write_chart_svg
from src.cli.config_parser import EXPERIMENT_NAMES, load_config
from src.cli.experiments import RUNNERS, run_experiment
from src.core.config_manager import EXPERIMENTS_DIR, params_to_si_dict
from src.core.errors import RoadSignalError, ValidationError
from src.core.logger_manager import get_logger

log = get_logger("CLI")

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_INVALID = 2


def build_parser():
    parser = argparse.ArgumentParser(prog="roadsignal", description="Road-deployed HetNet coverage experiments")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run an experiment config (or re-run a manifest)")
    run.add_argument("config", help="Path to an experiment config or a run manifest")
    run.add_argument("--seed", type=int, default=None, help="Override the master seed")
    run.add_argument("--trials", type=int, default=None, help="Override the Monte Carlo trial count")
    run.add_argument("--out", default=None, help="Override the output directory")
    engines = run.add_mutually_exclusive_group()
    engines.add_argument("--no-sim", action="store_true", help="Analytic engine only")
    engines.add_argument("--no-analytic", action="store_true", help="Simulator only")

    validate = commands.add_parser("validate", help="Validate a config and print the resolved parameters")
    validate.add_argument("config", help="Path to an experiment config")

    commands.add_parser("list-experiments", help="List the available experiments")
    return parser


def execute_run(config, warnings=(), analytic=True, simulate=True):
    """Run one experiment and write its CSV, SVG chart and manifest; returns the artifact paths"""
    log.info(f"Running {config.experiment} (seed={config.seed}, trials={config.trials})")
    started = time.perf_counter()
    results = run_experiment(config, analytic=analytic, simulate=simulate)
    out = experiment_dir(config.output_dir, config.experiment)
    artifacts = {"csv": write_results_csv(results, out / f"{config.experiment}.csv")}
    try:
        write_chart_svg(artifacts["csv"], config.experiment, out / f"{config.experiment}.svg")
        artifacts["svg"] = out / f"{config.experiment}.svg"
    except Exception as e:
        log.error(f"Chart rendering failed for {config.experiment}: {e}")
    wall_time = time.perf_counter() - started

    manifest = build_manifest(
        config.to_dict(),
        config.human_params(),
        params_to_si_dict(config.system_params()),
        wall_time,
        artifacts,
        warnings,
    )
    artifacts["manifest"] = write_manifest(manifest, out / "manifest.json")
    log.info(f"{config.experiment} finished in {wall_time:.1f}s; {len(results)} rows written to {out}")
    return artifacts


def cmd_run(args):
    config, warnings = load_config(args.config)
    config = config.with_overrides(seed=args.seed, trials=args.trials, output_dir=args.out)
    execute_run(config, warnings, analytic=not args.no_analytic, simulate=not args.no_sim)
    return EXIT_OK


def cmd_validate(args):
    config, warnings = load_config(args.config)
    print(f"{args.config}: valid {config.experiment} config")
    for note in warnings:
        print(f"warning: {note}")
    for key, value in sorted(config.human_params().items()):
        print(f"  {key} = {value}")
    return EXIT_OK


def cmd_list_experiments(args):
    for name in EXPERIMENT_NAMES:
        doc = (RUNNERS[name].__doc__ or "").strip().splitlines()[0]
        default = EXPERIMENTS_DIR / f"{name}.json"
        suffix = f"  [{default.relative_to(EXPERIMENTS_DIR.parent.parent.parent)}]" if default.exists() else ""
        print(f"{name:28s} {doc}{suffix}")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "validate": cmd_validate, "list-experiments": cmd_list_experiments}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValidationError as e:
        for message in e.errors:
            log.error(message)
            print(f"error: {message}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as e:
        log.error(f"File not found: {e.filename}")
        print(f"error: file not found: {e.filename}", file=sys.stderr)
        return EXIT_INVALID
    except RoadSignalError as e:
        log.error(f"Experiment aborted: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
