"""
Artifact writers: results CSV, run manifest and the output directory layout
"""
import json
import platform
from importlib import metadata
from pathlib import Path

MANIFEST_VERSION = "1.0"
CSV_FLOAT_FORMAT = "%.10g"
TRACKED_PACKAGES = ("numpy", "scipy", "pandas", "plotly", "kaleido")


def experiment_dir(output_dir, experiment):
    """Create (if needed) and return <output_dir>/<experiment>"""
    path = Path(output_dir) / experiment
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_results_csv(data, path):
    """Write a results frame as CSV with a fixed float format, so equal results give equal bytes"""
    data.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return Path(path)


def package_versions():
    """Installed versions of the numeric stack, None where a package is missing"""
    versions = {"python": platform.python_version()}
    for name in TRACKED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


def build_manifest(config, human_params, si_params, wall_time_s, artifacts, warnings=()):
    """
    Manifest of one run: everything needed to re-run it (the config) plus provenance
    """
    return {
        "manifest_version": MANIFEST_VERSION,
        "experiment": config["experiment"],
        "config": config,
        "seed": config["seed"],
        "trials": config["trials"],
        "params_human": human_params,
        "params_si": si_params,
        "warnings": list(warnings),
        "versions": package_versions(),
        "wall_time_s": round(float(wall_time_s), 3),
        "artifacts": {k: str(v) for k, v in artifacts.items()},
    }


def write_manifest(manifest, path):
    """Save the manifest as indented JSON"""
    with open(path, 'w') as f:
        json.dump(manifest, f, indent=4, sort_keys=True)
        f.write("\n")
    return Path(path)
