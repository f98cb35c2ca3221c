"""
Experiment configuration: JSON documents validated in full, every problem reported at once
"""
import json
from dataclasses import asdict, dataclass, field

from src.core.config_manager import (
    CLASS_KEYS,
    CLASS_PARAM_KEYS,
    SCALAR_PARAM_KEYS,
    ConfigManager,
    is_number,
    merge_human_params,
    params_from_human,
)
from src.core.errors import ValidationError
from src.core.logger_manager import get_logger
from src.simulator.sinr import InterferenceModel

log = get_logger("CONFIG")

EXPERIMENT_NAMES = (
    "fig2_validation",
    "fig3_interference_models",
    "fig4_association_sweep",
    "fig5_rat_selection",
    "fig6_coverage_sweep",
    "fig7_mm_gain",
    "custom",
)
CONFIG_KEYS = (
    "experiment", "params", "sweep", "gamma_db", "trials", "seed", "output_dir",
    "window_radius_m", "interference_models", "association_method",
)
ASSOCIATION_METHODS = ("joint", "comparison_product")


@dataclass(frozen=True)
class SweepAxis:
    parameter: str
    grid: tuple


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    params: dict = field(default_factory=dict)
    sweep: tuple = ()
    gamma_db: tuple = ()
    trials: int = 10000
    seed: int = 0
    output_dir: str = "results"
    window_radius_m: float = None
    interference_models: tuple = tuple(m.value for m in InterferenceModel)
    association_method: str = "joint"

    def to_dict(self):
        data = asdict(self)
        data["sweep"] = [{"parameter": a.parameter, "grid": list(a.grid)} for a in self.sweep]
        data["gamma_db"] = list(self.gamma_db)
        data["interference_models"] = list(self.interference_models)
        return data

    def with_overrides(self, **changes):
        data = self.to_dict()
        data.update({k: v for k, v in changes.items() if v is not None})
        config, _ = validate_config(json.dumps(data))
        return config

    def human_params(self, point=None):
        """Human-unit parameter tree for one sweep point {parameter: value}"""
        overrides = json.loads(json.dumps(self.params))
        for name, value in (point or {}).items():
            apply_sweep_value(overrides, name, value)
        human, errors = merge_human_params(overrides)
        if errors:
            raise ValidationError(errors)
        return human

    def system_params(self, point=None):
        return params_from_human(self.human_params(point))


def apply_sweep_value(overrides, name, value):
    if "." in name:
        group, cls_key = name.split(".", 1)
        overrides.setdefault(group, {})[cls_key] = value
    else:
        overrides[name] = value


def is_sweepable(name):
    if name in SCALAR_PARAM_KEYS:
        return True
    if "." in name:
        group, cls_key = name.split(".", 1)
        return group in CLASS_PARAM_KEYS and cls_key in CLASS_KEYS
    return False


def _check_grid(path, grid, errors):
    if not isinstance(grid, list) or not grid:
        errors.append(f"{path}: must be a non-empty list of numbers")
        return None
    if not all(is_number(v) for v in grid):
        errors.append(f"{path}: every entry must be a finite number")
        return None
    if any(b <= a for a, b in zip(grid, grid[1:])):
        errors.append(f"{path}: must be sorted in strictly increasing order")
        return None
    return tuple(float(v) for v in grid)


def _check_int(path, value, minimum, errors):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        errors.append(f"{path}: must be an integer >= {minimum} (got {value!r})")
        return None
    return value


def _parse_json(text, source):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}")


def validate_config(text, source="<config>"):
    """
    Parse and validate an experiment config. Returns (ExperimentConfig, warnings); raises
    ValidationError carrying every problem found.
    """
    raw = _parse_json(text, source)
    if not isinstance(raw, dict):
        raise ValidationError(f"{source}: top level must be a JSON object")
    errors, warnings = [], []
    run = ConfigManager.default_run_settings()

    for key in raw:
        if key not in CONFIG_KEYS:
            errors.append(f"{key}: unknown key (expected one of {list(CONFIG_KEYS)})")

    experiment = raw.get("experiment")
    if experiment not in EXPERIMENT_NAMES:
        errors.append(f"experiment: must be one of {list(EXPERIMENT_NAMES)} (got {experiment!r})")

    params = raw.get("params", {})
    if not isinstance(params, dict):
        errors.append("params: must be an object")
        params = {}
    human, param_errors = merge_human_params(params)
    errors.extend(param_errors)

    sweep = []
    raw_sweep = raw.get("sweep", [])
    if not isinstance(raw_sweep, list):
        errors.append("sweep: must be a list of {parameter, grid} objects")
        raw_sweep = []
    seen = set()
    for i, axis in enumerate(raw_sweep):
        path = f"sweep[{i}]"
        if not isinstance(axis, dict) or set(axis) != {"parameter", "grid"}:
            errors.append(f"{path}: must be an object with exactly the keys 'parameter' and 'grid'")
            continue
        name = axis["parameter"]
        if not isinstance(name, str) or not is_sweepable(name):
            errors.append(f"{path}.parameter: unknown parameter {name!r}")
            continue
        if name in seen:
            errors.append(f"{path}.parameter: {name} is swept twice")
        seen.add(name)
        grid = _check_grid(f"{path}.grid", axis["grid"], errors)
        if grid is not None:
            for value in grid:
                candidate = json.loads(json.dumps(params))
                apply_sweep_value(candidate, name, value)
                errors.extend(f"{path}.grid ({value:g}): {msg}" for msg in merge_human_params(candidate)[1])
            sweep.append(SweepAxis(name, grid))

    gamma_db = _check_grid("gamma_db", raw.get("gamma_db", run["gamma_db"]), errors) or ()
    trials = _check_int("trials", raw.get("trials", run["trials"]), 1, errors)
    seed = _check_int("seed", raw.get("seed", run["seed"]), 0, errors)

    output_dir = raw.get("output_dir", run["output_dir"])
    if not isinstance(output_dir, str) or not output_dir:
        errors.append("output_dir: must be a non-empty string")

    window = raw.get("window_radius_m")
    if window is not None and not (is_number(window) and window > 0):
        errors.append(f"window_radius_m: must be a number > 0 (got {window!r})")

    models = raw.get("interference_models", [m.value for m in InterferenceModel])
    valid_models = [m.value for m in InterferenceModel]
    if not isinstance(models, list) or not models or any(m not in valid_models for m in models):
        errors.append(f"interference_models: must be a non-empty list drawn from {valid_models}")
        models = valid_models

    method = raw.get("association_method", "joint")
    if method not in ASSOCIATION_METHODS:
        errors.append(f"association_method: must be one of {list(ASSOCIATION_METHODS)} (got {method!r})")

    if not param_errors:
        try:
            warnings.extend(params_from_human(human).warnings())
        except ValidationError as e:
            errors.extend(f"params: {msg}" for msg in e.errors)

    if errors:
        log.error(f"{source}: {len(errors)} configuration error(s)")
        raise ValidationError(errors)
    for note in warnings:
        log.warning(f"{source}: {note}")

    config = ExperimentConfig(
        experiment=experiment,
        params=params,
        sweep=tuple(sweep),
        gamma_db=gamma_db,
        trials=trials,
        seed=seed,
        output_dir=output_dir,
        window_radius_m=float(window) if window is not None else None,
        interference_models=tuple(models),
        association_method=method,
    )
    return config, warnings


def load_config(path):
    """Read a config file, or the config embedded in a run manifest"""
    with open(path, "r") as f:
        text = f.read()
    raw = _parse_json(text, str(path))
    if isinstance(raw, dict) and "manifest_version" in raw:
        log.info(f"Re-running from manifest {path}")
        text = json.dumps(raw.get("config", {}))
    return validate_config(text, str(path))
