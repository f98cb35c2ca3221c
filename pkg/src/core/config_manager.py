"""
Loads the versioned defaults ledger and turns human-unit parameter trees into SystemParams
"""
import copy
import json
import math
import os
from pathlib import Path

from dotenv import load_dotenv

from src.core.errors import ValidationError
from src.core.logger_manager import get_logger
from src.model.link_class import ALL_CLASSES
from src.model.params import SystemParams
from src.model.units import db_to_linear, dbm_to_watts, noise_power_watts, per_km2_to_per_m2, per_km_to_per_m

log = get_logger("CONFIG")

CONFIG_DIR = Path(__file__).parent.parent / "config"
DEFAULTS_FILE = CONFIG_DIR / "system_defaults.json"
EXPERIMENTS_DIR = CONFIG_DIR / "experiments"

CLASS_KEYS = tuple(c.key for c in ALL_CLASSES)
SCALAR_PARAM_KEYS = (
    "lambda_m_per_km2", "lambda_r_per_km2", "lambda_s_per_km", "lambda_ou_per_km", "d_m_m",
    "p_tx_macro_dbm", "p_tx_small_dbm", "g0_db", "theta_deg", "h_m",
    "bandwidth_mu_hz", "bandwidth_mm_hz", "noise_figure_db", "nakagami_m",
)
CLASS_PARAM_KEYS = ("path_loss_intercept_db", "alpha")
# parameters that must be strictly positive in human units
POSITIVE_KEYS = (
    "lambda_m_per_km2", "lambda_r_per_km2", "lambda_s_per_km", "lambda_ou_per_km", "d_m_m",
    "h_m", "bandwidth_mu_hz", "bandwidth_mm_hz", "nakagami_m", "theta_deg",
)


def load_json_config(filepath):
    """Load a JSON config file"""
    with open(filepath, 'r') as f:
        return json.load(f)


def save_json_config(filepath, data):
    """Save data to a JSON config file"""
    with open(filepath, 'w') as f:
        json.dump(data, f, indent=4, sort_keys=True)
        f.write("\n")


class ConfigManager:
    _defaults = None

    @classmethod
    def get_defaults(cls):
        if cls._defaults is None:
            load_dotenv()
            path = Path(os.getenv("ROADSIGNAL_DEFAULTS_FILE", DEFAULTS_FILE))
            try:
                cls._defaults = load_json_config(path)
            except FileNotFoundError:
                log.error(f"Defaults file not found: {path}")
                raise
            except json.JSONDecodeError as e:
                log.error(f"Defaults file {path} is not valid JSON: {e}")
                raise
            log.info(f"Loaded defaults version {cls._defaults.get('version')} from {path.name}")
        return copy.deepcopy(cls._defaults)

    @classmethod
    def reset(cls):
        cls._defaults = None

    @classmethod
    def default_human_params(cls):
        return cls.get_defaults()["params"]

    @classmethod
    def default_run_settings(cls):
        settings = cls.get_defaults()["run"]
        settings["output_dir"] = os.getenv("ROADSIGNAL_OUTPUT_DIR", settings["output_dir"])
        return settings


def merge_human_params(overrides, base=None):
    """Overlay a (possibly partial) human-unit parameter tree on the defaults; returns (tree, errors)"""
    merged = copy.deepcopy(base if base is not None else ConfigManager.default_human_params())
    errors = []
    for key, value in (overrides or {}).items():
        if key in CLASS_PARAM_KEYS:
            if not isinstance(value, dict):
                errors.append(f"params.{key}: expected an object keyed by link class")
                continue
            for cls_key, cls_value in value.items():
                if cls_key not in CLASS_KEYS:
                    errors.append(f"params.{key}.{cls_key}: unknown link class (expected one of {list(CLASS_KEYS)})")
                elif not is_number(cls_value):
                    errors.append(f"params.{key}.{cls_key}: expected a number (got {cls_value!r})")
                else:
                    merged[key][cls_key] = cls_value
        elif key in SCALAR_PARAM_KEYS:
            if not is_number(value):
                errors.append(f"params.{key}: expected a number (got {value!r})")
            else:
                merged[key] = value
        else:
            errors.append(f"params.{key}: unknown parameter")
    for key in POSITIVE_KEYS:
        if key in merged and is_number(merged[key]) and not merged[key] > 0:
            errors.append(f"params.{key}: must be > 0 (got {merged[key]!r})")
    if is_number(merged.get("theta_deg")) and not merged["theta_deg"] < 180:
        errors.append(f"params.theta_deg: must be < 180 (got {merged['theta_deg']!r})")
    if is_number(merged.get("nakagami_m")) and int(merged["nakagami_m"]) != merged["nakagami_m"]:
        errors.append(f"params.nakagami_m: must be an integer (got {merged['nakagami_m']!r})")
    return merged, errors


def params_from_human(human):
    """Convert a complete human-unit tree (dBm, dB, /km^2, /km, degrees) into SI SystemParams"""
    try:
        return SystemParams(
            lambda_m=per_km2_to_per_m2(human["lambda_m_per_km2"]),
            lambda_r=per_km2_to_per_m2(human["lambda_r_per_km2"]),
            lambda_s=per_km_to_per_m(human["lambda_s_per_km"]),
            lambda_ou=per_km_to_per_m(human["lambda_ou_per_km"]),
            d_m=float(human["d_m_m"]),
            p_tx_macro=float(dbm_to_watts(human["p_tx_macro_dbm"])),
            p_tx_small=float(dbm_to_watts(human["p_tx_small_dbm"])),
            k={c: float(db_to_linear(-human["path_loss_intercept_db"][c])) for c in CLASS_KEYS},
            alpha={c: float(human["alpha"][c]) for c in CLASS_KEYS},
            g0=float(db_to_linear(human["g0_db"])),
            theta=math.radians(human["theta_deg"]),
            h=float(human["h_m"]),
            noise_mu=noise_power_watts(human["bandwidth_mu_hz"], human["noise_figure_db"]),
            noise_mm=noise_power_watts(human["bandwidth_mm_hz"], human["noise_figure_db"]),
            nakagami_m=int(human["nakagami_m"]),
        )
    except KeyError as e:
        raise ValidationError(f"params.{e.args[0]}: missing")


def build_params(overrides=None):
    """Defaults + overrides -> SystemParams; raises ValidationError with every problem found"""
    human, errors = merge_human_params(overrides)
    if errors:
        raise ValidationError(errors)
    return params_from_human(human)


def params_to_si_dict(params):
    """Flat JSON-friendly view of SystemParams for manifests"""
    return {
        "lambda_m": params.lambda_m, "lambda_r": params.lambda_r, "lambda_s": params.lambda_s,
        "lambda_ou": params.lambda_ou, "d_m": params.d_m,
        "p_tx_macro": params.p_tx_macro, "p_tx_small": params.p_tx_small,
        "k": {c.key: v for c, v in params.k.items()},
        "alpha": {c.key: v for c, v in params.alpha.items()},
        "g0": params.g0, "theta": params.theta, "h": params.h,
        "noise_mu": params.noise_mu, "noise_mm": params.noise_mm, "nakagami_m": params.nakagami_m,
    }


def is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)
