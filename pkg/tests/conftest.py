"""
Shared test fixtures and configuration for pytest
"""
import pytest
import os
import sys

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))


@pytest.fixture
def default_params():
    """SystemParams built from the defaults ledger (also the fig2_validation operating point)"""
    from src.core.config_manager import build_params
    return build_params()


@pytest.fixture
def fig2_params():
    """lambda_S = 0.1 /m, lambda_R = 1e-5 /m^2, everything else at its default"""
    from src.core.config_manager import build_params
    return build_params({'lambda_s_per_km': 100, 'lambda_r_per_km2': 10})


@pytest.fixture
def sparse_params():
    """Light deployment that keeps Monte Carlo realizations small"""
    from src.core.config_manager import build_params
    return build_params({
        'lambda_s_per_km': 10,
        'lambda_r_per_km2': 100,
        'lambda_m_per_km2': 1,
    })


@pytest.fixture
def rng_spec():
    """Fixed master seed for reproducible simulator checks"""
    from src.simulator.rng import RngSpec
    return RngSpec(20180101)


@pytest.fixture
def small_trials():
    """Trial count for quick statistical smoke checks"""
    return 400


@pytest.fixture
def output_dir(tmp_path):
    """Temporary output directory for experiment artifacts"""
    path = tmp_path / 'results'
    path.mkdir()
    return path


@pytest.fixture
def fresh_config_manager():
    """Drop the cached defaults before and after a test"""
    from src.core.config_manager import ConfigManager
    ConfigManager.reset()
    yield ConfigManager
    ConfigManager.reset()


@pytest.fixture
def test_env_vars(monkeypatch, tmp_path):
    """Set test environment variables"""
    monkeypatch.setenv('ROADSIGNAL_OUTPUT_DIR', str(tmp_path / 'env_results'))
    monkeypatch.setenv('ROADSIGNAL_LOG_LEVEL', 'WARNING')
    return tmp_path


@pytest.fixture
def write_config(tmp_path):
    """Write an experiment config dict to a JSON file and return its path"""
    import json

    def _write(data, name='config.json'):
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=4))
        return path
    return _write
