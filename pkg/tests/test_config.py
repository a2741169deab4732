"""
COLOR ALGEBRA ENGINE - CONFIG TESTS
===================================
Run with: pytest tests/test_config.py -v
"""

import json
import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config_loader import ENV_OVERRIDES, EngineConfig, get_config, load_config, load_config_or_default
from errors import ConfigError

EXAMPLE = Path(__file__).parent.parent / "config" / "engine.example.json"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in list(ENV_OVERRIDES) + ["COLORLIE_CONFIG"]:
        monkeypatch.delenv(var, raising=False)


def write_config(tmp_path, data) -> str:
    path = tmp_path / "engine.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestEngineConfig:

    def test_defaults(self):
        cfg = EngineConfig()
        assert cfg.budget == 200000
        assert cfg.seed == 1729
        assert cfg.lambda_multiplicity == 3
        assert cfg.log_level == "WARNING"

    def test_example_file_matches_defaults(self):
        assert load_config(str(EXAMPLE)) == EngineConfig()

    def test_strings_are_coerced(self):
        cfg = EngineConfig.from_dict({"budget": "500", "log_level": "debug", "_comment": "x"})
        assert cfg.budget == 500
        assert cfg.log_level == "DEBUG"

    @pytest.mark.parametrize("data", [
        {"budget": 0},
        {"budget": "lots"},
        {"lambda_multiplicity": 0},
        {"lambda_multiplicity": 2},
        {"max_counterexamples": 0},
        {"log_level": "LOUD"},
    ])
    def test_invalid_values(self, data):
        with pytest.raises(ConfigError):
            EngineConfig.from_dict(data)

    def test_to_dict(self):
        assert EngineConfig(seed=5).to_dict()["seed"] == 5


class TestLoading:

    def test_file_values(self, tmp_path):
        cfg = load_config(write_config(tmp_path, {"budget": 1000, "seed": 7}))
        assert (cfg.budget, cfg.seed) == (1000, 7)

    def test_environment_overrides_file(self, tmp_path, monkeypatch):
        path = write_config(tmp_path, {"budget": 1000, "seed": 7})
        monkeypatch.setenv("COLORLIE_BUDGET", "250")
        monkeypatch.setenv("COLORLIE_SEED", "99")
        monkeypatch.setenv("COLORLIE_LOG_LEVEL", "info")
        cfg = load_config(path)
        assert (cfg.budget, cfg.seed, cfg.log_level) == (250, 99, "INFO")

    def test_config_path_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("COLORLIE_CONFIG", write_config(tmp_path, {"seed": 3}))
        assert load_config().seed == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(str(tmp_path / "absent.json"))

    def test_missing_file_falls_back_to_defaults(self, tmp_path, monkeypatch):
        monkeypatch.setenv("COLORLIE_SEED", "12")
        cfg = load_config_or_default(str(tmp_path / "absent.json"))
        assert cfg.seed == 12
        assert cfg.budget == EngineConfig().budget
        assert get_config(str(tmp_path / "absent.json")) == cfg

    def test_not_json(self, tmp_path):
        path = tmp_path / "engine.json"
        path.write_text("{budget: 1", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_not_an_object(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write_config(tmp_path, [1, 2]))
