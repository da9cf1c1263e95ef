import os

import pytest

from dpforge.config import ForgeConfig, load_config
from dpforge.errors import ConfigError


@pytest.fixture
def clean_environ(monkeypatch):
    """A private copy of os.environ without any DPFORGE_ settings."""
    environ = {k: v for k, v in os.environ.items() if not k.startswith("DPFORGE_")}
    monkeypatch.setattr(os, "environ", environ)
    return environ


def test_defaults():
    config = load_config(environ={})
    assert config.jobs >= 1
    assert (config.brute_force_cap, config.regular_survey_cap, config.deep_survey_cap, config.hh_survey_cap) == (
        13,
        10,
        13,
        12,
    )
    assert config.log_level == "WARNING"


def test_yaml_file(tmp_path):
    path = tmp_path / "dpforge.yaml"
    path.write_text("jobs: 3\nbrute_force_cap: 9\nlog_level: info\n")
    config = load_config(path, environ={})
    assert (config.jobs, config.brute_force_cap, config.log_level) == (3, 9, "INFO")


def test_layers_override_in_order(tmp_path):
    path = tmp_path / "dpforge.yaml"
    path.write_text("jobs: 3\nbrute_force_cap: 9\n")
    environ = {"DPFORGE_JOBS": "5", "DPFORGE_BRUTE_CAP": "11"}
    config = load_config(path, overrides={"jobs": 7, "log_level": None}, environ=environ)
    assert config.jobs == 7
    assert config.brute_force_cap == 11
    assert config.log_level == "WARNING"


def test_dotenv_file_is_read(tmp_path, monkeypatch, clean_environ):
    (tmp_path / ".env").write_text("DPFORGE_JOBS=4\n")
    monkeypatch.chdir(tmp_path)
    assert load_config().jobs == 4


def test_dotenv_does_not_override_the_environment(tmp_path, monkeypatch, clean_environ):
    (tmp_path / ".env").write_text("DPFORGE_JOBS=4\n")
    clean_environ["DPFORGE_JOBS"] = "2"
    monkeypatch.chdir(tmp_path)
    assert load_config().jobs == 2


@pytest.mark.parametrize(
    "text",
    ["jobs: 0\n", "log_level: loud\n", "colour: blue\n", "- 1\n- 2\n", "jobs: [\n"],
    ids=["zero-jobs", "bad-level", "unknown-key", "not-a-mapping", "bad-yaml"],
)
def test_invalid_files(tmp_path, text):
    path = tmp_path / "dpforge.yaml"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(path, environ={})


def test_invalid_environment():
    with pytest.raises(ConfigError):
        load_config(environ={"DPFORGE_JOBS": "many"})


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.yaml", environ={})


def test_model_validates_directly():
    assert ForgeConfig(jobs=2, log_level="debug").log_level == "DEBUG"
