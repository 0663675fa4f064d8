#!/usr/bin/env python3
"""
Tests for GhostRing installation, configuration and shared infrastructure.
"""

import importlib
import logging
from pathlib import Path

import psutil
import pytest
import toml

from ghostring import Config, __version__, setup_logging
from ghostring.core.config import LoggingConfig, RunConfig
from ghostring.core.logger import level_from_name
from ghostring.core.parallel import parallel_map, resolve_workers
from ghostring.core.seeds import derive_rng
from ghostring.report import Report, to_jsonable

EXAMPLE_CONFIG = Path(__file__).parent / "config.toml.example"


@pytest.mark.parametrize("module", ["numpy", "toml", "click", "psutil"])
def test_imports(module):
    """Every required module can be imported."""
    importlib.import_module(module)


def test_version():
    assert __version__ == "1.0.0"


def test_default_config_is_valid():
    config = Config()
    assert config.validate()
    assert config.homs.window == "-1:1"
    assert config.sindi.mode == "exhaustive"


def test_example_config_file():
    config_data = toml.load(EXAMPLE_CONFIG)
    for section in ['execution', 'closure', 'claim', 'homs', 'ghost', 'sindi', 'logging']:
        assert section in config_data
    config = Config.load(EXAMPLE_CONFIG)
    assert config.to_dict() == Config().to_dict()


@pytest.mark.parametrize("data", [
    {"claim": {"range": "6:-6"}},
    {"homs": {"budget": 0}},
    {"execution": {"workers": -1}},
    {"sindi": {"mode": "sideways"}},
    {"sindi": {"dim": 2}},
    {"ghost": {"subset_size": 0}},
    {"sindi": {"unknown": 1}},
    {"sindi": 4},
    {"closure": {"cap": "big"}},
    {"execution": {"seed": True}},
    {"claim": {"witness_indices": ["a"]}},
    {"logging": {"level": 10}},
])
def test_invalid_config(data):
    with pytest.raises(ValueError):
        Config.from_dict(data).validate()


def test_unreadable_config(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("[sindi\n")
    with pytest.raises(ValueError):
        Config.from_file(path)


def test_run_config_checks():
    with pytest.raises(ValueError):
        RunConfig("sindi", workers=0)
    with pytest.raises(ValueError):
        RunConfig("sindi", budget=-1)


def test_logging_to_file(tmp_path):
    log_file = tmp_path / "logs" / "ghostring.log"
    setup_logging(LoggingConfig(level="DEBUG", file=str(log_file)), logging.DEBUG)
    logging.getLogger("ghostring.test").info("hello from the test suite")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "hello from the test suite" in log_file.read_text()
    setup_logging(LoggingConfig())


def test_level_from_name():
    assert level_from_name("warning") == logging.WARNING
    assert level_from_name("nonsense") == logging.INFO
    assert level_from_name("ERROR", verbose=True) == logging.DEBUG


def test_named_streams():
    a = derive_rng(42, "claim/sums/0").integers(0, 1 << 30, size=5)
    b = derive_rng(42, "claim/sums/0").integers(0, 1 << 30, size=5)
    c = derive_rng(42, "claim/sums/1").integers(0, 1 << 30, size=5)
    assert list(a) == list(b)
    assert list(a) != list(c)


def test_parallel_map_preserves_order():
    items = list(range(-20, 20))
    assert parallel_map(abs, items, workers=2) == [abs(x) for x in items]
    assert resolve_workers(Config().execution.workers) == (psutil.cpu_count(logical=False) or psutil.cpu_count() or 1)
    assert resolve_workers(0) >= 1
    assert resolve_workers(3) == 3


def test_report():
    report = Report("demo")
    report.check("fine", True)
    report.record("count", 3)
    assert report.passed
    other = Report("inner", budget_exhausted=True)
    other.check("broken", False, {"x": (1, 2)})
    other.data["note"] = "kept"
    report.merge(other, prefix="inner.")
    assert not report.passed
    assert report.budget_exhausted
    assert report.counterexamples == [{"check": "inner.broken", "counterexample": {"x": [1, 2]}}]
    data = report.to_dict(include_timings=False)
    assert "timings" not in data
    assert data["checks"] == {"fine": True, "count": 3, "inner.broken": False}
    assert data["data"] == {"inner.note": "kept"}
    assert report.summary_lines()[0] == "demo: FAIL"


def test_to_jsonable():
    import numpy as np
    assert to_jsonable({1: np.int64(3), "s": {2, 1}}) == {"1": 3, "s": [1, 2]}
    assert to_jsonable(np.bool_(True)) is True
