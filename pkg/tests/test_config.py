from fractions import Fraction

import pytest

from ffdioph import ConfigError
from ffdioph.config import ExperimentConfig


def test_defaults():
    cfg = ExperimentConfig.from_dict({})
    assert cfg.suite == "estimate"
    assert (cfg.m, cfg.n) == (1, 1)
    assert cfg.eta == Fraction(1)
    assert cfg.tau is None


def test_rational_parsing():
    cfg = ExperimentConfig.from_dict({"eta": "3/2", "tau": "1/16"})
    assert cfg.eta == Fraction(3, 2)
    assert cfg.tau == Fraction(1, 16)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"bogus": 1})


def test_floor_invariant():
    ExperimentConfig.from_dict({"T_max": 10, "floor": -20})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"T_max": 10, "floor": -19})


def test_eta_bound():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"eta": "1/2"})


def test_bad_field_spec():
    with pytest.raises(Exception):
        ExperimentConfig.from_dict({"field": "p=4"})


def test_limsup_needs_row_or_column():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"suite": "limsup", "dims": [2, 2]})


def test_echo_excludes_workers():
    cfg = ExperimentConfig.from_dict({"workers": 8, "seed": 3})
    echo = cfg.echo_dict()
    assert "workers" not in echo
    assert echo["seed"] == 3


def test_replace_roundtrip():
    cfg = ExperimentConfig.from_dict({"seed": 1, "T_max": 12, "floor": -30})
    cfg2 = cfg.replace(seed=2)
    assert cfg2.seed == 2 and cfg2.T_max == 12 and cfg2.workers == cfg.workers


def test_from_json_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"seed": 5}')
    assert ExperimentConfig.from_json_file(p).seed == 5
    p.write_text("{nope")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json_file(p)
