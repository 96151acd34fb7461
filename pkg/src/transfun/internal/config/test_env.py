import pytest

from transfun.internal.config import Config
from transfun.internal.config.env import EnvParser


def test_defaults(monkeypatch):
    for name in (
        "CHECK_TRIALS",
        "CHECK_TOLERANCE",
        "CHECK_SEED",
        "CHECK_MAX_MASS",
        "CHECK_SEQUENCE_LENGTH",
    ):
        monkeypatch.delenv(name, raising=False)

    cfg = Config().check_config()

    assert cfg.trials == 1000
    assert cfg.tolerance == 1e-9
    assert cfg.seed == 0
    assert cfg.max_mass == 10.0
    assert cfg.sequence_length == 20


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CHECK_TRIALS", "25")
    monkeypatch.setenv("CHECK_TOLERANCE", "1e-6")
    monkeypatch.setenv("CHECK_SEED", "42")

    cfg = Config().check_config()

    assert (cfg.trials, cfg.tolerance, cfg.seed) == (25, 1e-6, 42)


def test_required_fields(monkeypatch):
    class _Env(EnvParser):
        REQUIRED: str
        COUNT: int = 1
        lower: str = "ignored"

    monkeypatch.delenv("REQUIRED", raising=False)
    with pytest.raises(OSError, match="REQUIRED"):
        _Env()

    monkeypatch.setenv("REQUIRED", "here")
    monkeypatch.setenv("COUNT", "3")
    monkeypatch.setenv("lower", "read")
    env = _Env()
    assert (env.REQUIRED, env.COUNT, env.lower) == ("here", 3, "ignored")
    monkeypatch.setenv("COUNT", "many")
    with pytest.raises(ValueError):
        _Env()
