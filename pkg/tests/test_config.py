import os
from argparse import Namespace
from fractions import Fraction

import pytest

from src.utils.config import DEFAULTS, ENV_PREFIX, CliConfig, load_config, load_setting


@pytest.fixture
def env_file(tmp_path, monkeypatch):
    for name in DEFAULTS:
        monkeypatch.delenv(ENV_PREFIX + name.upper(), raising=False)
    yield tmp_path / ".env"
    for name in DEFAULTS:
        os.environ.pop(ENV_PREFIX + name.upper(), None)


def test_defaults(env_file):
    config = load_config(None, env_file)
    assert config == CliConfig(
        n=2, a=(Fraction(2), Fraction(3)), q=Fraction(1, 2), m=4, bound=3, runs=10000, seed=7, format="json"
    )


def test_flags_win(env_file, monkeypatch):
    monkeypatch.setenv("BERELEQ_SEED", "11")
    config = load_config(Namespace(seed="9", q="0", ascii=True), env_file)
    assert config.seed == 9
    assert config.q == 0
    assert config.ascii_only


def test_environment_beats_defaults(env_file, monkeypatch):
    monkeypatch.setenv("BERELEQ_SEED", "11")
    monkeypatch.setenv("BERELEQ_A", "1/2, 5")
    config = load_config(Namespace(), env_file)
    assert config.seed == 11
    assert config.a == (Fraction(1, 2), Fraction(5))


def test_dotenv_file_fills_gaps_without_overriding(env_file, monkeypatch):
    env_file.write_text("BERELEQ_M=6\nBERELEQ_BOUND=2\n", encoding="utf-8")
    monkeypatch.setenv("BERELEQ_BOUND", "5")
    config = load_config(Namespace(), env_file)
    assert config.m == 6
    assert config.bound == 5
    assert load_setting("m", None, env_file) == "6"


def test_default_weights_follow_n(env_file):
    assert load_config(Namespace(n="1"), env_file).a == (Fraction(2),)
    assert load_config(Namespace(n="3"), env_file).a == (Fraction(2), Fraction(3), Fraction(4))


@pytest.mark.parametrize(
    "namespace, setting",
    [
        (Namespace(q="1"), "BERELEQ_Q"),
        (Namespace(q="-1/2"), "BERELEQ_Q"),
        (Namespace(n="x"), "BERELEQ_N"),
        (Namespace(n="0"), "BERELEQ_N"),
        (Namespace(n="1", a="2,3"), "BERELEQ_A"),
        (Namespace(a="2,0"), "BERELEQ_A"),
        (Namespace(a="2,y"), "BERELEQ_A"),
        (Namespace(m="-1"), "BERELEQ_M"),
        (Namespace(runs="0"), "BERELEQ_RUNS"),
        (Namespace(seed=str(2 ** 64)), "BERELEQ_SEED"),
        (Namespace(format="xml"), "BERELEQ_FORMAT"),
    ],
)
def test_invalid_settings_name_the_variable(env_file, namespace, setting):
    with pytest.raises(ValueError) as excinfo:
        load_config(namespace, env_file)
    assert setting in str(excinfo.value)
