"""
Settings Loader
Resolves command-line settings from flags, BERELEQ_* environment variables
and an optional .env file, in that order of priority.
"""

import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

# Ensure project root is in Python path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

try:
    from dotenv import load_dotenv
except ImportError:
    load_dotenv = None

from src.combinatorics.exact import to_scalar

# --- CONFIGURATION ---
ENV_PREFIX = "BERELEQ_"
DEFAULT_ENV_FILE = project_root / ".env"
DEFAULTS = {
    "n": "2",
    "a": "2,3",
    "q": "1/2",
    "m": "4",
    "bound": "3",
    "runs": "10000",
    "seed": "7",
    "format": "json",
}
FORMATS = ("json", "text")


def load_setting(name: str, default: Optional[str] = None, env_file: Path = DEFAULT_ENV_FILE) -> Optional[str]:
    """
    Load one setting from the environment, reading a .env file first if present.

    Priority:
    1. Environment variable BERELEQ_<NAME>
    2. .env file in project root (never overrides the environment)
    3. default

    Args:
        name: Setting name, e.g. "seed"
        default: Value used when neither source has it
        env_file: Path to .env file (default: .env in project root)

    Returns:
        The raw string value, or default
    """
    if load_dotenv:
        env_path = Path(env_file)
        if env_path.exists():
            load_dotenv(env_path, override=False)

    value = os.getenv(ENV_PREFIX + name.upper())
    if value is None or value.strip() == "":
        return default
    return value.strip()


def _invalid(name: str, message: str) -> ValueError:
    env_name = ENV_PREFIX + name.upper()
    return ValueError(
        f"Invalid {name} setting: {message}\n"
        f"Pass it on the command line:\n"
        f"--{name} <value>\n"
        f"\nAlternatively, set the environment variable or a .env entry:\n"
        f"PowerShell: $env:{env_name} = '<value>'\n"
        f"Bash: export {env_name}='<value>'"
    )


def _parse_int(name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise _invalid(name, f"expected an integer, got {raw!r}") from None


def _parse_scalar(name: str, raw: str) -> Fraction:
    try:
        return to_scalar(raw)
    except ValueError:
        raise _invalid(name, f"expected an exact rational such as 1/2, got {raw!r}") from None


@dataclass(frozen=True)
class CliConfig:
    n: int
    a: tuple[Fraction, ...]
    q: Fraction
    m: int
    bound: int
    runs: int
    seed: int
    format: str = "json"
    ascii_only: bool = False
    quiet: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise _invalid("n", f"n must be at least 1, got {self.n}")
        if len(self.a) != self.n:
            raise _invalid("a", f"need exactly n = {self.n} values, got {len(self.a)}")
        if any(a_i <= 0 for a_i in self.a):
            raise _invalid("a", "every a_i must be positive")
        if not 0 <= self.q < 1:
            raise _invalid("q", f"q must satisfy 0 <= q < 1, got {self.q}")
        if self.m < 0:
            raise _invalid("m", f"m must be nonnegative, got {self.m}")
        if self.bound < 0:
            raise _invalid("bound", f"bound must be nonnegative, got {self.bound}")
        if self.runs < 1:
            raise _invalid("runs", f"runs must be at least 1, got {self.runs}")
        if not 0 <= self.seed < 2 ** 64:
            raise _invalid("seed", f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.format not in FORMATS:
            raise _invalid("format", f"choose one of {', '.join(FORMATS)}, got {self.format!r}")

    def verbose(self) -> bool:
        return not self.quiet


def _resolve(namespace: Any, name: str, env_file: Path) -> str:
    value = getattr(namespace, name, None)
    if value is not None:
        return str(value)
    return load_setting(name, DEFAULTS[name], env_file)


def load_config(namespace: Any = None, env_file: Path = DEFAULT_ENV_FILE) -> CliConfig:
    """
    Build a validated CliConfig from parsed arguments (missing attributes fall
    back to the environment, then to DEFAULTS).

    Raises:
        ValueError: naming the offending setting and how to set it
    """
    raw = {name: _resolve(namespace, name, env_file) for name in DEFAULTS}
    n = _parse_int("n", raw["n"])
    a = tuple(_parse_scalar("a", token.strip()) for token in raw["a"].split(",") if token.strip())
    a_given = getattr(namespace, "a", None) is not None or load_setting("a", None, env_file) is not None
    if not a_given and len(a) != n:
        # the built-in a only fits n = 2; other n get 2, 3, ..., n + 1
        a = tuple(Fraction(2 + i) for i in range(n))
    return CliConfig(
        n=n,
        a=a,
        q=_parse_scalar("q", raw["q"]),
        m=_parse_int("m", raw["m"]),
        bound=_parse_int("bound", raw["bound"]),
        runs=_parse_int("runs", raw["runs"]),
        seed=_parse_int("seed", raw["seed"]),
        format=raw["format"],
        ascii_only=bool(getattr(namespace, "ascii", False)),
        quiet=bool(getattr(namespace, "quiet", False)),
    )
