"""Physical constants, the neutron measurement, and config-file loading.

All values are SI.  The defaults are the neutron numbers used for the bound
arithmetic; note ``hbar`` is 1.059e-34 J s rather than the CODATA value, and a
config file may override it.

Config format: one ``key = value`` per line, ``#`` starts a comment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path

__all__ = [
    "Constants",
    "Experiment",
    "ConfigError",
    "CODATA_HBAR",
    "wavenumber",
    "load_config",
    "parse_config",
    "dump_config",
]

CODATA_HBAR = 1.054571817e-34


class ConfigError(ValueError):
    """Malformed or invalid configuration input."""

    def __init__(self, message: str, *, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def _check_positive(obj) -> None:
    for f in fields(obj):
        v = getattr(obj, f.name)
        if not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
            raise ConfigError(f"must be a positive finite number, got {v!r}", key=f.name)


@dataclass(frozen=True)
class Constants:
    hbar: float = 1.059e-34  # J s
    mass: float = 1.675e-27  # kg
    g_accel: float = 9.81  # m s^-2

    def __post_init__(self):
        _check_positive(self)

    @property
    def energy_scale(self) -> float:
        """(m g^2 hbar^2 / 2)^(1/3), the Airy energy unit in J."""
        return (self.mass * self.g_accel**2 * self.hbar**2 / 2) ** (1 / 3)

    @property
    def length_scale(self) -> float:
        """(hbar^2 / (2 m^2 g))^(1/3), the Airy length unit in m."""
        return (self.hbar**2 / (2 * self.mass**2 * self.g_accel)) ** (1 / 3)


@dataclass(frozen=True)
class Experiment:
    delta_e1_exp: float = 6.55e-32  # J
    v_mean: float = 6.5  # m/s

    def __post_init__(self):
        _check_positive(self)


def wavenumber(c: Constants, e: Experiment | None = None, *, v_mean: float | None = None) -> float:
    """Mean transverse wavenumber ``k = m <v_y> / hbar`` in 1/m.

    ``v_mean`` overrides the experiment's speed (and may be zero).
    """
    v = v_mean if v_mean is not None else (e or Experiment()).v_mean
    return c.mass * v / c.hbar


_CONST_KEYS = {f.name for f in fields(Constants)}
_EXP_KEYS = {f.name for f in fields(Experiment)}


def parse_config(text: str) -> tuple[Constants, Experiment]:
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, _, val = (s.strip() for s in line.partition("="))
        if key not in _CONST_KEYS and key not in _EXP_KEYS:
            raise ConfigError("unknown key", line=lineno, key=key)
        if key in values:
            raise ConfigError("duplicate key", line=lineno, key=key)
        try:
            values[key] = float(val)
        except ValueError:
            raise ConfigError(f"not a number: {val!r}", line=lineno, key=key) from None
    c = Constants(**{k: v for k, v in values.items() if k in _CONST_KEYS})
    e = Experiment(**{k: v for k, v in values.items() if k in _EXP_KEYS})
    return c, e


def load_config(path: str | Path) -> tuple[Constants, Experiment]:
    """Read constants and experiment data; absent keys keep their defaults."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_config(text)


def dump_config(c: Constants, e: Experiment) -> str:
    lines = [f"{f.name} = {getattr(c, f.name)!r}" for f in fields(c)]
    lines += [f"{f.name} = {getattr(e, f.name)!r}" for f in fields(e)]
    return "\n".join(lines) + "\n"
