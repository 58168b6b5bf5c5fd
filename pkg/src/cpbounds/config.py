"""Sweep configuration: built-in defaults, then a key=value file, then CLI flags."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from cpbounds.arith import prime_power


@dataclass(frozen=True)
class SweepConfig:
    classical_r_set: tuple[int, ...] = (2, 3, 4, 5, 7, 8, 9)
    exceptional_r_set: tuple[int, ...] = (2, 3, 4, 5, 7, 8, 9)
    ree_r_set: tuple[int, ...] = (27,)
    m_max: int = 6
    p_max: int = 1000
    alt_m_max: int = 100
    artin_r_max: int = 16
    artin_m_max: int = 8
    inline_r_max: int = 1000
    inline_m_max: int = 1000
    inline_estimate_r_max: int = 9
    inline_estimate_m_max: int = 8
    factorization_r_max: int = 1000
    suzuki_e_max: int = 10
    element_cap: int = 10**6
    vertex_cap: int = 10**6
    jobs: int = 1

    def __post_init__(self):
        for name in ("m_max", "p_max", "alt_m_max", "artin_r_max", "artin_m_max",
                     "inline_r_max", "inline_m_max", "element_cap", "vertex_cap", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("classical_r_set", "exceptional_r_set", "ree_r_set"):
            bad = [r for r in getattr(self, name) if prime_power(r) is None]
            if bad:
                raise ValueError(f"{name} contains non-prime-powers {bad}")

    def as_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    def updated(self, **overrides) -> "SweepConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _coerce(name: str, raw: str):
    kind = {f.name: f.type for f in fields(SweepConfig)}.get(name)
    if kind is None:
        raise ValueError(f"unknown config key {name!r}")
    raw = raw.strip()
    if "tuple" in str(kind):
        return tuple(int(x) for x in raw.replace(",", " ").split())
    return int(raw)


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value")
        key, raw = line.split("=", 1)
        key = key.strip().replace("-", "_")
        values[key] = _coerce(key, raw)
    return values


def load_config(path: str | Path | None = None, **overrides) -> SweepConfig:
    base = {}
    if path is not None:
        base = parse_config_text(Path(path).read_text())
    base.update({k: v for k, v in overrides.items() if v is not None})
    return SweepConfig(**base)
