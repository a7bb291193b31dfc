"""Desk-scale caps, optionally read from a ``key=value`` file."""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path


@dataclass(frozen=True)
class Config:
    max_finite_n: int = 5
    sampler_budget: int = 100
    max_sample_n: int = 64
    iteration_cap: int = 16
    ordinal_depth: int = 8
    max_rounds: int = 8
    max_bound: int = 4
    kappa: str = "w^2"

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def load_config(path) -> Config:
    """Read ``key=value`` lines (``#`` comments allowed) over the defaults."""
    parser = configparser.ConfigParser()
    parser.read_string("[kscatter]\n" + Path(path).read_text())
    known = {f.name: f.type for f in fields(Config)}
    updates = {}
    for key, raw in parser["kscatter"].items():
        if key not in known:
            raise ValueError(f"unknown config key {key!r}")
        updates[key] = raw.strip() if known[key] == "str" else int(raw)
    return replace(Config(), **updates)
