"""Run configuration: method thresholds, Monte-Carlo sizes and pass thresholds.

Values come from the dataclass defaults, then an optional JSON file
(``PSICLASS_CONFIG`` or ``--config``), then individual environment variables.
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

ENV_CONFIG = "PSICLASS_CONFIG"
ENV_CACHE = "PSICLASS_CACHE"
ENV_BRUTE_MAX_DEGREE = "PSICLASS_BRUTE_MAX_DEGREE"


@dataclass(frozen=True)
class HurwitzConfig:
    brute_max_degree: int = 5  # auto: brute force for d <= this
    brute_budget: int = 20_000_000


@dataclass(frozen=True)
class TreeConfig:
    """Monte-Carlo sizes and thresholds, calibrated once with seed 1."""

    seed: int = 1
    m: int = 100_000
    valence_samples: int = 100_000
    borel_trees: int = 50_000  # both ends pooled: 2x this many sizes
    edge_tree_samples: int = 10_000
    edge_factor_samples: int = 1_000_000
    tv_threshold: float = 0.01
    ks_threshold: float = 0.02
    chi2_pvalue: float = 0.001
    relative_error: float = 0.01
    assembly_tolerance: float = 1e-12
    edge_factor_points: tuple[tuple[float, float], ...] = ((1.0, 1.0), (1.0, 4.0), (2.0, 3.0), (0.25, 1.5))


@dataclass(frozen=True)
class Config:
    hurwitz: HurwitzConfig = field(default_factory=HurwitzConfig)
    trees: TreeConfig = field(default_factory=TreeConfig)
    cache_path: str | None = None
    jobs: int = 1

    def to_dict(self) -> dict:
        return asdict(self)


def _section(cls, data: dict):
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown {cls.__name__} keys: {sorted(unknown)}")
    if cls is TreeConfig and "edge_factor_points" in data:
        data = dict(data, edge_factor_points=tuple(tuple(p) for p in data["edge_factor_points"]))
    return cls(**data)


def load_config(path: str | os.PathLike | None = None) -> Config:
    cfg = Config()
    path = path or os.environ.get(ENV_CONFIG)
    if path:
        data = json.loads(Path(path).read_text())
        cfg = Config(
            hurwitz=_section(HurwitzConfig, data.get("hurwitz", {})),
            trees=_section(TreeConfig, data.get("trees", {})),
            cache_path=data.get("cache_path"),
            jobs=int(data.get("jobs", 1)),
        )
    if os.environ.get(ENV_BRUTE_MAX_DEGREE):
        cfg = replace(cfg, hurwitz=replace(cfg.hurwitz, brute_max_degree=int(os.environ[ENV_BRUTE_MAX_DEGREE])))
    if os.environ.get(ENV_CACHE):
        cfg = replace(cfg, cache_path=os.environ[ENV_CACHE])
    return cfg
