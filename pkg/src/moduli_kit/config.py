"""Dataclass configs for the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class LambdaScanConfig:
    start: float = 0.01
    stop: float = 0.99
    steps: int = 99
    include_best_effort: bool = False
    best_effort_points: tuple = (2.0, 5.0, -1.0, -3.0)


@dataclass(frozen=True)
class RelationSuiteConfig:
    seed: int = 0
    braid_pairs: int = 1000
    conjugation_trials: int = 200
    max_genus: int = 3
    entry_bound: int = 2


@dataclass(frozen=True)
class LevelTableConfig:
    moduli: tuple = tuple(range(2, 17))
    torsion_moduli: tuple = (2, 3, 4, 5)
    torsion_bound: int = 50
    sp_cases: tuple = ((2, 2), (2, 3))
    threads: int | None = None


@dataclass(frozen=True)
class ReductionBenchConfig:
    seed: int = 0
    samples: int = 10_000
    re_range: tuple = (-100.0, 100.0)
    log10_im_range: tuple = (-3.0, 3.0)
    extra: dict = field(default_factory=dict)
