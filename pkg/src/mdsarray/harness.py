"""Monte-Carlo and exhaustive experiments over the decoders."""

from __future__ import annotations

import csv
import enum
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from itertools import combinations, product
from math import comb
from typing import Optional, Sequence

import numpy as np

from .code import CodeParams, encode, syndrome
from .decoder import (
    DecodeOutcome,
    Status,
    decode_syndrome,
    hypothesis_decode_syndrome,
    max_radius,
)
from .errors import DimensionMismatch, TooLarge, UnsupportedRadius
from .field import OpCounts, counting

EXHAUSTIVE_LIMIT = 10**7


class Path(enum.Enum):
    GENERIC = "generic"
    VANDERMONDE_FAST = "fast"
    HYPOTHESIS = "hypothesis"

    @classmethod
    def parse(cls, text: str) -> "Path":
        for p in cls:
            if text.lower() in (p.value, p.name.lower()):
                return p
        raise ValueError(f"unknown decode path {text!r}")


@dataclass(frozen=True)
class TrialConfig:
    params: CodeParams
    t: int
    trials: int
    seed: int = 0
    path: Path = Path.GENERIC
    region: str = "all"  # "info" restricts error positions to 1..k
    radius: Optional[int] = None  # decoder radius; defaults to the largest supported

    def __post_init__(self):
        if self.trials < 1:
            raise DimensionMismatch(f"trials must be >= 1, got {self.trials}")
        if self.t < 0 or self.t > self.params.m // 2:
            raise UnsupportedRadius(f"t = {self.t} outside 0..floor(m/2) = {self.params.m // 2}")
        if self.region not in ("all", "info"):
            raise ValueError(f"region must be 'all' or 'info', got {self.region!r}")
        if self.region == "info" and self.t > self.params.k:
            raise DimensionMismatch(f"cannot place {self.t} errors among {self.params.k} information symbols")

    @property
    def decode_radius(self) -> int:
        r = max_radius(self.params) if self.radius is None else self.radius
        if self.path is Path.HYPOTHESIS and self.radius is None:
            r = self.params.m // 2
        return r


@dataclass
class TrialStats:
    successes: int = 0
    failures: int = 0
    miscorrections: int = 0
    zech_evals: int = 0
    field_mults: int = 0
    linear_solves: int = 0
    wall_time: float = field(default=0.0, compare=False)
    outcomes: tuple = field(default=(), repr=False)

    @property
    def trials(self) -> int:
        return self.successes + self.failures + self.miscorrections

    def merge(self, other: "TrialStats") -> None:
        self.successes += other.successes
        self.failures += other.failures
        self.miscorrections += other.miscorrections
        self.zech_evals += other.zech_evals
        self.field_mults += other.field_mults
        self.linear_solves += other.linear_solves
        self.outcomes += other.outcomes

    def add_counts(self, c: OpCounts) -> None:
        self.zech_evals += c.zech_evals
        self.field_mults += c.field_mults
        self.linear_solves += c.linear_solves

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("outcomes")
        return d


STAT_FIELDS = [f.name for f in fields(TrialStats) if f.name != "outcomes"]


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based generator keyed by (seed, trial index)."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def draw_errors(params: CodeParams, t: int, rng: np.random.Generator, region: str = "all") -> list[tuple[int, int]]:
    span = params.k if region == "info" else params.n
    positions = rng.choice(span, size=t, replace=False) + 1
    mags = rng.integers(1, 1 << params.b, size=t)
    return sorted((int(p), int(e)) for p, e in zip(positions, mags))


def decode_with(params: CodeParams, s: Sequence[int], path: Path, radius: int) -> DecodeOutcome:
    if path is Path.HYPOTHESIS:
        return hypothesis_decode_syndrome(params, s, radius)
    return decode_syndrome(params, s, radius, fast=path is Path.VANDERMONDE_FAST)


def _classify(stats: TrialStats, outcome: DecodeOutcome, injected: Sequence[tuple[int, int]]) -> None:
    if outcome.status is Status.FAILURE:
        stats.failures += 1
    elif outcome.corrections == tuple(injected):
        stats.successes += 1
    else:
        stats.miscorrections += 1


def _run_range(cfg: TrialConfig, start: int, stop: int, keep: bool) -> TrialStats:
    params, radius = cfg.params, cfg.decode_radius
    stats = TrialStats()
    kept = []
    for idx in range(start, stop):
        rng = trial_rng(cfg.seed, idx)
        info = [int(x) for x in rng.integers(0, 1 << params.b, size=params.k)]
        errors = draw_errors(params, cfg.t, rng, cfg.region)
        v = encode(params, info)
        for p, e in errors:
            v[p - 1] ^= e
        s = syndrome(params, v)
        # only the decoder is instrumented, not encoding or the syndrome
        with counting() as c:
            outcome = decode_with(params, s, cfg.path, radius)
        stats.add_counts(c)
        _classify(stats, outcome, errors)
        if keep:
            kept.append(outcome)
    stats.outcomes = tuple(kept)
    return stats


def run_trials(cfg: TrialConfig, jobs: int = 1, keep_outcomes: bool = False) -> TrialStats:
    """Run ``cfg.trials`` seeded trials; results do not depend on ``jobs``."""
    if cfg.t > cfg.decode_radius:
        raise UnsupportedRadius(f"t = {cfg.t} exceeds the decoder radius {cfg.decode_radius}")
    t0 = time.perf_counter()
    if jobs <= 1 or cfg.trials < 2 * jobs:
        stats = _run_range(cfg, 0, cfg.trials, keep_outcomes)
    else:
        bounds = np.linspace(0, cfg.trials, jobs + 1).astype(int)
        stats = TrialStats()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_range, cfg, int(a), int(b), keep_outcomes)
                for a, b in zip(bounds[:-1], bounds[1:])
            ]
            for fut in futures:
                stats.merge(fut.result())
    stats.wall_time = time.perf_counter() - t0
    return stats


def pattern_count(params: CodeParams, t: int) -> int:
    q = (1 << params.b) - 1
    return sum(comb(params.n, w) * q**w for w in _weights(t))


def _weights(t: int) -> range:
    # the all-zero pattern is only enumerated when t = 0
    return range(1, t + 1) if t > 0 else range(1)


def exhaustive_check(
    params: CodeParams, t: int, path: Path = Path.GENERIC, radius: Optional[int] = None
) -> TrialStats:
    """Decode every nonzero error pattern of weight <= t on the zero codeword."""
    total = pattern_count(params, t)
    if total > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"{total} patterns exceed {EXHAUSTIVE_LIMIT}")
    if radius is None:
        radius = params.m // 2 if path is Path.HYPOTHESIS else max_radius(params)
    if t > radius:
        raise UnsupportedRadius(f"t = {t} exceeds the decoder radius {radius}")
    t0 = time.perf_counter()
    stats = TrialStats()
    nonzero = range(1, 1 << params.b)
    for w in _weights(t):
        for positions in combinations(range(1, params.n + 1), w):
            for mags in product(nonzero, repeat=w):
                v = [0] * params.n
                for p, e in zip(positions, mags):
                    v[p - 1] = e
                with counting() as c:
                    outcome = decode_with(params, syndrome(params, v), path, radius)
                stats.add_counts(c)
                _classify(stats, outcome, list(zip(positions, mags)))
    stats.wall_time = time.perf_counter() - t0
    return stats


def stats_rows(rows: Sequence[tuple[str, Path, TrialStats]]) -> list[dict]:
    return [{"config": name, "path": path.value, **stats.as_dict()} for name, path, stats in rows]


def stats_csv(rows: Sequence[tuple[str, Path, TrialStats]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["config", "path", *STAT_FIELDS], lineterminator="\n")
    writer.writeheader()
    writer.writerows(stats_rows(rows))
    return buf.getvalue()


def stats_json(rows: Sequence[tuple[str, Path, TrialStats]]) -> str:
    return json.dumps(stats_rows(rows), indent=2)
