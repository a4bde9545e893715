"""Seeded Monte Carlo check of analytic variance shares.

Draws come from a Philox counter-based generator.  Respondents are split into
fixed-size blocks and block ``b`` reads the stream at counter ``b << 192``, so
respondent ``i``'s answer to item ``j`` is a fixed function of
``(seed, i, j)`` no matter how blocks are spread over worker threads.  Moment
sums are accumulated as exact integers, which makes the merge order
irrelevant and the report bit-identical across thread counts.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from .design import ContributionReport, QuestionnaireDesign, contribution_profile
from .errors import ConfigurationError
from .moments import Likert

BLOCK_SIZE = 1 << 16
PROB_TOL = 1e-9


@dataclass(frozen=True)
class Uniform:
    """Every scale point equally likely."""

    name = "uniform"


@dataclass(frozen=True)
class Weighted:
    """Per-item probability vectors over the item's support, low to high.

    Items without an entry stay uniform.
    """

    probabilities: Mapping[str, Sequence[float]] = field(default_factory=dict)
    name = "weighted"


@dataclass(frozen=True)
class SimulationConfig:
    design: QuestionnaireDesign
    respondents: int
    seed: int
    scenario: object = Uniform()

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not isinstance(self.design, QuestionnaireDesign):
            raise ConfigurationError("design must be a QuestionnaireDesign")
        if isinstance(self.respondents, bool) or not isinstance(self.respondents, (int, np.integer)) \
                or self.respondents < 2:
            raise ConfigurationError(f"respondents must be an integer >= 2, got {self.respondents!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) \
                or not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if isinstance(self.scenario, Weighted):
            ids = set(self.design.item_ids)
            for item_id, probs in self.scenario.probabilities.items():
                if item_id not in ids:
                    raise ConfigurationError(f"weighted scenario names unknown item {item_id!r}")
                size = len(self.design.scale_of(item_id).support)
                p = np.asarray(probs, dtype=float)
                if p.shape != (size,):
                    raise ConfigurationError(
                        f"item {item_id!r}: expected {size} probabilities, got {len(probs)}"
                    )
                if np.any(p < 0) or abs(p.sum() - 1.0) > PROB_TOL:
                    raise ConfigurationError(
                        f"item {item_id!r}: probabilities must be >= 0 and sum to 1"
                    )
        elif not isinstance(self.scenario, Uniform):
            raise ConfigurationError(f"unknown scenario {self.scenario!r}")


@dataclass(frozen=True)
class SimulatedItem:
    item_id: str
    empirical_variance: float
    empirical_contribution: float
    analytic_contribution: float

    @property
    def abs_error(self) -> float:
        return abs(self.empirical_contribution - self.analytic_contribution)


@dataclass(frozen=True)
class SimulationReport:
    respondents: int
    seed: int
    scenario: str
    items: tuple
    sum_variance: float
    item_variance_total: float
    analytic: ContributionReport
    max_abs_error: float

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "respondents": self.respondents,
            "scenario": self.scenario,
            "sum_variance": self.sum_variance,
            "item_variance_total": self.item_variance_total,
            "max_abs_error": _json_float(self.max_abs_error),
            "items": [
                {
                    "id": it.item_id,
                    "empirical_variance": it.empirical_variance,
                    "empirical_contribution": _json_float(it.empirical_contribution),
                    "analytic_contribution": it.analytic_contribution,
                    "abs_error": _json_float(it.abs_error),
                }
                for it in self.items
            ],
        }


def _json_float(x):
    return None if math.isnan(x) else x


def _philox_key(seed: int, stream: tuple) -> np.ndarray:
    return np.random.SeedSequence(seed, spawn_key=stream).generate_state(2, np.uint64)


def _samplers(config: SimulationConfig):
    """Per item: a function mapping uniforms in [0, 1) to integer answers."""
    weights = config.scenario.probabilities if isinstance(config.scenario, Weighted) else {}
    out = []
    for item_id, scale in config.design.items:
        support = np.asarray(scale.support, dtype=np.int64)
        if item_id in weights:
            cdf = np.cumsum(np.asarray(weights[item_id], dtype=float))
            last = len(support) - 1

            def f(u, support=support, cdf=cdf, last=last):
                return support[np.minimum(np.searchsorted(cdf, u, side="right"), last)]
        elif isinstance(scale, Likert):
            def f(u, k=scale.k):
                return np.minimum((u * k).astype(np.int64), k - 1) + 1
        else:
            def f(u, lo=scale.low, hi=scale.high):
                return np.where(u < 0.5, lo, hi).astype(np.int64)
        out.append(f)
    return out


def _block_sums(key, block: int, rows: int, samplers) -> tuple:
    gen = np.random.Generator(np.random.Philox(key=key, counter=block << 192))
    u = gen.random((rows, len(samplers)))
    x = np.empty(u.shape, dtype=np.int64)
    for j, f in enumerate(samplers):
        x[:, j] = f(u[:, j])
    s = x.sum(axis=1)
    return (
        [int(v) for v in x.sum(axis=0)],
        [int(v) for v in (x * x).sum(axis=0)],
        int(s.sum()),
        int((s * s).sum()),
    )


def _unbiased_variance(n: int, total: int, total_sq: int) -> Fraction:
    return Fraction(n * total_sq - total * total, n * (n - 1))


def _simulate(config: SimulationConfig, respondents: int, stream: tuple,
              workers: Optional[int]) -> SimulationReport:
    key = _philox_key(config.seed, stream)
    samplers = _samplers(config)
    blocks = [(b, min(BLOCK_SIZE, respondents - b * BLOCK_SIZE))
              for b in range(-(-respondents // BLOCK_SIZE))]
    if workers is None or workers <= 1:
        parts = [_block_sums(key, b, rows, samplers) for b, rows in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda br: _block_sums(key, br[0], br[1], samplers), blocks))
    m = len(samplers)
    sx = [sum(p[0][j] for p in parts) for j in range(m)]
    sxx = [sum(p[1][j] for p in parts) for j in range(m)]
    ss = sum(p[2] for p in parts)
    sss = sum(p[3] for p in parts)

    item_vars = [_unbiased_variance(respondents, sx[j], sxx[j]) for j in range(m)]
    sum_var = _unbiased_variance(respondents, ss, sss)
    analytic = contribution_profile(config.design)
    items = []
    for (item_id, _), v, ref in zip(config.design.items, item_vars, analytic.items):
        share = float(v / sum_var) if sum_var else float("nan")
        items.append(SimulatedItem(item_id, float(v), share, ref.contribution))
    errors = [it.abs_error for it in items]
    return SimulationReport(
        respondents=respondents,
        seed=config.seed,
        scenario=config.scenario.name,
        items=tuple(items),
        sum_variance=float(sum_var),
        item_variance_total=float(sum(item_vars)),
        analytic=analytic,
        max_abs_error=float("nan") if any(math.isnan(e) for e in errors) else max(errors),
    )


def run_simulation(config: SimulationConfig, workers: Optional[int] = None) -> SimulationReport:
    """Sample ``config.respondents`` respondents and compare variance shares.

    Empirical shares divide each item's sample variance by the sample variance
    of the realised sum (both with the ``N - 1`` divisor).
    """
    config.validate()
    return _simulate(config, int(config.respondents), (), workers)


def convergence_sweep(config: SimulationConfig, sizes: Sequence[int],
                      workers: Optional[int] = None) -> list[SimulationReport]:
    """One report per sample size, each from its own substream of the seed."""
    config.validate()
    sizes = list(sizes)
    if not sizes:
        raise ConfigurationError("sizes must be non-empty")
    if any(isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2 for n in sizes):
        raise ConfigurationError(f"every size must be an integer >= 2, got {sizes}")
    if sizes != sorted(sizes):
        raise ConfigurationError(f"sizes must be ascending, got {sizes}")
    return [_simulate(config, int(n), (j,), workers) for j, n in enumerate(sizes)]
