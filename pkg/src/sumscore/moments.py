"""Exact moments of the two item distributions used in summated scores.

Likert items are discrete uniform on ``1..k``; dichotomous items put mass 1/2
on each of two integer points.  Everything is held as :class:`fractions.Fraction`
so downstream ratios are exact until the final float conversion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidScaleError

MIN_K = 3
DEFAULT_MAX_K = 1000


@dataclass(frozen=True)
class Likert:
    """Ordinal response scale taking values ``1, 2, ..., k``."""

    k: int

    def __post_init__(self):
        check_k(self.k)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(range(1, self.k + 1))

    @property
    def low(self) -> int:
        return 1

    @property
    def high(self) -> int:
        return self.k


@dataclass(frozen=True)
class Dichotomous:
    """Two-point scale ``{low, high}``; only ``high - low`` affects variance."""

    low: int
    high: int

    def __post_init__(self):
        for name in ("low", "high"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidScaleError(f"dichotomous {name} must be an integer, got {v!r}")
        if self.high <= self.low:
            raise InvalidScaleError(
                f"dichotomous scale needs high > low, got low={self.low}, high={self.high}"
            )

    @property
    def support(self) -> tuple[int, int]:
        return (self.low, self.high)

    @property
    def range(self) -> int:
        return self.high - self.low


ScaleSpec = Union[Likert, Dichotomous]


@dataclass(frozen=True)
class Moments:
    mean: Fraction
    variance: Fraction


def check_k(k, max_k: int = DEFAULT_MAX_K) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise InvalidScaleError(f"scale length k must be an integer, got {k!r}")
    if k < MIN_K:
        raise InvalidScaleError(f"scale length k must be >= {MIN_K}, got {k}")
    if k > max_k:
        raise InvalidScaleError(f"scale length k must be <= {max_k} (configured cap), got {k}")
    return k


def discrete_moments(support, probs=None) -> Moments:
    """Mean and variance of a finite distribution by the defining sums.

    ``probs`` defaults to equal mass on every support point.
    """
    support = [Fraction(x) for x in support]
    if probs is None:
        probs = [Fraction(1, len(support))] * len(support)
    else:
        probs = [Fraction(p) for p in probs]
    mean = sum((x * p for x, p in zip(support, probs)), Fraction(0))
    var = sum(((x - mean) ** 2 * p for x, p in zip(support, probs)), Fraction(0))
    return Moments(mean, var)


def likert_variance(k: int, max_k: int = DEFAULT_MAX_K) -> Fraction:
    """Closed form ``(k**2 - 1) / 12``."""
    check_k(k, max_k)
    return Fraction(k * k - 1, 12)


def likert_moments(k: int, max_k: int = DEFAULT_MAX_K) -> Moments:
    check_k(k, max_k)
    return Moments(Fraction(k + 1, 2), likert_variance(k, max_k))


def dichotomous_moments(low: int, high: int) -> Moments:
    scale = Dichotomous(low, high)
    r = scale.range
    return Moments(Fraction(low + high, 2), Fraction(r * r, 4))


def symmetric_deviation_sum(k: int, max_k: int = DEFAULT_MAX_K) -> Fraction:
    """Squared deviations of the lower half of ``1..k`` from the centre.

    The sum runs over ``i = 1..s`` with ``s = (k-1)/2`` for odd ``k`` (the
    centre point contributes nothing) and ``s = k/2`` for even ``k``.  By
    symmetry ``(8/k) * S(k) == 4 * variance(k)``.
    """
    check_k(k, max_k)
    s = (k - 1) // 2 if k % 2 else k // 2
    centre = Fraction(k + 1, 2)
    return sum(((i - centre) ** 2 for i in range(1, s + 1)), Fraction(0))


def scale_moments(scale: ScaleSpec, max_k: int = DEFAULT_MAX_K) -> Moments:
    if isinstance(scale, Likert):
        return likert_moments(scale.k, max_k)
    if isinstance(scale, Dichotomous):
        return dichotomous_moments(scale.low, scale.high)
    raise InvalidScaleError(f"unknown scale type {type(scale).__name__}")
