"""Optimal upper value for dichotomous items mixed with same-scale Likert items.

Setting a dichotomous item's variance share equal to ``1/n`` reduces to
``r**2 / 4 == D`` where ``D`` is the Likert variance, so the optimal range is
``r* = 2 * sqrt(D)`` independent of how many items of each kind there are.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext

from .errors import InvalidRangeError
from .moments import DEFAULT_MAX_K, MIN_K, check_k, likert_variance

DECIMALS = 6
MIN_SUGGESTED = 2
# digits carried by the square root; float64 cannot hold r*^2 to 1e-12 once k is large
ROOT_PRECISION = 40


@dataclass(frozen=True)
class CalibrationResult:
    k: int
    optimal_range: Decimal
    exact_upper: Decimal
    suggested_upper: int
    clamped: bool = False

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "optimal_range": float(round(self.optimal_range, DECIMALS)),
            "exact_upper": float(round(self.exact_upper, DECIMALS)),
            "suggested_upper": self.suggested_upper,
        }


def round_half_away(x) -> int:
    """Nearest integer, ties away from zero (Python's ``round`` ties to even)."""
    return int(Decimal(x).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def optimal_range(k: int, max_k: int = DEFAULT_MAX_K) -> Decimal:
    """Positive root of ``r**2 / 4 == variance(k)``, to ``ROOT_PRECISION`` digits."""
    var = likert_variance(k, max_k)
    with localcontext() as ctx:
        ctx.prec = ROOT_PRECISION
        return +(2 * (Decimal(var.numerator) / Decimal(var.denominator)).sqrt())


def calibrate(k: int, max_k: int = DEFAULT_MAX_K) -> CalibrationResult:
    r = optimal_range(k, max_k)
    with localcontext() as ctx:
        ctx.prec = ROOT_PRECISION
        exact = r + 1
    suggested = round_half_away(exact)
    clamped = suggested < MIN_SUGGESTED
    if clamped:
        suggested = MIN_SUGGESTED
    return CalibrationResult(k, r, exact, suggested, clamped)


def calibration_table(k_min: int = 3, k_max: int = 10,
                      max_k: int = DEFAULT_MAX_K) -> list[CalibrationResult]:
    """One :class:`CalibrationResult` per ``k`` in ``k_min..k_max``, ascending."""
    for name, v in (("k_min", k_min), ("k_max", k_max)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidRangeError(f"{name} must be an integer, got {v!r}")
    if not MIN_K <= k_min <= k_max <= max_k:
        raise InvalidRangeError(
            f"need {MIN_K} <= k_min <= k_max <= {max_k}, got k_min={k_min}, k_max={k_max}"
        )
    return [calibrate(k, max_k) for k in range(k_min, k_max + 1)]

