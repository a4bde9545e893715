"""Questionnaire designs, variance-share audits and sum scoring."""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Any, Hashable, Optional, Sequence

from .calibration import CalibrationResult, calibrate
from .errors import (
    DesignValidationError,
    ResponseValidationError,
    SchemaError,
)
from .moments import DEFAULT_MAX_K, Dichotomous, Likert, ScaleSpec, scale_moments

DEFAULT_RAW_MAPPING = (0, 1)


@dataclass(frozen=True)
class QuestionnaireDesign:
    """Ordered items sharing one Likert ``k`` and one dichotomous scale.

    ``raw_mapping`` is the pair of raw answers ``(low_raw, high_raw)`` that a
    dichotomous item arrives as before recoding to ``{low, high}``.
    """

    items: tuple
    raw_mapping: tuple = DEFAULT_RAW_MAPPING

    def __post_init__(self):
        object.__setattr__(self, "items", tuple((str(i), s) for i, s in self.items))
        object.__setattr__(self, "raw_mapping", tuple(self.raw_mapping))
        self.validate()

    def validate(self):
        if not self.items:
            raise DesignValidationError("design needs at least one item (n >= 1)")
        seen = set()
        for item_id, scale in self.items:
            if item_id in seen:
                raise DesignValidationError(f"item ids must be unique, duplicate {item_id!r}")
            seen.add(item_id)
            if not isinstance(scale, (Likert, Dichotomous)):
                raise DesignValidationError(
                    f"item {item_id!r}: scale must be Likert or Dichotomous, got {scale!r}"
                )
        ks = {s.k for _, s in self.items if isinstance(s, Likert)}
        if len(ks) > 1:
            raise DesignValidationError(
                f"all Likert items must share one k, found {sorted(ks)}"
            )
        dich = {(s.low, s.high) for _, s in self.items if isinstance(s, Dichotomous)}
        if len(dich) > 1:
            raise DesignValidationError(
                f"all dichotomous items must share one scale, found {sorted(dich)}"
            )
        if len(self.raw_mapping) != 2 or self.raw_mapping[0] == self.raw_mapping[1]:
            raise DesignValidationError(
                f"raw mapping must be two distinct values, got {self.raw_mapping!r}"
            )

    @classmethod
    def from_counts(cls, n1: int, n2: int, k: int, upper=None, low: int = 1,
                    raw_mapping=DEFAULT_RAW_MAPPING, max_k: int = DEFAULT_MAX_K):
        """Build ``n1`` dichotomous items ``d1..`` then ``n2`` Likert items ``q1..``.

        ``upper`` defaults to the suggested value for ``k``.
        """
        if n1 < 0 or n2 < 0:
            raise DesignValidationError(f"item counts must be >= 0, got n1={n1}, n2={n2}")
        items = []
        if n1:
            if upper is None:
                upper = low - 1 + calibrate(k, max_k).suggested_upper
            items += [(f"d{i}", Dichotomous(low, upper)) for i in range(1, n1 + 1)]
        if n2:
            items += [(f"q{i}", Likert(k)) for i in range(1, n2 + 1)]
        return cls(tuple(items), raw_mapping)

    @property
    def item_ids(self) -> tuple:
        return tuple(i for i, _ in self.items)

    @property
    def n1(self) -> int:
        return sum(isinstance(s, Dichotomous) for _, s in self.items)

    @property
    def n2(self) -> int:
        return sum(isinstance(s, Likert) for _, s in self.items)

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def k(self) -> Optional[int]:
        for _, s in self.items:
            if isinstance(s, Likert):
                return s.k
        return None

    @property
    def dichotomous(self) -> Optional[Dichotomous]:
        for _, s in self.items:
            if isinstance(s, Dichotomous):
                return s
        return None

    @property
    def upper(self) -> Optional[int]:
        d = self.dichotomous
        return None if d is None else d.high

    def scale_of(self, item_id) -> ScaleSpec:
        return dict(self.items)[item_id]

    def max_score(self) -> int:
        return sum(s.high for _, s in self.items)

    def min_score(self) -> int:
        return sum(s.low for _, s in self.items)


@dataclass(frozen=True)
class ItemContribution:
    item_id: str
    kind: str
    variance: Any  # Fraction, or float when an irrational upper is plugged in
    contribution: float
    ideal: float
    deviation: float


@dataclass(frozen=True)
class ContributionReport:
    items: tuple
    total_variance: Any
    ideal: float

    @property
    def max_abs_deviation(self) -> float:
        return max(abs(it.deviation) for it in self.items)

    def contribution_of(self, kind: str) -> Optional[float]:
        for it in self.items:
            if it.kind == kind:
                return it.contribution
        return None

    def as_dict(self) -> dict:
        return {
            "total_variance": _num(self.total_variance),
            "ideal": self.ideal,
            "max_abs_deviation": self.max_abs_deviation,
            "items": [
                {
                    "id": it.item_id,
                    "kind": it.kind,
                    "variance": _num(it.variance),
                    "contribution": it.contribution,
                    "deviation": it.deviation,
                }
                for it in self.items
            ],
        }


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    return x


def _kind(scale) -> str:
    return "likert" if isinstance(scale, Likert) else "dichotomous"


def contribution_profile(design: QuestionnaireDesign, upper=None,
                         max_k: int = DEFAULT_MAX_K) -> ContributionReport:
    """Each item's share ``variance / total variance`` of the sum score.

    Items are independent, so the total is the sum of item variances and the
    shares add to one.  ``upper`` overrides the dichotomous high endpoint for
    what-if analysis and may be a real number (e.g. the exact optimum).
    """
    if not isinstance(design, QuestionnaireDesign):
        raise DesignValidationError(f"expected a QuestionnaireDesign, got {type(design).__name__}")
    variances = []
    for item_id, scale in design.items:
        if upper is not None and isinstance(scale, Dichotomous):
            if not upper > scale.low:
                raise DesignValidationError(
                    f"upper value {upper} must exceed dichotomous low {scale.low}"
                )
            r = upper - scale.low
            if isinstance(r, (int, Decimal)):
                r = Fraction(r)
            v = r * r / 4
        else:
            v = scale_moments(scale, max_k).variance
        variances.append(v)
    total = sum(variances[1:], variances[0])
    ideal = 1.0 / design.n
    rows = []
    for (item_id, scale), v in zip(design.items, variances):
        if isinstance(v, Fraction) and isinstance(total, Fraction):
            share = float(v / total)
        else:
            share = float(v) / float(total)
        rows.append(ItemContribution(item_id, _kind(scale), v, share, ideal, share - ideal))
    return ContributionReport(tuple(rows), total, ideal)


@dataclass(frozen=True)
class AuditResult:
    report: ContributionReport
    calibration: Optional[CalibrationResult]
    flagged: bool
    message: str = ""

    def as_dict(self) -> dict:
        return {
            "report": self.report.as_dict(),
            "calibration": None if self.calibration is None else self.calibration.as_dict(),
            "flagged": self.flagged,
            "message": self.message,
        }


def audit_design(design: QuestionnaireDesign, k: Optional[int] = None,
                 max_k: int = DEFAULT_MAX_K) -> AuditResult:
    """Contribution profile plus a recommendation for the dichotomous upper value.

    The comparison is made on the range, so endpoints ``(a, a + r)`` audit the
    same way as ``(1, 1 + r)``.
    """
    report = contribution_profile(design, max_k=max_k)
    if design.k is not None and k is not None and k != design.k:
        raise DesignValidationError(f"audit k={k} does not match the design's Likert k={design.k}")
    k = design.k if k is None else k
    dich = design.dichotomous
    if dich is None or k is None:
        return AuditResult(report, None, False)
    cal = calibrate(k, max_k)
    suggested_range = cal.suggested_upper - 1
    if dich.range == suggested_range:
        return AuditResult(report, cal, False)
    msg = (
        f"dichotomous range {dich.range} (upper {dich.low + dich.range} from low {dich.low}) "
        f"differs from the suggested range {suggested_range} for k={k}; "
        f"suggested upper value is {cal.suggested_upper}. Responses already recorded "
        f"on the old scale are not re-mapped automatically."
    ) if dich.low != 1 else (
        f"dichotomous upper value {dich.high} differs from the suggested value "
        f"{cal.suggested_upper} for k={k}. Responses already recorded on the old "
        f"scale are not re-mapped automatically."
    )
    return AuditResult(report, cal, True, msg)


# ---- responses and scoring -------------------------------------------------

@dataclass(frozen=True)
class ResponseSheet:
    """Raw answers: one row per respondent, columns named by ``item_ids``."""

    respondent_ids: tuple
    item_ids: tuple
    answers: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "respondent_ids", tuple(self.respondent_ids))
        object.__setattr__(self, "item_ids", tuple(str(i) for i in self.item_ids))
        object.__setattr__(self, "answers", tuple(tuple(row) for row in self.answers))
        if len(self.answers) != len(self.respondent_ids):
            raise SchemaError(
                f"{len(self.respondent_ids)} respondent ids but {len(self.answers)} answer rows"
            )
        if len(set(self.item_ids)) != len(self.item_ids):
            raise SchemaError("duplicate item columns in response sheet")
        for rid, row in zip(self.respondent_ids, self.answers):
            if len(row) != len(self.item_ids):
                raise SchemaError(
                    f"respondent {rid!r}: expected {len(self.item_ids)} answers, got {len(row)}"
                )

    def __len__(self):
        return len(self.respondent_ids)

    def subset(self, rows: Sequence[int]) -> "ResponseSheet":
        return ResponseSheet(
            [self.respondent_ids[i] for i in rows],
            self.item_ids,
            [self.answers[i] for i in rows],
        )


def recode_dichotomous(raw: Hashable, mapping=DEFAULT_RAW_MAPPING, c: int = 2, low: int = 1,
                       respondent=None, item=None) -> int:
    """Map the raw low answer to ``low`` and the raw high answer to ``c``."""
    if c <= low:
        raise DesignValidationError(f"upper value c={c} must exceed low={low}")
    raw_low, raw_high = mapping
    if _same(raw, raw_low):
        return low
    if _same(raw, raw_high):
        return c
    raise ResponseValidationError(
        [(respondent, item, raw, f"dichotomous answer not in raw domain {list(mapping)}")]
    )


def _same(a, b) -> bool:
    # bool is an int subclass; True must not silently match 1
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    return a == b


def _likert_value(raw, k):
    if isinstance(raw, bool) or not isinstance(raw, int):
        return None
    return raw if 1 <= raw <= k else None


def check_columns(design: QuestionnaireDesign, item_ids) -> None:
    expected, got = set(design.item_ids), set(item_ids)
    if expected != got:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        raise SchemaError(f"response columns do not match design: missing={missing} extra={extra}")


def recode_sheet(design: QuestionnaireDesign, sheet: ResponseSheet) -> list[list[int]]:
    """Validate every answer and return recoded rows in design item order."""
    check_columns(design, sheet.item_ids)
    col = {item_id: j for j, item_id in enumerate(sheet.item_ids)}
    order = [(item_id, scale, col[item_id]) for item_id, scale in design.items]
    violations = []
    out = []
    for rid, row in zip(sheet.respondent_ids, sheet.answers):
        rec = []
        for item_id, scale, j in order:
            raw = row[j]
            if raw is None:
                violations.append((rid, item_id, raw, "missing answer"))
                continue
            if isinstance(scale, Likert):
                v = _likert_value(raw, scale.k)
                if v is None:
                    violations.append((rid, item_id, raw, f"Likert answer not in 1..{scale.k}"))
                    continue
                rec.append(v)
            else:
                try:
                    rec.append(recode_dichotomous(raw, design.raw_mapping, scale.high,
                                                  scale.low, rid, item_id))
                except ResponseValidationError as e:
                    violations.extend(e.violations)
        out.append(rec)
    if violations:
        raise ResponseValidationError(violations)
    return out


def score_sheet(design: QuestionnaireDesign, sheet: ResponseSheet) -> list[tuple[Any, int]]:
    """Per-respondent sum of recoded answers, in sheet row order."""
    rows = recode_sheet(design, sheet)
    return [(rid, sum(row)) for rid, row in zip(sheet.respondent_ids, rows)]

