"""Exception hierarchy shared by all sumscore modules."""


class SumScoreError(Exception):
    """Base class for every error raised by this package."""


class InvalidScaleError(SumScoreError, ValueError):
    pass


class InvalidRangeError(SumScoreError, ValueError):
    pass


class DesignValidationError(SumScoreError, ValueError):
    pass


class SchemaError(SumScoreError, ValueError):
    pass


class ConfigurationError(SumScoreError, ValueError):
    pass


class ResponseValidationError(SumScoreError, ValueError):
    """Raised with every offending answer in a sheet, not just the first.

    ``violations`` is a list of ``(respondent_id, item_id, raw_value, reason)``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(
            f"respondent={r!s} item={i!s} value={v!r}: {why}"
            for r, i, v, why in self.violations[:5]
        )
        more = len(self.violations) - 5
        if more > 0:
            head += f"; ... and {more} more"
        super().__init__(f"{len(self.violations)} invalid answer(s): {head}")
