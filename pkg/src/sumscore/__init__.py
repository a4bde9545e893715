"""Calibration, auditing and scoring for sums of dichotomous and Likert items."""
from .calibration import CalibrationResult, calibrate, calibration_table, optimal_range
from .design import (
    AuditResult,
    ContributionReport,
    QuestionnaireDesign,
    ResponseSheet,
    audit_design,
    contribution_profile,
    recode_dichotomous,
    score_sheet,
)
from .errors import (
    ConfigurationError,
    DesignValidationError,
    InvalidRangeError,
    InvalidScaleError,
    ResponseValidationError,
    SchemaError,
    SumScoreError,
)
from .moments import (
    Dichotomous,
    Likert,
    Moments,
    dichotomous_moments,
    likert_moments,
    symmetric_deviation_sum,
)
from .simulate import SimulationConfig, Uniform, Weighted, convergence_sweep, run_simulation

__version__ = "0.1.0"
