"""scikit-learn transformer that turns raw item answers into a sum score."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .calibration import calibrate
from .design import QuestionnaireDesign, audit_design
from .errors import DesignValidationError, ResponseValidationError
from .moments import Dichotomous, Likert


class SumScoreTransformer(TransformerMixin, BaseEstimator):
    """Recode dichotomous columns to ``{1, upper}`` and sum every column.

    Parameters
    ----------
    likert_k : int
        Shared scale length of the Likert columns.
    dichotomous : sequence of int or bool mask, optional
        Which columns are dichotomous. All others are Likert.
    upper : int, optional
        Upper value for dichotomous items; defaults to the suggested value
        for ``likert_k``.
    raw_low, raw_high : int
        Raw codes that dichotomous answers arrive as.

    Attributes
    ----------
    design_ : QuestionnaireDesign
    audit_ : AuditResult
        Variance-share profile of the fitted design and its recommendation.
    upper_ : int
    n_features_in_ : int
    """

    def __init__(self, likert_k=5, dichotomous=None, upper=None, raw_low=0, raw_high=1):
        self.likert_k = likert_k
        self.dichotomous = dichotomous
        self.upper = upper
        self.raw_low = raw_low
        self.raw_high = raw_high

    def _mask(self, n_features):
        mask = np.zeros(n_features, dtype=bool)
        if self.dichotomous is None:
            return mask
        d = np.asarray(self.dichotomous)
        if d.dtype == bool:
            if d.shape != (n_features,):
                raise DesignValidationError(
                    f"dichotomous mask has length {d.size}, X has {n_features} columns"
                )
            return d.copy()
        if d.size and (d.min() < 0 or d.max() >= n_features):
            raise DesignValidationError(f"dichotomous column index out of range for {n_features} columns")
        mask[d.astype(int)] = True
        return mask

    def fit(self, X, y=None):
        X = validate_data(self, X, dtype=np.float64)
        n_features = X.shape[1]
        self.dichotomous_mask_ = self._mask(n_features)
        ids = getattr(self, "feature_names_in_", None)
        ids = [str(i) for i in ids] if ids is not None else [f"x{j}" for j in range(n_features)]
        likert = Likert(int(self.likert_k))
        items = []
        for j, item_id in enumerate(ids):
            items.append((item_id, Dichotomous(1, 2) if self.dichotomous_mask_[j] else likert))
        probe = QuestionnaireDesign(tuple(items), (self.raw_low, self.raw_high))
        if self.upper is None:
            self.upper_ = calibrate(likert.k).suggested_upper
        else:
            self.upper_ = int(self.upper)
        upper_scale = Dichotomous(1, self.upper_)
        self.design_ = QuestionnaireDesign(
            tuple((i, upper_scale if isinstance(s, Dichotomous) else s) for i, s in probe.items),
            probe.raw_mapping,
        )
        self.audit_ = audit_design(self.design_, likert.k)
        return self

    def transform(self, X):
        check_is_fitted(self, "design_")
        X = validate_data(self, X, dtype=np.float64, reset=False)
        mask = self.dichotomous_mask_
        k = self.design_.k if self.design_.k is not None else int(self.likert_k)
        lik = X[:, ~mask]
        dich = X[:, mask]
        bad_l = ~((lik >= 1) & (lik <= k) & (lik == np.floor(lik)))
        bad_d = ~((dich == self.raw_low) | (dich == self.raw_high))
        if bad_l.any() or bad_d.any():
            cols_l = np.flatnonzero(~mask)
            cols_d = np.flatnonzero(mask)
            ids = self.design_.item_ids
            violations = [(int(r), ids[cols_l[c]], float(lik[r, c]), f"Likert answer not in 1..{k}")
                          for r, c in zip(*np.nonzero(bad_l))]
            violations += [(int(r), ids[cols_d[c]], float(dich[r, c]),
                            f"dichotomous answer not in raw domain {[self.raw_low, self.raw_high]}")
                           for r, c in zip(*np.nonzero(bad_d))]
            violations.sort(key=lambda v: (v[0], ids.index(v[1])))
            raise ResponseValidationError(violations)
        recoded = np.where(dich == self.raw_high, self.upper_, 1)
        total = lik.sum(axis=1).astype(np.int64) + recoded.sum(axis=1).astype(np.int64)
        return total.reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        return np.asarray(["sum_score"], dtype=object)
