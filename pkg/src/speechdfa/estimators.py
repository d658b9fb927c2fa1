"""scikit-learn compatible wrappers.

``DFA`` turns raw series into exponents, and the two classifiers turn
exponents into labels, so they chain in a :class:`sklearn.pipeline.Pipeline`::

    >>> from sklearn.pipeline import make_pipeline
    >>> pipe = make_pipeline(DFA(), ModeClassifier())
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import classify
from .dfa import default_grid, dfa
from .exceptions import PreconditionError
from .validation import check_alphas, check_series_batch

__all__ = ["DFA", "ModeClassifier", "EmotionClassifier"]


class DFA(TransformerMixin, BaseEstimator):
    """Detrended fluctuation analysis as a stateless transformer.

    Parameters
    ----------
    grid_min : int, default=16
    grid_max : int, optional
        Defaults to ``N // 4`` for each series.
    grid_count : int, default=20
    crossover : int, optional
        If set, :meth:`transform` returns ``[alpha, alpha_fast, alpha_slow]``.
    both_ends : bool, default=False

    Attributes
    ----------
    reports_ : list of ScalingReport
        Per-series results from the last call to :meth:`fit`.
    curves_ : list of FluctuationCurve
    alpha_ : ndarray of shape (n_series,)
    """

    def __init__(self, grid_min=16, grid_max=None, grid_count=20, crossover=None, both_ends=False):
        self.grid_min = grid_min
        self.grid_max = grid_max
        self.grid_count = grid_count
        self.crossover = crossover
        self.both_ends = both_ends

    def _analyze(self, series):
        grid = default_grid(series.size, self.grid_min, self.grid_max, self.grid_count)
        return dfa(series, grid, crossover=self.crossover, both_ends=self.both_ends, return_curve=True)

    def fit(self, X, y=None):
        results = [self._analyze(s) for s in check_series_batch(X)]
        self.reports_ = [r for r, _ in results]
        self.curves_ = [c for _, c in results]
        self.alpha_ = np.array([r.alpha for r in self.reports_])
        return self

    def transform(self, X):
        reports = [self._analyze(s)[0] for s in check_series_batch(X)]
        if self.crossover is None:
            return np.array([[r.alpha] for r in reports])
        return np.array([[r.alpha, r.alpha_fast, r.alpha_slow] for r in reports])

    def fit_transform(self, X, y=None, **fit_params):
        self.fit(X, y)
        if self.crossover is None:
            return self.alpha_[:, None]
        return np.array([[r.alpha, r.alpha_fast, r.alpha_slow] for r in self.reports_])


class ModeClassifier(ClassifierMixin, BaseEstimator):
    """Threshold rule separating recitation from free reading."""

    def __init__(self, threshold=classify.DEFAULT_THRESHOLD, recitation_below=True):
        self.threshold = threshold
        self.recitation_below = recitation_below

    def fit(self, X=None, y=None):
        self.classes_ = np.array([classify.FREE_READING, classify.RECITATION])
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        return np.array([
            classify.classify_mode(a, self.threshold, self.recitation_below).value
            for a in check_alphas(X)
        ])


class EmotionClassifier(ClassifierMixin, BaseEstimator):
    """Nearest-centroid emotion band.

    Parameters
    ----------
    bands : list of EmotionBand or dict, optional
        Fixed centroids. Defaults to the Table 2 recitation means. Ignored
        when :meth:`fit` receives labels.

    Notes
    -----
    ``fit(X, y)`` with labels re-estimates one centroid per label as the mean
    exponent of that label, which is how the defaults were obtained.
    """

    def __init__(self, bands=None):
        self.bands = bands

    def _initial_bands(self):
        if self.bands is None:
            return classify.emotion_bands()
        if isinstance(self.bands, dict):
            items = [classify.EmotionBand(k, float(v)) for k, v in self.bands.items()]
        else:
            items = list(self.bands)
        return sorted(items, key=lambda b: b.centroid)

    def fit(self, X=None, y=None):
        if y is None:
            bands = self._initial_bands()
        else:
            alphas = check_alphas(X)
            labels = np.asarray(y)
            if labels.shape != alphas.shape:
                raise PreconditionError("X and y must have the same number of samples")
            bands = sorted(
                (classify.EmotionBand(str(name), float(alphas[labels == name].mean()))
                 for name in np.unique(labels)),
                key=lambda b: b.centroid,
            )
        self.bands_ = classify._check_bands(bands)
        self.classes_ = np.array([b.name for b in self.bands_])
        self.centroids_ = np.array([b.centroid for b in self.bands_])
        return self

    def predict(self, X):
        check_is_fitted(self, "bands_")
        return np.array([
            classify.classify_emotion(a, self.bands_).name for a in check_alphas(X)
        ])
