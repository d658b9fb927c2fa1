"""Input checks used by the estimators."""

import numpy as np

from .exceptions import PreconditionError
from .timeseries import TimeSeries, as_samples


def check_series_batch(X):
    """Coerce `X` to a list of 1-D float arrays.

    Accepts a 2-D array (one series per row), a single 1-D array, or a
    sequence of TimeSeries / 1-D arrays of possibly different lengths.
    """
    if isinstance(X, TimeSeries):
        return [X.samples]
    if isinstance(X, np.ndarray):
        if X.ndim == 1:
            return [as_samples(X)]
        if X.ndim == 2:
            return [as_samples(row) for row in X]
        raise PreconditionError(f"expected 1-D or 2-D input, got {X.ndim}-D")
    X = list(X)
    if not X:
        raise PreconditionError("no series given")
    if all(np.isscalar(v) for v in X):
        return [as_samples(X)]
    return [v.samples if isinstance(v, TimeSeries) else as_samples(v) for v in X]


def check_alphas(X):
    """Coerce exponents to a finite 1-D float array.

    Column vectors of shape ``(n, 1)`` are flattened; wider 2-D input uses the
    first column, which is where :class:`~speechdfa.estimators.DFA` puts the
    full-range exponent.
    """
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    elif arr.ndim == 2:
        arr = arr[:, 0]
    elif arr.ndim != 1:
        raise PreconditionError(f"expected exponents as 1-D or 2-D input, got {arr.ndim}-D")
    if arr.size == 0:
        raise PreconditionError("no exponents given")
    if not np.all(np.isfinite(arr)):
        raise PreconditionError("exponents must be finite")
    return arr
