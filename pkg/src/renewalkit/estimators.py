"""Scikit-learn style estimators wrapping the filter and the Weibull MLE.

These are the two genuinely data-shaped operations of the package, exposed
with fit/transform/get_params semantics so they compose with sklearn
pipelines and model-selection tooling:

* :class:`FirstExitFilter` - stateless transformer mapping an (n, 2) array
  of (timestamp, price) ticks to the (k, 2) array of published updates.
* :class:`WeibullMLE` - density estimator over positive durations in the
  style of ``KernelDensity`` (fit / score_samples / score / sample), with
  fitted attributes carrying the shape, scale, and their standard errors.

The analytic waiting-time machinery itself is not estimator-shaped (it
evaluates functionals of a known law); use :mod:`renewalkit.waiting`
directly for that.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import ValidationError
from .fitting import fit_weibull
from .ratefilter import FilteredSeries, TickSeries, first_exit_filter
from .waiting import WaitingTimeAnalysis, analyze_uniform

__all__ = ["FirstExitFilter", "WeibullMLE"]


def _as_tick_array(X) -> np.ndarray:
    X = check_array(X, ensure_2d=True, dtype=float)
    if X.shape[1] != 2:
        raise ValidationError(
            f"tick input must have exactly 2 columns (timestamp, price), got {X.shape[1]}"
        )
    return X


class FirstExitFilter(BaseEstimator, TransformerMixin):
    """Transformer publishing a tick only when it moves >= epsilon from the last publish.

    Parameters
    ----------
    epsilon : float, default=0.1
        Band half-width in price units; the boundary is inclusive.
    """

    def __init__(self, epsilon: float = 0.1):
        self.epsilon = epsilon

    def fit(self, X, y=None):
        _as_tick_array(X)
        self.n_features_in_ = 2
        return self

    def transform(self, X) -> np.ndarray:
        """Filter an (n, 2) array of (timestamp, price) rows.

        Returns the (k, 2) array of published (timestamp, rate) rows.
        """
        X = _as_tick_array(X)
        filtered = self._filter(X)
        return np.column_stack([filtered.times, filtered.rates])

    def transform_series(self, ticks: TickSeries) -> FilteredSeries:
        """Same operation on the package's native tick container."""
        return first_exit_filter(ticks, self.epsilon)

    def durations(self, X) -> np.ndarray:
        """Inter-update durations of the filtered series for X."""
        X = _as_tick_array(X)
        return np.diff(self._filter(X).times)

    def _filter(self, X: np.ndarray) -> FilteredSeries:
        return first_exit_filter(TickSeries(times=X[:, 0], prices=X[:, 1]), self.epsilon)


class WeibullMLE(BaseEstimator):
    """Maximum-likelihood Weibull density estimator for positive durations.

    Uses the stretched-exponential parameterization
    ``pdf(x) = (m / a) x**(m-1) exp(-x**m / a)``; the conventional scale is
    exposed as ``conventional_scale_`` (= a**(1/m)).

    Attributes (after fit)
    ----------------------
    shape_ : float
        Fitted shape m.
    scale_factor_ : float
        Fitted scale-like a.
    conventional_scale_ : float
        lambda = a**(1/m).
    stderr_shape_, stderr_scale_factor_ : float
        Approximate standard errors from the observed information.
    log_likelihood_ : float
        Log-likelihood at the optimum.
    n_samples_fit_ : int
    law_ : Weibull
        The fitted duration law object.
    """

    def __init__(self):
        pass

    @staticmethod
    def _as_durations(X) -> np.ndarray:
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 2 and arr.shape[1] == 1:
            arr = arr[:, 0]
        if arr.ndim != 1:
            raise ValidationError("durations must be a 1-d array or a single column")
        return arr

    def fit(self, X, y=None):
        durations = self._as_durations(X)
        result = fit_weibull(durations)
        self.fit_result_ = result
        self.shape_ = result.m_hat
        self.scale_factor_ = result.a_hat
        self.conventional_scale_ = result.conventional_scale
        self.stderr_shape_, self.stderr_scale_factor_ = result.stderr
        self.log_likelihood_ = result.log_likelihood
        self.n_samples_fit_ = result.n
        self.law_ = result.distribution()
        return self

    def score_samples(self, X) -> np.ndarray:
        """Log-density of each duration under the fitted law."""
        check_is_fitted(self, "law_")
        durations = self._as_durations(X)
        with np.errstate(divide="ignore"):
            return np.log(self.law_.pdf(durations))

    def score(self, X) -> float:
        """Total log-likelihood of X under the fitted law."""
        return float(np.sum(self.score_samples(X)))

    def sample(self, n_samples: int = 1, random_state: int | None = 0) -> np.ndarray:
        """Draw durations from the fitted law (seeded; no silent entropy)."""
        check_is_fitted(self, "law_")
        if random_state is None:
            raise ValidationError("random_state is required: sampling must be reproducible")
        return self.law_.sample(n_samples, random_state)

    def waiting_analysis(self) -> WaitingTimeAnalysis:
        """Uniform-observation waiting-time bundle for the fitted law."""
        check_is_fitted(self, "law_")
        return analyze_uniform(self.law_)
