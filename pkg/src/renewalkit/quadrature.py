"""Gamma function and adaptive quadrature over semi-infinite and wedge domains.

All analytic waiting-time quantities in this package reduce to integrals of
the form ``int_lower^inf f`` or to the wedge integral
``int_0^inf ds int_s^inf dtau f(s, tau)``.  Integrands are typically
duration densities, which for stretched-exponential shapes decay slower than
any exponential and may carry an integrable singularity at the origin, so
the tail is compressed with a variable transform before handing the finite
problem to an adaptive Gauss-Kronrod rule (scipy's QUADPACK).

Two tail transforms are available:

* ``"log-map"`` (default): t = lower + expm1(u).  Turns subexponential
  tails into superexponential ones; robust for every density used here.
* ``"exp-substitution"``: x = 1 - exp(-(t - lower)), mapping to the finite
  interval [0, 1).  Excellent for exponential-or-faster tails, poor for
  stretched exponentials (the transformed integrand develops a near-pole).

Everything here is a pure function of its inputs: same inputs, bit-identical
outputs, safe to call from any number of threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from .errors import QuadratureError, ValidationError

__all__ = [
    "QuadratureSpec",
    "DEFAULT_SPEC",
    "gamma_fn",
    "integrate_semi_infinite",
    "integrate_finite",
    "integrate_box",
]

_TAIL_TRANSFORMS = ("log-map", "exp-substitution")


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy and subdivision budget for the adaptive integrators.

    A result is accepted when the reported error is at most
    ``max(abs_tol, rel_tol * |result|)``; otherwise the integrator raises
    :class:`~renewalkit.errors.QuadratureError` carrying its best estimate.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 200
    tail_transform: str = "log-map"

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValidationError("quadrature tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise ValidationError("max_subdivisions must be >= 1")
        if self.tail_transform not in _TAIL_TRANSFORMS:
            raise ValidationError(
                f"tail_transform must be one of {_TAIL_TRANSFORMS}, "
                f"got {self.tail_transform!r}"
            )

    def tighter(self, factor: float = 1e-2) -> "QuadratureSpec":
        """Spec with tolerances scaled down, for inner integrals of nests."""
        return QuadratureSpec(
            abs_tol=self.abs_tol * factor,
            rel_tol=max(self.rel_tol * factor, 1e-13),
            max_subdivisions=self.max_subdivisions,
            tail_transform=self.tail_transform,
        )


DEFAULT_SPEC = QuadratureSpec()


def gamma_fn(x: float) -> float:
    """Gamma function for strictly positive arguments.

    Evaluated as exp(log-gamma) so that ratios assembled by callers can be
    formed in log space without intermediate overflow.  Raises OverflowError
    when the value itself exceeds the double range (x > ~171.6).
    """
    x = float(x)
    if not np.isfinite(x) or x <= 0.0:
        raise ValidationError(f"gamma_fn requires x > 0, got {x!r}")
    with np.errstate(over="ignore"):
        value = float(np.exp(gammaln(x)))
    if np.isinf(value):
        raise OverflowError(f"gamma({x!r}) exceeds the double-precision range")
    return value


def _check_result(val: float, err: float, ier: int, spec: QuadratureSpec, what: str) -> float:
    bound = max(spec.abs_tol, spec.rel_tol * abs(val))
    if ier != 0 and err > bound:
        raise QuadratureError(f"{what} did not converge", estimate=val, error_bound=err)
    return float(val)


def _quad(f, lo, hi, spec: QuadratureSpec, what: str, points=None) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            f,
            lo,
            hi,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=1,
            points=points,
        )
    val, err = out[0], out[1]
    ier = 0 if len(out) == 3 else 1
    return _check_result(val, err, ier, spec, what)


def integrate_semi_infinite(
    f: Callable[[float], float],
    lower: float = 0.0,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Adaptive integral of ``f`` over ``[lower, inf)``.

    ``f`` is only evaluated inside the domain.  The tail is compressed with
    ``spec.tail_transform`` before adaptive subdivision; non-convergence
    raises :class:`QuadratureError` with the best estimate attached.
    """
    lower = float(lower)
    if lower < 0.0 or not np.isfinite(lower):
        raise ValidationError(f"lower bound must be finite and >= 0, got {lower!r}")

    if spec.tail_transform == "log-map":

        def g(u: float) -> float:
            with np.errstate(over="ignore", invalid="ignore"):
                t = lower + np.expm1(u)
                if not np.isfinite(t):
                    return 0.0
                val = f(t) * np.exp(u)
            return val if np.isfinite(val) else 0.0

        return _quad(g, 0.0, np.inf, spec, "semi-infinite integral (log-map)")

    def g(x: float) -> float:
        one_minus = 1.0 - x
        if one_minus <= 0.0:
            return 0.0
        with np.errstate(over="ignore", invalid="ignore"):
            val = f(lower - np.log1p(-x)) / one_minus
        return val if np.isfinite(val) else 0.0

    return _quad(g, 0.0, 1.0, spec, "semi-infinite integral (exp-substitution)")


def integrate_finite(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    breakpoints=None,
) -> float:
    """Adaptive integral of ``f`` over the finite interval [lower, upper].

    ``breakpoints`` marks interior points where the integrand is known to be
    non-smooth (e.g. density jumps), so subdivision aligns with them.
    """
    if not (np.isfinite(lower) and np.isfinite(upper)) or upper < lower:
        raise ValidationError(f"bad finite interval [{lower!r}, {upper!r}]")
    if upper == lower:
        return 0.0
    points = None
    if breakpoints is not None:
        points = sorted(p for p in breakpoints if lower < p < upper)
        points = points or None
    return _quad(f, lower, upper, spec, "finite integral", points=points)


def integrate_box(
    f: Callable[[float, float], float],
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Iterated adaptive integral over the wedge {0 <= s < inf, s <= tau < inf}.

    Outer integration runs in s, inner in tau; the inner integral is solved
    to a tighter tolerance so its noise does not confuse the outer error
    estimate.
    """
    inner_spec = spec.tighter()

    def inner(s: float) -> float:
        return integrate_semi_infinite(lambda tau: f(s, tau), lower=s, spec=inner_spec)

    return integrate_semi_infinite(inner, lower=0.0, spec=spec)
