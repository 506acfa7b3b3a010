"""Small input-validation helpers used by every public surface."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def check_positive(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0.0:
        raise ValidationError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_nonnegative(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0.0:
        raise ValidationError(f"{name} must be finite and >= 0, got {value!r}")
    return value


def check_count(value: int, name: str, minimum: int = 1) -> int:
    if int(value) != value or int(value) < minimum:
        raise ValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def as_float_array(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        arr = np.atleast_1d(np.squeeze(arr))
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional, got shape {np.shape(x)}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    return arr


def as_positive_array(x, name: str, min_size: int = 1) -> np.ndarray:
    arr = as_float_array(x, name)
    if arr.size < min_size:
        raise ValidationError(f"{name} needs at least {min_size} values, got {arr.size}")
    if np.any(arr <= 0.0):
        raise ValidationError(f"{name} must be strictly positive everywhere")
    return arr


def as_nonnegative_times(x, name: str):
    """Validate scalar-or-array time arguments; returns (array, was_scalar)."""
    scalar = np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite and >= 0")
    return arr, scalar
