"""Small argument checks raising :class:`~alpwitness.errors.DomainError`."""

import math

import numpy as np

from .errors import DomainError


def check_finite(value, name):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def check_positive(value, name):
    value = check_finite(value, name)
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


def check_non_negative(value, name):
    value = check_finite(value, name)
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value!r}")
    return value


def check_unit_vector(vec, name, tol=1e-12):
    arr = np.asarray(vec, dtype=float)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be a finite 3-vector, got {vec!r}")
    if abs(float(np.linalg.norm(arr)) - 1.0) > tol:
        raise DomainError(f"{name} must have unit norm, got |{name}| = {np.linalg.norm(arr)!r}")
    return tuple(float(x) for x in arr)


def check_grid(grid_min, grid_max, points):
    """Validate a sampling grid; returns the normalized triple."""
    grid_min = check_positive(grid_min, "grid min")
    grid_max = check_positive(grid_max, "grid max")
    if not grid_min < grid_max:
        raise DomainError(f"grid min must be below grid max, got {grid_min!r} >= {grid_max!r}")
    if int(points) != points or points < 2:
        raise DomainError(f"grid needs an integer number of points >= 2, got {points!r}")
    return grid_min, grid_max, int(points)
