"""Angle reduction helpers used across the library.

All angles are canonically reduced to [0, 2*pi) by floor division; distance
between two angles is the shorter arc.  Products ``p * theta`` with large
integer ``p`` are reduced with a compensated two-term scheme so that the
result keeps absolute accuracy near 1e-15 even when the raw product carries
only a handful of significant fractional digits.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi

# float(2*pi) = TWO_PI underestimates the true constant; the residual below
# is the next correction term (double-double representation of 2*pi).
TWO_PI_LO = 2.4492935982947064e-16

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant


def wrap_2pi(theta):
    """Reduce an angle (scalar or array) to [0, 2*pi)."""
    arr = np.asarray(theta, dtype=float)
    out = arr - TWO_PI * np.floor(arr / TWO_PI)
    # rounding can land a hair outside the half-open interval
    out = np.where(out < 0.0, out + TWO_PI, out)
    out = np.where(out >= TWO_PI, out - TWO_PI, out)
    if np.ndim(theta) == 0:
        return float(out)
    return out


def wrap_pm_pi(theta: float) -> float:
    """Reduce a scalar angle to [-pi, pi)."""
    out = math.remainder(theta, TWO_PI)
    if out >= math.pi:
        out -= TWO_PI
    return out


def circular_distance(a: float, b: float) -> float:
    """Shorter-arc distance between two angles, in [0, pi]."""
    d = abs(wrap_2pi(a - b))
    return min(d, TWO_PI - d)


def angles_equal(a: float, b: float, tol: float = 1e-12) -> bool:
    """Equality on the circle up to ``tol`` in arc length."""
    return circular_distance(a, b) <= tol


def _two_product(a: float, b: float):
    """Exact product a*b = hi + lo (Dekker's algorithm)."""
    hi = a * b
    a1 = a * _SPLIT
    ah = a1 - (a1 - a)
    al = a - ah
    b1 = b * _SPLIT
    bh = b1 - (b1 - b)
    bl = b - bh
    lo = ((ah * bh - hi) + ah * bl + al * bh) + al * bl
    return hi, lo


def reduce_product_pm_pi(p: int, theta: float) -> float:
    """``p * theta`` reduced to [-pi, pi), accurate for |p| up to ~1e9.

    The product is formed exactly as a two-term sum, the leading term is
    reduced with the exact ``math.fmod``, and the 2*pi representation error
    is corrected explicitly.
    """
    hi, lo = _two_product(float(p), theta)
    r = math.fmod(hi, TWO_PI)
    k = (hi - r) / TWO_PI  # exact integer quotient
    r = r + lo - k * TWO_PI_LO
    if r >= math.pi:
        r -= TWO_PI
    elif r < -math.pi:
        r += TWO_PI
    return r


def trig_of_product(p: int, theta: float):
    """(sin, cos) of ``p * theta`` via the compensated reduction."""
    r = reduce_product_pm_pi(p, theta)
    return math.sin(r), math.cos(r)
