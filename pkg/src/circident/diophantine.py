"""Simultaneous Diophantine index search.

Given coefficients c_i in [0, 2), find integers p making every p*c_i*pi
simultaneously close to 0 modulo 2*pi.  The residual of one (p, c) pair is

    pi * dist(p*c, nearest even integer)

and is computed from an exact two-term product p*c = hi + lo followed by the
exact ``fmod(hi, 2)``, so it stays accurate to ~1e-15 absolute for p up to
the 1e9 search cap.  The default engine is an exhaustive ascending scan;
the Dirichlet construction from the classical simultaneous-approximation
theorem is provided as well, but its indices are far from minimal so the
scan is what probes actually use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import TWO_PI, TWO_PI_LO, _two_product
from .errors import DomainError, ExhaustionError, ParameterError

MAX_COEFFS = 8
MAX_P = 10**9
MAX_MOD_ARGUMENT = 1e12
_DIRICHLET_BUDGET = 10**7
_SCAN_CHUNK = 1 << 20


@dataclass(frozen=True)
class DiophantineQuery:
    """Coefficients c_i in [0, 2), tolerance epsilon, and a search cap."""

    coeffs: tuple
    epsilon: float
    p_max: int = MAX_P

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not 1 <= len(self.coeffs) <= MAX_COEFFS:
            raise ParameterError(
                f"need between 1 and {MAX_COEFFS} coefficients, got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if not 0.0 <= c < 2.0:
                raise ParameterError(f"coefficients must lie in [0, 2), got {c}")
        if not 0.0 < self.epsilon < math.pi:
            raise ParameterError(f"epsilon must lie in (0, pi), got {self.epsilon}")
        if not 1 <= self.p_max <= MAX_P:
            raise ParameterError(f"p_max must lie in [1, {MAX_P}], got {self.p_max}")


@dataclass(frozen=True)
class IndexSequence:
    """Strictly increasing indices with their max residuals (< query epsilon)."""

    indices: tuple
    residuals: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(p) for p in self.indices))
        object.__setattr__(self, "residuals", tuple(float(r) for r in self.residuals))
        if len(self.indices) != len(self.residuals):
            raise ParameterError("indices and residuals must have equal length")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ParameterError("indices must be strictly increasing")

    def __len__(self):
        return len(self.indices)


def mod_2pi_distance(x: float) -> float:
    """Distance from x to the nearest multiple of 2*pi, in [0, pi].

    Reduction uses an exact product split of k*2pi plus the explicit
    correction for the representation error of the 2*pi constant, keeping
    ~1e-15 absolute accuracy over the |x| < 1e12 envelope.
    """
    x = float(x)
    if not abs(x) < MAX_MOD_ARGUMENT:
        raise DomainError(f"|x| must be < {MAX_MOD_ARGUMENT:g}, got {x}")
    k = round(x / TWO_PI)
    hi, lo = _two_product(float(k), TWO_PI)
    r = ((x - hi) - lo) - k * TWO_PI_LO
    # one corrective fold in case rounding of k left |r| just above pi
    if r > math.pi:
        r -= TWO_PI
    elif r < -math.pi:
        r += TWO_PI
    return abs(r)


def residual(p: int, c: float) -> float:
    """pi * |p*c mod 2| folded to [0, 1]; equals mod_2pi_distance(p*c*pi)."""
    hi, lo = _two_product(float(p), float(c))
    r = math.fmod(hi, 2.0) + lo
    r = math.fmod(r, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    return abs(r) * math.pi


def _scan_block(p_arr: np.ndarray, coeffs) -> np.ndarray:
    """Vectorised max residual over the coefficients for a block of p values."""
    worst = np.zeros(p_arr.shape)
    for c in coeffs:
        hi = p_arr * c
        a1 = p_arr * 134217729.0
        ah = a1 - (a1 - p_arr)
        al = p_arr - ah
        # c is a compile-time scalar here, split it once
        b1 = c * 134217729.0
        bh = b1 - (b1 - c)
        bl = c - bh
        lo = ((ah * bh - hi) + ah * bl + al * bh) + al * bl
        r = np.fmod(np.fmod(hi, 2.0) + lo, 2.0)
        r = np.where(r > 1.0, r - 2.0, r)
        r = np.where(r < -1.0, r + 2.0, r)
        np.maximum(worst, np.abs(r) * math.pi, out=worst)
    return worst


def scan_next(coeffs, epsilon: float, start: int, p_max: int) -> int | None:
    """Smallest p in [start, p_max] with max residual < epsilon, or None."""
    p = int(start)
    while p <= p_max:
        hi_end = min(p + _SCAN_CHUNK - 1, p_max)
        block = np.arange(p, hi_end + 1, dtype=float)
        hits = np.nonzero(_scan_block(block, coeffs) < epsilon)[0]
        if hits.size:
            return p + int(hits[0])
        p = hi_end + 1
    return None


def find_indices(query: DiophantineQuery, count: int) -> IndexSequence:
    """The ``count`` smallest qualifying indices, by exhaustive ascending scan.

    Raises ExhaustionError carrying the partial sequence if fewer than
    ``count`` indices exist below the query's p_max.
    """
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    indices, residuals = [], []
    p = 1
    while len(indices) < count:
        hit = scan_next(query.coeffs, query.epsilon, p, query.p_max)
        if hit is None:
            partial = IndexSequence(tuple(indices), tuple(residuals))
            raise ExhaustionError(
                f"found {len(indices)} of {count} indices below p_max={query.p_max}",
                partial=partial,
            )
        indices.append(hit)
        residuals.append(max(residual(hit, c) for c in query.coeffs))
        p = hit + 1
    return IndexSequence(tuple(indices), tuple(residuals))


@dataclass(frozen=True)
class DirichletResult:
    p: int
    residual_bound: float   # 2*pi/sqrt(Q), the guaranteed bound
    achieved: float         # max_i p*|c_i*pi - (p_i/q)*pi|
    q: int
    numerators: tuple


def dirichlet_construct(coeffs, big_q: int) -> DirichletResult:
    """Realise the classical construction: find q < Q**s with
    |c_i - p_i/q| <= 1/(qQ) for all i, and return p = 2*q*sqrt(Q).

    The returned p satisfies mod_2pi_distance(p*c_i*pi) <= 2*pi/sqrt(Q).
    Q must be >= 4 with an integer square root, and Q**s must stay within
    the exhaustive q-scan budget.
    """
    coeffs = tuple(float(c) for c in coeffs)
    if not 1 <= len(coeffs) <= MAX_COEFFS:
        raise ParameterError(f"need between 1 and {MAX_COEFFS} coefficients")
    for c in coeffs:
        if not 0.0 <= c < 2.0:
            raise ParameterError(f"coefficients must lie in [0, 2), got {c}")
    root = math.isqrt(int(big_q))
    if big_q < 4 or root * root != big_q:
        raise DomainError(f"Q must be >= 4 with integer sqrt, got {big_q}")
    s = len(coeffs)
    if big_q ** s > _DIRICHLET_BUDGET:
        raise DomainError(
            f"Q**s = {big_q}**{s} exceeds the search budget {_DIRICHLET_BUDGET:g}"
        )
    bound = 1.0 / big_q
    for q in range(1, big_q ** s):
        nums = [round(q * c) for c in coeffs]
        # |q*c - n| <= 1/Q  <=>  |c - n/q| <= 1/(qQ)
        if all(abs(q * c - n) <= bound for c, n in zip(coeffs, nums)):
            p = 2 * q * root
            achieved = max(
                p * abs(c * math.pi - (n / q) * math.pi)
                for c, n in zip(coeffs, nums)
            )
            return DirichletResult(
                p=p,
                residual_bound=TWO_PI / root,
                achieved=achieved,
                q=q,
                numerators=tuple(nums),
            )
    raise ExhaustionError(
        f"no q < {big_q}**{s} satisfied the Dirichlet bound (cannot happen "
        "for coefficients in [0, 2))"
    )
