"""Modified Bessel functions of the first kind, integer order.

The evaluator sums the ascending power series

    I_p(x) = sum_{r>=0} (x/2)^(2r+p) / ((p+r)! r!)

in a factored form: the common prefactor (x/2)^p / p! is carried in the log
domain, and the remaining bracket series (which starts at 1 and is bounded
by exp(x^2/4)) is summed forward with compensated addition.  This keeps the
evaluation stable over the whole supported envelope, including orders where
I_p(x) itself underflows double precision.

Only what the circular/cylindrical families need is provided: I_p, the
moment ratio A_p(x) = I_p(x)/I_0(x), and a residual check of the three-term
recurrence I_{p-1}(x) - I_{p+1}(x) = (2p/x) I_p(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NumericError

MAX_ORDER = 200
MAX_ARGUMENT = 100.0

_TERM_STOP = 1e-17  # next term / partial sum below this ends the summation
_MAX_TERMS = 500


@dataclass(frozen=True)
class BesselEval:
    """One evaluation of I_p(x).

    ``value`` is exp(``log_value``); for large order at small argument the
    linear value underflows to 0.0 and ``log_value`` is the authoritative
    result.
    """

    order: int
    argument: float
    value: float
    log_value: float


def _validate(order: int, x: float, min_order: int = 0) -> None:
    if not isinstance(order, (int,)) or isinstance(order, bool):
        raise DomainError(f"order must be an integer, got {order!r}")
    if order < min_order:
        raise DomainError(f"order must be >= {min_order}, got {order}")
    if order > MAX_ORDER:
        raise DomainError(f"order {order} outside supported envelope (<= {MAX_ORDER})")
    if not (0.0 < x <= MAX_ARGUMENT):
        raise DomainError(
            f"argument {x} outside supported envelope (0 < x <= {MAX_ARGUMENT})"
        )


def _log_bracket(order: int, x: float) -> float:
    """log of the bracket series 1 + sum_{r>=1} (x/2)^(2r) / prod-terms.

    The bracket equals I_p(x) * p! / (x/2)^p.  Terms are positive, so a
    forward Kahan sum with a term-ratio stopping rule is accurate to a few
    ulps.  Raises NumericError if the iteration cap is hit (cannot happen
    inside the envelope; kept as a hard backstop).
    """
    q = 0.25 * x * x
    total = 1.0
    comp = 0.0  # Kahan compensation
    term = 1.0
    for r in range(1, _MAX_TERMS + 1):
        term *= q / (r * (order + r))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if term < _TERM_STOP * total:
            return math.log(total)
    raise NumericError(
        f"I_{order}({x}) series did not converge within {_MAX_TERMS} terms",
        achieved=term / total,
    )


def log_bessel_i(order: int, x: float) -> float:
    """log I_p(x) without the order cap; used internally for high-p moments.

    The series converges for every order (faster as the order grows), so the
    public MAX_ORDER envelope is a contract choice, not a numerical limit.
    """
    if order < 0 or not (0.0 < x <= MAX_ARGUMENT):
        raise DomainError(f"log_bessel_i: bad (order, x) = ({order}, {x})")
    prefix = order * math.log(0.5 * x) - math.lgamma(order + 1)
    return prefix + _log_bracket(order, x)


def bessel_i(order: int, x: float) -> BesselEval:
    """Evaluate I_p(x) on the supported envelope (p <= 200, 0 < x <= 100)."""
    _validate(order, x)
    log_value = order * math.log(0.5 * x) - math.lgamma(order + 1) + _log_bracket(order, x)
    return BesselEval(order=order, argument=x, value=math.exp(log_value), log_value=log_value)


def bessel_ratio(order: int, x: float) -> float:
    """A_p(x) = I_p(x)/I_0(x), computed as exp(log I_p - log I_0)."""
    _validate(order, x)
    if order == 0:
        return 1.0
    return math.exp(log_bessel_i(order, x) - log_bessel_i(0, x))


def check_recurrence(order: int, x: float) -> float:
    """Relative residual of I_{p-1} - I_{p+1} = (2p/x) I_p at (p, x).

    All three orders are rescaled by I_p before subtracting, so the residual
    is meaningful even where the raw values underflow.
    """
    _validate(order, x, min_order=1)
    log_mid = log_bessel_i(order, x)
    lo = math.exp(log_bessel_i(order - 1, x) - log_mid)
    hi = math.exp(log_bessel_i(order + 1, x) - log_mid)
    rhs = 2.0 * order / x
    return abs(lo - hi - rhs) / rhs
