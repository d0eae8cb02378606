"""Circular density families, trigonometric moments, and exact samplers.

Three asymmetric families are implemented:

* ``SSWCParams`` -- sine-skewed wrapped Cauchy, parameters (mu, rho, lambda);
* ``SSvMParams`` -- sine-skewed von Mises, parameters (mu, kappa, lambda);
* ``MCParams``   -- Moebius-transformed Cardioid, parameters
  (mu, rho_alpha, rho_bar, xi), which is asymmetric but not sine-skewed.

For the two sine-skewed families the density is
``f0(theta - mu) * (1 + lambda * sin(theta - mu))`` with a symmetric base
``f0``, and the pth trigonometric moments have closed forms in terms of the
base cosine moments ``alpha0_p`` (rho**p for the wrapped Cauchy base,
A_p(kappa) for the von Mises base).  The Moebius-Cardioid moments have their
own two-term closed form.  ``trig_moment_quadrature`` provides the
independent oracle for all of these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .angles import TWO_PI, trig_of_product, wrap_2pi
from .bessel import MAX_ARGUMENT, log_bessel_i
from .errors import DomainError, ParameterError
from .quadrature import integrate_adaptive

MAX_MOMENT_ORDER = 10**6       # closed-form moments
MAX_QUAD_MOMENT_ORDER = 500    # oscillatory quadrature envelope
QUAD_ABS_TOL = 1e-10

_MC_VALIDATION_GRID = 2048
_MC_NEGATIVITY_FLOOR = -1e-12
_MC_CDF_NODES = 4096


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


@dataclass(frozen=True)
class SSWCParams:
    """Sine-skewed wrapped Cauchy parameters (mu, rho, lam)."""

    mu: float
    rho: float
    lam: float

    family = "sswc"

    def __post_init__(self):
        _check(0.0 <= self.mu < TWO_PI, f"mu must lie in [0, 2*pi), got {self.mu}")
        _check(0.0 < self.rho < 1.0, f"rho must lie in (0, 1), got {self.rho}")
        _check(-1.0 <= self.lam <= 1.0, f"lambda must lie in [-1, 1], got {self.lam}")


@dataclass(frozen=True)
class SSvMParams:
    """Sine-skewed von Mises parameters (mu, kappa, lam).

    kappa is capped at the Bessel argument envelope (100); beyond it the
    normalising constant leaves the supported special-function range.
    """

    mu: float
    kappa: float
    lam: float

    family = "ssvm"

    def __post_init__(self):
        _check(0.0 <= self.mu < TWO_PI, f"mu must lie in [0, 2*pi), got {self.mu}")
        _check(
            0.0 < self.kappa <= MAX_ARGUMENT,
            f"kappa must lie in (0, {MAX_ARGUMENT}], got {self.kappa}",
        )
        _check(-1.0 <= self.lam <= 1.0, f"lambda must lie in [-1, 1], got {self.lam}")


@dataclass(frozen=True)
class MCParams:
    """Moebius-transformed Cardioid parameters (mu, rho_alpha, rho_bar, xi).

    The parameter space leaves rho_bar unbounded above, but large values can
    push the density negative; construction validates nonnegativity on a
    2048-point grid and rejects offending vectors.
    """

    mu: float
    rho_alpha: float
    rho_bar: float
    xi: float

    family = "mc"

    def __post_init__(self):
        _check(-math.pi <= self.mu < math.pi, f"mu must lie in [-pi, pi), got {self.mu}")
        _check(
            0.0 < self.rho_alpha < 1.0,
            f"rho_alpha must lie in (0, 1), got {self.rho_alpha}",
        )
        _check(self.rho_bar > 0.0, f"rho_bar must be positive, got {self.rho_bar}")
        _check(-math.pi <= self.xi < math.pi, f"xi must lie in [-pi, pi), got {self.xi}")
        grid = np.linspace(0.0, TWO_PI, _MC_VALIDATION_GRID, endpoint=False)
        low = float(np.min(_mc_density_raw(self, grid)))
        if low < _MC_NEGATIVITY_FLOOR:
            raise ParameterError(
                f"MC density dips to {low:.3e} on the validation grid; "
                "rho_bar is too large for (rho_alpha, xi)"
            )


CircularModel = Union[SSWCParams, SSvMParams, MCParams]


@dataclass(frozen=True)
class TrigMoment:
    """pth trigonometric moment: alpha = E[cos(p*Theta)], beta = E[sin(p*Theta)]."""

    p: int
    alpha: float
    beta: float


@dataclass(frozen=True)
class BaseCosineMoment:
    """pth cosine moment of the symmetric base density (sine moment is 0)."""

    p: int
    value: float


@dataclass(frozen=True)
class MrlEval:
    """pth mean resultant length with a log-domain companion."""

    p: int
    value: float
    log_value: float


def _require_sine_skewed(model: CircularModel, op: str) -> None:
    if isinstance(model, MCParams):
        raise DomainError(f"{op} requires a sine-skewed family (sswc or ssvm), got mc")


def base_cosine_moment(model: CircularModel, p: int) -> BaseCosineMoment:
    """alpha0_p of the symmetric base: rho**|p| (SSWC) or A_|p|(kappa) (SSvM)."""
    _require_sine_skewed(model, "base_cosine_moment")
    q = abs(int(p))
    if isinstance(model, SSWCParams):
        value = model.rho ** q
    else:
        value = 1.0 if q == 0 else math.exp(
            log_bessel_i(q, model.kappa) - log_bessel_i(0, model.kappa)
        )
    return BaseCosineMoment(p=q, value=value)


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

def _wc_base(t, rho):
    return (1.0 - rho * rho) / (TWO_PI * (1.0 + rho * rho - 2.0 * rho * np.cos(t)))


def _mc_density_raw(model: MCParams, theta):
    """MC density without the nonnegativity clamp (used by validation)."""
    t = np.asarray(theta, dtype=float) - model.mu
    ra, rb, xi = model.rho_alpha, model.rho_bar, model.xi
    denom = 1.0 + ra * ra - 2.0 * ra * np.cos(t)
    h = 1.0 + 2.0 * rb * (
        (np.cos(t - xi) - 2.0 * ra * math.cos(xi) + ra * ra * np.cos(t + xi)) / denom
    )
    return (1.0 - ra * ra) * h / (TWO_PI * denom)


def density(model: CircularModel, theta):
    """Density at ``theta`` (scalar or array); 2*pi-periodic, nonnegative."""
    arr = np.asarray(theta, dtype=float)
    if isinstance(model, SSWCParams):
        t = arr - model.mu
        out = _wc_base(t, model.rho) * (1.0 + model.lam * np.sin(t))
    elif isinstance(model, SSvMParams):
        t = arr - model.mu
        log_i0 = log_bessel_i(0, model.kappa)
        out = (
            np.exp(model.kappa * np.cos(t) - log_i0)
            * (1.0 + model.lam * np.sin(t))
            / TWO_PI
        )
    elif isinstance(model, MCParams):
        out = _mc_density_raw(model, arr)
        # roundoff at validated parameters can leave values a hair below zero
        out = np.where(out < 0.0, 0.0, out)
    else:
        raise DomainError(f"unknown circular model {model!r}")
    return float(out) if np.ndim(theta) == 0 else out


def sine_skew_decomposition(model: CircularModel, t: float):
    """Split f at offset t from mu into (symmetric part, odds).

    odds = [f(mu+t) - f(mu-t)] / [f(mu+t) + f(mu-t)], which for a
    sine-skewed density equals lambda*sin(t) exactly.
    """
    _require_sine_skewed(model, "sine_skew_decomposition")
    f_plus = density(model, model.mu + t)
    f_minus = density(model, model.mu - t)
    total = f_plus + f_minus
    return 0.5 * total, (f_plus - f_minus) / total


# ---------------------------------------------------------------------------
# closed-form moments
# ---------------------------------------------------------------------------

def trig_moment_closed(model: CircularModel, p: int) -> TrigMoment:
    """Closed-form (alpha_p, beta_p); valid for any integer |p| <= 1e6.

    Negative orders follow conjugate symmetry alpha_{-p} = alpha_p,
    beta_{-p} = -beta_p; the SSWC/SSvM formulas honour it as written, the
    MC formula is evaluated at |p| and flipped.
    """
    p = int(p)
    if abs(p) > MAX_MOMENT_ORDER:
        raise DomainError(f"|p| must be <= {MAX_MOMENT_ORDER}, got {p}")
    if p == 0:
        return TrigMoment(p=0, alpha=1.0, beta=0.0)
    if isinstance(model, SSWCParams):
        sin_pm, cos_pm = trig_of_product(p, model.mu)
        rho, lam = model.rho, model.lam
        a0 = rho ** abs(p)
        dip = rho ** abs(p - 1) - rho ** abs(p + 1)
        return TrigMoment(
            p=p,
            alpha=cos_pm * a0 - sin_pm * lam * dip / 2.0,
            beta=sin_pm * a0 + cos_pm * lam * dip / 2.0,
        )
    if isinstance(model, SSvMParams):
        sin_pm, cos_pm = trig_of_product(p, model.mu)
        ratio = math.exp(
            log_bessel_i(abs(p), model.kappa) - log_bessel_i(0, model.kappa)
        )
        g = p * model.lam / model.kappa
        return TrigMoment(
            p=p,
            alpha=(cos_pm - g * sin_pm) * ratio,
            beta=(sin_pm + g * cos_pm) * ratio,
        )
    if isinstance(model, MCParams):
        q = abs(p)
        sin_qm, cos_qm = trig_of_product(q, model.mu)
        sin_qmx = sin_qm * math.cos(model.xi) + cos_qm * math.sin(model.xi)
        cos_qmx = cos_qm * math.cos(model.xi) - sin_qm * math.sin(model.xi)
        ra, rb = model.rho_alpha, model.rho_bar
        b_q = q * rb * ra ** (q - 1) * (1.0 - ra * ra)
        alpha = b_q * cos_qmx + ra ** q * cos_qm
        beta = b_q * sin_qmx + ra ** q * sin_qm
        return TrigMoment(p=p, alpha=alpha, beta=beta if p > 0 else -beta)
    raise DomainError(f"unknown circular model {model!r}")


def mean_resultant_length(model: CircularModel, p: int) -> MrlEval:
    """rho_p = sqrt(alpha_p**2 + beta_p**2) from the closed forms, log domain."""
    p = int(p)
    if p < 0:
        raise DomainError(f"mean_resultant_length needs p >= 0, got {p}")
    if p == 0:
        return MrlEval(p=0, value=1.0, log_value=0.0)
    if isinstance(model, SSWCParams):
        rho, lam = model.rho, model.lam
        bracket = rho * rho + lam * lam * (1.0 - rho * rho) ** 2 / 4.0
        log_value = (p - 1) * math.log(rho) + 0.5 * math.log(bracket)
    elif isinstance(model, SSvMParams):
        k, lam = model.kappa, model.lam
        log_value = (
            log_bessel_i(p, k)
            - log_bessel_i(0, k)
            + 0.5 * math.log(k * k + (p * lam) ** 2)
            - math.log(k)
        )
    elif isinstance(model, MCParams):
        ra, rb = model.rho_alpha, model.rho_bar
        s = p * rb * (1.0 - ra * ra)
        bracket = s * s + ra * ra + 2.0 * s * ra * math.cos(model.xi)
        if bracket <= 0.0:
            return MrlEval(p=p, value=0.0, log_value=-math.inf)
        log_value = (p - 1) * math.log(ra) + 0.5 * math.log(bracket)
    else:
        raise DomainError(f"unknown circular model {model!r}")
    return MrlEval(p=p, value=math.exp(log_value), log_value=log_value)


def base_moment_ratio(model: CircularModel, p: int) -> float:
    """(alpha0_{p-1} - alpha0_{p+1}) / alpha0_p via the analytic simplification.

    SSWC gives the p-independent constant 1/rho - rho; SSvM gives 2p/kappa
    (three-term Bessel recurrence).  Returned from these forms directly, not
    by subtracting nearly equal special-function values.
    """
    p = int(p)
    if p < 1:
        raise DomainError(f"base_moment_ratio needs p >= 1, got {p}")
    _require_sine_skewed(model, "base_moment_ratio")
    if isinstance(model, SSWCParams):
        return 1.0 / model.rho - model.rho
    return 2.0 * p / model.kappa


# ---------------------------------------------------------------------------
# quadrature oracle
# ---------------------------------------------------------------------------

def trig_moment_quadrature(model: CircularModel, p: int) -> TrigMoment:
    """(alpha_p, beta_p) by adaptive quadrature over [0, 2*pi); the oracle.

    Absolute tolerance 1e-10 on each component; the initial panel count
    scales with |p| so no panel spans more than a fraction of an oscillation.
    """
    p = int(p)
    if abs(p) > MAX_QUAD_MOMENT_ORDER:
        raise DomainError(
            f"|p| must be <= {MAX_QUAD_MOMENT_ORDER} for quadrature, got {p}"
        )
    splits = max(16, 4 * abs(p))
    alpha = integrate_adaptive(
        lambda th: np.cos(p * th) * density(model, th),
        0.0,
        TWO_PI,
        abs_tol=QUAD_ABS_TOL,
        initial_splits=splits,
    ).value
    beta = integrate_adaptive(
        lambda th: np.sin(p * th) * density(model, th),
        0.0,
        TWO_PI,
        abs_tol=QUAD_ABS_TOL,
        initial_splits=splits,
    ).value
    return TrigMoment(p=p, alpha=alpha, beta=beta)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def _sample_wrapped_cauchy(mu: float, rho: float, n: int, rng) -> np.ndarray:
    """Exact inversion: theta = mu + 2*atan(((1-rho)/(1+rho)) * tan(pi*(u-1/2)))."""
    u = rng.uniform(size=n)
    core = 2.0 * np.arctan(((1.0 - rho) / (1.0 + rho)) * np.tan(np.pi * (u - 0.5)))
    return wrap_2pi(mu + core)


def _vm_envelope_rho(kappa: float) -> float:
    """Wrapped-Cauchy envelope concentration tuned per kappa."""
    if kappa < 1e-3:
        return 0.0
    tau = 1.0 + math.sqrt(1.0 + 4.0 * kappa * kappa)
    return (tau - math.sqrt(2.0 * tau)) / (2.0 * kappa)


def _sample_von_mises(mu: float, kappa: float, n: int, rng) -> np.ndarray:
    """Rejection from a wrapped-Cauchy envelope; exact for every kappa.

    The acceptance constant is the maximum of
    h(t) = exp(kappa*t) * (1 + rho**2 - 2*rho*t) over t in [-1, 1], found at
    the analytic stationary point of h.
    """
    rho = _vm_envelope_rho(kappa)
    t_star = (1.0 + rho * rho) / (2.0 * rho) - 1.0 / kappa if rho > 0.0 else 1.0
    t_star = min(1.0, max(-1.0, t_star))
    log_m = kappa * t_star + math.log(1.0 + rho * rho - 2.0 * rho * t_star)

    out = np.empty(n)
    filled = 0
    while filled < n:
        k = n - filled
        cand = _sample_wrapped_cauchy(0.0, rho, k, rng)
        t = np.cos(cand)
        log_ratio = kappa * t + np.log(1.0 + rho * rho - 2.0 * rho * t) - log_m
        keep = np.log(rng.uniform(size=k)) <= log_ratio
        kept = cand[keep]
        out[filled: filled + kept.size] = kept
        filled += kept.size
    return wrap_2pi(mu + out)


def _sine_skew_reflect(theta0: np.ndarray, mu: float, lam: float, rng) -> np.ndarray:
    """Reflection step: keep theta0 w.p. (1 + lam*sin(theta0-mu))/2, else mirror."""
    u = rng.uniform(size=theta0.size)
    keep = u < 0.5 * (1.0 + lam * np.sin(theta0 - mu))
    return wrap_2pi(np.where(keep, theta0, 2.0 * mu - theta0))


def _mc_cdf_table(model: MCParams):
    """Per-cell Gauss integrals of the density, accumulated into a CDF table."""
    edges = np.linspace(0.0, TWO_PI, _MC_CDF_NODES + 1)
    nodes, weights = np.polynomial.legendre.leggauss(5)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    theta = mid[:, None] + half * nodes[None, :]
    cell_mass = half * (density(model, theta.ravel()).reshape(-1, 5) @ weights)
    cdf = np.concatenate([[0.0], np.cumsum(cell_mass)])
    return edges, cdf / cdf[-1]


def sample(model: CircularModel, n: int, seed: int) -> np.ndarray:
    """n i.i.d. draws from the model; deterministic for a given seed.

    SSWC/SSvM use the exact reflection construction on top of their
    symmetric bases; MC uses inversion of a tabulated CDF (4096 cells,
    binary search plus linear correction inside the located cell).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    if isinstance(model, SSWCParams):
        theta0 = _sample_wrapped_cauchy(model.mu, model.rho, n, rng)
        return _sine_skew_reflect(theta0, model.mu, model.lam, rng)
    if isinstance(model, SSvMParams):
        theta0 = _sample_von_mises(model.mu, model.kappa, n, rng)
        return _sine_skew_reflect(theta0, model.mu, model.lam, rng)
    if isinstance(model, MCParams):
        edges, cdf = _mc_cdf_table(model)
        u = rng.uniform(size=n)
        idx = np.searchsorted(cdf, u, side="right") - 1
        idx = np.clip(idx, 0, edges.size - 2)
        frac = (u - cdf[idx]) / (cdf[idx + 1] - cdf[idx])
        return edges[idx] + frac * (edges[1] - edges[0])
    raise DomainError(f"unknown circular model {model!r}")
