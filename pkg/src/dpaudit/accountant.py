"""Gaussian-DP accounting for the full-batch Gaussian mechanism.

The mechanism composed over T full-batch steps with noise multiplier sigma
satisfies mu-GDP with mu = sqrt(T) / sigma. Conversion between mu and an
(epsilon, delta) budget uses the Gaussian-DP duality

    delta(eps) = Phi(-eps/mu + mu/2) - exp(eps) * Phi(-eps/mu - mu/2),

with the second term evaluated in log space so that large epsilon does not
overflow. This accountant is exact for the full-batch setting and makes no
attempt at subsampling amplification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .stats import normal_log_cdf, normal_quantile

EPS_BRACKET = (0.0, 1000.0)
MU_BRACKET = (1e-6, 100.0)
MAX_BISECT_ITERS = 200


class AccountingError(ArithmeticError):
    """Raised when a conversion cannot be bracketed inside the search range."""


@dataclass(frozen=True)
class PrivacyBudget:
    epsilon: float
    delta: float

    def __post_init__(self):
        if not math.isfinite(self.epsilon) or self.epsilon < 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon!r}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta!r}")


def gdp_compose(step_mus: Iterable[float]) -> float:
    """Total mu of a composition of Gaussian steps: sqrt(sum of mu_i^2)."""
    total = 0.0
    for m in step_mus:
        if not math.isfinite(m) or m < 0.0:
            raise ValueError(f"per-step mu must be >= 0, got {m!r}")
        total += m * m
    return math.sqrt(total)


def delta_from_epsilon_mu(epsilon: float, mu: float) -> float:
    """delta(eps) of a mu-GDP mechanism; in [0, 1) and decreasing in eps."""
    if not math.isfinite(epsilon) or epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    if not math.isfinite(mu) or mu <= 0.0:
        raise ValueError(f"mu must be > 0, got {mu!r}")
    log_t1 = normal_log_cdf(-epsilon / mu + mu / 2.0)
    log_t2 = epsilon + normal_log_cdf(-epsilon / mu - mu / 2.0)
    diff = log_t2 - log_t1  # <= 0 mathematically
    if diff >= 0.0:
        return 0.0
    return math.exp(log_t1) * (-math.expm1(diff))


def mu_to_epsilon(mu: float, delta: float) -> float:
    """Smallest eps >= 0 with delta_from_epsilon_mu(eps, mu) <= delta."""
    if not math.isfinite(mu) or mu < 0.0:
        raise ValueError(f"mu must be >= 0, got {mu!r}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta!r}")
    if mu == 0.0:
        return 0.0
    lo, hi = EPS_BRACKET
    if delta_from_epsilon_mu(lo, mu) <= delta:
        return lo
    if delta_from_epsilon_mu(hi, mu) > delta:
        raise AccountingError(
            f"epsilon for mu={mu!r}, delta={delta!r} exceeds the search "
            f"bracket {EPS_BRACKET}"
        )
    for _ in range(MAX_BISECT_ITERS):
        if hi - lo <= 1e-10:
            break
        mid = 0.5 * (lo + hi)
        if delta_from_epsilon_mu(mid, mu) > delta:
            lo = mid
        else:
            hi = mid
    return hi


def _mu_to_epsilon_or_inf(mu: float, delta: float) -> float:
    try:
        return mu_to_epsilon(mu, delta)
    except AccountingError:
        return math.inf


def epsilon_to_mu(epsilon: float, delta: float) -> float:
    """mu whose (eps, delta) conversion equals epsilon, by outer bisection."""
    if not math.isfinite(epsilon) or epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta!r}")
    if epsilon == 0.0:
        return 0.0
    lo, hi = MU_BRACKET
    if _mu_to_epsilon_or_inf(lo, delta) >= epsilon:
        raise AccountingError(
            f"target epsilon={epsilon!r} is below the bracket floor mu={lo!r}"
        )
    if _mu_to_epsilon_or_inf(hi, delta) < epsilon:
        raise AccountingError(
            f"target epsilon={epsilon!r} needs mu above the bracket {MU_BRACKET}"
        )
    for _ in range(MAX_BISECT_ITERS):
        if hi - lo <= 1e-9:
            break
        mid = 0.5 * (lo + hi)
        if _mu_to_epsilon_or_inf(mid, delta) < epsilon:
            lo = mid
        else:
            hi = mid
    return hi


def calibrate_sigma(budget: PrivacyBudget, steps: int) -> float:
    """Noise multiplier so that `steps` full-batch steps meet the budget."""
    if steps != int(steps) or int(steps) < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    if budget.epsilon <= 0.0:
        raise ValueError("calibration requires a strictly positive epsilon")
    mu = epsilon_to_mu(budget.epsilon, budget.delta)
    return math.sqrt(int(steps)) / mu


def theoretical_epsilon(sigma: float, steps: int, delta: float) -> float:
    """Forward accountant: epsilon of `steps` full-batch steps at `sigma`."""
    if not math.isfinite(sigma) or sigma <= 0.0:
        raise ValueError(f"sigma must be > 0, got {sigma!r}")
    if steps != int(steps) or int(steps) < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    return mu_to_epsilon(math.sqrt(int(steps)) / sigma, delta)


def mu_empirical(fpr_upper: float, fnr_upper: float) -> float:
    """Empirical mu from upper-bounded error rates, clamped at zero.

    mu_emp = Phi^{-1}(1 - FPR_bar) - Phi^{-1}(FNR_bar). Rates of exactly
    0 or 1 have an infinite quantile and must be handled by the caller.
    """
    for name, rate in (("fpr_upper", fpr_upper), ("fnr_upper", fnr_upper)):
        if not math.isfinite(rate) or rate < 0.0 or rate > 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {rate!r}")
        if rate == 0.0 or rate == 1.0:
            raise ValueError(f"{name}={rate!r} is degenerate: quantile is infinite")
    return max(0.0, normal_quantile(1.0 - fpr_upper) - normal_quantile(fnr_upper))
