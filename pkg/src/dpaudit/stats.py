"""Scalar statistical special functions.

Standard normal CDF / quantile / log-CDF plus exact binomial tail
probabilities and one-sided Clopper-Pearson upper confidence bounds.
Everything here is a pure function of its arguments and safe to call
from any number of threads.
"""

from __future__ import annotations

import math
from functools import lru_cache

_SQRT2 = math.sqrt(2.0)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Coefficients of Acklam's rational approximation to the normal quantile
# (relative error < 1.15e-9 before refinement).
_ACKLAM_A = (
    -3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
    1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00,
)
_ACKLAM_B = (
    -5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
    6.680131188771972e01, -1.328068155288572e01,
)
_ACKLAM_C = (
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
    -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00,
)
_ACKLAM_D = (
    7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
    3.754408661907416e00,
)
_ACKLAM_P_LOW = 0.02425


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    if not math.isfinite(x):
        raise ValueError(f"normal_cdf requires finite x, got {x!r}")
    return 0.5 * math.erfc(-x / _SQRT2)


def normal_sf(x: float) -> float:
    """Upper tail P[Z >= x], accurate for large positive x."""
    if not math.isfinite(x):
        raise ValueError(f"normal_sf requires finite x, got {x!r}")
    return 0.5 * math.erfc(x / _SQRT2)


def normal_log_cdf(x: float) -> float:
    """log Phi(x), usable deep in the lower tail where Phi underflows.

    Below x = -36 the complementary error function is at the edge of the
    normal float range, so an asymptotic Mills-ratio expansion is used
    instead: Phi(x) = phi(x)/|x| * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8).
    """
    if not math.isfinite(x):
        raise ValueError(f"normal_log_cdf requires finite x, got {x!r}")
    if x > -36.0:
        return math.log(0.5 * math.erfc(-x / _SQRT2))
    z = x * x
    series = 1.0 - (1.0 / z) * (1.0 - (3.0 / z) * (1.0 - (5.0 / z) * (1.0 - 7.0 / z)))
    return -0.5 * z - _LOG_SQRT_2PI - math.log(-x) + math.log(series)


def _quantile_guess(p: float) -> float:
    # Acklam's piecewise rational approximation.
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    if p < _ACKLAM_P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    if p > 1.0 - _ACKLAM_P_LOW:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    q = p - 0.5
    r = q * q
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / (
        ((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0
    )


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF.

    A rational initial guess is refined by two Newton steps; the residual
    Phi(x) - p is evaluated through whichever tail avoids cancellation.
    """
    if not math.isfinite(p) or p < 0.0 or p > 1.0:
        raise ValueError(f"normal_quantile requires p in [0, 1], got {p!r}")
    if p == 0.0 or p == 1.0:
        raise ValueError(f"normal_quantile is infinite at p = {p!r}")
    x = _quantile_guess(p)
    q = 1.0 - p
    for _ in range(2):
        if x >= 0.0:
            residual = q - normal_sf(x)  # = Phi(x) - p without cancellation
        else:
            residual = normal_cdf(x) - p
        density = math.exp(-0.5 * x * x - _LOG_SQRT_2PI)
        if density == 0.0:
            break
        x -= residual / density
    return x


def binomial_tail(k: int, n: int, p: float) -> float:
    """Pr[X <= k] for X ~ Binomial(n, p), by direct summation.

    Exact binomial coefficients keep this usable as a brute-force oracle;
    the power product is evaluated jointly so intermediate underflow only
    occurs for terms that are negligible anyway.
    """
    if k != int(k) or n != int(n):
        raise ValueError("binomial_tail requires integer k and n")
    k, n = int(k), int(n)
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial_tail requires 0 <= k <= n, got k={k}, n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binomial_tail requires p in [0, 1], got {p!r}")
    if k == n or p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0
    log_p = math.log(p)
    log_q = math.log1p(-p)
    total = 0.0
    for i in range(k + 1):
        total += math.comb(n, i) * math.exp(i * log_p + (n - i) * log_q)
    return min(total, 1.0)


@lru_cache(maxsize=None)
def _cp_upper_cached(k: int, n: int, alpha: float) -> float:
    # Pr[X <= k | p] is strictly decreasing in p for k < n, so bisect.
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if binomial_tail(k, n, mid) > alpha:
            lo = mid
        else:
            hi = mid
    return hi


def clopper_pearson_upper(k: int, n: int, alpha: float) -> float:
    """One-sided Clopper-Pearson upper confidence bound at level 1 - alpha.

    Returns the smallest p such that Pr[X <= k | Binomial(n, p)] <= alpha,
    found by bisection on the binomial tail (tolerance 1e-12 on p).
    k = n carries no upper information and returns 1.0.
    """
    if k != int(k) or n != int(n):
        raise ValueError("clopper_pearson_upper requires integer k and n")
    k, n = int(k), int(n)
    if n < 1:
        raise ValueError(f"clopper_pearson_upper requires n >= 1, got n={n}")
    if k < 0 or k > n:
        raise ValueError(f"clopper_pearson_upper requires 0 <= k <= n, got k={k}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"clopper_pearson_upper requires alpha in (0, 1), got {alpha!r}")
    if k == n:
        return 1.0
    return _cp_upper_cached(k, n, alpha)
