"""Worst-case activity statistics for small pools of homes and inhabitants.

Dimensioning a shared network element needs the peak number of simultaneously
active users behind it, not the average. For a pool of n subscribers with
individual activity probability s, that count is the 1 - epsilon percentile of
Binomial(n, s); for the number of inhabitants behind n homes it is the same
percentile of the n-fold sum of the per-home size distribution. Both are
computed exactly here, and repeated evaluations are accelerated by a
three-point fitted approximation of the form max(a*n + b*n**c, n*mean).

All values are pure functions of their inputs and all types are immutable,
so everything in this module is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln
from scipy.stats import norm

__all__ = [
    "CONVOLUTION_CAP",
    "DEFAULT_FIT_ANCHORS",
    "DEFAULT_HOUSEHOLD_PROBABILITIES",
    "EXACT_BINOMIAL_LIMIT",
    "ConfidenceLevel",
    "ConvolutionCapacityError",
    "HouseholdDistribution",
    "ParameterDomainError",
    "QuantileApprox",
    "QuantileFitError",
    "binomial_quantile",
    "convolution_quantile",
    "default_household_distribution",
    "eval_quantile_approx",
    "fit_quantile_approx",
]

#: Largest pool size for which the binomial tail is summed exactly in log
#: space. Above it the quantile is within a fraction of a percent of the mean
#: and the continuity-corrected normal tail is used instead.
EXACT_BINOMIAL_LIMIT = 100_000

#: Largest number of homes for which the exact self-convolution is attempted.
CONVOLUTION_CAP = 4096

#: Pool sizes interpolated by the fitted approximation.
DEFAULT_FIT_ANCHORS = (16, 128, 1024)

#: Share of homes housing 1..6+ inhabitants (France, 2019 census).
DEFAULT_HOUSEHOLD_PROBABILITIES: Mapping[int, float] = {
    1: 0.369,
    2: 0.326,
    3: 0.135,
    4: 0.113,
    5: 0.041,
    6: 0.016,
}


class ParameterDomainError(ValueError):
    """A probability, confidence level or pool size is outside its domain."""


class ConvolutionCapacityError(RuntimeError):
    """Exact convolution was requested for a pool too large to enumerate.

    Callers hitting this should switch to the fitted approximation, which is
    built from anchor pools far below the cap.
    """

    def __init__(self, n: int, cap: int):
        super().__init__(
            f"exact self-convolution is infeasible for n={n} (cap {cap}); "
            "use a fitted approximation for pools this large"
        )
        self.n = n
        self.cap = cap


class QuantileFitError(RuntimeError):
    """Three-point interpolation could not produce valid coefficients."""

    def __init__(self, message: str, anchors: Sequence[int], values: Sequence[float]):
        detail = ", ".join(f"q({n})={v:g}" for n, v in zip(anchors, values))
        super().__init__(f"{message} [{detail}]")
        self.anchors = tuple(anchors)
        self.values = tuple(values)


@dataclass(frozen=True)
class ConfidenceLevel:
    """Tail mass neglected when reading worst-case percentiles."""

    epsilon: float = 1e-9

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise ParameterDomainError(
                f"confidence epsilon must be in (0, 1), got {self.epsilon}"
            )


def _epsilon(eps: float | ConfidenceLevel) -> float:
    if isinstance(eps, ConfidenceLevel):
        return eps.epsilon
    return ConfidenceLevel(float(eps)).epsilon


@dataclass(frozen=True)
class HouseholdDistribution:
    """Discrete distribution of inhabitants per home, finite support >= 1."""

    probabilities: Mapping[int, float]

    def __post_init__(self) -> None:
        probs = {int(k): float(v) for k, v in self.probabilities.items()}
        if not probs:
            raise ParameterDomainError("household distribution has empty support")
        if min(probs) < 1:
            raise ParameterDomainError("household sizes must be integers >= 1")
        if any(v < 0.0 for v in probs.values()):
            raise ParameterDomainError("household probabilities must be >= 0")
        total = math.fsum(probs.values())
        if abs(total - 1.0) > 1e-12:
            raise ParameterDomainError(
                f"household probabilities sum to {total!r}, expected 1 within 1e-12"
            )
        object.__setattr__(self, "probabilities", dict(sorted(probs.items())))

    @property
    def mean(self) -> float:
        return math.fsum(k * v for k, v in self.probabilities.items())

    @property
    def max_size(self) -> int:
        return max(self.probabilities)

    def pmf_vector(self) -> np.ndarray:
        """Probability mass indexed by household size (zeros below support)."""
        out = np.zeros(self.max_size + 1)
        for size, prob in self.probabilities.items():
            out[size] = prob
        return out


def default_household_distribution() -> HouseholdDistribution:
    return HouseholdDistribution(DEFAULT_HOUSEHOLD_PROBABILITIES)


def binomial_quantile(n: int, p: float, eps: float | ConfidenceLevel) -> int:
    """Smallest q <= n such that P(X > q) < eps for X ~ Binomial(n, p).

    The tail inequality is strict. Exact log-space tail summation is used up
    to ``EXACT_BINOMIAL_LIMIT`` trials; beyond that the normal approximation
    with continuity correction takes over (the quantile is then within a
    fraction of a percent of n*p, where the approximation error is
    negligible). The result never falls below floor(n*p).
    """
    e = _epsilon(eps)
    if n != int(n) or n < 0:
        raise ParameterDomainError(f"pool size must be a non-negative integer, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ParameterDomainError(f"activity probability must be in [0, 1], got {p}")
    n = int(n)
    if n == 0 or p == 0.0:
        return 0
    if p == 1.0:
        return n
    if n <= EXACT_BINOMIAL_LIMIT:
        q = _exact_binomial_tail_quantile(n, p, e)
    else:
        q = _normal_tail_quantile(n, p, e)
    return max(q, math.floor(n * p))


def _exact_binomial_tail_quantile(n: int, p: float, eps: float) -> int:
    k = np.arange(n + 1)
    log_pmf = (
        gammaln(n + 1)
        - gammaln(k + 1)
        - gammaln(n - k + 1)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
    )
    # Accumulate from the top so tiny tail masses never drown in the bulk.
    log_upper = np.logaddexp.accumulate(log_pmf[::-1])[::-1]
    log_tail = np.append(log_upper[1:], -np.inf)  # log P(X > q) for q = 0..n
    return int(np.argmax(log_tail < math.log(eps)))


def _normal_tail_quantile(n: int, p: float, eps: float) -> int:
    z = norm.isf(eps)
    q = math.ceil(n * p + z * math.sqrt(n * p * (1.0 - p)) - 0.5)
    return min(max(q, 0), n)


def convolution_quantile(
    dist: HouseholdDistribution, n: int, eps: float | ConfidenceLevel
) -> int:
    """Exact 1 - eps percentile of the sum of n independent draws from dist.

    Smallest q with P(sum > q) < eps, computed from the full convolved
    probability vector (binary exponentiation on the pmf). Raises
    ``ConvolutionCapacityError`` above ``CONVOLUTION_CAP`` draws.
    """
    e = _epsilon(eps)
    if n != int(n) or n < 1:
        raise ParameterDomainError(f"number of homes must be an integer >= 1, got {n}")
    n = int(n)
    if n > CONVOLUTION_CAP:
        raise ConvolutionCapacityError(n, CONVOLUTION_CAP)
    pmf = _self_convolve(dist.pmf_vector(), n)
    upper = np.cumsum(pmf[::-1])[::-1]  # P(X >= k)
    tail = np.append(upper[1:], 0.0)  # P(X > q)
    q = int(np.argmax(tail < e))
    return max(q, math.floor(n * dist.mean))


def _self_convolve(pmf: np.ndarray, n: int) -> np.ndarray:
    """n-fold self-convolution by square-and-multiply on the pmf vector."""
    result = np.array([1.0])
    power = pmf
    while n:
        if n & 1:
            result = np.convolve(result, power)
        n >>= 1
        if n:
            power = np.convolve(power, power)
    return result


@dataclass(frozen=True)
class QuantileApprox:
    """Closed-form stand-in max(a*n + b*n**c, n*mean) for an exact quantile.

    ``mean`` is the per-unit expectation (activity probability for binomial
    counts, expected inhabitants per home for convolution counts); the
    n*mean branch keeps extrapolation beyond the anchors from dipping below
    the law-of-large-numbers limit.
    """

    a: float
    b: float
    c: float
    mean: float

    def eval(self, n: float) -> float:
        if n < 1:
            raise ParameterDomainError(f"pool size must be >= 1, got {n}")
        return max(self.a * n + self.b * n**self.c, n * self.mean)


def eval_quantile_approx(approx: QuantileApprox, n: float) -> float:
    """Evaluate a fitted approximation at pool size n (real-valued, n >= 1)."""
    return approx.eval(n)


_C_RANGE = (1e-6, 2.0 - 1e-6)
_C_GRID_POINTS = 512
_RESIDUAL_TOL = 1e-10


def fit_quantile_approx(
    exact_quantile: Callable[[int], float],
    anchors: Sequence[int] = DEFAULT_FIT_ANCHORS,
    mean: float = 0.0,
) -> QuantileApprox:
    """Fit a*n + b*n**c through exact_quantile at three anchor pool sizes.

    For a candidate exponent c the coefficients a, b follow linearly from the
    first two anchor equations; c itself is located by bracketing the third
    anchor's residual on (0, 2) and bisecting (Brent). Exactly-linear targets
    are degenerate (any c works with b = 0) and are accepted directly from
    the grid scan.
    """
    if len(anchors) != 3:
        raise ParameterDomainError(f"exactly three anchors required, got {len(anchors)}")
    n1, n2, n3 = (int(n) for n in anchors)
    if not 1 <= n1 < n2 < n3:
        raise ParameterDomainError(f"anchors must be strictly increasing and >= 1, got {anchors}")
    y1, y2, y3 = (float(exact_quantile(n)) for n in (n1, n2, n3))
    values = (y1, y2, y3)

    def solve_ab(c: float) -> tuple[float, float]:
        e1, e2 = n1**c, n2**c
        det = n1 * e2 - n2 * e1  # zero only at c = 1
        a = (y1 * e2 - y2 * e1) / det
        b = (n1 * y2 - n2 * y1) / det
        return a, b

    def residual(c: float) -> float:
        a, b = solve_ab(c)
        return a * n3 + b * n3**c - y3

    scale = max(1.0, abs(y3))
    grid = np.linspace(_C_RANGE[0], _C_RANGE[1], _C_GRID_POINTS)
    grid = grid[np.abs(grid - 1.0) > 1e-7]
    res = np.array([residual(c) for c in grid])
    finite = np.isfinite(res)

    c_fit: float | None = None
    if finite.any():
        best = int(np.nanargmin(np.where(finite, np.abs(res), np.inf)))
        if abs(res[best]) <= _RESIDUAL_TOL * scale:
            c_fit = float(grid[best])
    if c_fit is None:
        for i in range(len(grid) - 1):
            if not (finite[i] and finite[i + 1]):
                continue
            lo, hi = grid[i], grid[i + 1]
            if lo < 1.0 < hi:
                continue  # the linear system is singular at c = 1
            if res[i] == 0.0:
                c_fit = float(lo)
                break
            if res[i] * res[i + 1] < 0.0:
                c_fit = float(brentq(residual, lo, hi, xtol=1e-13, maxiter=200))
                break
    if c_fit is None:
        raise QuantileFitError("no interpolating exponent in (0, 2)", (n1, n2, n3), values)

    a, b = solve_ab(c_fit)
    approx = QuantileApprox(a=a, b=b, c=c_fit, mean=float(mean))
    _validate_fit(approx, (n1, n2, n3), values)
    return approx


def _validate_fit(
    approx: QuantileApprox, anchors: tuple[int, int, int], values: tuple[float, float, float]
) -> None:
    for n, y in zip(anchors, values):
        got = approx.eval(n)
        tol = 1e-6 * max(1.0, abs(y))
        if abs(got - y) > tol:
            raise QuantileFitError(
                f"fitted curve misses anchor n={n}: got {got!r}", anchors, values
            )
    grid = np.linspace(1.0, float(anchors[-1]), 2049)
    evals = np.maximum(
        approx.a * grid + approx.b * grid**approx.c, grid * approx.mean
    )
    slack = 1e-9 * max(1.0, float(np.abs(evals).max()))
    if np.any(np.diff(evals) < -slack):
        raise QuantileFitError("fitted curve is not non-decreasing", anchors, values)
