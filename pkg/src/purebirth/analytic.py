"""Closed-form results for the absorption time of the pure-birth chain.

The time T to full infection is a sum of independent exponential holding
times, one per transient state, so its mean is the sum of reciprocal rates
and its variance the sum of squared reciprocal rates.  For the yule family
the mean has the closed form ((N-1)/(p mu N)) * H_{N-1} and the
large-population approximation ln(N) / (p mu).  When the rates are pairwise
distinct, T is hypoexponential with an explicit partial-fraction density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OutOfRange, RepeatedRates, StateOutOfRange, WrongFamily
from .rates import YULE, RateModel, rate_at, transient_states

# Euler-Mascheroni constant, for the refined ln(N) + gamma diagnostic.
EULER_GAMMA = 0.5772156649015329

# rates closer than this (relative) are treated as repeated
DISTINCT_RTOL = 1e-9


def harmonic_number(n: int) -> float:
    """H_n = sum of 1/k for k = 1..n, by compensated direct summation."""
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    return math.fsum(1.0 / k for k in range(1, n + 1))


@dataclass(frozen=True)
class AbsorptionTimeReport:
    """Mean and variance of the time to reach the absorbing/cap state."""

    exact_mean: float
    variance: float
    start_state: int
    time_unit: str
    # ln(N)/(p mu), yule family only
    approx_mean: Optional[float] = None
    # (ln(N) + gamma)/(p mu): diagnostic explaining the exact-vs-approx gap
    approx_mean_refined: Optional[float] = None


def expected_absorption_time(model: RateModel,
                             start_state: int = 1) -> AbsorptionTimeReport:
    """Exact E(T) and Var(T) from start_state, as a sum over holding times.

    For yule models started at state 1 the direct sum is cross-checked
    against the harmonic closed form ((N-1)/(p mu N)) * H_{N-1} and the
    ln(N)/(p mu) approximation is reported alongside.
    """
    states = transient_states(model)
    if start_state not in states:
        raise StateOutOfRange(
            f"start_state {start_state} is not transient for this model")
    rates = [rate_at(model, k) for k in states if k >= start_state]
    exact = math.fsum(1.0 / lam for lam in rates)
    variance = math.fsum(1.0 / lam ** 2 for lam in rates)

    approx = refined = None
    if model.family == YULE:
        n = model.population
        p = model.transmission_prob
        mu = model.per_capita_rate
        approx = math.log(n) / (p * mu)
        refined = (math.log(n) + EULER_GAMMA) / (p * mu)
        if start_state == 1:
            closed = (n - 1) / (p * mu * n) * harmonic_number(n - 1)
            if abs(closed - exact) > 1e-10 * exact:
                raise ArithmeticError(
                    "harmonic closed form disagrees with the direct sum: "
                    f"{closed!r} vs {exact!r}")
    return AbsorptionTimeReport(exact_mean=exact, variance=variance,
                                start_state=start_state,
                                time_unit=model.time_unit,
                                approx_mean=approx,
                                approx_mean_refined=refined)


def expected_absorption_time_approx(model: RateModel) -> float:
    """Large-population approximation ln(N) / (p mu), yule family only."""
    if model.family != YULE:
        raise WrongFamily(
            "the ln(N)/(p mu) approximation applies to the yule family only")
    return math.log(model.population) / (
        model.transmission_prob * model.per_capita_rate)


@dataclass(frozen=True)
class HittingTimeDistribution:
    """Hypoexponential law of T when all transient rates are distinct.

    density(t) = sum_k C_k lambda_k exp(-lambda_k t) with the
    partial-fraction weights C_k = prod_{j != k} lambda_j / (lambda_j - lambda_k).
    """

    rates: np.ndarray
    coefficients: np.ndarray
    distinct: bool = True

    def pdf(self, t):
        t = np.asarray(t, dtype=float)
        terms = (self.coefficients * self.rates
                 * np.exp(-np.multiply.outer(t, self.rates)))
        return terms.sum(axis=-1)

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        terms = self.coefficients * np.exp(-np.multiply.outer(t, self.rates))
        return 1.0 - terms.sum(axis=-1)

    def mean(self) -> float:
        return math.fsum(1.0 / lam for lam in self.rates)

    def implied_mean(self) -> float:
        """Mean from the partial-fraction form, sum of C_k / lambda_k."""
        return math.fsum(c / lam
                         for c, lam in zip(self.coefficients, self.rates))


def hitting_time_distribution(model: RateModel,
                              start_state: int = 1) -> HittingTimeDistribution:
    """Closed-form law of the absorption time from start_state.

    Raises RepeatedRates when two transient rates coincide within relative
    tolerance 1e-9 (the mixing families always do from start_state 1 by the
    k(N-k) symmetry); callers should fall back to the forward solver.
    """
    states = transient_states(model)
    if start_state not in states:
        raise StateOutOfRange(
            f"start_state {start_state} is not transient for this model")
    rates = np.array([rate_at(model, k) for k in states if k >= start_state])
    diff = np.abs(rates[:, None] - rates[None, :])
    scale = np.maximum(np.abs(rates[:, None]), np.abs(rates[None, :]))
    too_close = diff <= DISTINCT_RTOL * scale
    np.fill_diagonal(too_close, False)
    if too_close.any():
        i, j = np.argwhere(too_close)[0]
        raise RepeatedRates(
            f"rates for states {states[0] + i} and {states[0] + j} coincide; "
            "use the forward solver for the hitting-time law")
    m = len(rates)
    coeffs = np.empty(m)
    for k in range(m):
        others = np.delete(rates, k)
        coeffs[k] = np.prod(others / (others - rates[k]))
    return HittingTimeDistribution(rates=rates, coefficients=coeffs)


@dataclass(frozen=True)
class PowerLawTimeReport:
    """E(T) for rates c * k**(+/-2) summed over states 1..n.

    For exponent +2 the mean stays bounded: ``limit`` is pi^2/(6c) and
    ``tail_bound`` bounds the remainder past n by 1/(c n).  For exponent -2
    the mean grows cubically: ``growth`` is the leading term n^3/(3c).
    """

    value: float
    coefficient: float
    exponent: int
    n: int
    limit: Optional[float] = None
    tail_bound: Optional[float] = None
    growth: Optional[float] = None


def powerlaw_expected_time(c: float, exponent: int, n: int) -> PowerLawTimeReport:
    """Expected time to pass through states 1..n under c * k**exponent rates."""
    if c <= 0:
        raise OutOfRange(f"c must be positive, got {c}")
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    if exponent == 2:
        value = math.fsum(1.0 / k ** 2 for k in range(1, n + 1)) / c
        return PowerLawTimeReport(value=value, coefficient=c, exponent=2, n=n,
                                  limit=math.pi ** 2 / (6.0 * c),
                                  tail_bound=1.0 / (c * n))
    if exponent == -2:
        direct = sum(k * k for k in range(1, n + 1))
        closed = n * (n + 1) * (2 * n + 1) // 6
        if direct != closed:
            raise ArithmeticError(
                f"square-sum closed form failed: {direct} != {closed}")
        return PowerLawTimeReport(value=closed / c, coefficient=c,
                                  exponent=-2, n=n,
                                  growth=n ** 3 / (3.0 * c))
    raise OutOfRange(f"exponent must be +2 or -2, got {exponent}")
