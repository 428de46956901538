"""Kolmogorov forward equations for the pure-birth chain.

The state distribution p_k(t) obeys the bidiagonal linear system

    p_k'(t) = lambda_{k-1} p_{k-1}(t) - lambda_k p_k(t)

with lambda zero at the absorbing/cap state (where escaping mass collects,
so probability is conserved even under truncation).  Integration is either
an adaptive embedded Runge-Kutta pair (scipy's RK45) or a fixed-step
classical 4th-order scheme for deterministic regression runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StateOutOfRange, ToleranceNotMet
from .rates import RateModel, rate_at

MASS_DEFECT_TOL = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    """Integrator selection and error control.

    method "adaptive" uses an embedded pair with per-step error control;
    "rk4" takes fixed classical steps (step size bounded by max_step and by
    stability of the fastest rate).
    """

    method: str = "adaptive"
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_step: float = math.inf

    def __post_init__(self):
        if self.method not in ("adaptive", "rk4"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.rel_tol <= 0 or self.abs_tol <= 0 or self.max_step <= 0:
            raise ValueError("tolerances and max_step must be positive")


@dataclass(frozen=True)
class DistributionSnapshot:
    """State distribution at one time, over states start_state..absorbing."""

    time: float
    states: np.ndarray
    probabilities: np.ndarray
    mass_defect: float

    def probability_of(self, state: int) -> float:
        lo, hi = self.states[0], self.states[-1]
        if not lo <= state <= hi:
            raise StateOutOfRange(f"state {state} outside [{lo}, {hi}]")
        return float(self.probabilities[state - lo])


def forward_probabilities(model: RateModel, start_state: int, t: float,
                          config: Optional[SolverConfig] = None
                          ) -> DistributionSnapshot:
    """Distribution at time t from a point mass at start_state."""
    return forward_grid(model, start_state, [t], config)[0]


def forward_grid(model: RateModel, start_state: int, times: Sequence[float],
                 config: Optional[SolverConfig] = None
                 ) -> list[DistributionSnapshot]:
    """Snapshots at each requested time (one integration pass).

    Times need not be sorted; each must be >= 0.
    """
    config = config or SolverConfig()
    absorbing = model.absorbing_state
    if not 1 <= start_state <= absorbing:
        raise StateOutOfRange(
            f"start_state {start_state} outside [1, {absorbing}]")
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        return []
    if (times < 0).any():
        raise ValueError("times must be nonnegative")

    states = np.arange(start_state, absorbing + 1)
    lam = np.array([rate_at(model, int(k)) for k in states])
    y0 = np.zeros(len(states))
    y0[0] = 1.0

    def rhs(_t, y):
        out = -lam * y
        out[1:] += lam[:-1] * y[:-1]
        return out

    order = np.argsort(times)
    sorted_times = times[order]
    solutions = np.empty((times.size, len(states)))

    positive = sorted_times > 0
    if positive.any():
        t_end = float(sorted_times[-1])
        t_eval = sorted_times[positive]
        if config.method == "adaptive":
            sol = solve_ivp(rhs, (0.0, t_end), y0, method="RK45",
                            t_eval=t_eval, rtol=config.rel_tol,
                            atol=config.abs_tol, max_step=config.max_step)
            if not sol.success:
                raise ToleranceNotMet(f"adaptive integrator failed: {sol.message}")
            ys = sol.y.T
        else:
            ys = _rk4_at(rhs, y0, t_eval, lam, config)
        solutions[np.flatnonzero(positive)] = ys
    solutions[~positive] = y0

    snapshots = [None] * times.size
    for row, idx in enumerate(order):
        snapshots[idx] = _make_snapshot(float(sorted_times[row]),
                                        states, solutions[row], config)
    return snapshots


def _rk4_at(rhs, y0, t_eval, lam, config):
    # stability of the classical scheme needs h * max_rate comfortably < 2.8
    max_rate = float(lam.max()) if lam.size else 1.0
    h_cap = min(config.max_step, 0.05 / max_rate if max_rate > 0 else math.inf)
    out = np.empty((len(t_eval), len(y0)))
    y = y0.copy()
    t = 0.0
    for i, target in enumerate(t_eval):
        while t < target:
            h = min(h_cap, target - t)
            k1 = rhs(t, y)
            k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
            k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
        out[i] = y
    return out


def _make_snapshot(t, states, y, config):
    mass_defect = abs(1.0 - math.fsum(y))
    if mass_defect > MASS_DEFECT_TOL:
        raise ToleranceNotMet(
            f"probability mass defect {mass_defect:.3e} at t={t}")
    # roundoff-scale negatives are clamped; anything larger means the
    # integrator missed its tolerance
    neg_floor = max(1e-12, 10.0 * config.abs_tol)
    worst = float(y.min())
    if worst < -neg_floor:
        raise ToleranceNotMet(
            f"negative probability {worst:.3e} at t={t} exceeds roundoff floor")
    clipped = np.clip(y, 0.0, 1.0)
    return DistributionSnapshot(time=t, states=states, probabilities=clipped,
                                mass_defect=mass_defect)


def mean_state(snapshot: DistributionSnapshot) -> float:
    """Expected number infected at the snapshot time."""
    return float(np.dot(snapshot.states, snapshot.probabilities))


def absorption_probability(model: RateModel, start_state: int, t: float,
                           config: Optional[SolverConfig] = None) -> float:
    """P(T <= t): mass at the absorbing/cap state at time t."""
    snap = forward_probabilities(model, start_state, t, config)
    return float(snap.probabilities[-1])
