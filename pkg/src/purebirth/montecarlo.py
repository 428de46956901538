"""Exact-event Monte Carlo simulation of the pure-birth chain.

Each replicate gets its own random stream derived from
(master_seed, replicate index) via numpy's SeedSequence spawn keys, so
results are bit-identical for a given master seed regardless of how the
replicates are scheduled (serial or any process pool).  Holding times are
sampled by inverse CDF, -ln(U)/lambda_k with U open in (0, 1), which makes
terminal times scale exactly when every rate is scaled under a common seed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OutOfRange, StateOutOfRange, WrongFamily
from .rates import POWERLAW, RateModel, power_law, rate_at

QUANTILE_LEVELS = (0.05, 0.25, 0.50, 0.75, 0.95)


def replicate_stream(master_seed: int, index: int) -> np.random.Generator:
    """Independent stream for one replicate, a pure function of its inputs."""
    return np.random.default_rng(
        np.random.SeedSequence(master_seed, spawn_key=(index,)))


@dataclass(frozen=True)
class Trajectory:
    """One sample path: (event time, state) pairs up to absorption."""

    events: list[tuple[float, int]]
    absorbed: bool
    terminal_time: float


@dataclass(frozen=True)
class MonteCarloSummary:
    replicates: int
    master_seed: int
    mean: float
    std_error: float
    quantiles: dict[float, float]
    time_unit: str


@dataclass(frozen=True)
class StateHistogram:
    """Replicate counts per state at a fixed time."""

    time: float
    states: np.ndarray
    counts: np.ndarray
    replicates: int


@dataclass(frozen=True)
class ExplosionReport:
    """Cap-hitting times for quadratically accelerating rates."""

    summary: MonteCarloSummary
    cap: int
    analytic_mean: float
    limit_bound: float


def _holding_times(model: RateModel, start_state: int,
                   rng: np.random.Generator) -> np.ndarray:
    """One exponential holding time per transient state >= start_state."""
    absorbing = model.absorbing_state
    lam = np.array([rate_at(model, k) for k in range(start_state, absorbing)])
    if lam.size == 0:
        return lam
    u = rng.random(lam.size)
    while (zero := u == 0.0).any():  # log(0) guard; probability ~2^-53
        u[zero] = rng.random(int(zero.sum()))
    return -np.log(u) / lam


def simulate_path(model: RateModel, start_state: int,
                  stream: np.random.Generator) -> Trajectory:
    """One exact sample path from start_state to the absorbing/cap state."""
    absorbing = model.absorbing_state
    if not 1 <= start_state <= absorbing:
        raise StateOutOfRange(
            f"start_state {start_state} outside [1, {absorbing}]")
    holds = _holding_times(model, start_state, stream)
    times = np.concatenate(([0.0], np.cumsum(holds)))
    events = [(float(t), start_state + i) for i, t in enumerate(times)]
    return Trajectory(events=events, absorbed=True,
                      terminal_time=float(times[-1]))


def _simulate_chunk(model, start_state, master_seed, lo, hi, t):
    lam = np.array([rate_at(model, k)
                    for k in range(start_state, model.absorbing_state)])
    terminal = np.empty(hi - lo)
    states = np.empty(hi - lo, dtype=np.int64) if t is not None else None
    for i in range(lo, hi):
        rng = replicate_stream(master_seed, i)
        if lam.size:
            u = rng.random(lam.size)
            while (zero := u == 0.0).any():
                u[zero] = rng.random(int(zero.sum()))
            cum = np.cumsum(-np.log(u) / lam)
            terminal[i - lo] = cum[-1]
        else:
            cum = lam
            terminal[i - lo] = 0.0
        if t is not None:
            states[i - lo] = start_state + np.searchsorted(cum, t, side="right")
    return lo, terminal, states


def _simulate_ensemble(model, start_state, replicates, master_seed,
                       t=None, n_jobs=1):
    """Terminal times (and states at time t) for every replicate, in
    replicate order regardless of how the chunks are scheduled."""
    terminal = np.empty(replicates)
    states = np.empty(replicates, dtype=np.int64) if t is not None else None
    if n_jobs and n_jobs > 1:
        chunk = -(-replicates // n_jobs)
        bounds = [(lo, min(lo + chunk, replicates))
                  for lo in range(0, replicates, chunk)]
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            futures = [pool.submit(_simulate_chunk, model, start_state,
                                   master_seed, lo, hi, t)
                       for lo, hi in bounds]
            for future in futures:
                lo, term, st = future.result()
                terminal[lo:lo + len(term)] = term
                if states is not None:
                    states[lo:lo + len(st)] = st
    else:
        _, terminal, states = _simulate_chunk(model, start_state, master_seed,
                                              0, replicates, t)
    return terminal, states


def estimate_absorption_time(model: RateModel, start_state: int,
                             replicates: int, master_seed: int,
                             n_jobs: int = 1) -> MonteCarloSummary:
    """Monte Carlo estimate of E(T) over independent replicates."""
    if replicates < 2:
        raise OutOfRange(f"replicates must be >= 2, got {replicates}")
    terminal, _ = _simulate_ensemble(model, start_state, replicates,
                                     master_seed, n_jobs=n_jobs)
    return summarize_terminal_times(terminal, master_seed, model.time_unit)


def summarize_terminal_times(terminal: np.ndarray, master_seed: int,
                             time_unit: str) -> MonteCarloSummary:
    replicates = len(terminal)
    mean = float(np.mean(terminal))
    std_error = float(np.std(terminal, ddof=1) / math.sqrt(replicates))
    qs = np.quantile(terminal, QUANTILE_LEVELS)
    return MonteCarloSummary(replicates=replicates, master_seed=master_seed,
                             mean=mean, std_error=std_error,
                             quantiles=dict(zip(QUANTILE_LEVELS, map(float, qs))),
                             time_unit=time_unit)


def empirical_distribution_at(model: RateModel, start_state: int, t: float,
                              replicates: int, master_seed: int,
                              n_jobs: int = 1) -> StateHistogram:
    """Replicate counts per state at time t (empirical forward solution)."""
    if t < 0:
        raise OutOfRange(f"t must be >= 0, got {t}")
    if replicates < 1:
        raise OutOfRange(f"replicates must be >= 1, got {replicates}")
    _, states_at_t = _simulate_ensemble(model, start_state, replicates,
                                        master_seed, t=t, n_jobs=n_jobs)
    absorbing = model.absorbing_state
    support = np.arange(start_state, absorbing + 1)
    counts = np.bincount(states_at_t - start_state,
                         minlength=len(support))
    return StateHistogram(time=t, states=support, counts=counts,
                          replicates=replicates)


def explosion_study(model: RateModel, start_state: int, replicates: int,
                    master_seed: int, cap: Optional[int] = None,
                    n_jobs: int = 1) -> ExplosionReport:
    """Distribution of the time to hit the cap under lambda_k = c k^2.

    The mean is reported against the analytic partial sum
    (1/c) sum_{k=start}^{cap-1} 1/k^2 and the limiting bound pi^2/(6c).
    """
    if model.family != POWERLAW or model.exponent != 2:
        raise WrongFamily("explosion_study requires a powerlaw model "
                          "with exponent +2")
    if cap is not None and cap != model.state_cap:
        model = power_law(model.coefficient, model.exponent, cap,
                          model.time_unit)
    cap = model.state_cap
    if cap < start_state + 1:
        raise OutOfRange(f"cap {cap} must exceed start_state {start_state}")
    summary = estimate_absorption_time(model, start_state, replicates,
                                       master_seed, n_jobs=n_jobs)
    c = model.coefficient
    analytic = math.fsum(1.0 / k ** 2 for k in range(start_state, cap)) / c
    return ExplosionReport(summary=summary, cap=cap, analytic_mean=analytic,
                           limit_bound=math.pi ** 2 / (6.0 * c))
