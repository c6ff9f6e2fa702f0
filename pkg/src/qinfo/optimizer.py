"""Derivative-free global optimization over ParamSpaces.

Each run alternates macro-cycles of simulated annealing and coordinate
pattern search (hill climbing) until two consecutive cycle bests agree
within consistency_tol. Multiple independent starts are merged
deterministically, so a fixed seed gives a bit-identical result.

Objectives may return +inf (the infinite-divergence signal) for
infeasible points; the search moves through such points without crashing.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import OptimizationFailedError, ValidationError

# proportionality constant between (temperature x bound width) and the
# annealing proposal scale
_PROPOSAL_FACTOR = 0.1
_MIN_STEP = 1e-10


@dataclass(frozen=True)
class OptimizerConfig:
    n_starts: int = 4
    anneal_initial_temp: float = 1.0
    anneal_cooling: float = 0.95
    anneal_sweeps: int = 100
    climb_max_iters: int = 400
    climb_initial_step: float = 0.1  # fraction of each bound interval
    climb_shrink: float = 0.5
    consistency_tol: float = 1e-6
    max_cycles: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.n_starts < 1:
            raise ValidationError("n_starts must be >= 1")
        if self.anneal_initial_temp <= 0:
            raise ValidationError("anneal_initial_temp must be > 0")
        if not 0 < self.anneal_cooling < 1:
            raise ValidationError("anneal_cooling must be in (0, 1)")
        if not 0 < self.climb_shrink < 1:
            raise ValidationError("climb_shrink must be in (0, 1)")


@dataclass
class OptimizationResult:
    best_params: np.ndarray
    best_value: float
    cycle_values: list
    converged: bool
    evaluations: int


class _Counter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _anneal_stage(f, x, fx, best, lower, upper, widths, temp, config, rng, counter):
    n = x.shape[0]
    for _ in range(config.anneal_sweeps):
        scale = _PROPOSAL_FACTOR * temp * widths
        for i in range(n):
            xi = x[i] + rng.normal(0.0, scale[i])
            xi = min(max(xi, lower[i]), upper[i])
            old = x[i]
            x[i] = xi
            fnew = f(x)
            counter.n += 1
            if fnew < best[1]:
                best[0] = x.copy()
                best[1] = fnew
            if fnew <= fx or (math.isinf(fx) and math.isinf(fnew)):
                fx = fnew
            elif math.isfinite(fnew) and rng.random() < math.exp(-(fnew - fx) / temp):
                fx = fnew
            else:
                x[i] = old
        temp *= config.anneal_cooling
    return x, fx


def _climb_stage(f, x, fx, best, lower, upper, widths, config, counter):
    n = x.shape[0]
    steps = config.climb_initial_step * widths
    for _ in range(config.climb_max_iters):
        improved = False
        for i in range(n):
            old = x[i]
            for cand in (min(old + steps[i], upper[i]), max(old - steps[i], lower[i])):
                if cand == old:
                    continue
                x[i] = cand
                fnew = f(x)
                counter.n += 1
                if fnew < fx:
                    fx = fnew
                    improved = True
                    break
                x[i] = old
        if fx < best[1]:
            best[0] = x.copy()
            best[1] = fx
        if not improved:
            steps = steps * config.climb_shrink
            if np.max(steps) < _MIN_STEP:
                break
    return x, fx


def _run_start(f, space, config, start_index, callback, counter):
    rng = np.random.default_rng([config.seed, start_index])
    lower = space.lower
    upper = space.upper
    widths = upper - lower
    x = rng.uniform(lower, upper)
    fx = f(x)
    counter.n += 1
    best = [x.copy(), fx]
    temp = config.anneal_initial_temp
    cycle_values = []
    converged = False
    for cycle in range(config.max_cycles):
        x, fx = _anneal_stage(
            f, x, fx, best, lower, upper, widths, temp, config, rng, counter
        )
        # restart each climb from the best point seen so far
        x = best[0].copy()
        fx = best[1]
        x, fx = _climb_stage(f, x, fx, best, lower, upper, widths, config, counter)
        cycle_values.append(best[1])
        if callback is not None:
            callback(cycle, best[1])
        if len(cycle_values) >= 2 and abs(cycle_values[-1] - cycle_values[-2]) < config.consistency_tol:
            converged = True
            break
        # each new cycle anneals at a reduced temperature
        temp *= config.anneal_cooling ** config.anneal_sweeps
    return best[0], best[1], cycle_values, converged


def minimize(objective, space, config=None, callback=None):
    """Global minimization of objective over the ParamSpace bounding box.

    The objective takes a parameter vector (always within bounds) and
    returns a real or +inf. Raises OptimizationFailedError if every probe
    of every start was infinite.
    """
    config = config or OptimizerConfig()
    counter = _Counter()

    def f(x):
        return float(objective(x))

    best = None
    for start in range(config.n_starts):
        params, value, cycles, converged = _run_start(
            f, space, config, start, callback, counter
        )
        if best is None or value < best[1]:
            best = (params, value, cycles, converged)
    if not math.isfinite(best[1]):
        raise OptimizationFailedError(
            "objective was infinite at every probed point",
            best_params=best[0],
            best_value=best[1],
        )
    return OptimizationResult(
        best_params=best[0],
        best_value=best[1],
        cycle_values=best[2],
        converged=best[3],
        evaluations=counter.n,
    )


def maximize(objective, space, config=None, callback=None):
    """maximize(f) = -minimize(-f), reported in the caller's sign convention."""
    cb = None
    if callback is not None:
        cb = lambda cycle, value: callback(cycle, -value)

    def negated(x):
        v = float(objective(x))
        return -v

    try:
        result = minimize(negated, space, config, cb)
    except OptimizationFailedError as exc:
        raise OptimizationFailedError(
            str(exc),
            best_params=exc.best_params,
            best_value=-exc.best_value if exc.best_value is not None else None,
        ) from exc
    result.best_value = -result.best_value
    result.cycle_values = [-v for v in result.cycle_values]
    return result


def scaled_config(config, first_feasible_value):
    """Copy of config with the annealing temperature set to the scale of
    the objective (used by optimization-backed measures)."""
    t0 = max(abs(first_feasible_value), 1e-3)
    return replace(config, anneal_initial_temp=t0)
