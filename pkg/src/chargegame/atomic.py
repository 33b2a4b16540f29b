"""Solvers for the finite-player charging game.

Equilibrium logic never goes through utilities or pricing maps: pricing is
strictly increasing, so "deviation is improving" is equivalent to "raw window
cost strictly decreases", and raw window costs stay exact integers whenever
the instance data and the cost function are integral.  All comparisons below
are therefore free of floating-point ties on integer instances.

Symmetric instances (every player shares the same window and duration) are
enumerated in configuration space: a configuration counts how many players
start in each slot, which shrinks the search from ``A**I`` profiles to
``C(I+A-1, A-1)`` compositions.  Asymmetric instances fall back to the full
profile product space.  Both enumerations are deterministic (lexicographic)
and budget-capped.
"""

from __future__ import annotations

import math
import os
from concurrent import futures
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from .model import (
    IDENTITY,
    AtomicInstance,
    ChargingConfiguration,
    GridCostFunction,
    Number,
    StrategyProfile,
    _coerce_profile,
    action_set,
    grid_total_cost,
    load,
    occupancy,
    potential_atomic,
)

BUDGET_ENV_VAR = "CHARGE_GAME_BUDGET"
DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """An exhaustive answer was requested but the search budget ran out.

    ``partial`` carries whatever was computed before the cap, for diagnosis.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IterationBudgetError(RuntimeError):
    """Best-response dynamics exceeded its sweep budget.

    The potential argument guarantees termination, so hitting this means the
    improvement test is broken (e.g. a non-monotone pricing map was supplied).
    """


@dataclass(frozen=True)
class EquilibriumSet:
    """Outcome of an equilibrium enumeration.

    ``equilibria`` holds one ``ChargingConfiguration`` per distinct Nash
    equilibrium (profiles that permute identical players are collapsed),
    sorted by start counts so the listing does not depend on the scan method.
    ``complete`` is False when the budget stopped the scan early, in which
    case the set is a lower bound only.
    """

    equilibria: tuple[ChargingConfiguration, ...]
    complete: bool
    examined: int
    space_size: int
    method: str


@dataclass(frozen=True)
class EfficiencyReport:
    """Worst-equilibrium total cost relative to the social optimum.

    ``value`` is ``worst_cost / optimum_cost`` (>= 1); ``exact`` is the same
    ratio as a ``Fraction`` when both costs are integers, else None.  Atomic
    scans attach the full equilibrium set and configurations; the nonatomic
    solver stores profiles instead and leaves ``equilibria`` as None.
    """

    value: float
    exact: Optional[Fraction]
    worst_equilibrium: Union[ChargingConfiguration, "object"]
    worst_cost: Number
    optimum: Union[ChargingConfiguration, "object"]
    optimum_cost: Number
    equilibria: Optional[EquilibriumSet]


def resolve_budget(budget: Optional[int], default: int = DEFAULT_BUDGET) -> int:
    """Explicit argument, else ``CHARGE_GAME_BUDGET`` env var, else the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else default


# ---------------------------------------------------------------------------
# single-profile operations (exact arithmetic)
# ---------------------------------------------------------------------------


def _loads_without(instance: AtomicInstance, profile: StrategyProfile, player: int) -> list:
    loads = list(load(instance, profile))
    s = profile.starts[player]
    for t in range(s, s + instance.durations[player]):
        loads[t - 1] -= instance.power
    return loads


def _window_sum(cost: GridCostFunction, loads, start: int, duration: int, shift):
    return sum(cost(loads[t - 1] + shift) for t in range(start, start + duration))


def best_response(
    instance: AtomicInstance,
    cost: GridCostFunction,
    profile,
    player: int,
    pricing=IDENTITY,
) -> int:
    """Best start slot for ``player`` against the others' current choices.

    Ties break toward the smallest slot.  The pricing map cannot change the
    argmin (it is strictly increasing), so comparisons stay on raw costs.
    """
    del pricing
    profile = _coerce_profile(instance, profile)
    loads = _loads_without(instance, profile, player)
    P = instance.power
    C = instance.durations[player]
    best_slot = None
    best_cost = None
    for t in action_set(instance, player):
        cand = _window_sum(cost, loads, t, C, P)
        if best_cost is None or cand < best_cost:
            best_slot, best_cost = t, cand
    return best_slot


_REL_MARGIN = 1e-12


def _strictly_less(new, cur):
    """Strict-improvement test with a relative margin for inexact costs.

    Rounding in float window sums can turn an exact tie into a phantom
    improvement of a few ulp, which would misclassify equilibria and make
    the scan methods disagree; floats must clear ``1e-12 * scale``.  Exact
    integer and Fraction costs compare exactly.
    """
    if isinstance(new, float) or isinstance(cur, float):
        return new < cur - _REL_MARGIN * max(1.0, abs(cur))
    return new < cur


def is_nash(
    instance: AtomicInstance,
    cost: GridCostFunction,
    profile,
    pricing=IDENTITY,
) -> bool:
    """True when no player has a strictly improving unilateral deviation."""
    del pricing
    profile = _coerce_profile(instance, profile)
    P = instance.power
    for i in range(instance.I):
        loads = _loads_without(instance, profile, i)
        C = instance.durations[i]
        current = _window_sum(cost, loads, profile.starts[i], C, P)
        for t in action_set(instance, i):
            if t == profile.starts[i]:
                continue
            if _strictly_less(_window_sum(cost, loads, t, C, P), current):
                return False
    return True


def best_response_dynamics(
    instance: AtomicInstance,
    cost: GridCostFunction,
    profile,
    pricing=IDENTITY,
    max_sweeps: int = 10_000,
) -> tuple[StrategyProfile, tuple[Number, ...]]:
    """Round-robin best-response dynamics from a starting profile.

    Players are swept in index order; a player moves only when its best
    response strictly lowers its window cost.  Returns the final profile and
    the potential trace (initial value plus one entry per accepted move); the
    trace is strictly increasing, which is what guarantees termination.
    """
    del pricing
    profile = _coerce_profile(instance, profile)
    starts = list(profile.starts)
    P = instance.power
    trace = [potential_atomic(instance, cost, StrategyProfile(tuple(starts)))]
    for _ in range(max_sweeps):
        moved = False
        for i in range(instance.I):
            current_profile = StrategyProfile(tuple(starts))
            loads = _loads_without(instance, current_profile, i)
            C = instance.durations[i]
            current = _window_sum(cost, loads, starts[i], C, P)
            best_slot, best_cost = starts[i], current
            for t in action_set(instance, i):
                cand = _window_sum(cost, loads, t, C, P)
                if cand < best_cost:
                    best_slot, best_cost = t, cand
            if _strictly_less(best_cost, current):
                starts[i] = best_slot
                trace.append(potential_atomic(instance, cost, StrategyProfile(tuple(starts))))
                moved = True
        if not moved:
            return StrategyProfile(tuple(starts)), tuple(trace)
    raise IterationBudgetError(
        f"best-response dynamics did not settle within {max_sweeps} sweeps"
    )


# ---------------------------------------------------------------------------
# exhaustive scans
# ---------------------------------------------------------------------------


def _is_exact(instance: AtomicInstance, cost: GridCostFunction) -> bool:
    data = (*instance.exogenous, instance.power)
    return cost.is_exact_for_integers and all(isinstance(v, int) for v in data)


def _composition_count(total: int, parts: int) -> int:
    return math.comb(total + parts - 1, parts - 1)


def _compositions_full(total: int, parts: int) -> np.ndarray:
    # all count vectors of length `parts` summing to `total`, lexicographic
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for c in range(total + 1):
        sub = _compositions_full(total - c, parts - 1)
        col = np.full((sub.shape[0], 1), c, dtype=np.int64)
        blocks.append(np.hstack([col, sub]))
    return np.vstack(blocks)


def _composition_blocks(total: int, parts: int, max_rows: int) -> Iterator[np.ndarray]:
    if parts == 1 or _composition_count(total, parts) <= max_rows:
        yield _compositions_full(total, parts)
        return
    for c in range(total + 1):
        for sub in _composition_blocks(total - c, parts - 1, max_rows):
            col = np.full((sub.shape[0], 1), c, dtype=np.int64)
            yield np.hstack([col, sub])


def _ordered_parallel(fn, items: Iterable, threads: int) -> Iterator:
    # ordered map with a bounded in-flight window; result order == input order
    if threads <= 1:
        for item in items:
            yield fn(item)
        return
    items = iter(items)
    with futures.ThreadPoolExecutor(max_workers=threads) as pool:
        window: list = []
        for item in items:
            window.append(pool.submit(fn, item))
            if len(window) >= threads * 2:
                break
        while window:
            result = window.pop(0).result()
            for item in items:
                window.append(pool.submit(fn, item))
                break
            yield result


def _scan_dtype(instance: AtomicInstance, cost: GridCostFunction):
    # int64 when every intermediate fits comfortably, exact objects otherwise
    if not _is_exact(instance, cost):
        return np.float64
    max_load = max(instance.exogenous) + instance.power * (instance.I + 1)
    if instance.horizon.T * cost(max_load) < 2**62:
        return np.int64
    return object


def _eval_block(instance: AtomicInstance, cost: GridCostFunction, counts: np.ndarray, dtype):
    """NE flags and total costs for a block of symmetric configurations."""
    a, d, C = instance.window(0)
    T = instance.horizon.T
    A = counts.shape[1]
    P = instance.power
    m = counts.shape[0]

    if dtype is np.float64:
        work = counts.astype(np.float64)
        exo = np.asarray(instance.exogenous, dtype=np.float64)
    elif dtype is object:
        work = counts.astype(object)
        exo = np.array([int(v) for v in instance.exogenous], dtype=object)
    else:
        work = counts
        exo = np.asarray(instance.exogenous, dtype=np.int64)

    # occupancy per slot: windowed sum of start counts; starts sit in columns
    # a-1 .. a+A-2 of the horizon
    starts_full = np.zeros((m, T), dtype=dtype if dtype is not object else object)
    starts_full[:, a - 1 : a - 1 + A] = work
    spre = np.concatenate([np.zeros((m, 1), dtype=starts_full.dtype), np.cumsum(starts_full, axis=1)], axis=1)
    cols = np.arange(T)
    lo = np.maximum(cols - C + 1, 0)
    occ = spre[:, cols + 1] - spre[:, lo]

    loads = exo[None, :] + P * occ
    F = cost(loads)
    G = cost(loads + P)
    zero = np.zeros((m, 1), dtype=F.dtype if dtype is not object else object)
    Fpre = np.concatenate([zero, np.cumsum(F, axis=1)], axis=1)
    Gpre = np.concatenate([zero, np.cumsum(G, axis=1)], axis=1)

    def fsum(col: int):  # sum of F over horizon columns [col, col+C)
        return Fpre[:, col + C] - Fpre[:, col]

    def gsum(col: int):
        return Gpre[:, col + C] - Gpre[:, col]

    tc = Fpre[:, T]
    ne = np.ones(m, dtype=bool)
    for j in range(A):
        occupied = counts[:, j] > 0
        if not occupied.any():
            continue
        cj = a - 1 + j
        current = fsum(cj)
        if dtype is np.float64:
            bar = current - _REL_MARGIN * np.maximum(1.0, np.abs(current))
        else:
            bar = current
        for j2 in range(A):
            if j2 == j:
                continue
            cj2 = a - 1 + j2
            olo, ohi = max(cj, cj2), min(cj, cj2) + C
            if ohi > olo:
                new_cost = gsum(cj2) - (Gpre[:, ohi] - Gpre[:, olo]) + (Fpre[:, ohi] - Fpre[:, olo])
            else:
                new_cost = gsum(cj2)
            ne &= ~(occupied & (new_cost < bar))
    return counts, ne, tc, occ


def _config_from_counts(instance: AtomicInstance, counts, occ) -> ChargingConfiguration:
    a, _, _ = instance.window(0)
    T = instance.horizon.T
    start_counts = [0] * T
    for j, c in enumerate(counts):
        start_counts[a - 1 + j] = int(c)
    return ChargingConfiguration(tuple(start_counts), tuple(int(v) for v in occ))


def _scan_symmetric(instance: AtomicInstance, cost: GridCostFunction, budget: int, threads: int):
    a, d, C = instance.window(0)
    A = d - C + 2 - a
    I = instance.I
    space = _composition_count(I, A)
    dtype = _scan_dtype(instance, cost)

    block_rows = 1 << 15
    remaining = [min(budget, space)]

    def trimmed_blocks():
        for block in _composition_blocks(I, A, block_rows):
            if remaining[0] <= 0:
                return
            if block.shape[0] > remaining[0]:
                block = block[: remaining[0]]
            remaining[0] -= block.shape[0]
            yield block

    ne_configs: list[ChargingConfiguration] = []
    ne_costs: list = []
    best = None  # (cost, counts tuple, occ)
    examined = 0
    evaluate = lambda block: _eval_block(instance, cost, block, dtype)
    for counts, ne, tc, occ in _ordered_parallel(evaluate, trimmed_blocks(), threads):
        examined += counts.shape[0]
        for idx in np.flatnonzero(ne):
            ne_configs.append(_config_from_counts(instance, counts[idx], occ[idx]))
            ne_costs.append(tc[idx].item() if dtype is not object else tc[idx])
        if counts.shape[0]:
            idx = int(np.argmin(tc))  # first occurrence: lexicographically smallest counts
            block_cost = tc[idx].item() if dtype is not object else tc[idx]
            if best is None or block_cost < best[0]:
                best = (block_cost, tuple(int(v) for v in counts[idx]), occ[idx].copy())
    complete = examined >= space
    return ne_configs, ne_costs, best, examined, space, complete


def _scan_profiles(instance: AtomicInstance, cost: GridCostFunction, budget: int):
    import itertools

    spaces = [list(action_set(instance, i)) for i in range(instance.I)]
    space = math.prod(len(s) for s in spaces)
    # NE status is a property of the profile, not the configuration, once
    # players are heterogeneous: dedup only among profiles that ARE equilibria
    ne_seen: set[ChargingConfiguration] = set()
    ne_configs: list[ChargingConfiguration] = []
    ne_costs: list = []
    ne_count = 0  # NE profiles, the unit matching ``space`` for this method
    best = None  # (cost, config)
    examined = 0
    for starts in itertools.product(*spaces):
        if examined >= budget:
            break
        examined += 1
        config = occupancy(instance, StrategyProfile(starts))
        tc = grid_total_cost(instance, cost, config)
        if best is None or tc < best[0]:
            best = (tc, config)
        if is_nash(instance, cost, StrategyProfile(starts)):
            ne_count += 1
            if config not in ne_seen:
                ne_seen.add(config)
                ne_configs.append(config)
                ne_costs.append(tc)
    complete = examined >= space
    return ne_configs, ne_costs, ne_count, best, examined, space, complete


def _scan(instance: AtomicInstance, cost: GridCostFunction, budget: Optional[int], threads: int, method: str):
    budget = resolve_budget(budget)
    if method == "auto":
        method = "configurations" if instance.is_symmetric else "profiles"
    if method == "configurations":
        if not instance.is_symmetric:
            raise ValueError("configuration-space enumeration requires a symmetric instance")
        ne_configs, ne_costs, best, examined, space, complete = _scan_symmetric(
            instance, cost, budget, threads
        )
        ne_count = len(ne_configs)
        if best is not None:
            best = (best[0], _config_from_counts(instance, best[1], best[2]))
    elif method == "profiles":
        ne_configs, ne_costs, ne_count, best, examined, space, complete = _scan_profiles(
            instance, cost, budget
        )
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return ne_configs, ne_costs, ne_count, best, examined, space, complete, method


def _ordered(ne_configs) -> tuple:
    return tuple(sorted(ne_configs, key=lambda c: c.start_counts))


def enumerate_equilibria(
    instance: AtomicInstance,
    cost: GridCostFunction,
    budget: Optional[int] = None,
    threads: int = 1,
    method: str = "auto",
) -> EquilibriumSet:
    """All Nash-equilibrium configurations, by exhaustive deterministic scan.

    ``method`` is ``"configurations"`` (symmetric instances only),
    ``"profiles"`` (always valid, exponentially larger), or ``"auto"``.
    When the budget runs out first the returned set is flagged incomplete.
    """
    ne_configs, _, _, _, examined, space, complete, method = _scan(
        instance, cost, budget, threads, method
    )
    return EquilibriumSet(_ordered(ne_configs), complete, examined, space, method)


def social_optimum(
    instance: AtomicInstance,
    cost: GridCostFunction,
    budget: Optional[int] = None,
    threads: int = 1,
    method: str = "auto",
) -> tuple[ChargingConfiguration, Number]:
    """Configuration minimizing total grid cost, with its cost.

    Ties break deterministically: configuration scans keep the
    lexicographically smallest start-count vector, profile scans the first
    minimizing profile in lexicographic start order.  Raises
    ``BudgetExceededError`` if the scan could not finish: a partial minimum
    is not an optimum.
    """
    _, _, _, best, examined, space, complete, _ = _scan(instance, cost, budget, threads, method)
    if not complete:
        raise BudgetExceededError(
            f"social optimum scan stopped after {examined} of {space} configurations",
            partial=best,
        )
    return best[1], best[0]


def efficiency(
    instance: AtomicInstance,
    cost: GridCostFunction,
    budget: Optional[int] = None,
    threads: int = 1,
    method: str = "auto",
) -> EfficiencyReport:
    """Worst-case Nash total cost over the social optimum, exhaustively.

    Exact rational arithmetic is used whenever both costs are integers.
    Raises ``BudgetExceededError`` on an incomplete scan.
    """
    ne_configs, ne_costs, _, best, examined, space, complete, method = _scan(
        instance, cost, budget, threads, method
    )
    eq_set = EquilibriumSet(_ordered(ne_configs), complete, examined, space, method)
    if not complete:
        raise BudgetExceededError(
            f"efficiency scan stopped after {examined} of {space} configurations",
            partial=eq_set,
        )
    if not ne_configs:
        raise RuntimeError("no Nash equilibrium found; the potential argument forbids this")
    worst_idx = max(range(len(ne_costs)), key=lambda i: ne_costs[i])
    worst_cost = ne_costs[worst_idx]
    opt_config, opt_cost = best[1], best[0]
    if isinstance(worst_cost, (int, np.integer)) and isinstance(opt_cost, (int, np.integer)):
        exact = Fraction(int(worst_cost), int(opt_cost))
        value = float(exact)
    else:
        exact = None
        value = float(worst_cost) / float(opt_cost)
    return EfficiencyReport(
        value=value,
        exact=exact,
        worst_equilibrium=ne_configs[worst_idx],
        worst_cost=worst_cost,
        optimum=opt_config,
        optimum_cost=opt_cost,
        equilibria=eq_set,
    )


def ne_proportion(
    instance: AtomicInstance,
    cost: GridCostFunction,
    budget: Optional[int] = None,
    threads: int = 1,
    method: str = "auto",
) -> float:
    """Fraction of the scanned space that is a Nash equilibrium.

    The numerator matches the method's unit: equilibrium configurations out
    of all configurations, or equilibrium profiles out of all profiles.
    """
    _, _, ne_count, _, examined, space, complete, method = _scan(
        instance, cost, budget, threads, method
    )
    if not complete:
        raise BudgetExceededError(
            f"proportion scan stopped after {examined} of {space} configurations",
            partial=None,
        )
    return ne_count / space
