"""Tests for the continuum game: Wardrop solver, invariance, social optimum."""

import math
import random

import numpy as np
import pytest

from chargegame import (
    ConvergenceError,
    InvarianceConditionError,
    MixedProfile,
    Monomial,
    NonatomicInstance,
    PositivityCertificateError,
    SquareRoot,
    build_symmetric_system,
    check_invariance_condition,
    efficiency_nonatomic,
    euclidean_split,
    grid_total_cost,
    is_wardrop_equilibrium,
    potential_nonatomic,
    social_optimum_nonatomic,
    solve_equilibrium,
    solve_symmetric_invariant,
    wardrop_gap,
)
from chargegame.nonatomic import _eliminate_with_certificate

COST_DEPENDENT_EXO = (0.1, 0.2, 0.3, 0.4, 0.5, 0.2, 0.2, 0.3, 0.2, 0.1, 0.2)


def cost_dependent_instance():
    """Symmetric continuum whose equilibrium moves with the cost curve.

    Eleven slots with departures at slot 10, so the last slot is unreachable
    padding; the humped exogenous load breaks the invariance property.
    """
    return NonatomicInstance.symmetric(T=11, C=5, exogenous=COST_DEPENDENT_EXO, departure=10)


def random_feasible_profile(rng, inst):
    rows = []
    for k in range(inst.K):
        a, d, C = inst.window(k)
        slots = range(a, d - C + 2)
        raw = [rng.random() if t in slots else 0.0 for t in range(1, inst.horizon.T + 1)]
        total = sum(raw)
        rows.append(tuple(v / total for v in raw))
    return MixedProfile(inst, tuple(rows))


# ---------------------------------------------------------------------------
# euclidean split and the invariance condition


def test_euclidean_split_values():
    s = euclidean_split(10, 3)
    assert (s.quotient, s.remainder) == (2, 2)
    assert euclidean_split(11, 5).quotient == 1
    assert euclidean_split(10, 5).remainder == 1
    with pytest.raises(ValueError):
        euclidean_split(3, 4)


def test_invariance_condition_constant_exogenous():
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=tuple([1.0] * 10))
    check = check_invariance_condition(inst)
    assert check
    assert check.nondecreasing and check.convex and check.inequality_holds
    assert check.lhs == pytest.approx(0.0)
    assert check.split.quotient == 2


STEEP_CONVEX_EXO = (0.0,) * 7 + (1.0, 3.0, 6.0)


def test_invariance_condition_inequality_fails_on_steep_load():
    # q=2 samples slots 9, 6, 3: lhs = 2*3 - 0 - 0 = 6 >= 1
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=STEEP_CONVEX_EXO)
    check = check_invariance_condition(inst)
    assert check.nondecreasing and check.convex
    assert not check.inequality_holds and not check
    assert check.lhs == pytest.approx(6.0)


def test_invariance_condition_shape_subchecks():
    decreasing = NonatomicInstance.symmetric(T=10, C=3, exogenous=tuple(float(10 - t) for t in range(10)))
    check = check_invariance_condition(decreasing)
    assert not check.nondecreasing and not check
    concave = NonatomicInstance.symmetric(T=10, C=3, exogenous=(0, 5, 8, 9, 9.5, 9.7, 9.8, 9.85, 9.9, 9.91))
    check = check_invariance_condition(concave)
    assert check.nondecreasing and not check.convex and not check


def test_invariance_condition_scales_with_power():
    # the inequality reads the exogenous load in units of the charging power
    inst = NonatomicInstance.symmetric(T=10, C=3, power=20.0, exogenous=STEEP_CONVEX_EXO)
    check = check_invariance_condition(inst)
    assert check.inequality_holds and check
    assert check.lhs == pytest.approx(0.3)


def test_invariance_condition_underflow():
    # T=9, C=2 makes the referenced slot index fall below the horizon
    inst = NonatomicInstance.symmetric(T=9, C=2)
    with pytest.raises(ValueError):
        check_invariance_condition(inst)


# ---------------------------------------------------------------------------
# the cost-independent linear system


def test_symmetric_system_solution_is_consistent():
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=tuple([1.0] * 10))
    matrix, rhs = build_symmetric_system(inst)
    profile, system = solve_symmetric_invariant(inst)
    x = np.array(system.solution)
    assert np.allclose(matrix @ x, rhs, atol=1e-12)
    assert np.asarray(matrix).shape == (8, 8)
    assert np.allclose(matrix[-1], 1.0)  # mass normalization row
    assert rhs[-1] == pytest.approx(1.0)


def test_invariant_solution_duration_three():
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=tuple([1.0] * 10))
    profile, system = solve_symmetric_invariant(inst)
    expected = (0.25, 1 / 12, 0.0, 1 / 6, 1 / 6, 0.0, 1 / 12, 0.25)
    assert np.allclose(profile.start_mass()[:8], expected, atol=1e-9)
    assert system.certified
    assert all(p > 0 for p in system.pivots)


def test_invariant_solution_duration_five():
    inst = NonatomicInstance.symmetric(T=10, C=5, exogenous=tuple([2.0] * 10))
    profile, system = solve_symmetric_invariant(inst)
    assert np.allclose(profile.start_mass()[:6], (0.5, 0, 0, 0, 0, 0.5), atol=1e-9)
    # the flat occupancy it induces is load-levelling: 0.5 everywhere
    assert np.allclose(profile.occupancy_mass(), 0.5, atol=1e-9)


def test_invariant_solution_is_equilibrium_for_every_admissible_cost():
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=tuple([1.0] * 10))
    profile, _ = solve_symmetric_invariant(inst)
    for cost in (SquareRoot(), Monomial(1, 2), Monomial(1, 8)):
        assert wardrop_gap(inst, cost, profile) <= 1e-7
        assert is_wardrop_equilibrium(inst, cost, profile, tol=1e-7)


def test_invariant_solver_rejects_violating_exogenous():
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=STEEP_CONVEX_EXO)
    with pytest.raises(InvarianceConditionError):
        solve_symmetric_invariant(inst)


def test_certificate_catches_loads_the_inequality_misses():
    # all three sub-checks pass here, yet the equal-load system needs
    # negative mass (the last slot's surge is invisible to the inequality,
    # which samples slots T-1, T-1-C, ...): the elimination certificate is
    # the authoritative gate
    exo = (0.0,) * 9 + (9.0,)
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=exo)
    assert check_invariance_condition(inst)
    with pytest.raises(PositivityCertificateError):
        solve_symmetric_invariant(inst)


def test_invariant_solver_requires_full_window_single_class():
    two = NonatomicInstance.create(T=10, classes=[(0.5, 1, 10, 3), (0.5, 1, 10, 3)])
    with pytest.raises(ValueError):
        solve_symmetric_invariant(two)
    partial = NonatomicInstance.symmetric(T=10, C=3, departure=8)
    with pytest.raises(ValueError):
        solve_symmetric_invariant(partial)


def test_elimination_certificate_rejects_negative_solutions():
    A = np.array([[1.0, 0.0], [0.0, 1.0]])
    pivots, certified = _eliminate_with_certificate(A, np.array([1.0, -1.0]))
    assert not certified
    pivots, certified = _eliminate_with_certificate(A, np.array([1.0, 1.0]))
    assert certified and list(pivots) == [1.0, 1.0]


# ---------------------------------------------------------------------------
# the equilibrium solver


def test_solver_requires_strictly_increasing_cost():
    inst = NonatomicInstance.symmetric(T=6, C=2)
    with pytest.raises(ValueError):
        solve_equilibrium(inst, Monomial(5, 0))


def test_solver_reaches_machine_gap_on_the_cost_dependent_instance():
    inst = cost_dependent_instance()
    for cost, first in ((SquareRoot(), 0.452706), (Monomial(1, 8), 0.419959)):
        eq = solve_equilibrium(inst, cost, tol=1e-9)
        assert eq.wardrop_gap <= 1e-9
        mass = eq.profile.start_mass()
        assert mass[0] == pytest.approx(first, abs=1e-4)
        support = {t for t in range(1, 12) if mass[t - 1] > 1e-8}
        assert support == {1, 6}
        assert is_wardrop_equilibrium(inst, cost, eq.profile, tol=1e-8)


def test_solver_equilibrium_maximizes_the_potential():
    rng = random.Random(201)
    inst = cost_dependent_instance()
    for cost in (Monomial(1, 2), SquareRoot()):
        eq = solve_equilibrium(inst, cost, tol=1e-10)
        best = potential_nonatomic(inst, cost, eq.profile)
        for _ in range(30):
            other = random_feasible_profile(rng, inst)
            assert potential_nonatomic(inst, cost, other) <= best + 1e-9


def test_solver_handles_multiple_classes():
    rng = random.Random(202)
    for trial in range(5):
        T = rng.randint(6, 10)
        classes = []
        K = rng.randint(2, 3)
        for _ in range(K):
            a = rng.randint(1, T - 2)
            d = rng.randint(a + 2, T)
            C = rng.randint(1, d - a)
            classes.append([0.0, a, d, C])
        weights = [rng.random() for _ in range(K)]
        for k, w in enumerate(weights):
            classes[k][0] = w / sum(weights)
        exo = tuple(0.5 * rng.random() for _ in range(T))
        inst = NonatomicInstance.create(T=T, classes=[tuple(c) for c in classes], exogenous=exo)
        eq = solve_equilibrium(inst, Monomial(1, 2), tol=1e-9)
        assert eq.wardrop_gap <= 1e-9
        assert is_wardrop_equilibrium(inst, Monomial(1, 2), eq.profile, tol=1e-8)
        # every class's support pays that class's minimal cost
        for k in range(inst.K):
            costs = eq.class_costs[k]
            finite = [c for c in costs if math.isfinite(c)]
            for t, m in enumerate(eq.profile.distributions[k], start=1):
                if m > 1e-8:
                    assert costs[t - 1] <= min(finite) + 1e-8 * max(1.0, abs(min(finite)))


def test_wardrop_checker_rejects_non_equilibria():
    inst = cost_dependent_instance()
    uniform = MixedProfile.uniform(inst)
    assert not is_wardrop_equilibrium(inst, Monomial(1, 2), uniform)
    assert wardrop_gap(inst, Monomial(1, 2), uniform) > 1e-3


def test_solver_budget_exhaustion():
    # budget=1 exhausts on the very first gap evaluation, before any polish
    # step has a chance to hit the tolerance exactly.
    inst = cost_dependent_instance()
    with pytest.raises(ConvergenceError) as err:
        solve_equilibrium(inst, Monomial(1, 8), tol=1e-15, budget=1)
    assert err.value.profile is not None
    assert err.value.gap >= 0


def test_equilibrium_report_fields():
    inst = cost_dependent_instance()
    eq = solve_equilibrium(inst, Monomial(1, 2))
    assert eq.iterations >= 0
    assert eq.cost_evaluations > 0
    assert len(eq.class_costs) == inst.K
    assert math.isinf(eq.class_costs[0][10])  # slot 11 is outside the action set


# ---------------------------------------------------------------------------
# social optimum and efficiency


def test_social_optimum_requires_convexity():
    inst = NonatomicInstance.symmetric(T=6, C=2)
    with pytest.raises(ValueError):
        social_optimum_nonatomic(inst, SquareRoot())


def test_social_optimum_dominates_feasible_profiles():
    rng = random.Random(203)
    inst = cost_dependent_instance()
    for cost in (Monomial(1, 2), Monomial(1, 4)):
        opt_profile, opt_cost = social_optimum_nonatomic(inst, cost)
        assert opt_cost == pytest.approx(grid_total_cost(inst, cost, opt_profile), rel=1e-12)
        for _ in range(40):
            other = random_feasible_profile(rng, inst)
            assert grid_total_cost(inst, cost, other) >= opt_cost - 1e-9


def test_efficiency_is_one_under_invariance():
    inst = NonatomicInstance.symmetric(T=10, C=3, exogenous=tuple([1.0] * 10))
    for cost in (Monomial(1, 2), Monomial(1, 4)):
        report = efficiency_nonatomic(inst, cost)
        assert report.value == pytest.approx(1.0, abs=1e-9)
        assert report.exact is None
        assert report.worst_cost >= report.optimum_cost - 1e-12


def test_efficiency_exceeds_one_off_equilibrium_question():
    # the ratio is still >= 1 up to solver tolerance even when the
    # invariance hypothesis fails and the equilibrium is cost-dependent
    inst = cost_dependent_instance()
    report = efficiency_nonatomic(inst, Monomial(1, 2))
    assert report.value >= 1.0 - 1e-9
