"""Shared vocabulary for charging games on a slotted horizon.

Conventions used throughout the package:

* Time slots are 1-based: slot ``t`` is the t-th unit interval, ``1 <= t <= T``.
* Player and class indices are 0-based, as usual for Python sequences.
* A user who starts in slot ``s`` with duration ``C`` occupies slots
  ``s, s+1, ..., s+C-1``, so the admissible starts inside an availability
  window ``[a, d]`` are ``a, a+1, ..., d-C+1``.
* The grid load in slot ``t`` is the exogenous (non-flexible) load plus the
  charging power times the number of users charging in ``t`` (atomic case) or
  times the mass of users charging in ``t`` (nonatomic case).

All instance and profile types are immutable; every derived quantity is a pure
function of its inputs, which keeps the solvers safe to share across threads.

Arithmetic is exact whenever the data allow it: integer loads fed to an
integer-coefficient polynomial cost stay Python integers, so equilibrium
comparisons in the atomic module are free of rounding. Float inputs degrade
gracefully to float results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

Number = Union[int, float]


# ---------------------------------------------------------------------------
# horizon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TimeHorizon:
    """A finite horizon of ``T`` unit-length slots, numbered 1 to ``T``."""

    T: int

    def __post_init__(self) -> None:
        if not isinstance(self.T, int) or self.T < 1:
            raise ValueError(f"horizon length must be a positive integer, got {self.T!r}")

    def slots(self) -> range:
        """All slot labels, ``1..T``."""
        return range(1, self.T + 1)


# ---------------------------------------------------------------------------
# grid cost functions
# ---------------------------------------------------------------------------


class GridCostFunction:
    """Per-slot grid cost ``f(load)``.

    Subclasses evaluate elementwise on scalars and numpy arrays alike.  Two
    structural flags describe which standing assumptions a cost satisfies:

    ``satisfies_a1``
        continuous and strictly increasing on ``load >= 0``.
    ``satisfies_a2``
        continuously differentiable and strictly convex on ``load >= 0``
        (implies the marginal-cost constructions below are usable).

    ``value``/``__call__`` preserve exact integer arithmetic when
    ``is_exact_for_integers`` is true and the load is an integer.
    """

    def __call__(self, load):
        raise NotImplementedError

    def value(self, load):
        """Alias of ``__call__`` for call sites that read better with a name."""
        return self(load)

    def deriv(self, load):
        """First derivative ``f'(load)``, elementwise."""
        raise NotImplementedError

    def antiderivative(self, load):
        """``F(load)`` with ``F(0) = 0`` and ``F' = f``, elementwise."""
        raise NotImplementedError

    def derivative(self) -> "GridCostFunction":
        """Return ``f'`` as a grid cost function in its own right.

        Only meaningful when the derivative is itself a nondecreasing cost,
        i.e. when the primal cost is convex; non-convex costs raise
        ``ValueError``.
        """
        raise NotImplementedError

    @property
    def satisfies_a1(self) -> bool:
        raise NotImplementedError

    @property
    def satisfies_a2(self) -> bool:
        raise NotImplementedError

    @property
    def is_exact_for_integers(self) -> bool:
        """True when integer loads produce exact integer values."""
        return False

    # internal structural helpers used by CostSum flag logic
    @property
    def _nondecreasing(self) -> bool:
        raise NotImplementedError

    @property
    def _strictly_increasing(self) -> bool:
        raise NotImplementedError

    @property
    def _convex(self) -> bool:
        raise NotImplementedError

    @property
    def _strictly_convex(self) -> bool:
        raise NotImplementedError


def _as_int_if_integral(x: Number) -> Number:
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


@dataclass(frozen=True)
class Monomial(GridCostFunction):
    """``f(L) = coefficient * L ** exponent`` with positive coefficient.

    ``exponent >= 1`` gives a cost satisfying assumption A1, ``exponent > 1``
    additionally satisfies A2.  ``exponent == 0`` (a positive constant) is
    allowed so that derivatives of linear terms remain representable, but such
    a cost is flagged as satisfying neither assumption.
    """

    coefficient: Number = 1
    exponent: Number = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", _as_int_if_integral(self.coefficient))
        object.__setattr__(self, "exponent", _as_int_if_integral(self.exponent))
        if self.coefficient <= 0:
            raise ValueError(f"coefficient must be positive, got {self.coefficient!r}")
        if self.exponent < 0:
            raise ValueError(f"exponent must be nonnegative, got {self.exponent!r}")

    def __call__(self, load):
        return self.coefficient * load**self.exponent

    def deriv(self, load):
        k = self.exponent
        if k == 0:
            return np.zeros_like(load, dtype=float) if isinstance(load, np.ndarray) else 0.0
        if k == 1:
            if isinstance(load, np.ndarray):
                return np.full_like(load, self.coefficient, dtype=float)
            return float(self.coefficient)
        if isinstance(load, np.ndarray):
            out = np.zeros(load.shape, dtype=float)
            pos = load > 0
            out[pos] = self.coefficient * k * load[pos] ** (k - 1)
            if k < 1:
                out[~pos] = math.inf
            return out
        if load == 0:
            return math.inf if k < 1 else 0.0
        return self.coefficient * k * load ** (k - 1)

    def antiderivative(self, load):
        k1 = self.exponent + 1
        return (self.coefficient / k1) * load**k1

    def derivative(self) -> GridCostFunction:
        if self.exponent < 1:
            raise ValueError("derivative of a sub-linear monomial is not a usable grid cost")
        return Monomial(self.coefficient * self.exponent, self.exponent - 1)

    @property
    def satisfies_a1(self) -> bool:
        return self.exponent > 0

    @property
    def satisfies_a2(self) -> bool:
        return self.exponent > 1

    @property
    def is_exact_for_integers(self) -> bool:
        return isinstance(self.coefficient, int) and isinstance(self.exponent, int)

    @property
    def _nondecreasing(self) -> bool:
        return True

    @property
    def _strictly_increasing(self) -> bool:
        return self.exponent > 0

    @property
    def _convex(self) -> bool:
        return self.exponent >= 1 or self.exponent == 0

    @property
    def _strictly_convex(self) -> bool:
        return self.exponent > 1


@dataclass(frozen=True)
class SquareRoot(GridCostFunction):
    """``f(L) = coefficient * sqrt(L)``: strictly increasing but concave.

    Satisfies A1 only; it is the stock example of a cost outside A2 (its
    derivative blows up at zero load and decreases thereafter).
    """

    coefficient: Number = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", _as_int_if_integral(self.coefficient))
        if self.coefficient <= 0:
            raise ValueError(f"coefficient must be positive, got {self.coefficient!r}")

    def __call__(self, load):
        return self.coefficient * load**0.5

    def deriv(self, load):
        if isinstance(load, np.ndarray):
            out = np.full(load.shape, math.inf)
            pos = load > 0
            out[pos] = 0.5 * self.coefficient / np.sqrt(load[pos].astype(float))
            return out
        if load == 0:
            return math.inf
        return 0.5 * self.coefficient / math.sqrt(load)

    def antiderivative(self, load):
        return (2.0 / 3.0) * self.coefficient * load**1.5

    def derivative(self) -> GridCostFunction:
        raise ValueError("derivative of a square-root cost is decreasing, not a grid cost")

    @property
    def satisfies_a1(self) -> bool:
        return True

    @property
    def satisfies_a2(self) -> bool:
        return False

    @property
    def _nondecreasing(self) -> bool:
        return True

    @property
    def _strictly_increasing(self) -> bool:
        return True

    @property
    def _convex(self) -> bool:
        return False

    @property
    def _strictly_convex(self) -> bool:
        return False


@dataclass(frozen=True)
class CostSum(GridCostFunction):
    """Pointwise sum of grid cost terms, e.g. ``L + L**2``."""

    terms: tuple[GridCostFunction, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("CostSum needs at least one term")
        for term in terms:
            if not isinstance(term, GridCostFunction):
                raise TypeError(f"CostSum terms must be grid cost functions, got {term!r}")

    def __call__(self, load):
        total = self.terms[0](load)
        for term in self.terms[1:]:
            total = total + term(load)
        return total

    def deriv(self, load):
        total = self.terms[0].deriv(load)
        for term in self.terms[1:]:
            total = total + term.deriv(load)
        return total

    def antiderivative(self, load):
        total = self.terms[0].antiderivative(load)
        for term in self.terms[1:]:
            total = total + term.antiderivative(load)
        return total

    def derivative(self) -> GridCostFunction:
        return CostSum(tuple(term.derivative() for term in self.terms))

    @property
    def satisfies_a1(self) -> bool:
        return all(t._nondecreasing for t in self.terms) and any(
            t._strictly_increasing for t in self.terms
        )

    @property
    def satisfies_a2(self) -> bool:
        return all(t._convex for t in self.terms) and any(t._strictly_convex for t in self.terms)

    @property
    def is_exact_for_integers(self) -> bool:
        return all(t.is_exact_for_integers for t in self.terms)

    @property
    def _nondecreasing(self) -> bool:
        return all(t._nondecreasing for t in self.terms)

    @property
    def _strictly_increasing(self) -> bool:
        return self.satisfies_a1

    @property
    def _convex(self) -> bool:
        return all(t._convex for t in self.terms)

    @property
    def _strictly_convex(self) -> bool:
        return self.satisfies_a2


# ---------------------------------------------------------------------------
# pricing functions
# ---------------------------------------------------------------------------


class PricingFunction:
    """Strictly increasing map applied to a user's raw charging cost.

    Utilities are the negated, pricing-filtered window cost; because the map
    is strictly increasing it never changes which deviations are improving,
    only the numeric utility scale.
    """

    def __call__(self, value):
        raise NotImplementedError

    def check_increasing(self, samples: Sequence[Number]) -> bool:
        """Spot-check strict monotonicity on a sorted sample of inputs."""
        xs = sorted(set(samples))
        ys = [self(x) for x in xs]
        return all(lo < hi for lo, hi in zip(ys, ys[1:]))


class Identity(PricingFunction):
    """The default pricing: users pay their raw grid cost, exactly."""

    def __call__(self, value):
        return value

    def __repr__(self) -> str:
        return "Identity()"


@dataclass(frozen=True)
class PricingMap(PricingFunction):
    """Wrap an arbitrary strictly increasing callable as a pricing function."""

    func: Callable[[Number], Number]
    label: str = ""

    def __call__(self, value):
        return self.func(value)


IDENTITY = Identity()


def _pricing_for(pricing, index: int) -> PricingFunction:
    # shared map, or one map per player/class
    if isinstance(pricing, PricingFunction):
        return pricing
    return pricing[index]


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------


def _validate_exogenous(exogenous, T: int) -> tuple[Number, ...]:
    if exogenous is None:
        return (0,) * T
    exo = tuple(_as_int_if_integral(v) for v in exogenous)
    if len(exo) != T:
        raise ValueError(f"exogenous load has {len(exo)} entries for a {T}-slot horizon")
    if any(v < 0 for v in exo):
        raise ValueError("exogenous load must be nonnegative")
    return exo


def _validate_window(a: int, d: int, C: int, T: int, who: str) -> None:
    if not (isinstance(a, int) and isinstance(d, int) and isinstance(C, int)):
        raise ValueError(f"{who}: arrival, departure and duration must be integers")
    if not (1 <= a <= d <= T):
        raise ValueError(f"{who}: window [{a}, {d}] does not fit in 1..{T}")
    if C < 1:
        raise ValueError(f"{who}: duration must be at least one slot")
    if C > d - a + 1:
        raise ValueError(f"{who}: duration {C} exceeds window [{a}, {d}]")


@dataclass(frozen=True)
class AtomicInstance:
    """A finite-player charging game.

    Player ``i`` is available during slots ``arrivals[i]..departures[i]`` and
    must charge for ``durations[i]`` consecutive slots at power ``power``.
    ``exogenous[t-1]`` is the non-flexible grid load in slot ``t``.
    """

    horizon: TimeHorizon
    arrivals: tuple[int, ...]
    departures: tuple[int, ...]
    durations: tuple[int, ...]
    power: Number = 1
    exogenous: tuple[Number, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrivals", tuple(self.arrivals))
        object.__setattr__(self, "departures", tuple(self.departures))
        object.__setattr__(self, "durations", tuple(self.durations))
        object.__setattr__(self, "power", _as_int_if_integral(self.power))
        T = self.horizon.T
        if not (len(self.arrivals) == len(self.departures) == len(self.durations)):
            raise ValueError("arrivals, departures and durations must have equal length")
        if len(self.arrivals) == 0:
            raise ValueError("an atomic instance needs at least one player")
        for i, (a, d, C) in enumerate(zip(self.arrivals, self.departures, self.durations)):
            _validate_window(a, d, C, T, f"player {i}")
        if self.power <= 0:
            raise ValueError("charging power must be positive")
        object.__setattr__(self, "exogenous", _validate_exogenous(self.exogenous or None, T))

    @property
    def I(self) -> int:
        """Number of players."""
        return len(self.arrivals)

    def window(self, i: int) -> tuple[int, int, int]:
        """Arrival, departure, duration of player ``i``."""
        return self.arrivals[i], self.departures[i], self.durations[i]

    @property
    def is_symmetric(self) -> bool:
        return len({w for w in zip(self.arrivals, self.departures, self.durations)}) == 1

    @classmethod
    def create(cls, T, players, power=1, exogenous=None) -> "AtomicInstance":
        """Build from an iterable of ``(arrival, departure, duration)`` triples."""
        players = list(players)
        return cls(
            horizon=TimeHorizon(T),
            arrivals=tuple(p[0] for p in players),
            departures=tuple(p[1] for p in players),
            durations=tuple(p[2] for p in players),
            power=power,
            exogenous=tuple(exogenous) if exogenous is not None else (),
        )

    @classmethod
    def symmetric(cls, T, I, C, power=1, exogenous=None, arrival=1, departure=None) -> "AtomicInstance":
        """``I`` identical players, full-horizon window unless told otherwise."""
        d = T if departure is None else departure
        return cls.create(T, [(arrival, d, C)] * I, power=power, exogenous=exogenous)


@dataclass(frozen=True)
class UserClass:
    """One class of a nonatomic population: a weight and a shared window."""

    weight: float
    arrival: int
    departure: int
    duration: int

    def __post_init__(self) -> None:
        if not (0 < self.weight <= 1):
            raise ValueError(f"class weight must lie in (0, 1], got {self.weight!r}")


@dataclass(frozen=True)
class NonatomicInstance:
    """A continuum-of-users charging game with finitely many classes.

    Class weights are population fractions and must sum to one.  ``power`` is
    the (common) charging power scale: a class of mass ``x`` charging in slot
    ``t`` adds ``power * x`` to the load there.
    """

    horizon: TimeHorizon
    classes: tuple[UserClass, ...]
    power: Number = 1
    exogenous: tuple[Number, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "power", _as_int_if_integral(self.power))
        T = self.horizon.T
        if not self.classes:
            raise ValueError("a nonatomic instance needs at least one class")
        for k, cls_ in enumerate(self.classes):
            _validate_window(cls_.arrival, cls_.departure, cls_.duration, T, f"class {k}")
        total = math.fsum(c.weight for c in self.classes)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"class weights must sum to 1, got {total!r}")
        if self.power <= 0:
            raise ValueError("charging power must be positive")
        object.__setattr__(self, "exogenous", _validate_exogenous(self.exogenous or None, T))

    @property
    def K(self) -> int:
        """Number of classes."""
        return len(self.classes)

    def window(self, k: int) -> tuple[int, int, int]:
        cls_ = self.classes[k]
        return cls_.arrival, cls_.departure, cls_.duration

    @classmethod
    def create(cls, T, classes, power=1, exogenous=None) -> "NonatomicInstance":
        """Build from ``(weight, arrival, departure, duration)`` tuples."""
        return cls(
            horizon=TimeHorizon(T),
            classes=tuple(UserClass(*c) for c in classes),
            power=power,
            exogenous=tuple(exogenous) if exogenous is not None else (),
        )

    @classmethod
    def symmetric(cls, T, C, power=1, exogenous=None, arrival=1, departure=None) -> "NonatomicInstance":
        """A single class of unit mass with a full-horizon window by default."""
        d = T if departure is None else departure
        return cls.create(T, [(1.0, arrival, d, C)], power=power, exogenous=exogenous)


Instance = Union[AtomicInstance, NonatomicInstance]


def action_set(instance: Instance, i: int) -> range:
    """Admissible start slots of player/class ``i``: ``arrival..departure-duration+1``."""
    a, d, C = instance.window(i)
    return range(a, d - C + 2)


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StrategyProfile:
    """One start slot per player."""

    starts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "starts", tuple(self.starts))

    @classmethod
    def checked(cls, instance: AtomicInstance, starts) -> "StrategyProfile":
        profile = cls(tuple(starts))
        _validate_profile(instance, profile)
        return profile


def _validate_profile(instance: AtomicInstance, profile: StrategyProfile) -> None:
    if len(profile.starts) != instance.I:
        raise ValueError(f"profile has {len(profile.starts)} starts for {instance.I} players")
    for i, s in enumerate(profile.starts):
        if s not in action_set(instance, i):
            raise ValueError(
                f"start {s} of player {i} is outside its action set {list(action_set(instance, i))}"
            )


def _coerce_profile(instance: AtomicInstance, profile) -> StrategyProfile:
    if not isinstance(profile, StrategyProfile):
        profile = StrategyProfile(tuple(profile))
    _validate_profile(instance, profile)
    return profile


@dataclass(frozen=True)
class ChargingConfiguration:
    """Anonymous snapshot of a profile: start counts and slot occupancy.

    ``start_counts[t-1]`` is how many users begin in slot ``t``;
    ``occupancy[t-1]`` is how many are charging during slot ``t``.  Profiles
    that differ only by permuting identical users collapse to one
    configuration, which is the natural notion of "distinct equilibrium" in
    symmetric games.
    """

    start_counts: tuple[int, ...]
    occupancy: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "start_counts", tuple(self.start_counts))
        object.__setattr__(self, "occupancy", tuple(self.occupancy))


def occupancy(instance: AtomicInstance, profile) -> ChargingConfiguration:
    """Start counts and per-slot occupancy induced by a strategy profile."""
    profile = _coerce_profile(instance, profile)
    T = instance.horizon.T
    started = [0] * T
    occupied = [0] * T
    for i, s in enumerate(profile.starts):
        started[s - 1] += 1
        for t in range(s, s + instance.durations[i]):
            occupied[t - 1] += 1
    return ChargingConfiguration(tuple(started), tuple(occupied))


@dataclass(frozen=True)
class MixedProfile:
    """Per-class start-slot distributions for a nonatomic instance.

    ``distributions[k][t-1]`` is the fraction of class ``k`` starting in slot
    ``t``; each row is a probability vector supported on the class action set.
    The profile keeps a reference to its instance so the aggregate start mass
    and occupancy mass are well-defined without extra arguments.
    """

    instance: NonatomicInstance
    distributions: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        dists = tuple(tuple(float(v) for v in row) for row in self.distributions)
        object.__setattr__(self, "distributions", dists)
        inst = self.instance
        T = inst.horizon.T
        if len(dists) != inst.K:
            raise ValueError(f"{len(dists)} distributions for {inst.K} classes")
        for k, row in enumerate(dists):
            if len(row) != T:
                raise ValueError(f"class {k}: distribution has {len(row)} entries for T={T}")
            allowed = set(action_set(inst, k))
            for t, v in enumerate(row, start=1):
                if v < -1e-12:
                    raise ValueError(f"class {k}: negative mass {v} in slot {t}")
                if t not in allowed and abs(v) > 1e-12:
                    raise ValueError(f"class {k}: mass {v} outside action set in slot {t}")
            total = math.fsum(row)
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"class {k}: start distribution sums to {total!r}, not 1")

    def start_mass(self) -> np.ndarray:
        """Aggregate start mass per slot, weighted by class sizes."""
        inst = self.instance
        out = np.zeros(inst.horizon.T)
        for cls_, row in zip(inst.classes, self.distributions):
            out += cls_.weight * np.asarray(row)
        return out

    def occupancy_mass(self) -> np.ndarray:
        """Mass charging in each slot (windowed sum of weighted start masses)."""
        inst = self.instance
        T = inst.horizon.T
        out = np.zeros(T)
        for cls_, row in zip(inst.classes, self.distributions):
            mass = cls_.weight * np.asarray(row)
            # slot t collects starts in t-C+1..t
            csum = np.concatenate(([0.0], np.cumsum(mass)))
            lo = np.maximum(np.arange(T) - cls_.duration + 1, 0)
            out += csum[np.arange(1, T + 1)] - csum[lo]
        return out

    @classmethod
    def from_start_mass(cls, instance: NonatomicInstance, mass) -> "MixedProfile":
        """Single-class convenience: interpret a start-mass vector as the profile."""
        if instance.K != 1:
            raise ValueError("from_start_mass applies to single-class instances only")
        return cls(instance, (tuple(float(v) for v in mass),))

    @classmethod
    def uniform(cls, instance: NonatomicInstance) -> "MixedProfile":
        """Each class spreads uniformly over its action set."""
        T = instance.horizon.T
        rows = []
        for k in range(instance.K):
            acts = action_set(instance, k)
            row = [0.0] * T
            for t in acts:
                row[t - 1] = 1.0 / len(acts)
            rows.append(tuple(row))
        return cls(instance, tuple(rows))


# ---------------------------------------------------------------------------
# loads, costs, utilities, potentials
# ---------------------------------------------------------------------------


def load(instance: Instance, profile):
    """Per-slot grid load under a profile.

    Atomic instances accept a ``StrategyProfile`` (or bare start sequence) or
    a ``ChargingConfiguration`` and return an exact tuple; nonatomic instances
    accept a ``MixedProfile`` and return a float array.
    """
    if isinstance(instance, NonatomicInstance):
        if not isinstance(profile, MixedProfile):
            raise TypeError("nonatomic load expects a MixedProfile")
        return np.asarray(instance.exogenous, dtype=float) + instance.power * profile.occupancy_mass()
    if isinstance(profile, ChargingConfiguration):
        occ = profile.occupancy
    else:
        occ = occupancy(instance, profile).occupancy
    P = instance.power
    return tuple(e + P * n for e, n in zip(instance.exogenous, occ))


def grid_total_cost(instance: Instance, cost: GridCostFunction, profile):
    """Total grid cost ``sum_t f(load_t)`` under a profile."""
    loads = load(instance, profile)
    if isinstance(loads, np.ndarray):
        return float(np.sum(cost(loads)))
    return sum(cost(L) for L in loads)


def _window_cost(cost: GridCostFunction, loads, start: int, duration: int):
    return sum(cost(loads[t - 1]) for t in range(start, start + duration))


def utility_atomic(
    instance: AtomicInstance,
    cost: GridCostFunction,
    profile,
    player: int,
    pricing=IDENTITY,
) -> Number:
    """Utility of one player: minus the priced sum of slot costs it charges through."""
    profile = _coerce_profile(instance, profile)
    loads = load(instance, profile)
    s = profile.starts[player]
    raw = _window_cost(cost, loads, s, instance.durations[player])
    return -_pricing_for(pricing, player)(raw)


def potential_atomic(instance: AtomicInstance, cost: GridCostFunction, profile) -> Number:
    """Ordinal potential of the atomic game.

    ``Phi = -sum_t sum_{v=0}^{n_t} f(exo_t + P v)``: any unilateral move
    changes ``Phi`` in the same direction as the mover's utility, and exactly
    by the utility change when pricing is the identity.
    """
    if isinstance(profile, ChargingConfiguration):
        occ = profile.occupancy
    else:
        occ = occupancy(instance, profile).occupancy
    P = instance.power
    total = 0
    for e, n in zip(instance.exogenous, occ):
        for v in range(n + 1):
            total += cost(e + P * v)
    return -total


def utility_nonatomic(
    instance: NonatomicInstance,
    cost: GridCostFunction,
    profile: MixedProfile,
    start: int,
    cls: int = 0,
    pricing=IDENTITY,
) -> float:
    """Utility of a class-``cls`` user starting at ``start`` against a profile."""
    if start not in action_set(instance, cls):
        raise ValueError(f"start {start} is outside the action set of class {cls}")
    loads = load(instance, profile)
    duration = instance.classes[cls].duration
    raw = float(np.sum(cost(loads[start - 1 : start - 1 + duration])))
    return -float(_pricing_for(pricing, cls)(raw))


def potential_nonatomic(instance: NonatomicInstance, cost: GridCostFunction, profile: MixedProfile) -> float:
    """Potential of the nonatomic game, in closed form.

    ``Phi = -sum_t integral_0^{x_t} f(exo_t + P v) dv`` where ``x`` is the
    occupancy mass; with ``F`` the antiderivative of ``f`` each slot term is
    ``(F(exo_t + P x_t) - F(exo_t)) / P``.  Strictly concave in the occupancy
    whenever the cost is strictly increasing.
    """
    x = profile.occupancy_mass()
    e = np.asarray(instance.exogenous, dtype=float)
    P = float(instance.power)
    return -float(np.sum(cost.antiderivative(e + P * x) - cost.antiderivative(e)) / P)
