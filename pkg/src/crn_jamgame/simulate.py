"""Discrete-time band-hopping simulation of the jammer-vs-secondary network.

Slot loop: classify the current state into category A (players share a
band and the jam revealed both positions), B (jammer elsewhere but has
sensed the secondary's band) or C (a licensed user silences the
secondary), draw both players' actions from their policies, settle
movement and payoffs against freshly placed licensed users, then update
the per-category observation histories.

Settlement realizes each slot from actual band positions, never from the
analytic payoff tables; the tables are reproduced as Monte Carlo averages
of these ground-truth outcomes. Switching costs mirror the analytic
tables' cost structure exactly, including the category-B (switch, switch)
cell that charges the secondary nothing (see :func:`games.build_game`).

Observability is asymmetric: after an A or B slot whose successor is again
A or B, the jammer always learns the secondary's move (it senses every
band), while the secondary learns the jammer's move only if it stayed put
(its only sensor is whether it got jammed). Nothing is learned into or
out of category C. Observed actions are stored in the bucket of the
category they were chosen in.

Randomness per run, in draw order: initial secondary band, initial jammer
band, initial licensed users; then per slot: secondary action draw,
jammer action draw, next licensed users, secondary target band, jammer
target band. Identical (config, policies, slots, seed) inputs replay
identical runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .games import BimatrixGame, Category, NetworkConfig, build_game
from .learning import HistoryCounters, best_response, fp_expected_utilities
from .nash import EquilibriumReport, mixed_equilibrium

__all__ = [
    "STAY",
    "SWITCH",
    "NetworkState",
    "SlotRecord",
    "HistorySnapshot",
    "FixedPolicy",
    "NashPolicy",
    "FictitiousPlayPolicy",
    "PolicySpec",
    "SimulationSummary",
    "SimulationResult",
    "place_primaries",
    "classify_state",
    "choose_actions",
    "settle_slot",
    "update_histories",
    "run_simulation",
    "secondary_strategy_index",
    "malicious_strategy_index",
    "secondary_action_label",
    "malicious_action_label",
]

STAY = "stay"
SWITCH = "switch"

# Strategy-index layout of the canonical per-category games. The secondary's
# rows are (switch, stay) in both games; the jammer's columns are
# (switch, stay) in category A but (stay, switch) in category B.
_SECONDARY_ACTIONS = {Category.A: (SWITCH, STAY), Category.B: (SWITCH, STAY)}
_MALICIOUS_ACTIONS = {Category.A: (SWITCH, STAY), Category.B: (STAY, SWITCH)}


def secondary_action_label(category: Category, strategy: int) -> str:
    """Physical action meant by the secondary's strategy index in a category."""
    return _SECONDARY_ACTIONS[category][strategy - 1]


def malicious_action_label(category: Category, strategy: int) -> str:
    """Physical action meant by the jammer's strategy index in a category."""
    return _MALICIOUS_ACTIONS[category][strategy - 1]


def secondary_strategy_index(category: Category, action: str) -> int:
    """Inverse of :func:`secondary_action_label`."""
    return _SECONDARY_ACTIONS[category].index(action) + 1


def malicious_strategy_index(category: Category, action: str) -> int:
    """Inverse of :func:`malicious_action_label`."""
    return _MALICIOUS_ACTIONS[category].index(action) + 1


@dataclass(frozen=True, slots=True)
class NetworkState:
    """Joint band occupancy at the start of a slot."""

    secondary_band: int
    malicious_band: int
    primary_bands: frozenset[int]
    malicious_knows_secondary_band: bool
    slot_index: int


@dataclass(frozen=True, slots=True)
class HistorySnapshot:
    """Both categories' observation counters at one point in time."""

    category_a: HistoryCounters
    category_b: HistoryCounters

    @property
    def malicious_total(self) -> int:
        """Actions of the secondary recorded by the jammer, both categories."""
        return self.category_a.total_secondary + self.category_b.total_secondary

    @property
    def secondary_total(self) -> int:
        """Actions of the jammer recorded by the secondary, both categories."""
        return self.category_a.total_malicious + self.category_b.total_malicious

    def get(self, category: Category) -> HistoryCounters:
        return self.category_a if category is Category.A else self.category_b


@dataclass(frozen=True, slots=True)
class SlotRecord:
    """One simulated slot: what was seen, chosen, and realized."""

    slot_index: int
    category: Category
    secondary_action: str
    malicious_action: str
    secondary_payoff: float
    malicious_payoff: float
    jam_occurred: bool
    histories_after: HistorySnapshot
    state_before: NetworkState
    state_after: NetworkState


@dataclass(frozen=True, slots=True)
class FixedPolicy:
    """Play strategy 1 with a set probability, in every category."""

    probability_first: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.probability_first <= 1.0:
            raise ValueError(
                f"probability_first must lie in [0, 1] (got {self.probability_first!r})"
            )


@dataclass(frozen=True, slots=True)
class NashPolicy:
    """Sample the analytic mixed equilibrium of the current category's game.

    Falls back to the first pure equilibrium (or a fair coin if there is
    none) when the game has no mixed equilibrium.
    """


@dataclass(frozen=True, slots=True)
class FictitiousPlayPolicy:
    """Best-respond to the opponent counts observed in the current category."""


Policy = FixedPolicy | NashPolicy | FictitiousPlayPolicy


@dataclass(frozen=True, slots=True)
class PolicySpec:
    """Which decision rule each player uses in categories A and B."""

    secondary: Policy
    malicious: Policy


def place_primaries(config: NetworkConfig, rng: random.Random) -> frozenset[int]:
    """Uniformly place the licensed users on distinct bands.

    Sampling without replacement makes each band's marginal occupancy
    exactly ``n_primary / n_bands``.
    """
    if config.n_primary > config.n_bands:
        raise ValueError("cannot place more licensed users than bands")
    return frozenset(rng.sample(range(config.n_bands), config.n_primary))


def classify_state(state: NetworkState) -> Category:
    """Information regime implied by the current occupancy.

    A licensed user on the secondary's band silences it, leaving the
    jammer nothing to sense: category C. Otherwise the secondary
    transmits, and co-location means a jam revealing both positions
    (category A); in any other case the jammer senses the secondary's
    band while staying invisible itself (category B).
    """
    if state.secondary_band in state.primary_bands:
        return Category.C
    if state.malicious_band == state.secondary_band:
        return Category.A
    return Category.B


def _draw_strategy(
    policy: Policy,
    is_secondary: bool,
    game: BimatrixGame,
    counters: HistoryCounters,
    equilibrium: EquilibriumReport,
    rng: random.Random,
) -> int:
    if isinstance(policy, FixedPolicy):
        return 1 if rng.random() < policy.probability_first else 2
    if isinstance(policy, NashPolicy):
        if equilibrium.mixed is not None:
            prob = (
                equilibrium.mixed.p_secondary_first
                if is_secondary
                else equilibrium.mixed.q_malicious_first
            )
            return 1 if rng.random() < prob else 2
        if equilibrium.pure:
            row, col = equilibrium.pure[0]
            return row if is_secondary else col
        return 1 if rng.random() < 0.5 else 2
    expected = fp_expected_utilities(game, counters)
    pair = expected.secondary_pair() if is_secondary else expected.malicious_pair()
    return best_response(pair, rng)


def choose_actions(
    category: Category,
    policies: PolicySpec,
    games: dict[Category, BimatrixGame],
    histories: dict[Category, HistoryCounters],
    rng: random.Random,
    equilibria: dict[Category, EquilibriumReport] | None = None,
) -> tuple[str, str]:
    """Both players' physical actions for the slot.

    Category C forces (stay, stay) with no policy or randomness involved.
    In A and B the secondary's draw precedes the jammer's.
    """
    if category is Category.C:
        return (STAY, STAY)
    game = games[category]
    counters = histories[category]
    if equilibria is not None:
        equilibrium = equilibria[category]
    else:
        equilibrium = mixed_equilibrium(game)
    strat_s = _draw_strategy(policies.secondary, True, game, counters, equilibrium, rng)
    strat_m = _draw_strategy(policies.malicious, False, game, counters, equilibrium, rng)
    return (
        secondary_action_label(category, strat_s),
        malicious_action_label(category, strat_m),
    )


def _other_band(current: int, n_bands: int, rng: random.Random) -> int:
    """Uniform draw over all bands except ``current``."""
    pick = rng.randrange(n_bands - 1)
    return pick + 1 if pick >= current else pick


def settle_slot(
    state: NetworkState,
    actions: tuple[str, str],
    config: NetworkConfig,
    rng: random.Random,
) -> tuple[tuple[float, float], NetworkState]:
    """Resolve movement, fresh licensed users, and realized payoffs.

    Draw order: licensed users first, then the secondary's target band
    (if it switches), then the jammer's (category A only; in category B a
    switching jammer goes straight to the secondary's prior band).

    Payoffs come from the post-move occupancy: the secondary earns its
    gain when transmitting unjammed, loses the jam loss when co-located
    with the jammer on a licensed-user-free band, and earns zero under a
    licensed user; the jammer earns its gain exactly on a jam. Switch
    costs mirror the analytic tables: normal in category A, and in
    category B the secondary's cost applies only when the jammer stays.
    """
    category = classify_state(state)
    action_s, action_m = actions
    primaries = place_primaries(config, rng)
    sec_band = state.secondary_band
    mal_band = state.malicious_band
    if category is not Category.C:
        if action_s == SWITCH:
            sec_band = _other_band(state.secondary_band, config.n_bands, rng)
        if action_m == SWITCH:
            if category is Category.A:
                mal_band = _other_band(state.malicious_band, config.n_bands, rng)
            else:
                mal_band = state.secondary_band
    silenced = sec_band in primaries
    jam = (not silenced) and mal_band == sec_band
    payoff_s = 0.0 if silenced else (-config.loss_secondary if jam else config.gain_secondary)
    payoff_m = config.gain_malicious if jam else 0.0
    if category is Category.A:
        if action_s == SWITCH:
            payoff_s -= config.cost_secondary_switch
        if action_m == SWITCH:
            payoff_m -= config.cost_malicious_switch
    elif category is Category.B:
        if action_s == SWITCH and action_m == STAY:
            payoff_s -= config.cost_secondary_switch
        if action_m == SWITCH:
            payoff_m -= config.cost_malicious_switch
    next_state = NetworkState(
        secondary_band=sec_band,
        malicious_band=mal_band,
        primary_bands=primaries,
        malicious_knows_secondary_band=not silenced,
        slot_index=state.slot_index + 1,
    )
    return (payoff_s, payoff_m), next_state


def update_histories(
    prev_category: Category,
    actions: tuple[str, str],
    next_category: Category,
    histories: dict[Category, HistoryCounters],
) -> dict[Category, HistoryCounters]:
    """Apply the slot's observations; returns a new mapping.

    Observations require an A/B slot whose successor is again A or B: a
    category-C endpoint on either side means the secondary was silent, so
    there was no transmission to sense and no jam to feel. Within that
    window the jammer always records the secondary's move (it senses every
    band). The secondary's only evidence is a jam / no-jam on its own
    band, which identifies the jammer's move in exactly two cases: when
    the secondary stayed put, and when the outcome is a jam (category A
    next) -- a jam after switching can only mean the jammer followed it
    (from A) or sat on the band it landed on (from B). A switch that ends
    unjammed is uninformative, so nothing is recorded then. Counts land in
    the bucket of the category the actions were chosen in.
    """
    if prev_category is Category.C or next_category is Category.C:
        return dict(histories)
    action_s, action_m = actions
    counters = histories[prev_category]
    counters = counters.with_secondary(secondary_strategy_index(prev_category, action_s))
    if action_s == STAY or next_category is Category.A:
        counters = counters.with_malicious(malicious_strategy_index(prev_category, action_m))
    updated = dict(histories)
    updated[prev_category] = counters
    return updated


def _frequency(count_first: int, total: int) -> float:
    return count_first / total if total > 0 else float("nan")


@dataclass(frozen=True, slots=True)
class SimulationSummary:
    """Run-level aggregates."""

    slots: int
    cumulative_secondary_payoff: float
    cumulative_malicious_payoff: float
    category_counts: dict[Category, int]
    jam_count: int
    final_histories: HistorySnapshot
    p_star_a: float
    q_star_a: float
    p_star_b: float
    q_star_b: float

    def dwell_fraction(self, category: Category) -> float:
        return self.category_counts[category] / self.slots if self.slots else float("nan")


@dataclass(slots=True)
class SimulationResult:
    """Per-slot records plus the run summary."""

    records: list[SlotRecord]
    summary: SimulationSummary


def run_simulation(
    config: NetworkConfig,
    policies: PolicySpec,
    slots: int,
    seed: int,
) -> SimulationResult:
    """Run the slot loop from a uniformly random initial state.

    Per slot: classify, choose actions, settle, update histories, record.
    Deterministic in (config, policies, slots, seed).
    """
    if slots < 1:
        raise ValueError(f"slots must be >= 1 (got {slots!r})")
    rng = random.Random(seed)
    games = {cat: build_game(config, cat) for cat in (Category.A, Category.B)}
    equilibria = {cat: mixed_equilibrium(games[cat]) for cat in games}
    sec_band = rng.randrange(config.n_bands)
    mal_band = rng.randrange(config.n_bands)
    primaries = place_primaries(config, rng)
    state = NetworkState(
        secondary_band=sec_band,
        malicious_band=mal_band,
        primary_bands=primaries,
        malicious_knows_secondary_band=sec_band not in primaries,
        slot_index=0,
    )
    histories = {Category.A: HistoryCounters(), Category.B: HistoryCounters()}
    records: list[SlotRecord] = []
    total_s = 0.0
    total_m = 0.0
    jam_count = 0
    category_counts = {Category.A: 0, Category.B: 0, Category.C: 0}
    for _ in range(slots):
        category = classify_state(state)
        category_counts[category] += 1
        actions = choose_actions(category, policies, games, histories, rng, equilibria)
        (payoff_s, payoff_m), next_state = settle_slot(state, actions, config, rng)
        next_category = classify_state(next_state)
        histories = update_histories(category, actions, next_category, histories)
        jam = (
            next_state.secondary_band == next_state.malicious_band
            and next_state.secondary_band not in next_state.primary_bands
        )
        snapshot = HistorySnapshot(
            category_a=histories[Category.A], category_b=histories[Category.B]
        )
        records.append(
            SlotRecord(
                slot_index=state.slot_index,
                category=category,
                secondary_action=actions[0],
                malicious_action=actions[1],
                secondary_payoff=payoff_s,
                malicious_payoff=payoff_m,
                jam_occurred=jam,
                histories_after=snapshot,
                state_before=state,
                state_after=next_state,
            )
        )
        total_s += payoff_s
        total_m += payoff_m
        jam_count += jam
        state = next_state
    hist_a = histories[Category.A]
    hist_b = histories[Category.B]
    summary = SimulationSummary(
        slots=slots,
        cumulative_secondary_payoff=total_s,
        cumulative_malicious_payoff=total_m,
        category_counts=category_counts,
        jam_count=jam_count,
        final_histories=HistorySnapshot(category_a=hist_a, category_b=hist_b),
        p_star_a=_frequency(hist_a.h_s1, hist_a.total_secondary),
        q_star_a=_frequency(hist_a.h_m1, hist_a.total_malicious),
        p_star_b=_frequency(hist_b.h_s1, hist_b.total_secondary),
        q_star_b=_frequency(hist_b.h_m1, hist_b.total_malicious),
    )
    return SimulationResult(records=records, summary=summary)
