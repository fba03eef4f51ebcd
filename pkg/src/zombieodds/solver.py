"""Turn-level solver: replenishment, the recursive expected-brains model,
the optimal-stopping dynamic program, decision points, and the full
decision table.

Two multi-roll quantities are computed over one shared transition graph:

* expected_future_brains -- the expected number of brains collected on all
  future rolls if the player never stops, with a busting roll contributing
  nothing (its brains are disallowed). Replenishment makes the chain loop,
  so this is solved as a sparse linear system rather than by recursion.
* turn_value -- the optimal-stopping value max(bank now, keep rolling),
  evaluated level by level in the banked-brain count. Within one level the
  zero-brain transitions form a DAG apart from the all-footprint reroll of
  a three-footprint hand, which is a self-loop with probability (1/3)^3
  and is folded in closed form.

Graph states are (cup, footprints, aside brains, shotgun count). The
colors of set-aside shotgun dice never influence future play, so they are
projected out. The shotgun count may exceed the set-aside dice implied by
the other fields: the decision table quotes values for parameter
combinations (for example a full cup with one shotgun) that no physical
arrangement of thirteen dice realizes, and those cells are evaluated with
the shotgun count as a pure counter.

Replenishment convention: when cup plus footprints cannot supply a
three-die hand, set-aside brain dice return to the cup, footprints stay in
hand, shotgun dice stay out, and the banked score is unchanged.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix, identity
from scipy.sparse.linalg import splu

from .model import (
    CapExceededError,
    Color,
    ColorCounts,
    DIE_TOTALS,
    InvalidStateError,
    TOTAL_DICE,
    TurnState,
    validate_turn_state,
)
from .rolls import HAND_SIZE, _joint_outcomes, expected_brains_next, round_end_prob

FRESH_KEY = ((6, 4, 3), (0, 0, 0), (0, 0, 0), 0)


class SolverMode(str, Enum):
    ONE_STEP = "onestep"
    RECURSIVE = "recursive"
    DP = "dp"


class NumericMode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True)
class SolverConfig:
    """Solver knobs: decision model, banked-brain cap, numeric style.

    Exact mode keeps one-step quantities as rationals end to end; the
    multi-roll solves always run in float64 (replenishment cycles make a
    rational linear solve impractical), fed by exactly-derived transition
    probabilities.
    """

    mode: SolverMode = SolverMode.RECURSIVE
    brain_cap: int = 64
    numeric: NumericMode = NumericMode.FLOAT

    def __post_init__(self) -> None:
        if self.brain_cap < 14:
            raise ValueError(
                f"brain_cap {self.brain_cap} must be at least the winning score 14"
            )


DEFAULT_CONFIG = SolverConfig()


# --- replenishment and state projection ------------------------------------

def needs_replenish(state: TurnState) -> bool:
    return state.dice_available < HAND_SIZE


def replenish(state: TurnState) -> TurnState:
    """Return aside brain dice to the cup; score and shotguns stay put."""
    if not needs_replenish(state):
        raise InvalidStateError(
            f"replenish called with {state.dice_available} dice available"
        )
    return TurnState(
        cup=state.cup.add(state.aside_brains),
        footprints=state.footprints,
        aside_brains=ColorCounts(),
        aside_shotguns=state.aside_shotguns,
        shotguns=state.shotguns,
        brains_banked=state.brains_banked,
    )


def normalize_state(state: TurnState) -> TurnState:
    """Replenish when required, otherwise return the state unchanged."""
    return replenish(state) if needs_replenish(state) else state


def canonical_completion(cup: ColorCounts, fp: ColorCounts, shotguns: int,
                         brains_banked: int | None = None) -> TurnState:
    """Build the full TurnState the six-parameter projection stands for.

    Dice outside cup and footprints are set aside; shotgun dice are
    assigned red-first (red, then yellow, then green), the rest count as
    brains. Raises InvalidStateError when fewer than `shotguns` dice sit
    outside, since no physical arrangement exists then.
    """
    outside = [DIE_TOTALS[c] - cup.get(c) - fp.get(c) for c in Color]
    if min(outside) < 0:
        raise InvalidStateError(f"cup {cup} plus footprints {fp} overflow a color")
    asg = [0, 0, 0]
    left = shotguns
    for c in (Color.RED, Color.YELLOW, Color.GREEN):
        take = min(left, outside[c])
        asg[c] = take
        left -= take
    if left > 0:
        raise InvalidStateError(
            f"{shotguns} shotguns need as many dice outside cup+footprints; "
            f"only {sum(outside)} are outside"
        )
    aside_b = ColorCounts(*(outside[c] - asg[c] for c in Color))
    if brains_banked is None:
        brains_banked = aside_b.total
    return TurnState(
        cup=cup,
        footprints=fp,
        aside_brains=aside_b,
        aside_shotguns=ColorCounts(*asg),
        shotguns=shotguns,
        brains_banked=brains_banked,
    )


# --- internal graph keys ----------------------------------------------------

Key = tuple  # ((cup g,y,r), (fp g,y,r), (aside-brains g,y,r), shotgun count)


def _normalize_key(key: Key) -> Key:
    cup, fp, ab, s = key
    if sum(cup) + sum(fp) < HAND_SIZE and any(ab):
        cup = (cup[0] + ab[0], cup[1] + ab[1], cup[2] + ab[2])
        ab = (0, 0, 0)
    return (cup, fp, ab, s)


def state_key(state: TurnState) -> Key:
    return _normalize_key(state.core_key())


def _completion_key(cup: tuple[int, int, int], fp: tuple[int, int, int],
                    shotguns: int) -> Key:
    """Like canonical_completion, but tolerant of parameter combinations
    with fewer outside dice than shotguns: the counter keeps the requested
    value and the missing shotgun dice simply do not exist."""
    outside = [DIE_TOTALS[c] - cup[c] - fp[c] for c in range(3)]
    if min(outside) < 0:
        raise InvalidStateError(f"cup {cup} plus footprints {fp} overflow a color")
    asg = [0, 0, 0]
    left = shotguns
    for c in (2, 1, 0):  # red, yellow, green
        take = min(left, outside[c])
        asg[c] = take
        left -= take
    ab = tuple(outside[c] - asg[c] for c in range(3))
    return _normalize_key((cup, fp, ab, shotguns))


# --- the shared transition graph --------------------------------------------

@dataclass
class TurnGraph:
    """All normalized states plus sparse one-roll transition structure.

    Ak[k] carries the probability of each non-busting successor reached
    while rolling exactly k brains. loop_q is the all-footprint self-loop
    mass, nonzero exactly for three-footprint hands. bust is the one-roll
    busting mass. Tiers order states so zero-brain transitions always point
    into an earlier tier, enabling forward substitution within a level.
    """

    states: list[Key]
    index: dict[Key, int]
    Ak: list[csr_matrix]
    loop_q: np.ndarray
    bust: np.ndarray
    tier_rows: list[np.ndarray]
    tier_a0: list[csr_matrix]
    _eb: np.ndarray | None = None
    _dp_cache: dict[int, tuple] = field(default_factory=dict)
    _bust_cache: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.states)


def _color_options(total: int) -> list[tuple[int, int, int]]:
    """(cup, footprints, aside-brains) splits of one color's dice; the
    remainder of the color is implicitly set aside as shotgun dice."""
    return [
        (cup, fp, ab)
        for cup in range(total + 1)
        for fp in range(min(HAND_SIZE, total - cup) + 1)
        for ab in range(total - cup - fp + 1)
    ]


def _enumerate_states() -> list[Key]:
    states = []
    for g in _color_options(6):
        for y in _color_options(4):
            for r in _color_options(3):
                fp = (g[1], y[1], r[1])
                if sum(fp) > HAND_SIZE:
                    continue
                cup = (g[0], y[0], r[0])
                ab = (g[2], y[2], r[2])
                if sum(cup) + sum(fp) < HAND_SIZE:
                    continue  # replenishment would already have fired
                aside_sg = TOTAL_DICE - sum(cup) - sum(fp) - sum(ab)
                if aside_sg > 2:
                    continue  # three set-aside shotguns is a bust, not a state
                for s in range(aside_sg, 3):
                    states.append((cup, fp, ab, s))
    return states


def _successor(key: Key, drawn, combo) -> tuple[int, int, Key | None]:
    """Apply one roll outcome; (brains, shotguns, next key or None on bust)."""
    cup, fp, ab, s = key
    db = combo[0][0] + combo[1][0] + combo[2][0]
    ds = combo[0][2] + combo[1][2] + combo[2][2]
    if s + ds >= HAND_SIZE:
        return db, ds, None
    ncup = (cup[0] - drawn[0], cup[1] - drawn[1], cup[2] - drawn[2])
    nfp = (combo[0][1], combo[1][1], combo[2][1])
    nab = (ab[0] + combo[0][0], ab[1] + combo[1][0], ab[2] + combo[2][0])
    return db, ds, _normalize_key((ncup, nfp, nab, s + ds))


def _build_graph() -> TurnGraph:
    states = _enumerate_states()
    index = {st: i for i, st in enumerate(states)}
    n = len(states)

    @lru_cache(maxsize=None)
    def outcomes_f(cup, fp):
        return tuple(
            (drawn, combo, float(p)) for drawn, combo, p in _joint_outcomes(cup, fp)
        )

    ent = {k: ([], [], []) for k in range(HAND_SIZE + 1)}
    loop_q = np.zeros(n)
    bust = np.zeros(n)
    for i, key in enumerate(states):
        cup, fp, ab, s = key
        for drawn, combo, p in outcomes_f(cup, fp):
            db, ds, nkey = _successor(key, drawn, combo)
            if nkey is None:
                bust[i] += p
                continue
            if nkey == key and db == 0:
                loop_q[i] += p
                continue
            rows, cols, vals = ent[db]
            rows.append(i)
            cols.append(index[nkey])
            vals.append(p)
    Ak = [
        csr_matrix((ent[k][2], (ent[k][0], ent[k][1])), shape=(n, n))
        for k in range(HAND_SIZE + 1)
    ]

    # Tier key strictly decreases along zero-brain non-loop edges: a draw
    # shrinks the cup, a no-draw roll adds shotguns, a replenish empties
    # the aside-brain pool.
    tier_key = np.array(
        [sum(ab) * 64 + 3 * sum(cup) + 2 - s for (cup, fp, ab, s) in states]
    )
    order = np.argsort(tier_key, kind="stable")
    groups = np.split(order, np.flatnonzero(np.diff(tier_key[order])) + 1)
    a0 = Ak[0].tocsr()
    return TurnGraph(
        states=states,
        index=index,
        Ak=Ak,
        loop_q=loop_q,
        bust=bust,
        tier_rows=[np.asarray(g) for g in groups],
        tier_a0=[a0[g] for g in groups],
    )


_GRAPH: TurnGraph | None = None


def _graph() -> TurnGraph:
    global _GRAPH
    if _GRAPH is None:
        _GRAPH = _build_graph()
    return _GRAPH


def _eb_vector(graph: TurnGraph) -> np.ndarray:
    """Never-stop expected brains before busting, for every state at once."""
    if graph._eb is None:
        a_total = graph.Ak[0] + graph.Ak[1] + graph.Ak[2] + graph.Ak[3]
        a_total = a_total + csr_matrix(
            (graph.loop_q, (range(graph.n), range(graph.n))),
            shape=(graph.n, graph.n),
        )
        rhs = (
            graph.Ak[1].sum(axis=1).A1
            + 2 * graph.Ak[2].sum(axis=1).A1
            + 3 * graph.Ak[3].sum(axis=1).A1
        )
        lu = splu((identity(graph.n, format="csr") - a_total).tocsc())
        graph._eb = lu.solve(rhs)
    return graph._eb


def _dp_arrays(graph: TurnGraph, brain_cap: int):
    """Level sweep of the optimal-stopping program.

    Returns (V, CV, threshold, monotone): V[b] is the turn value at b
    banked brains, CV[b] the continuation value, threshold the largest b
    at which continuing beats stopping (-1 when stopping always wins), and
    monotone a bool array confirming the continue set is exactly
    {0..threshold} for every state.
    """
    if brain_cap not in graph._dp_cache:
        n = graph.n
        v_full = np.zeros((brain_cap + 1, n))
        cv_full = np.zeros((brain_cap + 1, n))
        v_next = [np.full(n, float(brain_cap + k)) for k in (1, 2, 3)]
        threshold = np.full(n, -1, dtype=np.int64)
        cont_count = np.zeros(n, dtype=np.int64)
        for b in range(brain_cap, -1, -1):
            base = (
                graph.Ak[1] @ v_next[0]
                + graph.Ak[2] @ v_next[1]
                + graph.Ak[3] @ v_next[2]
            )
            vb = np.zeros(n)
            cvb = np.zeros(n)
            for rows, a0 in zip(graph.tier_rows, graph.tier_a0):
                cv = (base[rows] + a0 @ vb) / (1.0 - graph.loop_q[rows])
                cvb[rows] = cv
                if b == brain_cap:
                    vb[rows] = float(b)  # the cap forces a stop
                else:
                    vb[rows] = np.maximum(float(b), cv)
            if b < brain_cap:
                cont = cvb > b
                threshold = np.where(cont & (threshold < 0), b, threshold)
                cont_count += cont
            v_full[b] = vb
            cv_full[b] = cvb
            v_next = [vb] + v_next[:2]
        monotone = cont_count == threshold + 1
        graph._dp_cache[brain_cap] = (v_full, cv_full, threshold, monotone)
    return graph._dp_cache[brain_cap]


def _policy_sweep(graph: TurnGraph, continue_at, brain_cap: int) -> np.ndarray:
    """Turn values of a fixed stopping rule.

    continue_at(b) gives a bool array over states: roll again with b
    banked. The cap forces a stop at brain_cap exactly like the optimal
    sweep. Returns the (brain_cap+1, n) value table.
    """
    n = graph.n
    v_full = np.zeros((brain_cap + 1, n))
    v_next = [np.full(n, float(brain_cap + k)) for k in (1, 2, 3)]
    for b in range(brain_cap, -1, -1):
        vb = np.full(n, float(b))
        if b < brain_cap:
            base = (
                graph.Ak[1] @ v_next[0]
                + graph.Ak[2] @ v_next[1]
                + graph.Ak[3] @ v_next[2]
            )
            cont = continue_at(b)
            for rows, a0 in zip(graph.tier_rows, graph.tier_a0):
                sel = cont[rows]
                if not sel.any():
                    continue
                cv = (base[rows] + a0 @ vb) / (1.0 - graph.loop_q[rows])
                picked = rows[sel]
                vb[picked] = cv[sel]
        v_full[b] = vb
        v_next = [vb] + v_next[:2]
    return v_full


def _always_roll_bust(graph: TurnGraph, brain_cap: int) -> np.ndarray:
    """P(bust before hitting the brain cap) under never-stop play, per state."""
    if brain_cap not in graph._bust_cache:
        n = graph.n
        p_next = [np.zeros(n) for _ in (1, 2, 3)]  # capped turns stop unbusted
        pb = np.zeros(n)
        for b in range(brain_cap - 1, -1, -1):
            base = (
                graph.bust
                + graph.Ak[1] @ p_next[0]
                + graph.Ak[2] @ p_next[1]
                + graph.Ak[3] @ p_next[2]
            )
            pb = np.zeros(n)
            for rows, a0 in zip(graph.tier_rows, graph.tier_a0):
                pb[rows] = (base[rows] + a0 @ pb) / (1.0 - graph.loop_q[rows])
            p_next = [pb] + p_next[:2]
        graph._bust_cache[brain_cap] = pb
    return graph._bust_cache[brain_cap]


# --- public solver facade ----------------------------------------------------

@dataclass(frozen=True, slots=True)
class DecisionRow:
    """One table line: cup and footprint counts plus the decision values
    (the quantity banked brains must stay below to keep rolling) for zero,
    one, and two current shotguns."""

    cup: ColorCounts
    footprints: ColorCounts
    decisions: tuple[Fraction | float, Fraction | float, Fraction | float]

    def decision(self, shotguns: int) -> Fraction | float:
        return self.decisions[shotguns]


def _largest_int_below(x: Fraction | float) -> int:
    """Largest integer strictly below x (the stop threshold for `b < x`)."""
    if isinstance(x, Fraction):
        q = x.numerator // x.denominator
        return q - 1 if q == x else q
    f = int(np.floor(x))
    return f - 1 if f == x else f


class TurnSolver:
    """Facade bundling the transition graph, cached solves, and the table."""

    def __init__(self, config: SolverConfig = DEFAULT_CONFIG):
        self.config = config
        self._tables: dict[SolverMode, list[DecisionRow]] = {}

    # -- graph plumbing

    @property
    def graph(self) -> TurnGraph:
        return _graph()

    def _index_of(self, key: Key) -> int:
        idx = self.graph.index.get(key)
        if idx is None:
            raise InvalidStateError(f"no normalized state for key {key}")
        return idx

    # -- recursive expected brains and decision points

    def expected_future_brains(self, state: TurnState) -> float:
        """Expected brains over all future rolls under never-stop play,
        counting nothing from the roll that busts."""
        self._check_live(state)
        return float(_eb_vector(self.graph)[self._index_of(state_key(state))])

    def expected_future_brains_params(
        self, cup: ColorCounts, fp: ColorCounts, shotguns: int
    ) -> float:
        key = _completion_key(cup.as_tuple(), fp.as_tuple(), shotguns)
        return float(_eb_vector(self.graph)[self._index_of(key)])

    def decision_point(
        self,
        cup: ColorCounts,
        fp: ColorCounts,
        shotguns: int,
        mode: SolverMode | None = None,
    ) -> Fraction | float:
        """The threshold the banked count must stay below to keep rolling.

        One-step mode uses next-roll expected brains; recursive mode uses
        the never-stop expected future brains. Both divide by the
        round-ending probability of the (replenished) state.
        """
        mode = mode or self.config.mode
        key = _completion_key(cup.as_tuple(), fp.as_tuple(), shotguns)
        ncup = ColorCounts.from_tuple(key[0])
        nfp = ColorCounts.from_tuple(key[1])
        pe = round_end_prob(ncup, nfp, shotguns)
        if mode == SolverMode.ONE_STEP:
            eb = expected_brains_next(ncup, nfp)
            d = eb * (1 - pe) / pe
            return d if self.config.numeric == NumericMode.EXACT else float(d)
        if mode == SolverMode.RECURSIVE:
            eb = float(_eb_vector(self.graph)[self._index_of(key)])
            return eb * float(1 - pe) / float(pe)
        if mode == SolverMode.DP:
            _, _, threshold, _ = _dp_arrays(self.graph, self.config.brain_cap)
            return float(threshold[self._index_of(key)]) + 1.0
        raise ValueError(f"unknown mode {mode}")

    def stop_threshold(
        self,
        cup: ColorCounts,
        fp: ColorCounts,
        shotguns: int,
        mode: SolverMode | None = None,
    ) -> int:
        """Largest banked count at which continuing is still advised."""
        mode = mode or self.config.mode
        if mode == SolverMode.DP:
            key = _completion_key(cup.as_tuple(), fp.as_tuple(), shotguns)
            _, _, threshold, _ = _dp_arrays(self.graph, self.config.brain_cap)
            return int(threshold[self._index_of(key)])
        return _largest_int_below(self.decision_point(cup, fp, shotguns, mode))

    # -- optimal-stopping values

    def _check_live(self, state: TurnState) -> None:
        violations = validate_turn_state(state)
        if violations:
            raise InvalidStateError("; ".join(violations))

    def turn_value(self, state: TurnState) -> float:
        """Expected banked brains at turn end under optimal play."""
        self._check_live(state)
        b = state.brains_banked
        if b > self.config.brain_cap:
            raise CapExceededError(
                f"banked {b} exceeds brain cap {self.config.brain_cap}"
            )
        v_full, _, _, _ = _dp_arrays(self.graph, self.config.brain_cap)
        return float(v_full[b][self._index_of(state_key(state))])

    def continuation_value(self, state: TurnState) -> float:
        """Value of rolling again now and playing on optimally."""
        self._check_live(state)
        b = state.brains_banked
        if b > self.config.brain_cap:
            raise CapExceededError(
                f"banked {b} exceeds brain cap {self.config.brain_cap}"
            )
        _, cv_full, _, _ = _dp_arrays(self.graph, self.config.brain_cap)
        return float(cv_full[b][self._index_of(state_key(state))])

    def turn_value_params(self, cup: ColorCounts, fp: ColorCounts,
                          shotguns: int, brains: int) -> float:
        """turn_value from the six-parameter projection plus a free banked
        count (the banked count is not required to be realizable by the
        canonically completed aside dice)."""
        if brains > self.config.brain_cap:
            raise CapExceededError(
                f"banked {brains} exceeds brain cap {self.config.brain_cap}"
            )
        key = _completion_key(cup.as_tuple(), fp.as_tuple(), shotguns)
        v_full, _, _, _ = _dp_arrays(self.graph, self.config.brain_cap)
        return float(v_full[brains][self._index_of(key)])

    def dp_threshold_by_key(self, key: Key) -> int:
        _, _, threshold, _ = _dp_arrays(self.graph, self.config.brain_cap)
        return int(threshold[self._index_of(_normalize_key(key))])

    def monotone_stopping_everywhere(self) -> bool:
        """True when every state's continue set is a prefix {0..threshold}."""
        _, _, _, monotone = _dp_arrays(self.graph, self.config.brain_cap)
        return bool(monotone.all())

    # -- fixed-policy evaluation (analytic oracles for the simulator)

    def stop_at_k_turn_value(self, k: int, state: TurnState | None = None) -> float:
        """Expected banked brains for the rule `roll while banked < k`."""
        graph = self.graph
        ones = np.ones(graph.n, dtype=bool)
        zeros = np.zeros(graph.n, dtype=bool)
        v = _policy_sweep(
            graph, lambda b: ones if b < k else zeros, self.config.brain_cap
        )
        key = state_key(state) if state is not None else FRESH_KEY
        b = state.brains_banked if state is not None else 0
        return float(v[b][self._index_of(key)])

    def table_policy_turn_value(self, state: TurnState | None = None) -> float:
        """Expected banked brains when following the recursive decision rule."""
        graph = self.graph
        eb = _eb_vector(graph)
        thresholds = np.empty(graph.n, dtype=np.int64)
        pe_cache: dict[tuple, float] = {}
        for i, (cup, fp, ab, s) in enumerate(graph.states):
            pk = (cup, fp, s)
            pe = pe_cache.get(pk)
            if pe is None:
                pe = float(
                    round_end_prob(
                        ColorCounts.from_tuple(cup), ColorCounts.from_tuple(fp), s
                    )
                )
                pe_cache[pk] = pe
            d = eb[i] * (1.0 - pe) / pe
            f = int(np.floor(d))
            thresholds[i] = f - 1 if f == d else f
        v = _policy_sweep(
            graph, lambda b: thresholds >= b, self.config.brain_cap
        )
        key = state_key(state) if state is not None else FRESH_KEY
        b = state.brains_banked if state is not None else 0
        return float(v[min(b, self.config.brain_cap)][self._index_of(key)])

    def always_roll_bust_probability(self, state: TurnState | None = None) -> float:
        """P(a never-stopping turn ends in a bust rather than at the cap)."""
        key = state_key(state) if state is not None else FRESH_KEY
        pb = _always_roll_bust(self.graph, self.config.brain_cap)
        return float(pb[self._index_of(key)])

    # -- the decision table

    @staticmethod
    def table_pairs() -> list[tuple[ColorCounts, ColorCounts]]:
        """Feasible (cup, footprints) pairs in deterministic R,Y,G order."""
        pairs = []
        for rc in range(4):
            for yc in range(5):
                for gc in range(7):
                    for rf in range(4):
                        for yf in range(4 - rf):
                            for gf in range(4 - rf - yf):
                                if rc + rf > 3 or yc + yf > 4 or gc + gf > 6:
                                    continue
                                pairs.append(
                                    (
                                        ColorCounts(green=gc, yellow=yc, red=rc),
                                        ColorCounts(green=gf, yellow=yf, red=rf),
                                    )
                                )
        return pairs

    def generate_table(self, mode: SolverMode | None = None) -> list[DecisionRow]:
        """One row per feasible (cup, footprints) pair, every shotgun column.

        Rows needing replenishment are evaluated on the replenished state.
        """
        mode = mode or self.config.mode
        if mode not in self._tables:
            if mode == SolverMode.RECURSIVE:
                _eb_vector(self.graph)  # one shared solve up front
            rows = []
            for cup, fp in self.table_pairs():
                decisions = tuple(
                    self.decision_point(cup, fp, s, mode) for s in (0, 1, 2)
                )
                rows.append(DecisionRow(cup=cup, footprints=fp, decisions=decisions))
            self._tables[mode] = rows
        return self._tables[mode]

    def find_row(
        self, rows: list[DecisionRow], cup: ColorCounts, fp: ColorCounts
    ) -> DecisionRow | None:
        for row in rows:
            if row.cup == cup and row.footprints == fp:
                return row
        return None


def table_checksum(rows: list[DecisionRow]) -> str:
    """SHA-256 over the canonical CSV rendering of the table."""
    from .report import table_csv_lines

    payload = "\n".join(table_csv_lines(rows)).encode()
    return hashlib.sha256(payload).hexdigest()
