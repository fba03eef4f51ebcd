"""Decision policies: optimal stopping, decision-table lookup, the
memorizable rule set, one-step thresholds, and naive baselines, plus the
endgame override that races for the winning score regardless of risk.

All threshold policies share one shape: keep rolling while the banked
count is at or below the policy's threshold for the current state. The
rule table for one shotgun is evaluated top to bottom, first match wins;
states no printed rule covers fall back to the conservative stop-at-2 row
and are tagged so comparison reports can surface them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    Color,
    ColorCounts,
    DIE_TOTALS,
    InvalidStateError,
    TurnState,
    UnknownPolicyError,
    validate_turn_state,
)
from .rolls import HAND_SIZE, expected_brains_next, round_end_prob
from .solver import (
    SolverMode,
    TurnSolver,
    _completion_key,
    _largest_int_below,
    normalize_state,
    state_key,
)

CONTINUE = "continue"
STOP = "stop"

WINNING_SCORE = 13
#: a later-seat opponent at this score or more triggers the endgame race
ENDGAME_CHASE_SCORE = 10


@dataclass(frozen=True, slots=True)
class Advice:
    """Stop/continue verdict with the numbers that justify it."""

    verdict: str
    bust_probability: Fraction | float
    expected_value_of_continuing: float
    threshold_used: float  # largest banked count at which we keep rolling
    rationale: str

    @property
    def should_continue(self) -> bool:
        return self.verdict == CONTINUE


@dataclass(frozen=True, slots=True)
class GameContext:
    """Scores around the table, used only by the endgame override.

    `opponent_scores` lists opponents in turn order for the current round;
    the final `position` entries play after us this round, the rest have
    already played (or play before us).
    """

    own_score: int = 0
    opponent_scores: tuple[int, ...] = ()
    position: int = 0

    def __post_init__(self) -> None:
        if self.own_score < 0 or any(s < 0 for s in self.opponent_scores):
            raise ValueError("scores cannot be negative")
        if not 0 <= self.position <= len(self.opponent_scores):
            raise ValueError(
                f"position {self.position} out of range for "
                f"{len(self.opponent_scores)} opponents"
            )

    @property
    def scores_before(self) -> tuple[int, ...]:
        if self.position == 0:
            return self.opponent_scores
        return self.opponent_scores[: -self.position]

    @property
    def scores_after(self) -> tuple[int, ...]:
        if self.position == 0:
            return ()
        return self.opponent_scores[-self.position:]

    @property
    def endgame(self) -> bool:
        return endgame_active(self)


def endgame_active(ctx: GameContext) -> bool:
    """True when a prior player reached 13+ or a later opponent holds 10+."""
    return any(s >= WINNING_SCORE for s in ctx.scores_before) or any(
        s >= ENDGAME_CHASE_SCORE for s in ctx.scores_after
    )


def _endgame_target(ctx: GameContext) -> int:
    finished = [s for s in ctx.scores_before if s >= WINNING_SCORE]
    return max(finished) + 1 if finished else WINNING_SCORE


def endgame_override(state: TurnState, ctx: GameContext,
                     solver: TurnSolver | None = None) -> Advice:
    """Race to the winning total no matter the cost."""
    if not endgame_active(ctx):
        raise InvalidStateError("endgame override invoked outside the endgame")
    work = normalize_state(state)
    target = _endgame_target(ctx)
    threshold = target - ctx.own_score - 1  # roll while own + banked < target
    pe = round_end_prob(work.cup, work.footprints, work.shotguns)
    eb = expected_brains_next(work.cup, work.footprints)
    b = state.brains_banked
    ev = float(-b * pe + eb * (1 - pe))
    verdict = CONTINUE if b <= threshold else STOP
    return Advice(
        verdict=verdict,
        bust_probability=pe,
        expected_value_of_continuing=ev,
        threshold_used=float(threshold),
        rationale=f"endgame-race:target={target}",
    )


# --- the memorizable rule table ----------------------------------------------

def forced_next_hand(cup: ColorCounts, fp: ColorCounts) -> ColorCounts | None:
    """The only possible next hand, or None when the draw has options."""
    need = HAND_SIZE - fp.total
    if need == 0:
        return fp
    if cup.total < need:
        return None  # replenish first; callers normalize before asking
    if cup.total == need:
        return fp.add(cup)
    if sum(1 for c in cup.as_tuple() if c > 0) == 1:
        if cup.green:
            return fp.add(ColorCounts(green=need))
        if cup.yellow:
            return fp.add(ColorCounts(yellow=need))
        return fp.add(ColorCounts(red=need))
    return None


ALL_RED = ColorCounts(red=3)
ALL_GREEN = ColorCounts(green=3)


def rule_row_for(cup: ColorCounts, fp: ColorCounts, shotguns: int) -> tuple[str, int | None, bool]:
    """Match the printed rule rows top to bottom for a normalized state.

    Returns (rule tag, stop-at count or None for roll-again, defaulted)
    where defaulted marks one-shotgun states no printed row covers.
    """
    if shotguns == 0:
        return ("sg0:always-roll", None, False)
    if shotguns == 1:
        forced = forced_next_hand(cup, fp)
        if forced == ALL_RED:
            return ("sg1:forced-red", 1, False)
        if (fp.red == 2 and fp.yellow == 1) or cup.yellow > cup.green:
            return ("sg1:yellow-heavy", 2, False)
        if (fp.red == 2 and fp.green == 1) or cup.green > cup.yellow:
            return ("sg1:green-heavy", 3, False)
        if forced == ALL_GREEN:
            return ("sg1:forced-green", None, False)
        if fp.green == 2:
            return ("sg1:two-green-fp", None, False)
        return ("sg1:default", 2, True)
    if shotguns == 2:
        if fp.green == 3:
            return ("sg2:three-green-fp", 2, False)
        return ("sg2:otherwise", 1, False)
    raise InvalidStateError(f"no rule block for {shotguns} shotguns")


def simple_rule_row(state: TurnState) -> tuple[str, int | None, bool]:
    work = normalize_state(state)
    return rule_row_for(work.cup, work.footprints, work.shotguns)


def simple_rule_lookup(state: TurnState) -> int | None:
    """Stop-at count from the printed rules; None means roll again."""
    return simple_rule_row(state)[1]


# --- policies -----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Policy:
    """A named decision policy; `stopat` carries its banked-count parameter."""

    kind: str
    k: int | None = None

    KINDS = ("optimal", "table", "simple", "onestep", "stopat", "alwaysroll")

    @property
    def id(self) -> str:
        return f"stopat:{self.k}" if self.kind == "stopat" else self.kind

    def __str__(self) -> str:
        return self.id


def parse_policy(text: str) -> Policy:
    text = text.strip().lower()
    if text.startswith("stopat:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise UnknownPolicyError(f"bad stop-at count in {text!r}") from None
        if k < 0:
            raise UnknownPolicyError(f"stop-at count must be >= 0 in {text!r}")
        return Policy("stopat", k)
    if text in ("optimal", "table", "simple", "onestep", "alwaysroll"):
        return Policy(text)
    raise UnknownPolicyError(f"unknown policy {text!r}")


def _policy_threshold(policy: Policy, state: TurnState,
                      solver: TurnSolver) -> tuple[float, str]:
    """(largest banked count at which this policy rolls again, rationale)."""
    work = normalize_state(state)
    s = work.shotguns
    if policy.kind == "optimal":
        t = solver.dp_threshold_by_key(state_key(work))
        return float(t), "dp-threshold"
    if policy.kind == "table":
        d = solver.decision_point(
            work.cup, work.footprints, s, SolverMode.RECURSIVE
        )
        return float(_largest_int_below(d)), "table-threshold"
    if policy.kind == "onestep":
        d = solver.decision_point(
            work.cup, work.footprints, s, SolverMode.ONE_STEP
        )
        return float(_largest_int_below(d)), "one-step"
    if policy.kind == "simple":
        tag, stop_at, defaulted = simple_rule_row(work)
        t = math.inf if stop_at is None else float(stop_at - 1)
        return t, tag + (" (default)" if defaulted else "")
    if policy.kind == "stopat":
        return float(policy.k - 1), f"stop-at-{policy.k}"
    if policy.kind == "alwaysroll":
        return math.inf, "always-roll"
    raise UnknownPolicyError(f"unknown policy {policy.id!r}")


def advise(policy: Policy, state: TurnState, ctx: GameContext | None = None,
           solver: TurnSolver | None = None) -> Advice:
    """Deterministic advice for a live state under the named policy.

    With a game context present and the endgame active, the race override
    replaces the policy verdict.
    """
    violations = validate_turn_state(state)
    if violations:
        raise InvalidStateError("; ".join(violations))
    solver = solver or TurnSolver()
    if ctx is not None and endgame_active(ctx):
        return endgame_override(state, ctx, solver)
    work = normalize_state(state)
    b = state.brains_banked
    threshold, rationale = _policy_threshold(policy, state, solver)
    pe = round_end_prob(work.cup, work.footprints, work.shotguns)
    if policy.kind == "optimal":
        ev = solver.continuation_value(work) - b
    elif policy.kind == "table":
        eb = solver.expected_future_brains(work)
        ev = -b * float(pe) + eb * float(1 - pe)
    else:
        eb = expected_brains_next(work.cup, work.footprints)
        ev = float(-b * pe + eb * (1 - pe))
    return Advice(
        verdict=CONTINUE if b <= threshold else STOP,
        bust_probability=pe,
        expected_value_of_continuing=ev,
        threshold_used=threshold,
        rationale=rationale,
    )


def advise_params(policy: Policy, cup: ColorCounts, fp: ColorCounts,
                  shotguns: int, brains: int,
                  ctx: GameContext | None = None,
                  solver: TurnSolver | None = None) -> Advice:
    """Advice from the six-parameter projection plus banked count.

    The physical aside composition is filled in by the canonical
    completion, but the banked count is taken at face value: the published
    table answers any banked count for a parameter combination, including
    ones no physical arrangement of the thirteen dice realizes.
    """
    violations = []
    for color in Color:
        name = color.name.lower()
        total = DIE_TOTALS[color]
        if cup.get(color) < 0:
            violations.append(f"{name} cup negative")
        if fp.get(color) < 0:
            violations.append(f"{name} footprints negative")
        if cup.get(color) + fp.get(color) > total:
            violations.append(f"{name} cup+footprints exceed the {total} dice")
    if fp.total > HAND_SIZE:
        violations.append(f"footprints total {fp.total} exceeds hand size 3")
    if shotguns not in (0, 1, 2):
        violations.append(f"shotguns {shotguns} not in 0..2")
    if brains < 0:
        violations.append(f"banked brains {brains} negative")
    if violations:
        raise InvalidStateError("; ".join(violations))
    solver = solver or TurnSolver()

    state = TurnState(cup=cup, footprints=fp, shotguns=shotguns,
                      brains_banked=brains)
    if ctx is not None and endgame_active(ctx):
        target = _endgame_target(ctx)
        threshold = float(target - ctx.own_score - 1)
        key = _completion_key(cup.as_tuple(), fp.as_tuple(), shotguns)
        ncup, nfp = ColorCounts.from_tuple(key[0]), ColorCounts.from_tuple(key[1])
        pe = round_end_prob(ncup, nfp, shotguns)
        eb = expected_brains_next(ncup, nfp)
        return Advice(
            verdict=CONTINUE if brains <= threshold else STOP,
            bust_probability=pe,
            expected_value_of_continuing=float(-brains * pe + eb * (1 - pe)),
            threshold_used=threshold,
            rationale=f"endgame-race:target={target}",
        )

    key = _completion_key(cup.as_tuple(), fp.as_tuple(), shotguns)
    ncup, nfp = ColorCounts.from_tuple(key[0]), ColorCounts.from_tuple(key[1])
    pe = round_end_prob(ncup, nfp, shotguns)
    if policy.kind == "optimal":
        t = solver.dp_threshold_by_key(key)
        threshold, rationale = float(t), "dp-threshold"
        eb = float(solver.expected_future_brains_params(cup, fp, shotguns))
        ev = -brains * float(pe) + eb * float(1 - pe)
    elif policy.kind == "table":
        d = solver.decision_point(cup, fp, shotguns, SolverMode.RECURSIVE)
        threshold, rationale = float(_largest_int_below(d)), "table-threshold"
        eb = float(solver.expected_future_brains_params(cup, fp, shotguns))
        ev = -brains * float(pe) + eb * float(1 - pe)
    elif policy.kind == "onestep":
        d = solver.decision_point(cup, fp, shotguns, SolverMode.ONE_STEP)
        threshold, rationale = float(_largest_int_below(d)), "one-step"
        eb = expected_brains_next(ncup, nfp)
        ev = float(-brains * pe + eb * (1 - pe))
    elif policy.kind == "simple":
        tag, stop_at, defaulted = rule_row_for(ncup, nfp, shotguns)
        threshold = math.inf if stop_at is None else float(stop_at - 1)
        rationale = tag + (" (default)" if defaulted else "")
        eb = expected_brains_next(ncup, nfp)
        ev = float(-brains * pe + eb * (1 - pe))
    elif policy.kind == "stopat":
        threshold, rationale = float(policy.k - 1), f"stop-at-{policy.k}"
        eb = expected_brains_next(ncup, nfp)
        ev = float(-brains * pe + eb * (1 - pe))
    elif policy.kind == "alwaysroll":
        threshold, rationale = math.inf, "always-roll"
        eb = expected_brains_next(ncup, nfp)
        ev = float(-brains * pe + eb * (1 - pe))
    else:
        raise UnknownPolicyError(f"unknown policy {policy.id!r}")
    return Advice(
        verdict=CONTINUE if brains <= threshold else STOP,
        bust_probability=pe,
        expected_value_of_continuing=ev,
        threshold_used=threshold,
        rationale=rationale,
    )
