"""Exact probabilities, optimal stopping, decision tables, simulation, and
advice for the Zombie Dice turn problem."""

__version__ = "0.1.0"

from .model import (
    CapExceededError,
    Color,
    ColorCounts,
    ColorSplit,
    CupState,
    FootprintSet,
    FULL_CUP,
    HandComposition,
    InvalidStateError,
    NeedsReplenishError,
    TurnState,
    UnknownPolicyError,
    face_probabilities,
    multinomial_coeff,
    validate_turn_state,
)
from .rolls import (
    OutcomeDistribution,
    RollOutcome,
    WeightedHand,
    brain_dist,
    color_roll_prob,
    enumerate_hands,
    enumerate_splits,
    expected_brains_next,
    hand_draw_prob,
    joint_transition,
    round_end_prob,
    shotgun_dist,
)
from .solver import (
    DecisionRow,
    SolverConfig,
    SolverMode,
    TurnSolver,
    canonical_completion,
    needs_replenish,
    normalize_state,
    replenish,
    table_checksum,
)
from .strategy import (
    Advice,
    GameContext,
    Policy,
    advise,
    advise_params,
    endgame_active,
    endgame_override,
    parse_policy,
    simple_rule_lookup,
)
from .simulate import (
    GameRecord,
    RngStream,
    TournamentSummary,
    TurnRecord,
    play_game,
    play_turn,
    roll_hand,
    run_tournament,
)
