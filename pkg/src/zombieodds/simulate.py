"""Seeded Monte Carlo engine: single rolls, full turns, complete games with
the final-round and tiebreaker rules, and policy tournaments.

Randomness comes from one named generator so every record is replayable:
numpy's PCG64 seeded through SeedSequence, with per-game substreams derived
as SeedSequence(entropy=seed, spawn_key=(game_index,)). Dice resolve in a
fixed order (green, then yellow, then red within a hand), so a seed pins
the entire roll sequence bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import Color, ColorCounts, ColorSplit, DIE_TOTALS, TurnState, validate_turn_state
from .rolls import HAND_SIZE, RollOutcome
from .solver import SolverMode, TurnSolver, _dp_arrays
from .strategy import (
    Advice,
    GameContext,
    Policy,
    _endgame_target,
    advise,
    endgame_active,
    rule_row_for,
)

RNG_ALGORITHM = "numpy-pcg64-seedseq-v1"

#: cumulative (brain, brain+footprint) thresholds per color, for one uniform
_CUM = tuple(
    (float(p[0]), float(p[0] + p[1]))
    for p in (
        (0.5, 1 / 3),  # green
        (1 / 3, 1 / 3),  # yellow
        (1 / 6, 1 / 3),  # red
    )
)

_WINNING_SCORE = 13


@dataclass
class RngStream:
    """A reproducible random stream plus the recipe that created it."""

    seed: int
    gen: np.random.Generator
    algorithm: str = RNG_ALGORITHM

    @classmethod
    def from_seed(cls, seed: int) -> "RngStream":
        return cls(seed=seed, gen=np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(seed))
        ))

    def substream(self, index: int) -> "RngStream":
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(index,))
        return RngStream(seed=self.seed, gen=np.random.Generator(np.random.PCG64(seq)))


def _roll_color(gen: np.random.Generator, color: int, count: int) -> tuple[int, int, int]:
    b = f = s = 0
    cb, cf = _CUM[color]
    for u in gen.random(count) if count else ():
        if u < cb:
            b += 1
        elif u < cf:
            f += 1
        else:
            s += 1
    return b, f, s


def roll_hand(rng: RngStream, hand: ColorCounts) -> RollOutcome:
    """Roll a hand; each die resolves independently per its color's faces."""
    if hand.total != HAND_SIZE or min(hand.as_tuple()) < 0:
        raise ValueError(f"invalid hand {hand}")
    splits = [
        ColorSplit(*_roll_color(rng.gen, c, hand.get(Color(c)))) for c in range(3)
    ]
    return RollOutcome(*splits)


def draw_from_cup(rng: RngStream, cup: ColorCounts, count: int) -> ColorCounts:
    """Draw `count` dice from the cup uniformly without replacement."""
    remaining = list(cup.as_tuple())
    drawn = [0, 0, 0]
    for _ in range(count):
        total = sum(remaining)
        if total == 0:
            raise ValueError("cup is empty")
        u = rng.gen.random() * total
        for c in range(3):
            if u < remaining[c]:
                remaining[c] -= 1
                drawn[c] += 1
                break
            u -= remaining[c]
    return ColorCounts(*drawn)


def sample_first_rolls(rng: RngStream, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized first rolls of a turn: (brains, shotguns) count arrays.

    Statistically identical to draw_from_cup + roll_hand from a fresh cup;
    the per-color face multinomial is sampled as a chain of binomials.
    """
    gen = rng.gen
    hands = gen.multivariate_hypergeometric(list(DIE_TOTALS), HAND_SIZE, size=n)
    brains = np.zeros(n, dtype=np.int64)
    shots = np.zeros(n, dtype=np.int64)
    for c in range(3):
        pb = [0.5, 1 / 3, 1 / 6][c]
        pf_given_rest = [(1 / 3) / (1 / 2), (1 / 3) / (2 / 3), (1 / 3) / (5 / 6)][c]
        counts = hands[:, c]
        b = gen.binomial(counts, pb)
        rest = counts - b
        f = gen.binomial(rest, pf_given_rest)
        brains += b
        shots += rest - f
    return brains, shots


# --- turn engine ---------------------------------------------------------------

Decider = Callable[[tuple, tuple, tuple, int, int], bool]


def build_decider(policy: Policy, solver: TurnSolver,
                  regret: dict | None = None) -> Decider:
    """Compile a policy into a fast continue/stop function over raw tuples.

    The callable receives (cup, footprints, aside_brains, shotguns, banked)
    for the already-normalized state. When a `regret` dict is supplied the
    decider also tracks, for decisions to continue, how far the optimal
    continuation value falls below the banked count (the single-rule loss
    metric reported by tournaments).
    """
    kind = policy.kind

    if kind == "alwaysroll":
        base = lambda cup, fp, ab, s, b: True
    elif kind == "stopat":
        k = policy.k
        base = lambda cup, fp, ab, s, b: b < k
    elif kind == "optimal":
        graph = solver.graph
        _, _, threshold, _ = _dp_arrays(graph, solver.config.brain_cap)
        index = graph.index

        def base(cup, fp, ab, s, b):
            return b <= threshold[index[(cup, fp, ab, s)]]
    elif kind == "table":
        rows = solver.generate_table(SolverMode.RECURSIVE)
        lookup: dict[tuple, int] = {}
        for row in rows:
            for s in range(3):
                d = row.decisions[s]
                f = math.floor(d)
                lookup[(row.cup.as_tuple(), row.footprints.as_tuple(), s)] = (
                    f - 1 if f == d else f
                )

        def base(cup, fp, ab, s, b):
            return b <= lookup[(cup, fp, s)]
    elif kind == "onestep":
        cache: dict[tuple, int] = {}

        def base(cup, fp, ab, s, b):
            key = (cup, fp, s)
            t = cache.get(key)
            if t is None:
                t = solver.stop_threshold(
                    ColorCounts.from_tuple(cup),
                    ColorCounts.from_tuple(fp),
                    s,
                    SolverMode.ONE_STEP,
                )
                cache[key] = t
            return b <= t
    elif kind == "simple":
        def base(cup, fp, ab, s, b):
            _, stop_at, _ = rule_row_for(
                ColorCounts.from_tuple(cup), ColorCounts.from_tuple(fp), s
            )
            return True if stop_at is None else b < stop_at
    else:
        raise ValueError(f"no decider for policy {policy.id!r}")

    if regret is None:
        return base

    graph = solver.graph
    _, cv_full, _, _ = _dp_arrays(graph, solver.config.brain_cap)
    index = graph.index

    def tracking(cup, fp, ab, s, b):
        cont = base(cup, fp, ab, s, b)
        if cont and b <= solver.config.brain_cap:
            cv = cv_full[b][index[(cup, fp, ab, s)]]
            if cv < b:
                gap = b - cv
                regret["count"] += 1
                regret["total"] += gap
                regret["max"] = max(regret["max"], gap)
        return cont

    return tracking


@dataclass
class TurnRecord:
    """What happened in one turn."""

    banked: int
    busted: bool
    brains_collected: int  # brains accumulated before any busting roll
    rolls_count: int
    capped: bool = False
    rolls: list[tuple[ColorCounts, RollOutcome]] | None = None
    decisions: list[Advice] | None = None


def play_turn(
    rng: RngStream,
    policy: Policy,
    solver: TurnSolver,
    ctx: GameContext | None = None,
    decider: Decider | None = None,
    record: bool = False,
    validate: bool = False,
    brain_cap: int | None = None,
) -> TurnRecord:
    """Run one full turn under the rules engine.

    Draw up to three dice (footprints first), roll, set brains and shotguns
    aside, bust at three total shotguns, replenish when the cup runs short,
    and stop when the policy says stop. `validate` re-checks every
    intermediate state against the conservation invariants. The hot loop
    works on raw counts; record mode additionally keeps full roll outcomes
    and the advice behind each decision.
    """
    if decider is None:
        decider = build_decider(policy, solver)
    cap = brain_cap if brain_cap is not None else solver.config.brain_cap
    endgame = ctx is not None and endgame_active(ctx)
    chase_threshold = (
        _endgame_target(ctx) - ctx.own_score - 1 if endgame else None
    )
    gen = rng.gen
    random = gen.random

    cup = list(DIE_TOTALS)
    fp = [0, 0, 0]
    ab = [0, 0, 0]
    asg = [0, 0, 0]
    s = 0
    b = 0
    rolls: list[tuple[ColorCounts, RollOutcome]] | None = [] if record else None
    decisions: list[Advice] | None = [] if record else None

    def snapshot() -> TurnState:
        return TurnState(
            cup=ColorCounts(*cup),
            footprints=ColorCounts(*fp),
            aside_brains=ColorCounts(*ab),
            aside_shotguns=ColorCounts(*asg),
            shotguns=s,
            brains_banked=b,
        )

    rolls_count = 0
    while True:
        if cup[0] + cup[1] + cup[2] + fp[0] + fp[1] + fp[2] < HAND_SIZE:
            for c in range(3):
                cup[c] += ab[c]
                ab[c] = 0
        # draw dice one at a time, weighted by what remains in the cup
        hand = fp.copy()
        for _ in range(HAND_SIZE - hand[0] - hand[1] - hand[2]):
            u = random() * (cup[0] + cup[1] + cup[2])
            for c in range(3):
                if u < cup[c]:
                    cup[c] -= 1
                    hand[c] += 1
                    break
                u -= cup[c]

        # roll: green dice first, then yellow, then red
        splits = [_roll_color(gen, c, hand[c]) for c in range(3)]
        rolls_count += 1
        new_brains = splits[0][0] + splits[1][0] + splits[2][0]
        new_shot = splits[0][2] + splits[1][2] + splits[2][2]
        if rolls is not None:
            rolls.append((
                ColorCounts(*hand),
                RollOutcome(*(ColorSplit(*sp) for sp in splits)),
            ))

        if s + new_shot >= HAND_SIZE:
            # busted: brains on this roll score nothing
            for c in range(3):
                asg[c] += splits[c][2]
            s += new_shot
            return TurnRecord(
                banked=0, busted=True, brains_collected=b,
                rolls_count=rolls_count, rolls=rolls, decisions=decisions,
            )

        for c in range(3):
            ab[c] += splits[c][0]
            asg[c] += splits[c][2]
            fp[c] = splits[c][1]
        s += new_shot
        b += new_brains

        if validate:
            problems = validate_turn_state(snapshot())
            if problems:
                raise AssertionError(f"conservation broken mid-turn: {problems}")

        if b >= cap:
            return TurnRecord(
                banked=b, busted=False, brains_collected=b,
                rolls_count=rolls_count, capped=True, rolls=rolls,
                decisions=decisions,
            )

        # normalized view for the decision
        if cup[0] + cup[1] + cup[2] + fp[0] + fp[1] + fp[2] < HAND_SIZE:
            dcup = (cup[0] + ab[0], cup[1] + ab[1], cup[2] + ab[2])
            dab = (0, 0, 0)
        else:
            dcup = (cup[0], cup[1], cup[2])
            dab = (ab[0], ab[1], ab[2])
        dfp = (fp[0], fp[1], fp[2])
        if endgame:
            cont = b <= chase_threshold
        else:
            cont = decider(dcup, dfp, dab, s, b)
        if record:
            decisions.append(advise(policy, snapshot(), ctx, solver))
        if not cont:
            return TurnRecord(
                banked=b, busted=False, brains_collected=b,
                rolls_count=rolls_count, rolls=rolls, decisions=decisions,
            )


# --- games and tournaments -------------------------------------------------------

def _trace_entry(game: int, seat: int, policy: str, rec: TurnRecord) -> dict:
    return {
        "game": game,
        "seat": seat,
        "policy": policy,
        "banked": rec.banked,
        "busted": rec.busted,
        "collected": rec.brains_collected,
        "rolls": rec.rolls_count,
        "capped": rec.capped,
    }


@dataclass
class GameRecord:
    """One full game: seat-ordered policies, final scores, and the winner."""

    players: tuple[str, ...]
    scores: tuple[int, ...]
    winner_seat: int
    winner: str
    rounds: int
    tiebreaker_rounds: int


def play_game(
    rng: RngStream,
    policies: list[Policy],
    solver: TurnSolver,
    deciders: list[Decider] | None = None,
    collect_turns: list | None = None,
    use_context: bool = True,
) -> GameRecord:
    """Play to thirteen brains, finish the round, break ties among leaders.

    With `use_context` the players see the score situation and the endgame
    race override applies; without it every policy plays its turn blind
    (scripted), which is the only way exact ties can arise between two
    players, because a context-aware trailing player always chases one
    brain past the leader.
    """
    n = len(policies)
    if not 2 <= n <= 8:
        raise ValueError(f"need 2..8 players, got {n}")
    if deciders is None:
        deciders = [build_decider(p, solver) for p in policies]
    scores = [0] * n
    rounds = 0
    tiebreaker_rounds = 0

    def one_round(seats: list[int]) -> None:
        for pos, seat in enumerate(seats):
            ctx = None
            if use_context:
                others = [scores[x] for x in seats if x != seat]
                ctx = GameContext(
                    own_score=scores[seat],
                    opponent_scores=tuple(others),
                    position=len(seats) - pos - 1,
                )
            rec = play_turn(
                rng, policies[seat], solver, ctx=ctx, decider=deciders[seat]
            )
            scores[seat] += rec.banked
            if collect_turns is not None:
                collect_turns.append((seat, rec))

    seats = list(range(n))
    while max(scores) < _WINNING_SCORE:
        rounds += 1
        one_round(seats)

    best = max(scores)
    leaders = [i for i in range(n) if scores[i] == best]
    while len(leaders) > 1:
        tiebreaker_rounds += 1
        one_round(leaders)
        best = max(scores[i] for i in leaders)
        leaders = [i for i in leaders if scores[i] == best]

    winner = leaders[0]
    return GameRecord(
        players=tuple(p.id for p in policies),
        scores=tuple(scores),
        winner_seat=winner,
        winner=policies[winner].id,
        rounds=rounds,
        tiebreaker_rounds=tiebreaker_rounds,
    )


@dataclass
class PolicyStats:
    """Aggregates for one policy across a tournament."""

    policy: str
    games: int = 0
    wins: int = 0
    turns: int = 0
    brains_total: int = 0
    brains_sq_total: int = 0
    collected_total: int = 0  # brains gathered before busting or stopping
    busts: int = 0
    capped: int = 0

    @property
    def win_rate(self) -> float:
        return self.wins / self.games if self.games else float("nan")

    @property
    def win_rate_se(self) -> float:
        if not self.games:
            return float("nan")
        p = self.win_rate
        return math.sqrt(p * (1 - p) / self.games)

    @property
    def mean_brains_per_turn(self) -> float:
        return self.brains_total / self.turns if self.turns else float("nan")

    @property
    def mean_brains_se(self) -> float:
        if self.turns < 2:
            return float("nan")
        m = self.mean_brains_per_turn
        var = self.brains_sq_total / self.turns - m * m
        return math.sqrt(max(var, 0.0) / self.turns)

    @property
    def mean_collected_per_turn(self) -> float:
        return self.collected_total / self.turns if self.turns else float("nan")

    @property
    def bust_rate(self) -> float:
        return self.busts / self.turns if self.turns else float("nan")


@dataclass
class TournamentSummary:
    """Deterministic tournament result set.

    `slot_wins[j]` counts wins for the j-th entry of `players` regardless
    of policy name, so mirror matches between identical policies can still
    be checked for seat symmetry.
    """

    players: tuple[str, ...]
    games: int
    seed: int
    algorithm: str
    stats: dict[str, PolicyStats]
    slot_wins: tuple[int, ...] = ()
    simple_rule_regret: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "players": list(self.players),
            "games": self.games,
            "seed": self.seed,
            "algorithm": self.algorithm,
            "slot_wins": list(self.slot_wins),
            "policies": {},
        }
        for name, st in self.stats.items():
            out["policies"][name] = {
                "games": st.games,
                "wins": st.wins,
                "win_rate": st.win_rate,
                "win_rate_se": st.win_rate_se,
                "turns": st.turns,
                "mean_brains_per_turn": st.mean_brains_per_turn,
                "mean_brains_se": st.mean_brains_se,
                "mean_collected_per_turn": st.mean_collected_per_turn,
                "bust_rate": st.bust_rate,
                "capped_turns": st.capped,
            }
        if self.simple_rule_regret is not None:
            reg = dict(self.simple_rule_regret)
            reg["mean"] = reg["total"] / reg["count"] if reg["count"] else 0.0
            out["simple_rule_regret"] = reg
        return out


def run_tournament(
    players: list[Policy],
    games: int,
    seed: int,
    solver: TurnSolver | None = None,
    rotate_seats: bool = True,
    track_regret: bool | None = None,
    use_context: bool = True,
    trace: list[dict] | None = None,
) -> TournamentSummary:
    """Play `games` full games, rotating seat order to cancel first-player
    advantage. Solo mode (one player) measures turns instead of games: each
    "game" is a single fresh turn. Pass a list as `trace` to collect one
    dict per turn (game, seat, policy, banked, busted, rolls)."""
    if not players:
        raise ValueError("need at least one player")
    solver = solver or TurnSolver()
    root = RngStream.from_seed(seed)
    if track_regret is None:
        track_regret = any(p.kind == "simple" for p in players)
    regret = {"count": 0, "total": 0.0, "max": 0.0} if track_regret else None

    stats = {p.id: PolicyStats(policy=p.id) for p in players}

    if len(players) == 1:
        policy = players[0]
        decider = build_decider(
            policy, solver, regret=regret if policy.kind == "simple" else None
        )
        st = stats[policy.id]
        for i in range(games):
            rec = play_turn(root.substream(i), policy, solver, decider=decider)
            st.turns += 1
            st.brains_total += rec.banked
            st.brains_sq_total += rec.banked * rec.banked
            st.collected_total += rec.brains_collected
            st.busts += rec.busted
            st.capped += rec.capped
            if trace is not None:
                trace.append(_trace_entry(i, 0, policy.id, rec))
        return TournamentSummary(
            players=tuple(p.id for p in players),
            games=games,
            seed=seed,
            algorithm=RNG_ALGORITHM,
            stats=stats,
            slot_wins=(0,),
            simple_rule_regret=regret,
        )

    base_deciders = [
        build_decider(
            p, solver, regret=regret if p.kind == "simple" else None
        )
        for p in players
    ]
    n = len(players)
    slot_wins = [0] * n
    for i in range(games):
        shift = i % n if rotate_seats else 0
        order = [(j + shift) % n for j in range(n)]  # order[seat] = player slot
        game_policies = [players[j] for j in order]
        game_deciders = [base_deciders[j] for j in order]
        turns: list[tuple[int, TurnRecord]] = []
        rec = play_game(
            root.substream(i), game_policies, solver,
            deciders=game_deciders, collect_turns=turns,
            use_context=use_context,
        )
        slot_wins[order[rec.winner_seat]] += 1
        for seat, policy in enumerate(game_policies):
            st = stats[policy.id]
            st.games += 1
            st.wins += rec.winner_seat == seat
        for seat, turn in turns:
            st = stats[game_policies[seat].id]
            st.turns += 1
            st.brains_total += turn.banked
            st.brains_sq_total += turn.banked * turn.banked
            st.collected_total += turn.brains_collected
            st.busts += turn.busted
            st.capped += turn.capped
            if trace is not None:
                trace.append(_trace_entry(i, seat, game_policies[seat].id, turn))
    return TournamentSummary(
        players=tuple(p.id for p in players),
        games=games,
        seed=seed,
        algorithm=RNG_ALGORITHM,
        stats=stats,
        slot_wins=tuple(slot_wins),
        simple_rule_regret=regret,
    )
