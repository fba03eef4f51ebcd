"""Single-roll probability machinery.

Everything here answers questions about the *next* roll only: which hands
can be drawn from the cup, how each hand can land, and the resulting exact
distributions of brains and shotguns. Multi-roll quantities live in the
solver. All results are exact rationals.

The cup draw is hypergeometric: the chance of pulling enough dice to top up
the footprints to a three-die hand is a product of per-color binomials over
the binomial of the whole cup. Impossible hand/footprint combinations get
probability zero so sums over the hand space stay uniform; an infeasible
draw (cup + footprints below three dice) raises NeedsReplenishError instead,
because replenishing is a state change this module does not own.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from .model import (
    Color,
    ColorCounts,
    ColorSplit,
    FACE_PROBS,
    NeedsReplenishError,
    multinomial_coeff,
)

HAND_SIZE = 3

#: all hand compositions (g, y, r) with g+y+r = 3, fixed enumeration order
ALL_HANDS = tuple(
    (g, y, HAND_SIZE - g - y)
    for g in range(HAND_SIZE + 1)
    for y in range(HAND_SIZE + 1 - g)
)


def _splits(n: int) -> tuple[tuple[int, int, int], ...]:
    """All (brains, footprints, shotguns) ways n dice of one color can land."""
    return tuple(
        (b, f, n - b - f) for b in range(n + 1) for f in range(n + 1 - b)
    )


@lru_cache(maxsize=None)
def _color_roll_prob(color: int, split: tuple[int, int, int]) -> Fraction:
    b, f, s = split
    pb, pf, ps = FACE_PROBS[color]
    return multinomial_coeff(b + f + s, split) * pb**b * pf**f * ps**s


def color_roll_prob(color: Color, split: ColorSplit) -> Fraction:
    """Exact probability that dice of one color land exactly as `split`.

    The multinomial law of a single color: arrangement count times the
    brain/footprint/shotgun face probabilities raised to the split counts.
    """
    if min(split.as_tuple()) < 0:
        raise ValueError(f"negative split {split}")
    if split.count > HAND_SIZE:
        raise ValueError(f"split {split} exceeds the {HAND_SIZE}-die hand")
    return _color_roll_prob(int(color), split.as_tuple())


def draw_feasible(cup: ColorCounts, fp: ColorCounts) -> bool:
    """True when cup + footprints can supply a full three-die hand."""
    return cup.total + fp.total >= HAND_SIZE


def _require_feasible(cup: ColorCounts, fp: ColorCounts) -> None:
    if not draw_feasible(cup, fp):
        raise NeedsReplenishError(
            f"cup {cup} plus footprints {fp} hold fewer than {HAND_SIZE} dice"
        )


@lru_cache(maxsize=None)
def _hand_draw_prob(cup: tuple[int, int, int], fp: tuple[int, int, int],
                    hand: tuple[int, int, int]) -> Fraction:
    drawn = tuple(hand[c] - fp[c] for c in range(3))
    if any(d < 0 for d in drawn) or any(drawn[c] > cup[c] for c in range(3)):
        return Fraction(0)
    num = comb(cup[0], drawn[0]) * comb(cup[1], drawn[1]) * comb(cup[2], drawn[2])
    return Fraction(num, comb(sum(cup), HAND_SIZE - sum(fp)))


def hand_draw_prob(cup: ColorCounts, fp: ColorCounts,
                   hand: ColorCounts) -> Fraction:
    """Probability the next hand is exactly `hand`, given cup and footprints.

    Footprint dice are already in the hand; the remainder is a uniform
    without-replacement draw from the cup. Returns 0 for hands the
    footprints make impossible (the sum convention for impossible cases).
    """
    _require_feasible(cup, fp)
    if hand.total != HAND_SIZE:
        raise ValueError(f"hand {hand} must hold exactly {HAND_SIZE} dice")
    return _hand_draw_prob(cup.as_tuple(), fp.as_tuple(), hand.as_tuple())


@dataclass(frozen=True, slots=True)
class WeightedHand:
    """A possible next hand together with its exact draw probability."""

    hand: ColorCounts
    draw_prob: Fraction


def enumerate_hands(cup: ColorCounts, fp: ColorCounts) -> list[WeightedHand]:
    """All hands with nonzero draw probability; the weights sum to one."""
    _require_feasible(cup, fp)
    out = []
    for hand in ALL_HANDS:
        p = _hand_draw_prob(cup.as_tuple(), fp.as_tuple(), hand)
        if p:
            out.append(WeightedHand(ColorCounts.from_tuple(hand), p))
    return out


@dataclass(frozen=True, slots=True)
class RollOutcome:
    """Joint result of rolling a hand: one ColorSplit per color."""

    green: ColorSplit
    yellow: ColorSplit
    red: ColorSplit

    @property
    def splits(self) -> tuple[ColorSplit, ColorSplit, ColorSplit]:
        return (self.green, self.yellow, self.red)

    @property
    def brains(self) -> int:
        return self.green.brains + self.yellow.brains + self.red.brains

    @property
    def shotguns(self) -> int:
        return self.green.shotguns + self.yellow.shotguns + self.red.shotguns

    @property
    def brains_by_color(self) -> ColorCounts:
        return ColorCounts(self.green.brains, self.yellow.brains, self.red.brains)

    @property
    def footprints_by_color(self) -> ColorCounts:
        return ColorCounts(
            self.green.footprints, self.yellow.footprints, self.red.footprints
        )

    @property
    def shotguns_by_color(self) -> ColorCounts:
        return ColorCounts(
            self.green.shotguns, self.yellow.shotguns, self.red.shotguns
        )

    @property
    def hand(self) -> ColorCounts:
        return ColorCounts(self.green.count, self.yellow.count, self.red.count)

    def prob(self) -> Fraction:
        """Exact probability of this outcome when its hand is rolled."""
        p = Fraction(1)
        for color, split in zip(Color, self.splits):
            p *= _color_roll_prob(int(color), split.as_tuple())
        return p


def enumerate_splits(
    hand: ColorCounts,
    target: tuple[str, int] | None = None,
) -> list[RollOutcome]:
    """All joint per-color ways `hand` can land.

    With `target = ("brains", k)` or `("shotguns", k)`, only outcomes whose
    total in that category is exactly k are returned.
    """
    if hand.total != HAND_SIZE or min(hand.as_tuple()) < 0:
        raise ValueError(f"invalid hand {hand}")
    if target is not None and target[0] not in ("brains", "shotguns"):
        raise ValueError(f"unknown target category {target[0]!r}")
    out = []
    g, y, r = hand.as_tuple()
    for sg, sy, sr in product(_splits(g), _splits(y), _splits(r)):
        outcome = RollOutcome(ColorSplit(*sg), ColorSplit(*sy), ColorSplit(*sr))
        if target is not None:
            category, count = target
            have = outcome.brains if category == "brains" else outcome.shotguns
            if have != count:
                continue
        out.append(outcome)
    return out


# --- internal joint law -------------------------------------------------
#
# One flat, cached enumeration per (cup, footprints) pair feeds every
# distribution below and the solver's transition graph. Entries are
# (drawn, ((b,f,s) per color), probability).

_JointEntry = tuple[
    tuple[int, int, int],
    tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]],
    Fraction,
]


@lru_cache(maxsize=None)
def _joint_outcomes(
    cup: tuple[int, int, int], fp: tuple[int, int, int]
) -> tuple[_JointEntry, ...]:
    res = []
    for hand in ALL_HANDS:
        cprob = _hand_draw_prob(cup, fp, hand)
        if not cprob:
            continue
        drawn = tuple(hand[c] - fp[c] for c in range(3))
        for combo in product(_splits(hand[0]), _splits(hand[1]), _splits(hand[2])):
            p = cprob
            for c in range(3):
                p *= _color_roll_prob(c, combo[c])
            res.append((drawn, combo, p))
    return tuple(res)


def joint_transition(
    cup: ColorCounts, fp: ColorCounts
) -> list[tuple[ColorCounts, RollOutcome, Fraction]]:
    """Exhaustive weighted list of (hand, outcome, probability).

    This is the joint law of the next roll: draw coefficient times the
    per-color multinomials. Weights sum exactly to one, and each entry
    carries the per-color splits needed to build the successor state.
    """
    _require_feasible(cup, fp)
    out = []
    for drawn, combo, p in _joint_outcomes(cup.as_tuple(), fp.as_tuple()):
        outcome = RollOutcome(
            ColorSplit(*combo[0]), ColorSplit(*combo[1]), ColorSplit(*combo[2])
        )
        out.append((outcome.hand, outcome, p))
    return out


@dataclass(frozen=True, slots=True)
class OutcomeDistribution:
    """Exact distribution of a count in {0, 1, 2, 3} on the next roll."""

    probabilities: tuple[Fraction, Fraction, Fraction, Fraction]

    def __getitem__(self, count: int) -> Fraction:
        return self.probabilities[count]

    def as_floats(self) -> tuple[float, float, float, float]:
        return tuple(float(p) for p in self.probabilities)

    def mean(self) -> Fraction:
        return sum(
            (i * p for i, p in enumerate(self.probabilities)), Fraction(0)
        )

    def total(self) -> Fraction:
        return sum(self.probabilities, Fraction(0))


def _category_dist(cup: ColorCounts, fp: ColorCounts, index: int) -> OutcomeDistribution:
    _require_feasible(cup, fp)
    acc = [Fraction(0)] * (HAND_SIZE + 1)
    for drawn, combo, p in _joint_outcomes(cup.as_tuple(), fp.as_tuple()):
        acc[combo[0][index] + combo[1][index] + combo[2][index]] += p
    return OutcomeDistribution(tuple(acc))


def brain_dist(cup: ColorCounts, fp: ColorCounts) -> OutcomeDistribution:
    """Exact distribution of the brain count on the next roll."""
    return _category_dist(cup, fp, 0)


def shotgun_dist(cup: ColorCounts, fp: ColorCounts) -> OutcomeDistribution:
    """Exact distribution of the shotgun count on the next roll."""
    return _category_dist(cup, fp, 2)


def round_end_prob(cup: ColorCounts, fp: ColorCounts, shotguns: int) -> Fraction:
    """Probability the next roll lifts the turn total to three-plus shotguns."""
    if shotguns not in (0, 1, 2):
        raise ValueError(f"shotguns must be 0..2, got {shotguns}")
    dist = shotgun_dist(cup, fp)
    return sum(
        (dist[i] for i in range(HAND_SIZE - shotguns, HAND_SIZE + 1)), Fraction(0)
    )


def expected_brains_next(cup: ColorCounts, fp: ColorCounts) -> Fraction:
    """Exact one-step expected brains (next roll only, busting ignored)."""
    return brain_dist(cup, fp).mean()
