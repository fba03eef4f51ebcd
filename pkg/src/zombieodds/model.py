"""Dice definitions, exact arithmetic helpers, and the turn-state model.

The cup holds thirteen dice: six green, four yellow, three red. Every die
has six faces split between brains, footprints, and shotguns; the split
depends on the color. All probabilities derived from these counts are kept
as `fractions.Fraction` so downstream math stays exact until a caller asks
for a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable


class Color(IntEnum):
    """Die colors, ordered green/yellow/red internally."""

    GREEN = 0
    YELLOW = 1
    RED = 2

    @property
    def letter(self) -> str:
        return "GYR"[self]


#: dice of each color in the full cup, indexed by Color
DIE_TOTALS = (6, 4, 3)
TOTAL_DICE = 13

#: (brain, footprint, shotgun) faces out of 6, indexed by Color
FACE_COUNTS = (
    (3, 2, 1),  # green
    (2, 2, 2),  # yellow
    (1, 2, 3),  # red
)

#: exact per-face probabilities, indexed by Color
FACE_PROBS = tuple(
    tuple(Fraction(k, 6) for k in counts) for counts in FACE_COUNTS
)


class InvalidStateError(ValueError):
    """A turn state violates its invariants, or an operation precondition failed."""


class NeedsReplenishError(ValueError):
    """Cup plus footprints cannot supply a three-die hand; replenish first."""


class CapExceededError(ValueError):
    """Banked brains exceed the solver's configured cap."""


class UnknownPolicyError(ValueError):
    """Policy identifier does not name a known decision policy."""


def face_probabilities(color: Color) -> tuple[Fraction, Fraction, Fraction]:
    """Exact (brain, footprint, shotgun) probabilities for one die of `color`."""
    return FACE_PROBS[color]


def multinomial_coeff(n: int, parts: Iterable[int]) -> int:
    """Number of distinct arrangements of `n` items split into `parts` groups.

    Raises ValueError when the parts are negative or do not sum to n.
    """
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


@dataclass(frozen=True, slots=True)
class ColorCounts:
    """Per-color die counts. Used for cups, footprints, hands, and asides."""

    green: int = 0
    yellow: int = 0
    red: int = 0

    @property
    def total(self) -> int:
        return self.green + self.yellow + self.red

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.green, self.yellow, self.red)

    @classmethod
    def from_tuple(cls, t: tuple[int, int, int]) -> "ColorCounts":
        return cls(green=t[0], yellow=t[1], red=t[2])

    def get(self, color: Color) -> int:
        return self.as_tuple()[color]

    def add(self, other: "ColorCounts") -> "ColorCounts":
        return ColorCounts(
            self.green + other.green,
            self.yellow + other.yellow,
            self.red + other.red,
        )

    def sub(self, other: "ColorCounts") -> "ColorCounts":
        return ColorCounts(
            self.green - other.green,
            self.yellow - other.yellow,
            self.red - other.red,
        )

    def __str__(self) -> str:
        return f"{self.red}R/{self.yellow}Y/{self.green}G"


# Semantic aliases; invariants are enforced where the values are used.
CupState = ColorCounts
FootprintSet = ColorCounts
HandComposition = ColorCounts

FULL_CUP = ColorCounts(green=6, yellow=4, red=3)
EMPTY = ColorCounts()


@dataclass(frozen=True, slots=True)
class ColorSplit:
    """How the dice of a single color landed: brains/footprints/shotguns."""

    brains: int
    footprints: int
    shotguns: int

    @property
    def count(self) -> int:
        return self.brains + self.footprints + self.shotguns

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.brains, self.footprints, self.shotguns)


@dataclass(frozen=True, slots=True)
class TurnState:
    """Full mid-turn situation.

    `shotguns` is the turn's running shotgun count and must equal the number
    of set-aside shotgun dice. `brains_banked` is an independent tally: after
    a replenish, aside brain dice return to the cup while the score persists,
    so it can exceed the number of physical brain dice currently set aside.
    """

    cup: ColorCounts = FULL_CUP
    footprints: ColorCounts = EMPTY
    aside_brains: ColorCounts = EMPTY
    aside_shotguns: ColorCounts = EMPTY
    shotguns: int = 0
    brains_banked: int = 0

    @classmethod
    def fresh_turn(cls) -> "TurnState":
        """Start-of-turn state: full cup, nothing rolled yet."""
        return cls()

    @property
    def dice_available(self) -> int:
        """Dice that can go into the next hand without replenishing."""
        return self.cup.total + self.footprints.total

    def core_key(self) -> tuple:
        """Hashable projection used by the solver: cup, footprints, aside
        brains, and the shotgun count (aside-shotgun colors never affect
        future play, so they are dropped)."""
        return (
            self.cup.as_tuple(),
            self.footprints.as_tuple(),
            self.aside_brains.as_tuple(),
            self.shotguns,
        )

    def __str__(self) -> str:
        return (
            f"cup {self.cup}, fp {self.footprints}, "
            f"sg {self.shotguns}, banked {self.brains_banked}"
        )


def validate_turn_state(state: TurnState) -> list[str]:
    """Check every conservation and range invariant.

    Returns a list of human-readable violations; an empty list means the
    state is a legal live turn state.
    """
    v: list[str] = []
    for color in Color:
        name = color.name.lower()
        total = DIE_TOTALS[color]
        cup = state.cup.get(color)
        fp = state.footprints.get(color)
        ab = state.aside_brains.get(color)
        asg = state.aside_shotguns.get(color)
        for label, count in (("cup", cup), ("footprints", fp),
                             ("aside brains", ab), ("aside shotguns", asg)):
            if count < 0:
                v.append(f"{name} {label} negative ({count})")
        if cup > total:
            v.append(f"{name} overflow: {cup} in cup, only {total} exist")
        used = cup + fp + ab + asg
        if min(cup, fp, ab, asg) >= 0 and used != total:
            v.append(
                f"{name} conservation: cup+footprints+asides = {used}, "
                f"expected {total}"
            )
    if state.footprints.total > 3:
        v.append(f"footprints total {state.footprints.total} exceeds hand size 3")
    if state.shotguns != state.aside_shotguns.total:
        v.append(
            f"shotgun mismatch: count {state.shotguns} vs "
            f"{state.aside_shotguns.total} dice set aside"
        )
    if state.shotguns > 2:
        v.append(f"busted state: {state.shotguns} shotguns is not a live turn")
    if state.brains_banked < 0:
        v.append(f"banked brains negative ({state.brains_banked})")
    if state.brains_banked < state.aside_brains.total:
        v.append(
            f"banked brains {state.brains_banked} below the "
            f"{state.aside_brains.total} brain dice set aside"
        )
    return v


def fraction_str(x: Fraction) -> str:
    """Render a Fraction as `num/den` (or `num` when integral)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction | float, places: int = 6) -> str:
    """Round-half-even decimal rendering.

    Fractions are rounded exactly (no float detour); floats use the
    platform's IEEE half-even formatting.
    """
    if isinstance(x, Fraction):
        scale = 10 ** places
        q, r = divmod(x.numerator * scale, x.denominator)
        if 2 * r > x.denominator or (2 * r == x.denominator and q % 2):
            q += 1
        sign = "-" if q < 0 else ""
        q = abs(q)
        return f"{sign}{q // scale}.{q % scale:0{places}d}"
    return f"{x:.{places}f}"


def prob_str(x: Fraction | float, places: int = 6) -> str:
    """`fraction = decimal` rendering used by all probability output."""
    if isinstance(x, Fraction):
        return f"{fraction_str(x)} = {decimal_str(x, places)}"
    return decimal_str(x, places)
