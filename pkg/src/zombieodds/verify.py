"""Verification of the published reference constants.

Every check recomputes its value from scratch through the engine and
compares at the stated tolerance: exact rational equality where the source
gives a fraction, otherwise decimal agreement. Failures are report
content, not errors; the two recursive-model checks are expected to sit a
hair outside their tolerances because the reference program's
replenishment convention is not documented (see README).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import ColorCounts, FULL_CUP, decimal_str
from .rolls import brain_dist, round_end_prob, shotgun_dist
from .solver import SolverMode, TurnSolver

#: de Mere's first game: at least one six in four rolls of one die
DE_MERE_SINGLE = Fraction(671, 1296)
#: de Mere's second game: no double six in twenty-four rolls of two dice
DE_MERE_DOUBLE = Fraction(35, 36) ** 24

FIRST_ROLL_SHOTGUN_6DP = ("0.347449", "0.444833", "0.183372", "0.024346")
FIRST_ROLL_BRAIN_6DP = ("0.245144", "0.444056", "0.261072", "0.049728")
FIRST_ROLL_BUST = Fraction(94, 3861)

SAMPLE_CUP = ColorCounts(green=1, yellow=3, red=2)
SAMPLE_FP = ColorCounts(green=1, yellow=0, red=1)
SAMPLE_DECISIONS = (78.338580, 4.043669, 0.180008)
SAMPLE_TOLERANCE = 1e-3

FRESH_EXPECTED_BRAINS = 3.315559
FRESH_TOLERANCE = 5e-3

TABLE_ROW_TARGET = 4867


@dataclass(frozen=True)
class VerifyCheck:
    check_id: str
    expected: str
    computed: str
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[VerifyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"[{mark}] {c.check_id}: expected {c.expected}, computed {c.computed}"
            if c.note:
                line += f"  ({c.note})"
            out.append(line)
        status = "all checks passed" if self.passed else "some checks FAILED"
        out.append(f"overall: {status}")
        return out


def run_verification(solver: TurnSolver | None = None) -> VerifyReport:
    solver = solver or TurnSolver()
    checks: list[VerifyCheck] = []
    nofp = ColorCounts()

    one_six = 1 - Fraction(5, 6) ** 4
    checks.append(
        VerifyCheck(
            "de-mere-one-six-in-four",
            "671/1296",
            f"{one_six.numerator}/{one_six.denominator}",
            one_six == DE_MERE_SINGLE,
            note=f"= {decimal_str(one_six, 4)}",
        )
    )
    dd = DE_MERE_DOUBLE
    checks.append(
        VerifyCheck(
            "de-mere-no-double-six-in-24",
            "0.5086",
            decimal_str(dd, 4),
            decimal_str(dd, 4) == "0.5086",
            note="(35/36)^24",
        )
    )

    sd = shotgun_dist(FULL_CUP, nofp)
    got = tuple(decimal_str(p) for p in sd.probabilities)
    checks.append(
        VerifyCheck(
            "first-roll-shotgun-table",
            " ".join(FIRST_ROLL_SHOTGUN_6DP),
            " ".join(got),
            got == FIRST_ROLL_SHOTGUN_6DP,
        )
    )
    bd = brain_dist(FULL_CUP, nofp)
    got = tuple(decimal_str(p) for p in bd.probabilities)
    checks.append(
        VerifyCheck(
            "first-roll-brain-table",
            " ".join(FIRST_ROLL_BRAIN_6DP),
            " ".join(got),
            got == FIRST_ROLL_BRAIN_6DP,
        )
    )
    bust = round_end_prob(FULL_CUP, nofp, 0)
    checks.append(
        VerifyCheck(
            "first-roll-bust-probability",
            "94/3861",
            f"{bust.numerator}/{bust.denominator}",
            bust == FIRST_ROLL_BUST,
            note="exact rational equality",
        )
    )

    eb = solver.expected_future_brains_params(FULL_CUP, nofp, 0)
    checks.append(
        VerifyCheck(
            "fresh-turn-recursive-expected-brains",
            f"{FRESH_EXPECTED_BRAINS} +/- {FRESH_TOLERANCE}",
            f"{eb:.6f}",
            abs(eb - FRESH_EXPECTED_BRAINS) <= FRESH_TOLERANCE,
        )
    )

    sample_ok = True
    computed = []
    for s in (0, 1, 2):
        d = solver.decision_point(SAMPLE_CUP, SAMPLE_FP, s, SolverMode.RECURSIVE)
        computed.append(f"{d:.6f}")
        sample_ok &= abs(d - SAMPLE_DECISIONS[s]) <= SAMPLE_TOLERANCE
    checks.append(
        VerifyCheck(
            "sample-row-decision-values",
            " ".join(f"{v:.6f}" for v in SAMPLE_DECISIONS),
            " ".join(computed),
            sample_ok,
            note="tolerance 1e-3; the reference replenishment convention is unstated",
        )
    )

    rows = solver.generate_table(SolverMode.RECURSIVE)
    cells = 3 * len(rows)
    checks.append(
        VerifyCheck(
            "decision-table-size",
            f"{TABLE_ROW_TARGET} parameter combinations",
            f"{len(rows)} rows x 3 shotgun columns = {cells} combinations",
            len(rows) == TABLE_ROW_TARGET or cells == TABLE_ROW_TARGET,
            note="canonical feasibility rules; discrepancy reported, not hidden",
        )
    )

    return VerifyReport(checks=tuple(checks))
