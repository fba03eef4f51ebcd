// Turn mirror and score tracking for a live game of Zombie Dice.
//
// The mirror only moves dice between pools through guarded transitions, so
// a conservation-violating state cannot be constructed: you tap a color to
// draw a die (only if the cup has one and the hand has room) and tap a face
// to record how each die landed. Numbers shown next to the mirror all come
// from the advice service; this module only does bookkeeping.

import type {
  AdviceRequest,
  ColorTriple,
  DieColor,
  Face,
  GameContextPayload,
} from "./types";
import { copyTriple, tripleTotal, zeroTriple } from "./types";

export const DICE_TOTALS: ColorTriple = { red: 3, yellow: 4, green: 6 };
export const HAND_SIZE = 3;
export const WINNING_SCORE = 13;
export const CHASE_SCORE = 10;

export interface PendingDie {
  color: DieColor;
  face: Face | null;
  /** true for a footprint kept from the previous roll; it cannot be put back */
  kept: boolean;
}

export class TurnMirror {
  cup: ColorTriple = copyTriple(DICE_TOTALS);
  asideBrains: ColorTriple = zeroTriple();
  asideShotguns: ColorTriple = zeroTriple();
  shotguns = 0;
  brainsBanked = 0;
  hand: PendingDie[] = [];
  busted = false;
  rollsCommitted = 0;
  replenishedLastDraw = false;

  newTurn(): void {
    this.cup = copyTriple(DICE_TOTALS);
    this.asideBrains = zeroTriple();
    this.asideShotguns = zeroTriple();
    this.shotguns = 0;
    this.brainsBanked = 0;
    this.hand = [];
    this.busted = false;
    this.rollsCommitted = 0;
    this.replenishedLastDraw = false;
  }

  get handComplete(): boolean {
    return this.hand.length === HAND_SIZE;
  }

  get facesRecorded(): boolean {
    return this.handComplete && this.hand.every((d) => d.face !== null);
  }

  /** Dice reachable for the next roll without returning brains. */
  private available(): number {
    return tripleTotal(this.cup) + this.hand.length;
  }

  /** Mirror of the cup-replenish rule: when the cup plus kept footprints
   *  cannot supply three dice, set-aside brain dice go back in the cup
   *  while the banked count stays. */
  maybeReplenish(): void {
    if (this.busted) return;
    if (this.available() < HAND_SIZE && tripleTotal(this.asideBrains) > 0) {
      for (const c of ["red", "yellow", "green"] as DieColor[]) {
        this.cup[c] += this.asideBrains[c];
        this.asideBrains[c] = 0;
      }
      this.replenishedLastDraw = true;
    }
  }

  /** Tap a cup color to draw that die into the hand. Returns an error
   *  message when the tap is illegal, null when the die moved. */
  drawDie(color: DieColor): string | null {
    if (this.busted) return "turn is over: three shotguns";
    if (this.handComplete) return "hand already holds three dice";
    this.maybeReplenish();
    if (this.cup[color] <= 0) return `no ${color} dice left in the cup`;
    this.cup[color] -= 1;
    this.hand.push({ color, face: null, kept: false });
    return null;
  }

  /** Put a freshly drawn (not kept) die back in the cup. */
  undoDraw(index: number): string | null {
    const die = this.hand[index];
    if (!die) return "no such die";
    if (die.kept) return "kept footprints stay in the hand";
    if (die.face !== null) return "face already recorded; clear it first";
    this.hand.splice(index, 1);
    this.cup[die.color] += 1;
    return null;
  }

  /** Record how one die landed. */
  setFace(index: number, face: Face | null): string | null {
    if (this.busted) return "turn is over: three shotguns";
    const die = this.hand[index];
    if (!die) return "no such die";
    if (!this.handComplete) return "draw to three dice before recording faces";
    die.face = face;
    return null;
  }

  /** Apply a fully recorded roll: brains and shotguns go aside, footprints
   *  stay in hand for the next roll. Returns an error message or null. */
  commitRoll(): string | null {
    if (this.busted) return "turn is over: three shotguns";
    if (!this.handComplete) return "hand must hold three dice";
    if (!this.facesRecorded) return "record a face for every die first";
    const next: PendingDie[] = [];
    let newShotguns = 0;
    let newBrains = 0;
    for (const die of this.hand) {
      if (die.face === "brain") {
        this.asideBrains[die.color] += 1;
        newBrains += 1;
      } else if (die.face === "shotgun") {
        this.asideShotguns[die.color] += 1;
        newShotguns += 1;
      } else {
        next.push({ color: die.color, face: null, kept: true });
      }
    }
    this.shotguns += newShotguns;
    this.rollsCommitted += 1;
    this.replenishedLastDraw = false;
    if (this.shotguns >= HAND_SIZE) {
      this.busted = true;
      // brains rolled alongside the third shotgun score nothing; the
      // footprint dice go back in the cup so the mirror stays conserved
      for (const die of next) this.cup[die.color] += 1;
      this.hand = [];
      return null;
    }
    this.brainsBanked += newBrains;
    this.hand = next;
    return null;
  }

  /** Request body for the advice service, with the mirror's exact asides. */
  adviceRequest(policy: string, context?: GameContextPayload): AdviceRequest {
    const footprints = zeroTriple();
    for (const die of this.hand) footprints[die.color] += 1;
    const req: AdviceRequest = {
      cup: copyTriple(this.cup),
      footprints,
      shotguns: this.shotguns,
      brains: this.brainsBanked,
      policy,
      asides: {
        brains: copyTriple(this.asideBrains),
        shotguns: copyTriple(this.asideShotguns),
      },
    };
    if (context) req.context = context;
    return req;
  }

  /** Query parameters for GET /api/state/validate. */
  validateParams(): Record<string, number> {
    const footprints = zeroTriple();
    for (const die of this.hand) footprints[die.color] += 1;
    return {
      r_cup: this.cup.red, y_cup: this.cup.yellow, g_cup: this.cup.green,
      r_fp: footprints.red, y_fp: footprints.yellow, g_fp: footprints.green,
      shotguns: this.shotguns, brains: this.brainsBanked,
      r_ab: this.asideBrains.red, y_ab: this.asideBrains.yellow,
      g_ab: this.asideBrains.green,
      r_as: this.asideShotguns.red, y_as: this.asideShotguns.yellow,
      g_as: this.asideShotguns.green,
    };
  }
}

export interface PlayerEntry {
  name: string;
  score: number;
}

export class SessionModel {
  players: PlayerEntry[];
  currentSeat = 0;
  turn = new TurnMirror();
  policy = "table";
  /** seats that reached the top tie and replay when a tiebreaker is needed */
  tiebreakSeats: number[] | null = null;
  turnsTakenThisRound = 0;

  constructor(names: string[] = ["you", "opponent"]) {
    if (names.length === 0) names = ["you"];
    this.players = names.map((name) => ({ name, score: 0 }));
  }

  get activeSeats(): number[] {
    return this.tiebreakSeats ?? this.players.map((_, i) => i);
  }

  setScore(seat: number, score: number): string | null {
    if (score < 0) return "scores cannot go negative";
    if (!this.players[seat]) return "no such player";
    this.players[seat].score = score;
    return null;
  }

  /** Opponent scores in round order, tagged with how many play after us. */
  contextPayload(): GameContextPayload {
    const seats = this.activeSeats;
    const pos = seats.indexOf(this.currentSeat);
    const others = seats.filter((s) => s !== this.currentSeat);
    return {
      own_score: this.players[this.currentSeat].score,
      opponent_scores: others.map((s) => this.players[s].score),
      position: pos >= 0 ? seats.length - pos - 1 : 0,
    };
  }

  /** Endgame per the racing rule: a prior seat this round at thirteen or a
   *  later seat at ten or more. */
  endgameActive(): boolean {
    const ctx = this.contextPayload();
    const before = ctx.opponent_scores.slice(
      0,
      ctx.opponent_scores.length - ctx.position,
    );
    const after = ctx.opponent_scores.slice(
      ctx.opponent_scores.length - ctx.position,
    );
    return (
      before.some((s) => s >= WINNING_SCORE) ||
      after.some((s) => s >= CHASE_SCORE)
    );
  }

  finalRound(): boolean {
    return this.players.some((p) => p.score >= WINNING_SCORE);
  }

  /** Top-score tie once the deciding round has been completed. */
  tiebreakPending(): boolean {
    if (!this.finalRound()) return false;
    if (this.turnsTakenThisRound !== 0) return false;
    const best = Math.max(...this.players.map((p) => p.score));
    return this.players.filter((p) => p.score === best).length > 1;
  }

  private advanceSeat(): void {
    const seats = this.activeSeats;
    const pos = seats.indexOf(this.currentSeat);
    const nextPos = (pos + 1) % seats.length;
    this.currentSeat = seats[nextPos];
    this.turnsTakenThisRound += 1;
    if (this.turnsTakenThisRound >= seats.length) {
      this.turnsTakenThisRound = 0;
      const best = Math.max(...this.players.map((p) => p.score));
      const leaders = this.players
        .map((p, i) => [p.score, i] as const)
        .filter(([s]) => s === best)
        .map(([, i]) => i);
      if (best >= WINNING_SCORE) {
        this.tiebreakSeats = leaders.length > 1 ? leaders : null;
        if (leaders.length > 1 && !leaders.includes(this.currentSeat)) {
          this.currentSeat = leaders[0];
        }
      }
    }
    this.turn.newTurn();
  }

  /** Bank the mirrored turn's brains into the current player's score. */
  bankAndNext(): void {
    this.players[this.currentSeat].score += this.turn.brainsBanked;
    this.advanceSeat();
  }

  /** Record a bust (no points) and move on. */
  bustAndNext(): void {
    this.advanceSeat();
  }
}
