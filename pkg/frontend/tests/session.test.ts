import { beforeEach, describe, expect, it } from "vitest";

import { SessionModel, TurnMirror } from "../src/session";
import { tripleTotal } from "../src/types";
import type { DieColor, Face } from "../src/types";

function totalDice(turn: TurnMirror): number {
  return (
    tripleTotal(turn.cup) +
    tripleTotal(turn.asideBrains) +
    tripleTotal(turn.asideShotguns) +
    turn.hand.length
  );
}

function draw(turn: TurnMirror, ...colors: DieColor[]) {
  for (const c of colors) expect(turn.drawDie(c)).toBeNull();
}

function record(turn: TurnMirror, ...faces: Face[]) {
  faces.forEach((face, i) => expect(turn.setFace(i, face)).toBeNull());
  expect(turn.commitRoll()).toBeNull();
}

describe("TurnMirror conservation", () => {
  let turn: TurnMirror;
  beforeEach(() => {
    turn = new TurnMirror();
  });

  it("starts with the full thirteen-die cup", () => {
    expect(turn.cup).toEqual({ red: 3, yellow: 4, green: 6 });
    expect(totalDice(turn)).toBe(13);
  });

  it("moves dice cup -> hand -> asides without losing any", () => {
    draw(turn, "green", "green", "red");
    expect(turn.cup.green).toBe(4);
    expect(totalDice(turn)).toBe(13);
    record(turn, "brain", "shotgun", "footprint");
    expect(turn.asideBrains.green).toBe(1);
    expect(turn.asideShotguns.green).toBe(1);
    expect(turn.shotguns).toBe(1);
    expect(turn.brainsBanked).toBe(1);
    expect(turn.hand).toEqual([{ color: "red", face: null, kept: true }]);
    expect(totalDice(turn)).toBe(13);
  });

  it("rejects drawing a color the cup has run out of", () => {
    draw(turn, "red", "red", "red");
    record(turn, "brain", "brain", "brain");
    // all three red dice sit aside as brains; none remain in the cup
    expect(turn.drawDie("red")).toMatch(/no red dice/);
  });

  it("rejects a fourth die in the hand", () => {
    draw(turn, "green", "green", "green");
    expect(turn.drawDie("yellow")).toMatch(/three dice/);
  });

  it("cannot construct a fourth footprint", () => {
    draw(turn, "green", "green", "green");
    record(turn, "footprint", "footprint", "footprint");
    expect(turn.hand).toHaveLength(3);
    // the kept footprints already fill the hand: no draw, no extra record
    expect(turn.drawDie("green")).toMatch(/three dice/);
    expect(turn.setFace(3, "footprint")).toMatch(/no such die/);
    expect(totalDice(turn)).toBe(13);
  });

  it("busts at three total shotguns and scores nothing", () => {
    draw(turn, "red", "red", "red");
    record(turn, "shotgun", "shotgun", "brain");
    expect(turn.busted).toBe(false);
    expect(turn.brainsBanked).toBe(1);
    draw(turn, "yellow", "yellow", "yellow");
    record(turn, "shotgun", "brain", "brain");
    expect(turn.busted).toBe(true);
    // the brains rolled alongside the third shotgun never bank
    expect(turn.brainsBanked).toBe(1);
    expect(turn.drawDie("green")).toMatch(/turn is over/);
  });

  it("kept footprints cannot be undrawn", () => {
    draw(turn, "yellow", "yellow", "green");
    record(turn, "footprint", "brain", "brain");
    expect(turn.undoDraw(0)).toMatch(/kept/);
    const err = turn.undoDraw(99);
    expect(err).toMatch(/no such die/);
  });

  it("fresh draws can be undone before a face is recorded", () => {
    draw(turn, "green");
    expect(turn.undoDraw(0)).toBeNull();
    expect(turn.cup.green).toBe(6);
    expect(turn.hand).toHaveLength(0);
  });

  it("replenishes aside brains when the cup runs dry", () => {
    // eat through the cup with all-brain rolls
    const order: DieColor[][] = [
      ["green", "green", "green"],
      ["green", "green", "green"],
      ["yellow", "yellow", "yellow"],
      ["yellow", "red", "red"],
    ];
    for (const colors of order) {
      draw(turn, ...colors);
      record(turn, "brain", "brain", "brain");
    }
    // 12 brains aside, 1 red die in the cup: next draw must replenish
    expect(tripleTotal(turn.cup)).toBe(1);
    expect(turn.brainsBanked).toBe(12);
    expect(turn.drawDie("green")).toBeNull();
    expect(turn.replenishedLastDraw).toBe(true);
    expect(tripleTotal(turn.asideBrains)).toBe(0);
    expect(turn.brainsBanked).toBe(12); // the score survives the replenish
    expect(totalDice(turn)).toBe(13);
  });

  it("builds advice requests mirroring the exact asides", () => {
    draw(turn, "green", "yellow", "red");
    record(turn, "brain", "shotgun", "footprint");
    const req = turn.adviceRequest("table");
    expect(req.cup).toEqual({ red: 2, yellow: 3, green: 5 });
    expect(req.footprints).toEqual({ red: 1, yellow: 0, green: 0 });
    expect(req.asides).toEqual({
      brains: { red: 0, yellow: 0, green: 1 },
      shotguns: { red: 0, yellow: 1, green: 0 },
    });
    expect(req.shotguns).toBe(1);
    expect(req.brains).toBe(1);
  });

  it("new turn resets to the full cup", () => {
    draw(turn, "green", "green", "red");
    record(turn, "brain", "brain", "brain");
    turn.newTurn();
    expect(turn.cup).toEqual({ red: 3, yellow: 4, green: 6 });
    expect(turn.brainsBanked).toBe(0);
    expect(totalDice(turn)).toBe(13);
  });
});

describe("SessionModel scoring", () => {
  it("starts everyone at zero", () => {
    const s = new SessionModel(["a", "b", "c"]);
    expect(s.players.map((p) => p.score)).toEqual([0, 0, 0]);
    expect(s.finalRound()).toBe(false);
  });

  it("banking adds the turn brains and advances the seat", () => {
    const s = new SessionModel(["a", "b"]);
    draw(s.turn, "green", "green", "green");
    record(s.turn, "brain", "brain", "footprint");
    s.bankAndNext();
    expect(s.players[0].score).toBe(2);
    expect(s.currentSeat).toBe(1);
    expect(s.turn.brainsBanked).toBe(0);
  });

  it("score edits cannot go negative", () => {
    const s = new SessionModel(["a", "b"]);
    expect(s.setScore(1, -2)).toMatch(/negative/);
    expect(s.setScore(1, 7)).toBeNull();
    expect(s.players[1].score).toBe(7);
  });

  it("signals the final round at thirteen", () => {
    const s = new SessionModel(["a", "b"]);
    s.setScore(0, 13);
    expect(s.finalRound()).toBe(true);
  });

  it("flags a tiebreaker when the deciding round ends tied", () => {
    const s = new SessionModel(["a", "b"]);
    s.setScore(0, 13);
    s.setScore(1, 13);
    s.bustAndNext(); // seat a finishes
    s.bustAndNext(); // seat b finishes the round
    expect(s.tiebreakPending()).toBe(true);
    expect(s.activeSeats).toEqual([0, 1]);
  });

  it("builds the endgame context from seat order", () => {
    const s = new SessionModel(["a", "b", "c"]);
    s.setScore(1, 10);
    s.setScore(2, 4);
    // seat a to move: b and c play after -> position 2, b at 10 triggers
    expect(s.contextPayload()).toEqual({
      own_score: 0,
      opponent_scores: [10, 4],
      position: 2,
    });
    expect(s.endgameActive()).toBe(true);
    // once b has played (seat c to move after b), a 10 behind us is quiet
    s.currentSeat = 2;
    expect(s.contextPayload().position).toBe(0);
    expect(s.endgameActive()).toBe(false);
  });

  it("prior player at thirteen triggers the race", () => {
    const s = new SessionModel(["a", "b"]);
    s.setScore(0, 13);
    s.currentSeat = 1;
    expect(s.endgameActive()).toBe(true);
  });
});
