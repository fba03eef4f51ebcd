// DOM wiring: state editor, advice panel, and score tracker.
//
// Rendering is plain innerHTML + event delegation; every displayed
// probability comes straight out of the last service response.

import { AdviceClient, ApiError } from "./api";
import { SessionModel, WINNING_SCORE } from "./session";
import type { AdviceResponse, DieColor, Face } from "./types";

const FACE_GLYPH: Record<Face, string> = {
  brain: "🧠",
  footprint: "👣",
  shotgun: "💥",
};
const COLOR_ORDER: DieColor[] = ["red", "yellow", "green"];

export class AdvisorApp {
  private advice: AdviceResponse | null = null;
  private stale = false;
  private message = "";

  constructor(
    private readonly session: SessionModel,
    private readonly client: AdviceClient,
    private readonly root: HTMLElement,
  ) {}

  start(): void {
    this.root.addEventListener("click", (ev) => this.onClick(ev));
    this.root.addEventListener("change", (ev) => this.onChange(ev));
    this.render();
    void this.refreshAdvice();
  }

  private async refreshAdvice(): Promise<void> {
    const turn = this.session.turn;
    if (turn.busted) {
      this.advice = null;
      this.render();
      return;
    }
    try {
      const req = turn.adviceRequest(
        this.session.policy,
        this.session.contextPayload(),
      );
      this.advice = await this.client.advise(req);
      this.stale = false;
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return;
      this.stale = true;
      this.message =
        err instanceof ApiError && err.violations.length
          ? err.violations.join("; ")
          : "advice service unreachable";
    }
    this.render();
  }

  private onClick(ev: Event): void {
    const el = ev.target as HTMLElement;
    const action = el.dataset.action;
    if (!action) return;
    const turn = this.session.turn;
    let error: string | null = null;
    let changed = true;
    switch (action) {
      case "draw":
        error = turn.drawDie(el.dataset.color as DieColor);
        break;
      case "undo-draw":
        error = turn.undoDraw(Number(el.dataset.index));
        break;
      case "face":
        error = turn.setFace(
          Number(el.dataset.index),
          (el.dataset.face as Face) || null,
        );
        break;
      case "commit":
        error = turn.commitRoll();
        break;
      case "bank":
        this.session.bankAndNext();
        break;
      case "bust":
        this.session.bustAndNext();
        break;
      case "new-turn":
        turn.newTurn();
        break;
      default:
        changed = false;
    }
    if (!changed) return;
    this.message = error ?? "";
    if (!error) void this.refreshAdvice();
    this.render();
  }

  private onChange(ev: Event): void {
    const el = ev.target as HTMLInputElement | HTMLSelectElement;
    if (el.dataset.action === "score") {
      const err = this.session.setScore(
        Number(el.dataset.seat),
        Number(el.value),
      );
      this.message = err ?? "";
      void this.refreshAdvice();
      this.render();
    } else if (el.dataset.action === "policy") {
      this.session.policy = el.value;
      void this.refreshAdvice();
    }
  }

  // --- rendering ------------------------------------------------------

  private render(): void {
    this.root.innerHTML = [
      this.renderScores(),
      this.renderEditor(),
      this.renderAdvice(),
      this.message ? `<p class="message">${this.message}</p>` : "",
    ].join("");
  }

  private renderScores(): string {
    const rows = this.session.players
      .map((p, seat) => {
        const marker = seat === this.session.currentSeat ? "▶" : "";
        return `<tr>
          <td>${marker}</td><td>${p.name}</td>
          <td><input type="number" min="0" value="${p.score}"
               data-action="score" data-seat="${seat}"></td>
        </tr>`;
      })
      .join("");
    const final = this.session.finalRound()
      ? `<span class="banner final">final round: someone reached ${WINNING_SCORE}</span>`
      : "";
    const tiebreak = this.session.tiebreakPending()
      ? `<span class="banner tiebreak">tiebreaker round</span>`
      : "";
    return `<section class="scores">
      <h2>Scores</h2>
      <table>${rows}</table>
      ${final} ${tiebreak}
    </section>`;
  }

  private renderEditor(): string {
    const turn = this.session.turn;
    const cupButtons = COLOR_ORDER.map(
      (c) =>
        `<button class="die ${c}" data-action="draw" data-color="${c}">
          ${c} × ${turn.cup[c]}
        </button>`,
    ).join("");
    const hand = turn.hand
      .map((die, i) => {
        const faces = (["brain", "footprint", "shotgun"] as Face[])
          .map(
            (f) =>
              `<button data-action="face" data-index="${i}" data-face="${f}"
                 class="${die.face === f ? "picked" : ""}">${FACE_GLYPH[f]}</button>`,
          )
          .join("");
        const undo = die.kept
          ? ""
          : `<button data-action="undo-draw" data-index="${i}">↩</button>`;
        return `<div class="pending ${die.color}">
            <span>${die.color}${die.kept ? " (kept)" : ""}</span>${faces}${undo}
          </div>`;
      })
      .join("");
    const status = turn.busted
      ? `<p class="bust">BUSTED — three shotguns, the turn scores nothing.</p>
         <button data-action="bust">next player</button>`
      : `<button data-action="commit" ${turn.facesRecorded ? "" : "disabled"}>
           record roll</button>
         <button data-action="bank" ${turn.rollsCommitted ? "" : "disabled"}>
           stop &amp; bank ${turn.brainsBanked}</button>`;
    return `<section class="editor">
      <h2>Turn</h2>
      <div class="cup">${cupButtons}</div>
      <div class="hand">${hand || "<em>draw three dice</em>"}</div>
      <p>shotguns: ${turn.shotguns} · brains banked: ${turn.brainsBanked}
         ${turn.replenishedLastDraw ? " · cup replenished" : ""}</p>
      ${status}
      <button data-action="new-turn">new turn</button>
    </section>`;
  }

  private renderAdvice(): string {
    const endgame = this.session.endgameActive()
      ? `<span class="banner endgame">endgame: race to ${WINNING_SCORE}</span>`
      : "";
    const policyPicker = `<label>policy
        <select data-action="policy">
          ${["table", "optimal", "simple", "onestep"]
            .map(
              (p) =>
                `<option value="${p}" ${p === this.session.policy ? "selected" : ""}>${p}</option>`,
            )
            .join("")}
        </select></label>`;
    if (!this.advice) {
      return `<section class="advice">
        <h2>Advice</h2>${policyPicker}${endgame}
        <p><em>no advice for a busted turn</em></p></section>`;
    }
    const a = this.advice;
    const verdict = a.verdict === "continue" ? "ROLL" : "STOP";
    const stamp = this.stale
      ? `<span class="banner stale">service unreachable — showing last advice</span>`
      : "";
    return `<section class="advice ${a.verdict}">
      <h2>Advice</h2>
      ${policyPicker} ${endgame} ${stamp}
      <p class="verdict">${verdict}</p>
      <dl>
        <dt>keep rolling while banked ≤</dt>
        <dd>${a.threshold === null ? "∞" : a.threshold}</dd>
        <dt>bust probability</dt>
        <dd>${(100 * a.bust_probability.decimal).toFixed(2)}%
            (${a.bust_probability.fraction ?? "—"})</dd>
        <dt>EV of continuing</dt>
        <dd>${a.expected_value_of_continuing.toFixed(4)}</dd>
        <dt>rationale</dt>
        <dd>${a.rationale}</dd>
      </dl>
    </section>`;
  }
}
