// JSON shapes of the zombieodds advice service.

export type DieColor = "red" | "yellow" | "green";
export type Face = "brain" | "footprint" | "shotgun";

export interface ColorTriple {
  red: number;
  yellow: number;
  green: number;
}

export interface GameContextPayload {
  own_score: number;
  opponent_scores: number[];
  position: number;
}

export interface AdviceRequest {
  cup: ColorTriple;
  footprints: ColorTriple;
  shotguns: number;
  brains: number;
  policy: string;
  context?: GameContextPayload;
  asides?: {
    brains: ColorTriple;
    shotguns: ColorTriple;
  };
}

export interface AdviceResponse {
  verdict: "continue" | "stop";
  threshold: number | null;
  bust_probability: { fraction: string | null; decimal: number };
  expected_value_of_continuing: number;
  rationale: string;
  state: {
    cup: ColorTriple;
    footprints: ColorTriple;
    aside_brains: ColorTriple;
    aside_shotguns: ColorTriple;
    shotguns: number;
    brains_banked: number;
    asides_assumed: boolean;
  };
}

export interface ValidateResponse {
  valid: boolean;
  violations: string[];
}

export interface HealthResponse {
  status: string;
  version: string;
  table_rows: number;
  table_checksum: string;
}

export const COLORS: DieColor[] = ["red", "yellow", "green"];

export const zeroTriple = (): ColorTriple => ({ red: 0, yellow: 0, green: 0 });

export const tripleTotal = (t: ColorTriple): number => t.red + t.yellow + t.green;

export const copyTriple = (t: ColorTriple): ColorTriple => ({ ...t });
