// Wire types for the explorer API (mirrors the server's JSON schemas).

export interface ChordJson {
  kind: "straight" | "central";
  p: number;
  q?: number;
  side?: "L" | "R";
}

export interface PairJson {
  rep: ChordJson;
  partner: ChordJson;
}

export interface PairEntry {
  pair: PairJson;
  name: string;
  variable: string; // server text form, displayed verbatim
  poly: unknown;
}

export interface FlippableEntry {
  pair: PairJson;
  name: string;
  replacement: PairJson;
  replacementName: string;
}

export interface QuiverJson {
  nodes: string[];
  arcs: [string, string, number][];
}

export interface HistoryEntry {
  removed: PairJson;
  added: PairJson;
}

export interface SessionState {
  sessionId: string;
  n: number;
  version: number;
  classification: "Central" | "TypeLeft" | "TypeRight";
  pseudotriangulation: { n: number; pairs: PairJson[] };
  pairs: PairEntry[];
  flippable: FlippableEntry[];
  quiver: QuiverJson;
  history: HistoryEntry[];
}

export function chordKey(c: ChordJson): string {
  return c.kind === "central" ? `${c.p}^${c.side}` : `[${c.p},${c.q}]`;
}

export function pairKey(p: PairJson): string {
  return chordKey(p.rep);
}
