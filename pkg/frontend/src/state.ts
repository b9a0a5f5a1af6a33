// Client view state.  One mutation in flight at a time: clicks arriving
// while busy are dropped (the caller shows a hint), conflicts trigger a
// refetch, and the rendered chords always mirror the last server state.

import { SessionState } from "./types.js";

export interface ViewState {
  session: SessionState | null;
  selected: string | null; // pair name
  hovered: string | null;
  busy: boolean;
  toasts: string[];
}

export function initialViewState(): ViewState {
  return { session: null, selected: null, hovered: null, busy: false, toasts: [] };
}

export type Action =
  | { type: "server-state"; state: SessionState }
  | { type: "begin-mutation" }
  | { type: "end-mutation" }
  | { type: "select"; pair: string | null }
  | { type: "hover"; pair: string | null }
  | { type: "toast"; message: string }
  | { type: "dismiss-toasts" };

export function reduce(v: ViewState, a: Action): ViewState {
  switch (a.type) {
    case "server-state":
      return { ...v, session: a.state, selected: null, hovered: null };
    case "begin-mutation":
      if (v.busy) return v; // caller must check acceptsMutation first
      return { ...v, busy: true };
    case "end-mutation":
      return { ...v, busy: false };
    case "select":
      return { ...v, selected: a.pair };
    case "hover":
      return { ...v, hovered: a.pair };
    case "toast":
      return { ...v, toasts: [...v.toasts, a.message] };
    case "dismiss-toasts":
      return { ...v, toasts: [] };
  }
}

export function acceptsMutation(v: ViewState): boolean {
  return !v.busy && v.session !== null;
}

/** The replacement preview for a hovered pair, if the server offered one. */
export function replacementPreview(v: ViewState, pairName: string): string | null {
  const f = v.session?.flippable.find((e) => e.name === pairName);
  return f ? f.replacementName : null;
}
