import { describe, expect, it } from "vitest";

import {
  acceptsMutation,
  initialViewState,
  reduce,
  replacementPreview,
} from "../src/state.js";
import { SessionState } from "../src/types.js";

const fakeState: SessionState = {
  sessionId: "abc",
  n: 3,
  version: 0,
  classification: "Central",
  pseudotriangulation: { n: 3, pairs: [] },
  pairs: [],
  flippable: [
    {
      pair: { rep: { kind: "central", p: 0, side: "L" }, partner: { kind: "central", p: 3, side: "L" } },
      name: "0^L",
      replacement: { rep: { kind: "central", p: 2, side: "R" }, partner: { kind: "central", p: 5, side: "R" } },
      replacementName: "2^R",
    },
  ],
  quiver: { nodes: [], arcs: [] },
  history: [],
};

describe("view state", () => {
  it("accepts mutations only with a session and not busy", () => {
    let v = initialViewState();
    expect(acceptsMutation(v)).toBe(false);
    v = reduce(v, { type: "server-state", state: fakeState });
    expect(acceptsMutation(v)).toBe(true);
    v = reduce(v, { type: "begin-mutation" });
    expect(acceptsMutation(v)).toBe(false);
    v = reduce(v, { type: "end-mutation" });
    expect(acceptsMutation(v)).toBe(true);
  });

  it("server state resets selection and hover", () => {
    let v = initialViewState();
    v = reduce(v, { type: "server-state", state: fakeState });
    v = reduce(v, { type: "select", pair: "0^L" });
    v = reduce(v, { type: "hover", pair: "0^L" });
    v = reduce(v, { type: "server-state", state: fakeState });
    expect(v.selected).toBeNull();
    expect(v.hovered).toBeNull();
  });

  it("collects and dismisses toasts", () => {
    let v = initialViewState();
    v = reduce(v, { type: "toast", message: "one" });
    v = reduce(v, { type: "toast", message: "two" });
    expect(v.toasts).toEqual(["one", "two"]);
    v = reduce(v, { type: "dismiss-toasts" });
    expect(v.toasts).toEqual([]);
  });

  it("exposes the server's replacement preview", () => {
    let v = initialViewState();
    v = reduce(v, { type: "server-state", state: fakeState });
    expect(replacementPreview(v, "0^L")).toBe("2^R");
    expect(replacementPreview(v, "[0,2]")).toBeNull();
  });
});
