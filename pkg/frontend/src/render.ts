// DOM rendering: the 2n-gon with its chords, the variable panel, the
// quiver sketch, history and toasts.  Pure functions of the view state;
// interaction is attached by the app via data attributes.

import {
  CENTER,
  DISK_RADIUS,
  VIEW,
  chordMidpoint,
  chordPath,
  polygonPoints,
  vertexPoint,
} from "./geometry.js";
import { replacementPreview, ViewState } from "./state.js";
import { pairKey, QuiverJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, String(v));
  }
  return node;
}

export function renderDiagram(v: ViewState, root: SVGSVGElement): void {
  root.setAttribute("viewBox", `0 0 ${VIEW} ${VIEW}`);
  root.replaceChildren();
  const s = v.session;
  if (!s) return;
  const n = s.n;

  const boundary = el("polygon", {
    points: polygonPoints(n)
      .map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`)
      .join(" "),
    class: "boundary",
  });
  root.appendChild(boundary);

  for (let p = 0; p < 2 * n; p++) {
    const pt = vertexPoint(p, n);
    root.appendChild(el("circle", { cx: pt.x, cy: pt.y, r: 3, class: "vertex" }));
    const label = el("text", {
      x: pt.x + (pt.x - CENTER) * 0.09,
      y: pt.y + (pt.y - CENTER) * 0.09 + 4,
      class: "vertex-label",
      "text-anchor": "middle",
    });
    label.textContent = String(p);
    root.appendChild(label);
  }

  root.appendChild(
    el("circle", { cx: CENTER, cy: CENTER, r: DISK_RADIUS, class: "disk" }),
  );

  const preview = v.hovered ? replacementPreview(v, v.hovered) : null;
  for (const entry of s.pairs) {
    const name = entry.name;
    const group = el("g", { class: "pair" });
    group.dataset.pair = name;
    if (name === v.selected) group.classList.add("selected");
    if (name === v.hovered) group.classList.add("hovered");
    for (const chord of [entry.pair.rep, entry.pair.partner]) {
      group.appendChild(
        el("path", { d: chordPath(chord, n), class: "chord" }),
      );
    }
    // invisible fat handles make the pair clickable along both chords
    for (const chord of [entry.pair.rep, entry.pair.partner]) {
      group.appendChild(
        el("path", { d: chordPath(chord, n), class: "chord-handle" }),
      );
    }
    const mid = chordMidpoint(entry.pair.rep, n);
    const tag = el("text", {
      x: mid.x,
      y: mid.y - 6,
      class: "pair-label",
      "text-anchor": "middle",
    });
    tag.textContent = name;
    group.appendChild(tag);
    root.appendChild(group);
  }

  if (preview) {
    const note = el("text", {
      x: 8,
      y: VIEW - 10,
      class: "preview-note",
    });
    note.textContent = `flip ${v.hovered} -> ${preview}`;
    root.appendChild(note);
  }
}

export function renderQuiver(v: ViewState, root: SVGSVGElement): void {
  root.setAttribute("viewBox", `0 0 ${VIEW} ${VIEW}`);
  root.replaceChildren();
  const s = v.session;
  if (!s) return;
  const n = s.n;
  const mid: Record<string, { x: number; y: number }> = {};
  for (const entry of s.pairs) {
    mid[entry.name] = chordMidpoint(entry.pair.rep, n);
  }
  const defs = el("defs");
  const marker = el("marker", {
    id: "arrowhead",
    markerWidth: 8,
    markerHeight: 8,
    refX: 7,
    refY: 3,
    orient: "auto",
  });
  marker.appendChild(el("path", { d: "M0,0 L7,3 L0,6 Z", class: "arrowhead" }));
  defs.appendChild(marker);
  root.appendChild(defs);
  const q: QuiverJson = s.quiver;
  for (const [a, b] of q.arcs) {
    const pa = mid[a];
    const pb = mid[b];
    if (!pa || !pb) continue;
    root.appendChild(
      el("line", {
        x1: pa.x,
        y1: pa.y,
        x2: pb.x,
        y2: pb.y,
        class: "quiver-arc",
        "marker-end": "url(#arrowhead)",
      }),
    );
  }
  for (const name of q.nodes) {
    const p = mid[name];
    if (!p) continue;
    root.appendChild(el("circle", { cx: p.x, cy: p.y, r: 5, class: "quiver-node" }));
    const t = el("text", {
      x: p.x,
      y: p.y - 8,
      class: "quiver-label",
      "text-anchor": "middle",
    });
    t.textContent = name;
    root.appendChild(t);
  }
}

export function renderPanels(v: ViewState, doc: Document): void {
  const s = v.session;
  const vars = doc.getElementById("variables")!;
  vars.replaceChildren();
  if (s) {
    for (const entry of s.pairs) {
      const row = doc.createElement("div");
      row.className = "var-row";
      row.dataset.pair = entry.name;
      const name = doc.createElement("span");
      name.className = "var-name";
      name.textContent = entry.name;
      const value = doc.createElement("code");
      value.className = "var-value";
      value.textContent = entry.variable; // server text, verbatim
      row.append(name, value);
      vars.appendChild(row);
    }
  }
  const meta = doc.getElementById("meta")!;
  meta.textContent = s
    ? `n = ${s.n}, ${s.classification}, version ${s.version}`
    : "no session";
  const history = doc.getElementById("history")!;
  history.replaceChildren();
  if (s) {
    s.history.forEach((h, i) => {
      const item = doc.createElement("li");
      item.textContent = `${i + 1}. ${pairKey(h.removed)} -> ${pairKey(h.added)}`;
      history.appendChild(item);
    });
  }
  const toasts = doc.getElementById("toasts")!;
  toasts.replaceChildren();
  for (const message of v.toasts) {
    const t = doc.createElement("div");
    t.className = "toast";
    t.textContent = message;
    toasts.appendChild(t);
  }
  const busy = doc.getElementById("busy")!;
  busy.textContent = v.busy ? "working..." : "";
}
