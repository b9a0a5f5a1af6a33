// Layout math for the 2n-gon drawing.  Presentation only: the polygon sits
// on a unit circle scaled to the viewport, the disk radius is fixed, and
// central chords are drawn as a tangent segment plus a short hug along the
// disk, bending with their chirality.  All combinatorics comes from the
// server.

import { ChordJson, PairJson } from "./types.js";

export interface Pt {
  x: number;
  y: number;
}

export const VIEW = 420;
export const CENTER = VIEW / 2;
export const RADIUS = 180;
export const DISK_RADIUS = 22;
const HUG_DEGREES = 28;

export function vertexAngle(p: number, n: number): number {
  return (Math.PI * p) / n;
}

export function vertexPoint(p: number, n: number): Pt {
  const a = vertexAngle(p, n);
  // SVG y grows downward; negate to keep the labeling counterclockwise
  return {
    x: CENTER + RADIUS * Math.cos(a),
    y: CENTER - RADIUS * Math.sin(a),
  };
}

export function touchAngle(c: ChordJson, n: number): number {
  const delta = Math.asin(DISK_RADIUS / RADIUS);
  const sign = c.side === "R" ? 1 : -1;
  return vertexAngle(c.p, n) + sign * (Math.PI / 2 - delta);
}

export function diskPoint(angle: number): Pt {
  return {
    x: CENTER + DISK_RADIUS * Math.cos(angle),
    y: CENTER - DISK_RADIUS * Math.sin(angle),
  };
}

function fmt(v: number): string {
  return v.toFixed(2);
}

/** SVG path for one chord: a segment, or tangent-segment + disk hug. */
export function chordPath(c: ChordJson, n: number): string {
  const a = vertexPoint(c.p, n);
  if (c.kind === "straight") {
    const b = vertexPoint(c.q!, n);
    return `M ${fmt(a.x)} ${fmt(a.y)} L ${fmt(b.x)} ${fmt(b.y)}`;
  }
  const t0 = touchAngle(c, n);
  const hug = (HUG_DEGREES * Math.PI) / 180;
  const t1 = c.side === "R" ? t0 + hug : t0 - hug;
  const p0 = diskPoint(t0);
  const p1 = diskPoint(t1);
  const sweep = c.side === "R" ? 1 : 0; // y is flipped in SVG coordinates
  return (
    `M ${fmt(a.x)} ${fmt(a.y)} L ${fmt(p0.x)} ${fmt(p0.y)} ` +
    `A ${fmt(DISK_RADIUS)} ${fmt(DISK_RADIUS)} 0 0 ${sweep} ${fmt(p1.x)} ${fmt(p1.y)}`
  );
}

export function pairPaths(pair: PairJson, n: number): [string, string] {
  return [chordPath(pair.rep, n), chordPath(pair.partner, n)];
}

/** Midpoint of the chord, used to anchor quiver nodes and click handles. */
export function chordMidpoint(c: ChordJson, n: number): Pt {
  const a = vertexPoint(c.p, n);
  const b = c.kind === "straight" ? vertexPoint(c.q!, n) : diskPoint(touchAngle(c, n));
  return { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 };
}

export function antipode(p: Pt): Pt {
  return { x: 2 * CENTER - p.x, y: 2 * CENTER - p.y };
}

export function polygonPoints(n: number): Pt[] {
  return Array.from({ length: 2 * n }, (_, p) => vertexPoint(p, n));
}
