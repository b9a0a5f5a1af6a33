"""Face structure of a pseudotriangulation via a combinatorial rotation system.

The planar map has the polygon vertices plus one degree-3 "slot" vertex per
tangency point of a central chord.  Edges are the 2n boundary edges, the
chords of the pseudotriangulation, and the disk arcs between angularly
consecutive slots.  No numeric geometry is used: rotations at polygon
vertices follow the fixed fan order, slots are sorted by nominal touch
angle with the tie rule that at coincident nominal angles the +(90-delta)
slot comes immediately before the antipodal -(90-delta) slot, and the
cyclic order at a slot is (chord, arc-ccw, arc-cw).

Face traversal yields boundaries in clockwise order, which is exactly what
the quiver construction consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chords import Chord, PLUS_SIDE
from .pseudo import Pseudotriangulation

# boundary items are ("chord", Chord), ("edge", p) for the edge p -> p+1,
# or ("arc", k) for the arc from slot k to slot k+1 (ccw numbering)


@dataclass(frozen=True)
class Pseudotriangle:
    """One face: clockwise boundary items, corners, and sides between them."""

    items: tuple
    corners: tuple  # ("v", p) or ("cusp", Chord)
    sides: tuple  # sides[i] = items from corners[i] to corners[i+1], cw
    kind: str  # DegenerateCentral | Central | Internal | Ordinary

    def chords(self) -> list[Chord]:
        return [x[1] for x in self.items if x[0] == "chord"]

    def boundary_edges(self) -> list[int]:
        return [x[1] for x in self.items if x[0] == "edge"]

    def arcs(self) -> list[int]:
        return [x[1] for x in self.items if x[0] == "arc"]

    @property
    def is_degenerate_central(self) -> bool:
        return self.kind == "DegenerateCentral"

    @property
    def touches_disk(self) -> bool:
        return bool(self.arcs())

    @property
    def has_disk_corner(self) -> bool:
        return any(c[0] == "cusp" for c in self.corners)

    @property
    def is_internal(self) -> bool:
        return not self.boundary_edges()

    def polygon_corners(self) -> list[int]:
        return [c[1] for c in self.corners if c[0] == "v"]


def _slot_key(chord: Chord, n: int) -> tuple[int, int]:
    # ties pair the +(90-delta) slot of p with the -(90-delta) slot of its
    # antipode; the + slot sits at the smaller true angle
    return (chord.touch_index(n), 0 if chord.side == PLUS_SIDE else 1)


class _Map:
    """Half-edge ("dart") structure over a crossing-free chord set."""

    def __init__(self, n: int, chords: list[Chord]):
        m = 2 * n
        self.n = n
        centrals = sorted(
            (c for c in chords if c.is_central()), key=lambda c: _slot_key(c, n)
        )
        self.slots = centrals  # slot k belongs to centrals[k]
        self.slot_of = {c: k for k, c in enumerate(centrals)}
        K = len(centrals)

        # vertices: ("v", p) and ("slot", k)
        # edges: ("edge", p), ("chord", chord), ("arc", k)
        def ends(edge):
            kind = edge[0]
            if kind == "edge":
                p = edge[1]
                return (("v", p), ("v", (p + 1) % m))
            if kind == "arc":
                k = edge[1]
                return (("slot", k), ("slot", (k + 1) % K))
            c = edge[1]
            if c.is_central():
                return (("v", c.p), ("slot", self.slot_of[c]))
            return (("v", c.p), ("v", c.q))

        edges = [("edge", p) for p in range(m)]
        edges += [("chord", c) for c in chords]
        edges += [("arc", k) for k in range(K)]
        self.edges = edges

        # darts: (edge, flag); flag 0 runs ends[0] -> ends[1]
        self.darts = [(e, 0) for e in edges] + [(e, 1) for e in edges]

        def tail(d):
            e, f = d
            return ends(e)[f]

        def head(d):
            e, f = d
            return ends(e)[1 - f]

        self.tail, self.head = tail, head

        # rotation (ccw) at each vertex
        rot: dict[tuple, list] = {}
        by_tail: dict[tuple, dict] = {}
        for d in self.darts:
            by_tail.setdefault(tail(d), {})[d[0]] = d

        chord_lookup = {}
        for c in chords:
            if c.is_central():
                chord_lookup.setdefault(c.p, {})[("c", c.side)] = c
            else:
                chord_lookup.setdefault(c.p, {})[("s", c.q)] = c
                chord_lookup.setdefault(c.q, {})[("s", c.p)] = c

        for p in range(m):
            order = []
            avail = by_tail.get(("v", p), {})
            lk = chord_lookup.get(p, {})

            def add_straight(q):
                c = lk.get(("s", q % m))
                if c is not None:
                    order.append(avail[("chord", c)])

            order.append(avail[("edge", p)])  # p -> p+1
            for d in range(2, n):
                add_straight(p + d)
            for side in (PLUS_SIDE, "L" if PLUS_SIDE == "R" else "R"):
                c = lk.get(("c", side))
                if c is not None:
                    order.append(avail[("chord", c)])
            for d in range(n + 1, m - 1):
                add_straight(p + d)
            order.append(avail[("edge", (p - 1) % m)])  # p -> p-1
            rot[("v", p)] = order

        for k, c in enumerate(centrals):
            avail = by_tail[("slot", k)]
            chord_dart = avail[("chord", c)]
            ccw_dart = avail[("arc", k)]  # arc k starts at slot k
            cw_dart = avail[("arc", (k - 1) % K)]
            rot[("slot", k)] = [chord_dart, ccw_dart, cw_dart]

        self.rot = rot
        self.succ = {}
        for v, order in rot.items():
            for i, d in enumerate(order):
                self.succ[d] = order[(i + 1) % len(order)]

    def twin(self, d):
        return (d[0], 1 - d[1])

    def next_dart(self, d):
        return self.succ[self.twin(d)]

    def orbits(self):
        seen = set()
        out = []
        for d in self.darts:
            if d in seen:
                continue
            orbit = []
            cur = d
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                cur = self.next_dart(cur)
            out.append(orbit)
        return out


def _junction_is_cusp(chord: Chord, arc_k: int, slot_k: int, K: int) -> bool:
    """Cusp test for a (chord, arc) junction at the chord's slot."""
    ccw_side = arc_k == slot_k
    if chord.side == PLUS_SIDE:
        return not ccw_side
    return ccw_side


def trace_faces(n: int, chords: list[Chord]) -> list[Pseudotriangle]:
    """Interior faces of any crossing-free chord set (no count assertion)."""
    m = _Map(n, chords)
    K = len(m.slots)
    out = []
    for orbit in m.orbits():
        kinds = {d[0][0] for d in orbit}
        if kinds == {"arc"}:
            continue  # the disk interior
        if kinds == {"edge"}:
            continue  # the outer face
        items = tuple(d[0] for d in orbit)
        # corner detection at each junction d_i -> d_{i+1}
        corners = []
        L = len(orbit)
        for i, d in enumerate(orbit):
            v = m.head(d)
            nd = orbit[(i + 1) % L]
            if v[0] == "v":
                corners.append((i, ("v", v[1])))
                continue
            k = v[1]
            e1, e2 = d[0], nd[0]
            arc_e = e1 if e1[0] == "arc" else e2
            chord = m.slots[k]
            if _junction_is_cusp(chord, arc_e[1], k, K):
                corners.append((i, ("cusp", chord)))
        assert corners, "face with no corners"
        # sides run between consecutive corners, in trace (= clockwise) order
        sides = []
        cpos = [i for i, _ in corners]
        for a in range(len(cpos)):
            start = (cpos[a] + 1) % L
            end = cpos[(a + 1) % len(cpos)]
            side = []
            i = start
            while True:
                side.append(items[i])
                if i == end:
                    break
                i = (i + 1) % L
            sides.append(tuple(side))
        corner_marks = tuple(c for _, c in corners)
        n_edges = sum(1 for it in items if it[0] == "edge")
        chord_items = [it[1] for it in items if it[0] == "chord"]
        arc_items = [it for it in items if it[0] == "arc"]
        if (
            len(chord_items) == 2
            and not n_edges
            and len(arc_items) == 1
            and all(c.is_central() for c in chord_items)
            and chord_items[0].p == chord_items[1].p
        ):
            kind = "DegenerateCentral"
        elif any(c[0] == "cusp" for c in corner_marks):
            kind = "Central"
        elif n_edges == 0:
            kind = "Internal"
        else:
            kind = "Ordinary"
        out.append(Pseudotriangle(items, corner_marks, tuple(sides), kind))
    return out


def faces(pt: Pseudotriangulation) -> list[Pseudotriangle]:
    """The 2n pseudotriangles of a pseudotriangulation."""
    out = trace_faces(pt.n, pt.chords())
    assert len(out) == 2 * pt.n, f"expected {2 * pt.n} faces, got {len(out)}"
    return out


def slot_order(pt: Pseudotriangulation) -> list[Chord]:
    """Central chords of pt in ccw tangency order (slot numbering)."""
    n = pt.n
    return sorted(
        (c for c in pt.chords() if c.is_central()), key=lambda c: _slot_key(c, n)
    )
