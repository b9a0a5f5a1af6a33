"""Cluster variables via weighted perfect matchings of opened pseudotriangulations.

Fix a seed pseudotriangulation T with its chords labeled by the seed
variables (boundary edges weighted 1).  Contracting the central disk to a
point d turns T into a triangulation of the 2n-gon with the interior vertex
d: tangent chords become spokes, and every pseudotriangle becomes a
triangle.  An *opening* makes this outer-planar:

* for a non-central T, remove a central pseudotriangle sigma whose third
  side is a boundary edge; d moves to the outer face between the two
  tangent spokes of sigma, giving a triangulated (2n+1)-gon;

* for a central T (both tangent pairs at one vertex class p), cut along one
  of the two central chords at p.  The cut chord appears twice on the
  boundary, the two deformed long diagonals [p, p+n] appear as internal
  edges weighted by the product of the two central-pair variables, and the
  remaining same-side tangent is the single spoke at d, giving a
  triangulated (2n+2)-gon.

The cluster variable of a pair follows from the sum of weighted perfect
matchings of the vertex-triangle incidence graph after deleting two black
vertices determined by the chord, divided by the product of the internal
diagonal weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .chords import Chord, CsPair, table, crosses, PLUS_SIDE
from .laurent import LaurentPoly
from .pseudo import Pseudotriangulation, classify
from .faces import faces, Pseudotriangle


class NoValidOpening(Exception):
    """No opening of the seed has a central triangle avoided by the chord."""


class InvalidOpening(Exception):
    """The chord crosses the opening's central pseudotriangle."""


# vertex labels: ("v", q), ("va", p) / ("vb", p) for cut copies, ("d",)
D = ("d",)


def _end_key(n: int, v: int, end) -> int:
    """Position of a chord end in the ccw fan at vertex v (scaled integer).

    ``end`` is ("s", q) for a segment toward q or ("c", side) for a
    central chord; boundary edges are segments toward v +- 1.
    """
    if end[0] == "s":
        d = (end[1] - v) % (2 * n)
        assert 0 < d < 2 * n
        return 4 * d
    return 4 * n - 1 if end[1] == PLUS_SIDE else 4 * n + 1


def _slot_pos(n: int, c: Chord) -> int:
    """Total cyclic order of tangency slots (resolving nominal ties)."""
    return (2 * c.touch_index(n) + (0 if c.side == PLUS_SIDE else 1)) % (8 * n)


def _cyclic_between(a: int, x: int, b: int, mod: int) -> bool:
    """x strictly inside the ccw interval (a, b) on Z/mod."""
    return 0 < (x - a) % mod < (b - a) % mod


@dataclass
class Opening:
    """A triangulated convex polygon obtained by opening T at sigma."""

    pt: Pseudotriangulation
    side: str  # type Left/Right of the opening: "L" or "R"
    kind: str  # "generic" or "central"
    boundary: list  # vertex labels in cyclic order
    triangles: list  # tuples of 3 vertex labels
    weights: dict  # frozenset({a, b}) -> LaurentPoly
    chord_image: dict  # Chord -> frozenset({a, b})
    sigma_chords: tuple  # boundary chords of sigma (crossing tests)
    sigma_wedges: tuple  # (vertex, key_lo, key_hi) corner wedges of sigma
    sigma_arc: tuple | None  # (slot_pos_lo, slot_pos_hi) of sigma's arc
    cut_vertex: int | None = None  # p for central openings
    label: str = ""

    @property
    def n(self) -> int:
        return self.pt.n

    def internal_edges(self) -> list[frozenset]:
        bd = set()
        k = len(self.boundary)
        for i in range(k):
            bd.add(frozenset((self.boundary[i], self.boundary[(i + 1) % k])))
        return [e for e in self.weights if e not in bd]

    def diagonal_product(self) -> LaurentPoly:
        nv = next(iter(self.weights.values())).nvars
        prod = LaurentPoly.one(nv)
        for e in self.internal_edges():
            prod = prod * self.weights[e]
        assert prod.is_monomial(), "internal diagonal weights must be monomials"
        return prod

    # ------------------------------------------------------------------

    def vertex_of(self, q: int, toward) -> tuple:
        """Resolve polygon vertex q to a label; ``toward`` disambiguates the
        cut copies (an end descriptor as in _end_key, or None)."""
        if self.cut_vertex is None or q != self.cut_vertex:
            return ("v", q)
        if toward is None:
            raise ValueError("ambiguous vertex at the cut")
        key = _end_key(self.n, q, toward)
        # copy a carries the ccw half of the fan (up to the cut chord)
        return ("va", q) if key <= 4 * self.n - 1 else ("vb", q)

    def crosses_sigma(self, chord: Chord) -> bool:
        n = self.n
        if any(crosses(chord, c, n) for c in self.sigma_chords):
            return True
        if chord in self.sigma_chords:
            return False
        for (v, lo, hi) in self.sigma_wedges:
            for e in chord.endpoints():
                if e != v:
                    continue
                if chord.is_central():
                    key = _end_key(n, v, ("c", chord.side))
                else:
                    other = chord.q if chord.p == v else chord.p
                    key = _end_key(n, v, ("s", other))
                if lo < key < hi:
                    return True
        if chord.is_central() and self.sigma_arc is not None:
            lo, hi = self.sigma_arc
            if _cyclic_between(lo, _slot_pos(n, chord), hi, 8 * n):
                return True
        return False

    def deletion_vertices(self, chord: Chord) -> tuple:
        """The two black vertices to delete for the chord, per the type rule."""
        if self.crosses_sigma(chord):
            raise InvalidOpening(f"{chord.name()} crosses the opening's sigma")
        n = self.n
        if chord in self.chord_image:
            return tuple(self.chord_image[chord])
        if not chord.is_central():
            p, q = chord.p, chord.q
            return (
                self.vertex_of(p, ("s", q)),
                self.vertex_of(q, ("s", p)),
            )
        if chord.side == self.side:
            return (self.vertex_of(chord.p, ("c", chord.side)), D)
        opp = (chord.p + n) % (2 * n)
        return (
            self.vertex_of(chord.p, ("c", chord.side)),
            self.vertex_of(opp, ("c", chord.side)),
        )

    def boundary_edge_vertices(self, p: int) -> tuple:
        """Deletion vertices for the boundary edge p -> p+1."""
        m = 2 * self.n
        return (
            self.vertex_of(p, ("s", (p + 1) % m)),
            self.vertex_of((p + 1) % m, ("s", p)),
        )


# ---------------------------------------------------------------------------
# Construction


def _face_triangle(face: Pseudotriangle, resolve) -> tuple:
    """Contract a disk-free or single-arc face into a vertex triple."""
    verts = []
    for it in face.items:
        if it[0] == "arc":
            continue
        if it[0] == "edge":
            ends = [(it[1], ("s", it[1] + 1)), ((it[1] + 1), ("s", it[1]))]
        else:
            c = it[1]
            if c.is_central():
                ends = [(c.p, ("c", c.side))]
            else:
                ends = [(c.p, ("s", c.q)), (c.q, ("s", c.p))]
        for q, toward in ends:
            v = resolve(q, toward)
            if v not in verts:
                verts.append(v)
    if any(it[0] == "arc" for it in face.items) or any(
        it[0] == "chord" and it[1].is_central() for it in face.items
    ):
        if D not in verts:
            verts.append(D)
    assert len(verts) == 3, f"face did not contract to a triangle: {verts}"
    return tuple(verts)


def _seed_vars(pt: Pseudotriangulation, frozen_boundary: bool):
    """Variable space: one variable per pair (canonical order), plus one
    frozen variable per centrally symmetric boundary-edge class if asked."""
    n = pt.n
    nv = n + (n if frozen_boundary else 0)
    order = sorted(pt.pair_ids)
    var_of_pair = {pid: LaurentPoly.variable(nv, k) for k, pid in enumerate(order)}

    def boundary_weight(p: int) -> LaurentPoly:
        if frozen_boundary:
            return LaurentPoly.variable(nv, n + (p % n))
        return LaurentPoly.one(nv)

    return nv, var_of_pair, boundary_weight


def openings(
    pt: Pseudotriangulation, frozen_boundary: bool = False
) -> list[Opening]:
    """All openings of pt, one per usable central pseudotriangle.

    Non-central seeds open at each disk-touching face whose third side is a
    boundary edge.  Central seeds open along each of the two central chords
    at each of the two cut vertices.
    """
    n = pt.n
    m = 2 * n
    t = table(n)
    nv, var_of_pair, bweight = _seed_vars(pt, frozen_boundary)

    def var_of_chord(c: Chord) -> LaurentPoly:
        return var_of_pair[t.pair_index[CsPair.of(c, n)]]

    kind = classify(pt)
    all_faces = faces(pt)
    out: list[Opening] = []

    if kind == "Central":
        p0 = min(c.p % n for c in pt.chords() if c.is_central())
        for p in (p0, p0 + n):
            for side in ("L", "R"):
                out.append(_central_opening(pt, p, side, var_of_chord, bweight, nv))
        return out

    for face in all_faces:
        if not face.arcs():
            continue
        centrals = [c for c in face.chords() if c.is_central()]
        straights = [c for c in face.chords() if not c.is_central()]
        edges = face.boundary_edges()
        if len(edges) != 1 or straights:
            continue  # opening needs the third side to be one boundary edge
        out.append(
            _generic_opening(pt, face, all_faces, var_of_chord, bweight, nv)
        )
    return out


def _generic_opening(pt, sigma, all_faces, var_of_chord, bweight, nv) -> Opening:
    n = pt.n
    m = 2 * n
    edge_p = sigma.boundary_edges()[0]
    c_lo, c_hi = sorted(
        (c for c in sigma.chords()),
        key=lambda c: 0 if c.p == edge_p else 1,
    )
    assert c_lo.p == edge_p and c_hi.p == (edge_p + 1) % m

    def resolve(q, toward):
        return ("v", q % m)

    boundary = [("v", (edge_p + 1 + i) % m) for i in range(m)] + [D]
    weights: dict = {}
    chord_image: dict = {}
    for p in range(m):
        if p != edge_p:
            weights[frozenset((("v", p), ("v", (p + 1) % m)))] = bweight(p)
    for c in pt.chords():
        if c.is_central():
            e = frozenset((("v", c.p), D))
        else:
            e = frozenset((("v", c.p), ("v", c.q)))
        weights[e] = var_of_chord(c)
        chord_image[c] = e
    triangles = [
        _face_triangle(f, resolve) for f in all_faces if f is not sigma
    ]
    lo_key = _end_key(n, edge_p, ("c", c_lo.side))
    hi_key = _end_key(n, (edge_p + 1) % m, ("c", c_hi.side))
    wedges = (
        (edge_p, _end_key(n, edge_p, ("s", (edge_p + 1) % m)), lo_key),
        ((edge_p + 1) % m, hi_key, _end_key(n, (edge_p + 1) % m, ("s", edge_p))),
    )
    return Opening(
        pt=pt,
        side=c_lo.side,
        kind="generic",
        boundary=boundary,
        triangles=triangles,
        weights=weights,
        chord_image=chord_image,
        sigma_chords=(c_lo, c_hi),
        sigma_wedges=wedges,
        sigma_arc=(_slot_pos(n, c_lo), _slot_pos(n, c_hi)),
        label=f"sigma@edge{edge_p}",
    )


def _central_opening(pt, p, side, var_of_chord, bweight, nv) -> Opening:
    """Open a central seed along the side chord at vertex p."""
    n = pt.n
    m = 2 * n
    p %= m
    pbar = (p + n) % m
    other = "L" if side == "R" else "R"
    cut = Chord.central(p, side, n)
    spoke = Chord.central(pbar, side, n)
    o_p = Chord.central(p, other, n)
    o_pbar = Chord.central(pbar, other, n)
    v_s = var_of_chord(cut)
    v_o = var_of_chord(o_p)
    va, vb = ("va", p), ("vb", p)

    boundary = [va] + [("v", (p + i) % m) for i in range(1, m)] + [vb, D]
    weights: dict = {}
    chord_image: dict = {}
    for q in range(m):
        e0 = ("v", q) if q != p else va  # edge q -> q+1 leaves the a-side copy
        e1 = ("v", (q + 1) % m) if (q + 1) % m != p else vb
        weights[frozenset((e0, e1))] = bweight(q)
    # walls, spoke, and the two deformed long diagonals
    weights[frozenset((vb, D))] = v_s
    weights[frozenset((D, va))] = v_s
    weights[frozenset((("v", pbar), D))] = v_s
    e1 = frozenset((va, ("v", pbar)))
    e2 = frozenset((("v", pbar), vb))
    weights[e1] = v_s * v_o
    weights[e2] = v_s * v_o
    chord_image[cut] = frozenset((va, D))
    chord_image[spoke] = frozenset((("v", pbar), D))
    chord_image[o_p] = e1
    chord_image[o_pbar] = e2

    def resolve(q, toward):
        q %= m
        if q != p:
            return ("v", q)
        key = _end_key(n, p, toward)
        return va if key <= 4 * n - 1 else vb

    for c in pt.chords():
        if c.is_central():
            continue
        e = frozenset(
            (resolve(c.p, ("s", c.q)), resolve(c.q, ("s", c.p)))
        )
        weights[e] = var_of_chord(c)
        chord_image[c] = e

    triangles = [(va, ("v", pbar), D), (("v", pbar), vb, D)]
    for face in faces(pt):
        if face.is_degenerate_central:
            continue
        if face.arcs():
            # the two tiny-arc faces: fused long-diagonal side + two path items
            chords = face.chords()
            path = [
                it
                for it in face.items
                if it[0] == "edge" or (it[0] == "chord" and not it[1].is_central())
            ]
            assert len(path) == 2
            ends = set()
            for it in path:
                if it[0] == "edge":
                    ends |= {
                        resolve(it[1], ("s", it[1] + 1)),
                        resolve(it[1] + 1, ("s", it[1])),
                    }
                else:
                    c = it[1]
                    ends |= {resolve(c.p, ("s", c.q)), resolve(c.q, ("s", c.p))}
            tri = tuple(ends)
            assert len(tri) == 3, f"tiny-arc face spans {tri}"
            triangles.append(tri)
        else:
            triangles.append(_face_triangle(face, resolve))
    wedges = ()
    return Opening(
        pt=pt,
        side=side,
        kind="central",
        boundary=boundary,
        triangles=triangles,
        weights=weights,
        chord_image=chord_image,
        sigma_chords=(cut, o_p),
        sigma_wedges=wedges,
        sigma_arc=None,
        cut_vertex=p,
        label=f"cut@{p}^{side}",
    )


# ---------------------------------------------------------------------------
# Matching sums


def incidence(opening: Opening):
    """Black-vertex / white-triangle incidence with opposite-edge weights."""
    inc = []
    for tri in opening.triangles:
        a, b, c = tri
        inc.append(
            {
                a: opening.weights[frozenset((b, c))],
                b: opening.weights[frozenset((a, c))],
                c: opening.weights[frozenset((a, b))],
            }
        )
    return inc


def matching_sum(opening: Opening, deleted) -> LaurentPoly:
    """Sum of weights of perfect matchings after deleting two black vertices."""
    deleted = set(deleted)
    blacks = [v for v in opening.boundary if v not in deleted]
    inc = incidence(opening)
    nv = next(iter(opening.weights.values())).nvars
    if len(blacks) != len(inc):
        return LaurentPoly.zero(nv)
    bidx = {v: i for i, v in enumerate(blacks)}
    white_adj = []
    for row in inc:
        white_adj.append({bidx[v]: w for v, w in row.items() if v in bidx})
    full_black = (1 << len(blacks)) - 1
    full_white = (1 << len(white_adj)) - 1
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def go(bmask: int, wmask: int) -> LaurentPoly:
        if wmask == 0:
            return LaurentPoly.one(nv)
        # branch on the black vertex with fewest remaining options
        best, best_opts = None, None
        for v in range(len(blacks)):
            if not (bmask >> v) & 1:
                continue
            opts = [
                w
                for w in range(len(white_adj))
                if (wmask >> w) & 1 and v in white_adj[w]
            ]
            if best is None or len(opts) < len(best_opts):
                best, best_opts = v, opts
                if not opts:
                    break
        if not best_opts:
            return LaurentPoly.zero(nv)
        total = LaurentPoly.zero(nv)
        for w in best_opts:
            total = total + white_adj[w][best] * go(
                bmask & ~(1 << best), wmask & ~(1 << w)
            )
        return total

    return go(full_black, full_white)


def m_value(opening: Opening, chord: Chord) -> LaurentPoly:
    """w_{sigma,delta} divided by the product of internal diagonal weights."""
    dele = opening.deletion_vertices(chord)
    w = matching_sum(opening, dele)
    return w.div_exact(opening.diagonal_product())


def m_value_boundary(opening: Opening, p: int) -> LaurentPoly:
    w = matching_sum(opening, opening.boundary_edge_vertices(p))
    return w.div_exact(opening.diagonal_product())


def chord_value(opening: Opening, chord: Chord) -> LaurentPoly:
    """The cluster variable of the chord's pair computed from this opening."""
    m = m_value(opening, chord)
    if not chord.is_central() or chord.side == opening.side:
        return m
    # different type: m is the product of both central-pair variables at the
    # chord's vertex class; divide by the same-type pair variable, computed
    # from whichever representative of that pair avoids sigma
    n = opening.n
    same = Chord.central(chord.p, opening.side, n)
    if opening.crosses_sigma(same):
        same = Chord.central(chord.p + n, opening.side, n)
    return m.div_exact(chord_value(opening, same))


def variable_via_matching(
    pt: Pseudotriangulation, delta: CsPair, ops: list[Opening] | None = None
) -> LaurentPoly:
    """Cluster variable of delta w.r.t. the seed pt by matching enumeration.

    Tries each opening with each representative of the pair; the first
    whose central pseudotriangle is not crossed wins (deterministic order).
    """
    if ops is None:
        ops = openings(pt)
    for op in ops:
        for rep in delta.chords():
            if not op.crosses_sigma(rep):
                return chord_value(op, rep)
    raise NoValidOpening(f"no opening of {pt} avoids {delta.name()}")
