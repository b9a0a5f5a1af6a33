"""Chords of the configuration D_n and their crossing combinatorics.

The configuration is a regular 2n-gon (vertices 0..2n-1 counterclockwise)
with a small disk at the center.  Chords are either straight diagonals
(excluding boundary edges and the long diagonals through the center) or
central chords: disk-tangent segments from a vertex, two per vertex.

Central chords carry a side label "L"/"R".  An "R" chord from vertex p
touches the disk at polygon angle p + (n/2) steps minus an infinitesimal;
an "L" chord touches at p - (n/2) steps plus an infinitesimal.  The
infinitesimal is purely symbolic: all decisions below are integer
combinatorics.

Crossing rules:
  * straight x straight: strict interleaving on the circle;
  * straight x central at r: r strictly inside the short arc cut off by
    the diagonal (the side away from the center), either side label;
  * central x central, same side: never;
  * R at p x L at q: cross iff (q - p) mod 2n in {1, ..., n-1}; in
    particular never when q is p or its antipode.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


SIDES = ("L", "R")

# The "R" family touches the disk at vertex angle + (90 deg - delta); this
# binding of display names to touch sides is the global calibration fixed by
# the worked n=3 flip and the position table of the subword correspondence.
PLUS_SIDE = "R"
MINUS_SIDE = "L"


@dataclass(frozen=True, order=True)
class Chord:
    """A single chord: straight diagonal [p, q] or central chord at p."""

    kind: str  # "s" or "c"
    p: int
    q: int = -1  # second endpoint for straight chords
    side: str = ""  # "L" / "R" for central chords

    @staticmethod
    def straight(p: int, q: int, n: int) -> "Chord":
        m = 2 * n
        p, q = p % m, q % m
        d = (q - p) % m
        if d == 0 or d == 1 or d == m - 1:
            raise ValueError(f"[{p},{q}] is a vertex or boundary edge, not a chord")
        if d == n:
            raise ValueError(f"[{p},{q}] is a long diagonal, excluded from D_{n}")
        if p > q:
            p, q = q, p
        return Chord("s", p, q)

    @staticmethod
    def central(p: int, side: str, n: int) -> "Chord":
        if side not in SIDES:
            raise ValueError(f"side must be 'L' or 'R', got {side!r}")
        return Chord("c", p % (2 * n), -1, side)

    def is_central(self) -> bool:
        return self.kind == "c"

    def endpoints(self) -> tuple[int, ...]:
        return (self.p,) if self.kind == "c" else (self.p, self.q)

    def antipode(self, n: int) -> "Chord":
        m = 2 * n
        if self.kind == "s":
            return Chord.straight(self.p + n, self.q + n, n)
        return Chord("c", (self.p + n) % m, -1, self.side)

    def touch_index(self, n: int) -> int:
        """Nominal tangency slot, in units of pi/(2n), for central chords."""
        if self.kind != "c":
            raise ValueError("only central chords touch the disk")
        if self.side == PLUS_SIDE:
            return (2 * self.p + n) % (4 * n)
        return (2 * self.p - n) % (4 * n)

    def name(self) -> str:
        if self.kind == "c":
            return f"{self.p}^{self.side}"
        return f"[{self.p},{self.q}]"

    def to_json(self) -> dict:
        if self.kind == "c":
            return {"kind": "central", "p": self.p, "side": self.side}
        return {"kind": "straight", "p": self.p, "q": self.q}

    @staticmethod
    def from_json(data: dict, n: int) -> "Chord":
        if data["kind"] == "central":
            return Chord.central(data["p"], data["side"], n)
        return Chord.straight(data["p"], data["q"], n)


def _interleaves(p: int, q: int, r: int, s: int, m: int) -> bool:
    """True iff {r, s} strictly separates {p, q} on the m-cycle."""

    def inside(a: int) -> bool:
        return 0 < (a - p) % m < (q - p) % m

    return inside(r) != inside(s)


def _short_arc_interior(p: int, q: int, n: int) -> range | None:
    """Vertices strictly inside the arc of [p,q] away from the center."""
    m = 2 * n
    d = (q - p) % m
    if d < n:
        return (p, d)  # arc from p to q, counterclockwise
    return (q, m - d)  # arc from q to p


def crosses(a: Chord, b: Chord, n: int) -> bool:
    """Whether two chords of D_n cross (shared endpoints never cross)."""
    m = 2 * n
    if a == b:
        return False
    if a.kind == "s" and b.kind == "s":
        if set(a.endpoints()) & set(b.endpoints()):
            return False
        return _interleaves(a.p, a.q, b.p, b.q, m)
    if a.kind == "s" and b.kind == "c":
        start, span = _short_arc_interior(a.p, a.q, n)
        return 0 < (b.p - start) % m < span
    if a.kind == "c" and b.kind == "s":
        return crosses(b, a, n)
    # central x central
    if a.side == b.side:
        return False
    if a.side == PLUS_SIDE:
        plus, minus = a, b
    else:
        plus, minus = b, a
    d = (minus.p - plus.p) % m
    return 0 < d < n


# ---------------------------------------------------------------------------
# Centrally symmetric pairs


@dataclass(frozen=True, order=True)
class CsPair:
    """A centrally symmetric pair of chords, keyed by its canonical rep."""

    rep: Chord
    partner: Chord

    @staticmethod
    def of(chord: Chord, n: int) -> "CsPair":
        other = chord.antipode(n)
        rep, partner = sorted((chord, other))
        return CsPair(rep, partner)

    def chords(self) -> tuple[Chord, Chord]:
        return (self.rep, self.partner)

    def name(self) -> str:
        c = self.rep
        if c.kind == "c":
            return f"{c.p}^{c.side}"
        return f"[{c.p},{c.q}]"

    def to_json(self) -> dict:
        return {"rep": self.rep.to_json(), "partner": self.partner.to_json()}

    @staticmethod
    def from_json(data: dict, n: int) -> "CsPair":
        return CsPair.of(Chord.from_json(data["rep"], n), n)


def all_cs_pairs(n: int) -> list[CsPair]:
    """Every centrally symmetric pair of chords of D_n, sorted; size n^2."""
    if n < 3:
        raise ValueError("the configuration D_n needs n >= 3")
    m = 2 * n
    seen = set()
    for p in range(m):
        for side in SIDES:
            seen.add(CsPair.of(Chord.central(p, side, n), n))
        for d in range(2, n):
            seen.add(CsPair.of(Chord.straight(p, p + d, n), n))
    pairs = sorted(seen)
    assert len(pairs) == n * n
    return pairs


def crossing_number(theta: CsPair, delta: CsPair, n: int) -> int:
    """Crossings of one representative of delta with the chords of theta."""
    rep = delta.rep
    return sum(crosses(rep, c, n) for c in theta.chords())


# ---------------------------------------------------------------------------
# Fast per-n tables


class ChordTable:
    """Indexed chords and pairs of D_n with precomputed crossing bitmasks.

    Pair i conflicts with pair j iff some chord of i crosses some chord
    of j; ``pair_conflicts[i]`` is the bitmask of conflicting pairs.
    """

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("the configuration D_n needs n >= 3")
        self.n = n
        self.pairs: list[CsPair] = all_cs_pairs(n)
        self.pair_index: dict[CsPair, int] = {p: i for i, p in enumerate(self.pairs)}
        chords = sorted({c for pr in self.pairs for c in pr.chords()})
        self.chords: list[Chord] = chords
        self.chord_index: dict[Chord, int] = {c: i for i, c in enumerate(chords)}
        nc = len(chords)
        cross = [0] * nc
        for i in range(nc):
            for j in range(i + 1, nc):
                if crosses(chords[i], chords[j], n):
                    cross[i] |= 1 << j
                    cross[j] |= 1 << i
        self.chord_cross = cross
        self.pair_of_chord = [
            self.pair_index[CsPair.of(c, n)] for c in chords
        ]
        np_ = len(self.pairs)
        self.pair_conflicts = [0] * np_
        for i, pr in enumerate(self.pairs):
            mask = 0
            for c in pr.chords():
                mask |= cross[self.chord_index[c]]
            conf = 0
            for j in range(nc):
                if mask >> j & 1:
                    conf |= 1 << self.pair_of_chord[j]
            self.pair_conflicts[i] = conf
        # crossing number of (theta pair i, delta pair j): chords of i
        # crossed by delta's canonical representative
        self.pair_crossing = [[0] * np_ for _ in range(np_)]
        for j, delta in enumerate(self.pairs):
            rm = cross[self.chord_index[delta.rep]]
            for i, theta in enumerate(self.pairs):
                cnt = 0
                for c in theta.chords():
                    if rm >> self.chord_index[c] & 1:
                        cnt += 1
                self.pair_crossing[i][j] = cnt


@lru_cache(maxsize=None)
def table(n: int) -> ChordTable:
    return ChordTable(n)
