"""Centrally symmetric pseudotriangulations: construction, flips, enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chords import Chord, CsPair, ChordTable, table


@dataclass(frozen=True, order=True)
class Pseudotriangulation:
    """A maximal centrally symmetric crossing-free set of chords.

    Stored as a sorted tuple of pair indices into the per-n chord table,
    which doubles as the canonical key.
    """

    n: int
    pair_ids: tuple[int, ...]

    @staticmethod
    def from_pairs(pairs: Iterable[CsPair], n: int) -> "Pseudotriangulation":
        t = table(n)
        ids = tuple(sorted(t.pair_index[p] for p in pairs))
        pt = Pseudotriangulation(n, ids)
        if not pt.is_valid():
            raise ValueError("not a centrally symmetric pseudotriangulation")
        return pt

    @property
    def pairs(self) -> list[CsPair]:
        t = table(self.n)
        return [t.pairs[i] for i in self.pair_ids]

    def chords(self) -> list[Chord]:
        out = []
        for p in self.pairs:
            out.extend(p.chords())
        return sorted(out)

    def is_valid(self) -> bool:
        t = table(self.n)
        if len(set(self.pair_ids)) != self.n:
            return False
        mask = 0
        for i in self.pair_ids:
            mask |= 1 << i
        return all(not (t.pair_conflicts[i] & mask) for i in self.pair_ids)

    def key(self) -> tuple[int, ...]:
        return self.pair_ids

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [p.to_json() for p in self.pairs]}

    @staticmethod
    def from_json(data: dict) -> "Pseudotriangulation":
        n = data["n"]
        return Pseudotriangulation.from_pairs(
            [CsPair.from_json(p, n) for p in data["pairs"]], n
        )


def is_pseudotriangulation(pairs: Iterable[CsPair], n: int) -> bool:
    """n pairwise-noncrossing pairs; maximality then comes for free."""
    t = table(n)
    ids = [t.pair_index[p] for p in pairs]
    if len(set(ids)) != n:
        return False
    mask = 0
    for i in ids:
        mask |= 1 << i
    return all(not (t.pair_conflicts[i] & mask) for i in ids)


def flip(pt: Pseudotriangulation, chi: CsPair) -> tuple[Pseudotriangulation, CsPair]:
    """Exchange the pair chi for the unique other pair keeping a pseudotriangulation.

    Scans all candidate pairs and asserts uniqueness of the replacement.
    """
    t = table(pt.n)
    ci = t.pair_index[chi]
    if ci not in pt.pair_ids:
        raise ValueError(f"pair {chi.name()} not in the pseudotriangulation")
    rest = [i for i in pt.pair_ids if i != ci]
    mask = 0
    for i in rest:
        mask |= 1 << i
    found = []
    for j in range(len(t.pairs)):
        if j == ci or (mask >> j) & 1:
            continue
        if not (t.pair_conflicts[j] & mask):
            found.append(j)
    assert len(found) == 1, f"flip of {chi.name()} has {len(found)} candidates"
    j = found[0]
    new_pt = Pseudotriangulation(pt.n, tuple(sorted(rest + [j])))
    return new_pt, t.pairs[j]


def flips(pt: Pseudotriangulation) -> list[tuple[CsPair, Pseudotriangulation, CsPair]]:
    """All n flips of pt as (removed pair, new pt, added pair)."""
    t = table(pt.n)
    out = []
    for i in pt.pair_ids:
        chi = t.pairs[i]
        new_pt, new_pair = flip(pt, chi)
        out.append((chi, new_pt, new_pair))
    return out


def classify(pt: Pseudotriangulation) -> str:
    """Central / TypeLeft / TypeRight trichotomy."""
    centrals = [c for c in pt.chords() if c.is_central()]
    sides = {c.side for c in centrals}
    if sides == {"L"}:
        return "TypeLeft"
    if sides == {"R"}:
        return "TypeRight"
    # both side labels present: must be the four chords at one antipodal
    # vertex pair
    verts = {c.p % pt.n for c in centrals}
    if len(centrals) == 4 and len(verts) == 1 and sides == {"L", "R"}:
        return "Central"
    raise AssertionError(f"unclassifiable pseudotriangulation {pt}")


# ---------------------------------------------------------------------------
# Named seeds


def star(n: int, side: str) -> Pseudotriangulation:
    """The star pseudotriangulation with all central chords of one side."""
    pairs = [CsPair.of(Chord.central(p, side, n), n) for p in range(n)]
    return Pseudotriangulation.from_pairs(pairs, n)


def central_config(n: int, p: int) -> Pseudotriangulation:
    """The central pseudotriangulation at vertex p with the straight fan at p.

    Contains both central pairs at p and the fan [p, p+2], ..., [p, p+n-1].
    """
    pairs = [
        CsPair.of(Chord.central(p, "L", n), n),
        CsPair.of(Chord.central(p, "R", n), n),
    ]
    for d in range(2, n):
        pairs.append(CsPair.of(Chord.straight(p, p + d, n), n))
    return Pseudotriangulation.from_pairs(pairs, n)


# ---------------------------------------------------------------------------
# Flip graph


@dataclass
class FlipGraph:
    """Flip graph on canonical pseudotriangulations, deterministically numbered."""

    n: int
    nodes: list[Pseudotriangulation]
    index: dict[tuple[int, ...], int]
    edges: list[tuple[int, int, CsPair, CsPair]]  # (a, b, removed, added), a < b

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for a, b, _, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return [sorted(x) for x in adj]

    def is_regular(self) -> bool:
        return all(len(a) == self.n for a in self.adjacency())

    def to_dot(self) -> str:
        lines = [f"graph flipgraph_n{self.n} {{"]
        for i, node in enumerate(self.nodes):
            label = " ".join(p.name() for p in node.pairs)
            lines.append(f'  v{i} [label="{label}"];')
        for a, b, rem, add in self.edges:
            lines.append(f'  v{a} -- v{b} [label="{rem.name()}/{add.name()}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "nodes": [node.to_json() for node in self.nodes],
            "edges": [
                {"a": a, "b": b, "removed": r.to_json(), "added": d.to_json()}
                for a, b, r, d in self.edges
            ],
        }


def enumerate_flip_graph(n: int, start: Pseudotriangulation | None = None) -> FlipGraph:
    """BFS closure of the flip relation; node numbering by sorted canonical key."""
    if start is None:
        start = star(n, "L")
    seen = {start.key(): start}
    frontier = [start]
    edge_set = {}
    while frontier:
        nxt = []
        for pt in frontier:
            for chi, other, added in flips(pt):
                if other.key() not in seen:
                    seen[other.key()] = other
                    nxt.append(other)
                ek = tuple(sorted((pt.key(), other.key())))
                if ek not in edge_set:
                    if pt.key() < other.key():
                        edge_set[ek] = (pt.key(), other.key(), chi, added)
                    else:
                        edge_set[ek] = (other.key(), pt.key(), added, chi)
        frontier = nxt
    keys = sorted(seen)
    index = {k: i for i, k in enumerate(keys)}
    nodes = [seen[k] for k in keys]
    edges = sorted(
        (index[a], index[b], rem, add) for a, b, rem, add in edge_set.values()
    )
    return FlipGraph(n, nodes, index, edges)


def type_d_catalan(n: int) -> int:
    """Independent count of clusters in type D_n: (3n-2)/n * C(2n-2, n-1)."""
    from math import comb

    return (3 * n - 2) * comb(2 * n - 2, n - 1) // n
