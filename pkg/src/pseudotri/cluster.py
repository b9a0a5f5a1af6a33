"""Seeds, quivers, and mutation dynamics tying flips to exchange relations."""

from __future__ import annotations

from dataclasses import dataclass

from .chords import Chord, CsPair, table
from .laurent import LaurentPoly
from .pseudo import Pseudotriangulation, flip
from .faces import faces, slot_order


class ModelInconsistency(AssertionError):
    """A structural identity of the model failed; not recoverable."""


@dataclass
class DoubleQuiver:
    """Chord-level quiver before folding: nodes are individual chords."""

    nodes: list[Chord]
    arcs: dict[tuple[Chord, Chord], int]  # multiplicities


@dataclass
class Quiver:
    """Folded quiver on centrally symmetric pairs.

    ``b[(i, j)]`` > 0 means an arc i -> j with that multiplicity, where
    i, j are pair indices in the per-n chord table.  Only one of (i, j),
    (j, i) is stored.
    """

    n: int
    nodes: tuple[int, ...]
    b: dict[tuple[int, int], int]

    def weight(self, i: int, j: int) -> int:
        return self.b.get((i, j), 0) - self.b.get((j, i), 0)

    def arcs(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, m) for (i, j), m in self.b.items() if m)

    def canonical(self) -> tuple:
        return (tuple(sorted(self.nodes)), tuple(self.arcs()))

    def relabel(self, old: int, new: int) -> "Quiver":
        def sub(k: int) -> int:
            return new if k == old else k

        b = {(sub(i), sub(j)): m for (i, j), m in self.b.items()}
        return Quiver(self.n, tuple(sub(k) for k in self.nodes), b)

    def to_dot(self) -> str:
        t = table(self.n)
        lines = [f"digraph quiver_n{self.n} {{"]
        for i in sorted(self.nodes):
            lines.append(f'  p{i} [label="{t.pairs[i].name()}"];')
        for i, j, m in self.arcs():
            attr = f' [label="{m}"]' if m != 1 else ""
            lines.append(f"  p{i} -> p{j}{attr};")
        lines.append("}")
        return "\n".join(lines)


def double_quiver(pt: Pseudotriangulation) -> DoubleQuiver:
    """Chord-level quiver: consecutive clockwise sides of each pseudotriangle
    contribute all-to-all arcs; a central pseudotriangulation's degenerate
    faces are replaced by the clockwise 4-cycle on its four central chords."""
    arcs: dict[tuple[Chord, Chord], int] = {}

    def add(a: Chord, b: Chord):
        arcs[(a, b)] = arcs.get((a, b), 0) + 1

    all_faces = faces(pt)
    for face in all_faces:
        if face.is_degenerate_central:
            continue
        sides = face.sides
        k = len(sides)
        for i in range(k):
            src = [c for c in sides[i]]
            dst = [c for c in sides[(i + 1) % k]]
            for a in src:
                if a[0] != "chord":
                    continue
                for b in dst:
                    if b[0] != "chord":
                        continue
                    add(a[1], b[1])
    if any(f.is_degenerate_central for f in all_faces):
        slots = slot_order(pt)
        assert len(slots) == 4, "degenerate faces imply exactly 4 central chords"
        for k in range(4):
            add(slots[k], slots[(k - 1) % 4])
    return DoubleQuiver(pt.chords(), arcs)


def fold(dq: DoubleQuiver, n: int) -> Quiver:
    """Quotient by central symmetry; collapse duplicates, cancel 2-cycles."""
    t = table(n)
    pair_arcs: dict[tuple[int, int], int] = {}
    for (a, b), m in dq.arcs.items():
        i = t.pair_index[CsPair.of(a, n)]
        j = t.pair_index[CsPair.of(b, n)]
        if i == j:
            raise ModelInconsistency("self-arc after folding")
        pair_arcs[(i, j)] = 1  # duplicated arcs collapse
    b: dict[tuple[int, int], int] = {}
    for (i, j) in pair_arcs:
        if (j, i) in pair_arcs:
            continue  # opposite arcs cancel
        b[(i, j)] = 1
    nodes = tuple(sorted(t.pair_index[CsPair.of(c, n)] for c in dq.nodes))
    nodes = tuple(sorted(set(nodes)))
    return Quiver(n, nodes, b)


def quiver_of(pt: Pseudotriangulation) -> Quiver:
    q = fold(double_quiver(pt), pt.n)
    if any(m != 1 for m in q.b.values()):
        raise ModelInconsistency("folded quiver has multiplicity > 1")
    return q


def quiver_mutate(q: Quiver, k: int) -> Quiver:
    """Standard quiver mutation at node k (reverse at k, add paths, cancel)."""
    if k not in q.nodes:
        raise ValueError(f"node {k} not in quiver")
    nodes = q.nodes
    w = {(i, j): q.weight(i, j) for i in nodes for j in nodes if i != j}
    nw = {}
    for i in nodes:
        for j in nodes:
            if i == j:
                continue
            if i == k or j == k:
                nw[(i, j)] = -w[(i, j)]
            else:
                bik, bkj = w[(i, k)], w[(k, j)]
                nw[(i, j)] = w[(i, j)] + (abs(bik) * bkj + bik * abs(bkj)) // 2
    b = {(i, j): m for (i, j), m in nw.items() if m > 0}
    return Quiver(q.n, nodes, b)


# ---------------------------------------------------------------------------
# Seeds


@dataclass
class Seed:
    """A cluster seed: pseudotriangulation, variables, folded quiver.

    Variables are Laurent polynomials in the n variables of the seed this
    one was grown from, keyed by pair index.
    """

    pt: Pseudotriangulation
    vars: dict[int, LaurentPoly]
    quiver: Quiver

    @property
    def n(self) -> int:
        return self.pt.n

    def var_of(self, pair: CsPair) -> LaurentPoly:
        t = table(self.n)
        return self.vars[t.pair_index[pair]]

    def to_json(self, var_names: list[str] | None = None) -> dict:
        t = table(self.n)
        names = var_names or [f"x{i+1}" for i in range(self.n)]
        return {
            "pseudotriangulation": self.pt.to_json(),
            "vars": {
                t.pairs[i].name(): {
                    "text": v.to_text(names),
                    "poly": v.to_json(names),
                }
                for i, v in sorted(self.vars.items())
            },
            "quiver": {"nodes": list(self.quiver.nodes), "arcs": self.quiver.arcs()},
        }


def initial_seed(pt: Pseudotriangulation) -> Seed:
    """Assign formal variables x1..xn to the pairs in canonical order."""
    n = pt.n
    vars = {
        pid: LaurentPoly.variable(n, k) for k, pid in enumerate(sorted(pt.pair_ids))
    }
    for v in vars.values():
        assert v.denominator_vector() == (0,) * n
    return Seed(pt, vars, quiver_of(pt))


def mutate(seed: Seed, chi: CsPair) -> Seed:
    """Flip chi and exchange its variable by the quiver rule.

    x' = (prod over arcs i->chi of x_i + prod over arcs chi->j of x_j) / x_chi,
    an exact division by the Laurent phenomenon.
    """
    t = table(seed.n)
    k = t.pair_index[chi]
    if k not in seed.vars:
        raise ValueError(f"pair {chi.name()} not in the seed")
    new_pt, new_pair = flip(seed.pt, chi)
    m_in = LaurentPoly.one(seed.n)
    m_out = LaurentPoly.one(seed.n)
    for i in seed.quiver.nodes:
        if i == k:
            continue
        w = seed.quiver.weight(i, k)
        if w > 0:
            m_in = m_in * seed.vars[i] ** w
        elif w < 0:
            m_out = m_out * seed.vars[i] ** (-w)
    new_var = (m_in + m_out).div_exact(seed.vars[k])
    if not new_var.has_positive_coeffs():
        raise ModelInconsistency("cluster variable with nonpositive coefficient")
    new_vars = dict(seed.vars)
    del new_vars[k]
    new_vars[t.pair_index[new_pair]] = new_var
    return Seed(new_pt, new_vars, quiver_of(new_pt))


def all_cluster_variables(seed: Seed) -> dict[int, LaurentPoly]:
    """BFS over the flip graph accumulating each pair's variable.

    The variable attached to a pair is asserted consistent across all the
    seeds that contain it; the total count is n^2.
    """
    t = table(seed.n)
    best: dict[int, LaurentPoly] = {}

    def record(pid: int, v: LaurentPoly):
        if pid in best:
            if best[pid] != v:
                raise ModelInconsistency(
                    f"pair {t.pairs[pid].name()} has inconsistent variables"
                )
        else:
            best[pid] = v

    seen = {seed.pt.key()}
    frontier = [seed]
    for pid, v in seed.vars.items():
        record(pid, v)
    while frontier:
        nxt = []
        for s in frontier:
            for chi in s.pt.pairs:
                s2 = mutate(s, chi)
                for pid, v in s2.vars.items():
                    record(pid, v)
                if s2.pt.key() not in seen:
                    seen.add(s2.pt.key())
                    nxt.append(s2)
        frontier = nxt
    if len(best) != seed.n * seed.n:
        raise ModelInconsistency(
            f"expected {seed.n ** 2} cluster variables, found {len(best)}"
        )
    return best


def d_vector(seed: Seed, delta: CsPair, variables=None) -> tuple[int, ...]:
    """Denominator vector of x_delta w.r.t. seed, checked against crossings."""
    t = table(seed.n)
    order = sorted(seed.vars)
    geometric = tuple(
        t.pair_crossing[i][t.pair_index[delta]] for i in order
    )
    if variables is None:
        variables = all_cluster_variables(seed)
    algebraic = variables[t.pair_index[delta]].denominator_vector()
    if geometric != algebraic:
        raise ModelInconsistency(
            f"d-vector mismatch for {delta.name()}: {geometric} vs {algebraic}"
        )
    return geometric
