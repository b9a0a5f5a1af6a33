"""Type-D Coxeter combinatorics: signed permutations, the word Q_c, the
position-to-chord bijection, subword facets, and almost-positive-root labels.

The group D_n acts as signed permutations of 1..n with an even number of
sign changes.  Generators follow the forked Dynkin diagram: tau_0 swaps
1, 2 and negates both; tau_i (i >= 1) swaps i, i+1; tau_0 and tau_1 are the
fork ends, both attached to tau_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .chords import Chord, CsPair, table
from .pseudo import Pseudotriangulation, is_pseudotriangulation


# ---------------------------------------------------------------------------
# Signed permutations


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def check_signed(w: tuple[int, ...]) -> None:
    n = len(w)
    if sorted(abs(a) for a in w) != list(range(1, n + 1)):
        raise ValueError(f"not a signed permutation: {w}")
    if sum(1 for a in w if a < 0) % 2:
        raise ValueError(f"odd number of sign changes (type D): {w}")


def apply_gen(w: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Right multiplication w * tau_i (acts on positions)."""
    v = list(w)
    if i == 0:
        v[0], v[1] = -w[1], -w[0]
    else:
        v[i - 1], v[i] = w[i], w[i - 1]
    return tuple(v)


def length(w: tuple[int, ...]) -> int:
    """inv(w) + #{i<j : w(i)+w(j) < 0}."""
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    neg = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
    return inv + neg


def word_product(word: tuple[int, ...], n: int) -> tuple[int, ...]:
    w = identity(n)
    for i in word:
        w = apply_gen(w, i)
    return w


def is_reduced(word: tuple[int, ...], n: int) -> bool:
    w = identity(n)
    ell = 0
    for i in word:
        w = apply_gen(w, i)
        ell += 1
        if length(w) != ell:
            return False
    return True


def longest_element(n: int) -> tuple[int, ...]:
    """-1 -2 ... -n for even n; 1 -2 ... -n for odd n."""
    if n % 2 == 0:
        return tuple(-i for i in range(1, n + 1))
    return (1,) + tuple(-i for i in range(2, n + 1))


# ---------------------------------------------------------------------------
# The word Q_c


def _commute(i: int, j: int) -> bool:
    if {i, j} == {0, 1}:
        return True
    if 0 in (i, j):
        other = i + j
        return other != 2
    return abs(i - j) > 1


def _fork_adjacent_in_some_commutation(c: tuple[int, ...]) -> bool:
    """Whether tau_0, tau_1 can be made consecutive by commuting swaps."""
    seen = {c}
    stack = [c]
    while stack:
        w = stack.pop()
        for k in range(len(w) - 1):
            if {w[k], w[k + 1]} == {0, 1}:
                return True
            if _commute(w[k], w[k + 1]):
                v = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return False


def left_mult(i: int, w: tuple[int, ...]) -> tuple[int, ...]:
    """Left multiplication tau_i * w (acts on values)."""

    def act(v: int) -> int:
        a, s = abs(v), 1 if v > 0 else -1
        if i == 0:
            if a == 1:
                return -2 * s
            if a == 2:
                return -1 * s
            return v
        if a == i:
            return (i + 1) * s
        if a == i + 1:
            return i * s
        return v

    return tuple(act(v) for v in w)


def sorting_word(c: tuple[int, ...], w: tuple[int, ...]) -> tuple[int, ...]:
    """The c-sorting word of w: its lexicographically first reduced
    expression as a subword of c repeated."""
    n = len(c)
    out = []
    rem = w
    guard = 0
    while length(rem) > 0:
        for s in c:
            if length(left_mult(s, rem)) < length(rem):
                rem = left_mult(s, rem)
                out.append(s)
        guard += 1
        if guard > 4 * n:
            raise AssertionError(f"sorting word did not terminate for c={c}")
    return tuple(out)


def shortcut_sorting_word(c: tuple[int, ...]) -> tuple[int, ...]:
    """Type-D closed form: c^(n-1), with the last appearance of the later
    fork letter replaced by the other one when tau_0, tau_1 are not
    consecutive in c up to commutations."""
    n = len(c)
    suffix = list(c) * (n - 1)
    if not _fork_adjacent_in_some_commutation(c):
        if c.index(0) > c.index(1):
            k = len(suffix) - 1 - suffix[::-1].index(0)
            suffix[k] = 1
        else:
            k = len(suffix) - 1 - suffix[::-1].index(1)
            suffix[k] = 0
    return tuple(suffix)


@lru_cache(maxsize=None)
def build_qc(c: tuple[int, ...]) -> tuple[int, ...]:
    """Q_c = c followed by the c-sorting word of the longest element."""
    n = len(c)
    if sorted(c) != list(range(n)):
        raise ValueError("c must use each generator exactly once")
    suffix = sorting_word(c, longest_element(n))
    word = tuple(c) + suffix
    if len(word) != n * n:
        raise AssertionError(f"|Q_c| = {len(word)} != n^2 for c={c}")
    if word_product(suffix, n) != longest_element(n) or not is_reduced(suffix, n):
        raise AssertionError(f"sorting-word construction failed for c={c}")
    return word


def conjugate_by_w0(i: int, n: int) -> int:
    """w0 tau_i w0 as a generator index (the diagram flip for odd n)."""
    if n % 2 == 0 or i >= 2:
        return i
    return 1 - i


def rotation_map(qc: tuple[int, ...], n: int) -> list[int]:
    """The position rotation: next occurrence of the letter, else first
    occurrence of its w0-conjugate.  1-based positions."""
    m = len(qc)
    out = [0] * (m + 1)
    for i in range(1, m + 1):
        s = qc[i - 1]
        nxt = next((j for j in range(i + 1, m + 1) if qc[j - 1] == s), None)
        if nxt is None:
            s2 = conjugate_by_w0(s, n)
            nxt = next(j for j in range(1, m + 1) if qc[j - 1] == s2)
        out[i] = nxt
    return out


# ---------------------------------------------------------------------------
# Positions -> centrally symmetric pairs


def _rotate_pair(pair: CsPair, n: int) -> CsPair:
    """Rotate by pi/n (one vertex step counterclockwise) and swap L with R."""
    c = pair.rep
    if c.is_central():
        side = "L" if c.side == "R" else "R"
        return CsPair.of(Chord.central(c.p + 1, side, n), n)
    return CsPair.of(Chord.straight(c.p + 1, c.q + 1, n), n)


@lru_cache(maxsize=None)
def pos_to_diag(c: tuple[int, ...]) -> dict[int, CsPair]:
    """The bijection positions of Q_c -> centrally symmetric pairs.

    The first n positions (the letters of c) get the accordion
    pseudotriangulation Z_c; the rest propagate along the rotation map by
    rotating one step and swapping chirality.
    """
    n = len(c)
    qc = build_qc(c)
    pos = {s: k + 1 for k, s in enumerate(c)}  # pi_i = position of tau_i in c
    images: dict[int, CsPair] = {}
    if pos[0] > pos[2]:
        images[pos[0]] = CsPair.of(Chord.central(0, "L", n), n)
    else:
        images[pos[0]] = CsPair.of(Chord.central(n - 1, "R", n), n)
    if pos[1] > pos[2]:
        images[pos[1]] = CsPair.of(Chord.central(0, "R", n), n)
    else:
        images[pos[1]] = CsPair.of(Chord.central(n - 1, "L", n), n)
    for i in range(2, n):
        p_i = sum(1 for j in range(2, n) if j < i and pos[j] < pos[j + 1])
        q_i = (n - 1) - sum(1 for j in range(2, n) if j < i and pos[j] > pos[j + 1])
        images[pos[i]] = CsPair.of(Chord.straight(p_i, q_i, n), n)
    rot = rotation_map(qc, n)
    # propagate: the image of rot(i) is the rotated image of i
    pending = True
    while pending:
        pending = False
        for i in range(1, n * n + 1):
            j = rot[i]
            if i in images and j not in images:
                images[j] = _rotate_pair(images[i], n)
                pending = True
    if len(images) != n * n:
        raise AssertionError("rotation map failed to reach all positions")
    vals = set(images.values())
    if len(vals) != n * n:
        raise AssertionError("pos_to_diag is not a bijection")
    return images


def accordion(c: tuple[int, ...]) -> Pseudotriangulation:
    """Z_c: the pseudotriangulation formed by the first n positions of Q_c."""
    n = len(c)
    images = pos_to_diag(c)
    return Pseudotriangulation.from_pairs([images[k] for k in range(1, n + 1)], n)


def facet_check(c: tuple[int, ...], positions: frozenset[int] | set[int]) -> bool:
    """Whether the complement of the positions is a reduced word for w0.

    Asserted equivalent to the image pairs forming a pseudotriangulation.
    """
    n = len(c)
    qc = build_qc(c)
    if len(positions) != n:
        raise ValueError("facet candidates have exactly n positions")
    comp = tuple(qc[i - 1] for i in range(1, n * n + 1) if i not in positions)
    word_side = is_reduced(comp, n) and word_product(comp, n) == longest_element(n)
    images = pos_to_diag(c)
    pairs = [images[i] for i in positions]
    geom_side = len(set(pairs)) == n and is_pseudotriangulation(pairs, n)
    if word_side != geom_side:
        raise AssertionError(
            f"facet correspondence failed for c={c}, I={sorted(positions)}"
        )
    return word_side


def all_facets(c: tuple[int, ...]) -> list[frozenset[int]]:
    n = len(c)
    return [
        frozenset(I)
        for I in combinations(range(1, n * n + 1), n)
        if facet_check(c, frozenset(I))
    ]


# ---------------------------------------------------------------------------
# Almost positive roots


def cartan_d(n: int) -> list[list[int]]:
    """Cartan matrix of D_n with the fork at indices 0, 1 attached to 2."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):
        a[i][j] = a[j][i] = -1

    link(0, 2)
    link(1, 2)
    for i in range(2, n - 1):
        link(i, i + 1)
    return a


def positive_roots(n: int) -> set[tuple[int, ...]]:
    """Positive roots of D_n by reflection closure over the Cartan matrix."""
    a = cartan_d(n)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def reflect(beta: tuple[int, ...], i: int) -> tuple[int, ...]:
        pairing = sum(beta[j] * a[i][j] for j in range(n))
        out = list(beta)
        out[i] -= pairing
        return tuple(out)

    roots = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            g = reflect(beta, i)
            if all(x >= 0 for x in g) and any(x > 0 for x in g) and g not in roots:
                roots.add(g)
                frontier.append(g)
    assert len(roots) == n * (n - 1)
    return roots


def root_of(c: tuple[int, ...], delta: CsPair) -> tuple[int, ...]:
    """Almost-positive-root label of a pair w.r.t. the accordion Z_c.

    Pairs of Z_c get negative simple roots; any other pair gets the sum of
    the simple roots of the Z_c chords it crosses (with crossing numbers).
    """
    n = len(c)
    t = table(n)
    images = pos_to_diag(c)
    # label i <-> the pair at position pi_i
    pos = {s: k + 1 for k, s in enumerate(c)}
    zc = {images[pos[i]]: i for i in range(n)}
    if delta in zc:
        i = zc[delta]
        return tuple(-1 if j == i else 0 for j in range(n))
    coeffs = [0] * n
    dj = t.pair_index[delta]
    for pair, i in zc.items():
        coeffs[i] = t.pair_crossing[t.pair_index[pair]][dj]
    return tuple(coeffs)


@dataclass
class PositionRow:
    """One row of the position table: position, letter, image pair."""

    position: int
    letter: int
    pair: CsPair


def position_table(c: tuple[int, ...]) -> list[PositionRow]:
    qc = build_qc(c)
    images = pos_to_diag(c)
    return [
        PositionRow(i, qc[i - 1], images[i]) for i in range(1, len(qc) + 1)
    ]
