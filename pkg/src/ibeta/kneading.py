"""Kneading invariants, shift classification and subshift presentations.

The kneading pair of ``(beta, alpha)`` is the plus and minus expansion of
the discontinuity ``p``. A word is allowed in the shift exactly when each of
its suffixes lies below the lower invariant or at/above the upper one, so
both words together determine the whole shift space.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import mpmath
from mpmath import libmp
import networkx as nx
import numpy as np

from .dynamics import DEFAULT_CAP, Side, SystemParams, orbit
from .errors import NotSoficInput, StateLimitExceeded
from .words import EventuallyPeriodicWord, Truncated, Word, compare_prefix

DEFAULT_STATE_LIMIT = 100_000


@dataclass(frozen=True)
class KneadingPair:
    upper: Word
    lower: Word

    @property
    def exact(self) -> bool:
        return isinstance(self.upper, EventuallyPeriodicWord) and isinstance(
            self.lower, EventuallyPeriodicWord
        )


def _orbit_word(params, side, x, cap) -> Word:
    rec = orbit(params, side, x, cap)
    if rec.periodic:
        return rec.word()
    return Truncated(tuple(rec.digits))


def kneading_pair(params: SystemParams, cap: int = DEFAULT_CAP) -> KneadingPair:
    """Plus and minus expansions of ``p``."""
    return KneadingPair(
        _orbit_word(params, Side.PLUS, params.p, cap),
        _orbit_word(params, Side.MINUS, params.p, cap),
    )


class ShiftTag(str, Enum):
    SFT = "SFT"
    SOFIC_NOT_SFT = "SoficNotSFT"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ShiftClass:
    tag: ShiftTag
    cap: int | None = None


def classify_shift(pair: KneadingPair) -> ShiftClass:
    """Finite type iff both shifted invariants are periodic; sofic iff both eventually periodic."""
    if not pair.exact:
        words = [w for w in (pair.upper, pair.lower) if isinstance(w, Truncated)]
        return ShiftClass(ShiftTag.UNKNOWN, max(len(w.prefix) for w in words))
    if pair.upper.shift().is_periodic and pair.lower.shift().is_periodic:
        return ShiftClass(ShiftTag.SFT)
    return ShiftClass(ShiftTag.SOFIC_NOT_SFT)


def _require_exact(pair: KneadingPair) -> None:
    if not pair.exact:
        raise NotSoficInput("kneading pair is truncated; the shift is not known to be sofic")


def admissible(word, pair: KneadingPair, side="plus") -> bool:
    """Check every suffix of ``word`` against the kneading pair.

    For an eventually periodic word the order conditions are decided
    exactly, with the strict/non-strict comparison given by ``side``. For a
    finite prefix a suffix is rejected only when it is already forced
    strictly between the two invariants.
    """
    _require_exact(pair)
    upper, lower = pair.upper, pair.lower
    if isinstance(word, EventuallyPeriodicWord):
        plus = Side.of(side) is Side.PLUS
        for n in range(word.positions()):
            below, above = word.compare_from(n, lower), word.compare_from(n, upper)
            if plus:
                ok = below < 0 or above >= 0
            else:
                ok = below <= 0 or above > 0
            if not ok:
                return False
        return True
    word = tuple(word)
    for n in range(len(word)):
        s = word[n:]
        if compare_prefix(s, lower) > 0 and compare_prefix(s, upper) < 0:
            return False
    return True


@dataclass
class SubshiftGraph:
    """Deterministic labelled graph; ``edges[i]`` maps a label to the target state."""

    states: list
    edges: list[dict[int, int]]
    start: int = 0

    @property
    def adjacency(self) -> list[list[int]]:
        n = len(self.states)
        mat = [[0] * n for _ in range(n)]
        for i, out in enumerate(self.edges):
            for j in out.values():
                mat[i][j] += 1
        return mat

    def labels(self, length: int) -> set[tuple[int, ...]]:
        """Label sequences of all paths with ``length`` edges."""
        frontier = {(i, ()) for i in range(len(self.states))}
        for _ in range(length):
            frontier = {(j, w + (a,)) for i, w in frontier for a, j in self.edges[i].items()}
        return {w for _, w in frontier}

    def to_json(self) -> dict:
        return {
            "states": len(self.states),
            "start": self.start,
            "edges": [
                {"from": i, "label": a, "to": j}
                for i, out in enumerate(self.edges)
                for a, j in sorted(out.items())
            ],
        }


def _advance(state, a: int, upper: EventuallyPeriodicWord, lower: EventuallyPeriodicWord):
    """Read letter ``a``; ``None`` if some open suffix is now forced into the gap."""
    lows, ups = state
    new_lows, new_ups = set(), set()
    for j in lows:
        b = lower[j]
        if a > b:
            return None
        if a == b:
            new_lows.add(lower.normalise_position(j + 1))
    for j in ups:
        b = upper[j]
        if a < b:
            return None
        if a == b:
            new_ups.add(upper.normalise_position(j + 1))
    # the suffix starting here: below the lower word iff it starts 0 and stays below
    if a == lower[0]:
        new_lows.add(lower.normalise_position(1))
    if a == upper[0]:
        new_ups.add(upper.normalise_position(1))
    return frozenset(new_lows), frozenset(new_ups)


def _minimise(states: list, edges: list[dict[int, int]], start: int):
    """Moore partition refinement on a partial deterministic automaton (all states accepting)."""
    n = len(states)
    block = [0] * n
    count = 1
    while True:
        sig = {}
        new = [0] * n
        for i in range(n):
            key = (block[i], tuple(block[edges[i][a]] if a in edges[i] else -1 for a in (0, 1)))
            new[i] = sig.setdefault(key, len(sig))
        if len(sig) == count:
            break
        block, count = new, len(sig)
    # renumber in order of first appearance from the start state
    order = {}
    queue = [start]
    seen = {start}
    while queue:
        i = queue.pop(0)
        order.setdefault(block[i], len(order))
        for a in (0, 1):
            j = edges[i].get(a)
            if j is not None and j not in seen:
                seen.add(j)
                queue.append(j)
    rep = {}
    for i in range(n):
        if block[i] in order:
            rep.setdefault(order[block[i]], i)
    out_states = [states[rep[k]] for k in range(len(order))]
    out_edges = [
        {a: order[block[j]] for a, j in edges[rep[k]].items()} for k in range(len(order))
    ]
    return out_states, out_edges, 0


def subshift_graph(pair: KneadingPair, max_states: int = DEFAULT_STATE_LIMIT) -> SubshiftGraph:
    """Follower-set automaton of the shift defined by the kneading pair.

    A state records which prefixes of the lower and upper invariants the
    still-undecided suffixes are following; positions are reduced modulo
    the periods so there are finitely many states. States without an
    infinite continuation are dropped and the result is minimised.
    """
    _require_exact(pair)
    upper, lower = pair.upper, pair.lower
    if upper[0] != 1 or lower[0] != 0:
        raise NotSoficInput("upper invariant must start with 1 and lower with 0")
    start = (frozenset(), frozenset())
    index = {start: 0}
    states = [start]
    edges: list[dict[int, int]] = [{}]
    i = 0
    while i < len(states):
        for a in (0, 1):
            nxt = _advance(states[i], a, upper, lower)
            if nxt is None:
                continue
            j = index.get(nxt)
            if j is None:
                if len(states) >= max_states:
                    raise StateLimitExceeded(f"more than {max_states} follower states")
                j = index[nxt] = len(states)
                states.append(nxt)
                edges.append({})
            edges[i][a] = j
        i += 1
    # trim: keep states that can reach a cycle
    g = nx.DiGraph()
    g.add_nodes_from(range(len(states)))
    g.add_edges_from((u, v) for u, out in enumerate(edges) for v in out.values())
    alive = set()
    for comp in nx.strongly_connected_components(g):
        u = next(iter(comp))
        if len(comp) > 1 or g.has_edge(u, u):
            alive |= comp
    rev = g.reverse(copy=False)
    for u in list(alive):
        alive |= nx.descendants(rev, u)
    if 0 not in alive:
        raise NotSoficInput("kneading pair admits no infinite word")
    keep = sorted(alive)
    renum = {u: k for k, u in enumerate(keep)}
    t_states = [states[u] for u in keep]
    t_edges = [{a: renum[v] for a, v in edges[u].items() if v in renum} for u in keep]
    m_states, m_edges, m_start = _minimise(t_states, t_edges, renum[0])
    return SubshiftGraph(m_states, m_edges, m_start)


def _perron_enclosure(mat: list[list[int]]) -> tuple[Fraction, Fraction]:
    """Collatz-Wielandt bounds for an irreducible nonnegative integer matrix.

    A floating eigenvector only serves as the test vector; the bounds
    ``min (Bv)_i / v_i <= rho(B) <= max (Bv)_i / v_i`` are evaluated exactly
    for ``B = A + I``, which is primitive so the eigenvector guess is sharp.
    """
    n = len(mat)
    b = [[mat[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    vals, vecs = np.linalg.eig(np.array(b, dtype=float))
    k = int(np.argmax(vals.real))
    v = np.abs(vecs[:, k].real)
    scale = 2**50 / max(v.max(), 1e-300)
    vi = [max(int(round(x * scale)), 1) for x in v]
    ratios = [Fraction(sum(b[i][j] * vi[j] for j in range(n)), vi[i]) for i in range(n)]
    return min(ratios) - 1, max(ratios) - 1


def spectral_radius(graph: SubshiftGraph) -> tuple[Fraction, Fraction]:
    """Certified enclosure of the spectral radius, the maximum over strongly connected pieces."""
    mat = graph.adjacency
    g = nx.DiGraph()
    g.add_nodes_from(range(len(mat)))
    g.add_edges_from((i, j) for i in range(len(mat)) for j in range(len(mat)) if mat[i][j])
    best = (Fraction(0), Fraction(0))
    for comp in nx.strongly_connected_components(g):
        idx = sorted(comp)
        sub = [[mat[i][j] for j in idx] for i in idx]
        if len(idx) == 1 and sub[0][0] == 0:
            continue
        lo, hi = _perron_enclosure(sub)
        if lo > best[0]:
            best = (lo, max(hi, best[1]))
        else:
            best = (best[0], max(hi, best[1]))
    return best


def _to_fraction(raw) -> Fraction:
    num, den = libmp.to_rational(raw)
    return Fraction(int(num), int(den))


def entropy(graph: SubshiftGraph) -> tuple[Fraction, Fraction]:
    """Certified enclosure of ``log`` of the spectral radius."""
    lo, hi = spectral_radius(graph)
    if lo <= 0:
        raise ValueError("graph has no cycles; entropy undefined")
    with mpmath.workprec(80):
        iv = mpmath.iv
        a = iv.log(iv.mpf(lo.numerator) / lo.denominator)
        b = iv.log(iv.mpf(hi.numerator) / hi.denominator)
        return _to_fraction(a._mpi_[0]), _to_fraction(b._mpi_[1])


def full_shift_pair() -> KneadingPair:
    """Bounds under which every word is allowed: upper ``1(0)``, lower ``0(1)``."""
    return KneadingPair(EventuallyPeriodicWord.parse("1(0)"), EventuallyPeriodicWord.parse("0(1)"))


def language(pair: KneadingPair, length: int) -> set[tuple[int, ...]]:
    """All finite words of ``length`` passing the prefix admissibility check."""
    out = set()
    for m in range(2**length):
        w = tuple((m >> (length - 1 - i)) & 1 for i in range(length))
        if admissible(w, pair):
            out.add(w)
    return out


def follower_bound(pair: KneadingPair) -> int:
    """Number of distinct suffix positions tracked for the two invariants."""
    _require_exact(pair)
    return pair.upper.positions() * pair.lower.positions()

