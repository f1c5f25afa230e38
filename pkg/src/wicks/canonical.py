"""Canonical representatives and automorphisms of single-face words.

Two words are equivalent when one is obtained from the other by renaming
letters, replacing letters by their inverses, and rotating.  Mirror images
are *not* identified.  Because each letter occurs once with each sign, a
first-occurrence relabeling of a rotation depends only on the pairing of
positions, so the canonical form is the lexicographic minimum of that token
stream over the ``n`` rotations, and the automorphism group is the set of
rotations achieving the minimum.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import MalformedWord, NoSuchAutomorphism, OrientationError
from .surface import build_ordered_graph, cycles, invariants
from .words import SignedWord, format_word, pairing


def _check_signs(tokens: Sequence[int], partner: Sequence[int]) -> None:
    for i, j in enumerate(partner):
        if tokens[i] == tokens[j]:
            raise OrientationError(f"letter id {tokens[i] >> 1} occurs twice with the same sign",
                                   [tokens[i] >> 1])


def canonical_tokens(partner: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Minimal first-occurrence stream over all rotations, and how many rotations hit it."""
    n = len(partner)
    best: list[int] | None = None
    hits = 0
    label = [0] * n
    for r in range(n):
        stream = []
        c = 0
        state = 0 if best is not None else -1   # 0: tied so far, -1: already smaller
        for k in range(n):
            p = r + k
            if p >= n:
                p -= n
            q = partner[p]
            # q already visited in this rotation iff its offset from r is < k
            if (q - r) % n < k:
                t = 2 * label[q] + 1
            else:
                label[p] = c
                t = 2 * c
                c += 1
            if state == 0:
                b = best[k]
                if t > b:
                    state = 1
                    break
                if t < b:
                    state = -1
            stream.append(t)
        if state == 1:
            continue
        if state == 0:
            hits += 1
        else:
            best = stream
            hits = 1
    return tuple(best or ()), hits


@dataclass(frozen=True, order=True)
class CanonicalClass:
    canon: SignedWord = field(compare=False)
    aut_order: int = field(compare=False)
    genus: int = field(compare=False)
    key: str = field(default="", compare=True)

    def __post_init__(self):
        if not self.key:
            object.__setattr__(self, "key", format_word(self.canon))

    @property
    def length(self) -> int:
        return len(self.canon)


def _genus_single_face(partner: Sequence[int]) -> int:
    n = len(partner)
    rotation = [(partner[d] + 1) % n for d in range(n)]
    chi = len(cycles(rotation)) - n // 2 + 1
    return (2 - chi) // 2


def canonicalize(w: SignedWord) -> CanonicalClass:
    if not w.tokens:
        raise MalformedWord("empty word")
    partner = pairing(w.tokens)
    _check_signs(w.tokens, partner)
    canon, aut = canonical_tokens(partner)
    return CanonicalClass(SignedWord(canon), aut, _genus_single_face(partner))


def class_from_tokens(tokens: Sequence[int]) -> CanonicalClass:
    """Fast path for words already known to be well formed."""
    partner = pairing(tokens)
    canon, aut = canonical_tokens(partner)
    return CanonicalClass(SignedWord(canon), aut, _genus_single_face(partner))


def automorphisms(w: SignedWord) -> list[int]:
    """Rotation offsets r such that rotating by r is a sign-respecting relabeling."""
    partner = pairing(w.tokens)
    _check_signs(w.tokens, partner)
    n = len(partner)
    return [r for r in range(n)
            if all(partner[(i + r) % n] == (partner[i] + r) % n for i in range(n))]


def aut_order(w: SignedWord) -> int:
    return canonicalize(w).aut_order


def equivalent(u: SignedWord, v: SignedWord) -> bool:
    return len(u) == len(v) and canonicalize(u).canon == canonicalize(v).canon


# -- structures used in the automorphism bounds -------------------------------


@dataclass
class StructureReport:
    aut_order: int
    multiple_edges: list[tuple[int, int]]
    diagonal_edges: list[tuple[int, int]]
    automorphic_vertices: list[int]
    neighbor_pairs: list[tuple[int, int]]
    vertex_darts: list[list[int]]

    def neighbor_counts(self) -> dict[int, int]:
        counts = {v: 0 for v in self.automorphic_vertices}
        for a, b in self.neighbor_pairs:
            counts[a] += 1
            counts[b] += 1
        return counts

    def to_dict(self, w: SignedWord | None = None) -> dict:
        nm = w.name if w is not None else str
        return {
            "aut_order": self.aut_order,
            "multiple_edges": [[nm(b), nm(c)] for b, c in self.multiple_edges],
            "diagonal_edges": [[nm(b), nm(c)] for b, c in self.diagonal_edges],
            "automorphic_vertices": self.automorphic_vertices,
            "neighbor_pairs": [list(p) for p in self.neighbor_pairs],
        }


def _graph_distances(adj: list[set[int]], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def detect_structures(w: SignedWord, order: int | None = None) -> StructureReport:
    """Diagonal multiple edges (order 2) and automorphic vertices (order 3).

    A multiple edge ``(b, c)`` is diagonal when the rotation of order two maps
    the edge set ``{b, c}`` onto itself, exchanging its two corner words.  A
    vertex is automorphic when the rotation of order three permutes its three
    corners; two automorphic vertices are neighbors when their graph distance
    is exactly two.  With ``order`` given, that automorphism must exist.
    """
    n = len(w)
    autos = set(automorphisms(w))
    if order is not None and (n % order or (n // order) not in autos):
        raise NoSuchAutomorphism(f"no automorphism of order {order}")
    og = build_ordered_graph(w)
    verts = og.vertices()
    vertex_of = og.vertex_of()
    tokens = w.tokens

    ends: dict[int, list[int]] = {}
    pos: dict[int, list[int]] = {}
    for d, t in enumerate(tokens):
        pos.setdefault(t >> 1, []).append(d)
    for x, (p, q) in pos.items():
        ends[x] = sorted((vertex_of[p], vertex_of[q]))
    by_ends: dict[tuple[int, int], list[int]] = {}
    for x, e in ends.items():
        if e[0] != e[1]:
            by_ends.setdefault(tuple(e), []).append(x)
    multiple = []
    for group in by_ends.values():
        group.sort()
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                multiple.append((group[i], group[j]))
    multiple.sort()

    diagonal = []
    if order in (None, 2) and n % 2 == 0 and n // 2 in autos:
        s = n // 2
        for b, c in multiple:
            images = {tokens[(p + s) % n] >> 1 for x in (b, c) for p in pos[x]}
            if images == {b, c}:
                diagonal.append((b, c))

    automorphic = []
    pairs = []
    if order in (None, 3) and n % 3 == 0 and n // 3 in autos:
        s = n // 3
        for v, cyc in enumerate(verts):
            if {(d + s) % n for d in cyc} == set(cyc):
                automorphic.append(v)
        adj: list[set[int]] = [set() for _ in verts]
        for a, b in ends.values():
            adj[a].add(b)
            adj[b].add(a)
        for i, u in enumerate(automorphic):
            dist = _graph_distances(adj, u)
            for v in automorphic[i + 1:]:
                if dist[v] == 2:
                    pairs.append((u, v))

    return StructureReport(len(autos), multiple, diagonal, automorphic, pairs, verts)


def genus_of(w: SignedWord) -> int:
    return invariants(build_ordered_graph(w)).genus
