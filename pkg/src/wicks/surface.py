"""Embedded graphs from boundary words.

Darts are word positions (faces concatenated in input order).  Reading a face
word counterclockwise, the dart at position ``i`` runs along edge ``w[i]`` and
the face permutation sends it to the next position of the same face.  With
``xi`` the partner involution (the other occurrence of the same letter), the
vertex rotation is ``P = succ . xi``: the dart leaving the tail of ``i``
after it counterclockwise is the successor of its partner.  Then
``P . xi = succ``, so the cycles of ``P . xi`` read off the face words.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import GenusMismatch, MalformedWord, NonIntegerGenus, OrientationError
from .words import MultiWord, SignedWord, genus_from_length, pairing, validate_wicks


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = perm[k]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class OrderedGraph:
    """Rotation system (P, xi) on the half-edge set 2Q.

    ``half_edges[d]`` is the token at dart ``d``; ``xi`` pairs each dart with
    the opposite occurrence of its letter, ``rotation`` is P, ``face_succ`` is
    the face permutation ``P . xi``.
    """

    half_edges: tuple[int, ...]
    xi: tuple[int, ...]
    rotation: tuple[int, ...]
    face_succ: tuple[int, ...]
    names: tuple[str, ...] = ()

    @property
    def num_darts(self) -> int:
        return len(self.half_edges)

    def vertices(self) -> list[list[int]]:
        return cycles(self.rotation)

    def faces(self) -> list[list[int]]:
        return cycles(self.face_succ)

    def face_words(self) -> list[SignedWord]:
        return [SignedWord(tuple(self.half_edges[d] for d in f), self.names) for f in self.faces()]

    def vertex_of(self) -> list[int]:
        """Vertex index of every dart's tail."""
        label = [0] * self.num_darts
        for v, cyc in enumerate(self.vertices()):
            for d in cyc:
                label[d] = v
        return label

    def rotation_on_half_edges(self) -> dict[int, int]:
        """P written on the tokens x, x^{-1} rather than on positions."""
        h = self.half_edges
        return {h[d]: h[self.rotation[d]] for d in range(self.num_darts)}


@dataclass(frozen=True)
class SurfaceInvariants:
    V: int
    E: int
    F: int
    genus: int
    k: int | None
    cubic: bool

    def to_dict(self) -> dict:
        return {"V": self.V, "E": self.E, "F": self.F, "genus": self.genus,
                "k": self.k, "cubic": self.cubic}


def _check_letters(tokens: Sequence[int], names) -> None:
    counts = Counter(t >> 1 for t in tokens)
    signs: dict[int, set[int]] = {}
    for t in tokens:
        signs.setdefault(t >> 1, set()).add(t & 1)
    same = [k for k, c in counts.items() if c == 2 and len(signs[k]) == 1]
    if same:
        shown = [names[k] if k < len(names) else str(k) for k in same]
        raise OrientationError(f"letters occur twice with the same sign: {shown}", shown)
    bad = [k for k, c in counts.items() if c != 2]
    if bad:
        shown = [names[k] if k < len(names) else str(k) for k in bad]
        raise MalformedWord(f"letters do not occur exactly twice: {shown}")


def build_ordered_graph(m: MultiWord | SignedWord) -> OrderedGraph:
    if isinstance(m, SignedWord):
        m = MultiWord((m,))
    tokens: list[int] = []
    succ: list[int] = []
    for face in m.faces:
        if not face.tokens:
            raise MalformedWord("empty face word")
        base = len(tokens)
        n = len(face.tokens)
        tokens.extend(face.tokens)
        succ.extend(base + (i + 1) % n for i in range(n))
    if not tokens:
        raise MalformedWord("empty word")
    _check_letters(tokens, m.names)
    xi = pairing(tokens)
    rotation = [succ[xi[d]] for d in range(len(tokens))]
    fixed = [d for d in range(len(tokens)) if rotation[d] == d]
    if fixed:
        raise MalformedWord(
            f"degree-1 vertex at dart {fixed[0]}: a letter is adjacent to its own inverse")
    return OrderedGraph(tuple(tokens), tuple(xi), tuple(rotation), tuple(succ), m.names)


def invariants(og: OrderedGraph) -> SurfaceInvariants:
    verts = og.vertices()
    V = len(verts)
    E = og.num_darts // 2
    F = len(og.faces())
    chi = V - E + F
    if chi % 2:
        raise NonIntegerGenus(f"odd Euler characteristic {chi}")
    cubic = all(len(c) == 3 for c in verts)
    return SurfaceInvariants(V, E, F, (2 - chi) // 2, V // 2 if V % 2 == 0 else None, cubic)


def single_face_genus(w: SignedWord) -> int:
    """Genus of a one-face word, cross-checked against its length 12g - 6."""
    inv = invariants(build_ordered_graph(w))
    g_len = genus_from_length(len(w))
    if g_len != inv.genus or not inv.cubic:
        raise GenusMismatch(
            f"length {len(w)} gives genus {g_len}, Euler characteristic gives "
            f"{inv.genus} (cubic={inv.cubic}); reducible or non-cubic word")
    report = validate_wicks(w)
    if not report.irreducible:
        raise GenusMismatch(f"reducible pairs {report.reducible_pairs}")
    return inv.genus


def glued_vertex_degrees(m: MultiWord | SignedWord) -> list[int]:
    """Vertex degrees of the complex obtained by gluing the face polygons.

    Works directly on polygon corners with a union-find, so it also accepts
    letters glued with the same sign (a twisted, non-orientable gluing).
    Every letter must occur exactly twice.
    """
    if isinstance(m, SignedWord):
        m = MultiWord((m,))
    sides: dict[int, list[tuple[int, int]]] = {}
    offset = 0
    for face in m.faces:
        n = len(face.tokens)
        for i, t in enumerate(face.tokens):
            a, b = offset + i, offset + (i + 1) % n
            tail, head = (a, b) if not t & 1 else (b, a)
            sides.setdefault(t >> 1, []).append((tail, head))
        offset += n
    parent = list(range(offset))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, occ in sides.items():
        if len(occ) != 2:
            raise MalformedWord(f"letter id {x} occurs {len(occ)} times")
        (t1, h1), (t2, h2) = occ
        parent[find(t1)] = find(t2)
        parent[find(h1)] = find(h2)
    degree: dict[int, int] = {}
    for c in range(offset):
        r = find(c)
        degree[r] = degree.get(r, 0) + 1
    return sorted(degree.values())
