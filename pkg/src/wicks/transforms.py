"""The three genus-raising transformations and the inductive enumerator.

Splitting a letter ``a`` turns its positive occurrence into ``a1 a2`` and its
negative one into ``a2^-1 a1^-1``; ``a1`` keeps the id of ``a``.  A site picks,
for each split letter, which occurrence receives the inserted material:
sign ``+1`` means between ``a1`` and ``a2``, sign ``-1`` between ``a2^-1`` and
``a1^-1``.  Each transformation adds six edges and lengthens the word by 12.

Fragments, with fresh letters named as in the classical description:

* alpha:  ``i d^-1 e f^-1 d h e^-1 f h^-1 i^-1`` inside one occurrence of ``a``;
* beta:   ``d^-1 e f^-1 d`` inside ``a`` and ``h e^-1 f h^-1`` inside ``b``;
* gamma:  ``U1 A1 d^-1 e B2 U3 C1 f^-1 d A2 U2 B1 e^-1 f C2 U4`` from
  ``U1 A1 A2 U2 B1 B2 U3 C1 C2 U4``.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .canonical import CanonicalClass, canonical_tokens
from .errors import BadSite, LimitExceeded
from .words import MultiWord, SignedWord, pairing

log = logging.getLogger(__name__)

GENUS_ONE = SignedWord((0, 2, 4, 1, 3, 5), ("a", "b", "c"))
DEFAULT_GENUS_LIMIT = 3

ALPHA, BETA, GAMMA = "alpha", "beta", "gamma"


@dataclass(frozen=True)
class TransformSite:
    kind: str
    letters: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        arity = {ALPHA: 1, BETA: 2, GAMMA: 3}.get(self.kind)
        if arity is None:
            raise BadSite(f"unknown transformation {self.kind!r}")
        if len(self.letters) != arity or len(self.signs) != arity:
            raise BadSite(f"{self.kind} needs {arity} letters and signs")
        if len(set(self.letters)) != arity:
            raise BadSite(f"split letters must be distinct, got {self.letters}")
        if any(s not in (1, -1) for s in self.signs):
            raise BadSite(f"signs must be +1 or -1, got {self.signs}")


def _occurrence(tokens: Sequence[int], letter: int, sign: int) -> int:
    t = 2 * letter + (sign < 0)
    try:
        return tokens.index(t)
    except ValueError:
        raise BadSite(f"letter {letter} with sign {sign:+d} does not occur") from None


def _split(tokens: Sequence[int], letters: Sequence[int], fresh: int):
    """Split each letter; returns the new tokens and for every letter the
    index in the new list of the first half of each occurrence."""
    second = {a: fresh + k for k, a in enumerate(letters)}
    out: list[int] = []
    where: dict[int, int] = {}
    for t in tokens:
        a = t >> 1
        if a in second:
            where[t] = len(out)
            b = second[a]
            out.extend((2 * a, 2 * b) if not t & 1 else (2 * b + 1, 2 * a + 1))
        else:
            out.append(t)
    return out, where


def _fresh(tokens: Sequence[int]) -> int:
    return max(t >> 1 for t in tokens) + 1


def _names(w: SignedWord, size: int) -> tuple[str, ...]:
    if not w.names:
        return ()
    used = set(w.names)
    names = list(w.names)
    k = 1
    while len(names) < size:
        while f"n{k}" in used:
            k += 1
        names.append(f"n{k}")
        used.add(f"n{k}")
    return tuple(names)


def _alpha(tokens: Sequence[int], a: int, sign: int) -> list[int]:
    _occurrence(tokens, a, sign)
    f0 = _fresh(tokens)
    out, where = _split(tokens, (a,), f0)
    d, e, f, h, i = (2 * (f0 + k) for k in range(1, 6))
    frag = [i, d + 1, e, f + 1, d, h, e + 1, f, h + 1, i + 1]
    cut = where[2 * a + (sign < 0)] + 1
    return out[:cut] + frag + out[cut:]


def _beta(tokens: Sequence[int], a: int, sa: int, b: int, sb: int) -> list[int]:
    _occurrence(tokens, a, sa)
    _occurrence(tokens, b, sb)
    f0 = _fresh(tokens)
    out, where = _split(tokens, (a, b), f0)
    d, e, f, h = (2 * (f0 + k) for k in range(2, 6))
    cuts = sorted([(where[2 * a + (sa < 0)] + 1, [d + 1, e, f + 1, d]),
                   (where[2 * b + (sb < 0)] + 1, [h, e + 1, f, h + 1])], reverse=True)
    for cut, frag in cuts:
        out[cut:cut] = frag
    return out


def _gamma(tokens: Sequence[int], letters: Sequence[int], signs: Sequence[int]) -> list[int]:
    n = len(tokens)
    pa, pb, pc = (_occurrence(tokens, x, s) for x, s in zip(letters, signs))
    if not (pb - pa) % n < (pc - pa) % n:
        raise BadSite("split occurrences are not in cyclic order a...b...c")
    rotated = list(tokens[pa:]) + list(tokens[:pa])
    f0 = _fresh(tokens)
    out, where = _split(rotated, letters, f0)
    ia, ib, ic = (where[2 * x + (s < 0)] for x, s in zip(letters, signs))
    d, e, f = (2 * (f0 + k) for k in range(3, 6))
    A1, A2 = out[ia], out[ia + 1]
    B1, B2 = out[ib], out[ib + 1]
    C1, C2 = out[ic], out[ic + 1]
    U2 = out[ia + 2:ib]
    U3 = out[ib + 2:ic]
    U4 = out[ic + 2:]
    return ([A1, d + 1, e, B2] + U3 + [C1, f + 1, d, A2] + U2
            + [B1, e + 1, f, C2] + U4)


def apply_transform(w: SignedWord, site: TransformSite) -> SignedWord:
    tokens = list(w.tokens)
    if site.kind == ALPHA:
        out = _alpha(tokens, site.letters[0], site.signs[0])
    elif site.kind == BETA:
        (a, b), (sa, sb) = site.letters, site.signs
        out = _beta(tokens, a, sa, b, sb)
    else:
        out = _gamma(tokens, site.letters, site.signs)
    return SignedWord(tuple(out), _names(w, _fresh(out)))


def apply_alpha(w: SignedWord, site: TransformSite) -> SignedWord:
    if site.kind != ALPHA:
        raise BadSite(f"expected an alpha site, got {site.kind}")
    return apply_transform(w, site)


def apply_beta(w: SignedWord, site: TransformSite) -> SignedWord:
    if site.kind != BETA:
        raise BadSite(f"expected a beta site, got {site.kind}")
    return apply_transform(w, site)


def apply_gamma(w: SignedWord, site: TransformSite) -> SignedWord:
    if site.kind != GAMMA:
        raise BadSite(f"expected a gamma site, got {site.kind}")
    return apply_transform(w, site)


def all_sites(w: SignedWord) -> Iterator[TransformSite]:
    """Every alpha, beta and gamma site of ``w`` (gamma only in cyclic order)."""
    letters = w.alphabet
    signs = (1, -1)
    for a, s in product(letters, signs):
        yield TransformSite(ALPHA, (a,), (s,))
    for (a, b), (sa, sb) in product(permutations(letters, 2), product(signs, repeat=2)):
        yield TransformSite(BETA, (a, b), (sa, sb))
    n = len(w.tokens)
    pos = {t: i for i, t in enumerate(w.tokens)}
    for trip, sg in product(permutations(letters, 3), product(signs, repeat=3)):
        pa, pb, pc = (pos[2 * x + (s < 0)] for x, s in zip(trip, sg))
        if (pb - pa) % n < (pc - pa) % n:
            yield TransformSite(GAMMA, trip, sg)


def _partner(tokens: Sequence[int]) -> list[int]:
    where: dict[int, int] = {}
    partner = [0] * len(tokens)
    for i, t in enumerate(tokens):
        j = where.pop(t >> 1, None)
        if j is None:
            where[t >> 1] = i
        else:
            partner[i], partner[j] = j, i
    return partner


def is_cubic_single_face(tokens: Sequence[int]) -> bool:
    """All vertex rotations have length three (implies irreducible, genus from length).

    Assumes every letter occurs once with each sign.
    """
    n = len(tokens)
    partner = _partner(tokens)
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        k, length = start, 0
        while not seen[k]:
            seen[k] = True
            length += 1
            k = partner[k] + 1
            if k == n:
                k = 0
        if length != 3:
            return False
    return True


def rotation_key(tokens: Sequence[int]) -> tuple[int, ...]:
    """Least rotation of the partner-offset sequence.

    Equivalent words have the same key and vice versa, so it serves as a
    cheap dedup hash before the canonical word is computed.
    """
    n = len(tokens)
    partner = _partner(tokens)
    gaps = tuple((partner[i] - i) % n for i in range(n))
    return min(gaps[r:] + gaps[:r] for r in range(n))


# -- supplementary move: insertion of two edges --------------------------------
#
# alpha, beta and gamma do not reach every class (4 of the 9 genus-2 classes
# come out of the genus-1 form).  Deleting two suitable edges of a one-face
# cubic map and suppressing the four degree-2 vertices gives a one-face map
# of one genus lower; the inverse move below subdivides edges at four points
# and joins them by two new edges, the first splitting the face and the
# second merging the halves.  Corners are addressed by the token following
# them, which is unique in a multi-face word.


def _subdivide(faces: list[list[int]], f: int, i: int, new: int):
    t = faces[f][i]
    x = t >> 1
    out = []
    for face in faces:
        nf: list[int] = []
        for u in face:
            if u == 2 * x:
                nf += (u, 2 * new)
            elif u == 2 * x + 1:
                nf += (2 * new + 1, u)
            else:
                nf.append(u)
        out.append(nf)
    corner = t if t & 1 else 2 * new
    return out, corner


def _moved(corner: int, x: int, new: int) -> int:
    # a corner just before x^-1 ends up before new^-1 once x is subdivided
    return 2 * new + 1 if corner == 2 * x + 1 else corner


def _find(faces: list[list[int]], u: int) -> tuple[int, int]:
    for f, face in enumerate(faces):
        if u in face:
            return f, face.index(u)
    raise KeyError(u)


def _connect(faces: list[list[int]], u1: int, u2: int, e: int) -> list[list[int]]:
    f1, i1 = _find(faces, u1)
    f2, i2 = _find(faces, u2)
    rest = [fc for k, fc in enumerate(faces) if k not in (f1, f2)]
    if f1 == f2:
        face = faces[f1]
        r = face[i1:] + face[:i1]
        j = (i2 - i1) % len(face)
        return rest + [r[:j] + [2 * e], r[j:] + [2 * e + 1]]
    a = faces[f1][i1:] + faces[f1][:i1]
    b = faces[f2][i2:] + faces[f2][:i2]
    return rest + [a + [2 * e] + b + [2 * e + 1]]


def insert_edges(w: SignedWord, p: int, q: int, r: int, s: int) -> MultiWord:
    """Subdivide at four points and join them by two new edges.

    ``p`` is a position of ``w``, ``q`` a position of the word after the first
    subdivision; the first new edge joins those points and splits the face.
    ``r`` and ``s`` are positions in the two resulting faces (after the third
    subdivision for ``s``); the second new edge joins them.  Returns the
    resulting multi-face word (one face when the move raises the genus).
    """
    m = _fresh(w.tokens)
    faces, cp = _subdivide([list(w.tokens)], 0, p, m)
    x = faces[0][q] >> 1
    faces, cq = _subdivide(faces, 0, q, m + 1)
    cp = _moved(cp, x, m + 1)
    faces = _connect(faces, cp, cq, m + 2)
    if len(faces) != 2:
        raise BadSite("the first new edge must split the face")
    faces, cr = _subdivide(faces, 0, r, m + 3)
    x = faces[1][s] >> 1
    faces, cs = _subdivide(faces, 1, s, m + 4)
    cr = _moved(cr, x, m + 4)
    faces = _connect(faces, cr, cs, m + 5)
    names = _names(w, m + 6)
    return MultiWord(tuple(SignedWord(tuple(f), names) for f in faces))


def _edge_insertion_children(tokens: Sequence[int]) -> Iterator[tuple[int, ...]]:
    m = _fresh(tokens)
    base = [list(tokens)]
    for p in range(len(tokens)):
        f1, cp = _subdivide(base, 0, p, m)
        for q in range(len(f1[0])):
            f2, cq = _subdivide(f1, 0, q, m + 1)
            two = _connect(f2, _moved(cp, f1[0][q] >> 1, m + 1), cq, m + 2)
            for r in range(len(two[0])):
                g1, cr = _subdivide(two, 0, r, m + 3)
                for s in range(len(g1[1])):
                    g2, cs = _subdivide(g1, 1, s, m + 4)
                    out = _connect(g2, _moved(cr, g1[1][s] >> 1, m + 4), cs, m + 5)
                    yield tuple(out[0])


BASIC_MOVES = (ALPHA, BETA, GAMMA)
ALL_MOVES = (ALPHA, BETA, GAMMA, "edges")


def _children(args) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Classes reachable from one parent by one move, keyed by rotation_key."""
    tokens, moves = args
    w = SignedWord(tokens)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    rejected = 0
    candidates: Iterable[tuple[int, ...]] = (
        apply_transform(w, site).tokens for site in all_sites(w) if site.kind in moves)
    for child in candidates:
        if is_cubic_single_face(child):
            found.setdefault(rotation_key(child), child)
        else:
            rejected += 1
    if rejected:
        log.warning("%d transformation outputs were not cubic single-face words", rejected)
    if "edges" in moves:
        for child in _edge_insertion_children(tokens):
            if is_cubic_single_face(child):
                found.setdefault(rotation_key(child), child)
    return found


def next_genus(parents: Iterable[tuple[int, ...]], workers: int = 1,
               moves: Sequence[str] = ALL_MOVES) -> dict[tuple[int, ...], int]:
    """Canonical words (with automorphism orders) one genus above ``parents``."""
    jobs = [(p, tuple(moves)) for p in sorted(parents)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_children, jobs))
    else:
        results = [_children(j) for j in jobs]
    merged: dict[tuple[int, ...], tuple[int, ...]] = {}
    for res in results:
        for key, child in res.items():
            merged.setdefault(key, child)
    out = {}
    for child in merged.values():
        canon, aut = canonical_tokens(pairing(child))
        out[canon] = aut
    return out


def enumerate_genus(g: int, limit: int = DEFAULT_GENUS_LIMIT, workers: int = 1,
                    moves: Sequence[str] = ALL_MOVES) -> list[CanonicalClass]:
    """All equivalence classes of genus-g Wicks forms, sorted by canonical word.

    ``moves`` selects the generating moves; the default adds two-edge
    insertion to alpha, beta and gamma, which is needed for completeness.
    """
    if g < 1:
        raise ValueError(f"genus must be positive, got {g}")
    if g > limit:
        raise LimitExceeded(f"genus {g} exceeds the configured limit {limit}")
    unknown = set(moves) - set(ALL_MOVES)
    if unknown:
        raise ValueError(f"unknown moves {sorted(unknown)}")
    canon, aut = canonical_tokens(pairing(GENUS_ONE.tokens))
    level = {canon: aut}
    for current in range(1, g):
        level = next_genus(level, workers, moves)
        log.info("genus %d: %d classes", current + 1, len(level))
    classes = [CanonicalClass(SignedWord(c), a, g) for c, a in level.items()]
    return sorted(classes)
