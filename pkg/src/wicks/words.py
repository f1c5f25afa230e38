"""Cyclic signed words, Wicks-form validation and reduction.

A word is stored as a tuple of integer *tokens*: letter ``id`` with sign
``+1`` is token ``2*id`` and its inverse is ``2*id + 1``, so ``t ^ 1`` inverts
a token.  Ids are dense and assigned by first occurrence when parsing; the
original identifiers are kept in ``names`` so that serialization round-trips.

Text format::

    word   := token (whitespace token)*
    token  := [A-Za-z_][A-Za-z0-9_]* "'"?

A trailing apostrophe marks the inverse letter, e.g. ``a b c a' b' c'``.
"""
from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import MalformedWord, OutOfRange

WORD_GRAMMAR = (
    "word := token (whitespace token)*; "
    "token := identifier [A-Za-z_][A-Za-z0-9_]* optionally followed by a single "
    "apostrophe marking the inverse, e.g. \"a b c a' b' c'\""
)

_TOKEN_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)('?)$")


class Letter(NamedTuple):
    id: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.id, -self.sign)

    @property
    def token(self) -> int:
        return 2 * self.id + (self.sign < 0)

    @classmethod
    def from_token(cls, t: int) -> "Letter":
        return cls(t >> 1, -1 if t & 1 else 1)


def generated_name(i: int) -> str:
    """Default letter names: ``a`` .. ``z``, then ``x1``, ``x2``, ..."""
    if i < 26:
        return string.ascii_lowercase[i]
    return f"x{i - 25}"


@dataclass(frozen=True)
class SignedWord:
    """Cyclic word over an abstract alphabet."""

    tokens: tuple[int, ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_letters(cls, letters: Iterable[Letter], names: Sequence[str] = ()) -> "SignedWord":
        return cls(tuple(Letter(*x).token for x in letters), tuple(names))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter.from_token(t) for t in self.tokens)

    def __getitem__(self, i: int) -> Letter:
        return Letter.from_token(self.tokens[i % len(self.tokens)])

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(self)

    @property
    def alphabet(self) -> list[int]:
        return sorted({t >> 1 for t in self.tokens})

    def name(self, letter_id: int) -> str:
        if letter_id < len(self.names):
            return self.names[letter_id]
        return generated_name(letter_id)

    def rotate(self, r: int) -> "SignedWord":
        n = len(self.tokens)
        if n == 0:
            return self
        r %= n
        return SignedWord(self.tokens[r:] + self.tokens[:r], self.names)

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class MultiWord:
    """One boundary word per face, over a shared alphabet."""

    faces: tuple[SignedWord, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return self.faces[0].names if self.faces else ()

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[SignedWord]:
        return iter(self.faces)

    def __str__(self) -> str:
        return "\n".join(format_word(f) for f in self.faces)


def _tokenize(text: str, ids: dict[str, int]) -> list[int]:
    out = []
    for raw in text.split():
        m = _TOKEN_RE.match(raw)
        if m is None:
            raise MalformedWord(f"bad token {raw!r}; expected {WORD_GRAMMAR}")
        name, prime = m.groups()
        letter_id = ids.setdefault(name, len(ids))
        out.append(2 * letter_id + (1 if prime else 0))
    return out


def _names_of(ids: dict[str, int]) -> tuple[str, ...]:
    return tuple(sorted(ids, key=ids.__getitem__))


def parse_word(text: str) -> SignedWord:
    ids: dict[str, int] = {}
    tokens = _tokenize(text, ids)
    return SignedWord(tuple(tokens), _names_of(ids))


def parse_multiword(text: str) -> MultiWord:
    """Parse one face word per line; blank lines and ``#`` comments are skipped."""
    ids: dict[str, int] = {}
    faces = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            faces.append(_tokenize(line, ids))
    names = _names_of(ids)
    return MultiWord(tuple(SignedWord(tuple(f), names) for f in faces))


def format_word(w: SignedWord) -> str:
    parts = []
    for t in w.tokens:
        parts.append(w.name(t >> 1) + ("'" if t & 1 else ""))
    return " ".join(parts)


def pairing(tokens: Sequence[int]) -> list[int]:
    """Partner position of every position (the other occurrence of its letter).

    Raises MalformedWord unless every letter occurs exactly twice.
    """
    counts = Counter(t >> 1 for t in tokens)
    bad = sorted(k for k, c in counts.items() if c != 2)
    if bad:
        raise MalformedWord(f"letters {bad} do not occur exactly twice")
    return _partial_pairing(tokens)


def relabel_first_occurrence(tokens: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    """Relabel so the first new letter is id 0 with sign +1, and so on.

    Returns the new tokens and ``old_ids`` with ``old_ids[new] = old``.
    """
    new_id: dict[int, int] = {}
    flip: dict[int, int] = {}
    out = []
    for t in tokens:
        old = t >> 1
        if old not in new_id:
            new_id[old] = len(new_id)
            flip[old] = t & 1
        out.append(2 * new_id[old] + ((t & 1) ^ flip[old]))
    return tuple(out), sorted(new_id, key=new_id.__getitem__)


# -- validation -------------------------------------------------------------


@dataclass
class ValidationReport:
    length: int
    nonempty: bool
    each_letter_twice: bool
    opposite_signs: bool
    irreducible: bool
    length_for_genus: bool
    genus: int | None
    bad_multiplicity: list[int] = field(default_factory=list)
    same_sign: list[int] = field(default_factory=list)
    reducible_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.nonempty and self.each_letter_twice and self.opposite_signs
                and self.irreducible and self.length_for_genus)

    def violations(self) -> list[str]:
        names = ("nonempty", "each_letter_twice", "opposite_signs", "irreducible",
                 "length_for_genus")
        return [n for n in names if not getattr(self, n)]

    def to_dict(self, w: SignedWord | None = None) -> dict:
        nm = w.name if w is not None else str
        return {
            "ok": self.ok,
            "length": self.length,
            "genus": self.genus,
            "nonempty": self.nonempty,
            "each_letter_twice": self.each_letter_twice,
            "opposite_signs": self.opposite_signs,
            "irreducible": self.irreducible,
            "length_for_genus": self.length_for_genus,
            "bad_multiplicity": [nm(i) for i in self.bad_multiplicity],
            "same_sign": [nm(i) for i in self.same_sign],
            "reducible_pairs": [[nm(x), nm(y)] for x, y in self.reducible_pairs],
            "violations": self.violations(),
        }


def genus_from_length(n: int) -> int | None:
    """Genus g with n = 12g - 6, or None if n has no such form."""
    if n >= 6 and (n + 6) % 12 == 0:
        return (n + 6) // 12
    return None


def _reducible_at(tokens: Sequence[int], partner: Sequence[int], i: int) -> bool:
    """Whether the letters at i, i+1 form a reducible pair (xy)^{+-1}."""
    n = len(tokens)
    j = (i + 1) % n
    x, y = tokens[i], tokens[j]
    if x >> 1 == y >> 1:
        return False
    px, py = partner[i], partner[j]
    if px < 0 or py < 0 or tokens[px] != x ^ 1 or tokens[py] != y ^ 1:
        return False
    return (py + 1) % n == px


def _partial_pairing(tokens: Sequence[int]) -> list[int]:
    positions: dict[int, list[int]] = {}
    for i, t in enumerate(tokens):
        positions.setdefault(t >> 1, []).append(i)
    partner = [-1] * len(tokens)
    for pos in positions.values():
        if len(pos) == 2:
            partner[pos[0]], partner[pos[1]] = pos[1], pos[0]
    return partner


def reducible_pairs(w: SignedWord) -> list[tuple[int, int]]:
    """Reducible letter pairs in order of their first position."""
    tokens = w.tokens
    partner = _partial_pairing(tokens)
    seen = set()
    out = []
    for i in range(len(tokens)):
        if _reducible_at(tokens, partner, i):
            pair = (tokens[i] >> 1, tokens[(i + 1) % len(tokens)] >> 1)
            if frozenset(pair) not in seen:
                seen.add(frozenset(pair))
                out.append(pair)
    return out


def validate_wicks(w: SignedWord) -> ValidationReport:
    """Check the Wicks-form conditions; never raises."""
    n = len(w.tokens)
    counts = Counter(t >> 1 for t in w.tokens)
    bad = sorted(k for k, c in counts.items() if c != 2)
    signs: dict[int, set[int]] = {}
    for t in w.tokens:
        signs.setdefault(t >> 1, set()).add(t & 1)
    same = sorted(k for k, c in counts.items() if c == 2 and len(signs[k]) == 1)
    pairs = reducible_pairs(w)
    genus = genus_from_length(n)
    return ValidationReport(
        length=n,
        nonempty=n > 0,
        each_letter_twice=not bad,
        opposite_signs=not same,
        irreducible=not pairs,
        length_for_genus=genus is not None,
        genus=genus,
        bad_multiplicity=bad,
        same_sign=same,
        reducible_pairs=pairs,
    )


def _fresh_name(used: set[str]) -> str:
    if "z" not in used:
        return "z"
    k = 1
    while f"z{k}" in used:
        k += 1
    return f"z{k}"


def reduce(w: SignedWord) -> SignedWord:
    """Replace reducible pairs by fresh letters until the word is irreducible.

    The pair starting at the smallest position is always reduced first.  The
    result is relabeled densely by first occurrence; surviving letters keep
    their names and fresh letters are called ``z``, ``z1``, ...
    """
    tokens = list(w.tokens)
    names = [w.name(i) for i in range(max((t >> 1 for t in tokens), default=-1) + 1)]
    changed = False
    while True:
        partner = pairing(tokens)
        n = len(tokens)
        site = next((i for i in range(n) if _reducible_at(tokens, partner, i)), None)
        if site is None:
            break
        changed = True
        z = len(names)
        names.append(_fresh_name(set(names)))
        sign = tokens[site] & 1
        second_x = partner[site]            # x^{-1}, preceded by y^{-1}
        first_y = (second_x - 1) % n
        drop = {(site + 1) % n, second_x}
        new = []
        for k, t in enumerate(tokens):
            if k == site:
                new.append(2 * z + sign)
            elif k == first_y:
                new.append(2 * z + (sign ^ 1))
            elif k not in drop:
                new.append(t)
        tokens = new
    if not changed:
        return w
    # dense ids by first occurrence, signs untouched
    order: dict[int, int] = {}
    for t in tokens:
        order.setdefault(t >> 1, len(order))
    out = tuple(2 * order[t >> 1] + (t & 1) for t in tokens)
    return SignedWord(out, tuple(names[old] for old in order))


def distance(w: SignedWord | int, i: int, j: int) -> int:
    """Length of the shorter open arc between positions i and j of the cycle."""
    n = w if isinstance(w, int) else len(w)
    if not (0 <= i < n and 0 <= j < n):
        raise OutOfRange(f"positions {i}, {j} outside word of length {n}")
    if i == j:
        raise ValueError("distance needs two distinct positions")
    d = abs(i - j)
    return min(d - 1, n - d - 1)


def letter_distance(w: SignedWord, letter_id: int) -> int:
    """d(x, x^{-1}) for the two occurrences of a letter."""
    pos = [k for k, t in enumerate(w.tokens) if t >> 1 == letter_id]
    if len(pos) != 2:
        raise MalformedWord(f"letter {w.name(letter_id)} does not occur exactly twice")
    return distance(w, pos[0], pos[1])
