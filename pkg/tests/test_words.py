import random

import pytest
from hypothesis import given, strategies as st

from wicks.canonical import equivalent
from wicks.errors import MalformedWord, OutOfRange
from wicks.words import (Letter, SignedWord, distance, format_word, genus_from_length,
                         letter_distance, pairing, parse_multiword, parse_word, reduce,
                         relabel_first_occurrence, validate_wicks)

BASE = "a b c a' b' c'"


def test_letter_inverse_and_tokens():
    x = Letter(3, 1)
    assert x.inverse() == Letter(3, -1)
    assert x.inverse().inverse() == x
    assert x.token ^ 1 == x.inverse().token
    assert Letter.from_token(x.inverse().token) == x.inverse()


def test_parse_round_trip():
    w = parse_word("foo bar' foo' bar")
    assert w.tokens == (0, 3, 1, 2)
    assert format_word(w) == "foo bar' foo' bar"


def test_parse_rejects_bad_token():
    with pytest.raises(MalformedWord):
        parse_word("a b'' a'")


def test_multiword_shares_alphabet():
    m = parse_multiword("# comment\na b\n\nb' a'\n")
    assert len(m) == 2
    assert m.faces[1].tokens == (3, 1)
    assert m.names == ("a", "b")


def test_rotation_keeps_names():
    w = parse_word(BASE).rotate(2)
    assert str(w) == "c a' b' c' a b"


def test_validate_base_form():
    r = validate_wicks(parse_word(BASE))
    assert r.ok and r.genus == 1 and r.violations() == []


def test_validate_reducible():
    w = parse_word("a b c b' a' c'")
    r = validate_wicks(w)
    assert not r.irreducible
    assert r.to_dict(w)["reducible_pairs"] == [["a", "b"]]


def test_validate_same_sign():
    w = parse_word("a a b b'")
    r = validate_wicks(w)
    assert not r.opposite_signs
    assert r.to_dict(w)["same_sign"] == ["a"]


def test_validate_multiplicity_and_empty():
    r = validate_wicks(parse_word("a b a'"))
    assert not r.each_letter_twice
    assert not validate_wicks(SignedWord(())).nonempty


def test_length_flag_is_separate():
    # irreducible and well paired, but 10 is not of the form 12g - 6
    r = validate_wicks(parse_word("a b c d e a' b' c' d' e'"))
    assert r.irreducible and r.opposite_signs and not r.length_for_genus


def test_genus_from_length():
    assert [genus_from_length(n) for n in (6, 18, 30, 12, 0)] == [1, 2, 3, None, None]


def test_reduce_examples():
    w = parse_word("a b c b' a' c'")
    assert str(reduce(w)) == "z c z' c'"
    base = parse_word(BASE)
    assert reduce(base) is base


def test_split_then_reduce_round_trip(genus2):
    rng = random.Random(7)
    for c in rng.sample(genus2, 5):
        w = c.canon
        x = rng.choice(w.alphabet)
        fresh = len(w.alphabet)
        # x -> x y, x' -> y' x'
        out = []
        for t in w.tokens:
            if t == 2 * x:
                out += [t, 2 * fresh]
            elif t == 2 * x + 1:
                out += [2 * fresh + 1, t]
            else:
                out.append(t)
        split = SignedWord(tuple(out))
        assert not validate_wicks(split).irreducible
        back = reduce(split)
        assert len(back) == len(w)
        assert sorted(pairing(back.tokens)) == list(range(len(w)))
        assert equivalent(back, w)


def test_distance_examples():
    assert distance(6, 0, 3) == 2
    assert distance(6, 0, 1) == 0
    assert distance(6, 5, 0) == 0
    with pytest.raises(OutOfRange):
        distance(6, 0, 6)
    with pytest.raises(ValueError):
        distance(6, 2, 2)


def test_long_letter_distance_when_order_two(genus2):
    # every order-2 class at genus 2 has a letter c with d(c, c') = 6g - 4
    for c in genus2:
        if c.aut_order == 2:
            assert max(letter_distance(c.canon, x) for x in c.canon.alphabet) == 8


@given(st.integers(2, 60).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_distance_symmetric_and_bounded(args):
    n, i, j = args
    if i == j:
        return
    d = distance(n, i, j)
    assert d == distance(n, j, i)
    assert 0 <= d <= (n - 2) // 2


@given(st.lists(st.integers(0, 7), min_size=1, max_size=8, unique=True), st.randoms())
def test_relabel_first_occurrence_is_dense(ids, rnd):
    tokens = [2 * i for i in ids] + [2 * i + 1 for i in ids]
    rnd.shuffle(tokens)
    out, old = relabel_first_occurrence(tokens)
    firsts = []
    for t in out:
        if t >> 1 not in firsts:
            firsts.append(t >> 1)
    assert firsts == list(range(len(ids)))
    assert [old[t >> 1] for t in out] == [t >> 1 for t in tokens]
