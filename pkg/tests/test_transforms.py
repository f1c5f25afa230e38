from collections import Counter
from fractions import Fraction

import pytest

from oracles import gap_key, oracle_classes
from wicks.canonical import canonicalize
from wicks.errors import BadSite, LimitExceeded, MalformedWord
from wicks.surface import build_ordered_graph, invariants
from wicks.transforms import (ALL_MOVES, GENUS_ONE, BASIC_MOVES, TransformSite, all_sites,
                              apply_alpha, apply_beta, apply_gamma, enumerate_genus,
                              insert_edges, is_cubic_single_face, rotation_key)
from wicks.words import SignedWord, pairing, validate_wicks


def surface(w):
    inv = invariants(build_ordered_graph(w))
    return inv.V, inv.E, inv.F, inv.genus


@pytest.mark.parametrize("sign", [1, -1])
def test_alpha_on_base_form(sign):
    w = apply_alpha(GENUS_ONE, TransformSite("alpha", (0,), (sign,)))
    assert len(w) == 18
    assert surface(w) == (6, 9, 1, 2)
    assert validate_wicks(w).ok


def test_alpha_fragment_deletion_breaks_pairing():
    w = apply_alpha(GENUS_ONE, TransformSite("alpha", (0,), (1,)))
    # the fragment follows the first half of a; dropping its first token leaves i once
    cut = w.tokens.index(0) + 2
    kept = SignedWord(w.tokens[:cut] + w.tokens[cut + 1:])
    with pytest.raises(MalformedWord):
        pairing(kept.tokens)


def test_beta_and_gamma_on_base_form():
    b = apply_beta(GENUS_ONE, TransformSite("beta", (0, 1), (1, 1)))
    assert surface(b) == (6, 9, 1, 2) and validate_wicks(b).ok
    for signs in [(1, 1, 1), (-1, 1, 1), (-1, -1, -1)]:
        g = apply_gamma(GENUS_ONE, TransformSite("gamma", (0, 1, 2), signs))
        assert surface(g) == (6, 9, 1, 2) and validate_wicks(g).ok


def test_bad_sites():
    with pytest.raises(BadSite):
        TransformSite("beta", (0, 0), (1, 1))
    with pytest.raises(BadSite):
        TransformSite("alpha", (0,), (2,))
    with pytest.raises(BadSite):
        TransformSite("delta", (0,), (1,))
    with pytest.raises(BadSite):
        # a' comes after c in "a b c a' b' c'": a, c, b is not cyclic order
        apply_gamma(GENUS_ONE, TransformSite("gamma", (0, 2, 1), (1, 1, 1)))
    with pytest.raises(BadSite):
        apply_alpha(GENUS_ONE, TransformSite("beta", (0, 1), (1, 1)))


def test_every_site_gives_genus_two():
    kinds = Counter()
    for site in all_sites(GENUS_ONE):
        w = {"alpha": apply_alpha, "beta": apply_beta, "gamma": apply_gamma}[site.kind](
            GENUS_ONE, site)
        assert is_cubic_single_face(w.tokens)
        kinds[site.kind] += 1
    assert kinds == {"alpha": 6, "beta": 24, "gamma": 24}


def test_edge_insertion_example():
    # p, q chosen so the first edge splits; r, s in the two halves
    m = insert_edges(GENUS_ONE, 0, 3, 0, 0)
    assert len(m) == 1
    w = m.faces[0]
    assert len(w) == 18 and is_cubic_single_face(w.tokens)


def test_rotation_key_is_class_invariant(genus2):
    keys = {rotation_key(c.canon.tokens) for c in genus2}
    assert len(keys) == len(genus2)
    assert keys == {gap_key(pairing(c.canon.tokens)) for c in genus2}


def test_genus_one():
    (c,) = enumerate_genus(1)
    assert c.aut_order == 6 and c.key == "a b c a' b' c'"


def test_genus_two_against_backtracking_oracle(genus2):
    oracle = oracle_classes(18)
    ours = {gap_key(pairing(c.canon.tokens)): c.aut_order for c in genus2}
    assert ours == oracle
    assert sum(Fraction(18, a) for a in ours.values()) == 105


def test_basic_moves_alone_are_incomplete():
    classes = enumerate_genus(2, moves=BASIC_MOVES)
    assert len(classes) == 4
    assert sum(Fraction(18, c.aut_order) for c in classes) < 105


def test_outputs_sorted_and_canonical(genus2):
    assert [c.key for c in genus2] == sorted(c.key for c in genus2)
    for c in genus2:
        assert canonicalize(c.canon).canon == c.canon


def test_guards():
    with pytest.raises(LimitExceeded):
        enumerate_genus(4)
    with pytest.raises(ValueError):
        enumerate_genus(0)
    with pytest.raises(ValueError):
        enumerate_genus(2, moves=("alpha", "omega"))
    assert set(BASIC_MOVES) < set(ALL_MOVES)


def test_workers_merge_deterministically(genus2):
    assert [c.key for c in enumerate_genus(2, workers=2)] == [c.key for c in genus2]


@pytest.mark.slow
def test_genus_three_histogram(genus3):
    hist = Counter(c.aut_order for c in genus3)
    assert len(genus3) == 1726
    assert hist == {1: 1615, 2: 99, 3: 11, 6: 1}
    assert sum(Fraction(30, a) for a in hist.elements()) == 50050
