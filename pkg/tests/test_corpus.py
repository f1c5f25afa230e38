import pytest

from wicks.corpus import list_examples, load_correction, load_example, verify_example


def test_all_examples_load():
    names = list_examples()
    assert names == ["f2k12", "f3k10", "f4k9", "f6k8", "f12k7"]
    for name in names:
        e = load_example(name)
        assert len(e.words) == e.f


def test_unknown_example():
    with pytest.raises(KeyError):
        load_example("f5k5")


def test_two_faces_of_twelve():
    r = verify_example(load_example("f2k12"))
    assert r["ok"] and r["orientable"]
    assert r["invariants"] == {"V": 8, "E": 12, "F": 2, "genus": 2, "k": 4, "cubic": True}
    assert r["euler_relation"]["k == 2g + f - 2"]
    assert r["letter_occurrences"] == 2 * 12 and r["letters"] == 12


def test_triple_occurrence_reported():
    r = verify_example(load_example("f3k10"))
    assert not r["ok"]
    assert r["multiplicity_violations"]["a1"] == 3
    assert "letter a1 occurs 3 times" in r["findings"]
    assert r["invariants"] is None


def test_same_sign_pair_reported_with_both_readings():
    r = verify_example(load_example("f4k9"))
    assert r["same_sign_letters"] == ["a10"]
    assert not r["orientable"]
    assert set(r["readings"]) == {"misprinted_exponent", "twisted_gluing"}
    tw = r["readings"]["twisted_gluing"]
    assert tw["E"] == 18 and tw["F"] == 4


def test_twelve_heptagons():
    e = load_example("f12k7")
    r = verify_example(e)
    assert r["regular_polygon"]["feasible"]
    assert r["regular_polygon"]["side_length"] > 0
    assert r["letters"] == 42 and r["faces"] == 12
    # as printed, one face has six letters and a19 appears once
    assert r["face_lengths"].count(6) == 1
    assert r["multiplicity_violations"] == {"a19": 1}


def test_data_is_not_repaired():
    # loading twice gives the same printed words; nothing is normalized away
    a = load_example("f3k10").words
    b = load_example("f3k10").words
    assert str(a) == str(b)
    tokens = str(a).split()
    assert sum(t.rstrip("'") == "a1" for t in tokens) == 3


def test_corrected_variant(tmp_path):
    # a sidecar that reuses the f2k12 words under another name is verified identically
    side = tmp_path / "fix.txt"
    side.write_text(str(load_example("f2k12").words))
    e = load_correction("f2k12", side)
    r = verify_example(e)
    assert r["variant"] == "corrected variant" and r["ok"]
