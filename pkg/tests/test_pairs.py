import pytest
from hypothesis import given, strategies as st

from scalemine.patterns import INTENSE, MILD, MatchedPhrase, PatternSpec
from scalemine.pairs import (WeakStrongPair, extract_pairs, lemmatize, pair_statistics, read_pairs,
                             write_pairs)


def phrase(left, right, polarity=MILD, pid="p@1:M6", forum="fm"):
    return MatchedPhrase(pid, "M6", polarity, "p", (), (0, 1), tuple(left), tuple(right), forum=forum)


def as_tuples(pairs):
    return {(p.weak, p.strong) for p in pairs}


def test_mild_phrase_with_two_left_adjectives():
    assert as_tuples(extract_pairs(phrase(["heavy", "ache"], ["burn"]))) == {("heavy", "burn"), ("ache", "burn")}


def test_intense_phrase_orientation():
    pairs = extract_pairs(phrase(["hurt", "prickle"], ["numb", "tingle"], INTENSE))
    assert as_tuples(pairs) == {("numb", "hurt"), ("numb", "prickle"), ("tingle", "hurt"), ("tingle", "prickle")}


def test_self_pair():
    (p,) = extract_pairs(phrase(["itch"], ["itch"]))
    assert p.is_loop and (p.weak, p.strong) == ("itch", "itch")


def test_pattern_argument_overrides_polarity():
    spec = PatternSpec("Z", INTENSE, ((("but",),),))
    (p,) = extract_pairs(phrase(["dull"], ["sharp"]), spec)
    assert (p.weak, p.strong, p.pattern_id) == ("sharp", "dull", "Z")


@given(st.lists(st.sampled_from(["dull", "sore", "heavy"]), min_size=1, max_size=4),
       st.lists(st.sampled_from(["hurt", "burn", "itch"]), min_size=1, max_size=4),
       st.sampled_from([MILD, INTENSE]))
def test_pair_count_is_product(left, right, polarity):
    pairs = extract_pairs(phrase(left, right, polarity))
    assert len(pairs) == len(left) * len(right)
    weak_side = set(left) if polarity == MILD else set(right)
    assert {p.weak for p in pairs} == weak_side


@pytest.mark.parametrize("surface,lemma", [
    ("itching", "itch"), ("itchy", "itch"), ("achy", "ache"), ("aching", "ache"), ("sharp", "sharp"),
    ("Stabbing", "stab"), ("table", "table"),
])
def test_lemmatize(inventory, surface, lemma):
    assert lemmatize(surface, inventory) == lemma


def test_lemmatize_rule_fallback():
    from scalemine.tagger import AdjectiveInventory, InventoryEntry
    inv = AdjectiveInventory({"ache": InventoryEntry("ache", 1, 1, ("ache",)),
                              "throb": InventoryEntry("throb", 1, 2, ("throb",))})
    assert lemmatize("achy", inv) == "ache"
    assert lemmatize("throbbing", inv) == "throb"


def test_statistics_empty():
    s = pair_statistics([])
    assert (s.total, s.by_forum, s.lemma_frequency, s.repeated, s.loops) == (0, {}, [], {}, {})


def test_statistics_hand_count():
    pairs = [WeakStrongPair("dull", "sharp", "a", "ra"), WeakStrongPair("dull", "sharp", "b", "fm"),
             WeakStrongPair("sore", "heavy", "c", "fm"), WeakStrongPair("tight", "squeeze", "d", "cp"),
             WeakStrongPair("itch", "itch", "e", "cp"), WeakStrongPair("annoy", "intense", "f", "cp")]
    s = pair_statistics(pairs)
    assert s.total == 6
    assert s.by_forum == {"ra": 1, "fm": 2, "cp": 3}
    assert s.repeated == {("dull", "sharp"): {"total": 2, "forward": 2, "backward": 0}}
    assert s.loops == {"itch": 1}
    assert s.lemma_frequency[:2] == [("dull", 2), ("sharp", 2)]


def test_statistics_direction_split():
    s = pair_statistics([WeakStrongPair("dull", "sharp")] * 3 + [WeakStrongPair("sharp", "dull")])
    assert s.multiplicity[("dull", "sharp")] == {"total": 4, "forward": 3, "backward": 1}


def test_pairs_csv_round_trip(tmp_path):
    pairs = [WeakStrongPair("dull", "sharp", "p@1:M1", "ra", "M1"), WeakStrongPair("a,b", "c", "x", "", "")]
    path = tmp_path / "pairs.csv"
    write_pairs(pairs, path)
    assert read_pairs(path) == pairs
    assert path.read_text().splitlines()[0] == "weak,strong,phrase_id,forum,pattern_id"
