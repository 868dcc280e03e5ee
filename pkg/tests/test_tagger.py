import json

import pytest
from hypothesis import given, strategies as st

from scalemine.corpus import tokenize
from scalemine.errors import DataError
from scalemine.tagger import (TAGSET, TaggedToken, Tagger, apply_ing_override, apply_inventory_override,
                              format_pretagged, load_inventory, parse_pretagged, tag)

_INV = load_inventory()


def tags(seq):
    return [t.tag for t in seq]


def test_base_tags():
    assert tags(tag(["the", "pain", "is", "sharp"])) == ["DT", "NN", "VBZ", "JJ"]
    assert tags(tag(["cats"])) == ["NNS"]
    assert tag([]) == []


def test_suffix_rules_and_default():
    assert tags(tag(["quickly", "blorping", "zorbed", "fluffiest", "glorpful", "zonks", "blick"])) == \
        ["RB", "VBG", "VBD", "JJS", "JJ", "NNS", "NN"]


def test_indices_strictly_increasing():
    seq = tag(tokenize("It hurts, a lot."), "p1")
    assert [t.index for t in seq] == list(range(len(seq)))
    assert all(t.post_id == "p1" and t.lemma == t.surface for t in seq)


def test_hand_tagged_accuracy(fixtures_dir, tagger):
    total = correct = 0
    lines = (fixtures_dir / "hand_tagged.txt").read_text().splitlines()
    assert len(lines) == 100
    for line in lines:
        gold = parse_pretagged(line)
        pred = tagger([t.surface for t in gold])
        total += len(gold)
        correct += sum(g.tag == p.tag for g, p in zip(gold, pred))
    assert correct / total >= 0.90


def test_ing_override():
    seq = parse_pretagged("a/DT deep/JJ burning/NN pain/NN")
    assert tags(apply_ing_override(seq)) == ["DT", "JJ", "JJ", "NN"]
    seq = parse_pretagged("burning/VB in/IN the/DT hallway/NN")
    assert apply_ing_override(seq) == seq
    seq = parse_pretagged("singing/VB loudly/RB")
    assert apply_ing_override(seq) == seq


def test_ing_override_skips_monomorphemic_words():
    seq = parse_pretagged("every/DT morning/NN pain/NN")
    assert apply_ing_override(seq) == seq


def test_inventory_override(inventory):
    audit = []
    seq = parse_pretagged("hurting/VBG table/NN sore/NN", "p")
    out = apply_inventory_override(seq, inventory, audit)
    assert tags(out) == ["JJ", "NN", "JJ"]
    assert audit == [("p", 0, "hurting", "VBG"), ("p", 2, "sore", "NN")]


def test_every_inventory_form_is_adjective_after_pipeline(fixtures_dir, tagger, inventory):
    for line in (fixtures_dir / "forum_corpus.jsonl").read_text().splitlines():
        try:
            text = json.loads(line)["text"]
        except ValueError:
            continue
        for tok in tagger(tokenize(text)):
            if tok.surface in inventory.surface_forms:
                assert tok.tag == "JJ", tok


@given(st.lists(st.sampled_from(["the", "burning", "pain", "sore", "is", "not", "thing", "aching", "legs",
                                 "quickly", "morning", ",", "hurting", "tables"]), max_size=12))
def test_override_pipeline_idempotent(words):
    inventory = _INV
    tagger = Tagger(inventory=inventory)
    once = tagger(words)
    twice = apply_inventory_override(apply_ing_override(once), inventory)
    assert twice == once
    base = tagger.tag(words)
    for b, o in zip(base, apply_inventory_override(base, inventory)):
        if b.surface not in inventory.surface_forms:
            assert b == o


def test_parse_pretagged():
    seq = parse_pretagged("the/DT pain/NN")
    assert seq == [TaggedToken("the", "DT", "", 0), TaggedToken("pain", "NN", "", 1)]
    assert parse_pretagged("heavy/jj 1/2/CD")[1] == TaggedToken("1/2", "CD", "", 1)
    with pytest.raises(DataError):
        parse_pretagged("pain")
    with pytest.raises(DataError):
        parse_pretagged("pain/XYZ")


def test_pretagged_round_trip(fixtures_dir):
    for line in (fixtures_dir / "hand_tagged.txt").read_text().splitlines():
        assert format_pretagged(parse_pretagged(line)) == line


def test_inventory_shape(inventory):
    assert len(inventory) == 78
    cats = inventory.categories()
    assert sorted(cats) == list(range(1, 21))
    assert all(2 <= len(v) <= 6 for v in cats.values())
    assert inventory.lemma_of("itchy") == inventory.lemma_of("itching") == "itch"


def test_inventory_validation(tmp_path):
    path = tmp_path / "inv.csv"
    path.write_text("a, 1, 1, a\nb, 1, 3, b\n")
    with pytest.raises(DataError):
        load_inventory(path)
    path.write_text("a, 1, 1, a\n")
    with pytest.raises(DataError):
        load_inventory(path)
    path.write_text("a, 1, 1, x\nb, 1, 2, x\n")
    with pytest.raises(DataError):
        load_inventory(path)


def test_tagset_closed():
    assert {"CC", "DT", "IN", "JJ", "JJR", "JJS", "MD", "NN", "NNS", "RB", "VB"} <= TAGSET
