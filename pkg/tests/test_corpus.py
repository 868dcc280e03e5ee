import json
import statistics

import pytest
from hypothesis import given, strategies as st

from scalemine.corpus import Post, compute_stats, load_corpus, tokenize, write_records
from scalemine.errors import DataError
from scalemine.tagger import TaggedToken, parse_pretagged

PUNCT_TAGS = {".", ",", ":", "(", ")", "``", "''", "#", "$", "SYM"}


def _tagged(words):
    return [TaggedToken(w, "NN", "p", i) for i, w in enumerate(words)]


def test_load_plain_lines(tmp_path):
    path = tmp_path / "forum.txt"
    path.write_text("one post\nsecond post\nthird\n", encoding="utf-8")
    result = load_corpus(path)
    assert [p.post_id for p in result] == ["forum:0", "forum:1", "forum:2"]
    assert all(p.forum == "forum" for p in result)


def test_blank_line_dropped(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("a\n\nb\nc\n", encoding="utf-8")
    result = load_corpus(path)
    assert len(result) == 3
    assert result.empty_dropped == 1


def test_record_lines_round_trip(tmp_path):
    posts = [Post(f"id-{i}", "ra" if i % 2 else "fm", f"text number {i}") for i in range(10)]
    path = tmp_path / "r.jsonl"
    write_records(posts, path)
    assert load_corpus(path, "record-lines").posts == posts


def test_malformed_records_counted(tmp_path):
    path = tmp_path / "r.jsonl"
    lines = [json.dumps({"id": "a", "forum": "x", "text": "fine"}), "{broken", json.dumps({"forum": "x"}),
             json.dumps({"id": "a", "forum": "x", "text": "dup"}), json.dumps({"id": "b", "text": "ok"})]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    result = load_corpus(path, "record-lines")
    assert [p.post_id for p in result] == ["a", "b"]
    assert result.malformed == 3
    assert "r.jsonl:2" in result.errors[0]


def test_html_stripped_and_correction_hook(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("<p>achy <b>leggs</b></p>\n", encoding="utf-8")
    result = load_corpus(path, correct=lambda t: t.replace("leggs", "legs"))
    assert tokenize(result.posts[0].text) == ["achy", "legs"]


def test_missing_file_and_bad_format(tmp_path):
    with pytest.raises(DataError):
        load_corpus(tmp_path / "nope.txt")
    with pytest.raises(DataError):
        load_corpus(tmp_path / "nope.txt", "xml")


def test_invalid_utf8(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"caf\xe9\n")
    with pytest.raises(DataError):
        load_corpus(path)


def test_tokenize_basic():
    assert tokenize("Warm but not hot.") == ["warm", "but", "not", "hot", "."]
    assert tokenize("it's") == ["it", "'s"]
    assert tokenize("") == []


def test_tokenize_hand_fixture(fixtures_dir):
    rows = [l.rstrip("\n").split("\t") for l in (fixtures_dir / "tokenized.tsv").read_text().splitlines()
            if l and not l.startswith("#")]
    assert len(rows) == 50
    for text, expected in rows:
        assert tokenize(text) == expected.split(), text


@given(st.text(alphabet=st.characters(codec="utf-8", exclude_categories=("Cs",)), max_size=80))
def test_tokenize_idempotent(text):
    tokens = tokenize(text)
    assert all(tokens)
    assert tokenize(" ".join(tokens)) == tokens


def test_stats_arithmetic():
    posts = [Post("a", "f", ""), Post("b", "f", "")]
    tagged = [_tagged(["w1", "w2", "w3", "w4"]), _tagged(["w5", "w6", "w7", "w8", "w9", "w10"])]
    s = compute_stats(posts, tagged)
    assert (s.total_words, s.mean_post_length, s.median_post_length) == (10, 5, 5)
    assert s.post_length_range == (4, 6)
    assert s.type_token_percent == 100.0


def test_stats_repeated_word():
    s = compute_stats([Post("a", "f", "")], [_tagged(["big", "big", "dog"])])
    assert (s.total_words, s.unique_tokens) == (3, 2)
    assert round(s.type_token_percent, 1) == 66.7


def test_stats_errors():
    with pytest.raises(DataError):
        compute_stats([], [])
    with pytest.raises(DataError):
        compute_stats([Post("a", "f", "")], [])


def test_stats_against_column_oracle(fixtures_dir):
    lines = (fixtures_dir / "stats_posts.tagged").read_text().splitlines()
    assert len(lines) == 20
    posts = [Post(f"s:{i}", "s", l) for i, l in enumerate(lines)]
    tagged = [parse_pretagged(l, p.post_id) for l, p in zip(lines, posts)]

    # spreadsheet-style oracle: one row per token, columns word and tag
    rows = [[item.rpartition("/")[::2] for item in l.split()] for l in lines]
    words = [[(w, t) for w, t in r if t not in PUNCT_TAGS] for r in rows]
    lengths = [len(r) for r in words]
    flat = [w for r in words for w, _ in r]
    adjs = [w for r in words for w, t in r if t in ("JJ", "JJR", "JJS")]

    s = compute_stats(posts, tagged)
    assert s.total_words == sum(lengths)
    assert s.mean_post_length == pytest.approx(statistics.mean(lengths))
    assert s.median_post_length == statistics.median(lengths)
    assert s.post_length_range == (min(lengths), max(lengths))
    assert s.unique_tokens == len(set(flat))
    assert s.type_token_ratio == pytest.approx(len(set(flat)) / len(flat))
    assert s.total_adjectives == len(adjs)
    assert s.unique_adjectives == len(set(adjs))


@given(st.lists(st.lists(st.sampled_from(["sharp", "dull", "pain", "it", "is"]), min_size=1, max_size=8),
                min_size=1, max_size=12), st.randoms())
def test_stats_permutation_invariant(docs, rnd):
    posts = [Post(str(i), "f", "") for i in range(len(docs))]
    tagged = [_tagged(d) for d in docs]
    order = list(range(len(docs)))
    rnd.shuffle(order)
    a = compute_stats(posts, tagged)
    b = compute_stats([posts[i] for i in order], [tagged[i] for i in order])
    assert a.as_dict() == b.as_dict()
    assert a.total_words == sum(len(d) for d in docs)
    assert a.post_length_range[0] <= a.median_post_length <= a.post_length_range[1]
    assert a.unique_adjectives <= a.total_adjectives <= a.total_words
