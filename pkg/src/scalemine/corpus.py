"""Corpus ingestion, tokenization and descriptive statistics."""

from __future__ import annotations

import json
import logging
import re
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import DataError

LOGGER = logging.getLogger(__name__)

FORMATS = ("plain-lines", "record-lines")
ADJECTIVE_TAGS = frozenset({"JJ", "JJR", "JJS"})

_HTML_TAG = re.compile(r"<[^>]{0,200}>")
_NEGATION_CLITIC = re.compile(r"(?<=[^\W_])n't\b")
_TOKEN = re.compile(
    r"""
    n't(?![^\W_])                       # negation clitic, split off beforehand
    | '(?:s|re|ve|ll|d|m|t)(?![^\W_])   # other clitics
    | \d+(?:[.,:]\d+)*[^\W_]*(?:-[^\W_]+)*  # numbers, times, decimals, units
    | [^\W_]+(?:-[^\W_]+)*              # words, hyphenated compounds
    | \.{2,}                            # ellipsis
    | [^\w\s]                           # any other single symbol
    """,
    re.VERBOSE,
)
_PUNCT = re.compile(r"^[^\w]+$")


@dataclass(frozen=True)
class Post:
    post_id: str
    forum: str
    text: str


@dataclass
class LoadResult:
    """Posts read from one file plus the bookkeeping counts."""

    posts: List[Post] = field(default_factory=list)
    empty_dropped: int = 0
    malformed: int = 0
    errors: List[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.posts)

    def __len__(self):
        return len(self.posts)


@dataclass(frozen=True)
class CorpusStats:
    total_words: int
    mean_post_length: float
    median_post_length: float
    post_length_range: Tuple[int, int]
    unique_tokens: int
    type_token_ratio: float
    total_adjectives: int
    unique_adjectives: int

    @property
    def type_token_percent(self) -> float:
        return 100.0 * self.type_token_ratio

    def as_dict(self) -> dict:
        return {
            "total_words": self.total_words,
            "mean_post_length": self.mean_post_length,
            "median_post_length": self.median_post_length,
            "post_length_range": list(self.post_length_range),
            "unique_tokens": self.unique_tokens,
            "type_token_ratio_percent": round(self.type_token_percent, 4),
            "total_adjectives": self.total_adjectives,
            "unique_adjectives": self.unique_adjectives,
        }


def strip_html(text: str) -> str:
    return _HTML_TAG.sub(" ", text)


def load_corpus(
    path,
    format: str = "plain-lines",
    forum: Optional[str] = None,
    correct: Optional[Callable[[str], str]] = None,
) -> LoadResult:
    """Read posts from ``path`` in file order.

    ``plain-lines`` files hold one post per line; ids are ``<stem>:<line index>``
    and the forum defaults to the file stem. ``record-lines`` files hold one
    JSON object per line with the fields ``id``, ``forum`` and ``text``.
    Malformed records are logged and counted, not raised. ``correct`` is an
    optional typo-correction pass applied to each text.
    """
    if format not in FORMATS:
        raise DataError(f"unknown corpus format {format!r}; expected one of {FORMATS}")
    path = Path(path)
    try:
        raw = path.read_bytes().decode("utf-8")
    except OSError as exc:
        raise DataError(f"cannot read corpus {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise DataError(f"corpus {path} is not valid UTF-8: {exc}") from exc

    stem = path.stem
    result = LoadResult()
    seen = set()
    for lineno, line in enumerate(raw.splitlines()):
        if format == "plain-lines":
            post_id, post_forum, text = f"{stem}:{lineno}", forum or stem, line
        else:
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                post_id = str(record["id"])
                post_forum = str(record.get("forum") or forum or stem)
                text = record["text"]
                if not isinstance(text, str):
                    raise TypeError("text is not a string")
            except (ValueError, KeyError, TypeError) as exc:
                msg = f"{path}:{lineno + 1}: malformed record ({exc})"
                LOGGER.warning(msg)
                result.errors.append(msg)
                result.malformed += 1
                continue
        text = strip_html(text)
        if correct is not None:
            text = correct(text)
        if not text.strip():
            result.empty_dropped += 1
            continue
        if post_id in seen:
            msg = f"{path}:{lineno + 1}: duplicate post id {post_id!r}"
            LOGGER.warning(msg)
            result.errors.append(msg)
            result.malformed += 1
            continue
        seen.add(post_id)
        result.posts.append(Post(post_id, post_forum, text))
    return result


def write_records(posts: Iterable[Post], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for post in posts:
            fh.write(json.dumps({"id": post.post_id, "forum": post.forum, "text": post.text},
                                ensure_ascii=False))
            fh.write("\n")


def tokenize(text: str) -> List[str]:
    """Lowercase ``text`` and split it into word, clitic and punctuation tokens."""
    text = text.replace("’", "'").replace("‘", "'").lower()
    text = _NEGATION_CLITIC.sub(" n't", text)
    return _TOKEN.findall(text)


def is_punctuation(token: str) -> bool:
    return bool(_PUNCT.match(token))


def word_tokens(tokens: Iterable[str]) -> List[str]:
    return [t for t in tokens if not is_punctuation(t)]


def compute_stats(posts: Sequence[Post], tagged: Sequence[Sequence]) -> CorpusStats:
    """Descriptive statistics over tagged posts; punctuation is not counted as words."""
    if len(posts) != len(tagged):
        raise DataError(f"{len(posts)} posts but {len(tagged)} tagged sequences")
    if not posts:
        raise DataError("cannot compute statistics for an empty corpus")

    lengths = []
    types = set()
    adjectives = 0
    adjective_types = set()
    for seq in tagged:
        words = [tok for tok in seq if not is_punctuation(tok.surface)]
        lengths.append(len(words))
        for tok in words:
            types.add(tok.surface)
            if tok.tag in ADJECTIVE_TAGS:
                adjectives += 1
                adjective_types.add(tok.surface)

    total = sum(lengths)
    if total == 0:
        raise DataError("corpus contains no words")
    return CorpusStats(
        total_words=total,
        mean_post_length=total / len(lengths),
        median_post_length=float(statistics.median(lengths)),
        post_length_range=(min(lengths), max(lengths)),
        unique_tokens=len(types),
        type_token_ratio=len(types) / total,
        total_adjectives=adjectives,
        unique_adjectives=len(adjective_types),
    )
