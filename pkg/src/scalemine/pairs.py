"""Weak-strong adjective pairs extracted from matched phrases."""

from __future__ import annotations

import csv
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DataError
from .patterns import MILD, INTENSE, MatchedPhrase, PatternSpec
from .tagger import AdjectiveInventory

PAIR_COLUMNS = ("weak", "strong", "phrase_id", "forum", "pattern_id")


@dataclass(frozen=True)
class WeakStrongPair:
    weak: str
    strong: str
    phrase_id: str = ""
    forum: str = ""
    pattern_id: str = ""

    @property
    def is_loop(self) -> bool:
        return self.weak == self.strong


def extract_pairs(phrase: MatchedPhrase, pattern: Optional[PatternSpec] = None) -> List[WeakStrongPair]:
    """Cartesian product of the two adjective sides, oriented by polarity.

    ``pattern`` overrides the polarity stored on the phrase.
    """
    polarity = pattern.polarity if pattern is not None else phrase.polarity
    if polarity == MILD:
        weak_side, strong_side = phrase.left_adjectives, phrase.right_adjectives
    elif polarity == INTENSE:
        weak_side, strong_side = phrase.right_adjectives, phrase.left_adjectives
    else:
        raise DataError(f"phrase {phrase.phrase_id}: unknown polarity {polarity!r}")
    pattern_id = pattern.pattern_id if pattern is not None else phrase.pattern_id
    return [WeakStrongPair(w, s, phrase.phrase_id, phrase.forum, pattern_id)
            for w, s in product(weak_side, strong_side)]


def lemmatize(surface: str, inventory: AdjectiveInventory) -> str:
    """Map an inflected adjective to its inventory lemma.

    The inventory's surface forms win; otherwise ``-ing``/``-y`` is stripped
    and the stem (with an ``e`` restored, ache <- ach) is accepted only if it
    names an inventory lemma. Anything else comes back unchanged.
    """
    word = surface.lower()
    lemma = inventory.lemma_of(word)
    if lemma is not None:
        return lemma
    for suffix in ("ing", "y"):
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            stem = word[: -len(suffix)]
            candidates = [stem, stem + "e"]
            if len(stem) > 2 and stem[-1] == stem[-2]:
                candidates.append(stem[:-1])
            for cand in candidates:
                if cand in inventory.entries:
                    return cand
    return word


@dataclass
class PairSummary:
    total: int = 0
    by_forum: Dict[str, int] = field(default_factory=dict)
    lemma_frequency: List[Tuple[str, int]] = field(default_factory=list)
    multiplicity: Dict[Tuple[str, str], Dict[str, int]] = field(default_factory=dict)
    loops: Dict[str, int] = field(default_factory=dict)

    @property
    def repeated(self) -> Dict[Tuple[str, str], Dict[str, int]]:
        return {k: v for k, v in self.multiplicity.items() if v["total"] > 1}

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "by_forum": dict(sorted(self.by_forum.items())),
            "lemma_frequency": [list(x) for x in self.lemma_frequency],
            "repeated_pairs": [
                {"pair": list(k), **v} for k, v in sorted(self.repeated.items())
            ],
            "loops": dict(sorted(self.loops.items())),
        }


def pair_statistics(pairs: Sequence[WeakStrongPair]) -> PairSummary:
    """Per-forum counts, lemma frequencies and unordered-pair multiplicities.

    A lemma's frequency is the number of pairs it takes part in. Multiplicity
    entries are keyed by the sorted lemma pair and split into ``forward``
    (first lemma weaker) and ``backward`` counts.
    """
    by_forum = Counter(p.forum for p in pairs)
    freq = Counter()
    multi: Dict[Tuple[str, str], Dict[str, int]] = defaultdict(lambda: {"total": 0, "forward": 0, "backward": 0})
    loops = Counter()
    for p in pairs:
        for lemma in {p.weak, p.strong}:
            freq[lemma] += 1
        if p.is_loop:
            loops[p.weak] += 1
        key = tuple(sorted((p.weak, p.strong)))
        entry = multi[key]
        entry["total"] += 1
        entry["forward" if (p.weak, p.strong) == key else "backward"] += 1
    return PairSummary(
        total=len(pairs),
        by_forum=dict(by_forum),
        lemma_frequency=sorted(freq.items(), key=lambda kv: (-kv[1], kv[0])),
        multiplicity=dict(multi),
        loops=dict(loops),
    )


def write_pairs(pairs: Iterable[WeakStrongPair], path) -> None:
    """Write pairs as CSV to ``path``, or to ``path`` itself if it is a text stream."""
    if hasattr(path, "write"):
        _write_pairs(pairs, path)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_pairs(pairs, fh)


def _write_pairs(pairs, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(PAIR_COLUMNS)
    for p in pairs:
        writer.writerow([p.weak, p.strong, p.phrase_id, p.forum, p.pattern_id])


def read_pairs(path) -> List[WeakStrongPair]:
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot read pairs {path}: {exc}") from exc
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"weak", "strong"} <= set(reader.fieldnames):
            raise DataError(f"{path}: pairs file needs at least 'weak' and 'strong' columns")
        return [WeakStrongPair(r["weak"], r["strong"], r.get("phrase_id") or "",
                               r.get("forum") or "", r.get("pattern_id") or "") for r in reader]
