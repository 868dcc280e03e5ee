"""Intensity pattern specs and windowed scanning of tagged posts.

A pattern template is a sequence of literal slots around two adjective
positions ``X`` and ``Y``::

    X but not Y              connective only
    not X just|only Y        prefix + connective
    not X but Y enough       prefix + connective + suffix

Connective-only patterns are anchored at the connective and adjectives are
collected outward on both sides. Patterns with a prefix are anchored at the
prefix: the ``X`` run is read rightward from the prefix and the connective is
searched for after it, which lets material such as a head noun sit between
the two ("no hurting or prickling feelings just the numb tingling feeling").
Every matched phrase, literal tokens and collected adjectives included, fits
inside ``window`` tokens.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DataError
from .tagger import AdjectiveInventory, TaggedToken, format_pretagged, parse_pretagged

LOGGER = logging.getLogger(__name__)

MILD = "MILD"
INTENSE = "INTENSE"
POLARITIES = (MILD, INTENSE)
EXCLUSION_REASONS = ("WRONG_TOPIC", "WRONG_TAG", "WRONG_NOUN")

ADJ_TAGS = frozenset({"JJ", "JJR", "JJS"})
SKIP_TAGS = frozenset({"RB", "DT"})
RUN_TAGS = frozenset({"JJ", "JJR", "JJS", "RB", "CC", ","})

Slot = Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class PatternSpec:
    pattern_id: str
    polarity: str
    connective: Tuple[Slot, ...]
    prefix: Tuple[Slot, ...] = ()
    suffix: Tuple[Slot, ...] = ()
    source: str = "DEFAULT"

    def __post_init__(self):
        if self.polarity not in POLARITIES:
            raise DataError(f"pattern {self.pattern_id}: polarity must be MILD or INTENSE")
        if not 1 <= len(self.connective) <= 4:
            raise DataError(f"pattern {self.pattern_id}: connective must have 1-4 slots")
        if all(() in slot for slot in self.connective):
            raise DataError(f"pattern {self.pattern_id}: connective cannot be entirely optional")
        for slot in self.prefix + self.connective + self.suffix:
            if not slot:
                raise DataError(f"pattern {self.pattern_id}: empty alternation slot")

    @property
    def left_is_weak(self) -> bool:
        return self.polarity == MILD

    def template(self) -> str:
        def show(slots):
            return [_slot_text(s) for s in slots]
        return " ".join(show(self.prefix) + ["X"] + show(self.connective) + ["Y"] + show(self.suffix))

    def flipped(self) -> "PatternSpec":
        other = INTENSE if self.polarity == MILD else MILD
        return PatternSpec(self.pattern_id, other, self.connective, self.prefix, self.suffix, self.source)


def _slot_text(slot: Slot) -> str:
    alts = [" ".join(a) for a in slot if a]
    text = "/".join(alts)
    if () in slot:
        text = f"({text})"
    return text


def parse_slot(text: str) -> Slot:
    text = text.strip().lower()
    optional = text.endswith("?")
    if optional:
        text = text[:-1]
    parts = text.split("|")
    if not all(p.strip() for p in parts):
        raise DataError(f"empty alternative in slot {text!r}")
    alts = tuple(tuple(p.split()) for p in parts)
    return alts + ((),) if optional else alts


def parse_pattern_line(line: str, source: str = "USER") -> PatternSpec:
    fields = [f.strip() for f in line.split(";")]
    if len(fields) < 5:
        raise DataError(f"pattern line {line!r} has too few fields")
    pid, polarity, template = fields[0], fields[1].upper(), fields[2:]
    upper = [f.upper() for f in template]
    if upper.count("X") != 1 or upper.count("Y") != 1 or upper.index("X") > upper.index("Y"):
        raise DataError(f"pattern {pid}: template needs exactly one X before one Y")
    x, y = upper.index("X"), upper.index("Y")
    slots = [parse_slot(f) if i not in (x, y) else None for i, f in enumerate(template)]
    return PatternSpec(
        pattern_id=pid,
        polarity=polarity,
        prefix=tuple(slots[:x]),
        connective=tuple(slots[x + 1:y]),
        suffix=tuple(slots[y + 1:]),
        source=source,
    )


def default_patterns_path() -> Path:
    return Path(str(resources.files("scalemine") / "data" / "patterns.txt"))


def load_patterns(path=None) -> List[PatternSpec]:
    path = Path(path) if path is not None else default_patterns_path()
    source = "DEFAULT" if path == default_patterns_path() else "USER"
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read patterns {path}: {exc}") from exc
    specs, ids = [], set()
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        spec = parse_pattern_line(line, source)
        if spec.pattern_id in ids:
            raise DataError(f"duplicate pattern id {spec.pattern_id!r} in {path}")
        ids.add(spec.pattern_id)
        specs.append(spec)
    return specs


@dataclass(frozen=True)
class MatchedPhrase:
    phrase_id: str
    pattern_id: str
    polarity: str
    post_id: str
    window: Tuple[TaggedToken, ...]
    connective_span: Tuple[int, int]
    left_adjectives: Tuple[str, ...]
    right_adjectives: Tuple[str, ...]
    anchor: int = 0
    window_start: int = 0
    forum: str = ""
    left_positions: Tuple[int, ...] = ()
    right_positions: Tuple[int, ...] = ()
    literal_tokens: int = 0

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.window)

    def to_record(self) -> dict:
        return {
            "phrase_id": self.phrase_id,
            "pattern_id": self.pattern_id,
            "polarity": self.polarity,
            "post_id": self.post_id,
            "forum": self.forum,
            "anchor": self.anchor,
            "window_start": self.window_start,
            "window": format_pretagged(self.window),
            "connective_span": list(self.connective_span),
            "left": list(self.left_adjectives),
            "right": list(self.right_adjectives),
            "left_positions": list(self.left_positions),
            "right_positions": list(self.right_positions),
            "literal_tokens": self.literal_tokens,
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "MatchedPhrase":
        start = int(rec.get("window_start", 0))
        window = parse_pretagged(rec["window"], rec["post_id"])
        window = tuple(TaggedToken(t.surface, t.tag, t.post_id, start + t.index) for t in window)
        return cls(
            phrase_id=rec["phrase_id"],
            pattern_id=rec["pattern_id"],
            polarity=rec["polarity"],
            post_id=rec["post_id"],
            window=window,
            connective_span=tuple(rec["connective_span"]),
            left_adjectives=tuple(rec["left"]),
            right_adjectives=tuple(rec["right"]),
            anchor=int(rec.get("anchor", 0)),
            window_start=start,
            forum=rec.get("forum", ""),
            left_positions=tuple(rec.get("left_positions", ())),
            right_positions=tuple(rec.get("right_positions", ())),
            literal_tokens=int(rec.get("literal_tokens", 0)),
        )


def write_matches(matches: Iterable[MatchedPhrase], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for m in matches:
            fh.write(json.dumps(m.to_record(), ensure_ascii=False, sort_keys=True) + "\n")


def read_matches(path) -> List[MatchedPhrase]:
    out = []
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read matches {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            out.append(MatchedPhrase.from_record(json.loads(line)))
        except (ValueError, KeyError, TypeError) as exc:
            raise DataError(f"{path}:{lineno}: malformed match record ({exc})") from exc
    return out


def match_slots(words: Sequence[str], i: int, slots: Sequence[Slot], hi: Optional[int] = None) -> Optional[int]:
    """End index of the longest match of ``slots`` at ``i``, or None."""
    if hi is None:
        hi = len(words)
    if not slots:
        return i
    best = None
    for alt in slots[0]:
        end = i + len(alt)
        if end <= hi and tuple(words[i:end]) == alt:
            rest = match_slots(words, end, slots[1:], hi)
            if rest is not None and (best is None or rest > best):
                best = rest
    return best


class _Post:
    """Per-post scanning state for one pattern."""

    def __init__(self, tokens: Sequence[TaggedToken], pattern: PatternSpec):
        self.tokens = tokens
        self.words = [t.surface for t in tokens]
        self.tags = [t.tag for t in tokens]
        self.n = len(tokens)
        self.infix: Dict[int, int] = {}
        self.prefix: Dict[int, int] = {}
        self.covered = set()
        for i in range(self.n):
            for slots, table in ((pattern.connective, self.infix), (pattern.prefix, self.prefix),
                                 (pattern.suffix, None)):
                if not slots:
                    continue
                end = match_slots(self.words, i, slots)
                if end is not None and end > i:
                    if table is not None:
                        table[i] = end
                    self.covered.update(range(i, end))

    def collect(self, start: int, step: int, lo: int, hi: int, max_skip: int) -> Tuple[List[int], int]:
        """Adjective positions of the run reached from ``start`` moving by ``step``.

        Returns the positions and the index at which the scan stopped.
        """
        tags, covered = self.tags, self.covered
        j, skipped = start, 0
        # "sore, perhaps even heavy": a comma next to the connective is not a boundary
        if lo <= j < hi and tags[j] == ",":
            j += step
        while lo <= j < hi and j not in covered and tags[j] in SKIP_TAGS:
            skipped += 1
            if skipped > max_skip:
                return [], j
            j += step
        if not (lo <= j < hi) or j in covered or tags[j] not in ADJ_TAGS:
            return [], j
        found = []
        while lo <= j < hi and j not in covered and tags[j] in RUN_TAGS:
            if tags[j] in ADJ_TAGS:
                found.append(j)
            j += step
        return found, j


def _lemmas(post: _Post, positions: Iterable[int], inventory: AdjectiveInventory) -> List[Tuple[int, str]]:
    out = []
    for p in positions:
        lemma = inventory.lemma_of(post.words[p])
        if lemma is not None:
            out.append((p, lemma))
    return out


def _match_infix(post: _Post, c: int, e: int, inventory, window: int, max_skip: int):
    lo = max(0, e + 1 - window)
    hi = min(post.n, c + window - 1)
    left, _ = post.collect(c - 1, -1, lo, c, max_skip)
    right, _ = post.collect(e, 1, e, hi, max_skip)
    left, right = _lemmas(post, left, inventory), _lemmas(post, right, inventory)
    if not left or not right:
        return None
    a, b = left[0][0], right[0][0]
    if b - a + 1 > window:
        return None
    chosen_left, chosen_right = [left[0]], [right[0]]
    rest = [(c - p, 0, (p, lem)) for p, lem in left[1:]] + [(p - e + 1, 1, (p, lem)) for p, lem in right[1:]]
    for _, side, (p, lem) in sorted(rest):
        if side == 0 and b - p + 1 <= window:
            chosen_left.append((p, lem))
            a = p
        elif side == 1 and p - a + 1 <= window:
            chosen_right.append((p, lem))
            b = p
    return sorted(chosen_left), sorted(chosen_right), (a, b), (c, e), e - c


def _match_prefix(post: _Post, i: int, pattern: PatternSpec, inventory, window: int, max_skip: int):
    p_end = post.prefix[i]
    hi = min(post.n, i + window)
    x_run, stop = post.collect(p_end, 1, p_end, hi, max_skip)
    if not x_run:
        return None
    c = stop
    while c < hi and c not in post.infix:
        if post.tags[c] == ".":
            return None
        c += 1
    if c >= hi or post.infix[c] > hi:
        return None
    e = post.infix[c]
    y_run, stop = post.collect(e, 1, e, hi, max_skip)
    left, right = _lemmas(post, x_run, inventory), _lemmas(post, y_run, inventory)
    if not left or not right:
        return None
    b = right[-1][0]
    literal = (p_end - i) + (e - c)
    if pattern.suffix:
        s_end = match_slots(post.words, stop, pattern.suffix, hi)
        if s_end is None or s_end == stop:
            return None
        b = s_end - 1
        literal += s_end - stop
    return left, right, (i, b), (c, e), literal


def _scan_post(tokens: Sequence[TaggedToken], patterns: Sequence[PatternSpec],
               inventory: AdjectiveInventory, window: int, max_skip: int, forum: str) -> List[MatchedPhrase]:
    if not tokens:
        return []
    post_id = tokens[0].post_id
    best: Dict[Tuple, Tuple] = {}
    for order, pattern in enumerate(patterns):
        post = _Post(tokens, pattern)
        anchors = post.prefix if pattern.prefix else post.infix
        for anchor in sorted(anchors):
            if pattern.prefix:
                found = _match_prefix(post, anchor, pattern, inventory, window, max_skip)
            else:
                found = _match_infix(post, anchor, post.infix[anchor], inventory, window, max_skip)
            if found is None:
                continue
            left, right, extent, conn, literal = found
            key = (tuple(p for p, _ in left), tuple(p for p, _ in right))
            rank = (-literal, order)
            if key in best and best[key][0] <= rank:
                continue
            best[key] = (rank, anchor, order, pattern, left, right, extent, conn, literal)

    out = []
    for rank, anchor, order, pattern, left, right, (a, b), (c, e), literal in sorted(
            best.values(), key=lambda v: (v[1], v[2])):
        n = len(tokens)
        ws = a - (window - (b - a + 1)) // 2
        ws = max(0, min(ws, n - window))
        we = min(n, ws + window)
        out.append(MatchedPhrase(
            phrase_id=f"{post_id}@{anchor}:{pattern.pattern_id}",
            pattern_id=pattern.pattern_id,
            polarity=pattern.polarity,
            post_id=post_id,
            window=tuple(tokens[ws:we]),
            connective_span=(c - ws, e - ws),
            left_adjectives=tuple(lem for _, lem in left),
            right_adjectives=tuple(lem for _, lem in right),
            anchor=anchor,
            window_start=ws,
            forum=forum,
            left_positions=tuple(tokens[p].index for p, _ in left),
            right_positions=tuple(tokens[p].index for p, _ in right),
            literal_tokens=literal,
        ))
    return out


def scan(tagged_posts: Sequence[Sequence[TaggedToken]], patterns: Sequence[PatternSpec],
         inventory: AdjectiveInventory, window: int = 10, max_skip: int = 3,
         forums: Optional[Mapping[str, str]] = None) -> List[MatchedPhrase]:
    """Find pattern instances with inventory adjectives on both sides.

    Output is ordered by post (input order), then anchor index, then pattern
    order. When several patterns select exactly the same adjective tokens only
    the one covering the most literal tokens is kept (ties go to the earlier
    pattern), so overlapping templates such as ``X even Y`` and
    ``X perhaps even Y`` do not double count a phrase.
    """
    if window < 3:
        raise ValueError("window must be at least 3 tokens")
    if max_skip < 0:
        raise ValueError("max_skip must be non-negative")
    forums = forums or {}
    out = []
    for tokens in tagged_posts:
        forum = forums.get(tokens[0].post_id, "") if tokens else ""
        out.extend(_scan_post(tokens, patterns, inventory, window, max_skip, forum))
    return out


@dataclass
class ExclusionReport:
    removed: Counter = field(default_factory=Counter)
    missing: List[str] = field(default_factory=list)

    @property
    def total_removed(self) -> int:
        return sum(self.removed.values())


def read_exclusions(path) -> Dict[str, str]:
    """Phrase id -> reason code (``UNSPECIFIED`` when the line has none)."""
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read exclusions {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        reason = "UNSPECIFIED"
        if len(parts) == 2:
            reason = parts[1].upper()
            if reason not in EXCLUSION_REASONS:
                raise DataError(f"{path}:{lineno}: unknown exclusion reason {parts[1]!r}")
        elif len(parts) > 2:
            raise DataError(f"{path}:{lineno}: expected 'phrase_id [REASON]'")
        out[parts[0]] = reason
    return out


def apply_exclusions(matches: Sequence[MatchedPhrase], exclusions) -> Tuple[List[MatchedPhrase], ExclusionReport]:
    """Drop excluded phrase ids. ``exclusions`` is a file path or an id -> reason mapping."""
    if not isinstance(exclusions, Mapping):
        exclusions = read_exclusions(exclusions)
    report = ExclusionReport()
    present = {m.phrase_id for m in matches}
    for pid in exclusions:
        if pid not in present:
            LOGGER.warning("exclusion id %s does not match any phrase", pid)
            report.missing.append(pid)
    kept = []
    for m in matches:
        if m.phrase_id in exclusions:
            report.removed[exclusions[m.phrase_id]] += 1
        else:
            kept.append(m)
    return kept, report
