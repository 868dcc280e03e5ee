"""Lexicon-plus-rules part-of-speech tagging with adjective overrides.

The base tagger resolves a token in this order: punctuation and numbers,
closed-class word lists, the shipped frequency lexicon, suffix rules, and
finally ``NN``. Two overrides then repair the error classes that matter for
pattern matching: ``-ing`` words directly before a noun become ``JJ``, and
every inflected form listed in the adjective inventory becomes ``JJ``.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DataError

TAGSET = frozenset("""
CC CD DT EX FW IN JJ JJR JJS LS MD NN NNS NNP NNPS PDT POS PRP PRP$ RB RBR RBS RP
SYM TO UH VB VBD VBG VBN VBP VBZ WDT WP WP$ WRB . , : ( ) `` '' # $
""".split())

CLOSED_CLASS: Dict[str, str] = {}


def _closed(tag: str, words: str) -> None:
    for word in words.split():
        CLOSED_CLASS[word] = tag


_closed("DT", "the a an this that these those every each some any no all both either neither another")
_closed("CC", "and or but nor &")
_closed("IN", """of in on at by for with from about into onto over under after before since until
while because although though if than as like through during without within between against
among around upon near across behind beyond toward towards per via whether unless""")
_closed("TO", "to")
_closed("MD", "can could will would shall should may might must ca wo 'll 'd")
_closed("PRP", "i you he she it we they me him her us them myself yourself himself herself itself ourselves themselves")
_closed("PRP$", "my your his its our their")
_closed("RB", "not n't never")
_closed("WDT", "which")
_closed("WP", "who whom what")
_closed("WP$", "whose")
_closed("WRB", "when where why how")
_closed("EX", "there")
_closed("VBZ", "is has does 's")
_closed("VBP", "am are 'm 're 've")
_closed("VBD", "was were had did")
_closed("VB", "be")
_closed("VBN", "been")

# Monomorphemic words ending in "ing" that the -ing override must leave alone.
ING_EXCEPTIONS = frozenset("""
thing something nothing anything everything king ring spring string wing sing bring sting
swing cling fling sling ping during morning evening ceiling
""".split())

_NUMBER = re.compile(r"^\d+(?:[.,:]\d+)*$")
_PUNCT_TAGS = {".": ".", "!": ".", "?": ".", ",": ",", ";": ":", ":": ":", "-": ":",
               "(": "(", ")": ")", '"': "''", "#": "#", "$": "$"}


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: str
    post_id: str = ""
    index: int = 0
    lemma: str = ""

    def __post_init__(self):
        if not self.lemma:
            object.__setattr__(self, "lemma", self.surface)


@dataclass(frozen=True)
class InventoryEntry:
    lemma: str
    category: int
    mpq_value: int
    surface_forms: Tuple[str, ...]

    @property
    def display(self) -> str:
        return self.surface_forms[0] if self.surface_forms else self.lemma


@dataclass
class AdjectiveInventory:
    """Reference adjectives keyed by lemma, with an inflected-form index."""

    entries: Dict[str, InventoryEntry] = field(default_factory=dict)
    surface_forms: Dict[str, str] = field(default_factory=dict)

    def __contains__(self, lemma) -> bool:
        return lemma in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def lemma_of(self, surface: str) -> Optional[str]:
        return self.surface_forms.get(surface)

    def category(self, lemma: str) -> Optional[int]:
        entry = self.entries.get(lemma)
        return entry.category if entry else None

    def mpq_value(self, lemma: str) -> Optional[int]:
        entry = self.entries.get(lemma)
        return entry.mpq_value if entry else None

    def display(self, lemma: str) -> str:
        entry = self.entries.get(lemma)
        return entry.display if entry else lemma

    def categories(self) -> Dict[int, List[str]]:
        """Category -> lemmas ordered by reference value."""
        out: Dict[int, List[str]] = {}
        for entry in sorted(self.entries.values(), key=lambda e: (e.category, e.mpq_value)):
            out.setdefault(entry.category, []).append(entry.lemma)
        return out

    def validate(self) -> None:
        for cat, lemmas in self.categories().items():
            if len(lemmas) < 2:
                raise DataError(f"inventory category {cat} has fewer than two entries")
            values = [self.entries[l].mpq_value for l in lemmas]
            if values != list(range(1, len(values) + 1)):
                raise DataError(f"inventory category {cat} values {values} are not consecutive from 1")


def default_inventory_path() -> Path:
    return Path(str(resources.files("scalemine") / "data" / "inventory.csv"))


def load_inventory(path=None) -> AdjectiveInventory:
    """Parse ``lemma, category, mpq_value, form1|form2|...`` lines."""
    path = Path(path) if path is not None else default_inventory_path()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read inventory {path}: {exc}") from exc

    inv = AdjectiveInventory()
    rows = (line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#"))
    for lineno, row in enumerate(csv.reader(rows, skipinitialspace=True), 1):
        if len(row) < 3:
            raise DataError(f"{path}: inventory row {lineno} has {len(row)} fields, expected 4")
        lemma = row[0].strip().lower()
        try:
            category, value = int(row[1]), int(row[2])
        except ValueError as exc:
            raise DataError(f"{path}: inventory row {lineno}: {exc}") from exc
        if not 1 <= category <= 20 or value < 1:
            raise DataError(f"{path}: inventory row {lineno}: category/value out of range")
        if lemma in inv.entries:
            raise DataError(f"{path}: duplicate inventory lemma {lemma!r}")
        forms = tuple(f.strip().lower() for f in (row[3] if len(row) > 3 else "").split("|") if f.strip())
        inv.entries[lemma] = InventoryEntry(lemma, category, value, forms or (lemma,))
        for form in forms or (lemma,):
            owner = inv.surface_forms.setdefault(form, lemma)
            if owner != lemma:
                raise DataError(f"{path}: surface form {form!r} listed for {owner!r} and {lemma!r}")
    inv.validate()
    return inv


def load_lexicon(path=None) -> Dict[str, str]:
    if path is None:
        path = resources.files("scalemine") / "data" / "lexicon.tsv"
    lexicon = {}
    for line in Path(str(path)).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        word, tag = line.split("\t")
        if tag not in TAGSET:
            raise DataError(f"lexicon tag {tag!r} for {word!r} is not in the tagset")
        lexicon[word] = tag
    return lexicon


def _suffix_tag(word: str) -> str:
    if word.endswith("ly") and len(word) > 4:
        return "RB"
    if word.endswith("ing") and len(word) > 4:
        return "VBG"
    if word.endswith("ed") and len(word) > 4:
        return "VBD"
    if word.endswith("est") and len(word) > 5:
        return "JJS"
    if word.endswith(("ful", "ous", "able", "ible", "less", "ive", "ical", "ish")) and len(word) > 5:
        return "JJ"
    if word.endswith("er") and len(word) > 4:
        return "JJR"
    if word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) > 3:
        return "NNS"
    return "NN"


class Tagger:
    """Deterministic base tagger; state is immutable after construction."""

    def __init__(self, lexicon: Optional[Mapping[str, str]] = None,
                 inventory: Optional[AdjectiveInventory] = None):
        self.lexicon = dict(load_lexicon() if lexicon is None else lexicon)
        self.inventory = inventory

    def tag_word(self, word: str) -> str:
        if word in _PUNCT_TAGS:
            return _PUNCT_TAGS[word]
        if word.startswith(".."):
            return ":"
        if _NUMBER.match(word):
            return "CD"
        if word in CLOSED_CLASS:
            return CLOSED_CLASS[word]
        if word in self.lexicon:
            return self.lexicon[word]
        if not any(c.isalnum() for c in word):
            return "SYM"
        return _suffix_tag(word)

    def tag(self, tokens: Sequence[str], post_id: str = "") -> List[TaggedToken]:
        return [TaggedToken(tok, self.tag_word(tok), post_id, i) for i, tok in enumerate(tokens)]

    def __call__(self, tokens: Sequence[str], post_id: str = "", audit: Optional[list] = None) -> List[TaggedToken]:
        """Base tags followed by the -ing and inventory overrides."""
        tagged = apply_ing_override(self.tag(tokens, post_id))
        if self.inventory is not None:
            tagged = apply_inventory_override(tagged, self.inventory, audit=audit)
        return tagged


def tag(tokens: Sequence[str], post_id: str = "") -> List[TaggedToken]:
    """Base tags only, using the shipped lexicon."""
    return _default_tagger().tag(tokens, post_id)


_DEFAULT = None


def _default_tagger() -> Tagger:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Tagger()
    return _DEFAULT


def apply_ing_override(tagged: Sequence[TaggedToken]) -> List[TaggedToken]:
    out = list(tagged)
    for i in range(len(tagged) - 1):
        tok = tagged[i]
        if (tok.surface.endswith("ing") and tok.surface not in ING_EXCEPTIONS
                and tagged[i + 1].tag in ("NN", "NNS") and tok.tag != "JJ"):
            out[i] = replace(tok, tag="JJ")
    return out


def apply_inventory_override(tagged: Sequence[TaggedToken], inventory: AdjectiveInventory,
                             audit: Optional[list] = None) -> List[TaggedToken]:
    """Force ``JJ`` on every inventory surface form; ``audit`` collects (post_id, index, surface, old_tag)."""
    out = []
    for tok in tagged:
        if tok.surface in inventory.surface_forms and tok.tag != "JJ":
            if audit is not None:
                audit.append((tok.post_id, tok.index, tok.surface, tok.tag))
            tok = replace(tok, tag="JJ")
        out.append(tok)
    return out


def parse_pretagged(text: str, post_id: str = "") -> List[TaggedToken]:
    """Parse whitespace-separated ``word/TAG`` tokens; tags are case-insensitive."""
    out = []
    for i, item in enumerate(text.split()):
        word, sep, tag = item.rpartition("/")
        if not sep or not word:
            raise DataError(f"token {item!r} has no word/TAG separator")
        tag = tag.upper().replace("\\$", "$")
        if tag not in TAGSET:
            raise DataError(f"tag {tag!r} of token {item!r} is not in the tagset")
        out.append(TaggedToken(word, tag, post_id, i))
    return out


def format_pretagged(tagged: Iterable[TaggedToken]) -> str:
    return " ".join(f"{tok.surface}/{tok.tag}" for tok in tagged)
