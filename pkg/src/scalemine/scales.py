"""Additive scoring of within-category relations into ranked tiers."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ContradictionError, DataError
from .tagger import AdjectiveInventory


@dataclass(frozen=True)
class CategoryScale:
    category: int
    tiers: Tuple[Tuple[str, ...], ...]
    scores: Dict[str, int]
    uncovered: Tuple[str, ...] = ()
    conflicts: Tuple[Tuple[str, str], ...] = ()

    def render(self, inventory: Optional[AdjectiveInventory] = None) -> str:
        show = inventory.display if inventory is not None else (lambda l: l)
        return "<" + ", ".join("/".join(show(l) for l in tier) for tier in self.tiers) + ">"

    def as_dict(self, inventory: Optional[AdjectiveInventory] = None) -> dict:
        return {
            "category": self.category,
            "tiers": [list(t) for t in self.tiers],
            "scores": dict(sorted(self.scores.items())),
            "uncovered": list(self.uncovered),
            "conflicts": [list(c) for c in self.conflicts],
            "text": f"{self.category}: {self.render(inventory)}",
        }

    @classmethod
    def from_dict(cls, rec: dict) -> "CategoryScale":
        return cls(
            category=int(rec["category"]),
            tiers=tuple(tuple(t) for t in rec["tiers"]),
            scores={k: int(v) for k, v in rec["scores"].items()},
            uncovered=tuple(rec.get("uncovered", ())),
            conflicts=tuple(tuple(c) for c in rec.get("conflicts", ())),
        )


def score_category(category: int, relations: Iterable[Tuple[str, str]],
                   inventory: Optional[AdjectiveInventory] = None) -> CategoryScale:
    """Score each lemma by how many relations name it the stronger member.

    Weak membership adds 0, strong membership adds 1. Lemmas with equal
    totals share a tier. Within a tier lemmas follow the inventory's order
    when one is given, otherwise alphabetical order.
    """
    rels = sorted(set(relations))
    seen = set(rels)
    for weak, strong in rels:
        if weak == strong:
            raise DataError(f"self relation ({weak}, {weak}) cannot be scored")
        if (strong, weak) in seen:
            raise ContradictionError(weak, strong)
        if inventory is not None:
            for lemma in (weak, strong):
                if inventory.category(lemma) != category:
                    raise DataError(f"{lemma!r} is not in category {category}")

    scores: Dict[str, int] = {}
    for weak, strong in rels:
        scores.setdefault(weak, 0)
        scores[strong] = scores.get(strong, 0) + 1

    def order(lemma):
        value = inventory.mpq_value(lemma) if inventory is not None else None
        return (value if value is not None else 0, lemma)

    by_score = defaultdict(list)
    for lemma, score in scores.items():
        by_score[score].append(lemma)
    tiers = tuple(tuple(sorted(by_score[s], key=order)) for s in sorted(by_score))
    conflicts = tuple((w, s) for w, s in rels if scores[w] >= scores[s])
    uncovered = ()
    if inventory is not None:
        uncovered = tuple(l for l in inventory.categories().get(category, []) if l not in scores)
    return CategoryScale(category, tiers, scores, uncovered, conflicts)


def build_all_scales(pairs: Iterable[Sequence], inventory: AdjectiveInventory) -> List[CategoryScale]:
    """One scale per category that has at least one same-category relation.

    ``pairs`` are (weak, strong) or (weak, strong, category) tuples, usually the
    unique endpoint pairs of the path search. Self pairs and cross-category
    pairs are ignored.
    """
    grouped = defaultdict(set)
    for item in pairs:
        weak, strong = item[0], item[1]
        cat_w, cat_s = inventory.category(weak), inventory.category(strong)
        if weak == strong or cat_w is None or cat_w != cat_s:
            continue
        grouped[cat_w].add((weak, strong))
    return [score_category(cat, grouped[cat], inventory) for cat in sorted(grouped)]


def uncovered_categories(scales: Sequence[CategoryScale], inventory: AdjectiveInventory) -> List[int]:
    covered = {s.category for s in scales}
    return [c for c in sorted(inventory.categories()) if c not in covered]


def write_scales(scales: Iterable[CategoryScale], path, inventory: Optional[AdjectiveInventory] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in scales:
            fh.write(json.dumps(s.as_dict(inventory), sort_keys=True) + "\n")


def read_scales(path) -> List[CategoryScale]:
    out = []
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read scales {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            out.append(CategoryScale.from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError) as exc:
            raise DataError(f"{path}:{lineno}: malformed scale record ({exc})") from exc
    return out
