"""Comparison of constructed scales with the reference inventory, plus the
frequency-vector and significance statistics used to report it."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DataError
from .scales import CategoryScale
from .special import t_two_sided_p
from .tagger import AdjectiveInventory, TaggedToken

A_WEAKER = "A_WEAKER"
A_STRONGER = "A_STRONGER"
INCONCLUSIVE = "INCONCLUSIVE"
AGREE = "AGREE"
DISAGREE = "DISAGREE"


@dataclass(frozen=True)
class RelationVerdict:
    category: int
    pair: Tuple[str, str]
    constructed: str
    reference: str
    verdict: str

    def as_dict(self) -> dict:
        return {"category": self.category, "pair": list(self.pair), "constructed": self.constructed,
                "reference": self.reference, "verdict": self.verdict}


@dataclass
class AgreementReport:
    verdicts: List[RelationVerdict] = field(default_factory=list)

    def _count(self, verdict: str) -> int:
        return sum(1 for v in self.verdicts if v.verdict == verdict)

    @property
    def total(self) -> int:
        return len(self.verdicts)

    @property
    def agree(self) -> int:
        return self._count(AGREE)

    @property
    def disagree(self) -> int:
        return self._count(DISAGREE)

    @property
    def inconclusive(self) -> int:
        return self._count(INCONCLUSIVE)

    @property
    def agreement_all(self) -> Optional[float]:
        return self.agree / self.total if self.total else None

    @property
    def agreement_decided(self) -> Optional[float]:
        decided = self.agree + self.disagree
        return self.agree / decided if decided else None

    def by_category(self) -> Dict[int, Dict[str, int]]:
        out: Dict[int, Dict[str, int]] = {}
        for v in self.verdicts:
            row = out.setdefault(v.category, {AGREE: 0, DISAGREE: 0, INCONCLUSIVE: 0})
            row[v.verdict] += 1
        return dict(sorted(out.items()))

    def agreement_vector(self, which: str = "decided") -> List[float]:
        """1/0 agreement indicators; ``all`` counts inconclusive relations as 0."""
        if which == "decided":
            return [1.0 if v.verdict == AGREE else 0.0 for v in self.verdicts if v.verdict != INCONCLUSIVE]
        if which == "all":
            return [1.0 if v.verdict == AGREE else 0.0 for v in self.verdicts]
        raise ValueError("which must be 'all' or 'decided'")

    def as_dict(self) -> dict:
        def pct(x):
            return None if x is None else round(100.0 * x, 1)
        return {
            "total": self.total,
            "agree": self.agree,
            "disagree": self.disagree,
            "inconclusive": self.inconclusive,
            "agreement_all_percent": pct(self.agreement_all),
            "agreement_decided_percent": pct(self.agreement_decided),
            "by_category": {str(k): v for k, v in self.by_category().items()},
            "verdicts": [v.as_dict() for v in self.verdicts],
        }


def enumerate_relations(scale: CategoryScale) -> List[Tuple[Tuple[str, str], str]]:
    """Every unordered pair of scored lemmas with the scale's verdict on it.

    Pairs are listed in scale order, so a decided pair is always
    (weaker, stronger) and carries ``A_WEAKER``.
    """
    ordered = [(lemma, rank) for rank, tier in enumerate(scale.tiers) for lemma in tier]
    out = []
    for (a, ra), (b, rb) in combinations(ordered, 2):
        out.append(((a, b), INCONCLUSIVE if ra == rb else A_WEAKER))
    return out


def _reference(a: str, b: str, inventory: AdjectiveInventory) -> str:
    va, vb = inventory.mpq_value(a), inventory.mpq_value(b)
    for lemma, value in ((a, va), (b, vb)):
        if value is None:
            raise DataError(f"lemma {lemma!r} has no reference value in the inventory")
    return A_WEAKER if va < vb else A_STRONGER


def judge(category: int, pair: Tuple[str, str], constructed: str, inventory: AdjectiveInventory) -> RelationVerdict:
    reference = _reference(pair[0], pair[1], inventory)
    if constructed == INCONCLUSIVE:
        verdict = INCONCLUSIVE
    else:
        verdict = AGREE if constructed == reference else DISAGREE
    return RelationVerdict(category, pair, constructed, reference, verdict)


def compare_to_reference(scales: Iterable[CategoryScale], inventory: AdjectiveInventory) -> AgreementReport:
    report = AgreementReport()
    for scale in sorted(scales, key=lambda s: s.category):
        for pair, constructed in enumerate_relations(scale):
            report.verdicts.append(judge(scale.category, pair, constructed, inventory))
    return report


def cosine_similarity(freq_a: Mapping[str, float], freq_b: Mapping[str, float],
                      over: Optional[Sequence[str]] = None) -> float:
    """Cosine of two frequency vectors over the lemma list ``over``."""
    if over is None:
        over = sorted(set(freq_a) | set(freq_b))
    a = [float(freq_a.get(l, 0)) for l in over]
    b = [float(freq_b.get(l, 0)) for l in over]
    if any(x < 0 for x in a + b):
        raise ValueError("frequency counts must be non-negative")
    na, nb = math.sqrt(sum(x * x for x in a)), math.sqrt(sum(x * x for x in b))
    if na == 0 or nb == 0:
        raise ValueError("cosine similarity is undefined for a zero vector")
    value = sum(x * y for x, y in zip(a, b)) / (na * nb)
    return min(1.0, max(0.0, value))


def cosine_matrix(profiles: Mapping[str, Mapping[str, float]], over: Sequence[str]) -> Dict[str, Dict[str, Optional[float]]]:
    names = sorted(profiles)
    out: Dict[str, Dict[str, Optional[float]]] = {}
    for a in names:
        out[a] = {}
        for b in names:
            try:
                out[a][b] = cosine_similarity(profiles[a], profiles[b], over)
            except ValueError:
                out[a][b] = None
    return out


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p_two_sided: float
    n: int
    mean: float

    def as_dict(self) -> dict:
        return {"t": self.t, "df": self.df, "p_two_sided": self.p_two_sided, "n": self.n, "mean": self.mean}


def one_sample_t_test(samples: Sequence[float], mu0: float = 0.5) -> TTestResult:
    n = len(samples)
    if n < 2:
        raise ValueError("a one-sample t-test needs at least two samples")
    if max(samples) == min(samples):
        raise ValueError("sample variance is zero; t is undefined")
    mean = math.fsum(samples) / n
    var = math.fsum((x - mean) ** 2 for x in samples) / (n - 1)
    if var <= 0:
        raise ValueError("sample variance is zero; t is undefined")
    t = (mean - mu0) / math.sqrt(var / n)
    return TTestResult(t, n - 1, t_two_sided_p(t, n - 1), n, mean)


def frequency_profile(tagged_posts: Iterable[Sequence[TaggedToken]], inventory: AdjectiveInventory,
                      forums: Optional[Mapping[str, str]] = None) -> Dict[str, Counter]:
    """Inventory-lemma occurrence counts per forum label.

    ``forums`` maps post ids to forum labels; posts without one are counted
    under ``""``.
    """
    forums = forums or {}
    out: Dict[str, Counter] = defaultdict(Counter)
    for tokens in tagged_posts:
        for tok in tokens:
            lemma = inventory.lemma_of(tok.surface)
            if lemma is not None:
                out[forums.get(tok.post_id, "")][lemma] += 1
    return dict(out)
