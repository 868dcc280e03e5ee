"""End-to-end orchestration of the stages, communicating through files."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import corpus as corpus_mod
from .corpus import Post, compute_stats, load_corpus, tokenize
from .errors import DataError
from .evaluation import (compare_to_reference, cosine_matrix, frequency_profile,
                         one_sample_t_test)
from .graph import build_graph, diagnose, find_category_paths, read_paths, resolve_directions, to_dot, \
    unique_pairs, write_paths
from .pairs import extract_pairs, pair_statistics, read_pairs, write_pairs
from .patterns import apply_exclusions, load_patterns, read_matches, scan, write_matches
from .scales import build_all_scales, read_scales, uncovered_categories, write_scales
from .tagger import (AdjectiveInventory, Tagger, TaggedToken, apply_ing_override, apply_inventory_override,
                     format_pretagged, load_inventory, parse_pretagged)

LOGGER = logging.getLogger(__name__)

ARTIFACTS = ("stats", "tagged", "matches", "pairs", "dot", "paths", "scales", "evaluation")


@dataclass
class PipelineConfig:
    corpora: Sequence[str]
    corpus_format: str = "plain-lines"
    inventory: Optional[str] = None
    patterns: Optional[str] = None
    exclusions: Optional[str] = None
    window: int = 10
    max_skip: int = 3
    max_depth: int = 10
    out_dir: str = "scalemine_out"
    pretagged: bool = False
    ttest: str = "decided"

    def __post_init__(self):
        if self.window < 3:
            raise ValueError("window must be at least 3")
        if self.max_skip < 0:
            raise ValueError("skip-run limit must be non-negative")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.ttest not in ("all", "decided"):
            raise ValueError("ttest must be 'all' or 'decided'")


class StageError(Exception):
    """Wraps a failure with the name of the stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause


def read_posts(paths: Sequence[str], format: str) -> List[Post]:
    posts, seen = [], set()
    for path in paths:
        loaded = load_corpus(path, format)
        if loaded.empty_dropped or loaded.malformed:
            LOGGER.info("%s: dropped %d empty posts, %d malformed records",
                        path, loaded.empty_dropped, loaded.malformed)
        for post in loaded.posts:
            if post.post_id in seen:
                raise DataError(f"post id {post.post_id!r} occurs in more than one corpus file")
            seen.add(post.post_id)
            posts.append(post)
    return posts


def tag_posts(posts: Sequence[Post], inventory: AdjectiveInventory, pretagged: bool = False,
              audit: Optional[list] = None) -> List[List[TaggedToken]]:
    tagger = Tagger(inventory=inventory)
    out = []
    for post in posts:
        if pretagged:
            tokens = apply_ing_override(parse_pretagged(post.text, post.post_id))
            tokens = apply_inventory_override(tokens, inventory, audit)
        else:
            tokens = tagger(tokenize(post.text), post.post_id, audit=audit)
        out.append(tokens)
    return out


def stats_report(posts: Sequence[Post], tagged: Sequence[Sequence[TaggedToken]]) -> dict:
    report = {"all": compute_stats(posts, tagged).as_dict(), "forums": {}}
    forums: Dict[str, list] = {}
    for post, seq in zip(posts, tagged):
        forums.setdefault(post.forum, []).append((post, seq))
    for name in sorted(forums):
        ps, ts = zip(*forums[name])
        report["forums"][name] = compute_stats(ps, ts).as_dict()
    return report


def evaluation_report(scales, inventory: AdjectiveInventory, ttest: str = "decided",
                      profiles: Optional[Dict[str, Dict[str, int]]] = None) -> dict:
    agreement = compare_to_reference(scales, inventory)
    record = {"agreement": agreement.as_dict(), "scales": [s.as_dict(inventory) for s in scales],
              "uncovered_categories": uncovered_categories(scales, inventory)}
    vector = agreement.agreement_vector(ttest)
    try:
        result = one_sample_t_test(vector, 0.5)
        record["ttest"] = {"vector": ttest, "mu0": 0.5, **result.as_dict()}
    except ValueError as exc:
        record["ttest"] = {"vector": ttest, "mu0": 0.5, "n": len(vector), "error": str(exc)}
    if profiles:
        lemmas = sorted(inventory.entries)
        record["frequencies"] = {k: dict(sorted(v.items())) for k, v in sorted(profiles.items())}
        record["cosine"] = cosine_matrix(profiles, lemmas)
    return record


def render_evaluation(record: dict) -> str:
    ag = record["agreement"]
    lines = ["Scales"]
    lines += [f"  {s['text']}" for s in record["scales"]]
    if record.get("uncovered_categories"):
        lines.append("  categories without relations: " + ", ".join(map(str, record["uncovered_categories"])))
    lines.append("")
    lines.append("Agreement with reference")
    lines.append(f"  relations: {ag['total']}  agree: {ag['agree']}  disagree: {ag['disagree']}  "
                 f"inconclusive: {ag['inconclusive']}")

    def pct(x):
        return "n/a" if x is None else f"{x:.1f}%"
    lines.append(f"  agreement (all relations): {pct(ag['agreement_all_percent'])}")
    lines.append(f"  agreement (decided relations): {pct(ag['agreement_decided_percent'])}")
    for cat, row in ag["by_category"].items():
        lines.append(f"    category {cat}: agree {row['AGREE']}, disagree {row['DISAGREE']}, "
                     f"inconclusive {row['INCONCLUSIVE']}")
    tt = record["ttest"]
    lines.append("")
    if "error" in tt:
        lines.append(f"One-sample t-test ({tt['vector']} relations, mu0={tt['mu0']}): n={tt['n']}, {tt['error']}")
    else:
        lines.append(f"One-sample t-test ({tt['vector']} relations, mu0={tt['mu0']}): "
                     f"n={tt['n']} t({tt['df']})={tt['t']:.3f} p={tt['p_two_sided']:.4f}")
    if "cosine" in record:
        lines.append("")
        lines.append("Cosine similarity of inventory-adjective frequencies")
        names = list(record["cosine"])
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                v = record["cosine"][a][b]
                lines.append(f"  {a} / {b}: {'n/a' if v is None else f'{v:.3f}'}")
    return "\n".join(lines) + "\n"


def _dump(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def run_pipeline(config: PipelineConfig) -> Dict[str, List[Path]]:
    """Run every stage, writing its artifact before the next stage reads it back."""
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: Dict[str, List[Path]] = {name: [] for name in ARTIFACTS}

    def stage(name):
        def wrap(fn):
            try:
                return fn()
            except StageError:
                raise
            except Exception as exc:
                raise StageError(name, exc) from exc
        return wrap

    inventory = stage("inventory")(lambda: load_inventory(config.inventory))
    patterns = stage("patterns")(lambda: load_patterns(config.patterns))

    def do_stats():
        posts = read_posts(config.corpora, config.corpus_format)
        if not posts:
            raise DataError("no posts were loaded")
        audit = []
        tagged = tag_posts(posts, inventory, config.pretagged, audit)
        report = stats_report(posts, tagged)
        report["inventory_overrides"] = len(audit)
        path = out / "stats.json"
        _dump(report, path)
        files["stats"].append(path)
        return posts, tagged
    posts, tagged = stage("stats")(do_stats)

    def do_tag():
        path = out / "tagged.jsonl"
        corpus_mod.write_records(
            [Post(p.post_id, p.forum, format_pretagged(t)) for p, t in zip(posts, tagged)], path)
        files["tagged"].append(path)
        return path
    tagged_path = stage("tag")(do_tag)

    def do_match():
        loaded = read_posts([str(tagged_path)], "record-lines")
        forums = {p.post_id: p.forum for p in loaded}
        seqs = [parse_pretagged(p.text, p.post_id) for p in loaded]
        matches = scan(seqs, patterns, inventory, config.window, config.max_skip, forums)
        path = out / "matches.jsonl"
        write_matches(matches, path)
        files["matches"].append(path)
        if config.exclusions:
            kept, report = apply_exclusions(matches, config.exclusions)
            path = out / "matches_curated.jsonl"
            write_matches(kept, path)
            _dump({"removed": dict(sorted(report.removed.items())), "total_removed": report.total_removed,
                   "missing": report.missing, "remaining": len(kept)}, out / "exclusions.json")
            files["matches"] += [path, out / "exclusions.json"]
        return path
    matches_path = stage("match")(do_match)

    def do_pairs():
        pairs = [p for m in read_matches(matches_path) for p in extract_pairs(m)]
        path = out / "pairs.csv"
        write_pairs(pairs, path)
        _dump(pair_statistics(pairs).as_dict(), out / "pairs_summary.json")
        files["pairs"] += [path, out / "pairs_summary.json"]
        return path
    pairs_path = stage("pairs")(do_pairs)

    def do_graph():
        graph = resolve_directions(build_graph(read_pairs(pairs_path)))
        (out / "graph.dot").write_text(to_dot(graph), encoding="utf-8")
        (out / "graph_resolved.dot").write_text(to_dot(graph, resolved=True), encoding="utf-8")
        _dump(diagnose(graph).as_dict(), out / "graph_diagnostics.json")
        files["dot"] += [out / "graph.dot", out / "graph_resolved.dot", out / "graph_diagnostics.json"]
        search = find_category_paths(graph, inventory, config.max_depth)
        path = out / "paths.jsonl"
        write_paths(search, path)
        files["paths"].append(path)
        return path
    paths_path = stage("graph")(do_graph)

    def do_scales():
        scales = build_all_scales(unique_pairs(read_paths(paths_path)), inventory)
        path = out / "scales.jsonl"
        write_scales(scales, path, inventory)
        (out / "scales.txt").write_text(
            "".join(f"{s.category}: {s.render(inventory)}\n" for s in scales), encoding="utf-8")
        files["scales"] += [path, out / "scales.txt"]
        return path
    scales_path = stage("scales")(do_scales)

    def do_eval():
        scales = read_scales(scales_path)
        loaded = read_posts([str(tagged_path)], "record-lines")
        seqs = [parse_pretagged(p.text, p.post_id) for p in loaded]
        profiles = frequency_profile(seqs, inventory, {p.post_id: p.forum for p in loaded})
        record = evaluation_report(scales, inventory, config.ttest, profiles)
        _dump(record, out / "evaluation.json")
        (out / "evaluation.txt").write_text(render_evaluation(record), encoding="utf-8")
        files["evaluation"] += [out / "evaluation.json", out / "evaluation.txt"]
    stage("eval")(do_eval)
    return files
