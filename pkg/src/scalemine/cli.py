"""Command line interface: one subcommand per stage plus ``run``.

Exit status: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from .corpus import FORMATS
from .errors import ContradictionError, DataError, ScalemineError
from .evaluation import frequency_profile
from .graph import build_graph, diagnose, find_category_paths, read_paths, resolve_directions, to_dot, \
    unique_pairs, write_paths
from .pairs import extract_pairs, pair_statistics, read_pairs, write_pairs
from .patterns import apply_exclusions, default_patterns_path, load_patterns, read_matches, scan, write_matches
from .pipeline import (PipelineConfig, StageError, evaluation_report, read_posts, render_evaluation,
                       run_pipeline, stats_report, tag_posts)
from .scales import build_all_scales, read_scales, write_scales
from .tagger import default_inventory_path, format_pretagged, load_inventory, parse_pretagged

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INVARIANT = 0, 1, 2, 3

DEFAULTS = {
    "inventory": None,
    "patterns": None,
    "out_dir": "scalemine_out",
    "window": 10,
    "max_depth": 10,
    "max_skip": 3,
    "format": None,
    "verbose": False,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    kw = {"default": argparse.SUPPRESS} if suppress else {}

    def d(name):
        return f" (default: {DEFAULTS[name]})" if DEFAULTS[name] is not None else ""
    g = p.add_argument_group("global options")
    g.add_argument("--inventory", metavar="FILE",
                   help=f"adjective inventory (default: shipped list at {default_inventory_path()})", **kw)
    g.add_argument("--patterns", metavar="FILE",
                   help=f"pattern file (default: shipped list at {default_patterns_path()})", **kw)
    g.add_argument("--out-dir", metavar="DIR", help="output directory for 'run'" + d("out_dir"), **kw)
    g.add_argument("--window", type=int, metavar="N", help="match window in tokens" + d("window"), **kw)
    g.add_argument("--max-depth", type=int, metavar="N", help="maximum path length in edges" + d("max_depth"), **kw)
    g.add_argument("--max-skip", type=int, metavar="N",
                   help="adverbs/determiners skipped before an adjective" + d("max_skip"), **kw)
    g.add_argument("--format", choices=FORMATS, help="corpus file format (default: plain-lines; record-lines for 'match')", **kw)
    g.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr", **kw)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = _Parser(prog="scalemine", parents=[_common(suppress=False)],
                     description="Mine adjective intensity scales from forum text.")
    parser.set_defaults(**DEFAULTS)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("stats", parents=[common], help="descriptive corpus statistics")
    p.add_argument("corpus", nargs="+")
    p.add_argument("--pretagged", action="store_true", help="corpus text is word/TAG tokens")

    p = sub.add_parser("tag", parents=[common], help="tokenize and tag a corpus")
    p.add_argument("corpus", nargs="+")
    p.add_argument("--pretagged", action="store_true", help="input is already word/TAG; apply overrides only")
    p.add_argument("-o", "--output", help="tagged record-lines file (default: stdout)")

    p = sub.add_parser("match", parents=[common], help="scan a tagged corpus for intensity patterns")
    p.add_argument("tagged_corpus")
    p.add_argument("--exclusions", metavar="FILE", help="phrase ids to discard, one per line")
    p.add_argument("-o", "--output", help="match record-lines file (default: stdout)")

    p = sub.add_parser("pairs", parents=[common], help="weak-strong pairs from matches")
    p.add_argument("matches")
    p.add_argument("-o", "--output", help="pairs CSV (default: stdout)")
    p.add_argument("--summary", metavar="FILE", help="write the pair summary as JSON")

    p = sub.add_parser("graph", parents=[common], help="relation graph, diagnostics and category paths")
    p.add_argument("pairs")
    p.add_argument("--dot", metavar="FILE", help="DOT file for the edge multiset")
    p.add_argument("--dot-resolved", metavar="FILE", help="DOT file for the resolved digraph")
    p.add_argument("--paths", metavar="FILE", help="paths record-lines file")

    p = sub.add_parser("scales", parents=[common], help="score category scales from a paths file")
    p.add_argument("paths")
    p.add_argument("-o", "--output", help="scales record-lines file (default: stdout)")

    p = sub.add_parser("eval", parents=[common], help="compare scales with the reference inventory")
    p.add_argument("scales")
    p.add_argument("--freq", nargs="+", metavar="CORPUS",
                   help="corpora (or lemma,count CSV tables) for the cosine comparison")
    p.add_argument("--ttest", choices=("all", "decided"), default="decided",
                   help="agreement vector fed to the t-test (default: decided)")
    p.add_argument("-o", "--output", help="machine-readable JSON report")

    p = sub.add_parser("run", parents=[common], help="run the whole pipeline")
    p.add_argument("corpus", nargs="+")
    p.add_argument("--exclusions", metavar="FILE", help="phrase ids to discard, one per line")
    p.add_argument("--pretagged", action="store_true", help="corpus text is word/TAG tokens")
    p.add_argument("--ttest", choices=("all", "decided"), default="decided",
                   help="agreement vector fed to the t-test (default: decided)")
    return parser


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _inventory(args):
    if args.inventory is not None and not Path(args.inventory).is_file():
        raise DataError(f"--inventory: file not found: {args.inventory}")
    return load_inventory(args.inventory)


def _patterns(args):
    if args.patterns is not None and not Path(args.patterns).is_file():
        raise DataError(f"--patterns: file not found: {args.patterns}")
    return load_patterns(args.patterns)


def _corpus_format(args) -> str:
    return args.format or "plain-lines"


def _load_tagged(args, inventory):
    posts = read_posts(args.corpus, _corpus_format(args))
    return posts, tag_posts(posts, inventory, getattr(args, "pretagged", False))


def cmd_stats(args) -> int:
    inventory = _inventory(args)
    posts, tagged = _load_tagged(args, inventory)
    _emit(json.dumps(stats_report(posts, tagged), indent=2, sort_keys=True) + "\n", None)
    return EXIT_OK


def cmd_tag(args) -> int:
    inventory = _inventory(args)
    audit = []
    posts = read_posts(args.corpus, _corpus_format(args))
    tagged = tag_posts(posts, inventory, args.pretagged, audit)
    lines = [json.dumps({"id": p.post_id, "forum": p.forum, "text": format_pretagged(t)}, ensure_ascii=False)
             for p, t in zip(posts, tagged)]
    _emit("".join(l + "\n" for l in lines), args.output)
    logging.info("inventory override changed %d tags: %s", len(audit),
                 dict(Counter(old for *_, old in audit)))
    return EXIT_OK


def cmd_match(args) -> int:
    inventory, patterns = _inventory(args), _patterns(args)
    fmt = args.format or "record-lines"
    posts = read_posts([args.tagged_corpus], fmt)
    seqs = [parse_pretagged(p.text, p.post_id) for p in posts]
    matches = scan(seqs, patterns, inventory, args.window, args.max_skip, {p.post_id: p.forum for p in posts})
    if args.exclusions:
        matches, report = apply_exclusions(matches, args.exclusions)
        print(f"excluded {report.total_removed} phrases: {dict(sorted(report.removed.items()))}; "
              f"{len(report.missing)} unknown ids; {len(matches)} remain", file=sys.stderr)
    if args.output:
        write_matches(matches, args.output)
    else:
        for m in matches:
            sys.stdout.write(json.dumps(m.to_record(), ensure_ascii=False, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_pairs(args) -> int:
    _inventory(args)
    pairs = [p for m in read_matches(args.matches) for p in extract_pairs(m)]
    write_pairs(pairs, args.output or sys.stdout)
    if args.summary:
        Path(args.summary).write_text(json.dumps(pair_statistics(pairs).as_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_graph(args) -> int:
    inventory = _inventory(args)
    graph = resolve_directions(build_graph(read_pairs(args.pairs)))
    if args.dot:
        Path(args.dot).write_text(to_dot(graph), encoding="utf-8")
        resolved_path = args.dot_resolved or str(Path(args.dot).with_suffix(".resolved.dot"))
        Path(resolved_path).write_text(to_dot(graph, resolved=True), encoding="utf-8")
    elif args.dot_resolved:
        Path(args.dot_resolved).write_text(to_dot(graph, resolved=True), encoding="utf-8")
    search = find_category_paths(graph, inventory, args.max_depth)
    if args.paths:
        write_paths(search, args.paths)
    report = diagnose(graph).as_dict()
    report["path_count"] = len(search.paths)
    report["unique_category_pairs"] = [list(p) for p in search.unique_pairs]
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_scales(args) -> int:
    inventory = _inventory(args)
    scales = build_all_scales(unique_pairs(read_paths(args.paths)), inventory)
    if args.output:
        write_scales(scales, args.output, inventory)
    for s in scales:
        print(f"{s.category}: {s.render(inventory)}")
    return EXIT_OK


def _read_frequency_table(path: Path):
    import csv
    counts = Counter()
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#") or row[0] == "lemma":
                continue
            try:
                counts[row[0].strip()] += int(row[1])
            except (IndexError, ValueError) as exc:
                raise DataError(f"{path}: bad frequency row {row!r}") from exc
    return counts


def cmd_eval(args) -> int:
    inventory = _inventory(args)
    scales = read_scales(args.scales)
    profiles = None
    if args.freq:
        profiles = {}
        for name in args.freq:
            path = Path(name)
            if path.suffix == ".csv":
                profiles[path.stem] = _read_frequency_table(path)
                continue
            posts = read_posts([name], _corpus_format(args))
            tagged = tag_posts(posts, inventory)
            merged = Counter()
            for counter in frequency_profile(tagged, inventory).values():
                merged.update(counter)
            profiles[path.stem] = merged
    record = evaluation_report(scales, inventory, args.ttest, profiles)
    if args.output:
        Path(args.output).write_text(json.dumps(record, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    sys.stdout.write(render_evaluation(record))
    return EXIT_OK


def cmd_run(args) -> int:
    if args.inventory is not None and not Path(args.inventory).is_file():
        raise DataError(f"--inventory: file not found: {args.inventory}")
    try:
        config = PipelineConfig(
            corpora=args.corpus, corpus_format=_corpus_format(args), inventory=args.inventory,
            patterns=args.patterns, exclusions=args.exclusions, window=args.window,
            max_skip=args.max_skip, max_depth=args.max_depth, out_dir=args.out_dir,
            pretagged=args.pretagged, ttest=args.ttest)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    files = run_pipeline(config)
    for name, paths in files.items():
        for path in paths:
            print(f"{name}\t{path}")
    return EXIT_OK


COMMANDS = {
    "stats": cmd_stats, "tag": cmd_tag, "match": cmd_match, "pairs": cmd_pairs,
    "graph": cmd_graph, "scales": cmd_scales, "eval": cmd_eval, "run": cmd_run,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.window < 3 or args.max_skip < 0 or args.max_depth < 1:
        print("scalemine: error: --window must be >= 3, --max-skip >= 0, --max-depth >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"scalemine: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StageError as exc:
        print(f"scalemine: {exc}", file=sys.stderr)
        return EXIT_INVARIANT if isinstance(exc.cause, ContradictionError) else EXIT_DATA
    except ContradictionError as exc:
        print(f"scalemine: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ScalemineError as exc:
        print(f"scalemine: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
