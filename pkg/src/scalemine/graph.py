"""Weak-to-strong relation graph: construction, majority resolution, diagnostics
and same-category path search."""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from .errors import DataError
from .pairs import WeakStrongPair
from .tagger import AdjectiveInventory

Edge = Tuple[str, str]


@dataclass
class RelationGraph:
    nodes: Tuple[str, ...] = ()
    edges: Counter = field(default_factory=Counter)
    provenance: Dict[Edge, List[str]] = field(default_factory=dict)
    loops: Counter = field(default_factory=Counter)
    resolved: Optional[Dict[Edge, int]] = None
    ties: List[Tuple[str, str, int]] = field(default_factory=list)

    @property
    def edge_count(self) -> int:
        return sum(self.edges.values()) + sum(self.loops.values())

    def successors(self) -> Dict[str, List[str]]:
        if self.resolved is None:
            raise ValueError("resolve_directions must run before traversal")
        succ = defaultdict(list)
        for a, b in sorted(self.resolved):
            succ[a].append(b)
        return dict(succ)


@dataclass(frozen=True)
class GraphDiagnostics:
    bidirectional_pairs: Tuple[Tuple[str, str, int, int], ...]
    loops: Tuple[Tuple[str, int], ...]
    isolated_components: Tuple[Tuple[str, ...], ...]
    node_pair_count: int
    ties: Tuple[Tuple[str, str, int], ...] = ()

    def as_dict(self) -> dict:
        return {
            "bidirectional_pairs": [
                {"pair": [a, b], "forward": f, "backward": r} for a, b, f, r in self.bidirectional_pairs
            ],
            "loops": [{"lemma": l, "count": c} for l, c in self.loops],
            "components": [list(c) for c in self.isolated_components],
            "node_pair_count": self.node_pair_count,
            "ties": [{"pair": [a, b], "count": c} for a, b, c in self.ties],
        }


@dataclass(frozen=True)
class CategoryPath:
    weak: str
    strong: str
    category: int
    nodes: Tuple[str, ...]
    via_same_category: bool = False

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    def as_dict(self) -> dict:
        return {
            "weak": self.weak,
            "strong": self.strong,
            "category": self.category,
            "nodes": list(self.nodes),
            "length": self.length,
            "via_same_category": self.via_same_category,
        }


@dataclass
class PathSearch:
    paths: List[CategoryPath]
    unique_pairs: List[Tuple[str, str, int]]


def build_graph(pairs: Iterable[WeakStrongPair]) -> RelationGraph:
    g = RelationGraph()
    nodes = set()
    provenance = defaultdict(list)
    for p in pairs:
        nodes.update((p.weak, p.strong))
        if p.weak == p.strong:
            g.loops[p.weak] += 1
        else:
            g.edges[(p.weak, p.strong)] += 1
        provenance[(p.weak, p.strong)].append(p.phrase_id)
    g.nodes = tuple(sorted(nodes))
    g.provenance = dict(provenance)
    return g


def resolve_directions(graph: RelationGraph) -> RelationGraph:
    """Keep the strictly larger direction of every node pair; equal counts drop both."""
    resolved, ties = {}, []
    for a, b in sorted({tuple(sorted(e)) for e in graph.edges}):
        fwd, back = graph.edges.get((a, b), 0), graph.edges.get((b, a), 0)
        if fwd > back:
            resolved[(a, b)] = fwd
        elif back > fwd:
            resolved[(b, a)] = back
        else:
            ties.append((a, b, fwd))
    return RelationGraph(graph.nodes, Counter(graph.edges), dict(graph.provenance),
                         Counter(graph.loops), resolved, ties)


def diagnose(graph: RelationGraph) -> GraphDiagnostics:
    if graph.resolved is None:
        graph = resolve_directions(graph)
    bidirectional = []
    pairs = sorted({tuple(sorted(e)) for e in graph.edges})
    for a, b in pairs:
        fwd, back = graph.edges.get((a, b), 0), graph.edges.get((b, a), 0)
        if fwd and back:
            bidirectional.append((a, b, fwd, back))
    und = nx.Graph()
    und.add_nodes_from(graph.nodes)
    und.add_edges_from(graph.resolved)
    components = sorted((tuple(sorted(c)) for c in nx.connected_components(und)),
                        key=lambda c: (-len(c), c))
    return GraphDiagnostics(
        bidirectional_pairs=tuple(bidirectional),
        loops=tuple(sorted(graph.loops.items())),
        isolated_components=tuple(components),
        node_pair_count=len(pairs),
        ties=tuple(graph.ties),
    )


def find_category_paths(graph: RelationGraph, inventory: AdjectiveInventory, max_depth: int = 10) -> PathSearch:
    """All simple weak->strong paths between same-category lemmas.

    For every ordered pair (a, b) of distinct lemmas that share a category and
    are both graph nodes, a depth-first search follows resolved edges from a
    without revisiting nodes; a branch ends when it reaches b or runs out of
    unvisited successors, and paths longer than ``max_depth`` edges are not
    followed.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    succ = graph.successors()
    by_category = defaultdict(list)
    for node in graph.nodes:
        cat = inventory.category(node)
        if cat is not None:
            by_category[cat].append(node)

    paths = []
    for cat in sorted(by_category):
        members = sorted(by_category[cat])
        member_set = set(members)
        for source in members:
            for target in members:
                if source == target:
                    continue
                for nodes in _simple_paths(succ, source, target, max_depth):
                    inner = set(nodes[1:-1])
                    paths.append(CategoryPath(source, target, cat, nodes, bool(inner & member_set)))
    unique = sorted({(p.weak, p.strong, p.category) for p in paths}, key=lambda t: (t[2], t[0], t[1]))
    return PathSearch(paths, unique)


def _simple_paths(succ, source, target, max_depth):
    found = []
    stack = [source]
    visited = {source}

    def visit(node):
        if node == target:
            found.append(tuple(stack))
            return
        if len(stack) > max_depth:
            return
        for nxt in succ.get(node, ()):
            if nxt in visited:
                continue
            visited.add(nxt)
            stack.append(nxt)
            visit(nxt)
            stack.pop()
            visited.discard(nxt)

    visit(source)
    return found


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: RelationGraph, resolved: bool = False, name: str = "relations") -> str:
    """Graphviz text for the edge multiset (one arrow per instance) or the resolved digraph."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=ellipse];"]
    for node in graph.nodes:
        lines.append(f"  {_dot_id(node)} [label={_dot_id(node)}];")
    if resolved:
        if graph.resolved is None:
            raise ValueError("graph has not been resolved")
        for (a, b), w in sorted(graph.resolved.items()):
            lines.append(f"  {_dot_id(a)} -> {_dot_id(b)} [multiplicity={w}, label=\"{w}\"];")
    else:
        for (a, b), n in sorted(graph.edges.items()):
            for _ in range(n):
                lines.append(f"  {_dot_id(a)} -> {_dot_id(b)} [multiplicity={n}];")
        for a, n in sorted(graph.loops.items()):
            for _ in range(n):
                lines.append(f"  {_dot_id(a)} -> {_dot_id(a)} [multiplicity={n}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_paths(search: PathSearch, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for p in search.paths:
            fh.write(json.dumps(p.as_dict(), sort_keys=True) + "\n")


def read_paths(path) -> List[CategoryPath]:
    out = []
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read paths {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            out.append(CategoryPath(rec["weak"], rec["strong"], int(rec["category"]),
                                    tuple(rec["nodes"]), bool(rec.get("via_same_category", False))))
        except (ValueError, KeyError, TypeError) as exc:
            raise DataError(f"{path}:{lineno}: malformed path record ({exc})") from exc
    return out


def unique_pairs(paths: Iterable[CategoryPath]) -> List[Tuple[str, str, int]]:
    return sorted({(p.weak, p.strong, p.category) for p in paths}, key=lambda t: (t[2], t[0], t[1]))
