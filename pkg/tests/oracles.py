"""Independent oracles shared by the unit and acceptance tests."""

import math

import networkx as nx
from scipy import integrate

from scalemine.graph import build_graph, find_category_paths, resolve_directions
from scalemine.pairs import WeakStrongPair
from scalemine.tagger import AdjectiveInventory, InventoryEntry


def pairs_of(*edges):
    return [WeakStrongPair(a, b, f"ph{i}") for i, (a, b) in enumerate(edges)]


def make_inventory(categories):
    entries, rank = {}, {}
    for lemma, cat in sorted(categories.items()):
        rank[cat] = rank.get(cat, 0) + 1
        entries[lemma] = InventoryEntry(lemma, cat, rank[cat], (lemma,))
    return AdjectiveInventory(entries, {l: l for l in entries})


def t_pdf(x, df):
    c = math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2)) / math.sqrt(df * math.pi)
    return c * (1 + x * x / df) ** (-(df + 1) / 2)


def quad_cdf(t, df):
    # numerical integration from the centre: F(t) = 1/2 + integral of the density over [0, t]
    value, _ = integrate.quad(t_pdf, 0.0, t, args=(df,), epsabs=1e-13, epsrel=1e-13)
    return 0.5 + value


def random_dag(rnd, n):
    nodes = [f"n{i}" for i in range(n)]
    order = nodes[:]
    rnd.shuffle(order)
    p = rnd.uniform(0.2, 0.7)
    edges = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rnd.random() < p]
    cats = {v: rnd.randint(1, 3) for v in nodes}
    return nodes, edges, cats


def brute_force_paths(nodes, edges, cats, max_depth):
    dg = nx.DiGraph()
    dg.add_nodes_from(nodes)
    dg.add_edges_from(edges)
    found = set()
    for s in nodes:
        for t in nodes:
            if s != t and cats[s] == cats[t]:
                found.update(tuple(p) for p in nx.all_simple_paths(dg, s, t, cutoff=max_depth))
    return found


def check_against_oracle(nodes, edges, cats, max_depth=10):
    g = resolve_directions(build_graph(pairs_of(*edges)))
    inv = make_inventory({v: cats[v] for v in g.nodes})
    ours = {p.nodes for p in find_category_paths(g, inv, max_depth).paths}
    live = [v for v in nodes if v in g.nodes]
    assert ours == brute_force_paths(live, edges, cats, max_depth)
