"""Shared test helpers: graph enumeration and seeded random source samplers."""

import functools
import itertools

from multivote.reductions import Cnf3, ColoredGraph, Graph, TripleSystem


def _canonical_key(n, edges):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


@functools.lru_cache(maxsize=None)
def nonisomorphic_graphs(n):
    """All simple graphs on n vertices up to isomorphism."""
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    out = []
    for bits in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        key = _canonical_key(n, edges)
        if key not in seen:
            seen.add(key)
            out.append(Graph(n, edges))
    return out


def graphs_up_to(max_n):
    graphs = []
    for n in range(1, max_n + 1):
        graphs.extend(nonisomorphic_graphs(n))
    return graphs


def random_cnf(rng, max_vars=6, max_clauses=10):
    nvars = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        clause = tuple(rng.choice((1, -1)) * rng.randint(1, nvars) for _ in range(3))
        clauses.append(clause)
    return Cnf3(nvars, tuple(clauses))


def random_triple_system(rng, max_universe=9, max_triples=6):
    m = rng.randint(3, max_universe)
    count = rng.randint(1, max_triples)
    triples = []
    for _ in range(count):
        triples.append(tuple(rng.sample(range(m), 3)))
    return TripleSystem(m, tuple(triples))


def random_colored_graph(rng, max_colors=3, max_per_color=3):
    k = rng.randint(1, max_colors)
    q = rng.randint(1, max_per_color)
    color = tuple(c for c in range(k) for _ in range(q))
    edges = []
    for u, v in itertools.combinations(range(k * q), 2):
        if color[u] != color[v] and rng.random() < 0.5:
            edges.append((u, v))
    return ColoredGraph(k * q, tuple(edges), k, q, color)


def multisets_over_123(max_size):
    """Every multiset of values from {1,2,3} with 1..max_size elements."""
    out = []
    for size in range(1, max_size + 1):
        for ones in range(size + 1):
            for twos in range(size - ones + 1):
                threes = size - ones - twos
                out.append((1,) * ones + (2,) * twos + (3,) * threes)
    return out
