"""Independent brute-force solvers and checkers for the source problems.

These exist to certify the reduction generators and the specialized solvers:
they share no search code with the solvers module, so agreement between the
two sides is evidence rather than tautology.  Each oracle is deliberately
naive (subset scans, truth tables, per-color tuples) and each returned
witness is validated by a checker written as a separate pass.

Caps on input size are hard errors, never silent truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .errors import ResourceLimitError, UsageError

if TYPE_CHECKING:  # source-problem types live in reductions; duck-typed here
    from .reductions import Cnf3, ColoredGraph, Graph, TripleSystem, ValueMultiset

DOMINATING_SET_VERTEX_CAP = 20
SET_PACKING_TRIPLE_CAP = 20
PARTITION_VALUE_CAP = 30
SAT_VARIABLE_CAP = 24
CLIQUE_TUPLE_CAP = 10**7


@dataclass(frozen=True)
class OracleVerdict:
    solvable: bool
    witness: tuple | None


def _closed_neighborhoods(n: int, edges) -> list[set[int]]:
    closed = [{v} for v in range(n)]
    for u, v in edges:
        closed[u].add(v)
        closed[v].add(u)
    return closed


# -- dominating set ------------------------------------------------------------


def dominating_set(g: Graph, k: int) -> OracleVerdict:
    """Search all vertex subsets of size <= k; smallest-then-lexicographic witness."""
    if g.n > DOMINATING_SET_VERTEX_CAP:
        raise ResourceLimitError(
            f"dominating-set oracle capped at {DOMINATING_SET_VERTEX_CAP} vertices, got {g.n}"
        )
    closed = _closed_neighborhoods(g.n, g.edges)
    everyone = set(range(g.n))
    for size in range(0, min(k, g.n) + 1):
        for subset in itertools.combinations(range(g.n), size):
            dominated = set()
            for v in subset:
                dominated |= closed[v]
            if dominated == everyone:
                assert is_dominating_set(g, subset, k)
                return OracleVerdict(True, subset)
    return OracleVerdict(False, None)


def is_dominating_set(g: Graph, vertices: Sequence[int], k: int | None = None) -> bool:
    """Checker: every vertex lies in some closed neighborhood of the set."""
    chosen = set(vertices)
    if any(not 0 <= v < g.n for v in chosen):
        return False
    if k is not None and len(chosen) > k:
        return False
    adjacency = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    for v in range(g.n):
        if v not in chosen and not (adjacency[v] & chosen):
            return False
    return True


# -- 3-set packing -------------------------------------------------------------


def set_packing(ts: TripleSystem, k: int) -> OracleVerdict:
    """Scan size-k triple subsets for pairwise disjointness."""
    count = len(ts.triples)
    if count > SET_PACKING_TRIPLE_CAP:
        raise ResourceLimitError(
            f"set-packing oracle capped at {SET_PACKING_TRIPLE_CAP} triples, got {count}"
        )
    if k < 0:
        raise UsageError(f"packing size must be >= 0, got {k}")
    if k > count:
        return OracleVerdict(False, None)
    for indices in itertools.combinations(range(count), k):
        union = set()
        for idx in indices:
            union |= set(ts.triples[idx])
        if len(union) == 3 * k:
            assert is_triple_packing(ts, indices, k)
            return OracleVerdict(True, indices)
    return OracleVerdict(False, None)


def is_triple_packing(ts: TripleSystem, indices: Sequence[int], k: int) -> bool:
    """Checker: exactly k distinct triples, pairwise disjoint."""
    if len(indices) != k or len(set(indices)) != k:
        return False
    if any(not 0 <= idx < len(ts.triples) for idx in indices):
        return False
    for a, b in itertools.combinations(indices, 2):
        if set(ts.triples[a]) & set(ts.triples[b]):
            return False
    return True


# -- partition -----------------------------------------------------------------


def partition(vals: ValueMultiset) -> OracleVerdict:
    """Meet-in-the-middle subset-sum search for half the total.

    An odd total is an unsolvable verdict, not an error.  The witness is the
    index set of one side of the split.
    """
    values = vals.values
    count = len(values)
    if count > PARTITION_VALUE_CAP:
        raise ResourceLimitError(
            f"partition oracle capped at {PARTITION_VALUE_CAP} values, got {count}"
        )
    total = sum(values)
    if total % 2 != 0:
        return OracleVerdict(False, None)
    target = total // 2

    half = count // 2
    lo, hi = values[:half], values[half:]
    hi_sums: dict[int, int] = {}
    for mask in range(1 << len(hi)):
        s = sum(hi[b] for b in range(len(hi)) if mask >> b & 1)
        hi_sums.setdefault(s, mask)
    for mask in range(1 << len(lo)):
        s = sum(lo[b] for b in range(len(lo)) if mask >> b & 1)
        rest = hi_sums.get(target - s)
        if rest is not None:
            first = tuple(b for b in range(len(lo)) if mask >> b & 1) + tuple(
                half + b for b in range(len(hi)) if rest >> b & 1
            )
            assert is_equal_split(vals, first)
            return OracleVerdict(True, first)
    return OracleVerdict(False, None)


def is_equal_split(vals: ValueMultiset, first_indices: Sequence[int]) -> bool:
    """Checker: the indexed side and its complement sum to the same value."""
    chosen = set(first_indices)
    if len(chosen) != len(first_indices):
        return False
    if any(not 0 <= i < len(vals.values) for i in chosen):
        return False
    side = sum(vals.values[i] for i in chosen)
    return side == sum(vals.values) - side


# -- 3-sat ---------------------------------------------------------------------


def sat3(f: Cnf3) -> OracleVerdict:
    """Truth-table scan; lexicographically first satisfying assignment (False first)."""
    if f.nvars > SAT_VARIABLE_CAP:
        raise ResourceLimitError(
            f"sat oracle capped at {SAT_VARIABLE_CAP} variables, got {f.nvars}"
        )
    for bits in itertools.product((False, True), repeat=f.nvars):
        if satisfies_formula(f, bits):
            return OracleVerdict(True, bits)
    return OracleVerdict(False, None)


def satisfies_formula(f: Cnf3, assignment: Sequence[bool]) -> bool:
    """Checker: every clause contains at least one true literal."""
    if len(assignment) != f.nvars:
        return False
    for clause in f.clauses:
        if not any(
            assignment[lit - 1] if lit > 0 else not assignment[-lit - 1]
            for lit in clause
        ):
            return False
    return True


# -- multicolor clique ----------------------------------------------------------


def multicolor_clique(g: ColoredGraph, k: int) -> OracleVerdict:
    """Try every one-vertex-per-color tuple (q^k of them) for pairwise adjacency."""
    if k != g.k:
        raise UsageError(f"graph has {g.k} colors but k={k} was requested")
    if g.q ** k > CLIQUE_TUPLE_CAP:
        raise ResourceLimitError(
            f"clique oracle capped at {CLIQUE_TUPLE_CAP} tuples, got {g.q}^{k}"
        )
    classes = color_classes(g)
    adjacent = {frozenset(e) for e in g.edges}
    for picks in itertools.product(range(g.q), repeat=k):
        vertices = tuple(classes[c][picks[c]] for c in range(k))
        if all(
            frozenset((u, v)) in adjacent
            for u, v in itertools.combinations(vertices, 2)
        ):
            assert is_multicolor_clique(g, vertices, k)
            return OracleVerdict(True, vertices)
    return OracleVerdict(False, None)


def is_multicolor_clique(g: ColoredGraph, vertices: Sequence[int], k: int) -> bool:
    """Checker: k vertices, one per color, pairwise adjacent."""
    if len(vertices) != k or len(set(vertices)) != k:
        return False
    if any(not 0 <= v < g.n for v in vertices):
        return False
    if sorted(g.color[v] for v in vertices) != list(range(k)):
        return False
    edges = {frozenset(e) for e in g.edges}
    return all(
        frozenset((u, v)) in edges for u, v in itertools.combinations(vertices, 2)
    )


def color_classes(g: ColoredGraph) -> list[list[int]]:
    """Vertices of each color in ascending vertex order (position = per-color index)."""
    classes: list[list[int]] = [[] for _ in range(g.k)]
    for v in range(g.n):
        classes[g.color[v]].append(v)
    return classes
