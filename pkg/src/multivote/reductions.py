"""Instance generators built from hardness constructions, plus back-extraction.

Each generator maps a source combinatorial problem (dominating set, 3-set
packing, partition, 3-sat, multicolor clique) onto a rule-assignment instance
whose feasibility matches the source's solvability; extract() maps a feasible
assignment back to a source solution and has the corresponding oracle checker
certify it before returning.  Together with the oracles module this makes
every construction executable and testable in both directions.

Generators are deterministic: identical sources yield byte-identical
instance files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import oracles
from .core import MAX, MIN, SUM, Instance, RuleAssignment, _parse_json, _require_int
from .errors import ExtractionError, ReductionRefusedError, UsageError

DOMINATING_SET = "dominating_set"
DOMINATING_SET_TWO_RULES = "dominating_set_two_rules"
SET_PACKING = "set_packing"
PARTITION = "partition"
THREE_SAT = "three_sat"
MULTICOLOR_CLIQUE = "multicolor_clique"
REDUCTIONS = (DOMINATING_SET, DOMINATING_SET_TWO_RULES, SET_PACKING,
              PARTITION, THREE_SAT, MULTICOLOR_CLIQUE)


# -- source problems --------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))


@dataclass(frozen=True)
class ColoredGraph:
    """Graph with k color classes of q vertices each and no intra-color edges."""

    n: int
    edges: tuple[tuple[int, int], ...]
    k: int
    q: int
    color: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "color", tuple(self.color))


@dataclass(frozen=True)
class Cnf3:
    """CNF with exactly three (possibly repeated) signed literals per clause."""

    nvars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))


@dataclass(frozen=True)
class TripleSystem:
    """Triples over the universe 0..m-1, each with three distinct elements."""

    m: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))


@dataclass(frozen=True)
class ValueMultiset:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))


def check_graph(g: Graph) -> None:
    if g.n < 1:
        raise UsageError(f"graph must have at least one vertex, got {g.n}")
    seen = set()
    for u, v in g.edges:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise UsageError(f"edge ({u},{v}) references a vertex outside [0, {g.n})")
        if u == v:
            raise UsageError(f"self-loop at vertex {u}")
        key = frozenset((u, v))
        if key in seen:
            raise UsageError(f"duplicate edge ({u},{v})")
        seen.add(key)


def check_colored_graph(g: ColoredGraph) -> None:
    check_graph(Graph(g.n, g.edges))
    if g.k < 1 or g.q < 1:
        raise UsageError(f"need k >= 1 colors and q >= 1 vertices per color, got k={g.k}, q={g.q}")
    if len(g.color) != g.n:
        raise UsageError(f"color map has {len(g.color)} entries for {g.n} vertices")
    if g.n != g.k * g.q:
        raise UsageError(f"expected n = k*q = {g.k * g.q} vertices, got {g.n}")
    counts = [0] * g.k
    for v, c in enumerate(g.color):
        if not 0 <= c < g.k:
            raise UsageError(f"vertex {v} has color {c} outside [0, {g.k})")
        counts[c] += 1
    for c, count in enumerate(counts):
        if count != g.q:
            raise UsageError(f"color {c} has {count} vertices, expected q={g.q}")
    for u, v in g.edges:
        if g.color[u] == g.color[v]:
            raise UsageError(f"intra-color edge ({u},{v}) in color {g.color[u]}")


def check_cnf(f: Cnf3) -> None:
    if f.nvars < 1:
        raise UsageError(f"formula must declare at least one variable, got {f.nvars}")
    if not f.clauses:
        raise UsageError("formula must contain at least one clause")
    for idx, clause in enumerate(f.clauses):
        if len(clause) != 3:
            raise UsageError(f"clause {idx} has {len(clause)} literals, expected 3")
        for lit in clause:
            if lit == 0 or abs(lit) > f.nvars:
                raise UsageError(f"clause {idx} has literal {lit} outside +-1..{f.nvars}")


def check_triples(ts: TripleSystem) -> None:
    if ts.m < 1:
        raise UsageError(f"universe must have at least one element, got {ts.m}")
    for idx, triple in enumerate(ts.triples):
        if len(triple) != 3 or len(set(triple)) != 3:
            raise UsageError(f"triple {idx} must have 3 distinct elements, got {triple}")
        for x in triple:
            if not 0 <= x < ts.m:
                raise UsageError(f"triple {idx} element {x} outside [0, {ts.m})")


def check_values(vals: ValueMultiset) -> None:
    for idx, value in enumerate(vals.values):
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise UsageError(f"values[{idx}] must be a non-negative integer, got {value!r}")


def _closed(n: int, edges) -> list[set[int]]:
    # kept separate from the oracles' equivalent on purpose: generator and
    # oracle must not stand on the same code when their agreement is the test
    closed = [{v} for v in range(n)]
    for u, v in edges:
        closed[u].add(v)
        closed[v].add(u)
    return closed


# -- extraction payloads -----------------------------------------------------------


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class BooleanAssignment:
    values: tuple[bool, ...]


@dataclass(frozen=True)
class Bipartition:
    first: tuple[int, ...]
    second: tuple[int, ...]


@dataclass(frozen=True)
class TripleSelection:
    indices: tuple[int, ...]


# -- generators --------------------------------------------------------------------


def from_dominating_set(g: Graph, k: int) -> Instance:
    """Sum-model instance: a voter and a rule per vertex, k identical layers.

    A rule satisfies a voter iff its vertex closed-dominates the voter's; with
    d=1 and alpha=n the instance is feasible exactly when some <=k vertices
    dominate the graph.
    """
    check_graph(g)
    if not 1 <= k <= g.n:
        raise UsageError(f"k must lie in [1, {g.n}], got {k}")
    closed = _closed(g.n, g.edges)
    column = [[1 if i in closed[r] else 0 for r in range(g.n)] for i in range(g.n)]
    sat = tuple(tuple(tuple(column[i]) for _ in range(k)) for i in range(g.n))
    return Instance(n=g.n, t=k, ell=g.n, sat=sat, model=SUM, d=1, alpha=g.n)


def from_dominating_set_two_rules(g: Graph, k: int) -> Instance:
    """Sum-model instance with exactly two rules and 2n layers.

    Layer j < n mirrors vertex j: the first rule pays each dominated voter,
    the second pays only the extra padding voter.  Layers n..2n-2 pay every
    graph voter under both rules and pay the padding voter on the first k of
    them; the final layer pays nobody.  Thresholds are d=n, alpha=n+1.

    This construction is known to disagree with the dominating-set oracle on
    some inputs (e.g. edgeless graphs with k=n); it is generated verbatim and
    verified diagnostically, never asserted.
    """
    check_graph(g)
    if not 1 <= k <= g.n:
        raise UsageError(f"k must lie in [1, {g.n}], got {k}")
    m = g.n
    closed = _closed(m, g.edges)
    sat = []
    for i in range(m + 1):
        row = []
        for j in range(2 * m):
            if j < m:
                if i < m:
                    row.append((1 if i in closed[j] else 0, 0))
                else:
                    row.append((0, 1))
            elif j < 2 * m - 1:
                if i < m:
                    row.append((1, 1))
                elif j < m + k:
                    row.append((1, 1))
                else:
                    row.append((0, 0))
            else:
                row.append((0, 0))
        sat.append(tuple(row))
    return Instance(n=m + 1, t=2 * m, ell=2, sat=tuple(sat), model=SUM, d=m, alpha=m + 1)


def from_set_packing(ts: TripleSystem, k: int) -> Instance:
    """Sum-model instance: a voter per element, a rule per triple, k layers.

    alpha = 3k demands that the chosen triples cover 3k distinct elements,
    which forces k pairwise-disjoint triples.  When 3k exceeds the universe
    the quota exceeds the voter count and the instance is infeasible outright
    (core.validate flags the quota), matching the unsolvable packing.
    """
    check_triples(ts)
    if not 1 <= k <= len(ts.triples):
        raise UsageError(f"k must lie in [1, {len(ts.triples)}], got {k}")
    column = [
        [1 if i in ts.triples[r] else 0 for r in range(len(ts.triples))]
        for i in range(ts.m)
    ]
    sat = tuple(tuple(tuple(column[i]) for _ in range(k)) for i in range(ts.m))
    return Instance(n=ts.m, t=k, ell=len(ts.triples), sat=sat, model=SUM, d=1, alpha=3 * k)


def from_partition(vals: ValueMultiset, force: bool = False) -> Instance:
    """Sum-model instance with two voters and two rules, one layer per value.

    The first rule routes each layer's value to voter 0, the second to voter
    1; both voters must reach half the total.  Odd or non-positive totals are
    refused unless force is set; a forced odd build rounds the threshold up,
    so it stays infeasible exactly like the unsolvable split.
    """
    check_values(vals)
    if not vals.values:
        raise UsageError("partition instance needs at least one value")
    total = sum(vals.values)
    if not force:
        if total % 2 != 0:
            raise ReductionRefusedError(
                f"total {total} is odd, no equal split exists (pass force to build anyway)"
            )
        if total == 0:
            raise ReductionRefusedError(
                "total is zero (pass force to build the degenerate instance)"
            )
    sat = (
        tuple((value, 0) for value in vals.values),
        tuple((0, value) for value in vals.values),
    )
    return Instance(n=2, t=len(vals.values), ell=2, sat=sat, model=SUM,
                    d=(total + 1) // 2, alpha=2)


def from_3sat(f: Cnf3) -> Instance:
    """Max-model instance: a voter per clause, a layer per variable, two rules.

    The first rule at layer j pays the clauses containing variable j+1
    positively, the second pays those containing it negated; with d=1 and
    alpha=n a feasible assignment is exactly a satisfying truth assignment
    (first rule = true).
    """
    check_cnf(f)
    sat = []
    for clause in f.clauses:
        row = []
        for var in range(1, f.nvars + 1):
            row.append((1 if var in clause else 0, 1 if -var in clause else 0))
        sat.append(tuple(row))
    return Instance(n=len(f.clauses), t=f.nvars, ell=2, sat=tuple(sat),
                    model=MAX, d=1, alpha=len(f.clauses))


def from_multicolor_clique(g: ColoredGraph, k: int) -> Instance:
    """Min-model instance: a voter per vertex, a layer per color, a rule per index.

    Rule r at layer j stands for the r-th vertex of color j; a voter keeps
    satisfaction 1 across all layers exactly when its vertex is adjacent (or
    equal) to every picked vertex.  With alpha = k the accepted voters must be
    the picked vertices themselves, i.e. a multicolor clique.
    """
    check_colored_graph(g)
    if k != g.k:
        raise UsageError(f"graph has {g.k} colors but k={k} was requested")
    classes = oracles.color_classes(g)
    closed = _closed(g.n, g.edges)
    sat = []
    for c in range(g.k):
        for pos in range(g.q):
            vertex = classes[c][pos]
            row = []
            for j in range(g.k):
                row.append(tuple(
                    1 if vertex in closed[classes[j][r]] else 0 for r in range(g.q)
                ))
            sat.append(tuple(row))
    return Instance(n=g.q * g.k, t=g.k, ell=g.q, sat=tuple(sat),
                    model=MIN, d=1, alpha=g.k)


# -- back-extraction ----------------------------------------------------------------


def _infer_graph_reduction(g: Graph, inst: Instance) -> str:
    if inst.n == g.n + 1 and inst.t == 2 * g.n and inst.ell == 2:
        return DOMINATING_SET_TWO_RULES
    if inst.n == g.n and inst.ell == g.n:
        return DOMINATING_SET
    raise UsageError(
        f"instance shape ({inst.n},{inst.t},{inst.ell}) matches no graph reduction "
        f"for a {g.n}-vertex graph"
    )


def extract(source, inst: Instance, witness: RuleAssignment, reduction: str | None = None):
    """Map a feasible assignment back to a source solution and certify it.

    The payload type mirrors the source problem; an ExtractionError (carrying
    the witness and the failed check) means the generator or extractor is
    broken, not the caller.
    """
    layers = witness.layers
    if isinstance(source, Graph):
        name = reduction or _infer_graph_reduction(source, inst)
        if name == DOMINATING_SET:
            vertices = tuple(sorted(set(layers)))
            if not oracles.is_dominating_set(source, vertices, inst.t):
                raise ExtractionError("extracted vertices do not dominate the graph",
                                      witness=layers, check="dominating set of size <= t")
            return VertexSet(vertices)
        vertices = tuple(j for j in range(source.n) if j < len(layers) and layers[j] == 0)
        if not oracles.is_dominating_set(source, vertices, None):
            raise ExtractionError("first-rule layers do not dominate the graph",
                                  witness=layers, check="dominating set")
        return VertexSet(vertices)
    if isinstance(source, ValueMultiset):
        first = tuple(j for j, k in enumerate(layers) if k == 0)
        second = tuple(j for j, k in enumerate(layers) if k != 0)
        if not oracles.is_equal_split(source, first):
            raise ExtractionError("first-rule layers do not split the values evenly",
                                  witness=layers, check="equal split")
        return Bipartition(first, second)
    if isinstance(source, Cnf3):
        values = tuple(k == 0 for k in layers)
        if not oracles.satisfies_formula(source, values):
            raise ExtractionError("extracted truth assignment leaves a clause false",
                                  witness=layers, check="all clauses satisfied")
        return BooleanAssignment(values)
    if isinstance(source, TripleSystem):
        indices = tuple(sorted(set(layers)))
        if not oracles.is_triple_packing(source, indices, inst.t):
            raise ExtractionError("chosen triples are not a disjoint packing",
                                  witness=layers, check=f"{inst.t} pairwise-disjoint triples")
        return TripleSelection(indices)
    if isinstance(source, ColoredGraph):
        classes = oracles.color_classes(source)
        vertices = tuple(classes[j][k] for j, k in enumerate(layers))
        if not oracles.is_multicolor_clique(source, vertices, inst.t):
            raise ExtractionError("picked vertices are not a multicolor clique",
                                  witness=layers, check=f"multicolor clique of size {inst.t}")
        return VertexSet(vertices)
    raise UsageError(f"unknown source type {type(source).__name__}")


# -- source file formats -------------------------------------------------------------
#
# graph          {"n":int,"edges":[[u,v],...]}
# colored graph  {"n":int,"edges":[[u,v],...],"k":int,"q":int,"color":[int,...]}
# cnf            {"vars":int,"clauses":[[lit,lit,lit],...]}   negative = negated
# triples        {"m":int,"triples":[[a,b,c],...]}
# values         {"values":[int,...]}


def _as_int(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise UsageError(f"{where} must be an integer, got {value!r}")
    return value


def _int_pairs(obj, key: str, what: str) -> tuple:
    raw = obj.get(key)
    if not isinstance(raw, list):
        raise UsageError(f"{what}: key {key!r} must be a list")
    out = []
    for idx, item in enumerate(raw):
        if not isinstance(item, list) or len(item) != 2:
            raise UsageError(f"{what}: {key}[{idx}] must be a pair")
        out.append((_as_int(item[0], f"{what}: {key}[{idx}][0]"),
                    _as_int(item[1], f"{what}: {key}[{idx}][1]")))
    return tuple(out)


def loads_graph(text: str) -> Graph:
    obj = _parse_json(text, "graph")
    g = Graph(n=_require_int(obj, "n", "graph"), edges=_int_pairs(obj, "edges", "graph"))
    check_graph(g)
    return g


def dumps_graph(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]},
                      separators=(",", ":")) + "\n"


def loads_colored_graph(text: str) -> ColoredGraph:
    obj = _parse_json(text, "colored graph")
    color = obj.get("color")
    if not isinstance(color, list):
        raise UsageError("colored graph: key 'color' must be a list")
    color = [_as_int(c, f"colored graph: color[{i}]") for i, c in enumerate(color)]
    g = ColoredGraph(
        n=_require_int(obj, "n", "colored graph"),
        edges=_int_pairs(obj, "edges", "colored graph"),
        k=_require_int(obj, "k", "colored graph"),
        q=_require_int(obj, "q", "colored graph"),
        color=tuple(color),
    )
    check_colored_graph(g)
    return g


def dumps_colored_graph(g: ColoredGraph) -> str:
    obj = {"n": g.n, "edges": [list(e) for e in g.edges], "k": g.k, "q": g.q,
           "color": list(g.color)}
    return json.dumps(obj, separators=(",", ":")) + "\n"


def loads_cnf(text: str) -> Cnf3:
    obj = _parse_json(text, "cnf")
    clauses = obj.get("clauses")
    if not isinstance(clauses, list):
        raise UsageError("cnf: key 'clauses' must be a list")
    for idx, clause in enumerate(clauses):
        if not isinstance(clause, list) or len(clause) != 3:
            raise UsageError(f"cnf: clauses[{idx}] must be a triple of literals")
        for pos, lit in enumerate(clause):
            _as_int(lit, f"cnf: clauses[{idx}][{pos}]")
    f = Cnf3(nvars=_require_int(obj, "vars", "cnf"),
             clauses=tuple(tuple(c) for c in clauses))
    check_cnf(f)
    return f


def dumps_cnf(f: Cnf3) -> str:
    return json.dumps({"vars": f.nvars, "clauses": [list(c) for c in f.clauses]},
                      separators=(",", ":")) + "\n"


def loads_triples(text: str) -> TripleSystem:
    obj = _parse_json(text, "triple system")
    triples = obj.get("triples")
    if not isinstance(triples, list):
        raise UsageError("triple system: key 'triples' must be a list")
    for idx, triple in enumerate(triples):
        if not isinstance(triple, list) or len(triple) != 3:
            raise UsageError(f"triple system: triples[{idx}] must be a triple")
        for pos, x in enumerate(triple):
            _as_int(x, f"triple system: triples[{idx}][{pos}]")
    ts = TripleSystem(m=_require_int(obj, "m", "triple system"),
                      triples=tuple(tuple(t) for t in triples))
    check_triples(ts)
    return ts


def dumps_triples(ts: TripleSystem) -> str:
    return json.dumps({"m": ts.m, "triples": [list(t) for t in ts.triples]},
                      separators=(",", ":")) + "\n"


def loads_values(text: str) -> ValueMultiset:
    obj = _parse_json(text, "value multiset")
    values = obj.get("values")
    if not isinstance(values, list):
        raise UsageError("value multiset: key 'values' must be a list")
    vals = ValueMultiset(values=tuple(values))
    check_values(vals)
    return vals


def dumps_values(vals: ValueMultiset) -> str:
    return json.dumps({"values": list(vals.values)}, separators=(",", ":")) + "\n"


SOURCE_LOADERS = {
    DOMINATING_SET: loads_graph,
    DOMINATING_SET_TWO_RULES: loads_graph,
    SET_PACKING: loads_triples,
    PARTITION: loads_values,
    THREE_SAT: loads_cnf,
    MULTICOLOR_CLIQUE: loads_colored_graph,
}
