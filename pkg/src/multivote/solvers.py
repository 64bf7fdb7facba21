"""Exact decision procedures for rule-assignment feasibility.

Four methods, all returning the same SolveResult shape:

* solve_brute          -- enumerate every one of the ell^t assignments in
                          lexicographic order; the universal reference.
* solve_min_unanimous  -- min model with alpha = n: one independent pass per
                          layer over rules and voters, O(n*t*ell) reads.
* solve_min_subsets    -- min model, any alpha: enumerate candidate accepted
                          voter sets (2^n), largest first, and reuse the
                          per-layer check restricted to the set.
* solve_subset_fpt     -- max model, or sum model on 0/1 tensors: enumerate
                          candidate accepted sets, then search one rule type
                          per layer with pruning.  This realizes the exact
                          binary program over x[layer][type] variables (one
                          type per layer; every candidate voter covered) as a
                          depth-first search after deduplicating rules into
                          types.

solve() dispatches among them, preferring the cheapest method whose
preconditions and budgets allow it.  Witnesses are deterministic: brute
returns the lexicographically first feasible assignment, the others are
pure functions of the instance.  Every feasible result is re-checked
through core.evaluate before it is returned.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass

from .core import MAX, MIN, SUM, SUM_LIMIT, Instance, RuleAssignment, evaluate
from .errors import ResourceLimitError, UsageError

DEFAULT_ASSIGNMENT_BUDGET = 10**8
DEFAULT_MIN_SUBSET_CAP = 24
DEFAULT_FPT_CAP = 20

BRUTE = "brute"
MIN_UNANIMOUS = "min_unanimous"
MIN_SUBSETS = "min_subsets"
SUBSET_FPT = "subset_fpt"
AUTO = "auto"
STRATEGIES = (AUTO, BRUTE, MIN_UNANIMOUS, MIN_SUBSETS, SUBSET_FPT)


@dataclass(frozen=True)
class SolveStats:
    """Work counters; sat_reads backs the O(n*t*ell) claim for min_unanimous."""

    assignments: int = 0
    subsets: int = 0
    rule_types: int = 0
    elapsed_ns: int = 0
    sat_reads: int = 0


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    assignment: RuleAssignment | None
    stats: SolveStats
    method: str


@dataclass(frozen=True)
class RuleType:
    """Rules indistinguishable at one layer: same satisfied-voter mask."""

    layer: int
    mask: int
    representative_rule: int


def is_zero_one(inst: Instance) -> bool:
    return all(v in (0, 1) for row in inst.sat for cell in row for v in cell)


def _finish(inst: Instance, feasible: bool, layers: tuple[int, ...] | None,
            method: str, start_ns: int, **counters) -> SolveResult:
    assignment = None
    if feasible:
        assignment = RuleAssignment(layers)
        report = evaluate(inst, assignment)
        if not report.feasible:
            raise RuntimeError(
                f"internal error: {method} produced an assignment that fails re-evaluation"
            )
    stats = SolveStats(elapsed_ns=time.perf_counter_ns() - start_ns, **counters)
    return SolveResult(feasible=feasible, assignment=assignment, stats=stats, method=method)


# -- full enumeration -----------------------------------------------------------


def _coverage_masks(inst: Instance, threshold: int) -> list[list[int]]:
    """masks[j][k]: bit i set iff sat[i][j][k] >= threshold."""
    masks = [[0] * inst.ell for _ in range(inst.t)]
    for i in range(inst.n):
        bit = 1 << i
        row = inst.sat[i]
        for j in range(inst.t):
            cell = row[j]
            for k in range(inst.ell):
                if cell[k] >= threshold:
                    masks[j][k] |= bit
    return masks


def solve_brute(inst: Instance, budget: int | None = None) -> SolveResult:
    """Try all ell^t assignments in lexicographic order; first feasible wins.

    Infeasible instances therefore examine exactly ell^t assignments.  The
    space is checked against the budget before any work happens.
    """
    budget = DEFAULT_ASSIGNMENT_BUDGET if budget is None else budget
    space = inst.ell ** inst.t
    if space > budget:
        raise ResourceLimitError(
            f"assignment budget exceeded: ell^t = {inst.ell}^{inst.t} = {space} > {budget}"
        )
    start = time.perf_counter_ns()
    n, t, alpha = inst.n, inst.t, inst.alpha
    full = (1 << n) - 1
    examined = 0

    if inst.d == 0:
        # Non-negative values always reach a zero threshold: every voter
        # accepts under every assignment, so only the quota matters.
        for combo in itertools.product(range(inst.ell), repeat=t):
            examined += 1
            if n >= alpha:
                return _finish(inst, True, combo, BRUTE, start, assignments=examined)
        return _finish(inst, False, None, BRUTE, start, assignments=examined)

    mask_mode = None
    if inst.model == MAX:
        mask_mode, masks = "or", _coverage_masks(inst, inst.d)
    elif inst.model == MIN:
        mask_mode, masks = "and", _coverage_masks(inst, inst.d)
    elif inst.d == 1 and is_zero_one(inst):
        # 0/1 sum with threshold 1: accepted iff covered at some layer.
        mask_mode, masks = "or", _coverage_masks(inst, 1)

    if mask_mode == "or":
        for combo in itertools.product(range(inst.ell), repeat=t):
            examined += 1
            acc = 0
            for j, k in enumerate(combo):
                acc |= masks[j][k]
            if acc.bit_count() >= alpha:
                return _finish(inst, True, combo, BRUTE, start, assignments=examined)
        return _finish(inst, False, None, BRUTE, start, assignments=examined)

    if mask_mode == "and":
        for combo in itertools.product(range(inst.ell), repeat=t):
            examined += 1
            acc = full
            for j, k in enumerate(combo):
                acc &= masks[j][k]
                if not acc:
                    break
            if acc.bit_count() >= alpha:
                return _finish(inst, True, combo, BRUTE, start, assignments=examined)
        return _finish(inst, False, None, BRUTE, start, assignments=examined)

    sat, d = inst.sat, inst.d
    for combo in itertools.product(range(inst.ell), repeat=t):
        examined += 1
        count = 0
        for i in range(n):
            row = sat[i]
            total = 0
            for j, k in enumerate(combo):
                total += row[j][k]
                if total > SUM_LIMIT:
                    raise OverflowError(
                        f"sum-model satisfaction of voter {i} exceeds {SUM_LIMIT}"
                    )
            if total >= d:
                count += 1
        if count >= alpha:
            return _finish(inst, True, combo, BRUTE, start, assignments=examined)
    return _finish(inst, False, None, BRUTE, start, assignments=examined)


# -- min model ------------------------------------------------------------------


def solve_min_unanimous(inst: Instance) -> SolveResult:
    """Min model with alpha = n: per layer, the lowest rule satisfying everyone.

    Layers are checked independently even after one fails, so the read
    counter is exactly n*t*ell in the worst case.
    """
    if inst.model != MIN:
        raise UsageError(f"min_unanimous requires the min model, got {inst.model!r}")
    if inst.alpha != inst.n:
        raise UsageError(f"min_unanimous requires alpha = n, got alpha={inst.alpha}, n={inst.n}")
    start = time.perf_counter_ns()
    sat, d = inst.sat, inst.d
    reads = 0
    chosen: list[int | None] = []
    for j in range(inst.t):
        pick = None
        for k in range(inst.ell):
            ok = True
            for i in range(inst.n):
                reads += 1
                if sat[i][j][k] < d:
                    ok = False
                    break
            if ok:
                pick = k
                break
        chosen.append(pick)
    feasible = all(pick is not None for pick in chosen)
    layers = tuple(chosen) if feasible else None
    return _finish(inst, feasible, layers, MIN_UNANIMOUS, start, sat_reads=reads)


def solve_min_subsets(inst: Instance, cap: int | None = None) -> SolveResult:
    """Min model, any quota: enumerate accepted-voter candidates, big sets first.

    Subsets of each size are visited in lexicographic order of their index
    tuples; the per-layer check of solve_min_unanimous runs restricted to the
    subset.  Starting from the full set makes the alpha = n case the first
    thing refuted or solved.
    """
    if inst.model != MIN:
        raise UsageError(f"min_subsets requires the min model, got {inst.model!r}")
    cap = DEFAULT_MIN_SUBSET_CAP if cap is None else cap
    if inst.n > cap:
        raise ResourceLimitError(f"min_subsets capped at n <= {cap}, got n = {inst.n}")
    start = time.perf_counter_ns()
    masks = _coverage_masks(inst, inst.d)
    subsets = 0
    for size in range(inst.n, inst.alpha - 1, -1):
        if size < 0:
            break
        for subset in itertools.combinations(range(inst.n), size):
            subsets += 1
            required = 0
            for i in subset:
                required |= 1 << i
            chosen = []
            for j in range(inst.t):
                pick = None
                for k in range(inst.ell):
                    if masks[j][k] & required == required:
                        pick = k
                        break
                if pick is None:
                    break
                chosen.append(pick)
            if len(chosen) == inst.t:
                return _finish(inst, True, tuple(chosen), MIN_SUBSETS, start, subsets=subsets)
    return _finish(inst, False, None, MIN_SUBSETS, start, subsets=subsets)


# -- rule types and the subset search for sum/max --------------------------------


def rule_types(inst: Instance, layer: int) -> list[RuleType]:
    """Partition the rules at one layer by satisfied-voter mask.

    For max/min the mask thresholds at d (a rule "covers" a voter whose entry
    reaches d); for sum the mask records positive contributions, which is the
    coverage notion the subset solver consumes on 0/1 tensors.  The
    representative is the lowest rule index of each class, and classes are
    listed in order of first appearance.
    """
    if not 0 <= layer < inst.t:
        raise UsageError(f"layer {layer} out of range [0, {inst.t})")
    threshold = 1 if inst.model == SUM else inst.d
    seen: dict[int, int] = {}
    for k in range(inst.ell):
        mask = 0
        for i in range(inst.n):
            if inst.sat[i][layer][k] >= threshold:
                mask |= 1 << i
        seen.setdefault(mask, k)
    return [RuleType(layer=layer, mask=mask, representative_rule=rep)
            for mask, rep in seen.items()]


def solve_subset_fpt(inst: Instance, cap: int | None = None) -> SolveResult:
    """Search accepted-voter candidates x one rule type per layer.

    Max model accepts arbitrary tensors (coverage thresholds at d); sum model
    is restricted to 0/1 tensors, where per-layer contributions are exactly
    the mask bits.  Each candidate set V' of size >= alpha is tried largest
    first; a depth-first search assigns one rule type per layer and prunes a
    branch as soon as some voter in V' cannot reach the threshold even if all
    remaining layers help (sum) or can never be covered by any remaining
    layer (max).
    """
    if inst.model == SUM:
        if not is_zero_one(inst):
            raise UsageError(
                "subset_fpt handles sum instances only with 0/1 tensors; use solve_brute"
            )
    elif inst.model != MAX:
        raise UsageError(f"subset_fpt requires the max model or 0/1 sum, got {inst.model!r}")
    cap = DEFAULT_FPT_CAP if cap is None else cap
    if inst.n > cap:
        raise ResourceLimitError(f"subset_fpt capped at n <= {cap}, got n = {inst.n}")

    start = time.perf_counter_ns()
    n, t = inst.n, inst.t
    types = [rule_types(inst, j) for j in range(t)]
    types_total = sum(len(layer_types) for layer_types in types)

    # any_cover[j]: voters coverable at layer j by some type; potential[j][i]:
    # how many layers >= j can still cover voter i (the optimistic remainder).
    any_cover = [0] * t
    for j in range(t):
        for rt in types[j]:
            any_cover[j] |= rt.mask
    potential = [[0] * n for _ in range(t + 1)]
    for j in range(t - 1, -1, -1):
        for i in range(n):
            potential[j][i] = potential[j + 1][i] + (any_cover[j] >> i & 1)

    need_per_voter = 1 if inst.model == MAX else inst.d
    subsets = 0
    completions = 0

    def search(members: tuple[int, ...]) -> tuple[int, ...] | None:
        nonlocal completions
        need = {i: need_per_voter for i in members}
        chosen: list[int] = []

        def rest_filled() -> tuple[int, ...]:
            return tuple(chosen) + tuple(
                types[j][0].representative_rule for j in range(len(chosen), t)
            )

        def dfs(j: int) -> tuple[int, ...] | None:
            nonlocal completions
            if all(v <= 0 for v in need.values()):
                completions += 1
                return rest_filled()
            if j == t:
                return None
            for i, v in need.items():
                if v > potential[j][i]:
                    return None
            for rt in types[j]:
                touched = [i for i in need if rt.mask >> i & 1 and need[i] > 0]
                for i in touched:
                    need[i] -= 1
                chosen.append(rt.representative_rule)
                found = dfs(j + 1)
                chosen.pop()
                for i in touched:
                    need[i] += 1
                if found is not None:
                    return found
            return None

        return dfs(0)

    lower = max(inst.alpha, 0)
    for size in range(n, lower - 1, -1):
        for subset in itertools.combinations(range(n), size):
            subsets += 1
            layers = search(subset)
            if layers is not None:
                return _finish(inst, True, layers, SUBSET_FPT, start,
                               subsets=subsets, rule_types=types_total,
                               assignments=completions)
    return _finish(inst, False, None, SUBSET_FPT, start,
                   subsets=subsets, rule_types=types_total, assignments=completions)


# -- dispatch --------------------------------------------------------------------


def solve(inst: Instance, strategy: str = AUTO, *, budget: int | None = None,
          min_subset_cap: int | None = None, fpt_cap: int | None = None,
          threads: int = 1) -> SolveResult:
    """Run the requested strategy, or pick the cheapest applicable one.

    Auto dispatch: min model with alpha = n uses the linear per-layer scan;
    other min instances use the subset solver when its 2^n * n * t * ell cost
    beats ell^t; max and 0/1-sum instances use the type search when n is
    capped and it is the FPT side of the boundary (n > t) or simply cheaper.
    Everything else enumerates.  A resource error lists every violated budget
    when no method applies.
    """
    if threads < 1:
        raise UsageError(f"threads must be >= 1, got {threads}")
    if strategy not in STRATEGIES:
        raise UsageError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    if strategy == BRUTE:
        return solve_brute(inst, budget)
    if strategy == MIN_UNANIMOUS:
        return solve_min_unanimous(inst)
    if strategy == MIN_SUBSETS:
        return solve_min_subsets(inst, min_subset_cap)
    if strategy == SUBSET_FPT:
        return solve_subset_fpt(inst, fpt_cap)

    budget_value = DEFAULT_ASSIGNMENT_BUDGET if budget is None else budget
    min_cap = DEFAULT_MIN_SUBSET_CAP if min_subset_cap is None else min_subset_cap
    fpt_cap_value = DEFAULT_FPT_CAP if fpt_cap is None else fpt_cap
    space = inst.ell ** inst.t
    subset_cost = (2 ** inst.n) * inst.n * inst.t * inst.ell

    if inst.model == MIN:
        if inst.alpha == inst.n:
            return solve_min_unanimous(inst)
        if inst.n <= min_cap and (subset_cost < space or space > budget_value):
            return solve_min_subsets(inst, min_cap)
        if space <= budget_value:
            return solve_brute(inst, budget_value)
        raise ResourceLimitError(
            f"no applicable method: n = {inst.n} > subset cap {min_cap} and "
            f"ell^t = {space} > assignment budget {budget_value}"
        )

    if inst.model == MAX or (inst.model == SUM and is_zero_one(inst)):
        if inst.n <= fpt_cap_value and (
            inst.n > inst.t or subset_cost < space or space > budget_value
        ):
            return solve_subset_fpt(inst, fpt_cap_value)
        if space <= budget_value:
            return solve_brute(inst, budget_value)
        raise ResourceLimitError(
            f"no applicable method: n = {inst.n} > subset cap {fpt_cap_value} and "
            f"ell^t = {space} > assignment budget {budget_value}"
        )

    if space <= budget_value:
        return solve_brute(inst, budget_value)
    raise ResourceLimitError(
        f"no applicable method for a general sum instance: "
        f"ell^t = {space} > assignment budget {budget_value}"
    )


# -- serialization ---------------------------------------------------------------
#
# {"feasible":bool,"assignment":[..]|null,"method":str,
#  "stats":{"assignments":..,"subsets":..,"rule_types":..,"elapsed_ns":..}}


def result_to_obj(result: SolveResult) -> dict:
    return {
        "feasible": result.feasible,
        "assignment": list(result.assignment.layers) if result.assignment else None,
        "method": result.method,
        "stats": {
            "assignments": result.stats.assignments,
            "subsets": result.stats.subsets,
            "rule_types": result.stats.rule_types,
            "elapsed_ns": result.stats.elapsed_ns,
        },
    }


def dumps_result(result: SolveResult) -> str:
    return json.dumps(result_to_obj(result), separators=(",", ":")) + "\n"
