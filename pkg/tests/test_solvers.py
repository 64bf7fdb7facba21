"""Cross-validation of every solver against brute enumeration and the oracles."""

import itertools
import random

import pytest

from multivote.cli import random_instance
from multivote.core import Instance, RuleAssignment, evaluate
from multivote.errors import ResourceLimitError, UsageError
from multivote.oracles import dominating_set, sat3
from multivote.reductions import (Cnf3, ColoredGraph, Graph, from_3sat,
                                  from_dominating_set, from_multicolor_clique)
from multivote.solvers import (dumps_result, rule_types, solve, solve_brute,
                               solve_min_subsets, solve_min_unanimous,
                               solve_subset_fpt)

K3 = Graph(3, ((0, 1), (1, 2), (0, 2)))
C5 = Graph(5, tuple((i, (i + 1) % 5) for i in range(5)))


def random_01_instance(rng, model, alpha=None):
    n, t, ell = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
    sat = tuple(tuple(tuple(rng.randint(0, 1) for _ in range(ell))
                      for _ in range(t)) for _ in range(n))
    if alpha is None:
        alpha = rng.randint(0, n)
    return Instance(n, t, ell, sat, model, rng.randint(0, 4), alpha)


# -- brute ------------------------------------------------------------------------


def test_brute_single_rule_single_assignment():
    inst = Instance(1, 2, 1, (((1,), (0,)),), "sum", 1, 1)
    result = solve_brute(inst)
    assert result.feasible and result.stats.assignments == 1
    assert result.assignment.layers == (0, 0)


def test_brute_triangle_cover_feasible():
    assert dominating_set(K3, 1).solvable  # oracle agrees a single vertex suffices
    assert solve_brute(from_dominating_set(K3, 1)).feasible


def test_brute_five_cycle_single_vertex_infeasible():
    assert not dominating_set(C5, 1).solvable
    result = solve_brute(from_dominating_set(C5, 1))
    assert not result.feasible
    assert result.stats.assignments == 5  # ell^t = 5^1, the whole space


def test_brute_budget_is_checked_upfront():
    inst = random_instance(2, 10, 3, "sum", 5, 1, 0, 2, 1)
    with pytest.raises(ResourceLimitError) as err:
        solve_brute(inst, budget=1000)
    assert "1000" in str(err.value)


def test_brute_returns_lexicographically_first_witness():
    rng = random.Random(41)
    for _ in range(60):
        inst = random_instance(rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3),
                               rng.choice(("sum", "max", "min")), rng.randint(0, 4),
                               0, 0, 2, rng.getrandbits(32))
        inst = Instance(inst.n, inst.t, inst.ell, inst.sat, inst.model, inst.d,
                        rng.randint(0, inst.n))
        expected = None
        for combo in itertools.product(range(inst.ell), repeat=inst.t):
            if evaluate(inst, RuleAssignment(combo)).feasible:
                expected = combo
                break
        result = solve_brute(inst)
        assert result.feasible == (expected is not None)
        if expected is not None:
            assert result.assignment.layers == expected


# -- min model ---------------------------------------------------------------------


def test_min_unanimous_all_zero_infeasible():
    inst = Instance(1, 1, 1, (((0,),),), "min", 1, 1)
    assert not solve_min_unanimous(inst).feasible


def test_min_unanimous_first_rule_works():
    sat = tuple(tuple((2, 0) for _ in range(2)) for _ in range(3))
    inst = Instance(3, 2, 2, sat, "min", 2, 3)
    result = solve_min_unanimous(inst)
    assert result.feasible and result.assignment.layers == (0, 0)


def test_min_unanimous_worst_case_reads():
    n, t, ell, d = 3, 2, 4, 2
    # every rule satisfies all but the last voter: each scan reads n entries
    sat = tuple(tuple(tuple(d if i < n - 1 else d - 1 for _ in range(ell))
                      for _ in range(t)) for i in range(n))
    result = solve_min_unanimous(Instance(n, t, ell, sat, "min", d, n))
    assert not result.feasible
    assert result.stats.sat_reads == n * t * ell


def test_min_unanimous_preconditions():
    inst = Instance(2, 1, 1, (((1,),), ((1,),)), "sum", 1, 2)
    with pytest.raises(UsageError):
        solve_min_unanimous(inst)
    inst = Instance(2, 1, 1, (((1,),), ((1,),)), "min", 1, 1)
    with pytest.raises(UsageError):
        solve_min_unanimous(inst)


def test_min_unanimous_matches_brute():
    rng = random.Random(42)
    for _ in range(120):
        inst = random_01_instance(rng, "min", alpha=None)
        inst = Instance(inst.n, inst.t, inst.ell, inst.sat, "min", inst.d, inst.n)
        assert solve_min_unanimous(inst).feasible == solve_brute(inst).feasible


def test_min_subsets_full_quota_agrees_with_unanimous():
    rng = random.Random(43)
    for _ in range(80):
        inst = random_01_instance(rng, "min")
        inst = Instance(inst.n, inst.t, inst.ell, inst.sat, "min", inst.d, inst.n)
        assert solve_min_subsets(inst).feasible == solve_min_unanimous(inst).feasible


def test_min_subsets_single_cross_pair_clique():
    # two colors, two vertices each, exactly one adjacent cross pair
    g = ColoredGraph(4, ((0, 2),), 2, 2, (0, 0, 1, 1))
    inst = from_multicolor_clique(g, 2)
    assert solve_min_subsets(inst).feasible  # the pair (0,2) is the clique
    bare = ColoredGraph(4, (), 2, 2, (0, 0, 1, 1))
    assert not solve_min_subsets(from_multicolor_clique(bare, 2)).feasible


def test_min_subsets_matches_brute():
    rng = random.Random(44)
    for _ in range(150):
        inst = random_01_instance(rng, "min")
        assert solve_min_subsets(inst).feasible == solve_brute(inst).feasible


def test_min_subsets_cap():
    inst = random_instance(25, 1, 1, "min", 1, 20, 0, 1, 1)
    with pytest.raises(ResourceLimitError):
        solve_min_subsets(inst)


# -- rule types ----------------------------------------------------------------------


def test_rule_types_merges_identical_columns():
    sat = (((1, 1),), ((0, 0),))
    types = rule_types(Instance(2, 1, 2, sat, "sum", 1, 2), 0)
    assert len(types) == 1
    assert types[0].representative_rule == 0
    assert types[0].mask == 0b01


def test_rule_types_one_hot_columns_stay_distinct():
    n = 3
    sat = tuple((tuple(1 if k == i else 0 for k in range(n)),) for i in range(n))
    types = rule_types(Instance(n, 1, n, sat, "sum", 1, n), 0)
    assert len(types) == n
    assert sorted(t.mask for t in types) == [1, 2, 4]


def test_rule_types_triangle_single_type_per_layer():
    inst = from_dominating_set(K3, 2)
    for layer in range(inst.t):
        types = rule_types(inst, layer)
        assert len(types) == 1
        assert types[0].mask == 0b111


def test_rule_types_partition_property():
    rng = random.Random(45)
    for _ in range(60):
        inst = random_01_instance(rng, rng.choice(("sum", "max", "min")))
        for layer in range(inst.t):
            types = rule_types(inst, layer)
            threshold = 1 if inst.model == "sum" else inst.d
            masks = {}
            for k in range(inst.ell):
                mask = sum(1 << i for i in range(inst.n)
                           if inst.sat[i][layer][k] >= threshold)
                masks.setdefault(mask, []).append(k)
            assert {t.mask for t in types} == set(masks)
            for t in types:
                assert t.representative_rule == masks[t.mask][0]
        with pytest.raises(UsageError):
            rule_types(inst, inst.t)


# -- subset search for sum/max ----------------------------------------------------------


def test_subset_fpt_one_rule_satisfies_everyone():
    sat = (((5, 0), (0, 0)), ((5, 0), (0, 0)))
    inst = Instance(2, 2, 2, sat, "max", 5, 2)
    result = solve_subset_fpt(inst)
    assert result.feasible and result.assignment.layers[0] == 0


def test_subset_fpt_formula_instances():
    sat_formula = Cnf3(3, ((1, 2, 3), (-1, 2, -3)))
    assert sat3(sat_formula).solvable
    assert solve_subset_fpt(from_3sat(sat_formula)).feasible
    unsat_formula = Cnf3(1, ((1, 1, 1), (-1, -1, -1)))
    assert not sat3(unsat_formula).solvable
    assert not solve_subset_fpt(from_3sat(unsat_formula)).feasible


def test_subset_fpt_matches_brute_on_01_sum():
    rng = random.Random(46)
    for _ in range(150):
        inst = random_01_instance(rng, "sum")
        assert solve_subset_fpt(inst).feasible == solve_brute(inst).feasible


def test_subset_fpt_matches_brute_on_max():
    rng = random.Random(47)
    for _ in range(150):
        n, t, ell = rng.randint(1, 4), rng.randint(1, 3), rng.randint(1, 4)
        sat = tuple(tuple(tuple(rng.randint(0, 4) for _ in range(ell))
                          for _ in range(t)) for _ in range(n))
        inst = Instance(n, t, ell, sat, "max", rng.randint(0, 5), rng.randint(0, n))
        assert solve_subset_fpt(inst).feasible == solve_brute(inst).feasible


def test_subset_fpt_rejects_general_sum():
    inst = Instance(1, 1, 1, (((2,),),), "sum", 2, 1)
    with pytest.raises(UsageError) as err:
        solve_subset_fpt(inst)
    assert "brute" in str(err.value)
    with pytest.raises(UsageError):
        solve_subset_fpt(Instance(1, 1, 1, (((1,),),), "min", 1, 1))


def test_subset_fpt_cap():
    inst = random_instance(21, 1, 1, "max", 1, 20, 0, 1, 1)
    with pytest.raises(ResourceLimitError):
        solve_subset_fpt(inst)


# -- dispatch ------------------------------------------------------------------------


def test_dispatch_min_full_quota():
    inst = random_instance(3, 2, 2, "min", 1, 3, 0, 1, 9)
    assert solve(inst).method == "min_unanimous"


def test_dispatch_small_voters_many_layers():
    inst = random_instance(2, 10, 2, "sum", 3, 2, 0, 1, 9)
    assert solve(inst).method == "subset_fpt"


def test_dispatch_agrees_with_brute():
    rng = random.Random(48)
    for _ in range(150):
        inst = random_instance(rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4),
                               rng.choice(("sum", "max", "min")), rng.randint(0, 6),
                               0, 0, 3, rng.getrandbits(32))
        inst = Instance(inst.n, inst.t, inst.ell, inst.sat, inst.model, inst.d,
                        rng.randint(0, inst.n))
        assert solve(inst).feasible == solve_brute(inst).feasible


def test_dispatch_strategy_precondition_errors():
    inst = random_instance(2, 2, 2, "sum", 1, 1, 0, 3, 5)
    with pytest.raises(UsageError):
        solve(inst, strategy="min_unanimous")
    with pytest.raises(UsageError):
        solve(inst, strategy="nonsense")
    with pytest.raises(UsageError):
        solve(inst, threads=0)


def test_dispatch_no_method_lists_budgets():
    inst = random_instance(2, 30, 3, "sum", 5, 2, 0, 4, 5)
    with pytest.raises(ResourceLimitError) as err:
        solve(inst)
    assert "budget" in str(err.value)


# -- cross-cutting properties -----------------------------------------------------------


def test_feasible_results_reevaluate_feasible():
    rng = random.Random(49)
    for _ in range(100):
        inst = random_01_instance(rng, rng.choice(("sum", "max", "min")))
        results = [solve_brute(inst), solve(inst)]
        if inst.model == "min":
            results.append(solve_min_subsets(inst))
        else:
            results.append(solve_subset_fpt(inst))
        for result in results:
            if result.feasible:
                assert evaluate(inst, result.assignment).feasible


def test_solvers_are_deterministic():
    rng = random.Random(50)
    for _ in range(40):
        inst = random_01_instance(rng, rng.choice(("sum", "max", "min")))
        first, second = solve(inst), solve(inst)
        assert first.feasible == second.feasible
        assert first.assignment == second.assignment
        assert first.method == second.method


def test_feasibility_ordering_across_models():
    rng = random.Random(51)
    for _ in range(100):
        n, t, ell = rng.randint(1, 4), rng.randint(1, 3), rng.randint(1, 3)
        sat = tuple(tuple(tuple(rng.randint(0, 1) for _ in range(ell))
                          for _ in range(t)) for _ in range(n))
        alpha = rng.randint(0, n)
        feas = {
            model: solve_brute(Instance(n, t, ell, sat, model, 1, alpha)).feasible
            for model in ("min", "max", "sum")
        }
        if feas["min"]:
            assert feas["max"]
        if feas["max"]:
            assert feas["sum"]  # 0/1 tensor at d=1: coverage at some layer


def test_result_serialization_key_order():
    inst = Instance(1, 1, 1, (((1,),),), "sum", 1, 1)
    result = solve_brute(inst)
    text = dumps_result(result)
    assert text.startswith('{"feasible":true,"assignment":[0],"method":"brute","stats":'
                           '{"assignments":1,"subsets":0,"rule_types":0,"elapsed_ns":')
    infeasible = solve_brute(Instance(1, 1, 1, (((0,),),), "sum", 1, 1))
    assert '"assignment":null' in dumps_result(infeasible)
