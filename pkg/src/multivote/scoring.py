"""Satisfaction tensors from ranked-preference profiles, plus dichotomization.

A profile holds one strict ranking per voter per layer over m candidates; the
positional rules here (Borda, plurality, veto, k-approval) turn those rankings
into the integer tensor the core model consumes, scored for the distinguished
candidate p.  Dichotomization collapses a max-model instance to a 0/1 tensor
with threshold 1 without changing feasibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .core import MAX, Instance, _parse_json, _require_int
from .errors import UsageError

BORDA = "borda"
PLURALITY = "plurality"
VETO = "veto"
KAPPROVAL = "kapproval"
RULE_KINDS = (BORDA, PLURALITY, VETO, KAPPROVAL)


@dataclass(frozen=True)
class RuleSpec:
    """A positional scoring rule; k is the approval cutoff for kapproval only."""

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise UsageError(f"unknown rule kind {self.kind!r}, expected one of {RULE_KINDS}")
        if (self.kind == KAPPROVAL) != (self.k is not None):
            raise UsageError("rule parameter k is required for kapproval and only kapproval")


@dataclass(frozen=True)
class Profile:
    """m candidates, distinguished candidate p, and an n x t matrix of rankings."""

    m: int
    p: int
    rankings: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "rankings", tuple(tuple(tuple(r) for r in row) for row in self.rankings)
        )


def _rank_of(ranking: Sequence[int], c: int, m: int) -> int:
    if sorted(ranking) != list(range(m)):
        raise UsageError(f"ranking {list(ranking)} is not a permutation of 0..{m - 1}")
    return ranking.index(c)


def score(rule: RuleSpec, ranking: Sequence[int], c: int) -> int:
    """Score of candidate c under the rule, rank 0 being most preferred.

    Borda: m-1-rank.  Plurality: 1 iff ranked first.  Veto: 0 iff ranked
    last.  K-approval: 1 iff rank < k.
    """
    m = len(ranking)
    if not 0 <= c < m:
        raise UsageError(f"candidate {c} out of range [0, {m})")
    rank = _rank_of(ranking, c, m)
    if rule.kind == BORDA:
        return m - 1 - rank
    if rule.kind == PLURALITY:
        return 1 if rank == 0 else 0
    if rule.kind == VETO:
        return 0 if rank == m - 1 else 1
    if not 1 <= rule.k <= m:
        raise UsageError(f"kapproval cutoff {rule.k} out of range [1, {m}]")
    return 1 if rank < rule.k else 0


def build_tensor(profile: Profile, rules: Sequence[RuleSpec]) -> tuple:
    """tensor[i][j][k] = score of p in voter i's layer-j ranking under rules[k]."""
    if not rules:
        raise UsageError("at least one rule is required to build a tensor")
    if not 0 <= profile.p < profile.m:
        raise UsageError(f"distinguished candidate {profile.p} out of range [0, {profile.m})")
    return tuple(
        tuple(
            tuple(score(rule, ranking, profile.p) for rule in rules)
            for ranking in voter_rows
        )
        for voter_rows in profile.rankings
    )


def dichotomize(inst: Instance, d: int) -> Instance:
    """Map every tensor entry to 1 if >= d else 0 and reset the threshold to 1.

    Only defined for max-model instances, where a voter accepts exactly when
    some layer reaches d; the mapping preserves feasibility for every alpha.
    """
    if inst.model != MAX:
        raise UsageError(f"dichotomize applies to max-model instances, got {inst.model!r}")
    mapped = tuple(
        tuple(tuple(1 if v >= d else 0 for v in cell) for cell in row) for row in inst.sat
    )
    return Instance(n=inst.n, t=inst.t, ell=inst.ell, sat=mapped,
                    model=MAX, d=1, alpha=inst.alpha)


# -- profile file format --------------------------------------------------------
#
# {"m":int,"p":int,"rankings":[[[...],...],...],
#  "rules":[{"kind":"borda"},{"kind":"kapproval","k":2},...]}


def dumps_profile(profile: Profile, rules: Sequence[RuleSpec]) -> str:
    obj = {
        "m": profile.m,
        "p": profile.p,
        "rankings": [[list(r) for r in row] for row in profile.rankings],
        "rules": [
            {"kind": r.kind} if r.k is None else {"kind": r.kind, "k": r.k} for r in rules
        ],
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def loads_profile(text: str) -> tuple[Profile, list[RuleSpec]]:
    obj = _parse_json(text, "profile")
    m = _require_int(obj, "m", "profile")
    p = _require_int(obj, "p", "profile")
    rankings = obj.get("rankings")
    if not isinstance(rankings, list) or not rankings:
        raise UsageError("profile: key 'rankings' must be a non-empty list")
    for i, row in enumerate(rankings):
        if not isinstance(row, list) or not row:
            raise UsageError(f"profile: rankings[{i}] must be a non-empty list")
        for j, ranking in enumerate(row):
            if not isinstance(ranking, list) or sorted(ranking) != list(range(m)):
                raise UsageError(
                    f"profile: rankings[{i}][{j}] is not a permutation of 0..{m - 1}"
                )
    rules_obj = obj.get("rules")
    if not isinstance(rules_obj, list) or not rules_obj:
        raise UsageError("profile: key 'rules' must be a non-empty list")
    rules = []
    for idx, entry in enumerate(rules_obj):
        if not isinstance(entry, dict) or "kind" not in entry:
            raise UsageError(f"profile: rules[{idx}] must be an object with a 'kind'")
        rules.append(RuleSpec(kind=entry["kind"], k=entry.get("k")))
    if not 0 <= p < m:
        raise UsageError(f"profile: p={p} out of range [0, {m})")
    return Profile(m=m, p=p, rankings=rankings), rules


def read_profile(path) -> tuple[Profile, list[RuleSpec]]:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_profile(fh.read())
