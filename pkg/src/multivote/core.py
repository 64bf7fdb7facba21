"""Data model and evaluation semantics for rule-assignment election control.

An instance fixes n voters, t layers, and ell selectable rules, together with
a satisfaction tensor sat[voter][layer][rule] of non-negative integers.  A
rule assignment picks one rule per layer (rules may repeat across layers).  A
voter accepts when their aggregated satisfaction across layers reaches the
threshold d; aggregation is the sum, the maximum, or the minimum of the t
per-layer values depending on the model.  The instance is feasible under an
assignment when at least alpha voters accept.

Everything here is immutable and pure: repeated evaluations of equal inputs
agree exactly, and all functions are safe to call concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError, UsageError

SUM = "sum"
MAX = "max"
MIN = "min"
MODELS = (SUM, MAX, MIN)

# Sum accumulators above this bound are reported as arithmetic errors rather
# than silently producing huge values; partition-style tensors can get close.
SUM_LIMIT = 2**62


def _freeze_tensor(sat) -> tuple:
    return tuple(tuple(tuple(cell) for cell in row) for row in sat)


@dataclass(frozen=True)
class Instance:
    """One decision-problem input: dimensions, tensor, model, and thresholds."""

    n: int
    t: int
    ell: int
    sat: tuple
    model: str
    d: int
    alpha: int

    def __post_init__(self):
        object.__setattr__(self, "sat", _freeze_tensor(self.sat))


@dataclass(frozen=True)
class RuleAssignment:
    """A rule index for each of the t layers."""

    layers: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))


@dataclass(frozen=True)
class EvalReport:
    voter_sat: tuple[int, ...]
    accepted: tuple[bool, ...]
    satisfied_count: int
    feasible: bool


def check_assignment(inst: Instance, a: RuleAssignment) -> None:
    """Raise UsageError unless `a` is a valid assignment for `inst`."""
    layers = a.layers
    if len(layers) != inst.t:
        raise UsageError(f"assignment has {len(layers)} layers, instance has {inst.t}")
    for j, k in enumerate(layers):
        if not 0 <= k < inst.ell:
            raise UsageError(f"assignment layer {j} picks rule {k}, valid range is [0, {inst.ell})")


def evaluate_voter(inst: Instance, a: RuleAssignment, i: int) -> int:
    """Aggregated satisfaction of voter i under assignment `a`.

    Sum model adds the t per-layer values (raising OverflowError past 2^62),
    max/min take the extremes.
    """
    if not 0 <= i < inst.n:
        raise UsageError(f"voter index {i} out of range [0, {inst.n})")
    check_assignment(inst, a)
    return _voter_sat(inst, a.layers, i)


def _voter_sat(inst: Instance, layers: Sequence[int], i: int) -> int:
    row = inst.sat[i]
    if inst.model == SUM:
        total = 0
        for j, k in enumerate(layers):
            total += row[j][k]
            if total > SUM_LIMIT:
                raise OverflowError(
                    f"sum-model satisfaction of voter {i} exceeds {SUM_LIMIT}"
                )
        return total
    values = [row[j][k] for j, k in enumerate(layers)]
    return max(values) if inst.model == MAX else min(values)


def evaluate(inst: Instance, a: RuleAssignment) -> EvalReport:
    """Evaluate every voter and decide feasibility (satisfied count >= alpha)."""
    check_assignment(inst, a)
    voter_sat = tuple(_voter_sat(inst, a.layers, i) for i in range(inst.n))
    accepted = tuple(s >= inst.d for s in voter_sat)
    satisfied = sum(accepted)
    return EvalReport(
        voter_sat=voter_sat,
        accepted=accepted,
        satisfied_count=satisfied,
        feasible=satisfied >= inst.alpha,
    )


def validate(inst: Instance) -> list[str]:
    """Return all invariant violations, naming field and index; [] when well formed.

    Never raises, even on ragged tensors.
    """
    violations = []
    if inst.n < 1:
        violations.append(f"n: must be >= 1, got {inst.n}")
    if inst.t < 1:
        violations.append(f"t: must be >= 1, got {inst.t}")
    if inst.ell < 1:
        violations.append(f"ell: must be >= 1, got {inst.ell}")
    if inst.model not in MODELS:
        violations.append(f"model: must be one of {MODELS}, got {inst.model!r}")
    if inst.d < 0:
        violations.append(f"d: must be >= 0, got {inst.d}")
    if inst.alpha < 0:
        violations.append(f"alpha: must be >= 0, got {inst.alpha}")
    elif inst.alpha > inst.n:
        violations.append(f"alpha: quota {inst.alpha} exceeds voter count {inst.n}")

    sat = inst.sat
    if len(sat) != inst.n:
        violations.append(f"sat: has {len(sat)} voter rows, expected n={inst.n}")
    for i, row in enumerate(sat):
        if len(row) != inst.t:
            violations.append(f"sat[{i}]: has {len(row)} layers, expected t={inst.t}")
        for j, cell in enumerate(row):
            if len(cell) != inst.ell:
                violations.append(f"sat[{i}][{j}]: has {len(cell)} rules, expected ell={inst.ell}")
            for k, value in enumerate(cell):
                if not isinstance(value, int) or isinstance(value, bool):
                    violations.append(f"sat[{i}][{j}][{k}]: not an integer: {value!r}")
                elif value < 0:
                    violations.append(f"sat[{i}][{j}][{k}]: negative value {value}")
    return violations


# -- canonical instance file format ------------------------------------------
#
# Newline-terminated UTF-8 JSON with keys in exactly this order, so identical
# instances serialize to identical bytes:
#   {"n":..,"t":..,"ell":..,"model":..,"d":..,"alpha":..,"sat":[[[..],..],..]}


def dumps_instance(inst: Instance) -> str:
    obj = {
        "n": inst.n,
        "t": inst.t,
        "ell": inst.ell,
        "model": inst.model,
        "d": inst.d,
        "alpha": inst.alpha,
        "sat": [[list(cell) for cell in row] for row in inst.sat],
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(inst))


def _parse_json(text: str, what: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed {what}: {exc.msg}",
                         line=exc.lineno, column=exc.colno, position=exc.pos) from exc
    if not isinstance(obj, dict):
        raise UsageError(f"{what}: expected a JSON object, got {type(obj).__name__}")
    return obj


def _require_int(obj: dict, key: str, what: str) -> int:
    if key not in obj:
        raise UsageError(f"{what}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise UsageError(f"{what}: key {key!r} must be an integer, got {value!r}")
    return value


def loads_instance(text: str) -> Instance:
    """Parse the canonical instance format; ParseError/UsageError on bad input."""
    obj = _parse_json(text, "instance")
    model = obj.get("model")
    if model not in MODELS:
        raise UsageError(f"instance: model must be one of {MODELS}, got {model!r}")
    sat = obj.get("sat")
    if not isinstance(sat, list):
        raise UsageError("instance: key 'sat' must be a list")
    try:
        tensor = _freeze_tensor(sat)
    except TypeError as exc:
        raise UsageError(f"instance: malformed sat tensor: {exc}") from exc
    return Instance(
        n=_require_int(obj, "n", "instance"),
        t=_require_int(obj, "t", "instance"),
        ell=_require_int(obj, "ell", "instance"),
        sat=tensor,
        model=model,
        d=_require_int(obj, "d", "instance"),
        alpha=_require_int(obj, "alpha", "instance"),
    )


def read_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_instance(fh.read())
