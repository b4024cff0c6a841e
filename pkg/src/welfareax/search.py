"""Randomized counterexample search with greedy shrinking.

``find_counterexample`` draws seeded instances of one axiom, checks each
against an ordering, and returns the first violation after shrinking.
Shrinking first drops individuals (population), then reverts donors to
bystanders, then simplifies values toward small integers; every accepted
shrink re-validates the hypothesis clauses and re-checks the violation,
so a returned witness always reproduces. Deterministic throughout:
identical budgets yield identical witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Mapping

from .axioms import (
    Anonymity,
    AxiomInstance,
    CheckResult,
    MinimalAggregation,
    PigouDalton,
    ReplicationInvariance,
    check_axiom,
    generate_instances,
    validate_preconditions,
)
from .orderings import DEFAULT_TOLERANCE, OrderingSpec
from .profiles import IndexSet, Profile

_MAX_SHRINK_ROUNDS = 10_000


@dataclass(frozen=True)
class SearchBudget:
    max_instances: int
    seed: int = 0
    populations: tuple[int, int] = (2, 10)
    values: tuple = (-20, 20)

    def __post_init__(self):
        if self.max_instances < 1:
            raise ValueError("budget must allow at least one instance")
        if self.populations[0] > self.populations[1]:
            raise ValueError("empty population range")


@dataclass(frozen=True)
class Witness:
    instance: AxiomInstance
    result: CheckResult
    shrink_steps: int


def _metric(inst: AxiomInstance) -> tuple[int, Fraction]:
    total = sum(abs(x) * c for x, c in inst.u.blocks)
    v = getattr(inst, "v", None)
    if isinstance(v, Profile):
        total += sum(abs(x) * c for x, c in v.blocks)
    return len(inst.u), total


def _reindex(index: int, dropped: int) -> int:
    return index - 1 if index > dropped else index


def _drop_position(inst: AxiomInstance, p: int) -> AxiomInstance | None:
    """Instance with person p removed, or None when p is structurally needed."""
    n = len(inst.u)
    if n <= 2:
        return None
    u_levels = list(inst.u.levels())
    del u_levels[p]
    u = Profile.from_levels(u_levels)

    if isinstance(inst, Anonymity):
        target = inst.pi[p]
        pi = [t - 1 if t > target else t for idx, t in enumerate(inst.pi) if idx != p]
        return Anonymity(u, tuple(pi))
    if isinstance(inst, PigouDalton):
        if p in (inst.i, inst.j):
            return None
        return PigouDalton(u, _reindex(inst.i, p), _reindex(inst.j, p), inst.epsilon)

    v_levels = list(inst.v.levels())
    del v_levels[p]
    v = Profile.from_levels(v_levels)
    if isinstance(inst, ReplicationInvariance):
        return replace(inst, u=u, v=v)
    if isinstance(inst, MinimalAggregation):
        if p == inst.i:
            return None
        return replace(inst, u=u, v=v, i=_reindex(inst.i, p))
    if hasattr(inst, "i") and hasattr(inst, "M"):
        if p == inst.i:
            return None
        M = IndexSet.from_indices(_reindex(m, p) for m in inst.M if m != p)
        if len(M) == 0:
            return None
        return replace(inst, u=u, v=v, i=_reindex(inst.i, p), M=M)
    return replace(inst, u=u, v=v)  # plain Pareto pairs


def _revert_donor(inst: AxiomInstance, j: int) -> AxiomInstance | None:
    """Move donor j out of M, reverting its post-change level."""
    if not hasattr(inst, "M") or j not in inst.M:
        return None
    M = IndexSet.from_indices(m for m in inst.M if m != j)
    if len(M) == 0:
        return None
    v = inst.v.with_value_at(j, inst.u.value_at(j))
    return replace(inst, v=v, M=M)


def _simplify_values(inst: AxiomInstance, p: int) -> Iterator[AxiomInstance]:
    u_p = inst.u.value_at(p)
    if isinstance(inst, (Anonymity, PigouDalton)):
        special = (inst.i, inst.j) if isinstance(inst, PigouDalton) else ()
        if p in special:
            return
        for candidate in (Fraction(0), Fraction(u_p.__floor__())):
            if candidate != u_p:
                yield replace(inst, u=inst.u.with_value_at(p, candidate))
        return
    v_p = inst.v.value_at(p)
    pairs = []
    if u_p == v_p:
        pairs = [(Fraction(0), Fraction(0)), (Fraction(u_p.__floor__()),) * 2]
    else:
        pairs = [(Fraction(u_p.__floor__()), Fraction(v_p.__floor__()))]
    for cu, cv in pairs:
        if (cu, cv) != (u_p, v_p):
            yield replace(
                inst, u=inst.u.with_value_at(p, cu), v=inst.v.with_value_at(p, cv)
            )


def _candidates(inst: AxiomInstance) -> Iterator[AxiomInstance]:
    n = len(inst.u)
    for p in range(n):
        candidate = _drop_position(inst, p)
        if candidate is not None:
            yield candidate
    if hasattr(inst, "M"):
        for j in list(inst.M):
            candidate = _revert_donor(inst, j)
            if candidate is not None:
                yield candidate
    for p in range(n):
        yield from _simplify_values(inst, p)


def _shrink(
    spec: OrderingSpec, inst: AxiomInstance, tolerance: Fraction
) -> tuple[AxiomInstance, int]:
    steps = 0
    current = inst
    current_metric = _metric(inst)
    for _ in range(_MAX_SHRINK_ROUNDS):
        improved = False
        for candidate in _candidates(current):
            if _metric(candidate) >= current_metric:
                continue
            if not validate_preconditions(candidate).ok:
                continue
            if not check_axiom(spec, candidate, tolerance).violated:
                continue
            current = candidate
            current_metric = _metric(candidate)
            steps += 1
            improved = True
            break
        if not improved:
            break
    return current, steps


def shrink(
    witness: Witness, spec: OrderingSpec, tolerance: Fraction = DEFAULT_TOLERANCE
) -> Witness:
    """Greedy re-shrink; idempotent once the witness is at a fixpoint."""
    inst, steps = _shrink(spec, witness.instance, tolerance)
    if steps == 0:
        return witness
    return Witness(inst, check_axiom(spec, inst, tolerance), witness.shrink_steps + steps)


def find_counterexample(
    spec: OrderingSpec,
    axiom: str,
    params: Mapping[str, object],
    budget: SearchBudget,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> Witness | None:
    """First violating instance within the budget, shrunk; None if clean."""
    stream = generate_instances(
        axiom,
        params,
        populations=budget.populations,
        values=budget.values,
        seed=budget.seed,
    )
    for inst in itertools.islice(stream, budget.max_instances):
        result = check_axiom(spec, inst, tolerance)
        if result.violated:
            shrunk, steps = _shrink(spec, inst, tolerance)
            return Witness(shrunk, check_axiom(spec, shrunk, tolerance), steps)
    return None
