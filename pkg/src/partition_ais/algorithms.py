"""Solver loops with exact evaluation accounting.

Every runner charges one evaluation per sampled solution, checks its stop
condition after every single evaluation, and is bit-for-bit deterministic in
(instance, parameters, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .core import (
    Assignment,
    ContractViolationError,
    EvaluationCounter,
    Instance,
    is_local_optimum,
)
from .operators import AgedIndividual, hypermutate_fcm, one_bit_flip, sbm

Rng = np.random.Generator
Mutate = Callable[[Instance, Assignment, Rng], Assignment]


@dataclass(frozen=True)
class StopCondition:
    """Evaluation budget plus optional absolute or ratio targets."""

    max_evaluations: int
    target_makespan: int | None = None
    target_ratio: Fraction | None = None

    def __post_init__(self) -> None:
        if self.max_evaluations < 1:
            raise ContractViolationError("max_evaluations must be at least 1")
        if self.target_ratio is not None and self.target_ratio < 1:
            raise ContractViolationError("target_ratio below 1 is unreachable")

    def resolve_targets(self, optimum: int | None) -> tuple[int | None, int | None]:
        """Absolute thresholds (target, ratio); ratio needs a known optimum."""
        ratio_target = None
        if self.target_ratio is not None:
            if optimum is None:
                raise ContractViolationError("target_ratio requires a known optimum")
            r = self.target_ratio
            ratio_target = (optimum * r.numerator) // r.denominator
        return self.target_makespan, ratio_target


@dataclass(frozen=True)
class TrialResult:
    """Per-run record; stagnation_log keeps (evaluation index, event) pairs."""

    seed: int
    evaluations_used: int
    best_makespan: int
    best_assignment: Assignment
    terminated_by: str
    reinit_count: int | None
    stagnation_log: tuple[tuple[int, str], ...]
    fitness_trace: tuple[int, ...] | None = None


def _rng(seed: int) -> Rng:
    return np.random.Generator(np.random.PCG64(seed))


def _random_assignment(inst: Instance, rng: Rng) -> Assignment:
    bits = rng.integers(0, 2, size=inst.n).tolist()
    load2 = sum(t for t, b in zip(inst.p, bits) if b)
    return Assignment(bits=bits, load1=inst.W - load2, load2=load2)


def _termination(best: int, target: int | None, ratio_target: int | None) -> str | None:
    if target is not None and best <= target:
        return "target"
    if ratio_target is not None and best <= ratio_target:
        return "ratio"
    return None


def _finish(
    inst: Instance,
    stop: StopCondition,
    seed: int,
    evals: int,
    best_f: int,
    best_x: Assignment,
    terminated_by: str,
    reinit_count: int | None,
    log: list[tuple[int, str]],
    trace: list[int] | None,
) -> TrialResult:
    if best_f < (inst.W + 1) // 2:
        raise ContractViolationError("best makespan fell below W/2; accounting is broken")
    if evals > stop.max_evaluations:
        raise ContractViolationError("evaluation budget was exceeded")
    return TrialResult(
        seed=seed,
        evaluations_used=evals,
        best_makespan=best_f,
        best_assignment=best_x,
        terminated_by=terminated_by,
        reinit_count=reinit_count,
        stagnation_log=tuple(log),
        fitness_trace=tuple(trace) if trace is not None else None,
    )


def _climb(
    inst: Instance,
    x: Assignment,
    fx: int,
    rng: Rng,
    mutate: Mutate,
    evals: int,
    seg_end: int,
    target: int | None,
    ratio_target: int | None,
    counter: EvaluationCounter | None,
    trace: list[int] | None,
    log: list[tuple[int, str]],
) -> tuple[Assignment, int, int, str | None]:
    """Mutate-and-select with acceptance f(y) <= f(x) until seg_end evaluations."""
    while evals < seg_end:
        y = mutate(inst, x, rng)
        fy = max(y.load1, y.load2)
        evals += 1
        if counter is not None:
            counter.add()
        if trace is not None:
            trace.append(fy)
        if fy <= fx:
            improved = fy < fx
            x, fx = y, fy
            if improved and is_local_optimum(inst, x):
                log.append((evals, "local_optimum"))
            reason = _termination(fx, target, ratio_target)
            if reason is not None:
                return x, fx, evals, reason
    return x, fx, evals, None


def _run_descent(
    inst: Instance,
    stop: StopCondition,
    seed: int,
    mutate: Mutate,
    optimum: int | None,
    counter: EvaluationCounter | None,
    record_trace: bool,
) -> TrialResult:
    target, ratio_target = stop.resolve_targets(optimum)
    rng = _rng(seed)
    trace: list[int] | None = [] if record_trace else None
    log: list[tuple[int, str]] = []
    x = _random_assignment(inst, rng)
    fx = max(x.load1, x.load2)
    evals = 1
    if counter is not None:
        counter.add()
    if trace is not None:
        trace.append(fx)
    if is_local_optimum(inst, x):
        log.append((evals, "local_optimum"))
    reason = _termination(fx, target, ratio_target)
    if reason is None:
        x, fx, evals, reason = _climb(
            inst, x, fx, rng, mutate, evals, stop.max_evaluations,
            target, ratio_target, counter, trace, log,
        )
    return _finish(inst, stop, seed, evals, fx, x, reason or "budget", None, log, trace)


def run_one_one_ea(
    inst: Instance,
    stop: StopCondition,
    seed: int,
    *,
    optimum: int | None = None,
    counter: EvaluationCounter | None = None,
    record_trace: bool = False,
) -> TrialResult:
    """Single parent, standard bit mutation, accept offspring iff not worse."""
    return _run_descent(inst, stop, seed, sbm, optimum, counter, record_trace)


def run_rls(
    inst: Instance,
    stop: StopCondition,
    seed: int,
    *,
    optimum: int | None = None,
    counter: EvaluationCounter | None = None,
    record_trace: bool = False,
) -> TrialResult:
    """Single parent, one uniformly chosen bit flip, accept iff not worse."""
    return _run_descent(inst, stop, seed, one_bit_flip, optimum, counter, record_trace)


def run_ia_hyp(
    inst: Instance,
    stop: StopCondition,
    seed: int,
    *,
    optimum: int | None = None,
    counter: EvaluationCounter | None = None,
    record_trace: bool = False,
) -> TrialResult:
    """Hypermutation walks with first-constructive stops; accept iff not worse.

    A walk that finds no strict improvement flips all n bits and therefore
    hands back the complement, which ties and is accepted.
    """
    target, ratio_target = stop.resolve_targets(optimum)
    rng = _rng(seed)
    trace: list[int] | None = [] if record_trace else None
    log: list[tuple[int, str]] = []
    x = _random_assignment(inst, rng)
    fx = max(x.load1, x.load2)
    evals = 1
    if counter is not None:
        counter.add()
    if trace is not None:
        trace.append(fx)
    if is_local_optimum(inst, x):
        log.append((evals, "local_optimum"))
    reason = _termination(fx, target, ratio_target)
    while reason is None and evals < stop.max_evaluations:
        y, walk = hypermutate_fcm(
            inst, x, rng, counter, max_evals=stop.max_evaluations - evals
        )
        evals += walk.stopped_at
        if trace is not None:
            trace.extend(walk.fitness_after)
        fy = max(y.load1, y.load2)
        if fy <= fx:
            improved = fy < fx
            x, fx = y, fy
            if improved and is_local_optimum(inst, x):
                log.append((evals, "local_optimum"))
            reason = _termination(fx, target, ratio_target)
    return _finish(inst, stop, seed, evals, fx, x, reason or "budget", None, log, trace)


def run_mu_ea_ageing(
    inst: Instance,
    mu: int,
    tau: int,
    stop: StopCondition,
    seed: int,
    *,
    optimum: int | None = None,
    counter: EvaluationCounter | None = None,
    record_trace: bool = False,
) -> TrialResult:
    """Population of mu with ageing: stale individuals die at age tau.

    Generation order is fixed: ages increment first, then one offspring is
    bred and evaluated, then age removals, then truncation of one worst if
    oversized, then refills to mu with fresh random individuals. An offspring
    strictly better than its parent starts at age 0, otherwise it inherits
    the parent's age. When age removal empties the whole population, that is
    a reinitialization event.
    """
    if mu < 1:
        raise ContractViolationError("mu must be at least 1")
    if tau < 1:
        raise ContractViolationError("tau must be at least 1")
    target, ratio_target = stop.resolve_targets(optimum)
    rng = _rng(seed)
    trace: list[int] | None = [] if record_trace else None
    log: list[tuple[int, str]] = []
    budget = stop.max_evaluations
    evals = 0
    best_f: int | None = None
    best_x: Assignment | None = None
    reinits = 0

    def note_best(x: Assignment, f: int) -> None:
        nonlocal best_f, best_x
        if best_f is None or f < best_f:
            best_f = f
            best_x = x.copy()
            if is_local_optimum(inst, x):
                log.append((evals, "local_optimum"))

    def fresh() -> AgedIndividual:
        nonlocal evals
        x = _random_assignment(inst, rng)
        f = max(x.load1, x.load2)
        evals += 1
        if counter is not None:
            counter.add()
        if trace is not None:
            trace.append(f)
        note_best(x, f)
        return AgedIndividual(x=x, fitness=f, age=0)

    population: list[AgedIndividual] = []
    reason: str | None = None
    while len(population) < mu and reason is None and evals < budget:
        population.append(fresh())
        reason = _termination(best_f, target, ratio_target)

    while reason is None and evals < budget:
        for ind in population:
            ind.age += 1
        parent = population[int(rng.integers(0, len(population)))]
        y = sbm(inst, parent.x, rng)
        fy = max(y.load1, y.load2)
        evals += 1
        if counter is not None:
            counter.add()
        if trace is not None:
            trace.append(fy)
        note_best(y, fy)
        age = 0 if fy < parent.fitness else parent.age
        population.append(AgedIndividual(x=y, fitness=fy, age=age))
        reason = _termination(best_f, target, ratio_target)
        if reason is not None:
            break
        survivors = [ind for ind in population if ind.age < tau]
        if not survivors:
            reinits += 1
            log.append((evals, "reinit"))
        population = survivors
        if len(population) > mu:
            worst = max(ind.fitness for ind in population)
            ties = [j for j, ind in enumerate(population) if ind.fitness == worst]
            j = ties[int(rng.integers(0, len(ties)))] if len(ties) > 1 else ties[0]
            population.pop(j)
        while len(population) < mu and reason is None and evals < budget:
            population.append(fresh())
            reason = _termination(best_f, target, ratio_target)

    assert best_f is not None and best_x is not None
    return _finish(
        inst, stop, seed, evals, best_f, best_x, reason or "budget", reinits, log, trace
    )


def run_with_restarts(
    algo: str,
    inst: Instance,
    restart_length: int,
    stop: StopCondition,
    seed: int,
    *,
    optimum: int | None = None,
    counter: EvaluationCounter | None = None,
    record_trace: bool = False,
) -> TrialResult:
    """Independent segments of restart_length evaluations on one seed stream.

    Each segment starts from a fresh random solution (its evaluation counts
    toward the segment); the best solution over all segments is returned.
    With restart_length equal to the whole budget this reproduces the base
    algorithm exactly, draw for draw.
    """
    if algo == "ea":
        mutate: Mutate = sbm
    elif algo == "rls":
        mutate = one_bit_flip
    else:
        raise ContractViolationError("restart wrapper supports algo 'ea' or 'rls'")
    if restart_length < 1:
        raise ContractViolationError("restart_length must be at least 1")
    target, ratio_target = stop.resolve_targets(optimum)
    rng = _rng(seed)
    trace: list[int] | None = [] if record_trace else None
    log: list[tuple[int, str]] = []
    budget = stop.max_evaluations
    evals = 0
    best_f: int | None = None
    best_x: Assignment | None = None
    reason: str | None = None
    while reason is None and evals < budget:
        if evals > 0:
            log.append((evals + 1, "restart"))
        seg_start = evals
        x = _random_assignment(inst, rng)
        fx = max(x.load1, x.load2)
        evals += 1
        if counter is not None:
            counter.add()
        if trace is not None:
            trace.append(fx)
        if is_local_optimum(inst, x):
            log.append((evals, "local_optimum"))
        owns_best = best_f is None or fx < best_f
        if owns_best:
            best_f = fx
            best_x = x.copy()
        reason = _termination(fx, target, ratio_target)
        if reason is None:
            seg_end = min(budget, seg_start + restart_length)
            x, fx, evals, reason = _climb(
                inst, x, fx, rng, mutate, evals, seg_end,
                target, ratio_target, counter, trace, log,
            )
            # the owning segment keeps exporting its drift through equal-
            # makespan moves, matching the plain runners' final state
            if fx < best_f or owns_best:
                best_f = fx
                best_x = x.copy()
    assert best_f is not None and best_x is not None
    return _finish(
        inst, stop, seed, evals, best_f, best_x, reason or "budget", None, log, trace
    )


def restart_length_for_ratio(n: int, eps: Fraction | tuple[int, int]) -> int:
    """Restart schedule ceil(e * n * ln(4/eps)) for approximation-target runs."""
    f = Fraction(*eps) if isinstance(eps, tuple) else Fraction(eps)
    if f <= 0:
        raise ContractViolationError("eps must be positive")
    return math.ceil(math.e * n * math.log(4 / float(f)))
