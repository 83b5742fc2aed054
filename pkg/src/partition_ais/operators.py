"""Mutation and ageing primitives.

The hypermutation walks a uniformly random permutation of all bit positions,
evaluating after every flip and stopping at the first strict improvement.
A trace of each walk is returned so its per-step distribution can be tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    Assignment,
    ContractViolationError,
    EvaluationCounter,
    Instance,
    flip_in_place,
)

Rng = np.random.Generator


@dataclass(frozen=True)
class HypermutationTrace:
    """One walk: planned flip order, fitness after each executed flip.

    stopped_at is the number of executed flips; it equals n when the walk
    ran to completion, and len(fitness_after) always.
    """

    flip_order: tuple[int, ...]
    fitness_after: tuple[int, ...]
    stopped_at: int


@dataclass
class AgedIndividual:
    """Population unit: assignment, its cached fitness, and its age."""

    x: Assignment
    fitness: int
    age: int


def hypermutate_fcm(
    inst: Instance,
    x: Assignment,
    rng: Rng,
    counter: EvaluationCounter | None = None,
    max_evals: int | None = None,
) -> tuple[Assignment, HypermutationTrace]:
    """Flip all bits of a copy of x in random order, stopping on improvement.

    Every executed flip is evaluated and charged to the counter. The walk ends
    at the first flip that is strictly better than x (a constructive mutation),
    when max_evals flips have been spent, or after all n flips, in which case
    the result is the complement of x. Accepting or rejecting the returned
    offspring is the caller's job.
    """
    n = inst.n
    fx = max(x.load1, x.load2)
    order = rng.permutation(n).tolist()
    y = x.copy()
    fitness_after: list[int] = []
    budget = n if max_evals is None else min(n, max_evals)
    for step in range(budget):
        flip_in_place(inst, y, order[step])
        fy = max(y.load1, y.load2)
        if counter is not None:
            counter.add()
        fitness_after.append(fy)
        if fy < fx:
            break
    trace = HypermutationTrace(
        flip_order=tuple(order),
        fitness_after=tuple(fitness_after),
        stopped_at=len(fitness_after),
    )
    return y, trace


def hypermutation_full_trajectory(
    n: int, x: Sequence[int], rng: Rng
) -> list[tuple[int, ...]]:
    """The n intermediate bitstrings of one random flip permutation.

    Diagnostic mode: no fitness, no early stop, no evaluation charges. The
    string at position i is uniformly distributed among strings at Hamming
    distance i+1 from x.
    """
    if len(x) != n:
        raise ContractViolationError(f"bitstring length {len(x)} does not match n={n}")
    order = rng.permutation(n).tolist()
    y = list(x)
    out = []
    for i in order:
        y[i] ^= 1
        out.append(tuple(y))
    return out


def trajectory_ones_counts(n: int, x: Sequence[int], rng: Rng) -> list[int]:
    """Ones count after each step of one random flip permutation.

    Consumes the same single permutation draw as hypermutation_full_trajectory,
    so both produce identical walks from identical generator states.
    """
    if len(x) != n:
        raise ContractViolationError(f"bitstring length {len(x)} does not match n={n}")
    order = rng.permutation(n)
    steps = np.where(np.asarray(x, dtype=np.int64)[order] == 1, -1, 1)
    return (int(sum(x)) + np.cumsum(steps)).tolist()


def sbm(inst: Instance, x: Assignment, rng: Rng) -> Assignment:
    """Standard bit mutation: each bit flips independently with probability 1/n."""
    n = inst.n
    k = int(rng.binomial(n, 1.0 / n))
    y = x.copy()
    if k == 0:
        return y
    if k == n:
        idx = range(n)
    else:
        # Flip count first, then a uniform k-subset: same distribution as
        # per-bit coin flips.
        while True:
            draw = rng.integers(0, n, size=k).tolist()
            if k == 1 or len(set(draw)) == k:
                idx = draw
                break
    for i in idx:
        flip_in_place(inst, y, i)
    return y


def one_bit_flip(inst: Instance, x: Assignment, rng: Rng) -> Assignment:
    """Flip exactly one uniformly chosen bit."""
    y = x.copy()
    flip_in_place(inst, y, int(rng.integers(0, inst.n)))
    return y
