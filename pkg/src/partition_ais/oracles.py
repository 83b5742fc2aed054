"""Exact and classical reference algorithms used as ground truth.

The subset-sum reachability solver and the exhaustive scanner are independent
routes to the optimal makespan; tests hold them against each other.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import Assignment, ContractViolationError, Instance

_DP_CELL_LIMIT = 1_000_000_000
_ENUM_N_LIMIT = 24
_INT64_LIMIT = 1 << 62


class CapacityError(RuntimeError):
    """The instance is too large for this oracle's stated resource budget."""


@dataclass(frozen=True)
class LocalOptimaSummary:
    """Distinct makespans over all single-flip local optima, ascending."""

    distinct_makespans: tuple[int, ...]

    def count_above(self, threshold: int | Fraction) -> int:
        """How many distinct locally optimal makespans lie strictly above threshold."""
        return sum(1 for v in self.distinct_makespans if v > threshold)


@dataclass(frozen=True)
class IntervalCounts:
    """Evaluations binned by the locally-optimal makespan levels.

    Bin i covers [boundaries[i], boundaries[i+1]); the last bin is open above.
    interior_counts exclude evaluations sitting exactly on a boundary level.
    """

    boundaries: tuple[int, ...]
    counts: tuple[int, ...]
    interior_counts: tuple[int, ...]


def _dp_guard(inst: Instance) -> None:
    cells = inst.n * inst.W
    if cells > _DP_CELL_LIMIT:
        raise CapacityError(
            f"dp table would need {cells} cells; the limit is {_DP_CELL_LIMIT}"
        )


def dp_optimal_makespan(inst: Instance) -> int:
    """Exact optimum by subset-sum reachability over loads 0..W/2.

    One bitset row; bit j says some subset reaches load j. The best half-load
    is the highest reachable bit.
    """
    _dp_guard(inst)
    half = inst.W // 2
    mask = (1 << (half + 1)) - 1
    reach = 1
    for t in inst.p:
        reach = (reach | (reach << t)) & mask
    return inst.W - (reach.bit_length() - 1)


def dp_optimal_assignment(inst: Instance) -> tuple[int, Assignment]:
    """Optimum plus a witness assignment, backtracking over stored rows."""
    _dp_guard(inst)
    half = inst.W // 2
    mask = (1 << (half + 1)) - 1
    rows = [1]
    for t in inst.p:
        rows.append((rows[-1] | (rows[-1] << t)) & mask)
    load = rows[-1].bit_length() - 1
    best = inst.W - load
    bits = [0] * inst.n
    for i in range(inst.n - 1, -1, -1):
        if (rows[i] >> load) & 1:
            continue
        bits[i] = 1
        load -= inst.p[i]
    return best, Assignment.from_bits(inst, bits)


def brute_force_optimum(inst: Instance) -> tuple[int, Assignment]:
    """Exhaustive scan of all assignments with bit 0 fixed by machine symmetry."""
    if inst.n > _ENUM_N_LIMIT:
        raise CapacityError(f"exhaustive scan is limited to n <= {_ENUM_N_LIMIT}")
    if inst.W >= _INT64_LIMIT:
        raise CapacityError("exhaustive scan needs W below 2^62")
    W = inst.W
    loads = np.zeros(1, dtype=np.int64)
    for t in inst.p[1:]:
        loads = np.concatenate([loads, loads + t])
    make = np.maximum(loads, W - loads)
    k = int(np.argmin(make))
    bits = [0] + [(k >> j) & 1 for j in range(inst.n - 1)]
    return int(make[k]), Assignment.from_bits(inst, bits)


def lpt(inst: Instance) -> Assignment:
    """Greedy longest-processing-time assignment; ties go to machine 1."""
    bits = []
    load1 = load2 = 0
    for t in inst.p:
        if load1 <= load2:
            bits.append(0)
            load1 += t
        else:
            bits.append(1)
            load2 += t
    return Assignment(bits=bits, load1=load1, load2=load2)


def enumerate_local_optima(inst: Instance) -> LocalOptimaSummary:
    """Every symmetry-reduced assignment, tested for single-flip optimality.

    A solution is locally optimal iff the fuller machine's smallest job is at
    least the discrepancy; vectorized over chunks of assignment indices.
    """
    if inst.n > _ENUM_N_LIMIT:
        raise CapacityError(f"enumeration is limited to n <= {_ENUM_N_LIMIT}")
    if inst.W >= _INT64_LIMIT:
        raise CapacityError("enumeration needs W below 2^62")
    n, W = inst.n, inst.W
    p_rest = np.asarray(inst.p[1:], dtype=np.int64)
    shifts = np.arange(max(n - 1, 0), dtype=np.uint32)
    big = np.int64(W + 1)
    found: set[int] = set()
    total = 1 << (n - 1)
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.uint32)
        bitsmat = ((idx[:, None] >> shifts[None, :]) & 1).astype(np.int64)
        load2 = bitsmat @ p_rest
        load1 = W - load2
        disc = np.abs(load1 - load2)
        fuller2 = load2 > load1
        on_fuller = bitsmat == fuller2[:, None].astype(np.int64)
        vals = np.where(on_fuller, p_rest[None, :], big)
        minp = vals.min(axis=1, initial=big)
        # job 0 sits on machine 1; it joins the minimum when machine 1 is fuller
        minp = np.where(~fuller2, np.minimum(minp, np.int64(inst.p[0])), minp)
        local = (disc == 0) | (minp >= disc)
        found.update(int(v) for v in np.unique(np.maximum(load1, load2)[local]))
    return LocalOptimaSummary(distinct_makespans=tuple(sorted(found)))


def g_star_local_optima(inst: Instance) -> tuple[int, ...]:
    """Locally optimal makespans of a two-valued gstar instance, analytically.

    With h heavy jobs and a light jobs on one machine, only balance-adjacent
    light counts and the all-or-none boundaries can be stable, so a constant
    number of candidate configurations per h covers every local optimum.
    """
    meta = inst.meta
    if meta.family != "gstar" or meta.s is None:
        raise ContractViolationError("analytic local optima need a gstar-tagged instance")
    s, n, W = meta.s, inst.n, inst.W
    heavy, light = inst.p[0], inst.p[-1]
    m = n - s
    if inst.p != (heavy,) * s + (light,) * m:
        raise ContractViolationError("instance is not two-valued as its tag claims")
    found: set[int] = set()
    for h in range(s + 1):
        balance_num = (s - 2 * h) * heavy + m * light
        a0 = balance_num // (2 * light)
        for a in {0, m, a0, a0 + 1}:
            if a < 0 or a > m:
                continue
            load1 = h * heavy + a * light
            load2 = W - load1
            disc = abs(load1 - load2)
            if disc == 0:
                found.add(load1)
                continue
            fuller_heavy = h if load1 > load2 else s - h
            fuller_light = a if load1 > load2 else m - a
            if fuller_light > 0:
                min_p = light
            elif fuller_heavy > 0:
                min_p = heavy
            else:
                continue
            if min_p >= disc:
                found.add(max(load1, load2))
    return tuple(sorted(found))


def interval_progress_stat(
    inst: Instance, trace: Sequence[int], summary: LocalOptimaSummary
) -> IntervalCounts:
    """Bin a run's per-evaluation fitness values by locally-optimal levels."""
    bounds = summary.distinct_makespans
    if not bounds:
        raise ContractViolationError("summary holds no locally optimal makespans")
    counts = [0] * len(bounds)
    interior = [0] * len(bounds)
    levels = set(bounds)
    for f in trace:
        i = bisect_right(bounds, f) - 1
        if i < 0:
            raise ContractViolationError(
                f"fitness {f} lies below the known minimum level {bounds[0]}"
            )
        counts[i] += 1
        if f not in levels:
            interior[i] += 1
    return IntervalCounts(
        boundaries=bounds, counts=tuple(counts), interior_counts=tuple(interior)
    )
