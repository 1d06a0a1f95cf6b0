"""Exact reference solvers.

Small-instance branch and bound for minimum makespan (used to certify every
approximation ratio at desk scale) and a backtracking decider for precoloring
extension with three anchored colors.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Instance, MachineKind, Schedule, makespan as eval_makespan
from .errors import BudgetExceededError, InfeasibleError


@dataclass(frozen=True)
class SearchBudget:
    max_jobs: int = 14
    max_nodes: int = 50_000_000
    time_cap: float = 120.0


@dataclass(frozen=True)
class OracleResult:
    schedule: Schedule
    makespan: Fraction


def _contributions(inst: Instance) -> tuple[list[list[int]], int]:
    """Per-job, per-machine integer cost contributions and the time scale A.

    For uniform speeds s_i = a_i/b_i the costs are scaled by A = lcm(a_i) so
    that load/s_i becomes the integer load*b_i*(A/a_i); makespan compares stay
    in plain ints during the search.
    """
    n, m = inst.n, inst.env.m
    if inst.env.kind is MachineKind.UNRELATED:
        return [list(job.p_row) for job in inst.jobs], 1
    if inst.env.kind is MachineKind.IDENTICAL:
        return [[job.p] * m for job in inst.jobs], 1
    scale = math.lcm(*(s.numerator for s in inst.env.speeds))
    w = [s.denominator * (scale // s.numerator) for s in inst.env.speeds]
    return [[job.p * w[i] for i in range(m)] for job in inst.jobs], scale


def _scaled_lower_bound(inst: Instance, contrib, scale: int) -> Fraction:
    """A makespan lower bound in scaled-cost units (valid for any schedule)."""
    m = inst.env.m
    if inst.env.kind is MachineKind.UNRELATED:
        mins = [min(row) for row in contrib]
        return max(Fraction(max(mins)), Fraction(sum(mins), m))
    speed_sum = sum(inst.env.speed_of(i) for i in range(m))
    psum = sum(job.p for job in inst.jobs)
    pmax = max(job.p for job in inst.jobs)
    s_fast = max(inst.env.speed_of(i) for i in range(m))
    return scale * max(Fraction(psum) / speed_sum, Fraction(pmax) / s_fast)


def _greedy_seed(inst: Instance, contrib, adj_mask: Sequence[int]) -> int | None:
    """Scaled makespan of a cheap feasible schedule, or None if it gets stuck."""
    n, m = inst.n, inst.env.m
    order = sorted(range(n), key=lambda j: (-min(contrib[j]), j))
    cost = [0] * m
    mask = [0] * m
    for j in order:
        best_i, best_c = -1, None
        for i in range(m):
            if adj_mask[j] & mask[i]:
                continue
            c = cost[i] + contrib[j][i]
            if best_c is None or c < best_c:
                best_i, best_c = i, c
        if best_i < 0:
            return None
        cost[best_i] += contrib[j][best_i]
        mask[best_i] |= 1 << j
    return max(cost)


def exact_min_makespan(inst: Instance,
                       budget: SearchBudget | None = None) -> OracleResult:
    """Provably optimal makespan by depth-first search with pruning.

    Jobs are branched in id order and machines in label order; the incumbent
    is replaced only on strict improvement, so the returned schedule is the
    lexicographically smallest optimal assignment. Aborts with
    BudgetExceededError rather than returning a non-optimal answer.
    """
    budget = budget or SearchBudget()
    n, m = inst.n, inst.env.m
    if n > budget.max_jobs:
        raise BudgetExceededError(f"{n} jobs exceed max_jobs={budget.max_jobs}")
    if m == 1 and inst.conflicts.edges:
        raise InfeasibleError("a single machine cannot separate conflicting jobs")

    adj_mask = [0] * n
    for a, b in inst.conflicts.edges:
        adj_mask[a] |= 1 << b
        adj_mask[b] |= 1 << a

    contrib, scale = _contributions(inst)
    lb = _scaled_lower_bound(inst, contrib, scale)
    symmetric = inst.env.kind is MachineKind.IDENTICAL

    best_val = _greedy_seed(inst, contrib, adj_mask)
    best_assign: list[int] | None = None
    cost = [0] * m
    mask = [0] * m
    cur = [0] * n
    nodes = 0
    t0 = time.monotonic()
    deadline_stride = 8192

    class _Done(Exception):
        pass

    def rec(j: int, cur_max: int, used: int) -> None:
        nonlocal nodes, best_val, best_assign
        if j == n:
            if best_assign is None or cur_max < best_val:
                best_val = cur_max
                best_assign = cur[:]
                if Fraction(best_val) <= lb:
                    raise _Done
            return
        limit = min(m, used + 1) if symmetric else m
        for i in range(limit):
            if adj_mask[j] & mask[i]:
                continue
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceededError(f"node budget {budget.max_nodes} exhausted")
            if nodes % deadline_stride == 0 and time.monotonic() - t0 > budget.time_cap:
                raise BudgetExceededError(f"time cap {budget.time_cap}s exhausted")
            c = cost[i] + contrib[j][i]
            nm = c if c > cur_max else cur_max
            if best_val is not None:
                if best_assign is None:
                    if nm > best_val:
                        continue
                elif nm >= best_val:
                    continue
            cost[i] = c
            mask[i] |= 1 << j
            cur[j] = i
            rec(j + 1, nm, used + 1 if (symmetric and i == used) else used)
            cost[i] -= contrib[j][i]
            mask[i] &= ~(1 << j)

    try:
        rec(0, 0, 0)
    except _Done:
        pass
    if best_assign is None:
        raise InfeasibleError("search found no feasible schedule")
    sched = Schedule(tuple(best_assign))
    return OracleResult(sched, eval_makespan(sched, inst))


def exact_precolor_extension(pre, k: int = 3,
                             max_vertices: int = 20) -> tuple[int, ...] | None:
    """Extend the anchored coloring to a proper k-coloring, or return None.

    ``pre`` provides ``graph`` and ``anchors``; anchor i is pinned to color i.
    Backtracks over non-anchor vertices in id order, trying colors ascending,
    so a returned extension is deterministic.
    """
    g = pre.graph
    anchors = tuple(pre.anchors)
    if len(set(anchors)) != len(anchors):
        raise ValueError("anchor vertices must be distinct")
    if any(not (0 <= v < g.n_vertices) for v in anchors):
        raise ValueError("anchor out of range")
    if len(anchors) > k:
        raise ValueError("more anchors than colors")
    if g.n_vertices > max_vertices:
        raise BudgetExceededError(f"{g.n_vertices} vertices exceed cap {max_vertices}")

    color = [-1] * g.n_vertices
    for c, v in enumerate(anchors):
        color[v] = c
    for c, v in enumerate(anchors):
        if any(color[u] == c for u in g.adjacency[v]):
            return None
    todo = [v for v in range(g.n_vertices) if color[v] == -1]

    def rec(idx: int) -> bool:
        if idx == len(todo):
            return True
        v = todo[idx]
        taken = {color[u] for u in g.adjacency[v] if color[u] != -1}
        for c in range(k):
            if c in taken:
                continue
            color[v] = c
            if rec(idx + 1):
                return True
        color[v] = -1
        return False

    return tuple(color) if rec(0) else None
