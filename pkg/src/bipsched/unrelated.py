"""Two unrelated machines under bipartite conflicts.

Connected components are merged into single decision jobs (each component can
only be scheduled in one of two orientations, so it contributes mandatory
per-machine base loads plus one binary choice). On the reduced jobs a
min-entry rule gives a 2-approximation, and a scaled dynamic program gives a
(1+eps)-approximation; two anchor jobs pin the mandatory base loads to their
machines for the DP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Instance, MachineKind, Schedule, machine_loads


def _require_r2(inst: Instance) -> None:
    if inst.env.kind is not MachineKind.UNRELATED or inst.env.m != 2:
        raise ValueError("operation requires exactly 2 unrelated machines")


@dataclass(frozen=True)
class ComponentChoice:
    """One connected component and its two placements.

    ``on_m1_if_m1`` lists the vertices that go to machine 0 when the
    component's reduced job is assigned to machine 0; ``on_m1_if_m2``
    likewise for machine 1. Dominated components ("dummies") have a single
    fixed orientation, so both sets coincide.
    """

    vertices: tuple[int, ...]
    on_m1_if_m1: frozenset[int]
    on_m1_if_m2: frozenset[int]
    dummy: bool


@dataclass(frozen=True)
class ReducedR2:
    """Component-merged jobs plus mandatory per-machine base loads.

    ``reduced_jobs[k]`` is the extra load the k-th component adds to the
    machine it is assigned to, beyond the bases ``p1_base[k]`` / ``p2_base[k]``
    that accrue in every schedule. Dummies are (0, 0).
    """

    reduced_jobs: tuple[tuple[int, int], ...]
    p1_base: tuple[int, ...]
    p2_base: tuple[int, ...]
    comp_map: tuple[ComponentChoice, ...]


def reduce_components(inst: Instance) -> ReducedR2:
    """Merge each conflict component into one binary placement decision."""
    _require_r2(inst)
    g = inst.conflicts
    jobs = inst.jobs
    reduced, p1b, p2b, cmap = [], [], [], []
    for comp in g.components:
        part1 = tuple(v for v in comp if g.side[v] == 0)
        part2 = tuple(v for v in comp if g.side[v] == 1)
        p11 = sum(jobs[v].p_row[0] for v in part1)
        p12 = sum(jobs[v].p_row[0] for v in part2)
        p21 = sum(jobs[v].p_row[1] for v in part1)
        p22 = sum(jobs[v].p_row[1] for v in part2)
        if p11 <= p12 and p22 <= p21:
            reduced.append((0, 0))
            p1b.append(p11)
            p2b.append(p22)
            fixed = frozenset(part1)
            cmap.append(ComponentChoice(comp, fixed, fixed, True))
        elif p12 <= p11 and p21 <= p22:
            reduced.append((0, 0))
            p1b.append(p12)
            p2b.append(p21)
            fixed = frozenset(part2)
            cmap.append(ComponentChoice(comp, fixed, fixed, True))
        else:
            reduced.append((max(p11, p12) - min(p11, p12),
                            max(p21, p22) - min(p21, p22)))
            p1b.append(min(p11, p12))
            p2b.append(min(p21, p22))
            # outside the dominated cases p11 != p12 and the maxima are
            # achieved by the same part on both machines
            if p11 > p12:
                cmap.append(ComponentChoice(comp, frozenset(part1), frozenset(part2), False))
            else:
                cmap.append(ComponentChoice(comp, frozenset(part2), frozenset(part1), False))
    return ReducedR2(tuple(reduced), tuple(p1b), tuple(p2b), tuple(cmap))


def _apply_decisions(red: ReducedR2, decisions: Sequence[int], n: int) -> Schedule:
    placement = {}
    for choice, d in zip(red.comp_map, decisions):
        on1 = choice.on_m1_if_m1 if d == 0 else choice.on_m1_if_m2
        for v in choice.vertices:
            placement[v] = 0 if v in on1 else 1
    return Schedule.from_mapping(placement, n)


@dataclass(frozen=True)
class TwoApproxStats:
    """Reduced-space accounting for the min-entry schedule.

    base_mX are the mandatory loads sum(P'), sum(P''); extra_mX the chosen
    component deltas per machine. The realized makespan always equals
    max(base_m1 + extra_m1, base_m2 + extra_m2) and is bounded by
    max(base_m1, base_m2) + t_extra.
    """

    reduction: ReducedR2
    base_m1: int
    base_m2: int
    extra_m1: int
    extra_m2: int
    makespan: int

    @property
    def t_extra(self) -> int:
        return self.extra_m1 + self.extra_m2


def two_approx_r2_with_stats(inst: Instance) -> tuple[Schedule, TwoApproxStats]:
    red = reduce_components(inst)
    decisions = [0 if d1 <= d2 else 1 for d1, d2 in red.reduced_jobs]
    sched = _apply_decisions(red, decisions, inst.n)
    base1, base2 = sum(red.p1_base), sum(red.p2_base)
    extra1 = sum(d1 for (d1, d2), d in zip(red.reduced_jobs, decisions) if d == 0)
    extra2 = sum(d2 for (d1, d2), d in zip(red.reduced_jobs, decisions) if d == 1)
    loads = machine_loads(sched, inst)
    cmax = max(loads)
    if loads != (base1 + extra1, base2 + extra2):
        raise AssertionError("reduced-space accounting does not match realized loads")
    if cmax > max(base1, base2) + extra1 + extra2:
        raise AssertionError("makespan exceeds max(T1,T2) + T_extra")
    stats = TwoApproxStats(red, base1, base2, extra1, extra2, cmax)
    return sched, stats


def two_approx_r2(inst: Instance) -> Schedule:
    """Min-entry assignment of the reduced jobs; 2-approximate, O(n) time."""
    return two_approx_r2_with_stats(inst)[0]


@dataclass(frozen=True)
class CoreResult:
    assignment: tuple[int, ...]
    state_count: int
    delta: Fraction
    horizon: int


def fptas_r2_core(jobs: Sequence[tuple[int, int]], epsilon) -> CoreResult:
    """(1+eps)-approximate 2-machine partition of conflict-free jobs.

    Dynamic program over machine-1 loads rounded to a scale unit
    delta = max(1, eps*T/(2n)) where T is the min-entry upper bound; for each
    rounded load the exact minimum machine-2 load is kept. States whose
    rounded load already exceeds T are pruned, which caps the table at
    2n/eps + 1 entries. delta = 1 makes the program exact.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    entries = [(int(a), int(b)) for a, b in jobs]
    if any(a < 0 or b < 0 for a, b in entries):
        raise ValueError("processing times must be non-negative")
    n = len(entries)
    if n == 0:
        return CoreResult((), 1, Fraction(1), 0)
    load = [0, 0]
    for a, b in entries:
        load[0 if a <= b else 1] += min(a, b)
    horizon = max(load)
    if horizon == 0:
        return CoreResult((0,) * n, 1, Fraction(1), 0)
    delta = max(Fraction(1), eps * horizon / (2 * n))

    # tables[i]: rounded m1 load -> (min exact m2 load, parent key, placed on m1)
    tables: list[dict[int, tuple[int, int, bool]]] = [{0: (0, -1, False)}]
    for a, b in entries:
        ka = int(Fraction(a) / delta)
        prev = tables[-1]
        cur: dict[int, tuple[int, int, bool]] = {}
        for key, (val, _, _) in prev.items():
            nk = key + ka
            if nk * delta <= horizon:
                if nk not in cur or val < cur[nk][0]:
                    cur[nk] = (val, key, True)
            nv = val + b
            if nv <= horizon:
                if key not in cur or nv < cur[key][0]:
                    cur[key] = (nv, key, False)
        tables.append(cur)

    best_key = min(tables[-1],
                   key=lambda k: (max(k * delta, tables[-1][k][0]), k))
    assignment = [0] * n
    key = best_key
    for i in range(n, 0, -1):
        val, parent, on_m1 = tables[i][key]
        assignment[i - 1] = 0 if on_m1 else 1
        key = parent
    state_count = max(len(t) for t in tables)
    bound = math.ceil(2 * n / eps) + n + 1
    if state_count > bound:
        raise AssertionError(f"DP state count {state_count} exceeds bound {bound}")
    return CoreResult(tuple(assignment), state_count, delta, horizon)


@dataclass(frozen=True)
class FptasStats:
    core_jobs: int
    state_count: int
    delta: Fraction
    horizon: int


def fptas_r2_bipartite_with_stats(inst: Instance,
                                  epsilon) -> tuple[Schedule, FptasStats]:
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        # above 1 the rounded anchor cost can fall below the horizon and the
        # anchor-placement argument no longer holds
        raise ValueError("epsilon must lie in (0, 1]")
    _require_r2(inst)
    _, stats2 = two_approx_r2_with_stats(inst)
    red = stats2.reduction
    t = stats2.makespan
    core: list[tuple[int, int]] = []
    core_of_comp: dict[int, int] = {}
    for k, (d1, d2) in enumerate(red.reduced_jobs):
        if not red.comp_map[k].dummy:
            core_of_comp[k] = len(core)
            core.append((d1, d2))
    # anchor jobs force the mandatory base loads onto their machines; the 2T
    # entry on the wrong machine exceeds the DP horizon so they are never
    # misplaced
    core.append((sum(red.p1_base), 2 * t))
    core.append((2 * t, sum(red.p2_base)))
    res = fptas_r2_core(core, eps)
    if res.assignment[-2] != 0 or res.assignment[-1] != 1:
        raise AssertionError("anchor job misplaced by the core DP")
    decisions = [0 if red.comp_map[k].dummy else res.assignment[core_of_comp[k]]
                 for k in range(len(red.comp_map))]
    sched = _apply_decisions(red, decisions, inst.n)
    return sched, FptasStats(len(core), res.state_count, res.delta, res.horizon)


def fptas_r2_bipartite(inst: Instance, epsilon) -> Schedule:
    """(1+eps)-approximation for two unrelated machines with bipartite conflicts."""
    return fptas_r2_bipartite_with_stats(inst, epsilon)[0]
