"""Shared brute-force reference implementations for the tests.

These stay deliberately naive (full enumeration, no pruning) so they are
independent of the code paths they certify.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from bipsched import BipGraph, Instance, MachineKind, Schedule
from bipsched import makespan as eval_makespan, validate


def exhaustive_min_makespan(inst: Instance):
    """Scan all m^n assignments; return (lex-first optimal Schedule, value)."""
    best = None
    best_assign = None
    for assign in itertools.product(range(inst.env.m), repeat=inst.n):
        sched = Schedule(assign)
        if not validate(sched, inst).valid:
            continue
        value = eval_makespan(sched, inst)
        if best is None or value < best:
            best = value
            best_assign = sched
    return best_assign, best


def proper_two_colorings(g: BipGraph):
    """Yield every proper 2-coloring as a side tuple."""
    for sides in itertools.product((0, 1), repeat=g.n_vertices):
        if all(sides[a] != sides[b] for a, b in g.edges):
            yield sides


def best_first_class_weight(g: BipGraph) -> int:
    """Max over proper 2-colorings of the weight of the first color class."""
    return max(sum(w for v, w in enumerate(g.weights) if sides[v] == 0)
               for sides in proper_two_colorings(g))


def all_independent_sets(g: BipGraph):
    for r in range(g.n_vertices + 1):
        for combo in itertools.combinations(range(g.n_vertices), r):
            if g.is_independent(combo):
                yield frozenset(combo)


def brute_max_weight_is(g: BipGraph) -> int:
    return max(g.total_weight(s) for s in all_independent_sets(g))


def brute_max_weight_is_containing(g: BipGraph, required) -> int | None:
    req = frozenset(required)
    if not g.is_independent(req):
        return None
    return max((g.total_weight(s) for s in all_independent_sets(g) if req <= s),
               default=None)


def brute_precolor_extension_exists(g: BipGraph, anchors, k: int = 3) -> bool:
    free = [v for v in range(g.n_vertices) if v not in anchors]
    pinned = {v: c for c, v in enumerate(anchors)}
    for combo in itertools.product(range(k), repeat=len(free)):
        coloring = dict(pinned)
        coloring.update(zip(free, combo))
        if all(coloring[a] != coloring[b] for a, b in g.edges):
            return True
    return False


def opt_lb_by_scan(inst: Instance, independent) -> Fraction:
    """Minimal time meeting the three capacity conditions, by breakpoint scan."""
    assert inst.env.kind in (MachineKind.UNIFORM, MachineKind.IDENTICAL)
    speeds = inst.env.speeds_by_rank()
    psum = sum(j.p for j in inst.jobs)
    pmax = max(j.p for j in inst.jobs)
    rest = sum(j.p for j in inst.jobs if j.id not in set(independent))

    def ok(t: Fraction) -> bool:
        caps = [int(s * t) for s in speeds]
        return (sum(caps) >= psum and sum(caps[1:]) >= rest and caps[0] >= pmax)

    # all capacity breakpoints c/s_i up to a certainly-feasible horizon
    horizon = Fraction(psum) / min(speeds) + Fraction(pmax) / speeds[0]
    points = set()
    for s in speeds:
        c = 1
        while Fraction(c) / s <= horizon:
            points.add(Fraction(c) / s)
            c += 1
    points.add(horizon)
    return min(t for t in sorted(points) if ok(t))
