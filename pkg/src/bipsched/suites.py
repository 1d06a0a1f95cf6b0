"""Seeded random instance suites.

Shared by the ratio-sweep benchmark and the acceptance tests so that every
certified claim is reproducible from the shell. Case i of a suite draws all
of its randomness from the splitmix64 substream substream_seed(seed, i); the
draw order is fixed by the sampler bodies below.
"""

from __future__ import annotations

from fractions import Fraction

from .bipartite import BipGraph
from .core import Instance, Job, MachineEnv, unit_jobs
from .gadgets import PrecolorInstance
from .randgraph import SplitMix64, draw_threshold, substream_seed

# conflict-graph densities alternate between cases
CONFLICT_PS = (Fraction(1, 5), Fraction(1, 2))

DEFAULT_SEEDS = {
    "q2-exact-unit": 1001,
    "sqrt-psum": 4004,
    "r2-2apx": 2002,
    "r2-fptas": 2002,
    "hardness-uniform": 6006,
    "mc": 7,
}


def sample_conflicts(rng: SplitMix64, n: int, p: Fraction) -> BipGraph:
    """Random bipartite conflict graph: random sides, cross pairs kept w.p. p."""
    thr = draw_threshold(p)
    side = [rng.below(2) for _ in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if side[i] != side[j] and rng.next_u64() < thr:
                edges.append((i, j))
    return BipGraph(n, edges)


def q2_unit_instance(seed: int, case: int) -> Instance:
    """n <= 10 unit jobs, 2 uniform machines with speeds from {1, 2, 3}."""
    rng = SplitMix64(substream_seed(seed, case))
    n = 2 + rng.below(9)
    speeds = sorted((1 + rng.below(3) for _ in range(2)), reverse=True)
    g = sample_conflicts(rng, n, CONFLICT_PS[case % 2])
    return Instance(unit_jobs(n), MachineEnv.uniform(speeds), g)


def uniform_instance(seed: int, case: int) -> Instance:
    """n <= 10, m in {3,4,5}, p_j in [1,4], speeds from {1, 2, 3}."""
    rng = SplitMix64(substream_seed(seed, case))
    n = 2 + rng.below(9)
    m = 3 + rng.below(3)
    speeds = sorted((1 + rng.below(3) for _ in range(m)), reverse=True)
    ps = [1 + rng.below(4) for _ in range(n)]
    g = sample_conflicts(rng, n, CONFLICT_PS[case % 2])
    jobs = tuple(Job(id=j, p=ps[j]) for j in range(n))
    return Instance(jobs, MachineEnv.uniform(speeds), g)


def r2_instance(seed: int, case: int) -> Instance:
    """n <= 10 jobs on 2 unrelated machines, p[i][j] in [1, 9]."""
    rng = SplitMix64(substream_seed(seed, case))
    n = 2 + rng.below(9)
    rows = [(1 + rng.below(9), 1 + rng.below(9)) for _ in range(n)]
    g = sample_conflicts(rng, n, CONFLICT_PS[case % 2])
    jobs = tuple(Job(id=j, p_row=rows[j]) for j in range(n))
    return Instance(jobs, MachineEnv.unrelated(2), g)


def precolor_instance(seed: int, case: int) -> PrecolorInstance:
    """Bipartite base graph on 3..7 vertices with three distinct anchors."""
    rng = SplitMix64(substream_seed(seed, case))
    n = 3 + rng.below(5)
    g = sample_conflicts(rng, n, Fraction(2, 5))
    anchors = [rng.below(n)]
    while len(anchors) < 3:
        v = rng.below(n)
        if v not in anchors:
            anchors.append(v)
    return PrecolorInstance(g, tuple(anchors))
