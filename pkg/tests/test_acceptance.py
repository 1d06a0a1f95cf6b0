"""Acceptance suite: one test per certified claim, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s`. Oracle results are shared
across criteria through module-scoped fixtures, and every comparison is an
exact rational unless the claim itself is statistical.
"""

import math
import time
from fractions import Fraction

import pytest

from bipsched import (GadgetKind, GadgetSpec, GilbertParams, MachineEnv,
                      build_uniform_hardness, exact_min_makespan,
                      exact_precolor_extension, fptas_r2_bipartite_with_stats,
                      machine_loads, makespan, mc_stats, opt_lb, q2_exact_unit,
                      ratio_limit, sqrt_psum_schedule_detailed, totals,
                      two_approx_r2_with_stats, validate, verify_forcing)
from bipsched.cli import run
from bipsched.suites import (DEFAULT_SEEDS, precolor_instance,
                             q2_unit_instance, r2_instance, uniform_instance)

Q2_CASES = 200
R2_CASES = 200
UNIFORM_CASES = 300
HARDNESS_CASES = 20
MC_TRIALS = 50
MC_N = 2000


def report(criterion: str, ok: bool, detail: str) -> None:
    print(f"[{criterion}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{criterion}: {detail}"


@pytest.fixture(scope="module")
def r2_suite():
    suite = []
    for case in range(R2_CASES):
        inst = r2_instance(DEFAULT_SEEDS["r2-2apx"], case)
        suite.append((inst, exact_min_makespan(inst).makespan))
    return suite


@pytest.fixture(scope="module")
def mc_ensemble():
    env = MachineEnv.uniform([8, 4, 2, 1])
    params = GilbertParams(MC_N, Fraction(1, MC_N), DEFAULT_SEEDS["mc"])
    t0 = time.monotonic()
    rows, summary = mc_stats(params, env, MC_TRIALS)
    return rows, summary, time.monotonic() - t0


def test_criterion_1_q2_exactness():
    t0 = time.monotonic()
    exact = 0
    for case in range(Q2_CASES):
        inst = q2_unit_instance(DEFAULT_SEEDS["q2-exact-unit"], case)
        sched = q2_exact_unit(inst)
        assert validate(sched, inst).valid
        if makespan(sched, inst) == exact_min_makespan(inst).makespan:
            exact += 1
    elapsed = time.monotonic() - t0
    report("criterion-1 q2-exactness",
           exact == Q2_CASES and elapsed < 60,
           f"{exact}/{Q2_CASES} exact, {elapsed:.1f}s (< 60s)")


def test_criterion_2_r2_two_approx(r2_suite):
    good = 0
    for inst, opt in r2_suite:
        sched, stats = two_approx_r2_with_stats(inst)
        assert validate(sched, inst).valid
        cmax = makespan(sched, inst)
        loads = machine_loads(sched, inst)
        decomposition = (loads == (stats.base_m1 + stats.extra_m1,
                                   stats.base_m2 + stats.extra_m2)
                         and cmax == max(loads)
                         and cmax <= max(stats.base_m1, stats.base_m2) + stats.t_extra)
        if cmax <= 2 * opt and decomposition:
            good += 1
    report("criterion-2 r2-2apx", good == R2_CASES,
           f"{good}/{R2_CASES} with ratio <= 2 and exact decomposition")


def test_criterion_3_r2_fptas(r2_suite):
    good = 0
    total = 0
    for inst, opt in r2_suite:
        for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 10)):
            total += 1
            sched, stats = fptas_r2_bipartite_with_stats(inst, eps)
            assert validate(sched, inst).valid
            nc = stats.core_jobs
            bound = math.ceil(2 * nc / eps) + nc + 1
            if makespan(sched, inst) <= (1 + eps) * opt and stats.state_count <= bound:
                good += 1
    report("criterion-3 r2-fptas", good == total == 3 * R2_CASES,
           f"{good}/{total} with ratio <= 1+eps and state count within bound")


def test_criterion_4_sqrt_psum():
    good = 0
    lb_sound = 0
    for case in range(UNIFORM_CASES):
        inst = uniform_instance(DEFAULT_SEEDS["sqrt-psum"], case)
        opt = exact_min_makespan(inst).makespan
        sched, info = sqrt_psum_schedule_detailed(inst)
        psum, _ = totals(inst)
        ratio = makespan(sched, inst) / opt
        if validate(sched, inst).valid and ratio * ratio <= psum:
            good += 1
        if info.independent is None or opt_lb(inst, info.independent).value <= opt:
            lb_sound += 1
    report("criterion-4 sqrt-psum",
           good == UNIFORM_CASES and lb_sound == UNIFORM_CASES,
           f"{good}/{UNIFORM_CASES} valid with ratio^2 <= psum, "
           f"{lb_sound}/{UNIFORM_CASES} lower bounds sound")


def test_criterion_5_forcing_lemmas():
    t0 = time.monotonic()
    checked = 0
    counterexamples = 0
    for x in range(1, 5):
        for c in (2, 3):
            v = verify_forcing(GadgetSpec(GadgetKind.H1, (x,)), c)
            checked += 1
            counterexamples += len(v.counterexamples)
    for xp in range(1, 4):
        for x in range(1, 4):
            v = verify_forcing(GadgetSpec(GadgetKind.H2, (xp, x)), 3)
            checked += 1
            counterexamples += len(v.counterexamples)
    for xpp in range(1, 3):
        for xp in range(1, 3):
            for x in range(1, 3):
                v = verify_forcing(GadgetSpec(GadgetKind.H3, (xpp, xp, x)), 3)
                checked += 1
                counterexamples += len(v.counterexamples)
    elapsed = time.monotonic() - t0
    report("criterion-5 forcing-lemmas",
           counterexamples == 0 and elapsed < 30,
           f"{checked} component configurations, {counterexamples} "
           f"counterexamples, {elapsed:.1f}s (< 30s)")


def test_criterion_6_hardness_integrity():
    yes = counted = witnessed = 0
    for case in range(HARDNESS_CASES):
        pre = precolor_instance(DEFAULT_SEEDS["hardness-uniform"], case)
        n = pre.graph.n_vertices
        ext = exact_precolor_extension(pre)
        build = build_uniform_hardness(pre, 1, 3, ext)
        if build.instance.n == n + 48 * n + 4 * n + 2:
            counted += 1
        if ext is not None:
            yes += 1
            w = build.witness
            loads = machine_loads(w, build.instance)
            if (validate(w, build.instance).valid
                    and loads[0] <= 49 * n and loads[1] <= 5 * n
                    and loads[2] <= n
                    and makespan(w, build.instance) <= n):
                witnessed += 1
    report("criterion-6 hardness-integrity",
           counted == HARDNESS_CASES and witnessed == yes,
           f"{counted}/{HARDNESS_CASES} vertex counts exact, "
           f"{witnessed}/{yes} YES witnesses within load bounds")


def test_criterion_7_random_graph_concentration(mc_ensemble):
    rows, _, elapsed = mc_ensemble
    mean_iso = sum(r.isolated_v2 for r in rows) / (MC_TRIALS * MC_N)
    target = float((1 - Fraction(1, MC_N)) ** MC_N)
    part_a = abs(mean_iso - target) <= 0.01
    within = sum(1 for r in rows if r.ratio is not None and r.ratio <= Fraction(8, 5))
    part_b = within >= MC_TRIALS - 1
    mean_mu = sum(r.mu for r in rows) / (MC_TRIALS * MC_N)
    part_c = mean_mu >= 0.469
    report("criterion-7 concentration",
           part_a and part_b and part_c and elapsed < 300,
           f"isolated mean {mean_iso:.5f} vs {target:.5f} (+-0.01), "
           f"ratio<=1.6 in {within}/{MC_TRIALS}, mean mu/n {mean_mu:.4f} "
           f">= 0.469, {elapsed:.1f}s (< 5min)")


def test_criterion_8_alg2_performance(mc_ensemble):
    rows, _, _ = mc_ensemble
    ok = sum(1 for r in rows if r.cmax_over_lb <= Fraction(21, 10))
    # mc_stats validates every alg2 schedule before recording the trial
    report("criterion-8 alg2-performance",
           len(rows) == MC_TRIALS and ok >= math.ceil(0.95 * MC_TRIALS),
           f"cmax/lb <= 2.1 in {ok}/{MC_TRIALS} trials (need >= 95%), "
           f"{len(rows)}/{MC_TRIALS} schedules valid")


def test_criterion_9_ratio_limit():
    v50 = ratio_limit(50)
    grid = [ratio_limit(Fraction(a, 10)) for a in range(1, 101)]
    monotone = all(x <= y + 1e-15 for x, y in zip(grid, grid[1:]))
    report("criterion-9 ratio-limit",
           1.5819 < v50 < 1.5820 and v50 < 1.6 and monotone,
           f"value(50) = {v50:.6f} in (1.5819, 1.5820), non-decreasing on "
           f"a = 0.1..10")


def test_criterion_10_determinism_and_formats(tmp_path):
    checks = []
    # byte-identical regeneration
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["gen", "gilbert", "--n", "32", "--a", "1/1", "--seed", "7",
            "--speeds", "8,4,2,1"]
    assert run(argv + ["-o", str(a)]) == 0
    assert run(argv + ["-o", str(b)]) == 0
    checks.append(a.read_bytes() == b.read_bytes())
    # round trip is byte-identical on canonical files
    text = a.read_text(encoding="utf-8")
    from bipsched.cli import parse_instance, write_instance
    write_instance(parse_instance(str(a)), str(b))
    checks.append(b.read_text(encoding="utf-8") == text)
    # every solve output passes verify
    for alg, src in (("sqrt-psum", a), ("alg2", a), ("oracle", None)):
        if alg == "oracle":
            src = tmp_path / "small.json"
            assert run(["gen", "gilbert", "--n", "5", "--a", "1/1",
                        "--seed", "3", "--speeds", "2,1,1", "-o", str(src)]) == 0
        out = tmp_path / f"{alg}.sched.json"
        assert run(["solve", "--alg", alg, "-i", str(src), "-o", str(out)]) == 0
        checks.append(run(["verify", "-i", str(src), "-s", str(out)]) == 0)
    report("criterion-10 determinism-and-formats", all(checks),
           f"{sum(checks)}/{len(checks)} format and determinism checks")
