"""Command-line surface and on-disk formats.

Instance and schedule files are canonical JSON: sorted keys, no insignificant
whitespace, one trailing newline, rationals written "num/den" in lowest
terms. Exit codes: 0 success, 1 infeasible or invalid input, 2 usage error,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bipartite import BipGraph
from .core import (Instance, Job, MachineEnv, MachineKind, Schedule,
                   makespan as eval_makespan, unit_jobs, validate)
from .errors import BudgetExceededError, SchedulingError
from .gadgets import (GadgetKind, GadgetSpec, PrecolorInstance, build_gadget,
                      build_uniform_hardness, build_unrelated_hardness)
from .oracle import SearchBudget, exact_min_makespan, exact_precolor_extension
from .randgraph import GilbertParams, alg2_schedule, gen_gilbert, mc_stats
from .suites import q2_unit_instance, r2_instance, uniform_instance
from .unrelated import fptas_r2_bipartite, two_approx_r2
from .uniform import q2_exact_unit, sqrt_psum_schedule


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}: expected 'num/den'") from exc


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def instance_to_obj(inst: Instance) -> dict:
    machines: dict = {"kind": inst.env.kind.value, "m": inst.env.m}
    if inst.env.kind is MachineKind.UNIFORM:
        machines["speeds"] = [fmt_rational(s) for s in inst.env.speeds]
    jobs = []
    for job in inst.jobs:
        if job.p_row is not None:
            jobs.append({"id": job.id, "p_row": list(job.p_row)})
        else:
            jobs.append({"id": job.id, "p": job.p})
    edges = [[a, b] for a, b in inst.conflicts.edges]
    return {"edges": edges, "jobs": jobs, "machines": machines}


def obj_to_instance(obj) -> Instance:
    if not isinstance(obj, dict):
        raise ValueError("instance document must be a JSON object")
    try:
        machines = obj["machines"]
        kind = MachineKind(machines["kind"])
        m = int(machines["m"])
    except (KeyError, ValueError, TypeError) as exc:
        raise ValueError(f"bad 'machines' section: {exc}") from exc
    if kind is MachineKind.UNIFORM:
        speeds = [parse_rational(s) for s in machines.get("speeds", ())]
        if len(speeds) != m:
            raise ValueError("uniform machines need one speed per machine")
        env = MachineEnv.uniform(speeds, allow_sub_unit=True)
    elif kind is MachineKind.IDENTICAL:
        env = MachineEnv.identical(m)
    else:
        env = MachineEnv.unrelated(m)
    raw_jobs = obj.get("jobs")
    if not isinstance(raw_jobs, list) or not raw_jobs:
        raise ValueError("'jobs' must be a non-empty list")
    jobs = []
    try:
        for rec in sorted(raw_jobs, key=lambda r: r["id"]):
            if "p_row" in rec:
                jobs.append(Job(id=int(rec["id"]), p_row=tuple(rec["p_row"])))
            else:
                jobs.append(Job(id=int(rec["id"]), p=int(rec["p"])))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad job record: {exc}") from exc
    edges = obj.get("edges", [])
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2):
            raise ValueError(f"bad edge record {e!r}")
    graph = BipGraph(len(jobs), [(int(a), int(b)) for a, b in edges])
    return Instance(tuple(jobs), env, graph)


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def parse_instance(path: str) -> Instance:
    return obj_to_instance(_load_json(path))


def write_instance(inst: Instance, path: str) -> None:
    Path(path).write_text(canonical_dumps(instance_to_obj(inst)), encoding="utf-8")


def schedule_to_obj(sched: Schedule, inst: Instance) -> dict:
    return {"assignment": list(sched.assignment),
            "makespan": fmt_rational(eval_makespan(sched, inst))}


def parse_schedule(path: str, inst: Instance) -> Schedule:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "assignment" not in obj:
        raise ValueError(f"{path}: schedule document needs an 'assignment' list")
    sched = Schedule(tuple(int(x) for x in obj["assignment"]))
    stored = parse_rational(obj.get("makespan", "0/1"))
    actual = eval_makespan(sched, inst)
    if stored != actual:
        raise ValueError(f"{path}: stored makespan {fmt_rational(stored)} "
                         f"!= recomputed {fmt_rational(actual)}")
    return sched


def write_schedule(sched: Schedule, inst: Instance, path: str) -> None:
    Path(path).write_text(canonical_dumps(schedule_to_obj(sched, inst)),
                          encoding="utf-8")


def _parse_speeds(text: str) -> list[Fraction]:
    return [parse_rational(s) for s in text.split(",") if s]


def _parse_ints(text: str) -> list[int]:
    return [int(s) for s in text.split(",") if s]


MC_CSV_HEADER = ("trial,n,p_num,p_den,edges,isolated_v2,v2prime,mu,alpha,"
                 "ratio,alg2_cmax_num,alg2_cmax_den,lb_num,lb_den")


def _mc_csv_lines(rows, summary) -> list[str]:
    lines = [MC_CSV_HEADER]
    for r in rows:
        ratio = f"{float(r.ratio):.6f}" if r.ratio is not None else ""
        lines.append(",".join(map(str, (
            r.trial, r.n, r.p.numerator, r.p.denominator, r.edges,
            r.isolated_v2, r.v2prime, r.mu, r.alpha, ratio,
            r.alg2_cmax.numerator, r.alg2_cmax.denominator,
            r.lb.numerator, r.lb.denominator))))
    for stat in ("mean", "stddev", "max"):
        cells = " ".join(f"{col}={summary[stat][col]:.6f}"
                         for col in summary[stat])
        lines.append(f"# {stat} {cells}")
    return lines


def _cmd_gen_gilbert(args) -> int:
    if (args.p is None) == (args.a is None):
        raise ValueError("exactly one of --p / --a required")
    if args.p is not None:
        params = GilbertParams(args.n, parse_rational(args.p), args.seed)
    else:
        params = GilbertParams.from_a(args.n, parse_rational(args.a), args.seed)
    g = gen_gilbert(params)
    env = MachineEnv.uniform(_parse_speeds(args.speeds), allow_sub_unit=True)
    inst = Instance(unit_jobs(g.n_vertices), env, g)
    write_instance(inst, args.output)
    print(f"wrote {args.output}: {g.n_vertices} unit jobs, {len(g.edges)} edges")
    return 0


def _cmd_gen_gadget(args) -> int:
    spec = GadgetSpec(GadgetKind(args.kind), tuple(_parse_ints(args.sizes)))
    g, stub = build_gadget(spec)
    inst = Instance(unit_jobs(g.n_vertices), MachineEnv.identical(args.m), g)
    write_instance(inst, args.output)
    print(f"wrote {args.output}: {spec.kind.value} with stub vertex {stub}")
    return 0


def _load_precolor(args) -> PrecolorInstance:
    base = parse_instance(args.input)
    anchors = _parse_ints(args.anchors)
    if len(anchors) != 3:
        raise ValueError("--anchors needs three comma-separated vertex ids")
    return PrecolorInstance(base.conflicts, tuple(anchors))


def _emit_hardness(build, args) -> int:
    write_instance(build.instance, args.output)
    print(f"wrote {args.output}: {build.instance.n} jobs")
    if args.witness:
        if build.witness is None:
            print("no proper extension exists; witness not written", file=sys.stderr)
            return 1
        write_schedule(build.witness, build.instance, args.witness)
        print(f"wrote witness {args.witness}")
    return 0


def _cmd_gen_hardness_uniform(args) -> int:
    pre = _load_precolor(args)
    extension = exact_precolor_extension(pre) if args.witness else None
    build = build_uniform_hardness(pre, args.k, args.m, extension)
    return _emit_hardness(build, args)


def _cmd_gen_hardness_unrelated(args) -> int:
    pre = _load_precolor(args)
    extension = exact_precolor_extension(pre) if args.witness else None
    build = build_unrelated_hardness(pre, args.d, args.m, extension)
    return _emit_hardness(build, args)


def _cmd_solve(args) -> int:
    inst = parse_instance(args.input)
    if args.alg == "sqrt-psum":
        sched = sqrt_psum_schedule(inst)
    elif args.alg == "alg2":
        if any(job.p != 1 for job in inst.jobs):
            raise ValueError("alg2 requires unit jobs")
        sched = alg2_schedule(inst.conflicts, inst.env)
    elif args.alg == "r2-2apx":
        sched = two_approx_r2(inst)
    elif args.alg == "r2-fptas":
        sched = fptas_r2_bipartite(inst, parse_rational(args.eps))
    elif args.alg == "q2-exact-unit":
        sched = q2_exact_unit(inst)
    else:
        budget = SearchBudget(max_jobs=args.max_jobs)
        sched = exact_min_makespan(inst, budget).schedule
    report = validate(sched, inst)
    if not report.valid:
        raise SchedulingError(f"solver produced conflicts: {report.violations}")
    write_schedule(sched, inst, args.output)
    print(f"wrote {args.output}: makespan {fmt_rational(eval_makespan(sched, inst))}")
    return 0


def _cmd_verify(args) -> int:
    inst = parse_instance(args.instance)
    sched = parse_schedule(args.schedule, inst)
    report = validate(sched, inst)
    if report.valid:
        print(f"valid; makespan {fmt_rational(eval_makespan(sched, inst))}")
        return 0
    for a, b in report.violations:
        print(f"conflict: jobs {a} and {b} share machine {sched.assignment[a]}")
    return 1


def _cmd_bench_mc(args) -> int:
    if (args.p is None) == (args.a is None):
        raise ValueError("exactly one of --p / --a required")
    p = parse_rational(args.p) if args.p is not None else \
        parse_rational(args.a) / args.n
    params = GilbertParams(args.n, p, args.seed)
    env = MachineEnv.uniform(_parse_speeds(args.speeds), allow_sub_unit=True)
    rows, summary = mc_stats(params, env, args.trials)
    lines = _mc_csv_lines(rows, summary)
    if args.csv:
        Path(args.csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {args.csv}: {len(rows)} trials")
    for stat in ("mean", "stddev", "max"):
        cells = " ".join(f"{col}={summary[stat][col]:.6f}" for col in summary[stat])
        print(f"{stat}: {cells}")
    return 0


_SWEEP_HEADER = "case,n,m,alg_cmax_num,alg_cmax_den,opt_num,opt_den,ratio,bound_ok"


def _cmd_bench_ratio_sweep(args) -> int:
    eps = parse_rational(args.eps)
    lines = [_SWEEP_HEADER]
    ok = 0
    for case in range(args.count):
        if args.suite == "q2-exact-unit":
            inst = q2_unit_instance(args.seed, case)
            sched = q2_exact_unit(inst)
        elif args.suite == "sqrt-psum":
            inst = uniform_instance(args.seed, case)
            sched = sqrt_psum_schedule(inst)
        elif args.suite == "r2-2apx":
            inst = r2_instance(args.seed, case)
            sched = two_approx_r2(inst)
        else:
            inst = r2_instance(args.seed, case)
            sched = fptas_r2_bipartite(inst, eps)
        if not validate(sched, inst).valid:
            raise SchedulingError(f"case {case}: solver produced conflicts")
        alg = eval_makespan(sched, inst)
        opt = exact_min_makespan(inst).makespan
        ratio = alg / opt
        if args.suite == "q2-exact-unit":
            good = alg == opt
        elif args.suite == "sqrt-psum":
            psum = sum(j.p for j in inst.jobs)
            good = ratio * ratio <= psum
        elif args.suite == "r2-2apx":
            good = ratio <= 2
        else:
            good = ratio <= 1 + eps
        ok += good
        lines.append(",".join(map(str, (
            case, inst.n, inst.env.m, alg.numerator, alg.denominator,
            opt.numerator, opt.denominator, f"{float(ratio):.6f}", int(good)))))
    lines.append(f"# within_bound {ok}/{args.count}")
    if args.csv:
        Path(args.csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {args.csv}")
    print(f"within bound: {ok}/{args.count}")
    return 0 if ok == args.count else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bipsched",
        description="Makespan scheduling under bipartite incompatibility graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instances")
    gsub = gen.add_subparsers(dest="generator", required=True)

    gg = gsub.add_parser("gilbert", help="random bipartite unit-job instance")
    gg.add_argument("--n", type=int, required=True, help="part size")
    gg.add_argument("--p", help="edge probability num/den")
    gg.add_argument("--a", help="edge probability a/n, given a")
    gg.add_argument("--seed", type=int, required=True)
    gg.add_argument("--speeds", default="8,4,2,1", help="comma-separated rationals")
    gg.add_argument("-o", "--output", required=True)
    gg.set_defaults(func=_cmd_gen_gilbert)

    gd = gsub.add_parser("gadget", help="standalone forcing component")
    gd.add_argument("--kind", choices=[k.value for k in GadgetKind], required=True)
    gd.add_argument("--sizes", required=True, help="comma-separated row sizes")
    gd.add_argument("--m", type=int, default=3)
    gd.add_argument("-o", "--output", required=True)
    gd.set_defaults(func=_cmd_gen_gadget)

    hu = gsub.add_parser("hardness-uniform", help="Q|bipartite hardness instance")
    hu.add_argument("-i", "--input", required=True, help="base instance file")
    hu.add_argument("--anchors", required=True, help="v1,v2,v3")
    hu.add_argument("--k", type=int, default=1)
    hu.add_argument("--m", type=int, default=3)
    hu.add_argument("-o", "--output", required=True)
    hu.add_argument("--witness", help="write a witness schedule here (YES instances)")
    hu.set_defaults(func=_cmd_gen_hardness_uniform)

    hr = gsub.add_parser("hardness-unrelated", help="Rm|bipartite hardness instance")
    hr.add_argument("-i", "--input", required=True)
    hr.add_argument("--anchors", required=True, help="v1,v2,v3")
    hr.add_argument("--d", type=int, required=True)
    hr.add_argument("--m", type=int, default=3)
    hr.add_argument("-o", "--output", required=True)
    hr.add_argument("--witness")
    hr.set_defaults(func=_cmd_gen_hardness_unrelated)

    sv = sub.add_parser("solve", help="run a solver on an instance file")
    sv.add_argument("--alg", required=True,
                    choices=["sqrt-psum", "alg2", "r2-2apx", "r2-fptas",
                             "q2-exact-unit", "oracle"])
    sv.add_argument("--eps", default="1/10", help="rational epsilon for r2-fptas")
    sv.add_argument("--max-jobs", type=int, default=14, help="oracle job cap")
    sv.add_argument("-i", "--input", required=True)
    sv.add_argument("-o", "--output", required=True)
    sv.set_defaults(func=_cmd_solve)

    vf = sub.add_parser("verify", help="check a schedule against an instance")
    vf.add_argument("-i", "--instance", required=True)
    vf.add_argument("-s", "--schedule", required=True)
    vf.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="benchmarks")
    bsub = bench.add_subparsers(dest="benchmark", required=True)

    mc = bsub.add_parser("mc", help="Monte Carlo over Gilbert graphs")
    mc.add_argument("--n", type=int, required=True)
    mc.add_argument("--p")
    mc.add_argument("--a")
    mc.add_argument("--trials", type=int, required=True)
    mc.add_argument("--seed", type=int, required=True)
    mc.add_argument("--speeds", default="8,4,2,1")
    mc.add_argument("--csv")
    mc.set_defaults(func=_cmd_bench_mc)

    rs = bsub.add_parser("ratio-sweep", help="solver vs oracle on a random suite")
    rs.add_argument("--suite", required=True,
                    choices=["q2-exact-unit", "sqrt-psum", "r2-2apx", "r2-fptas"])
    rs.add_argument("--count", type=int, required=True)
    rs.add_argument("--seed", type=int, required=True)
    rs.add_argument("--eps", default="1/10")
    rs.add_argument("--csv")
    rs.set_defaults(func=_cmd_bench_ratio_sweep)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SchedulingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
