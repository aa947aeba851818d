"""Command line entry point.

Exit status: 0 success, 1 usage or input error, 2 infeasibility verdict.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bench
from .assignment import optimal_assignment, optimal_value_for_centers
from .baseline import gonzalez, hochbaum_shmoys
from .eqsolver import InfeasibleError, Mode, solve
from .instance import (
    Instance,
    Solution,
    Variant,
    check_fairness,
    generate_cycle_instance,
    generate_pof_instance,
    generate_random_instance,
)
from .metrics import evaluate
from .oracle import BudgetExceeded, OracleBudget, brute_fair_optimum, brute_unfair_optimum

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj)


def _load_instance(args) -> Instance:
    inst = Instance.from_json(Path(args.instance).read_text(encoding="utf-8"))
    changes = {}
    if getattr(args, "k", None) is not None:
        changes["k"] = args.k
    if getattr(args, "alpha", None) is not None:
        changes["alpha"] = args.alpha
    if getattr(args, "variant", None) is not None:
        changes["variant"] = Variant.parse(args.variant)
    return inst.replace(**changes) if changes else inst


def _cmd_generate(args) -> int:
    variant = args.variant or "pp"
    alpha = 2.0 if args.alpha is None else args.alpha
    if args.kind == "pof":
        inst = generate_pof_instance(args.r, args.d, alpha, variant)
    elif args.kind == "cycle":
        inst = generate_cycle_instance(args.m, alpha, variant)
    else:
        inst = generate_random_instance(args.n, args.k or 2, alpha, variant, args.seed)
    if args.k is not None and args.kind != "random":
        inst = inst.replace(k=args.k)
    _emit(inst.to_json(), args.output)
    return EXIT_OK


def _cmd_solve(args) -> int:
    inst = _load_instance(args)
    algo = args.algorithm
    if algo == "gonzalez":
        sol = gonzalez(inst.d, inst.k)
    elif algo == "hs":
        sol = hochbaum_shmoys(inst.d, inst.k)[0]
    else:
        mode = Mode.parse(args.mode)
        if algo == "alg-pp":
            inst = inst.replace(variant=Variant.PP)
        elif algo == "alg-ag":
            inst = inst.replace(variant=Variant.AG)
        elif algo == "pseudo-pof":
            mode = Mode.PSEUDO_POF
        try:
            sol = solve(inst, mode, args.search)
        except InfeasibleError as exc:
            print(f"infeasible: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
    _emit(_dump(sol.to_dict()), args.output)
    return EXIT_OK


def _read_centers(path: str) -> list[int]:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(obj, dict):
        obj = obj["centers"]
    return [int(c) for c in obj]


def _cmd_assign(args) -> int:
    inst = _load_instance(args)
    centers = _read_centers(args.centers)
    if args.guess is not None:
        sol = optimal_assignment(inst, centers, args.guess)
    else:
        found = optimal_value_for_centers(inst, centers)
        sol = None if found is None else found[1]
    if sol is None:
        _emit(_dump({"feasible": False}), args.output)
        return EXIT_INFEASIBLE
    _emit(_dump({"feasible": True, **sol.to_dict()}), args.output)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    inst = _load_instance(args)
    budget = OracleBudget(args.max_points, args.max_k, args.max_assignment_points)
    unfair = brute_unfair_optimum(inst.d, inst.k, budget)
    fair = brute_fair_optimum(inst, budget)
    _emit(_dump({"unfair": unfair, f"fair_{inst.variant.value}": fair}), args.output)
    return EXIT_OK if fair is not None else EXIT_INFEASIBLE


def _cmd_check(args) -> int:
    inst = _load_instance(args)
    sol = Solution.from_dict(json.loads(Path(args.solution).read_text(encoding="utf-8")), inst.d)
    report = check_fairness(inst, sol)
    out = {"fair": report.ok, "violators": list(report.violators), "metrics": evaluate(inst, sol).to_dict()}
    _emit(_dump(out), args.output)
    return EXIT_OK if report.ok else EXIT_INFEASIBLE


def _cmd_bench(args) -> int:
    if args.config:
        cfg_dict = json.loads(Path(args.config).read_text(encoding="utf-8"))
    else:
        cfg_dict = {}
    overrides = {
        "dataset": args.dataset,
        "generator": args.generator,
        "k_values": args.k_values,
        "alpha": args.alpha,
        "psi": args.psi,
        "seed": args.seed,
        "sample_size": args.sample_size,
        "search": args.search,
        "output": args.output,
        "format": args.format,
        "algorithms": args.algorithm,
    }
    cfg_dict.update({k: v for k, v in overrides.items() if v is not None})
    if args.timing:
        cfg_dict["timing"] = True
    cfg = bench.ExperimentConfig.from_dict(cfg_dict)
    rows = bench.run_experiment(cfg)
    _emit(bench.render(rows, cfg), cfg.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eqcenter", description="alpha-equitable k-center solvers, oracles and benchmarks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_args(sp, required=True):
        sp.add_argument("--instance", required=required, help="instance JSON file")
        sp.add_argument("--k", type=int)
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--variant", choices=["pp", "ag"])
        sp.add_argument("--output")

    g = sub.add_parser("generate", help="write an instance JSON")
    g.add_argument("kind", choices=["cycle", "pof", "random"])
    g.add_argument("--m", type=int, default=8, help="cycle size parameter")
    g.add_argument("--r", type=float, default=1.0, help="pof within-pair distance")
    g.add_argument("--d", type=float, default=10.0, help="pof cross distance")
    g.add_argument("--n", type=int, default=8, help="random instance size")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int)
    g.add_argument("--alpha", type=float)
    g.add_argument("--variant", choices=["pp", "ag"])
    g.add_argument("--output")

    s = sub.add_parser("solve", help="solve one instance")
    instance_args(s)
    s.add_argument("--algorithm", choices=bench.ALGORITHMS)
    s.add_argument("--mode", choices=["standard", "pseudo-pof"], default="standard")
    s.add_argument("--search", choices=["linear", "binary"], default="linear")

    a = sub.add_parser("assign", help="optimal fair assignment for fixed centers")
    instance_args(a)
    a.add_argument("--centers", required=True, help="JSON list of center indices")
    a.add_argument("--guess", type=float, help="fixed value guess (default: search for the optimum)")

    o = sub.add_parser("oracle", help="brute-force optima for small instances")
    instance_args(o)
    o.add_argument("--max-points", type=int, default=OracleBudget.max_points)
    o.add_argument("--max-k", type=int, default=OracleBudget.max_k)
    o.add_argument("--max-assignment-points", type=int, default=OracleBudget.max_assignment_points)

    c = sub.add_parser("check", help="fairness check and metrics of a solution")
    instance_args(c)
    c.add_argument("--solution", required=True, help="solution JSON file")

    b = sub.add_parser("bench", help="run an experiment table")
    b.add_argument("--config", help="JSON experiment config")
    b.add_argument("--dataset")
    b.add_argument("--generator", help="pof | pof:R,D | cycle:M | random:N")
    b.add_argument("--k-values", type=_csv_ints)
    b.add_argument("--alpha", type=float)
    b.add_argument("--psi", type=float)
    b.add_argument("--seed", type=int)
    b.add_argument("--sample-size", type=int)
    b.add_argument("--search", choices=["linear", "binary"])
    b.add_argument("--algorithm", type=lambda t: [x for x in t.split(",") if x], help="comma-separated subset")
    b.add_argument("--output")
    b.add_argument("--format", choices=["csv", "json"])
    b.add_argument("--timing", action="store_true", help="add wall-clock columns (output no longer reproducible)")
    return p


COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "assign": _cmd_assign,
    "oracle": _cmd_oracle,
    "check": _cmd_check,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, KeyError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except bench.ExperimentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
