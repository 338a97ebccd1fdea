"""Command-line front end.

Every command prints one JSON run report on stdout.  Exit codes:

    0  success
    1  usage or parse error, dimension mismatch
    2  meaningless variant
    3  infeasible instance, or a solution with violations (validate)
    4  size limit exceeded
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .bounds import tightness_bound, two_district_partition_trace
from .complexity import classification_table, classify
from .dispatch import SOLVERS, run_solver
from .exceptions import (
    DistrictingError,
    Infeasible,
    InfeasibleBounds,
    LimitExceeded,
    MeaninglessVariant,
)
from .formulation import export_linear_program
from .io import dumps_instance, read_instance, read_solution, solution_to_dict, write_solution
from .model import Instance, VariantSpec, objective, validate
from .reductions import (
    PartitionInput,
    build_3partition_instance,
    build_arms_instance,
    build_weighted_star_instance,
    random_connected_graph,
    random_instance,
)

EXIT_OK, EXIT_PARSE, EXIT_MEANINGLESS, EXIT_INFEASIBLE, EXIT_LIMIT = 0, 1, 2, 3, 4


def _jsonable(value):
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class RunReport:
    command: list
    outcome: dict
    instance: Optional[dict] = None
    objective: object = None
    wall_time: float = 0.0

    def to_json(self) -> str:
        return json.dumps(_jsonable(asdict(self)), indent=2)


def _digest(instance: Instance) -> dict:
    return {"vertices": instance.graph.vertex_count, "edges": instance.edge_count,
            "p": instance.p, "variant": str(instance.variant)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _cmd_classify(args) -> tuple[int, RunReport]:
    if args.variant is None:
        rows = [{"variant": str(c.variant), "complexity": c.complexity.value,
                 "derivation": c.derivation} for c in classification_table()]
        return EXIT_OK, RunReport(args.argv, {"kind": "classification", "table": rows})
    try:
        variant = VariantSpec.parse(args.variant)
    except ValueError as exc:
        return EXIT_PARSE, RunReport(args.argv, {"kind": "error", "message": str(exc)})
    reason = variant.meaningless_reason
    if reason:
        return EXIT_MEANINGLESS, RunReport(args.argv, {"kind": "meaningless", "variant": str(variant),
                                                       "reason": reason})
    c = classify(variant)
    print(f"{c.variant}: {c.complexity.value} [{c.derivation}]", file=sys.stderr)
    return EXIT_OK, RunReport(args.argv, {"kind": "classification", "variant": str(c.variant),
                                          "complexity": c.complexity.value,
                                          "derivation": c.derivation})


def _cmd_solve(args) -> tuple[int, RunReport]:
    instance = read_instance(args.instance, exact=not args.float)
    digest = _digest(instance)
    try:
        name, a = run_solver(instance, args.solver, force=args.force)
    except (Infeasible, InfeasibleBounds) as exc:
        return EXIT_INFEASIBLE, RunReport(args.argv, {"kind": "infeasible", "message": str(exc)}, digest)
    out = Path(args.output) if args.output else Path(args.instance).with_suffix(".sol")
    write_solution(instance, a, out)
    obj = objective(instance, a) if "O" in instance.variant else None
    outcome = {"kind": "solution", "solver": name, "path": str(out),
               "solution": solution_to_dict(instance, a), "threads": args.threads}
    return EXIT_OK, RunReport(args.argv, outcome, digest, obj)


def _cmd_validate(args) -> tuple[int, RunReport]:
    instance = read_instance(args.instance, exact=not args.float)
    a = read_solution(args.solution, instance)
    report = validate(instance, a)
    outcome = {"kind": "violations", "ok": report.ok, "violations": report.to_dict()}
    return (EXIT_OK if report.ok else EXIT_INFEASIBLE), RunReport(args.argv, outcome, _digest(instance))


def _generate(args) -> Instance:
    fam = args.family
    if fam == "3partition":
        return build_3partition_instance(PartitionInput.parse(args.values), select_centers=args.select_centers)
    if fam == "wstar":
        return build_weighted_star_instance(PartitionInput.parse(args.values))
    if fam == "arms":
        return build_arms_instance(args.p, args.k, phi_l=Fraction(args.phi_l or 0),
                                   phi_u=None if args.phi_u is None else Fraction(args.phi_u))
    if fam == "vcover":
        graph = random_connected_graph(args.n, args.extra, weighted=False, seed=args.seed)
        return Instance(graph, min(args.p, max(graph.edge_count, 1)), "INO")
    return random_instance(args.variant, args.n, args.extra, args.p, seed=args.seed,
                           alpha=Fraction(args.alpha))


def _cmd_generate(args) -> tuple[int, RunReport]:
    if args.family in ("3partition", "wstar") and not args.values:
        return EXIT_PARSE, RunReport(args.argv, {"kind": "error", "message": "values required"})
    if args.family == "arms" and (args.p < 2 or args.k < 1):
        return EXIT_PARSE, RunReport(args.argv, {"kind": "error", "message": "need --p >= 2, --k >= 1"})
    instance = _generate(args)
    text = dumps_instance(instance)
    if args.output:
        Path(args.output).write_text(text)
        outcome = {"kind": "instance", "path": args.output}
    else:
        outcome = {"kind": "instance", "document": json.loads(text)}
    return EXIT_OK, RunReport(args.argv, outcome, _digest(instance))


def _cmd_export_lp(args) -> tuple[int, RunReport]:
    instance = read_instance(args.instance, exact=not args.float)
    text = export_linear_program(instance, args.variant)
    if args.output:
        Path(args.output).write_text(text)
        outcome = {"kind": "model", "path": args.output}
    else:
        outcome = {"kind": "model", "text": text}
    return EXIT_OK, RunReport(args.argv, outcome, _digest(instance))


def _cmd_bounds(args) -> tuple[int, RunReport]:
    instance = read_instance(args.instance, exact=not args.float)
    trace = two_district_partition_trace(instance.graph)
    m = instance.edge_count
    lo, hi = -(-m // 3), (2 * m) // 3
    tb = tightness_bound(max(args.p, 2))
    outcome = {
        "kind": "partition",
        "labels": trace.assignment.labels(),
        "centers": list(trace.assignment.centers),
        "sizes": list(trace.sizes),
        "window": [lo, hi],
        "within_window": all(lo <= s <= hi for s in trace.sizes),
        "case": trace.case,
        "relocations": trace.relocations,
        "tightness": {"p": tb.p, "additive_tau": tb.additive,
                      "multiplicative_tau": tb.multiplicative, "note": tb.note},
    }
    return EXIT_OK, RunReport(args.argv, outcome, _digest(instance))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--float", action="store_true", help="floating-point instead of exact arithmetic")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--threads", type=int, default=1, help="worker cap (the search runs on one)")
    common.add_argument("--force", action="store_true", help="run exact search above the size limits")

    parser = _Parser(prog="edgedistrict", description="Edge-based districting toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="complexity of a variant")
    p.add_argument("variant", nargs="?", help="letters from BCINOW; omit for the full table")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", parents=[common], help="solve an instance document")
    p.add_argument("instance")
    p.add_argument("--solver", choices=SOLVERS, default="auto")
    p.add_argument("--output", help="solution path (default: instance path with suffix .sol)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("validate", parents=[common], help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("generate", parents=[common], help="write a generated instance")
    p.add_argument("family", choices=("3partition", "wstar", "vcover", "arms", "random"))
    p.add_argument("values", nargs="?", help="comma separated integers (3partition, wstar)")
    p.add_argument("--select-centers", action="store_true", help="3partition: centers as decisions")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--phi-l", dest="phi_l")
    p.add_argument("--phi-u", dest="phi_u")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--extra", type=int, default=0)
    p.add_argument("--variant", default="IO")
    p.add_argument("--alpha", default="0")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("export-lp", parents=[common], help="write the linearized model")
    p.add_argument("instance")
    p.add_argument("--variant", help="subset of BOW (default: the instance's)")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_export_lp)

    p = sub.add_parser("bounds", parents=[common], help="balanced contiguous two-way split")
    p.add_argument("instance")
    p.add_argument("--p", type=int, default=2, help="district count for the tightness report")
    p.set_defaults(func=_cmd_bounds)
    return parser


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = ["edgedistrict"] + argv
    start = time.perf_counter()
    try:
        code, report = args.func(args)
    except MeaninglessVariant as exc:
        code, report = EXIT_MEANINGLESS, RunReport(args.argv, {"kind": "meaningless", "reason": str(exc)})
    except (Infeasible, InfeasibleBounds) as exc:
        code, report = EXIT_INFEASIBLE, RunReport(args.argv, {"kind": "infeasible", "message": str(exc)})
    except LimitExceeded as exc:
        code, report = EXIT_LIMIT, RunReport(args.argv, {"kind": "limit", "message": str(exc)})
    except (DistrictingError, ValueError, KeyError, TypeError, OSError) as exc:
        code, report = EXIT_PARSE, RunReport(args.argv, {"kind": "error", "message": str(exc)})
    report.wall_time = round(time.perf_counter() - start, 6)
    print(report.to_json())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
