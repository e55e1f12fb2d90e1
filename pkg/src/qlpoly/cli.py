"""Command-line front end: states, hull, check, quantum, cheat, verify."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import quantum as quantum_mod
from .cheats import (
    DomainError,
    NonMonotoneError,
    ch_value,
    law_eval,
    parse_law,
    parse_transform,
    sample_curves,
    scan_ch,
    transform_forward,
)
from .logics import (
    BUILTIN_NAMES,
    InvalidPartitionError,
    LogicParseError,
    parse_logic,
    parse_partitions,
)
from .polytope import (
    TermList,
    build_vertices,
    double_description,
    check_relation,
    hrep_text,
    hrep_to_json,
    parse_relation,
    parse_terms,
    vrep_from_json,
    vrep_to_json,
)
from .states import (
    StateSet,
    block_states,
    builtin_states,
    model_states,
    stateset_to_json,
    truth_table,
)
from .verify import SUITES, run_suite

_INPUT_ERRORS = (
    LogicParseError,
    InvalidPartitionError,
    DomainError,
    NonMonotoneError,
    quantum_mod.InvalidDensityOperatorError,
    quantum_mod.NotSelfAdjointError,
    quantum_mod.NotCommutingError,
    ValueError,
    KeyError,
    OSError,
    json.JSONDecodeError,
)


def parse_angle(text: str) -> float:
    """Angle literal: plain radians, or '<x>pi' meaning x times pi."""
    s = text.strip().lower()
    if s.endswith("pi"):
        head = s[:-2].strip()
        factor = 1.0 if head in ("", "+") else -1.0 if head == "-" else float(head)
        return factor * math.pi
    return float(s)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_states(args) -> StateSet:
    if args.builtin:
        return builtin_states(args.builtin)
    if args.logic:
        return block_states(parse_logic(Path(args.logic).read_text(encoding="utf-8")))
    if args.partitions:
        return model_states(parse_partitions(Path(args.partitions).read_text(encoding="utf-8")))
    raise ValueError("one of --builtin, --logic, --partitions is required")


def cmd_states(args) -> int:
    states = _load_states(args)
    if args.format == "json":
        _emit(stateset_to_json(states), args.output)
    elif args.format == "csv":
        lines = [",".join(states.logic.atoms)]
        lines += [",".join(str(v) for v in st) for st in states.states]
        _emit("\n".join(lines), args.output)
    else:
        _emit(truth_table(states), args.output)
    return 0


def cmd_hull(args) -> int:
    if args.vrep:
        vrep = vrep_from_json(Path(args.vrep).read_text(encoding="utf-8"))
    else:
        states = _load_states(args)
        if args.terms:
            terms = parse_terms(args.terms, states.logic.atoms)
        else:
            terms = TermList.singletons(len(states.logic.atoms))
        vrep = build_vertices(states, terms)
    if args.vrep_out:
        Path(args.vrep_out).write_text(vrep_to_json(vrep) + "\n", encoding="utf-8")
    hull = double_description(vrep)
    if args.format == "json":
        _emit(hrep_to_json(hull), args.output)
    else:
        _emit(hrep_text(hull), args.output)
    return 0


def cmd_check(args) -> int:
    vrep = vrep_from_json(Path(args.vrep).read_text(encoding="utf-8"))
    names = vrep.labels if vrep.labels is not None else tuple(
        str(i + 1) for i in range(vrep.dim)
    )
    results = []
    for line in Path(args.relations).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        row, kind = parse_relation(line, names)
        holds = check_relation(vrep, row, kind)
        results.append({"relation": line, "kind": kind, "holds": holds})
    if args.format == "json":
        _emit(json.dumps(results, indent=2), args.output)
    else:
        width = max((len(r["relation"]) for r in results), default=0)
        lines = [f"{r['relation']:<{width}}  {r['holds']}" for r in results]
        _emit("\n".join(lines) if lines else "no relations", args.output)
    return 0


def _read_matrix(path: str):
    return quantum_mod.matrix_from_json(Path(path).read_text(encoding="utf-8"))


def _matrix_doc(m) -> dict:
    return json.loads(quantum_mod.matrix_to_json(m))


def cmd_quantum_decompose(args) -> int:
    a = _read_matrix(args.matrix)
    b, c = quantum_mod.cartesian(a)
    scale = max(1.0, quantum_mod.sup_norm(a) ** 2)
    doc = {
        "normal": quantum_mod.is_normal(a),
        "cartesian": {
            "B": _matrix_doc(b),
            "C": _matrix_doc(c),
            "reassembly_residual": quantum_mod.sup_norm(a - (b + 1j * c)),
            "commutator_norm": quantum_mod.sup_norm(b @ c - c @ b),
        },
    }
    try:
        d, e = quantum_mod.polar(a, tol=args.tolerance)
        doc["polar"] = {
            "D": _matrix_doc(d),
            "E": _matrix_doc(e),
            "reassembly_residual": quantum_mod.sup_norm(a - d @ e),
            "commutator_norm": quantum_mod.sup_norm(d @ e - e @ d),
            "unitarity_residual": quantum_mod.sup_norm(d @ d.conj().T - np.eye(d.shape[0])),
        }
    except quantum_mod.NotInvertibleError as exc:
        doc["polar"] = None
        doc["polar_error"] = str(exc)
    doc["scale"] = scale
    _emit(json.dumps(doc, indent=2), args.output)
    return 0


def cmd_quantum_genprob(args) -> int:
    rho_a = quantum_mod.DensityOperator(_read_matrix(args.a), tol=args.tolerance)
    rho_b = quantum_mod.DensityOperator(_read_matrix(args.b), tol=args.tolerance)
    value = quantum_mod.gen_prob(rho_a, rho_b)
    _emit(json.dumps({"value": value}, indent=2), args.output)
    return 0


def cmd_quantum_context(args) -> int:
    mats = [_read_matrix(p) for p in args.matrix]
    result = quantum_mod.context_operator(mats, sa_tol=args.tolerance)
    doc = {
        "context": _matrix_doc(result.context),
        "eigenvalues": list(result.eigenvalues),
        "functions": [
            {str(k): v for k, v in table.items()} for table in result.tables
        ],
        "polynomials": [
            [float(c) for c in quantum_mod.interpolating_polynomial(table)]
            for table in result.tables
        ],
        "residuals": list(result.residuals),
    }
    _emit(json.dumps(doc, indent=2), args.output)
    return 0


def cmd_cheat_table(args) -> int:
    curves = []
    law_specs = [s for s in (args.laws.split(",") if args.laws else []) if s]
    transform_specs = [s for s in (args.transforms.split(",") if args.transforms else []) if s]
    if not law_specs and not transform_specs:
        law_specs = ["classical", "quantum", "stq:11"]
    for spec in law_specs:
        law = parse_law(spec)
        curves.append((law.label, lambda t, law=law: law_eval(law, t)))
    for spec in transform_specs:
        tr = parse_transform(spec)
        curves.append((tr.label, lambda t, tr=tr: transform_forward(tr, t)))
    table = sample_curves(curves, samples=args.samples)
    if args.format == "json":
        doc = {"header": list(table.header), "rows": [list(r) for r in table.rows]}
        _emit(json.dumps(doc, indent=2), args.output)
    else:
        _emit(table.to_csv(), args.output)
    if args.plot:
        from .plotting import render_curves

        render_curves(table, args.plot)
    return 0


def cmd_cheat_ch(args) -> int:
    law = parse_law(args.law)
    angles = [parse_angle(a) for a in args.angles.split(",")]
    result = ch_value(law, angles, args.convention)
    _emit(result.to_json(), args.output)
    return 0


def cmd_cheat_scan(args) -> int:
    law = parse_law(args.law)
    result = scan_ch(law, args.convention, step=args.step)
    _emit(result.to_json(), args.output)
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    failures = 0
    lines = []
    for name, ok, detail in checks:
        status = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail and not ok else ""
        lines.append(f"{status} {name}{suffix}")
        if not ok:
            failures += 1
    lines.append(f"{len(checks) - failures}/{len(checks)} checks passed")
    _emit("\n".join(lines), args.output)
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlpoly",
        description=(
            "Exact correlation polytopes for finite event structures, "
            "operator decompositions, and parameter-cheat analysis."
        ),
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for compatibility; computation is deterministic and single-threaded",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("--builtin", choices=BUILTIN_NAMES, help="named builtin structure")
        p.add_argument("--logic", help="logic JSON file (block-structure states)")
        p.add_argument("--partitions", help="partition-logic JSON file (model states)")

    p_states = sub.add_parser("states", help="enumerate two-valued states")
    add_source(p_states)
    p_states.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p_states.add_argument("--output", help="write to file instead of stdout")
    p_states.set_defaults(func=cmd_states)

    p_hull = sub.add_parser("hull", help="solve the hull problem (V- to H-representation)")
    add_source(p_hull)
    p_hull.add_argument("--vrep", help="V-representation JSON file")
    p_hull.add_argument(
        "--terms",
        help="semicolon-separated terms, conjunctions with '&' (default: all single atoms)",
    )
    p_hull.add_argument("--format", choices=("table", "json"), default="table")
    p_hull.add_argument("--output", help="write to file instead of stdout")
    p_hull.add_argument("--vrep-out", help="also write the vertex set as JSON")
    p_hull.set_defaults(func=cmd_hull)

    p_check = sub.add_parser("check", help="check relations against a vertex set")
    p_check.add_argument("--vrep", required=True, help="V-representation JSON file")
    p_check.add_argument("--relations", required=True, help="relations file, one per line")
    p_check.add_argument("--format", choices=("table", "json"), default="table")
    p_check.add_argument("--output", help="write to file instead of stdout")
    p_check.set_defaults(func=cmd_check)

    p_quantum = sub.add_parser("quantum", help="complex-operator computations")
    qsub = p_quantum.add_subparsers(dest="subcommand", required=True)

    p_dec = qsub.add_parser("decompose", help="Cartesian and polar decompositions")
    p_dec.add_argument("--matrix", required=True, help="matrix JSON file")
    p_dec.add_argument("--tolerance", type=float, default=quantum_mod.DEFAULT_TOL)
    p_dec.add_argument("--output")
    p_dec.set_defaults(func=cmd_quantum_decompose)

    p_gp = qsub.add_parser("genprob", help="generalized probability Tr(ab)")
    p_gp.add_argument("--a", required=True, help="density matrix JSON file")
    p_gp.add_argument("--b", required=True, help="density matrix JSON file")
    p_gp.add_argument("--tolerance", type=float, default=quantum_mod.DEFAULT_TOL)
    p_gp.add_argument("--output")
    p_gp.set_defaults(func=cmd_quantum_genprob)

    p_ctx = qsub.add_parser("context", help="context operator of a commuting family")
    p_ctx.add_argument(
        "--matrix", action="append", required=True, help="matrix JSON file (repeatable)"
    )
    p_ctx.add_argument("--tolerance", type=float, default=quantum_mod.DEFAULT_TOL)
    p_ctx.add_argument("--output")
    p_ctx.set_defaults(func=cmd_quantum_context)

    p_cheat = sub.add_parser("cheat", help="probability laws and parameter cheats")
    csub = p_cheat.add_subparsers(dest="subcommand", required=True)

    p_tab = csub.add_parser("table", help="sample law/transform curves to CSV")
    p_tab.add_argument("--laws", help="comma-separated law names (e.g. classical,quantum,stq:11)")
    p_tab.add_argument("--transforms", help="comma-separated transform names")
    p_tab.add_argument("--samples", type=int, default=201)
    p_tab.add_argument("--format", choices=("csv", "json"), default="csv")
    p_tab.add_argument("--output", help="write to file instead of stdout")
    p_tab.add_argument("--plot", help="also render the curves to this image file")
    p_tab.set_defaults(func=cmd_cheat_table)

    p_ch = csub.add_parser("ch", help="evaluate the Clauser-Horne combination")
    p_ch.add_argument("--law", required=True, help="law name (e.g. cheat-quantum)")
    p_ch.add_argument(
        "--angles", required=True, help="four angles a1,b1,a2,b2 ('0.25pi' literals allowed)"
    )
    p_ch.add_argument("--convention", choices=("full", "half"), default="full")
    p_ch.add_argument("--output")
    p_ch.set_defaults(func=cmd_cheat_ch)

    p_scan = csub.add_parser("scan", help="scan the one-parameter CH angle family")
    p_scan.add_argument("--law", required=True)
    p_scan.add_argument("--convention", choices=("full", "half"), default="full")
    p_scan.add_argument("--step", type=float, default=1e-3)
    p_scan.add_argument("--output")
    p_scan.set_defaults(func=cmd_cheat_scan)

    p_verify = sub.add_parser("verify", help="run a built-in verification suite")
    p_verify.add_argument(
        "--suite", required=True, choices=tuple(SUITES) + ("all",), help="suite name"
    )
    p_verify.add_argument("--output")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
