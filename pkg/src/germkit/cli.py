"""Command line front end.

Exit codes: 0 on success, 1 for invalid input or model data, 2 when a run
finds violations (an oracle mismatch, a failed scan check, a strong-auto
contradiction).  All reports are deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coefflattice import DEFAULT_BUDGET, partition_of_one, verify_partition
from .complements import epsilon_tag
from .corpus import sqrt2_basis
from .discrepancy import (
    Branch,
    NegInfinity,
    SurfaceGermModel,
    find_computing_path,
    mld_oracle,
    mld_point,
    resolution_model,
    solve_discrepancies,
)
from .dualgraph import hj_graph
from .errors import GermkitError, HypothesesUnmet, ModelError
from .explorer import (
    ScanConfig,
    canonical_model_doc,
    complement_report,
    emit_json,
    emit_report,
    load_model,
    mld_equal,
    model_digest,
    parse_coefficient,
    parse_complement_datum,
    run_perturb_harness,
    run_scan,
    run_verification,
    value_json,
)

VIOLATIONS_EXIT = 2


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ModelError(f"bad rational literal {text!r}") from None


def _load_doc(path: str) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise ModelError(f"{path} is not valid JSON: {e}") from None


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    model = load_model(args.model)
    a = solve_discrepancies(model, args.refine_budget)
    doc = {
        "digest": model_digest(model),
        "a": {str(v): value_json(a[v], args.refine_budget) for v in sorted(a)},
    }
    _write(emit_json(doc), args.out)
    return 0


def cmd_mld(args) -> int:
    model = load_model(args.model)
    budget = args.refine_budget
    profile = mld_point(model, budget)
    doc = {
        "digest": model_digest(model),
        "a": {str(v): value_json(x, budget) for v, x in profile.a},
        "mld": value_json(profile.mld, budget),
        "classification": profile.classification,
        "realizing": {
            "kind": profile.realizing[0],
            "where": profile.realizing[1]
            if not isinstance(profile.realizing[1], tuple)
            else list(profile.realizing[1]),
        },
    }
    if model.epsilon is not None:
        doc["epsilon"] = value_json(model.epsilon, budget)
        doc["epsilon_ok"] = profile.epsilon_ok
    code = 0
    if args.oracle_depth >= 1:
        got = mld_oracle(model, args.oracle_depth, budget)
        agrees = mld_equal(got, profile.mld)
        doc["oracle"] = {
            "depth": args.oracle_depth,
            "mld": value_json(got, budget),
            "agrees": agrees,
        }
        if not agrees:
            code = VIOLATIONS_EXIT
    _write(emit_json(doc), args.out)
    return code


def cmd_scan(args) -> int:
    config = ScanConfig(
        family=args.family,
        n_min=args.n_min,
        n_max=args.n_max,
        q=args.q,
        count=args.count,
        seed=args.seed,
        oracle_depth=args.oracle_depth,
        epsilon=args.epsilon,
        budget=args.refine_budget,
        coeffs=tuple(args.coeff) if args.coeff else None,
        paths=tuple(args.paths),
    )
    if config.family == "files" and not config.paths:
        raise ModelError("--family files needs at least one model path")
    report = run_scan(config)
    _write(emit_report(report, args.format), args.out)
    return VIOLATIONS_EXIT if report.aggregate["violations_total"] else 0


def cmd_perturb(args) -> int:
    models = [load_model(p) for p in args.models]
    report = run_perturb_harness(models, _fraction_arg(args.delta), args.refine_budget)
    _write(emit_json(report), args.out)
    return VIOLATIONS_EXIT if report["violations_total"] else 0


def cmd_partition(args) -> int:
    if args.model:
        basis = load_model(args.model).basis
    else:
        basis = sqrt2_basis()
    delta = _fraction_arg(args.delta)
    part = partition_of_one(basis, delta, args.refine_budget)
    checks = verify_partition(part, args.refine_budget)
    entries = []
    for weight, snap in part.entries:
        entries.append(
            {
                "weight": value_json(weight, args.refine_budget),
                "images": {
                    name: str(snap.apply(basis.unit(i)).as_fraction())
                    for i, name in enumerate(basis.symbols)
                },
            }
        )
    doc = {
        "basis": list(basis.symbols),
        "delta": str(delta),
        "entries": entries,
        "checks": checks,
    }
    _write(emit_json(doc), args.out)
    return 0


def cmd_check_complement(args) -> int:
    datum = parse_complement_datum(_load_doc(args.data))
    doc = complement_report(datum, args.refine_budget)
    _write(emit_json(doc), args.out)
    strong = doc["strong_auto"]
    if strong["hypothesis_ok"] and not strong["coeffs_ok"]:
        return VIOLATIONS_EXIT
    return 0


def _pair_args(pairs, basis, label):
    out = []
    for text in pairs:
        vid, sep, lit = text.partition(":")
        if not sep:
            raise ModelError(f"expected ID:VALUE, got {text!r}", label)
        try:
            v = int(vid)
        except ValueError:
            raise ModelError(f"bad vertex id {vid!r}", label) from None
        out.append((v, basis.rational(_fraction_arg(lit))))
    return out


def cmd_gen_hj(args) -> int:
    from .coefflattice import TRIVIAL_BASIS

    g = hj_graph(args.n, args.q)
    branches = tuple(
        Branch(v, x) for v, x in _pair_args(args.branch, TRIVIAL_BASIS, "--branch")
    )
    loads = tuple(_pair_args(args.load, TRIVIAL_BASIS, "--load"))
    eps = None
    if args.epsilon is not None:
        eps = TRIVIAL_BASIS.rational(_fraction_arg(args.epsilon))
    model = SurfaceGermModel(g, branches, loads, eps, TRIVIAL_BASIS)
    _write(emit_json(canonical_model_doc(model)), args.out)
    return 0


def cmd_verify_lemmas(args) -> int:
    report = run_verification(
        seed=args.seed,
        count=args.count,
        oracle_depth=max(1, args.oracle_depth),
        budget=args.refine_budget,
        delta=_fraction_arg(args.delta),
    )
    _write(emit_json(report), args.out)
    return 0 if report["ok"] else VIOLATIONS_EXIT


def cmd_resolve(args) -> int:
    model = load_model(args.model)
    budget = args.refine_budget
    step = resolution_model(model, budget)
    doc = {
        "digest": model_digest(model),
        "kind": step.kind,
        "computing_vertex": step.computing_vertex,
        "mld": value_json(step.profile.mld, budget),
        "minus_one_unique": step.minus_one_unique,
        "vertices": [[v, w] for v, w in step.model.graph.vertices],
        "edges": [[a, b] for a, b in step.model.graph.edges],
    }
    _write(emit_json(doc), args.out)
    return 0


def cmd_computing_path(args) -> int:
    model = load_model(args.model)
    report = find_computing_path(model, args.refine_budget)
    doc = {
        "digest": model_digest(model),
        "kind": report.kind,
        "path": list(report.path.vertex_ids),
        "m": report.m,
        "conditions": report.conditions,
        "moreover_applicable": report.moreover_applicable,
        "moreover": report.moreover,
    }
    _write(emit_json(doc), args.out)
    return 0 if all(report.conditions.values()) else VIOLATIONS_EXIT


def cmd_epsilon_tag(args) -> int:
    model = load_model(args.model)
    budget = args.refine_budget
    eps = parse_coefficient(args.epsilon, model.basis, "epsilon")
    classification, profile = epsilon_tag(model, eps, budget)
    doc = {
        "digest": model_digest(model),
        "epsilon": value_json(eps, budget),
        "classification": classification,
        "mld": value_json(profile.mld, budget),
    }
    _write(emit_json(doc), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed for generated families")
    common.add_argument(
        "--oracle-depth",
        type=int,
        default=0,
        help="cross-check depth for the blowup tower oracle (0 disables)",
    )
    common.add_argument(
        "--refine-budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="max enclosure refinement level before giving up a comparison",
    )
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )

    p = argparse.ArgumentParser(prog="germkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", parents=[common], help="log discrepancies of one model")
    sp.add_argument("model")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("mld", parents=[common], help="minimal log discrepancy and profile")
    sp.add_argument("model")
    sp.set_defaults(func=cmd_mld)

    sp = sub.add_parser("scan", parents=[common], help="sweep a family and aggregate")
    sp.add_argument(
        "--family", choices=("corpus", "hj", "an", "cyclic", "files"), default="corpus"
    )
    sp.add_argument("paths", nargs="*", help="model files for --family files")
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=30)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--epsilon", help="tag every instance against this epsilon")
    sp.add_argument("--coeff", action="append", help="declared coefficient (repeatable)")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("perturb", parents=[common], help="rational snap harness")
    sp.add_argument("models", nargs="+")
    sp.add_argument("--delta", default="1/1000")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("partition", parents=[common], help="partition of one over a basis")
    sp.add_argument("model", nargs="?", help="model file providing the basis")
    sp.add_argument("--delta", default="1/1000")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser(
        "check-complement", parents=[common], help="index-n complement coefficient checks"
    )
    sp.add_argument("data")
    sp.set_defaults(func=cmd_check_complement)

    sp = sub.add_parser("gen-hj", parents=[common], help="emit a quotient chain model")
    sp.add_argument("n", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--branch", action="append", default=[], metavar="ID:B")
    sp.add_argument("--load", action="append", default=[], metavar="ID:M")
    sp.add_argument("--epsilon")
    sp.set_defaults(func=cmd_gen_hj)

    sp = sub.add_parser(
        "verify-lemmas", parents=[common], help="run every construction-level check"
    )
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--delta", default="1/1000")
    sp.set_defaults(func=cmd_verify_lemmas)

    sp = sub.add_parser("resolve", parents=[common], help="one mld-preserving model step")
    sp.add_argument("model")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser(
        "computing-path", parents=[common], help="locate a computing chain in the graph"
    )
    sp.add_argument("model")
    sp.set_defaults(func=cmd_computing_path)

    sp = sub.add_parser("epsilon-tag", parents=[common], help="classify against an epsilon")
    sp.add_argument("model")
    sp.add_argument("epsilon")
    sp.set_defaults(func=cmd_epsilon_tag)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesesUnmet as e:
        print(f"hypotheses unmet: {e}", file=sys.stderr)
        return 1
    except GermkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
