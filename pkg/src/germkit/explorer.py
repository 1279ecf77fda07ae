"""Model documents, deterministic scans and report emission.

The JSON document format, digesting and all batch runners live here.  Every
report is built from sorted, exact string renderings with no floats or
timestamps, so a fixed seed and configuration reproduce identical bytes.
"""

from __future__ import annotations

import dataclasses
import hashlib
import io
import json
import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coefflattice import (
    BasisDescriptor,
    DEFAULT_BUDGET,
    SpanElement,
    TRIVIAL_BASIS,
    compare,
    decimal_str,
    is_ge,
    is_gt,
    partition_of_one,
    render_exact,
    span_coordinates_over,
    verify_partition,
)
from .complements import (
    ComplementDatum,
    ComplementPart,
    Decomposition,
    check_decomposable,
    check_n_complement_coeffs,
    check_strong_auto,
)
from .corpus import (
    coefficient_pool,
    corpus,
    family_an,
    family_cyclic_one_one,
    hj_with_reduced_branch,
)
from .discrepancy import (
    Branch,
    DiscrepancyProfile,
    MldValue,
    NEG_INFINITY,
    NegInfinity,
    SurfaceGermModel,
    adjunction_form,
    apply_to_coefficients,
    check_convexity,
    check_empty_graph_value,
    check_smooth_threshold,
    check_vertex_window,
    mld_oracle,
    mld_point,
)
from .dualgraph import WeightedDualGraph, hj_graph
from .enclosures import (
    ContinuedFractionEnclosure,
    Enclosure,
    NestedIntervalsEnclosure,
    PointEnclosure,
)
from .errors import GermkitError, ModelError

MODEL_KEYS = {"basis", "enclosures", "graph", "branches", "nefloads", "epsilon"}


def _fraction_literal(obj, path: str) -> Fraction:
    if isinstance(obj, bool):
        raise ModelError("expected a rational literal, got a boolean", path)
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as e:
            raise ModelError(f"bad rational literal {obj!r}: {e}", path) from None
    raise ModelError(f"expected a rational literal, got {type(obj).__name__}", path)


def parse_coefficient(obj, basis: BasisDescriptor, path: str) -> SpanElement:
    """Coefficient literal: a rational, or a coordinate list over the basis."""
    if isinstance(obj, list):
        if len(obj) != basis.dim:
            raise ModelError(
                f"coordinate list needs {basis.dim} entries, got {len(obj)}", path
            )
        return basis.element([_fraction_literal(x, f"{path}[{i}]") for i, x in enumerate(obj)])
    return basis.rational(_fraction_literal(obj, path))


def _parse_enclosure(obj, path: str) -> Enclosure:
    if isinstance(obj, list):
        obj = {"cf": obj}
    if not isinstance(obj, dict):
        raise ModelError("enclosure must be a list or an object", path)
    if "cf" in obj:
        cf = obj["cf"]
        if isinstance(cf, list):
            head, cycle = cf, ()
        elif isinstance(cf, dict):
            head = cf.get("head", [])
            cycle = cf.get("cycle", [])
            extra = set(cf) - {"head", "cycle"}
            if extra:
                raise ModelError(f"unknown cf keys {sorted(extra)}", path)
        else:
            raise ModelError("cf must be a list or {head, cycle}", path)
        try:
            return ContinuedFractionEnclosure(tuple(head), tuple(cycle))
        except (ValueError, TypeError) as e:
            raise ModelError(str(e), path) from None
    if "intervals" in obj:
        raw = obj["intervals"]
        if not isinstance(raw, list):
            raise ModelError("intervals must be a list of [lo, hi] pairs", path)
        ivs = []
        for i, pair in enumerate(raw):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ModelError("interval must be a [lo, hi] pair", f"{path}[{i}]")
            ivs.append(
                (
                    _fraction_literal(pair[0], f"{path}[{i}][0]"),
                    _fraction_literal(pair[1], f"{path}[{i}][1]"),
                )
            )
        try:
            return NestedIntervalsEnclosure(tuple(ivs))
        except ValueError as e:
            raise ModelError(str(e), path) from None
    raise ModelError("enclosure needs a cf or intervals entry", path)


def parse_basis(doc: dict) -> BasisDescriptor:
    symbols = doc.get("basis", ["1"])
    if not (isinstance(symbols, list) and all(isinstance(s, str) for s in symbols)):
        raise ModelError("basis must be a list of symbol names", "basis")
    encdoc = doc.get("enclosures", {})
    if not isinstance(encdoc, dict):
        raise ModelError("enclosures must be an object keyed by symbol", "enclosures")
    encs: List[Enclosure] = []
    for i, name in enumerate(symbols):
        if i == 0:
            encs.append(PointEnclosure(Fraction(1)))
            continue
        if name not in encdoc:
            raise ModelError(f"missing enclosure for symbol {name!r}", "enclosures")
        encs.append(_parse_enclosure(encdoc[name], f"enclosures.{name}"))
    unknown = set(encdoc) - set(symbols[1:])
    if unknown:
        raise ModelError(f"enclosures for undeclared symbols {sorted(unknown)}", "enclosures")
    try:
        return BasisDescriptor(tuple(symbols), tuple(encs))
    except ValueError as e:
        raise ModelError(str(e), "basis") from None


def parse_model(doc: dict) -> SurfaceGermModel:
    """Build a validated germ model from one JSON document."""
    if not isinstance(doc, dict):
        raise ModelError("model document must be an object")
    unknown = set(doc) - MODEL_KEYS
    if unknown:
        raise ModelError(f"unknown keys {sorted(unknown)}")
    basis = parse_basis(doc)
    gdoc = doc.get("graph", {})
    if not isinstance(gdoc, dict):
        raise ModelError("graph must be an object", "graph")
    extra = set(gdoc) - {"vertices", "edges"}
    if extra:
        raise ModelError(f"unknown keys {sorted(extra)}", "graph")
    vertices = []
    for i, v in enumerate(gdoc.get("vertices", [])):
        if not isinstance(v, dict) or set(v) != {"id", "weight"}:
            raise ModelError("vertex must be {id, weight}", f"graph.vertices[{i}]")
        if not isinstance(v["id"], int) or isinstance(v["id"], bool):
            raise ModelError("id must be an integer", f"graph.vertices[{i}].id")
        if not isinstance(v["weight"], int) or isinstance(v["weight"], bool):
            raise ModelError("weight must be an integer", f"graph.vertices[{i}].weight")
        vertices.append((v["id"], v["weight"]))
    edges = []
    for i, e in enumerate(gdoc.get("edges", [])):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ModelError("edge must be a pair of vertex ids", f"graph.edges[{i}]")
        edges.append((e[0], e[1]))
    try:
        graph = WeightedDualGraph(tuple(vertices), tuple(edges))
    except ValueError as e:
        raise ModelError(str(e), "graph") from None
    branches = []
    for i, b in enumerate(doc.get("branches", [])):
        if not isinstance(b, dict) or set(b) != {"vertex", "b"}:
            raise ModelError("branch must be {vertex, b}", f"branches[{i}]")
        v = b["vertex"]
        if v is not None and (not isinstance(v, int) or isinstance(v, bool)):
            raise ModelError("vertex must be an id or null", f"branches[{i}].vertex")
        branches.append(Branch(v, parse_coefficient(b["b"], basis, f"branches[{i}].b")))
    loads = []
    loaddoc = doc.get("nefloads", {})
    if not isinstance(loaddoc, dict):
        raise ModelError("nefloads must be an object keyed by vertex id", "nefloads")
    for k in sorted(loaddoc):
        try:
            vid = int(k)
        except ValueError:
            raise ModelError(f"bad vertex key {k!r}", "nefloads") from None
        loads.append((vid, parse_coefficient(loaddoc[k], basis, f"nefloads.{k}")))
    eps = None
    if "epsilon" in doc and doc["epsilon"] is not None:
        eps = parse_coefficient(doc["epsilon"], basis, "epsilon")
    return SurfaceGermModel(graph, tuple(branches), tuple(loads), eps, basis)


def load_model(path: str) -> SurfaceGermModel:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ModelError(f"{path} is not valid JSON: {e}") from None
    return parse_model(doc)


def _canonical_enclosure(enc: Enclosure):
    if isinstance(enc, ContinuedFractionEnclosure):
        return {"cf": {"head": list(enc.head), "cycle": list(enc.cycle)}}
    if isinstance(enc, NestedIntervalsEnclosure):
        return {"intervals": [[str(lo), str(hi)] for lo, hi in enc.intervals]}
    raise ValueError(f"cannot serialize enclosure {type(enc).__name__}")


def _canonical_coeff(x: SpanElement) -> List[str]:
    return [str(c) for c in x.coords]


def canonical_model_doc(model: SurfaceGermModel) -> dict:
    """Stable dictionary form of a model, the basis of its digest."""
    doc: dict = {
        "basis": list(model.basis.symbols),
        "enclosures": {
            name: _canonical_enclosure(enc)
            for name, enc in zip(model.basis.symbols[1:], model.basis.enclosures[1:])
        },
        "graph": {
            "vertices": [{"id": v, "weight": w} for v, w in model.graph.vertices],
            "edges": [[a, b] for a, b in model.graph.edges],
        },
        "branches": [
            {"vertex": b.vertex, "b": _canonical_coeff(b.coeff)} for b in model.branches
        ],
        "nefloads": {str(v): _canonical_coeff(mu) for v, mu in model.nef_loads},
    }
    if model.epsilon is not None:
        doc["epsilon"] = _canonical_coeff(model.epsilon)
    return doc


def model_digest(model: SurfaceGermModel) -> str:
    blob = json.dumps(canonical_model_doc(model), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def value_json(x: MldValue, budget: int | None = None) -> dict:
    if isinstance(x, NegInfinity):
        return {"exact": "-inf", "decimal": "-inf"}
    return {"exact": render_exact(x), "decimal": decimal_str(x, 12, budget)}


def mld_equal(x: MldValue, y: MldValue) -> bool:
    if isinstance(x, NegInfinity) or isinstance(y, NegInfinity):
        return isinstance(x, NegInfinity) and isinstance(y, NegInfinity)
    return x == y


def _realizing_str(locus) -> str:
    kind, where = locus
    if kind == "vertex":
        return f"vertex:{where}"
    if kind == "edge":
        return f"edge:{where[0]}-{where[1]}"
    if kind == "branch":
        return f"branch:{where}"
    return "point"


def sort_values(values: Sequence[SpanElement], budget: int | None = None) -> List[SpanElement]:
    out: List[SpanElement] = []
    for v in values:
        lo = 0
        hi = len(out)
        while lo < hi:
            mid = (lo + hi) // 2
            if compare(v, out[mid], budget) < 0:
                hi = mid
            else:
                lo = mid + 1
        out.insert(lo, v)
    return out


@dataclass(frozen=True)
class ScanConfig:
    """Deterministic scan parameters; the seed pins every random choice."""

    family: str = "corpus"
    n_min: int = 2
    n_max: int = 30
    q: int = 1
    count: int = 200
    seed: int = 0
    oracle_depth: int = 0
    epsilon: Optional[str] = None
    budget: int = DEFAULT_BUDGET
    coeffs: Optional[Tuple[str, ...]] = None
    paths: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["coeffs"] = list(self.coeffs) if self.coeffs is not None else None
        d["paths"] = list(self.paths)
        return d


def build_scan_models(config: ScanConfig) -> List[SurfaceGermModel]:
    fam = config.family
    if fam == "an":
        models = family_an(config.n_max)
    elif fam == "cyclic":
        models = family_cyclic_one_one(config.n_max)
    elif fam == "hj":
        import math

        models = []
        for n in range(max(2, config.n_min), config.n_max + 1):
            if 0 < config.q < n and math.gcd(n, config.q) == 1:
                models.append(
                    SurfaceGermModel(hj_graph(n, config.q), (), (), None, TRIVIAL_BASIS)
                )
    elif fam == "corpus":
        models = corpus(config.seed, config.count)
    elif fam == "files":
        models = [load_model(p) for p in config.paths]
    else:
        raise ModelError(f"unknown family {fam!r}")
    if config.epsilon is not None:
        out = []
        for m in models:
            eps = parse_coefficient(config.epsilon, m.basis, "epsilon")
            out.append(dataclasses.replace(m, epsilon=eps))
        models = out
    return models


def _scan_instance(model: SurfaceGermModel, config: ScanConfig):
    budget = config.budget
    profile = mld_point(model, budget)
    g = model.graph
    a = profile.a_map()
    checks: List[str] = []
    violations: List[str] = []

    def record(found) -> None:
        for v in found:
            violations.append(f"{v.check}@{v.where}: {v.detail}")

    all_deep = g.order > 0 and all(w <= -2 for _, w in g.vertices)
    if profile.is_lc and all(not is_gt(av, 1, budget) for av in a.values()):
        checks.append("convexity")
        record(check_convexity(model, budget, profile))
    if all_deep:
        checks.append("smooth-threshold")
        record(check_smooth_threshold(model, profile, budget))
        if profile.is_lc:
            checks.append("vertex-window")
            record(check_vertex_window(model, profile, budget))
    if g.order == 0:
        total = model.basis.zero()
        for br in model.branches:
            total = total + br.coeff
        if not is_gt(total, 1, budget):
            checks.append("smooth-center")
            record(check_empty_graph_value(model, profile, budget))
    if config.oracle_depth >= 1:
        checks.append("oracle")
        got = mld_oracle(model, config.oracle_depth, budget)
        if not mld_equal(got, profile.mld):
            violations.append("oracle: tower enumeration disagrees with the closed form")
    generators = (
        [parse_coefficient(c, model.basis, "coeffs") for c in config.coeffs]
        if config.coeffs is not None
        else coefficient_pool(model.basis)
    )
    if not isinstance(profile.mld, NegInfinity):
        checks.append("span-closure")
        if span_coordinates_over(generators, profile.mld) is None:
            violations.append("span-closure: mld outside the declared coefficient span")
    if profile.is_lc:
        for idx, br in enumerate(model.branches):
            if br.coeff == model.basis.rational(1):
                checks.append("adjunction-form")
                if not adjunction_form(model, idx, budget).ok:
                    violations.append(f"adjunction-form@branch:{idx}: decomposition failed")
                break
    instance = {
        "digest": model_digest(model),
        "n_vertices": g.order,
        "mld": value_json(profile.mld, budget),
        "classification": profile.classification,
        "realizing": _realizing_str(profile.realizing),
        "checks": sorted(set(checks)),
        "violations": sorted(violations),
    }
    return instance, profile


@dataclass(frozen=True)
class ScanReport:
    config: dict
    instances: List[dict]
    aggregate: dict

    def to_json_dict(self) -> dict:
        return {
            "config": self.config,
            "instances": self.instances,
            "aggregate": self.aggregate,
        }


def run_scan(config: ScanConfig) -> ScanReport:
    """Sweep a family, profile every model and aggregate the results.

    Instances are deduplicated and ordered by digest.  The aggregate holds
    the sorted set of distinct finite mld values, the smallest pairwise gap
    and the total violation count; not-log-canonical instances are counted
    but contribute no value.
    """
    models = build_scan_models(config)
    by_digest: Dict[str, Tuple[dict, DiscrepancyProfile]] = {}
    for m in models:
        inst, profile = _scan_instance(m, config)
        by_digest.setdefault(inst["digest"], (inst, profile))
    instances = [inst for _, (inst, _) in sorted(by_digest.items())]
    finite: List[SpanElement] = []
    not_lc = 0
    violations_total = 0
    for _, (inst, profile) in sorted(by_digest.items()):
        violations_total += len(inst["violations"])
        if isinstance(profile.mld, NegInfinity):
            not_lc += 1
        elif all(profile.mld != v for v in finite):
            finite.append(profile.mld)
    ordered = sort_values(finite, config.budget)
    min_gap = None
    for x, y in zip(ordered, ordered[1:]):
        gap = y - x
        if min_gap is None or compare(gap, min_gap, config.budget) < 0:
            min_gap = gap
    aggregate = {
        "count": len(instances),
        "not_lc": not_lc,
        "values": [value_json(v, config.budget) for v in ordered],
        "min_gap": None if min_gap is None else value_json(min_gap, config.budget),
        "violations_total": violations_total,
    }
    return ScanReport(config.to_dict(), instances, aggregate)


PERTURB_DISCLAIMER = (
    "each instance is certified at its own delta; no single delta is claimed "
    "to work uniformly across an unbounded family"
)


def run_perturb_harness(
    models: Sequence[SurfaceGermModel], delta, budget: int | None = None
) -> dict:
    """Snap every lc model's coefficients to nearby rationals and re-solve.

    For each entry of the partition family the perturbed model must stay
    log canonical, and when the original was tagged against a positive
    epsilon the perturbed mld must stay at or above the snapped epsilon.
    """
    delta = Fraction(delta)
    entries: Dict[str, dict] = {}
    violations = 0
    for m in models:
        digest = model_digest(m)
        if digest in entries:
            continue
        profile = mld_point(m, budget)
        if not profile.is_lc:
            entries[digest] = {"digest": digest, "status": "skipped-not-lc"}
            continue
        part = partition_of_one(m.basis, delta, budget)
        eps_active = (
            m.epsilon is not None
            and is_gt(m.epsilon, 0, budget)
            and bool(profile.epsilon_ok)
        )
        lc_ok = True
        eps_ok: Optional[bool] = True if eps_active else None
        for _, f in part.entries:
            m2 = apply_to_coefficients(m, f)
            p2 = mld_point(m2, budget)
            if not p2.is_lc:
                lc_ok = False
            if eps_active:
                target = f.apply(m.epsilon)
                if isinstance(p2.mld, NegInfinity) or not is_ge(p2.mld, target, budget):
                    eps_ok = False
        if not lc_ok:
            violations += 1
        if eps_active and not eps_ok:
            violations += 1
        entry = {
            "digest": digest,
            "status": "checked",
            "maps": len(part.entries),
            "lc_preserved": lc_ok,
            "epsilon_preserved": eps_ok,
        }
        if m.basis.dim == 1:
            entry["note"] = "no irrational symbols; the family is the identity map"
        entries[digest] = entry
    return {
        "disclaimer": PERTURB_DISCLAIMER,
        "delta": str(delta),
        "entries": [entries[k] for k in sorted(entries)],
        "violations_total": violations,
    }


def run_verification(
    seed: int = 0,
    count: int = 200,
    oracle_depth: int = 3,
    budget: int | None = None,
    delta="1/1000",
) -> dict:
    """Construction-level verification across the generated corpus.

    Runs the tower oracle at every depth up to ``oracle_depth`` against the
    closed form, the named families against their known values, every
    applicable inequality suite, the adjunction decomposition on reduced
    branch chains, the partition identities and the perturbation harness.
    """
    models = corpus(seed, count)
    sections: Dict[str, dict] = {}

    mismatches = []
    for m in models:
        profile = mld_point(m, budget)
        for d in range(1, oracle_depth + 1):
            if not mld_equal(mld_oracle(m, d, budget), profile.mld):
                mismatches.append({"digest": model_digest(m), "depth": d})
    sections["oracle"] = {
        "models": len(models),
        "depths": list(range(1, oracle_depth + 1)),
        "mismatches": mismatches,
    }

    bad_an = [
        m.graph.order
        for m in family_an(50)
        if mld_point(m, budget).mld != m.basis.rational(1)
    ]
    bad_cyclic = [
        -m.graph.weight(0)
        for m in family_cyclic_one_one(50)
        if mld_point(m, budget).mld != m.basis.rational(Fraction(2, -m.graph.weight(0)))
    ]
    sections["families"] = {"an_failures": bad_an, "cyclic_failures": bad_cyclic}

    suite_violations = []
    for m in models:
        cfg = ScanConfig(budget=budget if budget is not None else DEFAULT_BUDGET)
        inst, _ = _scan_instance(m, cfg)
        for v in inst["violations"]:
            suite_violations.append({"digest": inst["digest"], "violation": v})
    sections["suites"] = {"violations": suite_violations}

    import math

    adjunction_failures = []
    adjunction_checked = 0
    for n in range(2, 16):
        for q in range(1, n):
            if math.gcd(n, q) != 1:
                continue
            m = hj_with_reduced_branch(n, q)
            if not mld_point(m, budget).is_lc:
                adjunction_failures.append({"n": n, "q": q, "violation": "not lc"})
                continue
            adjunction_checked += 1
            if not adjunction_form(m, 0, budget).ok:
                adjunction_failures.append({"n": n, "q": q, "violation": "form"})
    sections["adjunction"] = {
        "checked": adjunction_checked,
        "failures": adjunction_failures,
    }

    basis = models[0].basis if models else None
    partition_ok = True
    if basis is not None:
        for d in (Fraction(1, 10), Fraction(1, 1000)):
            part = partition_of_one(basis, d, budget)
            if not all(verify_partition(part, budget).values()):
                partition_ok = False
    sections["partition"] = {"ok": partition_ok}

    perturb = run_perturb_harness(models, Fraction(delta), budget)
    sections["perturb"] = {
        "violations": perturb["violations_total"],
        "entries": len(perturb["entries"]),
    }

    total = (
        len(mismatches)
        + len(bad_an)
        + len(bad_cyclic)
        + len(suite_violations)
        + len(adjunction_failures)
        + (0 if partition_ok else 1)
        + perturb["violations_total"]
    )
    return {
        "seed": seed,
        "count": count,
        "sections": sections,
        "violations_total": total,
        "ok": total == 0,
    }


def parse_complement_datum(doc: dict) -> ComplementDatum:
    if not isinstance(doc, dict):
        raise ModelError("complement document must be an object")
    unknown = set(doc) - {"n", "basis", "enclosures", "B", "Bplus", "m", "decomposition"}
    if unknown:
        raise ModelError(f"unknown keys {sorted(unknown)}")
    if "n" not in doc or not isinstance(doc["n"], int) or isinstance(doc["n"], bool):
        raise ModelError("n must be an integer", "n")
    basis = parse_basis(doc)

    def seq(key: str) -> Tuple[SpanElement, ...]:
        raw = doc.get(key, [])
        if not isinstance(raw, list):
            raise ModelError(f"{key} must be a list", key)
        return tuple(
            parse_coefficient(x, basis, f"{key}[{i}]") for i, x in enumerate(raw)
        )

    decomposition = None
    if "decomposition" in doc:
        d = doc["decomposition"]
        if not isinstance(d, dict) or set(d) - {"weights", "parts"}:
            raise ModelError("decomposition must be {weights, parts}", "decomposition")
        weights = tuple(
            parse_coefficient(x, basis, f"decomposition.weights[{i}]")
            for i, x in enumerate(d.get("weights", []))
        )
        parts = []
        for k, p in enumerate(d.get("parts", [])):
            if not isinstance(p, dict) or set(p) - {"Bplus", "m"}:
                raise ModelError("part must be {Bplus, m?}", f"decomposition.parts[{k}]")
            bplus = tuple(
                parse_coefficient(x, basis, f"decomposition.parts[{k}].Bplus[{i}]")
                for i, x in enumerate(p.get("Bplus", []))
            )
            loads = None
            if "m" in p:
                loads = tuple(
                    parse_coefficient(x, basis, f"decomposition.parts[{k}].m[{i}]")
                    for i, x in enumerate(p["m"])
                )
            parts.append(ComplementPart(bplus, loads))
        decomposition = Decomposition(weights, tuple(parts))
    return ComplementDatum(doc["n"], basis, seq("B"), seq("Bplus"), seq("m"), decomposition)


def complement_report(datum: ComplementDatum, budget: int | None = None) -> dict:
    """All complement-side checks on one datum, as a JSON-ready dict."""
    coeffs = check_n_complement_coeffs(datum, budget)
    strong = check_strong_auto(datum, budget)
    doc: dict = {
        "n": datum.n,
        "coefficients": {
            "ok": coeffs.ok,
            "rows": [
                {
                    "index": r.index,
                    "threshold": str(r.threshold),
                    "integral": r.integral,
                    "meets_threshold": r.meets_threshold,
                }
                for r in coeffs.rows
            ],
            "loads_integral": list(coeffs.loads_integral),
        },
        "strong_auto": {
            "hypothesis_ok": strong.hypothesis_ok,
            "coeffs_ok": strong.coeffs_ok,
            "consistent": strong.ok,
        },
    }
    if datum.decomposition is not None:
        rep = check_decomposable(datum, budget)
        doc["decomposition"] = {
            "ok": rep.ok,
            "weights_positive": rep.weights_positive,
            "weights_sum_to_one": rep.weights_sum_to_one,
            "mixes_back": rep.mixes_back,
            "parts_ok": [c.ok for c in rep.part_checks],
        }
    return doc


def emit_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


CSV_COLUMNS = (
    "digest",
    "n_vertices",
    "mld_exact",
    "mld_decimal",
    "classification",
    "realizing",
    "violations",
)


def emit_csv(report: ScanReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for inst in report.instances:
        w.writerow(
            [
                inst["digest"],
                inst["n_vertices"],
                inst["mld"]["exact"],
                inst["mld"]["decimal"],
                inst["classification"],
                inst["realizing"],
                len(inst["violations"]),
            ]
        )
    return buf.getvalue()


def emit_report(report: ScanReport, fmt: str = "json") -> str:
    if fmt == "json":
        return emit_json(report.to_json_dict())
    if fmt == "csv":
        return emit_csv(report)
    raise ValueError(f"unknown format {fmt!r}")
