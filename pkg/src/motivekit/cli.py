"""Command-line front end: scenario files in, deterministic reports out.

Subcommands: ``decompose`` (fibration splitting plus optional graded
consistency), ``blowup`` (explicit inverse and Chow-Kunneth synthesis),
``infer`` (fact saturation with traces; ``--rules`` prints the cited
catalog), ``realize`` (graded ledger only) and ``verify`` (seeded
property suites).  Reports are byte-identical across runs for identical
inputs: ordering is explicit everywhere and the only run metadata is the
tool version and the scenario digest.

Exit codes: 0 success, 1 at least one FAILED identity, 2 scenario schema
or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from importlib import resources
from typing import Optional

import jsonschema

from . import __version__
from .blowup import (AXIOM_MANIN, FAILED, PROVED, BlowupScenario,
                     build_blowup_morphisms, synthesize_chow_kunneth,
                     verify_two_sided)
from .corr import AlgebraError
from .fibration import (FibrationScenario, ScenarioError,
                        decomposition_shape, split_motive)
from .inference import (Fact, FiberDescriptor, InferenceError, fiber_facts,
                        infer, rule_catalog_lines)
from .motives import classify_triangular, compose_morphisms
from .realization import (GradedPoly, RealizationError,
                          check_decomposition_realization, family)

def _default_seed() -> int:
    return int(os.environ.get("MOTIVEKIT_SEED", "20240"))


class CliError(Exception):
    """Scenario-level problem; maps to exit code 2."""


# ---------------------------------------------------------------------------
# scenario loading
# ---------------------------------------------------------------------------

def _load_schema() -> dict:
    with resources.files("motivekit.schemas").joinpath("scenario.schema.json").open(
            "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_scenario(path: str) -> tuple[dict, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read scenario file: {exc}")
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CliError(f"scenario is not valid JSON: {exc}")
    schema = _load_schema()
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "<root>"
        raise CliError(f"scenario rejected by schema at {where}: {first.message}")
    return data, digest


def _parse_fiber(spec: Optional[dict]) -> Optional[FiberDescriptor]:
    if spec is None:
        return None
    return FiberDescriptor(family=spec["family"], dim=spec.get("dim", 0),
                           degrees=tuple(spec.get("degrees", ())),
                           genus=spec.get("genus", 0))


def _parse_poly(spec: dict) -> GradedPoly:
    if "coefficients" in spec:
        return GradedPoly.from_coeffs(spec["coefficients"])
    name = spec["family"]
    params = {k: v for k, v in spec.items() if k not in ("family",)}
    return family(name, **params).poincare


def _fibration_scenario(data: dict) -> FibrationScenario:
    try:
        return FibrationScenario(
            total_dim=data["total_dim"], base_dim=data["base_dim"],
            flat=data.get("flat", False), fiber=_parse_fiber(data.get("fiber")),
            chow_trivial_below=data.get("chow_trivial_below"),
            base_facts=tuple(data.get("base_facts", ())))
    except (ScenarioError, InferenceError) as exc:
        raise CliError(str(exc))


def _smooth_family_total_poly(scenario: FibrationScenario,
                              base_poly: GradedPoly) -> GradedPoly:
    c = scenario.relative_dim
    total = GradedPoly.zero()
    for i in range(c + 1):
        total = total + base_poly.shift(2 * i)
    if c % 2 == 0 and c > 0:
        total = total + base_poly.shift(c)
    return total


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------

def _identity(name: str, status: str, detail: str = "") -> dict:
    return {"name": name, "status": status, "detail": detail}


def _report_skeleton(kind: str, digest: str) -> dict:
    return {
        "tool": {"name": "motivekit", "version": __version__},
        "kind": kind,
        "input_digest": digest,
        "identities": [],
    }


def _emit(report: dict, mode: str) -> int:
    if mode == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_render_text(report))
    failed = any(item["status"] == FAILED for item in report["identities"])
    return 1 if failed else 0


def _render_text(report: dict) -> str:
    lines = [f"motivekit {report['kind']} report (v{report['tool']['version']})",
             f"input digest: {report['input_digest']}"]
    for key in ("scenario", "decomposition", "notes"):
        if report.get(key):
            lines.append(f"{key}: {report[key]}" if isinstance(report[key], str)
                         else f"{key}:")
            if not isinstance(report[key], str):
                for k in sorted(report[key]):
                    lines.append(f"  {k}: {report[key][k]}")
    if report["identities"]:
        lines.append("identities:")
        for item in report["identities"]:
            detail = f"  ({item['detail']})" if item["detail"] else ""
            lines.append(f"  {item['name']}: {item['status']}{detail}")
    if report.get("residual") is not None:
        lines.append("graded ledger:")
        for k in sorted(report["residual"]):
            lines.append(f"  {k}: {report['residual'][k]}")
    if report.get("derived_facts"):
        lines.append("derived facts:")
        for entry in report["derived_facts"]:
            lines.append(f"  {entry['fact']}")
            for tl in entry["trace"].splitlines():
                lines.append(f"    {tl}")
    if report.get("projectors"):
        lines.append("chow-kunneth projectors:")
        for entry in report["projectors"]:
            lines.append(f"  {entry}")
    if report.get("suite") is not None:
        lines.append("suite results:")
        for entry in report["suite"]:
            lines.append(f"  {entry['name']}: {entry['status']}"
                         + (f"  ({entry['detail']})" if entry["detail"] else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _run_decompose(data: dict, digest: str, emit: str) -> int:
    scenario = _fibration_scenario(data)
    report = _report_skeleton("decompose", digest)
    report["scenario"] = {
        "total_dim": scenario.total_dim, "base_dim": scenario.base_dim,
        "flat": scenario.flat,
        "fiber": str(scenario.fiber) if scenario.fiber else "unspecified",
        "chow_trivial_below": scenario.triviality_level(),
    }
    try:
        decomposition = split_motive(scenario, force=data.get("force", False))
    except (ScenarioError, AlgebraError) as exc:
        raise CliError(str(exc))
    witness = decomposition.witness
    report["identities"].append(_identity(
        "composite is unitriangular with diagonal n*Delta",
        PROVED if witness.gram_report.invertible_by_neumann else FAILED,
        f"diagonal scalar {witness.gram_report.diagonal_scalar}"))
    two_sided = (compose_morphisms(witness.gram_inverse, witness.gram).is_identity()
                 and compose_morphisms(witness.gram, witness.gram_inverse).is_identity())
    report["identities"].append(_identity(
        "inverse of the composite is two-sided", PROVED if two_sided else FAILED))
    report["identities"].append(_identity(
        "projector is idempotent", PROVED if witness.idempotent_ok else FAILED))
    report["identities"].append(_identity(
        "projector is self-dual", PROVED if witness.self_dual_ok else FAILED))
    remainder = decomposition.remainder
    report["decomposition"] = {
        "base_part": str(decomposition.base_part),
        "remainder": str(remainder) if remainder else "absent",
        "full": decomposition.full_decomposition,
        "hypotheses_verified": decomposition.hypotheses_verified,
    }
    if "base_poly" in data:
        base_poly = _parse_poly(data["base_poly"])
        if data.get("total_poly") == {"smooth_family": True}:
            total_poly = _smooth_family_total_poly(scenario, base_poly)
        elif "total_poly" in data:
            total_poly = _parse_poly(data["total_poly"])
        else:
            raise CliError("base_poly given without total_poly")
        try:
            ledger = check_decomposition_realization(decomposition, total_poly,
                                                     base_poly)
        except RealizationError as exc:
            raise CliError(str(exc))
        report["identities"].append(_identity(
            "graded residual accepted", ledger.status(),
            f"residual {ledger.residual}"))
        report["residual"] = {
            "residual": str(ledger.residual),
            "candidate_remainder": str(ledger.candidate_remainder)
                                   if ledger.candidate_remainder else "none",
            "nonnegative": ledger.nonnegative,
            "twist_divisible": ledger.twist_divisible,
            "degree_bounded": ledger.degree_bounded,
        }
    return _emit(report, emit)


def _run_blowup(data: dict, digest: str, emit: str) -> int:
    scenario = BlowupScenario(total_dim=data["total_dim"],
                              center_dim=data["center_dim"],
                              with_ck=data.get("chow_kunneth", False))
    report = _report_skeleton("blowup", digest)
    report["scenario"] = {
        "total_dim": scenario.total_dim, "center_dim": scenario.center_dim,
        "codimension": scenario.codimension,
        "chow_kunneth": scenario.with_ck,
    }
    try:
        morphisms = build_blowup_morphisms(scenario)
    except AlgebraError as exc:
        raise CliError(str(exc))
    table = classify_triangular(morphisms.gram)
    report["identities"].append(_identity(
        "composite reproduces the unitriangular table",
        PROVED if table.invertible_by_neumann else FAILED,
        f"diagonal scalar {table.diagonal_scalar}"))
    two = verify_two_sided(scenario, morphisms)
    report["identities"].append(_identity("left inverse of the assembly",
                                          two.left_status))
    report["identities"].append(_identity("right inverse of the assembly",
                                          two.right_status))
    if scenario.with_ck:
        _, ck = synthesize_chow_kunneth(scenario)
        v = ck.verification
        report["identities"].append(_identity(
            "chow-kunneth projectors idempotent",
            PROVED if v.idempotent_ok else FAILED,
            ", ".join(v.axioms_by_identity["idempotency"])))
        report["identities"].append(_identity(
            "chow-kunneth projectors mutually orthogonal",
            PROVED if v.orthogonal_ok else FAILED,
            ", ".join(v.axioms_by_identity["orthogonality"])))
        report["identities"].append(_identity(
            "chow-kunneth projectors sum to the diagonal",
            AXIOM_MANIN if v.complete_ok else FAILED,
            ", ".join(v.axioms_by_identity["completeness"])))
        report["projectors"] = [
            f"projector {i}: {len(p.entry(0, 0).items())} words"
            for i, p in enumerate(ck.projectors)]
        report["notes"] = {"manin_axiom_uses": v.manin_uses}
    return _emit(report, emit)


def _assemble_facts(data: dict) -> list[Fact]:
    facts: list[Fact] = []
    if "total_dim" in data:
        facts.append(Fact("total_dim", (data["total_dim"],)))
    if "base_dim" in data:
        facts.append(Fact("base_dim", (data["base_dim"],)))
    fiber = _parse_fiber(data.get("fiber"))
    if fiber is not None:
        facts.extend(fiber_facts(fiber))
    for entry in data.get("facts", ()):
        if isinstance(entry, str):
            facts.append(Fact(entry))
        else:
            facts.append(Fact(entry["pred"], tuple(entry.get("args", ()))))
    return facts


def _run_infer(data: Optional[dict], digest: str, emit: str,
               show_rules: bool) -> int:
    report = _report_skeleton("infer", digest)
    if show_rules:
        report["notes"] = {f"rule-{i:02d}": line
                           for i, line in enumerate(rule_catalog_lines())}
    if data is not None:
        try:
            inputs = _assemble_facts(data)
        except InferenceError as exc:
            raise CliError(str(exc))
        result = infer(inputs)
        input_set = {t.fact for t in result.traces.values() if t.rule_id is None}
        derived = [f for f in result.facts if f not in input_set]
        report["scenario"] = {"inputs": ", ".join(str(f) for f in sorted(
            input_set, key=lambda f: f.sort_key()))}
        report["derived_facts"] = [
            {"fact": str(f), "trace": result.traces[f].render()}
            for f in derived]
        report["identities"].append(_identity(
            "saturation reached a fixed point", PROVED,
            f"{len(derived)} derived facts"))
    return _emit(report, emit)


def _run_realize(data: dict, digest: str, emit: str) -> int:
    scenario = _fibration_scenario(data)
    report = _report_skeleton("realize", digest)
    base_poly = _parse_poly(data["base_poly"])
    if data.get("total_poly") == {"smooth_family": True}:
        total_poly = _smooth_family_total_poly(scenario, base_poly)
    else:
        total_poly = _parse_poly(data["total_poly"])
    shape = decomposition_shape_view(scenario)
    try:
        ledger = check_decomposition_realization(shape, total_poly, base_poly)
    except RealizationError as exc:
        raise CliError(str(exc))
    report["scenario"] = {
        "total_dim": scenario.total_dim, "base_dim": scenario.base_dim,
        "remainder": str(shape.remainder) if shape.remainder else "absent",
    }
    report["identities"].append(_identity(
        "graded residual accepted", ledger.status(), f"residual {ledger.residual}"))
    report["residual"] = {
        "residual": str(ledger.residual),
        "candidate_remainder": str(ledger.candidate_remainder)
                               if ledger.candidate_remainder else "none",
        "nonnegative": ledger.nonnegative,
        "twist_divisible": ledger.twist_divisible,
        "degree_bounded": ledger.degree_bounded,
        "total_rank_conserved": ledger.total_rank_conserved,
    }
    return _emit(report, emit)


class _ShapeView:
    def __init__(self, scenario: FibrationScenario):
        self.total_dim = scenario.total_dim
        self.base_dim = scenario.base_dim
        _, self.remainder = decomposition_shape(scenario)


def decomposition_shape_view(scenario: FibrationScenario) -> _ShapeView:
    return _ShapeView(scenario)


def _run_verify(suite: str, trials: int, seed: int, emit: str) -> int:
    from . import props

    report = _report_skeleton("verify", f"suite:{suite}:trials={trials}:seed={seed}")
    if suite == "core":
        results = props.core_suite(trials, seed)
    elif suite == "blowup":
        results = props.blowup_suite()
    elif suite == "confluence":
        results = props.confluence_suite(trials, seed)
    else:
        raise CliError(f"unknown suite {suite!r}")
    report["suite"] = [{"name": name, "status": PROVED if ok else FAILED,
                        "detail": detail}
                       for name, ok, detail in results]
    report["identities"] = [
        _identity(name, PROVED if ok else FAILED, detail)
        for name, ok, detail in results]
    return _emit(report, emit)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motivekit",
        description="exact correspondence calculus for motive decompositions")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("decompose", "blowup", "realize"):
        p = sub.add_parser(name)
        p.add_argument("--scenario", required=True)
        p.add_argument("--emit", choices=("text", "json"), default="text")
    p = sub.add_parser("infer")
    p.add_argument("--scenario")
    p.add_argument("--rules", action="store_true",
                   help="print the cited rule catalog")
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p = sub.add_parser("verify")
    p.add_argument("--suite", choices=("core", "blowup", "confluence"),
                   required=True)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--emit", choices=("text", "json"), default="text")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    expected_kind = {"decompose": "fibration", "blowup": "blowup",
                     "infer": "inference", "realize": "realization"}
    try:
        if args.command == "verify":
            seed = args.seed if args.seed is not None else _default_seed()
            return _run_verify(args.suite, args.trials, seed, args.emit)
        if args.command == "infer":
            if args.scenario is None and not args.rules:
                raise CliError("infer needs --scenario and/or --rules")
            data, digest = (load_scenario(args.scenario)
                            if args.scenario else (None, "none"))
            if data is not None and data.get("kind") != "inference":
                raise CliError(
                    f"scenario kind {data.get('kind')!r} does not fit 'infer'")
            return _run_infer(data, digest, args.emit, args.rules)
        data, digest = load_scenario(args.scenario)
        if data.get("kind") != expected_kind[args.command]:
            raise CliError(
                f"scenario kind {data.get('kind')!r} does not fit subcommand "
                f"{args.command!r}")
        if args.command == "decompose":
            return _run_decompose(data, digest, args.emit)
        if args.command == "blowup":
            return _run_blowup(data, digest, args.emit)
        return _run_realize(data, digest, args.emit)
    except CliError as exc:
        sys.stderr.write(f"motivekit: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
