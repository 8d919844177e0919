"""JSON reports for the command line, plus a plain-text rendering.

Every integer that can grow without bound is written as a decimal string.
The JSON layout is described by ``schema/report.schema.json``.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from . import dsl
from .errors import NotDecomposableError
from .families import (
    enumerate_family,
    family_for_class,
    fourth_root_congruent,
    isqrt_exact,
    member,
    witness_family,
)
from .geometry import geometry_note, normal_form
from .model import ManifoldExpression
from .witness import (
    WitnessPackage,
    build_witness,
    decide_exists_infinite,
    factor_rows,
    four_forms,
    recipe_to_json,
    validate_recipe,
)

SCHEMA_VERSION = "1"


def load_schema() -> dict:
    text = resources.files("mapdeg").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _base(command: str, text: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "input": text}


def error_report(command: str, text: str, err: dsl.ParseError) -> dict:
    rep = _base(command, text)
    rep["error"] = err.to_dict()
    return rep


def _family_json(cls, max_enum: int | None) -> tuple[dict | None, list | None]:
    if cls.is_finite:
        return None, None
    fam = family_for_class(cls)
    sample = [str(v) for v in enumerate_family(fam, max_enum)] if max_enum else None
    return fam.to_json(), sample


def factors_json(m: ManifoldExpression, max_enum: int | None = None) -> list[dict]:
    rows = []
    for row in factor_rows(m):
        c = row.degree_class
        params = {}
        if c.order is not None:
            params["order"] = str(c.order)
        if c.alpha is not None:
            params["alpha"] = str(c.alpha)
        fam, sample = _family_json(c, max_enum)
        entry = {
            "piece": str(row.descriptor),
            "variant": type(row.descriptor).__name__,
            "geometry": row.geometry.value,
            "geometry_note": geometry_note(row.descriptor),
            "degree_class": c.kind.value,
            "parameters": params,
            "finite_reason": c.reason.value if c.reason else None,
            "heuristic": c.heuristic,
            "family": fam,
        }
        if sample is not None:
            entry["family_sample"] = sample
        rows.append(entry)
    return rows


def decision_json(m: ManifoldExpression) -> dict:
    v = decide_exists_infinite(m)
    return {
        "exists_infinite": v.exists_infinite,
        "self_infinite": v.self_infinite,
        "blocking_factors": [
            {"piece": str(r.descriptor), "reason": r.degree_class.reason.value}
            for r in v.blocking_factors
        ],
    }


def _forms_json(ff) -> dict:
    return {
        "d": str(ff.d),
        "c1": [{"order": str(o), "C1": str(c)} for o, c in ff.c1_list],
        "c2": [{"alpha": str(a), "C2": str(c)} for a, c in ff.c2_list],
        "c3": None if ff.c3 is None else str(ff.c3),
        "c4": None if ff.c4 is None else str(ff.c4),
    }


def recipe_digest(recipe_json: dict) -> str:
    blob = json.dumps(recipe_json, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def witness_json(pkg: WitnessPackage, max_enum: int | None = None) -> dict:
    recipe = recipe_to_json(pkg.recipe)
    fam = witness_family(normal_form(pkg.source))
    out = {
        "domain": str(pkg.domain),
        "domain_description": pkg.domain_description,
        "base": str(pkg.base),
        "family": fam.to_json(),
        "samples": [{"l": str(l), "degree": str(d)} for l, d in pkg.samples],
        "four_forms": [_forms_json(ff) for ff in pkg.four_forms],
        "recipe_l": str(pkg.recipe_l),
        "recipe": recipe,
        "recipe_valid": validate_recipe(pkg.recipe).ok,
        "recipe_digest": recipe_digest(recipe),
    }
    if max_enum:
        out["family_sample"] = [str(v) for v in enumerate_family(fam, max_enum)]
    return out


def classify_report(text: str, m: ManifoldExpression, max_enum=None, command="classify") -> dict:
    rep = _base(command, text)
    rep["normalized"] = str(m.normalize())
    rep["factors"] = factors_json(m, max_enum)
    return rep


def decide_report(text: str, m: ManifoldExpression, max_enum=None, command="decide") -> dict:
    rep = classify_report(text, m, max_enum, command)
    rep["decision"] = decision_json(m)
    return rep


def witness_report(text: str, m: ManifoldExpression, l_values, max_enum=None) -> dict:
    """Raises NoWitnessError for blocked targets; the caller decides the exit code."""
    rep = decide_report(text, m, max_enum, "witness")
    rep["witness"] = witness_json(build_witness(m, l_values), max_enum)
    return rep


def blocked_report(text: str, m: ManifoldExpression) -> dict:
    rep = decide_report(text, m, None, "witness")
    rep["witness"] = None
    return rep


def check_report(text: str, m: ManifoldExpression, degree: int, max_enum=None) -> dict:
    rep = decide_report(text, m, max_enum, "check")
    per_factor = []
    for row in factor_rows(m):
        if row.degree_class.is_finite:
            per_factor.append({"piece": str(row.descriptor), "family": None,
                               "member": False, "l": None, "root": None})
            continue
        fam = family_for_class(row.degree_class)
        got = member(fam, degree)
        per_factor.append({
            "piece": str(row.descriptor),
            "family": fam.to_json(),
            "member": got.ok,
            "l": None if got.l is None else str(got.l),
            "root": None if got.root is None else str(got.root),
        })

    nf = normal_form(m)
    holds = {
        "C1": None if not nf.orders else all((degree - 1) % o == 0 for o in nf.orders),
        "C2": None if not nf.alphas else all((degree - 1) % a == 0 for a in nf.alphas),
        "C3": (r := isqrt_exact(degree)) is not None and r % 2 == 1,
        "C4": fourth_root_congruent(degree, 12) is not None,
    }
    try:
        ff = four_forms(degree, nf)
        decomp = {"ok": True, "failing_form": None, "message": None, "forms": _forms_json(ff)}
    except NotDecomposableError as exc:
        decomp = {"ok": False, "failing_form": exc.form, "message": str(exc), "forms": None}

    witness_member = None
    if not nf.finite_list:
        got = member(witness_family(nf), degree)
        witness_member = {"member": got.ok, "l": None if got.l is None else str(got.l)}

    rep["check"] = {
        "degree": str(degree),
        "factors": per_factor,
        "forms_hold": holds,
        "four_forms": decomp,
        "witness_member": witness_member,
    }
    return rep


def batch_summary(reports: list[dict]) -> dict:
    true = sum(1 for r in reports if r.get("decision", {}).get("exists_infinite") is True)
    false = sum(1 for r in reports if r.get("decision", {}).get("exists_infinite") is False)
    errors = sum(1 for r in reports if "error" in r)
    return {
        "total": len(reports),
        "exists_infinite_true": true,
        "exists_infinite_false": false,
        "errors": errors,
    }


# ---------------------------------------------------------------------------
# text rendering


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _family_text(v: dict) -> str:
    params = ", ".join(
        f"{k}={_family_text(p) if isinstance(p, dict) else p}" for k, p in v["parameters"].items()
    )
    return f"{v['kind']}({params})"


def _lines(obj, indent: int):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) and set(v) == {"kind", "parameters"}:
                yield f"{pad}{k}: {_family_text(v)}"
            elif isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _lines(v, indent + 1)
            elif isinstance(v, (dict, list)):
                yield f"{pad}{k}: (none)"
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                sub = list(_lines(item, indent + 1))
                if sub:
                    sub[0] = pad + "- " + sub[0].lstrip()
                yield from sub
            else:
                yield f"{pad}- {_scalar(item)}"


def to_text(report: dict) -> str:
    """Indented plain-text form carrying every field of the JSON report."""
    return "\n".join(_lines(report, 0))


def to_json(report: dict, compact: bool = False) -> str:
    if compact:
        return json.dumps(report, ensure_ascii=False, separators=(",", ":"))
    return json.dumps(report, ensure_ascii=False, indent=2)
