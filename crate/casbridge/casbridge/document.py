"""Schema checks and canonical form for repdata documents."""

import json
from importlib import resources

import jsonschema


def _schema(name):
    text = resources.files("casbridge").joinpath("schema", name).read_text()
    return json.loads(text)


def validate(doc, kind="repdata"):
    """Raise jsonschema.ValidationError if `doc` violates the schema."""
    jsonschema.validate(doc, _schema(f"{kind}.schema.json"))


def _decomp(parts):
    return sorted(parts, key=lambda p: p["rep"])


def canonicalize(doc):
    """Sort tables so that equal data gives equal documents.

    Representation lists keep their order; it is part of the data.
    """
    out = dict(doc)
    for key in ("tensor_real", "tensor_complex"):
        if key in out:
            out[key] = sorted(
                ({**e, "decomp": _decomp(e.get("decomp", []))} for e in out[key]),
                key=lambda e: (e["left"], e["right"]),
            )
    for key in ("lambda_real", "lambda_complex"):
        if key in out:
            out[key] = sorted(
                ({**e, "decomp": _decomp(e.get("decomp", []))} for e in out[key]),
                key=lambda e: (e["left"], e["p"]),
            )
    if "restrictions" in out:
        out["restrictions"] = [
            {"rank": r["rank"], "forms": dict(sorted(r["forms"].items()))}
            for r in out["restrictions"]
        ]
    return out


def dump(doc):
    return json.dumps(canonicalize(doc), indent=1) + "\n"
