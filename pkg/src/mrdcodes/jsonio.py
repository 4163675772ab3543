"""JSON wire formats for fields, maps, specs and codes.

Field elements appear either as coordinate lists (ascending powers of y) or
as "g^k" strings; both are accepted wherever an element is expected.
"""

from __future__ import annotations

from .codes import Code, CodeSpec
from .errors import PreconditionError
from .gf import Field
from .linpoly import AdditiveMap, LinPoly


def field_to_json(F: Field) -> dict:
    return {
        "p": F.p,
        "lambda": F.lam,
        "n": F.n,
        "modulus": list(F.modulus),
        "generator": list(F.digits(F.generator)),
    }


def field_from_json(obj, *, dlog_budget=None) -> Field:
    try:
        p = int(obj["p"])
        lam = int(obj.get("lambda", obj.get("lam", 1)))
        n = int(obj["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"bad field record: {exc}") from exc
    modulus = obj.get("modulus")
    return Field(p, lam, n, modulus, dlog_budget=dlog_budget)


def parse_field_flag(text: str, *, dlog_budget=None) -> Field:
    """p,lambda,n with an optional packed-integer modulus as 4th component."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) not in (3, 4):
        raise PreconditionError("--field needs p,lambda,n[,modulus-int]")
    p, lam, n = (int(x) for x in parts[:3])
    modulus = None
    if len(parts) == 4:
        packed = int(parts[3])
        digits = []
        while packed:
            digits.append(packed % p)
            packed //= p
        modulus = digits
    return Field(p, lam, n, modulus, dlog_budget=dlog_budget)


def element_to_json(F: Field, x: int):
    return list(F.digits(x))


def linpoly_to_json(f: LinPoly) -> dict:
    return {"coeffs": [element_to_json(f.field, c) for c in f.coeffs]}


def linpoly_from_json(F: Field, obj) -> LinPoly:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise PreconditionError("a linearized polynomial needs a 'coeffs' list")
    return LinPoly(F, [F.parse_element(c) for c in obj["coeffs"]])


def additive_to_json(m: AdditiveMap) -> dict:
    return {"pcoeffs": [element_to_json(m.field, c) for c in m.pcoeffs]}


def coefficient_map_from_json(F: Field, obj) -> AdditiveMap:
    """Accept {"coeffs": ...}, {"pcoeffs": ...}, "x", 0/None for L1/L2 slots."""
    if obj in (None, 0, "0"):
        return AdditiveMap.zero(F)
    if obj == "x":
        return AdditiveMap.identity(F)
    if isinstance(obj, dict) and "pcoeffs" in obj:
        return AdditiveMap(F, [F.parse_element(c) for c in obj["pcoeffs"]])
    if isinstance(obj, dict) and "coeffs" in obj:
        return linpoly_from_json(F, obj).to_additive()
    raise PreconditionError(f"cannot parse coefficient map {obj!r}")


def codespec_from_json(obj, *, field=None, dlog_budget=None) -> CodeSpec:
    if field is None:
        if "field" not in obj:
            raise PreconditionError("spec needs a 'field' record (or --field)")
        field = field_from_json(obj["field"], dlog_budget=dlog_budget)
    return CodeSpec(
        field,
        int(obj["k"]),
        int(obj.get("s", 1)),
        coefficient_map_from_json(field, obj.get("L1", "x")),
        coefficient_map_from_json(field, obj.get("L2")),
        family=obj.get("family", "CUSTOM"),
    )


def codespec_to_json(spec: CodeSpec) -> dict:
    return {
        "field": field_to_json(spec.field),
        "k": spec.k,
        "s": spec.s,
        "L1": additive_to_json(spec.L1),
        "L2": additive_to_json(spec.L2),
        "family": spec.family,
    }


def code_to_json(code: Code, *, include_basis=True) -> dict:
    out = {
        "dimension_fp": code.dim,
        "size": code.size,
        "fq_linear": code.is_fq_linear(),
    }
    if code.spec is not None:
        out["family"] = code.spec.family
        out["k"] = code.spec.k
        out["s"] = code.spec.s
    if include_basis:
        out["basis"] = [linpoly_to_json(b) for b in code.basis]
    return out
