"""Composable JSON descriptors for codes: the toolkit's wire format.

A descriptor is a JSON object with exactly one kind key plus an optional
``declared_distance`` sibling.  Leaf kinds construct codes directly
(generator, cyclic, bch, rm, replicated, ag_elliptic); node kinds
combine them (dual, extend, puncture, shorten, direct_sum, star).
Field elements appear as integers mod p for prime fields and as
little-endian coefficient arrays for extension fields.
"""

from __future__ import annotations

from math import gcd

from .agcode import ag_one_point, curve_points
from .code import LinearCode
from .cyclic import (BchSpec, CyclicSpec, bch, bch_defining_set, cyclic_code,
                     dual_defining_set, star_cyclic)
from .gf import Field, field_create, prime_power
from .rmext import rm_code

LEAF_KINDS = frozenset({"generator", "cyclic", "bch", "rm", "replicated", "ag_elliptic"})
NODE_KINDS = frozenset({"dual", "extend", "puncture", "shorten", "direct_sum", "star"})


class DescriptorError(ValueError):
    """Malformed or inconsistent code descriptor."""


def _kind(desc) -> tuple[str, object]:
    if not isinstance(desc, dict):
        raise DescriptorError(f"descriptor must be an object, got {type(desc).__name__}")
    kinds = set(desc) - {"declared_distance"}
    if len(kinds) != 1:
        raise DescriptorError(f"descriptor needs exactly one kind key, got {sorted(kinds)}")
    kind = kinds.pop()
    if kind not in LEAF_KINDS | NODE_KINDS:
        raise DescriptorError(f"unknown descriptor kind {kind!r}")
    return kind, desc[kind]


def _field_from(params) -> Field:
    if not isinstance(params, dict) or "p" not in params:
        raise DescriptorError("field must be an object with 'p' and optional 'e'")
    try:
        return field_create(int(params["p"]), int(params.get("e", 1)))
    except ValueError as exc:
        raise DescriptorError(str(exc)) from exc


def _encode_entry(field: Field, entry) -> int:
    if isinstance(entry, bool):
        raise DescriptorError("boolean is not a field element")
    if isinstance(entry, int):
        if field.e == 1:
            return entry % field.p
        raise DescriptorError("extension-field elements must be coefficient arrays")
    if isinstance(entry, list):
        if len(entry) > field.e or not all(isinstance(c, int) for c in entry):
            raise DescriptorError(f"coefficient array must hold <= {field.e} integers")
        return field.encode(entry)
    raise DescriptorError(f"invalid field element {entry!r}")


def _require(params, keys, kind: str) -> None:
    if not isinstance(params, dict):
        raise DescriptorError(f"{kind} parameters must be an object")
    missing = [k for k in keys if k not in params]
    if missing:
        raise DescriptorError(f"{kind} descriptor missing {missing}")


def realize(desc) -> LinearCode:
    """Build the code a descriptor denotes; raises DescriptorError on any
    structural or type problem."""
    kind, params = _kind(desc)
    try:
        code = _REALIZERS[kind](params)
    except DescriptorError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise DescriptorError(f"in {kind} descriptor: {exc}") from exc
    dd = desc.get("declared_distance")
    if dd is not None:
        if not isinstance(dd, int) or dd < 1:
            raise DescriptorError("declared_distance must be a positive integer")
        code = LinearCode(code.field, code.gen, declared_distance=dd,
                          declared_dual_distance=code.declared_dual_distance)
    return code


def _realize_generator(params) -> LinearCode:
    _require(params, ["field", "rows"], "generator")
    field = _field_from(params["field"])
    rows = params["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DescriptorError("rows must be a list of lists")
    enc_rows = [[_encode_entry(field, x) for x in r] for r in rows]
    n = params.get("n")
    if not enc_rows and n is None:
        raise DescriptorError("empty generator needs an explicit 'n'")
    if enc_rows and n is not None and len(enc_rows[0]) != n:
        raise DescriptorError(f"rows have length {len(enc_rows[0])}, not n = {n}")
    return LinearCode.from_generator(field, enc_rows, n=n)


def _realize_cyclic(params) -> LinearCode:
    _require(params, ["q", "n", "defining_set"], "cyclic")
    spec = CyclicSpec(int(params["q"]), int(params["n"]),
                      frozenset(int(i) for i in params["defining_set"]))
    return cyclic_code(spec)


def _realize_bch(params) -> LinearCode:
    _require(params, ["q", "n", "b", "delta"], "bch")
    return bch(BchSpec(int(params["q"]), int(params["n"]),
                       int(params["b"]), int(params["delta"])))[1]


def _realize_rm(params) -> LinearCode:
    _require(params, ["m", "r"], "rm")
    return rm_code(int(params["m"]), int(params["r"]))


def _realize_replicated(params) -> LinearCode:
    _require(params, ["q", "n"], "replicated")
    p, e = prime_power(int(params["q"]))
    return LinearCode.replicated(field_create(p, e), int(params["n"]))


def _realize_ag(params) -> LinearCode:
    _require(params, ["p", "a", "b", "points", "mult"], "ag_elliptic")
    curve = curve_points(int(params["p"]), int(params["a"]), int(params["b"]))
    points = [tuple(int(v) for v in pt) for pt in params["points"]]
    return ag_one_point(curve, points, int(params["mult"]))


def _realize_dual(params) -> LinearCode:
    return realize(params).dual()


def _realize_extend(params) -> LinearCode:
    return realize(params).extend()


def _realize_puncture(params) -> LinearCode:
    _require(params, ["positions", "code"], "puncture")
    return realize(params["code"]).puncture(int(j) for j in params["positions"])


def _realize_shorten(params) -> LinearCode:
    _require(params, ["positions", "code"], "shorten")
    return realize(params["code"]).shorten(int(j) for j in params["positions"])


def _realize_pair(params, op_name: str) -> tuple[LinearCode, LinearCode]:
    if not isinstance(params, list) or len(params) != 2:
        raise DescriptorError(f"{op_name} takes a list of exactly two descriptors")
    a, b = realize(params[0]), realize(params[1])
    if a.field != b.field:
        raise DescriptorError(f"{op_name}: operands over different fields")
    return a, b


def _realize_direct_sum(params) -> LinearCode:
    a, b = _realize_pair(params, "direct_sum")
    return a.direct_sum(b)


def _realize_star(params) -> LinearCode:
    a, b = _realize_pair(params, "star")
    if a.n != b.n:
        raise DescriptorError("star: operands of different lengths")
    return a.star(b)


_REALIZERS = {
    "generator": _realize_generator,
    "cyclic": _realize_cyclic,
    "bch": _realize_bch,
    "rm": _realize_rm,
    "replicated": _realize_replicated,
    "ag_elliptic": _realize_ag,
    "dual": _realize_dual,
    "extend": _realize_extend,
    "puncture": _realize_puncture,
    "shorten": _realize_shorten,
    "direct_sum": _realize_direct_sum,
    "star": _realize_star,
}


def normalize(code: LinearCode) -> dict:
    """Canonical generator-leaf descriptor of a realized code."""
    field = code.field
    if field.e == 1:
        rows = [list(r) for r in code.gen.rows]
    else:
        rows = [[list(field.decode(x)) for x in r] for r in code.gen.rows]
    desc: dict = {"generator": {"field": {"p": field.p, "e": field.e},
                                "n": code.n, "rows": rows}}
    if code.declared_distance is not None:
        desc["declared_distance"] = code.declared_distance
    return desc


def infer_transitivity(desc) -> str | None:
    """Structural transitivity evidence: replicated and cyclic-by-
    construction descriptors (closed under dual and star) qualify."""
    kind, params = _kind(desc)
    if kind == "replicated":
        return "replicated"
    if kind in ("cyclic", "bch"):
        return "cyclic"
    if kind == "dual":
        return "cyclic" if infer_transitivity(params) else None
    if kind == "star":
        if (isinstance(params, list) and len(params) == 2
                and all(infer_transitivity(x) for x in params)):
            return "cyclic"
        return None
    return None


def cyclic_spec_of(desc) -> CyclicSpec | None:
    """Defining-set form of a structurally cyclic descriptor, if any."""
    kind, params = _kind(desc)
    if kind == "cyclic":
        return CyclicSpec(int(params["q"]), int(params["n"]),
                          frozenset(int(i) for i in params["defining_set"]))
    if kind == "bch":
        return bch_defining_set(BchSpec(int(params["q"]), int(params["n"]),
                                        int(params["b"]), int(params["delta"])))
    if kind == "replicated":
        q, n = int(params["q"]), int(params["n"])
        if gcd(n, q) != 1:
            return None
        return CyclicSpec(q, n, frozenset(range(1, n)))
    if kind == "dual":
        inner = cyclic_spec_of(params)
        return dual_defining_set(inner) if inner is not None else None
    if kind == "star":
        if not isinstance(params, list) or len(params) != 2:
            return None
        a, b = cyclic_spec_of(params[0]), cyclic_spec_of(params[1])
        if a is None or b is None or (a.q, a.n) != (b.q, b.n):
            return None
        return star_cyclic(a, b)
    return None
