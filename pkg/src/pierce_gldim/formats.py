"""JSON presentation files.

Two presentation kinds share one envelope::

    {"schema": "pierce-gldim/algebra/1", "name": "...", "field": "Q" | "Fp:<p>",
     "quiver": {"vertices": [...], "arrows": [[label, source, target], ...],
                "relations": [[[coeff, [label, ...]], ...], ...], "max_len": n}}

    {"schema": ..., "field": "Q",
     "structure_constants": {"dim": n, "table": [[i, j, [[k, coeff], ...]], ...],
                             "idempotents": [[...], ...], "vertex_names": [...],
                             "basis_names": [...]}}

Paths are label lists written right to left ("x y" means y first).  Coefficients
are integers or strings like "-3/2".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraError, PresentedAlgebra, Quiver, Relation, build_quotient_basis, from_structure_constants
from .linalg import Field, field_from_name

SCHEMA = "pierce-gldim/algebra/1"


class FormatError(ValueError):
    """Malformed presentation file; the message starts with the offending field path."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _coeff_out(c):
    c = Fraction(str(c)) if not isinstance(c, Fraction) else c
    return c.numerator if c.denominator == 1 else str(c)


def _coeff_in(c, where: str):
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise FormatError(where, f"coefficient must be an integer or a fraction string, not {c!r}")
    try:
        return Fraction(c) if isinstance(c, str) else c
    except ValueError:
        raise FormatError(where, f"cannot parse coefficient {c!r}") from None


@dataclass
class AlgebraFile:
    field: str = "Q"
    quiver: dict | None = None
    structure_constants: dict | None = None
    name: str | None = None
    extra: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"schema": SCHEMA}
        if self.name is not None:
            out["name"] = self.name
        out["field"] = self.field
        if self.quiver is not None:
            out["quiver"] = self.quiver
        if self.structure_constants is not None:
            out["structure_constants"] = self.structure_constants
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def get_field(self) -> Field:
        return field_from_name(self.field)

    def to_algebra(self) -> PresentedAlgebra:
        fld = self.get_field()
        if self.quiver is not None:
            q = self.quiver
            quiver = Quiver(q["vertices"], [tuple(a) for a in q["arrows"]])
            rels = [Relation(tuple((fld(c), tuple(p)) for c, p in r)) for r in q.get("relations", [])]
            try:
                return build_quotient_basis(quiver, rels, q["max_len"], fld)
            except AlgebraError as exc:
                raise FormatError("quiver", str(exc)) from exc
        sc = self.structure_constants
        table = {}
        for i, j, terms in sc["table"]:
            table[(i, j)] = [(k, c) for k, c in terms]
        try:
            return from_structure_constants(fld, sc["dim"], table, idempotents=sc.get("idempotents"),
                                            vertex_names=sc.get("vertex_names"),
                                            basis_names=sc.get("basis_names"))
        except AlgebraError as exc:
            raise FormatError("structure_constants", str(exc)) from exc


def _require(d: dict, key: str, where: str, kind):
    if key not in d:
        raise FormatError(where, f"missing field {key!r}")
    val = d[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise FormatError(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


def parse(data: dict) -> AlgebraFile:
    if not isinstance(data, dict):
        raise FormatError("$", "top level must be an object")
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise FormatError("schema", f"unsupported schema {schema!r}; expected {SCHEMA!r}")
    fname = data.get("field", "Q")
    try:
        fld = field_from_name(fname)
    except (ValueError, TypeError, AttributeError) as exc:
        raise FormatError("field", str(exc)) from None
    has_q, has_s = "quiver" in data, "structure_constants" in data
    if has_q == has_s:
        raise FormatError("$", "give exactly one of 'quiver' or 'structure_constants'")
    known = {"schema", "name", "field", "quiver", "structure_constants"}
    extra = {k: v for k, v in data.items() if k not in known}
    name = data.get("name")
    if has_q:
        q = data["quiver"]
        if not isinstance(q, dict):
            raise FormatError("quiver", "expected an object")
        verts = _require(q, "vertices", "quiver", list)
        for i, v in enumerate(verts):
            if not isinstance(v, str):
                raise FormatError(f"quiver.vertices[{i}]", "vertex names must be strings")
        arrows = _require(q, "arrows", "quiver", list)
        clean_arrows = []
        for i, a in enumerate(arrows):
            if not (isinstance(a, list) and len(a) == 3 and all(isinstance(x, str) for x in a)):
                raise FormatError(f"quiver.arrows[{i}]", "expected [label, source, target]")
            clean_arrows.append(list(a))
        rels = q.get("relations", [])
        if not isinstance(rels, list):
            raise FormatError("quiver.relations", "expected a list")
        clean_rels = []
        for i, r in enumerate(rels):
            if not isinstance(r, list) or not r:
                raise FormatError(f"quiver.relations[{i}]", "expected a nonempty list of [coeff, path]")
            terms = []
            for j, t in enumerate(r):
                where = f"quiver.relations[{i}][{j}]"
                if not (isinstance(t, list) and len(t) == 2 and isinstance(t[1], list)):
                    raise FormatError(where, "expected [coeff, [label, ...]]")
                c = _coeff_in(t[0], where)
                fld(c)
                if not t[1]:
                    raise FormatError(where, "paths must be nonempty")
                terms.append([_coeff_out(c), list(t[1])])
            clean_rels.append(terms)
        max_len = _require(q, "max_len", "quiver", int)
        if max_len < 1:
            raise FormatError("quiver.max_len", "must be >= 1")
        try:
            quiver = Quiver(verts, [tuple(a) for a in clean_arrows])
            for i, r in enumerate(clean_rels):
                Relation(tuple((c, tuple(p)) for c, p in r)).validate(quiver)
        except AlgebraError as exc:
            raise FormatError("quiver", str(exc)) from None
        body = {"vertices": list(verts), "arrows": clean_arrows, "relations": clean_rels, "max_len": max_len}
        return AlgebraFile(fname, quiver=body, name=name, extra=extra)
    s = data["structure_constants"]
    if not isinstance(s, dict):
        raise FormatError("structure_constants", "expected an object")
    dim = _require(s, "dim", "structure_constants", int)
    table = _require(s, "table", "structure_constants", list)
    clean = []
    for n, entry in enumerate(table):
        where = f"structure_constants.table[{n}]"
        if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[2], list)):
            raise FormatError(where, "expected [i, j, [[k, coeff], ...]]")
        i, j, terms = entry
        for x in (i, j):
            if not isinstance(x, int) or not 0 <= x < dim:
                raise FormatError(where, f"basis index {x!r} out of range")
        cterms = []
        for m, t in enumerate(terms):
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], int) and 0 <= t[0] < dim):
                raise FormatError(f"{where}[{m}]", "expected [k, coeff] with k in range")
            cterms.append([t[0], _coeff_out(_coeff_in(t[1], f"{where}[{m}]"))])
        clean.append([i, j, cterms])
    body = {"dim": dim, "table": clean}
    if "idempotents" in s:
        idem = s["idempotents"]
        if not isinstance(idem, list):
            raise FormatError("structure_constants.idempotents", "expected a list of coordinate vectors")
        rows = []
        for n, v in enumerate(idem):
            if not (isinstance(v, list) and len(v) == dim):
                raise FormatError(f"structure_constants.idempotents[{n}]", f"expected {dim} coordinates")
            rows.append([_coeff_out(_coeff_in(c, f"structure_constants.idempotents[{n}]")) for c in v])
        body["idempotents"] = rows
    for key in ("vertex_names", "basis_names"):
        if key in s:
            body[key] = list(s[key])
    return AlgebraFile(fname, structure_constants=body, name=name, extra=extra)


def loads(text: str) -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}", exc.msg) from None
    return parse(data)


def load(path) -> AlgebraFile:
    return loads(Path(path).read_text())


def load_algebra(path) -> PresentedAlgebra:
    return load(path).to_algebra()


def from_algebra(a: PresentedAlgebra, name: str | None = None) -> AlgebraFile:
    """Presentation file for an algebra: its quiver if it has one, else its multiplication table."""
    if a.origin == "quiver" and "quiver" in a.meta and not a.meta.get("opposite"):
        q = a.meta["quiver"]
        rels = [[[_coeff_out(c), list(p)] for c, p in r.terms] for r in a.meta["relations"]]
        body = {
            "vertices": list(q.vertices),
            "arrows": [list(x) for x in q.arrows],
            "relations": rels,
            "max_len": a.meta["max_len"],
        }
        return AlgebraFile(a.field.name, quiver=body, name=name)
    table = []
    for (i, j), terms in sorted(a.table.items()):
        if terms:
            table.append([i, j, [[k, _coeff_out(c)] for k, c in terms]])
    idem = []
    for v in range(len(a.vertices)):
        idem.append([_coeff_out(c) for c in a.idempotent(v)])
    body = {
        "dim": a.dim,
        "table": table,
        "idempotents": idem,
        "vertex_names": [str(v) for v in a.vertices],
        "basis_names": [b.name for b in a.basis],
    }
    return AlgebraFile(a.field.name, structure_constants=body, name=name)
