"""JSON documents for algebras and truncated deformations.

An algebra document::

    {"dim": 2, "parity": [0, 1],
     "mul": [{"i": 0, "j": 0, "k": 0, "c": "1"}, ...],
     "alpha": [["1", "0"], ["0", "-1"]],
     "form": [[...]], "maps": {"D": [[...]]}, "weight": "1/2", "xi": "7/3"}

``alpha`` defaults to the identity; ``form``, ``maps``, ``weight`` and ``xi``
are optional.  A deformation document is ``{"order": N, "terms": [[entries],
...]}`` with one sparse entry list per term G_1..G_N (``dim`` optional).
Rational literals are strings ``"p"`` or ``"p/q"``; plain integers are
accepted, floating-point tokens never are.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import exactlin as el
from .errors import InputError
from .superalgebra import BilinearForm, SuperAlgebra

ALGEBRA_FIELDS = {"dim", "parity", "mul", "alpha", "form", "maps", "weight", "xi"}
DEFORMATION_FIELDS = {"dim", "order", "terms"}


class DocumentError(InputError):
    """Parse or validation failure, located by field path or line/column."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


@dataclass
class AlgebraDocument:
    algebra: SuperAlgebra
    form: Optional[np.ndarray] = None
    maps: dict = field(default_factory=dict)
    weight: Optional[el.Scalar] = None
    xi: Optional[el.Scalar] = None

    def bilinear_form(self) -> Optional[BilinearForm]:
        return None if self.form is None else BilinearForm(self.algebra.space, self.form)

    def n_entries(self) -> int:
        return int(np.count_nonzero(self.algebra.mul != 0))


@dataclass
class DeformationDocument:
    order: int
    terms: list  # one {(i, j, k): Scalar} dict per term
    dim: Optional[int] = None

    def tensors(self, dim: int) -> list[np.ndarray]:
        if self.dim is not None and self.dim != dim:
            raise DocumentError("dim", f"deformation has dim {self.dim}, algebra has dim {dim}")
        out = []
        for n, entries in enumerate(self.terms):
            t = el.zeros(dim, dim, dim)
            for (i, j, k), c in entries.items():
                for name, v in zip("ijk", (i, j, k)):
                    if v >= dim:
                        raise DocumentError(f"terms[{n}]", f"index {name}={v} out of range for dim {dim}")
                t[i, j, k] = c
            out.append(t)
        return out


Document = Union[AlgebraDocument, DeformationDocument]


# -- parsing ----------------------------------------------------------------

def _rational(value, where: str):
    if isinstance(value, float):
        raise DocumentError(where, f"floating-point literal {value!r}; write rationals as strings like \"3/2\"")
    try:
        return el.scalar(value)
    except InputError as exc:
        raise DocumentError(where, str(exc)) from None


def _int(value, where: str, lo: int = 0, hi: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(where, f"expected an integer, got {value!r}")
    if value < lo or (hi is not None and value >= hi):
        bound = f"[{lo}, {hi})" if hi is not None else f">= {lo}"
        raise DocumentError(where, f"value {value} out of range {bound}")
    return value


def _matrix(value, where: str, dim: int) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        raise DocumentError(where, f"expected a {dim}x{dim} matrix")
    m = el.zeros(dim, dim)
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dim:
            raise DocumentError(f"{where}[{r}]", f"expected a row of length {dim}")
        for c, x in enumerate(row):
            m[r, c] = _rational(x, f"{where}[{r}][{c}]")
    return m


def _entries(value, where: str, dim: Optional[int]) -> dict:
    if not isinstance(value, list):
        raise DocumentError(where, "expected a list of {i, j, k, c} entries")
    out = {}
    for n, e in enumerate(value):
        at = f"{where}[{n}]"
        if not isinstance(e, dict) or set(e) != {"i", "j", "k", "c"}:
            raise DocumentError(at, "entry must have exactly the keys i, j, k, c")
        key = tuple(_int(e[name], f"{at}.{name}", 0, dim) for name in "ijk")
        if key in out:
            raise DocumentError(at, f"duplicate entry for (i, j, k) = {key}")
        out[key] = _rational(e["c"], f"{at}.c")
    return out


def _load(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(obj, dict):
        raise DocumentError("document", "top level must be an object")
    return obj


def _reorder_hint(parity: list) -> str:
    order = sorted(range(len(parity)), key=lambda i: parity[i])
    return f"parities must list even basis vectors first; reorder the basis as {order}"


def algebra_from_dict(obj: dict) -> AlgebraDocument:
    unknown = set(obj) - ALGEBRA_FIELDS
    if unknown:
        raise DocumentError(sorted(unknown)[0], "unknown field")
    for key in ("dim", "parity", "mul"):
        if key not in obj:
            raise DocumentError(key, "missing required field")
    dim = _int(obj["dim"], "dim")
    parity = obj["parity"]
    if not isinstance(parity, list) or len(parity) != dim:
        raise DocumentError("parity", f"expected a list of {dim} parities")
    parity = [_int(p, f"parity[{n}]", 0, 2) for n, p in enumerate(parity)]
    if parity != sorted(parity):
        raise DocumentError("parity", _reorder_hint(parity))
    entries = _entries(obj["mul"], "mul", dim)
    alpha = _matrix(obj["alpha"], "alpha", dim) if "alpha" in obj else None
    try:
        algebra = SuperAlgebra.from_entries(parity, entries, alpha)
    except InputError as exc:
        raise DocumentError("mul" if "structure constant" in str(exc) else "alpha", str(exc)) from None
    form = _matrix(obj["form"], "form", dim) if obj.get("form") is not None else None
    maps_obj = obj.get("maps", {}) or {}
    if not isinstance(maps_obj, dict):
        raise DocumentError("maps", "expected an object of named matrices")
    maps = {name: _matrix(m, f"maps.{name}", dim) for name, m in maps_obj.items()}
    weight = _rational(obj["weight"], "weight") if obj.get("weight") is not None else None
    xi = _rational(obj["xi"], "xi") if obj.get("xi") is not None else None
    return AlgebraDocument(algebra, form, maps, weight, xi)


def deformation_from_dict(obj: dict) -> DeformationDocument:
    unknown = set(obj) - DEFORMATION_FIELDS
    if unknown:
        raise DocumentError(sorted(unknown)[0], "unknown field")
    for key in ("order", "terms"):
        if key not in obj:
            raise DocumentError(key, "missing required field")
    order = _int(obj["order"], "order", 1)
    dim = _int(obj["dim"], "dim") if "dim" in obj else None
    terms = obj["terms"]
    if not isinstance(terms, list) or len(terms) != order:
        raise DocumentError("terms", f"expected {order} terms (one per order)")
    return DeformationDocument(order, [_entries(t, f"terms[{n}]", dim) for n, t in enumerate(terms)], dim)


def parse(text: str) -> Document:
    """Parse either document kind; deformation documents carry ``terms``."""
    obj = _load(text)
    return deformation_from_dict(obj) if "terms" in obj else algebra_from_dict(obj)


def parse_algebra(text: str) -> AlgebraDocument:
    doc = parse(text)
    if not isinstance(doc, AlgebraDocument):
        raise DocumentError("document", "expected an algebra document")
    return doc


def parse_deformation(text: str) -> DeformationDocument:
    doc = parse(text)
    if not isinstance(doc, DeformationDocument):
        raise DocumentError("document", "expected a deformation document")
    return doc


# -- emitting ---------------------------------------------------------------

def _lit(x) -> str:
    return str(el.scalar(x))


def _matrix_out(m) -> list:
    return [[_lit(x) for x in row] for row in np.asarray(m)]


def _entries_out(t) -> list:
    return [
        {"i": int(i), "j": int(j), "k": int(k), "c": _lit(t[i, j, k])}
        for i, j, k in np.argwhere(np.asarray(t) != 0)
    ]


def algebra_to_dict(doc: AlgebraDocument) -> dict:
    a = doc.algebra
    obj = {"dim": a.dim, "parity": list(a.parities), "mul": _entries_out(a.mul), "alpha": _matrix_out(a.alpha)}
    if doc.form is not None:
        obj["form"] = _matrix_out(doc.form)
    if doc.maps:
        obj["maps"] = {name: _matrix_out(m) for name, m in doc.maps.items()}
    if doc.weight is not None:
        obj["weight"] = _lit(doc.weight)
    if doc.xi is not None:
        obj["xi"] = _lit(doc.xi)
    return obj


def deformation_to_dict(d) -> dict:
    """From a TruncatedDeformation."""
    return {
        "dim": d.base.dim,
        "order": d.order,
        "terms": [_entries_out(g.coeffs) for g in d.terms],
    }


def emit(obj: dict) -> str:
    """One top-level field per line, entries and matrix rows kept compact."""
    lines = []
    for key, value in obj.items():
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            inner = ",\n    ".join(json.dumps(v) for v in value)
            lines.append(f"  {json.dumps(key)}: [\n    {inner}\n  ]")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def emit_algebra(doc_or_algebra) -> str:
    doc = doc_or_algebra if isinstance(doc_or_algebra, AlgebraDocument) else AlgebraDocument(doc_or_algebra)
    return emit(algebra_to_dict(doc))


def same_document(x: AlgebraDocument, y: AlgebraDocument) -> bool:
    """Exact equality of every field."""
    return algebra_to_dict(x) == algebra_to_dict(y)
