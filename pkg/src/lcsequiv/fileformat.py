"""JSON file formats for systems, witnesses, canonical forms and reports.

Matrix entries are exact: JSON integers or strings holding an integer or
``p/q``. Decimal literals are rejected unless a denominator bound is given,
in which case they are rationalized with :meth:`Fraction.limit_denominator`.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .controllability import ControlSystem
from .decomposition import CanonicalForm, FeedbackWitness
from .equivalence import EquivalenceVerdict, SystemInvariants
from .exactmath import RationalMatrix, RationalPoly

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_DECIMAL = re.compile(r"^\s*[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\s*$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = " (line %d, column %d)" % (line, column) if line is not None else ""
        super().__init__(message + where)


class DimensionError(ValueError):
    pass


def _locate(text: str, token, after: str | None) -> tuple[int | None, int | None]:
    needle = json.dumps(token)
    start = 0
    if after is not None:
        k = text.find(json.dumps(after))
        start = k if k >= 0 else 0
    pos = text.find(needle, start)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_rational(token, rationalize: int | None = None) -> Fraction:
    if isinstance(token, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, float):
        if rationalize:
            return Fraction(repr(token)).limit_denominator(rationalize)
        raise ValueError("decimal %r needs --rationalize" % token)
    if not isinstance(token, str):
        raise ValueError("not a rational: %r" % (token,))
    m = _RATIONAL.match(token)
    if m:
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ValueError("zero denominator in %r" % token)
        return Fraction(num, den)
    if rationalize and _DECIMAL.match(token):
        return Fraction(token.strip()).limit_denominator(rationalize)
    raise ValueError("not a rational: %r" % token)


class _Reader:
    def __init__(self, text: str, rationalize: int | None):
        self.text = text
        self.rationalize = rationalize
        try:
            self.doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid JSON: %s" % exc.msg, exc.lineno, exc.colno) from exc
        if not isinstance(self.doc, dict):
            raise ParseError("top level must be an object", 1, 1)

    def count(self, key: str, doc=None) -> int:
        doc = self.doc if doc is None else doc
        if key not in doc:
            raise ParseError("missing field %r" % key)
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ParseError("field %r must be a nonnegative integer" % key, *_locate(self.text, key, None))
        return v

    def matrix(self, key: str, rows: int, cols: int, doc=None) -> RationalMatrix:
        doc = self.doc if doc is None else doc
        if key not in doc:
            raise ParseError("missing field %r" % key)
        raw = doc[key]
        if not isinstance(raw, list):
            raise ParseError("field %r must be an array" % key, *_locate(self.text, key, None))
        if raw and all(isinstance(r, list) for r in raw):
            if len(raw) != rows or any(len(r) != cols for r in raw):
                shape = "%dx%s" % (len(raw), "/".join(sorted({str(len(r)) for r in raw})))
                raise DimensionError("%s is %s, expected %dx%d" % (key, shape, rows, cols))
            flat = [x for r in raw for x in r]
        else:
            flat = raw
            if len(flat) != rows * cols and not (rows * cols == 0 and flat == []):
                raise DimensionError("%s has %d entries, expected %d" % (key, len(flat), rows * cols))
            if rows * cols == 0:
                flat = []
        values = []
        for tok in flat:
            try:
                values.append(parse_rational(tok, self.rationalize))
            except ValueError as exc:
                raise ParseError("%s: %s" % (key, exc), *_locate(self.text, tok, key)) from exc
        return RationalMatrix(rows, cols, values)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def loads_system(text: str, rationalize: int | None = None) -> ControlSystem:
    r = _Reader(text, rationalize)
    n = r.count("n")
    m = r.count("m") if "m" in r.doc else 0
    if n < 1:
        raise DimensionError("n must be at least 1")
    A = r.matrix("A", n, n)
    if "B" in r.doc:
        B = r.matrix("B", n, m)
    elif m == 0:
        B = RationalMatrix(n, 0)
    else:
        raise ParseError("missing field 'B' (only allowed when m = 0)")
    return ControlSystem(A, B)


def load_system(path: str, rationalize: int | None = None) -> ControlSystem:
    return loads_system(_read(path), rationalize)


def loads_witness(text: str, rationalize: int | None = None) -> FeedbackWitness:
    """Read a witness file, or the ``witness`` member of a canonical-form file."""
    r = _Reader(text, rationalize)
    doc = r.doc.get("witness", r.doc)
    if not isinstance(doc, dict):
        raise ParseError("'witness' must be an object")
    n = r.count("n", doc) if "n" in doc else r.count("n")
    m = r.count("m", doc) if "m" in doc else r.count("m")
    return FeedbackWitness(r.matrix("O", n, n, doc), r.matrix("Q", m, m, doc), r.matrix("L", m, n, doc))


def load_witness(path: str, rationalize: int | None = None) -> FeedbackWitness:
    return loads_witness(_read(path), rationalize)


# -- writers ---------------------------------------------------------------

def matrix_json(M: RationalMatrix) -> list[list[str]]:
    return M.to_strings()


def poly_json(p: RationalPoly) -> list[str]:
    """Ascending coefficients as rational strings."""
    return p.to_strings()


def _format(value, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ["%s%s: %s" % (pad, json.dumps(k), _format(v, indent + 1)) for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value):
        items = [pad + _format(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(value)


def dumps(doc) -> str:
    """Deterministic JSON with arrays of scalars kept on one line."""
    return _format(doc, 0) + "\n"


def system_doc(sys: ControlSystem) -> dict:
    return {"n": sys.n, "m": sys.m, "A": matrix_json(sys.A), "B": matrix_json(sys.B)}


def witness_doc(w: FeedbackWitness) -> dict:
    return {"n": w.n, "m": w.m, "O": matrix_json(w.O), "Q": matrix_json(w.Q), "L": matrix_json(w.L)}


def canonical_doc(form: CanonicalForm) -> dict:
    sys = form.system
    doc = system_doc(sys)
    doc.update(
        {
            "k": form.k,
            "p": list(form.p),
            "C": matrix_json(form.C),
            "D": matrix_json(form.D),
            "M": matrix_json(form.M_uncontrollable),
            "witness": witness_doc(form.witness),
        }
    )
    return doc


def invariants_doc(inv: SystemInvariants) -> dict:
    zp = inv.zero_part
    return {
        "n": inv.n,
        "m": inv.m,
        "k": inv.k,
        "r": list(inv.r),
        "p": list(inv.p),
        "inertia": {"neg": inv.inertia.n_neg, "pos": inv.inertia.n_pos, "zero": inv.inertia.n_zero},
        "zero_part_factors": None if zp.invariant_factors is None else [poly_json(f) for f in zp.invariant_factors],
        "zero_part_blocks": [
            {"partition": list(b.partition), "carrier": poly_json(b.carrier), "roots": b.roots, "exact": b.exact}
            for b in zp.blocks
        ],
        "uncontrollable_factors": [poly_json(f) for f in inv.uncontrollable_factors],
    }


def verdict_doc(v: EquivalenceVerdict) -> dict:
    return {
        "equivalent": v.equivalent,
        "verdict": "yes" if v.equivalent else "no",
        "failed_condition": v.failed_condition,
    }
