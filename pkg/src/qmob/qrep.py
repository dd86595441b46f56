"""Reader and writer for the line-oriented ``.qrep`` format.

::

    # leading comment lines are kept as the document header
    name a3_example
    field 2                      # or: field infinite
    quiver
      vertices 4
      arrow alpha 1 2
      arrow gamma 2 4
    relations
      rel 1 alpha.gamma - 1 beta.delta
    representation
      dim 1 2
      map alpha [[1,0],[0,1]]

A path ``a.b`` traverses ``a`` first, so its matrix is ``M_b @ M_a``.
Matrices are row-major with shape ``dim(target) x dim(source)``.  Missing
``dim`` lines mean 0 and missing ``map`` lines mean the zero matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import InvalidQuiver, NotPrime, QmobError, QrepSyntaxError, ValidationError
from .exactmath import FieldSpec, Mat
from .quiver import Arrow, Path, Quiver, Relation
from .rep import Representation, validate

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_SCALAR = re.compile(r"[+-]?\d+(/\d+)?\Z")
_SECTIONS = ("quiver", "relations", "representation")


@dataclass(frozen=True)
class QrepDocument:
    name: str
    field: FieldSpec
    quiver: Quiver
    representation: Representation
    comments: Tuple[str, ...] = ()

    @property
    def relations(self) -> Tuple[Relation, ...]:
        return self.representation.relations


def _tokens(line: str):
    """``(column, token)`` pairs, columns 1-based."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _parse_scalar(tok: str, line: int, col: int) -> Fraction:
    if not _SCALAR.match(tok):
        raise QrepSyntaxError(line, col, f"expected a scalar, got {tok!r}")
    value = Fraction(tok)
    return value


def _parse_int(tok: str, line: int, col: int, what: str) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise QrepSyntaxError(line, col, f"expected {what}, got {tok!r}")
    return int(tok)


def parse_matrix(text: str, line: int = 1, col: int = 1) -> List[List[Fraction]]:
    """Parse ``[[a,b],[c,d]]``; entries are integers or ``n/d``."""
    s = re.sub(r"\s+", "", text)
    if not (s.startswith("[") and s.endswith("]")):
        raise QrepSyntaxError(line, col, f"matrix literal must look like [[a,b],[c,d]], got {text!r}")
    inner = s[1:-1]
    if inner == "":
        return []
    rows = []
    pos = 0
    while pos < len(inner):
        if inner[pos] != "[":
            raise QrepSyntaxError(line, col, f"expected '[' in matrix literal {text!r}")
        end = inner.find("]", pos)
        if end < 0:
            raise QrepSyntaxError(line, col, f"unterminated row in matrix literal {text!r}")
        body = inner[pos + 1:end]
        entries = body.split(",") if body else []
        rows.append([_parse_scalar(e, line, col) for e in entries])
        pos = end + 1
        if pos < len(inner):
            if inner[pos] != ",":
                raise QrepSyntaxError(line, col, f"expected ',' between rows in {text!r}")
            pos += 1
    if len({len(r) for r in rows}) > 1:
        raise QrepSyntaxError(line, col, "matrix rows have different lengths")
    return rows


def parse(text: str) -> QrepDocument:
    """Parse and fully validate a ``.qrep`` document."""
    header: List[str] = []
    in_header = True
    name = ""
    field: Optional[FieldSpec] = None
    n_vertices: Optional[int] = None
    arrows: List[Arrow] = []
    rel_lines = []
    dims = {}
    maps = {}
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if in_header and stripped.startswith("#"):
            header.append(stripped)
            continue
        content = raw.split("#", 1)[0]
        toks = _tokens(content)
        if not toks:
            continue
        in_header = False
        (c0, kw), rest = toks[0], toks[1:]

        if kw in _SECTIONS:
            if rest:
                raise QrepSyntaxError(lineno, rest[0][0], f"unexpected text after {kw!r}")
            section = kw
        elif kw == "name":
            name = content.strip()[len("name"):].strip()
        elif kw == "field":
            if len(rest) != 1:
                raise QrepSyntaxError(lineno, c0, "expected 'field <prime>' or 'field infinite'")
            col, tok = rest[0]
            if tok == "infinite":
                field = FieldSpec.infinite()
            else:
                p = _parse_int(tok, lineno, col, "a prime or 'infinite'")
                try:
                    field = FieldSpec.prime(p)
                except NotPrime:
                    raise QrepSyntaxError(lineno, col, f"{p} is not a prime") from None
        elif kw == "vertices":
            if section != "quiver" or len(rest) != 1:
                raise QrepSyntaxError(lineno, c0, "'vertices <n>' belongs in the quiver section")
            n_vertices = _parse_int(rest[0][1], lineno, rest[0][0], "a vertex count")
            if n_vertices < 1:
                raise QrepSyntaxError(lineno, rest[0][0], "a quiver needs at least one vertex")
        elif kw == "arrow":
            if section != "quiver" or len(rest) != 3:
                raise QrepSyntaxError(lineno, c0, "'arrow <name> <source> <target>' belongs in the quiver section")
            if n_vertices is None:
                raise QrepSyntaxError(lineno, c0, "'vertices' must precede arrows")
            (cn, an), (cs, s), (ct, t) = rest
            if not _NAME.match(an):
                raise QrepSyntaxError(lineno, cn, f"bad arrow name {an!r}")
            if an in {a.name for a in arrows}:
                raise QrepSyntaxError(lineno, cn, f"duplicate arrow {an!r}")
            s = _parse_int(s, lineno, cs, "a source vertex")
            t = _parse_int(t, lineno, ct, "a target vertex")
            for v, cv in ((s, cs), (t, ct)):
                if not 1 <= v <= n_vertices:
                    raise QrepSyntaxError(lineno, cv, f"vertex {v} outside 1..{n_vertices}")
            arrows.append(Arrow(an, s, t))
        elif kw == "rel":
            if section != "relations":
                raise QrepSyntaxError(lineno, c0, "'rel' belongs in the relations section")
            rel_lines.append((lineno, rest))
        elif kw == "dim":
            if section != "representation" or len(rest) != 2:
                raise QrepSyntaxError(lineno, c0, "'dim <vertex> <d>' belongs in the representation section")
            v = _parse_int(rest[0][1], lineno, rest[0][0], "a vertex")
            if n_vertices is None or not 1 <= v <= n_vertices:
                raise QrepSyntaxError(lineno, rest[0][0], f"unknown vertex {v}")
            if v in dims:
                raise QrepSyntaxError(lineno, rest[0][0], f"dimension of vertex {v} given twice")
            dims[v] = _parse_int(rest[1][1], lineno, rest[1][0], "a dimension")
        elif kw == "map":
            if section != "representation" or len(rest) < 2:
                raise QrepSyntaxError(lineno, c0, "'map <arrow> <matrix>' belongs in the representation section")
            cn, an = rest[0]
            if an not in {a.name for a in arrows}:
                raise QrepSyntaxError(lineno, cn, f"unknown arrow {an!r}")
            if an in maps:
                raise QrepSyntaxError(lineno, cn, f"map {an!r} given twice")
            literal = content[rest[1][0] - 1:].strip()
            maps[an] = (lineno, rest[1][0], parse_matrix(literal, lineno, rest[1][0]))
        else:
            raise QrepSyntaxError(lineno, c0, f"unknown keyword {kw!r}")

    if field is None:
        raise QrepSyntaxError(1, 1, "missing 'field' line")
    if n_vertices is None:
        raise QrepSyntaxError(1, 1, "missing quiver 'vertices' line")
    quiver = Quiver(n_vertices, tuple(arrows))
    relations = [_parse_relation(field, quiver, lineno, toks) for lineno, toks in rel_lines]

    dimvec = [dims.get(v, 0) for v in quiver.vertices]
    built = {}
    for an, (lineno, col, rows) in maps.items():
        a = quiver.arrow(an)
        shape = (dimvec[a.target - 1], dimvec[a.source - 1])
        ncols = len(rows[0]) if rows else 0
        if 0 in shape:
            if any(rows):
                raise QrepSyntaxError(lineno, col, f"map {an} must be empty, expected {shape[0]}x{shape[1]}")
            built[an] = Mat.zero(field, *shape)
            continue
        if (len(rows), ncols) != shape:
            raise QrepSyntaxError(lineno, col, f"map {an} has shape {len(rows)}x{ncols}, expected {shape[0]}x{shape[1]}")
        try:
            built[an] = Mat.from_rows(field, rows, ncols=shape[1])
        except QmobError as exc:
            raise QrepSyntaxError(lineno, col, str(exc)) from None
    rep = Representation(field, quiver, dimvec, built, relations)
    problems = validate(rep)
    if problems:
        raise ValidationError(problems)
    return QrepDocument(name, field, quiver, rep, tuple(header))


def _parse_relation(field: FieldSpec, quiver: Quiver, lineno: int, toks) -> Relation:
    terms = []
    sign = 1
    coeff = None
    expect_term = True
    for col, tok in toks:
        if tok in ("+", "-"):
            if coeff is not None or (expect_term and terms):
                raise QrepSyntaxError(lineno, col, f"unexpected {tok!r}")
            sign = -1 if tok == "-" else 1
            expect_term = True
        elif _SCALAR.match(tok):
            if coeff is not None:
                raise QrepSyntaxError(lineno, col, "two coefficients in a row")
            if not expect_term:
                raise QrepSyntaxError(lineno, col, "terms must be joined by '+' or '-'")
            coeff = _parse_scalar(tok, lineno, col)
        else:
            if not expect_term:
                raise QrepSyntaxError(lineno, col, "terms must be joined by '+' or '-'")
            names = tok.split(".")
            for n in names:
                if not _NAME.match(n):
                    raise QrepSyntaxError(lineno, col, f"bad path {tok!r}")
            path = Path(tuple(names))
            if len(path) < 2:
                raise QrepSyntaxError(lineno, col, f"relation path {tok!r} has length 1; "
                                                   "admissible relations use paths of length >= 2")
            try:
                path.endpoints(quiver)
            except InvalidQuiver as exc:
                raise QrepSyntaxError(lineno, col, str(exc)) from None
            c = field(sign * (coeff if coeff is not None else 1))
            if c:
                terms.append((c, path))
            sign, coeff, expect_term = 1, None, False
    if coeff is not None or expect_term:
        raise QrepSyntaxError(lineno, toks[-1][0] if toks else 1, "relation ends without a path")
    if not terms:
        raise QrepSyntaxError(lineno, toks[0][0], "relation has no nonzero term")
    rel = Relation(tuple(terms))
    try:
        rel.check(quiver)
    except InvalidQuiver as exc:
        raise QrepSyntaxError(lineno, toks[0][0], str(exc)) from None
    return rel


def _relation_text(rel: Relation) -> str:
    parts = []
    for k, (c, p) in enumerate(rel.terms):
        if k == 0:
            parts.append(f"{c} {p}")
        elif c < 0:
            parts.append(f"- {-c} {p}")
        else:
            parts.append(f"+ {c} {p}")
    return " ".join(parts)


def dumps(doc: QrepDocument) -> str:
    """Canonical text form; ``parse(dumps(doc)) == doc``."""
    rep = doc.representation
    lines = list(doc.comments)
    if doc.name:
        lines.append(f"name {doc.name}")
    lines.append("field infinite" if doc.field.p is None else f"field {doc.field.p}")
    lines.append("quiver")
    lines.append(f"  vertices {doc.quiver.n_vertices}")
    for a in doc.quiver.arrows:
        lines.append(f"  arrow {a.name} {a.source} {a.target}")
    if rep.relations:
        lines.append("relations")
        for r in rep.relations:
            lines.append(f"  rel {_relation_text(r)}")
    lines.append("representation")
    for v in doc.quiver.vertices:
        if rep.dim(v):
            lines.append(f"  dim {v} {rep.dim(v)}")
    for name, m in rep.maps:
        if not m.is_zero():
            lines.append(f"  map {name} {m}")
    return "\n".join(lines) + "\n"


def document(rep: Representation, name: str = "", comments=()) -> QrepDocument:
    return QrepDocument(name, rep.field, rep.quiver, rep, tuple(comments))


def load(path) -> QrepDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
