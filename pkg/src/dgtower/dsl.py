"""Line-oriented text format for tower documents.

A document declares a field and variables once, then a base quotient and
ordered extension steps, with optional payload sections used by the
verification commands.  Bracketed lists stay on one line; ``#`` starts a
comment.  Example::

    field 32003
    vars x y
    quotient [x*y]
    koszul [x]
    point 0 0
    elements [x + y]
    points [(0, 1), (1, 0)]
    label crossing-lines

Diagnostics carry the line (and column, for polynomial syntax errors).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .dgring import DGRingSpec, KoszulStep, TrivExtStep
from .errors import DocumentError, PolyParseError
from .fields import Field, field_from_spec
from .poly import PolyRing

__all__ = ["TowerDocument", "parse_document"]


@dataclass
class TowerDocument:
    """Parsed form of a tower file, convertible to a DGRingSpec."""

    field: Field
    ring: PolyRing
    base: tuple = ()
    steps: tuple = ()
    point: tuple | None = None
    elements: tuple = ()
    points: tuple = ()
    matrix: tuple | None = None
    module_elements: tuple = ()
    label: str = ""
    source: str = ""

    def to_spec(self) -> DGRingSpec:
        return DGRingSpec(self.ring, self.base, self.steps, self.point, self.label)


def _split_top_level(text: str, line: int):
    """Split on commas that are not nested in brackets or parentheses."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "([":
            depth += 1
            current.append(ch)
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise DocumentError("unbalanced brackets", line)
            current.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise DocumentError("unbalanced brackets", line)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return parts


def _strip_brackets(text: str, line: int, open_ch="[", close_ch="]") -> str:
    text = text.strip()
    if not (text.startswith(open_ch) and text.endswith(close_ch)):
        raise DocumentError(f"expected a {open_ch}...{close_ch} list", line)
    return text[1:-1].strip()


def _parse_poly_list(ring: PolyRing, text: str, line: int):
    inner = _strip_brackets(text, line)
    if not inner:
        return ()
    out = []
    for piece in _split_top_level(inner, line):
        try:
            out.append(ring.parse(piece))
        except PolyParseError as exc:
            raise DocumentError(f"bad polynomial {piece!r}: {exc}", line) from None
    return tuple(out)


def _parse_scalar(fld: Field, text: str, line: int):
    try:
        return fld.of(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad field element {text!r}: {exc}", line) from None


def _parse_point(fld: Field, text: str, line: int, n: int):
    inner = text.strip()
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
    coords = [
        _parse_scalar(fld, piece, line)
        for piece in _split_top_level(inner, line)
    ]
    if len(coords) != n:
        raise DocumentError(
            f"point has {len(coords)} coordinates, expected {n}", line
        )
    return tuple(coords)


def parse_document(text: str) -> TowerDocument:
    """Parse a tower document; raises DocumentError with a line number."""
    fld: Field | None = None
    ring: PolyRing | None = None
    base = None
    steps: list = []
    point = None
    elements: tuple = ()
    points: list = []
    matrix = None
    module_elements: tuple = ()
    label = ""

    def need_ring(line):
        if ring is None:
            raise DocumentError("field and vars must be declared first", line)
        return ring

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if key == "field":
            if fld is not None:
                raise DocumentError("duplicate field declaration", lineno)
            try:
                fld = field_from_spec(rest)
            except ValueError as exc:
                raise DocumentError(str(exc), lineno) from None
        elif key == "vars":
            if fld is None:
                raise DocumentError("declare the field before vars", lineno)
            if ring is not None:
                raise DocumentError("duplicate vars declaration", lineno)
            names = rest.replace(",", " ").split()
            if not names:
                raise DocumentError("vars needs at least one name", lineno)
            try:
                ring = PolyRing(fld, names)
            except ValueError as exc:
                raise DocumentError(str(exc), lineno) from None
        elif key == "quotient":
            if base is not None:
                raise DocumentError("duplicate quotient declaration", lineno)
            base = _parse_poly_list(need_ring(lineno), rest, lineno)
        elif key == "koszul":
            elems = _parse_poly_list(need_ring(lineno), rest, lineno)
            if not elems:
                raise DocumentError("koszul step needs at least one element", lineno)
            steps.append(KoszulStep(elems))
        elif key == "trivext":
            steps.append(_parse_trivext(need_ring(lineno), rest, lineno))
        elif key == "point":
            point = _parse_point(fld, rest, lineno, need_ring(lineno).n)
        elif key == "elements":
            elements = _parse_poly_list(need_ring(lineno), rest, lineno)
        elif key == "module":
            module_elements = _parse_poly_list(need_ring(lineno), rest, lineno)
        elif key == "points":
            inner = _strip_brackets(rest, lineno)
            if inner:
                for piece in _split_top_level(inner, lineno):
                    points.append(
                        _parse_point(fld, piece, lineno, need_ring(lineno).n)
                    )
        elif key == "matrix":
            inner = _strip_brackets(rest, lineno)
            rows = []
            for piece in _split_top_level(inner, lineno):
                rows.append(_parse_poly_list(need_ring(lineno), piece, lineno))
            if rows and any(len(r) != len(rows) for r in rows):
                raise DocumentError("matrix must be square", lineno)
            matrix = tuple(rows)
        elif key == "label":
            label = rest
        else:
            raise DocumentError(f"unknown key {key!r}", lineno)

    if ring is None:
        raise DocumentError("document must declare field and vars", 1)
    if base is None:
        base = ()
    return TowerDocument(
        field=fld,
        ring=ring,
        base=base,
        steps=tuple(steps),
        point=point,
        elements=elements,
        points=tuple(points),
        matrix=matrix,
        module_elements=module_elements,
        label=label,
        source=text,
    )


def _parse_trivext(ring: PolyRing, rest: str, lineno: int) -> TrivExtStep:
    shift = None
    gens = None
    rels = None
    for piece in rest.split(" "):
        piece = piece.strip()
        if not piece:
            continue
        if piece.startswith("shift="):
            shift = int(piece[len("shift="):])
        elif piece.startswith("gens="):
            gens = int(piece[len("gens="):])
        elif piece.startswith("rels="):
            rels_text = rest[rest.index("rels=") + len("rels="):].strip()
            inner = _strip_brackets(rels_text, lineno)
            cols = []
            if inner:
                for col_text in _split_top_level(inner, lineno):
                    cols.append(_parse_poly_list(ring, col_text, lineno))
            rels = cols
            break
        else:
            raise DocumentError(
                f"trivext expects shift=, gens=, rels=; got {piece!r}", lineno
            )
    if shift is None or gens is None:
        raise DocumentError("trivext needs shift= and gens=", lineno)
    if shift < 1:
        raise DocumentError("trivext shift must be >= 1", lineno)
    if gens < 0:
        raise DocumentError("trivext gens must be >= 0", lineno)
    rels = rels or []
    for col in rels:
        if len(col) != gens:
            raise DocumentError(
                f"trivext relation column of length {len(col)}, expected {gens}",
                lineno,
            )
    return TrivExtStep(gens, rels, shift)
