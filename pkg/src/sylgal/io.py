"""Text formats: geometries with colourings and coordinates, and rational point files.

A geometry document is line-oriented::

    # optional comments
    points 7
    line 0 1 2
    ...
    color 0 RB            (optional, one per point)
    field 2 1 modulus=1,1 (optional coordinate table)
    coord 0 1 0 0

Field elements in ``coord`` lines are coefficient tuples ``c0,c1,...`` of
the residue polynomial. Serialisation is canonical: lines are sorted, so
``dump(load(s))`` is a fixed point and ``load(dump(x)) == x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .chromatic import Colour, as_coloring
from .errors import InvalidArguments
from .galois import FiniteField, ProjPoint, field_make
from .geometry import Geometry, validate
from .witness import ColoredPoint, colored_point_set


@dataclass(frozen=True)
class Document:
    geometry: Geometry
    coloring: Optional[tuple] = None
    coords: Optional[tuple] = None


def _fail(lineno, msg):
    raise InvalidArguments(f"line {lineno}: {msg}")


def _fmt_modulus(f: FiniteField) -> str:
    return ",".join(str(c) for c in f.modulus)


def dump_geometry(g: Geometry, coloring: Optional[Sequence] = None,
                  coords: Optional[Sequence[ProjPoint]] = None, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"points {g.n_points}")
    out.extend("line " + " ".join(map(str, L)) for L in g.lines)
    if coloring is not None:
        if len(coloring) != g.n_points:
            raise InvalidArguments("colouring length differs from the number of points")
        out.extend(f"color {i} {Colour(int(c))}" for i, c in enumerate(coloring))
    if coords is not None:
        out.append(dump_coords(coords).rstrip("\n"))
    return "\n".join(out) + "\n"


def dump_coords(coords: Sequence[ProjPoint]) -> str:
    if not coords:
        raise InvalidArguments("empty coordinate table")
    f = coords[0].field
    out = [f"field {f.p} {f.k} modulus={_fmt_modulus(f)}"]
    for i, pt in enumerate(coords):
        out.append(f"coord {i} " + " ".join(f.format(a) for a in pt.coords))
    return "\n".join(out) + "\n"


def _parse_field(parts, lineno) -> FiniteField:
    if len(parts) != 4 or not parts[3].startswith("modulus="):
        _fail(lineno, "expected 'field p k modulus=c0,...,ck'")
    try:
        p, k = int(parts[1]), int(parts[2])
        mod = tuple(int(t) for t in parts[3][len("modulus="):].split(","))
    except ValueError:
        _fail(lineno, "malformed field header")
    f = field_make(p, k)
    if mod != f.modulus:
        _fail(lineno, f"modulus {mod} differs from the built-in choice {f.modulus} for GF({f.q})")
    return f


def load_geometry(text: str) -> Document:
    n = None
    lines = []
    colours = {}
    coords = {}
    f = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        tag = parts[0]
        if tag == "points":
            if n is not None or len(parts) != 2:
                _fail(lineno, "a single 'points N' header is required")
            try:
                n = int(parts[1])
            except ValueError:
                _fail(lineno, f"bad point count {parts[1]!r}")
            if n < 0:
                _fail(lineno, "negative point count")
            continue
        if n is None and tag != "field":
            _fail(lineno, "'points N' must come first")
        if tag == "line":
            try:
                pts = [int(t) for t in parts[1:]]
            except ValueError:
                _fail(lineno, "non-integer point index")
            if len(pts) < 3:
                _fail(lineno, "stored lines need at least 3 points")
            if any(b <= a for a, b in zip(pts, pts[1:])):
                _fail(lineno, "line indices must be strictly increasing")
            if pts[0] < 0 or pts[-1] >= n:
                _fail(lineno, "point index out of range")
            lines.append(tuple(pts))
        elif tag == "color":
            if len(parts) != 3:
                _fail(lineno, "expected 'color i R|B|RB'")
            i = int(parts[1])
            if not 0 <= i < n or i in colours:
                _fail(lineno, f"bad or repeated colour index {i}")
            colours[i] = Colour.parse(parts[2])
        elif tag == "field":
            if f is not None:
                _fail(lineno, "repeated field header")
            f = _parse_field(parts, lineno)
        elif tag == "coord":
            if f is None:
                _fail(lineno, "'coord' before 'field'")
            i = int(parts[1])
            if i in coords:
                _fail(lineno, f"repeated coordinate index {i}")
            try:
                vec = tuple(f.parse(t) for t in parts[2:])
            except (ValueError, InvalidArguments):
                _fail(lineno, "bad field element")
            coords[i] = ProjPoint(f, vec)
        else:
            _fail(lineno, f"unknown record {tag!r}")
    if n is None:
        raise InvalidArguments("missing 'points N' header")
    g = Geometry(n, tuple(lines))
    rep = validate(g)
    if not rep:
        raise InvalidArguments(f"not a linear space: {rep.message}")
    coloring = None
    if colours:
        if len(colours) != n:
            raise InvalidArguments("colour lines must cover every point")
        coloring = as_coloring(colours[i] for i in range(n))
    pts = None
    if coords:
        if sorted(coords) != list(range(n)):
            raise InvalidArguments("coordinate lines must cover every point")
        pts = tuple(coords[i] for i in range(n))
        if len({len(p.coords) for p in pts}) != 1:
            raise InvalidArguments("coordinate vectors differ in length")
    return Document(g, coloring, pts)


def load_coords(text: str) -> tuple:
    """Coordinate table without geometry records (as printed by ``embed``)."""
    body = [s for s in text.splitlines() if s.strip().split()[:1] in (["field"], ["coord"])]
    n = sum(1 for s in body if s.split()[0] == "coord")
    doc = load_geometry(f"points {n}\n" + "\n".join(body))
    return doc.coords


# -- rational point files -------------------------------------------------------


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dump_points(points: Sequence[ColoredPoint]) -> str:
    return "".join(f"point {_fmt_rational(p.x)} {_fmt_rational(p.y)} {p.colour}\n" for p in points)


def load_points(text: str) -> tuple:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if parts[0] != "point" or len(parts) != 4:
            _fail(lineno, "expected 'point x y R|B|RB'")
        try:
            x, y = Fraction(parts[1]), Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            _fail(lineno, "coordinates must be integers or num/den")
        out.append((x, y, Colour.parse(parts[3])))
    return colored_point_set(out)
