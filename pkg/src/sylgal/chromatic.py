"""Red/blue colourings: chromatic and MR checks, colouring search, structural checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntFlag
from itertools import combinations
from typing import Optional, Sequence

from .canon import canonical_form, canonical_form_up_to_swap
from .errors import InvalidArguments, UnsupportedSize
from .geometry import ContractionResult, Geometry, _bits, _mask, closure_mask, dimension, planes, restrict


class Colour(IntFlag):
    R = 1
    B = 2
    RB = 3

    def __str__(self):
        return {1: "R", 2: "B", 3: "RB"}[int(self)]

    @classmethod
    def parse(cls, text: str) -> "Colour":
        try:
            return {"R": cls.R, "B": cls.B, "RB": cls.RB}[text.strip().upper()]
        except KeyError:
            raise InvalidArguments(f"unknown colour {text!r} (expected R, B or RB)") from None


RED, BLUE, BOTH = Colour.R, Colour.B, Colour.RB


def as_coloring(values: Sequence) -> tuple:
    return tuple(Colour(int(v)) for v in values)


def all_bicoloured(n: int) -> tuple:
    return (BOTH,) * n


@dataclass(frozen=True)
class ChromaticCheck:
    ok: bool
    pair: Optional[tuple] = None
    colour: Optional[Colour] = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ColorCensus:
    b: int
    r: int
    p: int
    t: int


def _check_cover(g, c):
    if len(c) != g.n_points:
        raise InvalidArguments(f"colouring has {len(c)} entries for {g.n_points} points")
    for v in c:
        if int(v) not in (1, 2, 3):
            raise InvalidArguments(f"invalid colour value {v!r}")


def is_chromatic(g: Geometry, c: Sequence) -> ChromaticCheck:
    """Any two points sharing a colour need a third point of the other colour on their line.

    On failure the lexicographically least offending pair is reported.
    """
    _check_cover(g, c)
    c = [int(v) for v in c]
    # points carrying each colour, per stored line
    has = [[sum(1 for x in L if c[x] & s) for s in (0, 1, 2)] for L in g.lines]
    table = g.pair_line
    n = g.n_points
    for a in range(n):
        for b in range(a + 1, n):
            shared = c[a] & c[b]
            if not shared:
                continue
            li = table[a][b]
            for s in (1, 2):
                if not shared & s:
                    continue
                if li < 0:
                    return ChromaticCheck(False, (a, b), Colour(s))
                o = 3 ^ s
                k = has[li][o] - (1 if c[a] & o else 0) - (1 if c[b] & o else 0)
                if k <= 0:
                    return ChromaticCheck(False, (a, b), Colour(s))
    return ChromaticCheck(True)


def is_mr(g: Geometry, c: Sequence) -> bool:
    """Every line, 2-lines included, has a red and a blue point."""
    _check_cover(g, c)
    if any(int(v) == 3 for v in c):
        raise InvalidArguments("MR colourings have no bicoloured points")
    c = [int(v) for v in c]
    for L in g.lines:
        if len({c[x] for x in L}) < 2:
            return False
    table = g.pair_line
    for a in range(g.n_points):
        for b in range(a + 1, g.n_points):
            if table[a][b] < 0 and c[a] == c[b]:
                return False
    return True


def census(g: Geometry, c: Sequence) -> ColorCensus:
    _check_cover(g, c)
    vals = [int(v) for v in c]
    return ColorCensus(b=vals.count(2), r=vals.count(1), p=vals.count(3), t=g.two_line_count())


def _two_line_partners(g):
    table = g.pair_line
    n = g.n_points
    return [[y for y in range(n) if y != x and table[x][y] < 0] for x in range(n)]


def _search_order(g):
    return sorted(range(g.n_points), key=lambda x: (-g.degree(x), x))


def _full_line_ok(L, c):
    has = [0, 0, 0]
    for x in L:
        if c[x] & 1:
            has[1] += 1
        if c[x] & 2:
            has[2] += 1
    for a, b in combinations(L, 2):
        shared = c[a] & c[b]
        for s in (1, 2):
            if shared & s:
                o = 3 ^ s
                if has[o] - (c[a] & o > 0) - (c[b] & o > 0) <= 0:
                    return False
    return True


def iter_chromatic_colorings(g: Geometry):
    """Every chromatic colouring of ``g`` (not deduplicated), as int tuples.

    Points are assigned in order of decreasing degree; a stored line is
    checked as soon as its last point is coloured and 2-lines immediately.
    """
    n = g.n_points
    order = _search_order(g)
    pos = [0] * n
    for i, x in enumerate(order):
        pos[x] = i
    partners = _two_line_partners(g)
    # lines that become complete when point order[i] is assigned
    completes = [[] for _ in range(n)]
    for L in g.lines:
        completes[max(pos[x] for x in L)].append(L)
    earlier_partners = [[y for y in partners[x] if pos[y] < pos[x]] for x in order]
    c = [0] * n

    def rec(i):
        if i == n:
            yield tuple(c)
            return
        x = order[i]
        domain = (1, 2) if partners[x] else (3, 1, 2)
        for v in domain:
            if any(c[y] & v for y in earlier_partners[i]):
                continue
            c[x] = v
            if all(_full_line_ok(L, c) for L in completes[i]):
                yield from rec(i + 1)
            c[x] = 0

    yield from rec(0)


def chromatic_colorings(g: Geometry, limit: int = 16) -> list[tuple]:
    """Chromatic colourings of ``g`` up to colour-preserving automorphism.

    One representative per class (the least colouring tuple), sorted.
    """
    if g.n_points > limit:
        raise UnsupportedSize(f"colouring search limited to {limit} points")
    best = {}
    for col in iter_chromatic_colorings(g):
        form = canonical_form(g, col)
        if form not in best or col < best[form]:
            best[form] = col
    return sorted(as_coloring(v) for v in best.values())


def iter_mr_colorings(g: Geometry, first_red: bool = True):
    """Proper red/blue colourings (every line meets both colours), as int tuples.

    With ``first_red`` the first point in search order is fixed red, which
    yields one colouring out of every swap pair.
    """
    n = g.n_points
    if n == 0:
        return
    order = _search_order(g)
    pos = [0] * n
    for i, x in enumerate(order):
        pos[x] = i
    partners = _two_line_partners(g)
    earlier_partners = [[y for y in partners[x] if pos[y] < pos[x]] for x in order]
    completes = [[] for _ in range(n)]
    for L in g.lines:
        completes[max(pos[x] for x in L)].append(L)
    c = [0] * n

    def rec(i):
        if i == n:
            yield tuple(c)
            return
        x = order[i]
        domain = (1,) if (i == 0 and first_red) else (1, 2)
        for v in domain:
            if any(c[y] == v for y in earlier_partners[i]):
                continue
            c[x] = v
            if all(len({c[y] for y in L}) == 2 for L in completes[i]):
                yield from rec(i + 1)
            c[x] = 0

    yield from rec(0)


def mr_colorable(g: Geometry) -> Optional[tuple]:
    """A proper 2-colouring if one exists.

    Unit propagation on lines (a line whose other points all share a colour
    forces the last point) keeps this fast on planes of a few dozen points.
    """
    n = g.n_points
    if n == 1:
        return None
    partners = _two_line_partners(g)
    lines_at = g.lines_at
    lines = g.lines
    order = _search_order(g)
    c = [0] * n

    def propagate(start):
        trail = []
        queue = [start]
        while queue:
            x = queue.pop()
            v = c[x]
            for y in partners[x]:
                if c[y] == v:
                    return False, trail
                if c[y] == 0:
                    c[y] = 3 - v
                    trail.append(y)
                    queue.append(y)
            for li in lines_at[x]:
                free = [y for y in lines[li] if c[y] == 0]
                seen = {c[y] for y in lines[li] if c[y]}
                if len(seen) == 2:
                    continue
                if not free:
                    return False, trail
                if len(free) == 1:
                    y = free[0]
                    c[y] = 3 - v
                    trail.append(y)
                    queue.append(y)
        return True, trail

    def rec(i):
        while i < n and c[order[i]]:
            i += 1
        if i == n:
            return True
        x = order[i]
        for v in ((1,) if i == 0 else (1, 2)):
            c[x] = v
            ok, trail = propagate(x)
            if ok and rec(i + 1):
                return True
            for y in trail:
                c[y] = 0
            c[x] = 0
        return False

    if rec(0):
        return as_coloring(c)
    return None


def mr_colorings(g: Geometry, swap_is_iso: bool = True) -> list[tuple]:
    """All proper 2-colourings up to colour-preserving automorphism.

    With ``swap_is_iso`` a colouring and its red/blue swap count once.
    """
    best = {}
    for col in iter_mr_colorings(g, first_red=swap_is_iso):
        if swap_is_iso:
            form = canonical_form_up_to_swap(g, col)
            swapped = tuple(3 - v for v in col)
            col = min(col, swapped)
        else:
            form = canonical_form(g, col)
        if form not in best or col < best[form]:
            best[form] = col
    return sorted(as_coloring(v) for v in best.values())


def inherited_coloring(cr: ContractionResult, c: Sequence) -> tuple:
    """Each residue point carries every colour found in its fibre."""
    out = []
    for fib in cr.fibers:
        v = 0
        for x in fib:
            v |= int(c[x])
        out.append(Colour(v))
    return tuple(out)


# -- structural checks ----------------------------------------------------


@dataclass
class StructureReport:
    checks: list = field(default_factory=list)   # (name, ok, witness)

    def add(self, name, ok, witness=None):
        self.checks.append((name, bool(ok), witness))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(name, w) for name, ok, w in self.checks if not ok]

    def __bool__(self):
        return self.ok


def _lines_with_masks(g):
    out = [(tuple(L), m) for L, m in zip(g.lines, g.line_masks)]
    table = g.pair_line
    for a in range(g.n_points):
        for b in range(a + 1, g.n_points):
            if table[a][b] < 0:
                out.append(((a, b), (1 << a) | (1 << b)))
    return out


def covering_lines(g: Geometry, count: int) -> Optional[list[tuple]]:
    """``count`` lines (2-lines included) whose union is every point, if they exist.

    Each successive line is taken through the least uncovered point, so the
    search is over at most ``deg^count`` line choices.
    """
    full = g.full_mask
    through = [[] for _ in range(g.n_points)]
    for L, m in _lines_with_masks(g):
        for x in L:
            through[x].append((L, m))

    def rec(covered, chosen):
        if covered == full:
            return list(chosen)
        if len(chosen) == count:
            return None
        x = ((~covered) & -(~covered)).bit_length() - 1
        for L, m in through[x]:
            chosen.append(L)
            r = rec(covered | m, chosen)
            if r is not None:
                return r
            chosen.pop()
        return None

    return rec(0, [])


def covering_planes(g: Geometry) -> Optional[tuple]:
    """Two planes (closures of non-collinear triples) whose union is every point, if any."""
    full = g.full_mask
    flats = {m for m in (_mask(P) for P in planes(g))}
    for m in sorted(flats):
        rest = full & ~m
        cl = closure_mask(g, rest)
        if cl != full and (cl in flats or dimension(restrict(g, _bits(cl))[0]) <= 1):
            return tuple(_bits(m)), tuple(_bits(cl))
    return None


def projective_plane_order(g: Geometry) -> Optional[int]:
    """``n`` when ``g`` is structurally a projective plane of order ``n``."""
    if g.two_line_count() or not g.lines:
        return None
    k = len(g.lines[0])
    n = k - 1
    if n < 2 or g.n_points != n * n + n + 1:
        return None
    if any(len(L) != k for L in g.lines) or any(len(g.lines_at[x]) != k for x in range(g.n_points)):
        return None
    return n


def check_structure_props(g: Geometry, c: Sequence) -> StructureReport:
    """Verify the structural consequences of being chromatic.

    (a) lines through bicoloured points have size >= 3; (b) at least 6 points
    of each colour, and at least 3 of each off every line (non-collinear
    case); (c) three covering lines are concurrent or pairwise disjoint, with
    every point but the common one bicoloured and the geometry SG; (d) line
    size <= 3 forces an all-bicoloured Steiner triple system; (e) in a
    projective plane of order n each colour has >= n + sqrt(n) + 1 points.
    Also checks that no two lines cover a non-collinear geometry and no two
    planes cover a non-planar one.
    """
    chk = is_chromatic(g, c)
    if not chk:
        raise InvalidArguments(f"colouring is not chromatic (pair {chk.pair})")
    c = [int(v) for v in c]
    n = g.n_points
    rep = StructureReport()
    collinear = g.is_collinear()

    bad = next(((x, y) for x in range(n) if c[x] == 3 for y in range(n)
                if y != x and g.pair_line[x][y] < 0), None)
    rep.add("lemma1", bad is None, bad)

    if not collinear:
        red = sum(1 for v in c if v & 1)
        blue = sum(1 for v in c if v & 2)
        rep.add("atleast6-total", red >= 6 and blue >= 6, {"red": red, "blue": blue})
        witness = None
        for L, m in _lines_with_masks(g):
            off_r = sum(1 for x in range(n) if not m >> x & 1 and c[x] & 1)
            off_b = sum(1 for x in range(n) if not m >> x & 1 and c[x] & 2)
            if off_r < 3 or off_b < 3:
                witness = L
                break
        rep.add("atleast6-off-line", witness is None, witness)

        two = covering_lines(g, 2)
        rep.add("twolines", two is None, two)
        if dimension(g) >= 3:
            cover = covering_planes(g)
            rep.add("twoplanes", cover is None, cover)

        three = covering_lines(g, 3)
        if three is not None:
            sets = [set(L) for L in three]
            common = sets[0] & sets[1] & sets[2]
            pair_meets = [sets[i] & sets[j] for i, j in ((0, 1), (0, 2), (1, 2))]
            concurrent = len(common) == 1
            disjoint = not any(pair_meets)
            ok = concurrent or disjoint
            witness = three
            if ok:
                others = [x for x in range(n) if x not in common]
                ok = all(c[x] == 3 for x in others) and g.two_line_count() == 0
            rep.add("threelines", ok, witness)

        if max((len(L) for L in g.lines), default=2) <= 3:
            ok = g.two_line_count() == 0 and all(v == 3 for v in c)
            rep.add("steiner", ok, None if ok else census(g, c))

    order = projective_plane_order(g)
    if order is not None:
        bound = order + math.sqrt(order) + 1
        red = sum(1 for v in c if v & 1)
        blue = sum(1 for v in c if v & 2)
        rep.add("bruen", red >= bound and blue >= bound, {"red": red, "blue": blue, "bound": bound})
    return rep
