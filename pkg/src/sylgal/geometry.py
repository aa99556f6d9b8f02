"""Finite linear spaces with implicit 2-lines.

A :class:`Geometry` stores only its lines of size >= 3. Every pair of points
not covered by a stored line forms an implicit 2-line. Point sets are handled
internally as ``int`` bitmasks; the public functions accept and return
``frozenset`` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidArguments, UnsupportedDimension


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class Geometry:
    """Points ``0..n_points-1`` and the stored lines (each of size >= 3).

    Lines are normalised to sorted tuples and the line list is sorted, so
    ``==`` is structural equality.
    """

    n_points: int
    lines: tuple = ()

    def __post_init__(self):
        lines = tuple(sorted(tuple(sorted(line)) for line in self.lines))
        object.__setattr__(self, "lines", lines)

    @classmethod
    def from_blocks(cls, n_points: int, blocks: Iterable[Iterable[int]]) -> "Geometry":
        """Build from arbitrary blocks, dropping those with fewer than 3 points."""
        lines = {tuple(sorted(set(b))) for b in blocks}
        return cls(n_points, tuple(b for b in lines if len(b) >= 3))

    @classmethod
    def collinear(cls, n_points: int) -> "Geometry":
        if n_points >= 3:
            return cls(n_points, (tuple(range(n_points)),))
        return cls(n_points, ())

    # -- derived tables (valid only for geometries that pass validate) --

    @cached_property
    def line_masks(self) -> tuple:
        return tuple(_mask(line) for line in self.lines)

    @cached_property
    def lines_at(self) -> tuple:
        at = [[] for _ in range(self.n_points)]
        for i, line in enumerate(self.lines):
            for p in line:
                at[p].append(i)
        return tuple(tuple(x) for x in at)

    @cached_property
    def pair_line(self) -> tuple:
        """``pair_line[a][b]`` is the index of the stored line through a, b, or -1."""
        n = self.n_points
        table = [[-1] * n for _ in range(n)]
        for i, line in enumerate(self.lines):
            for a in line:
                row = table[a]
                for b in line:
                    if a != b:
                        row[b] = i
        return tuple(tuple(r) for r in table)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_points) - 1

    def degree(self, p: int) -> int:
        """Number of lines through ``p``, implicit 2-lines included."""
        covered = sum(len(self.lines[i]) - 1 for i in self.lines_at[p])
        return len(self.lines_at[p]) + (self.n_points - 1 - covered)

    def two_line_count(self) -> int:
        covered = sum(len(line) * (len(line) - 1) // 2 for line in self.lines)
        return self.n_points * (self.n_points - 1) // 2 - covered

    def all_lines(self) -> list[tuple]:
        """Stored lines followed by the implicit 2-lines, each as a sorted tuple."""
        out = list(self.lines)
        table = self.pair_line
        for a in range(self.n_points):
            row = table[a]
            for b in range(a + 1, self.n_points):
                if row[b] < 0:
                    out.append((a, b))
        return out

    def is_collinear(self) -> bool:
        return self.n_points <= 2 or (len(self.lines) == 1 and len(self.lines[0]) == self.n_points)

    def __str__(self):
        return f"Geometry({self.n_points} points, {len(self.lines)} lines)"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = "ok"
    pair: tuple | None = None
    line: tuple | None = None

    def __bool__(self):
        return self.ok


def validate(g: Geometry) -> ValidationReport:
    """Check the linear-space axioms; report the first violation found."""
    if not isinstance(g.n_points, int) or g.n_points < 1:
        return ValidationReport(False, f"n_points must be >= 1, got {g.n_points!r}")
    for line in g.lines:
        if len(line) < 3:
            return ValidationReport(False, f"line {line} has fewer than 3 points", line=line)
        if len(set(line)) != len(line):
            return ValidationReport(False, f"line {line} repeats a point", line=line)
        if line[0] < 0 or line[-1] >= g.n_points:
            return ValidationReport(False, f"line {line} has a point outside 0..{g.n_points - 1}", line=line)
    seen = {}
    for line in g.lines:
        for pair in combinations(line, 2):
            if pair in seen:
                other = seen[pair]
                if set(other) <= set(line) or set(line) <= set(other):
                    msg = f"line {other} and line {line} are nested; pair {pair} lies on both"
                else:
                    msg = f"pair {pair} lies on lines {other} and {line}"
                return ValidationReport(False, msg, pair=pair, line=line)
            seen[pair] = line
    return ValidationReport(True)


def line_through(g: Geometry, a: int, b: int) -> frozenset:
    if a == b:
        raise InvalidArguments("line_through needs two distinct points")
    i = g.pair_line[a][b]
    if i < 0:
        return frozenset((a, b))
    return frozenset(g.lines[i])


def closure_mask(g: Geometry, mask: int) -> int:
    """Smallest line-closed superset of ``mask`` (bitmask in, bitmask out)."""
    lines_at = g.lines_at
    line_masks = g.line_masks
    todo = _bits(mask)
    while todo:
        x = todo.pop()
        bx = 1 << x
        for i in lines_at[x]:
            lm = line_masks[i]
            if lm & mask & ~bx and lm & ~mask:
                new = lm & ~mask
                mask |= new
                todo.extend(_bits(new))
    return mask


def closure(g: Geometry, seed: Iterable[int]) -> frozenset:
    return frozenset(_bits(closure_mask(g, _mask(seed))))


def is_flat(g: Geometry, points: Iterable[int]) -> bool:
    m = _mask(points)
    return closure_mask(g, m) == m


def dimension(g: Geometry, exact_limit: int = 32) -> int:
    """Size of a minimum generating set, minus one.

    The greedy value is confirmed minimal by exhaustive search over smaller
    closure-independent sets when ``n_points <= exact_limit``; above that the
    greedy value (an upper bound) is returned.
    """
    n = g.n_points
    full = g.full_mask
    chosen = 0
    size = 0
    while chosen != full:
        best_count, best_mask = -1, 0
        for x in range(n):
            if chosen >> x & 1:
                continue
            m = closure_mask(g, chosen | 1 << x)
            if m.bit_count() > best_count:
                best_count, best_mask = m.bit_count(), m
        chosen = best_mask
        size += 1
    if n > exact_limit or size <= 2:
        return size - 1

    found = False

    def search(start, depth, target, mask):
        nonlocal found
        if depth == target:
            found = closure_mask(g, mask) == full
            return found
        cl = closure_mask(g, mask) if mask else 0
        for x in range(start, n):
            if cl >> x & 1:
                continue
            if search(x + 1, depth + 1, target, mask | 1 << x):
                return True
        return False

    for target in range(2, size):
        if search(0, 0, target, 0):
            return target - 1
    return size - 1


def covers(g: Geometry, flat_mask: int) -> list[int]:
    """Flats that cover ``flat_mask``: closures of the flat plus one outside point."""
    out = []
    seen = flat_mask
    for x in range(g.n_points):
        if seen >> x & 1:
            continue
        c = closure_mask(g, flat_mask | 1 << x)
        out.append(c)
        seen |= c
    return out


def planes(g: Geometry) -> list[frozenset]:
    """All closures of non-collinear triples, deduplicated, sorted by point tuple."""
    found = set()
    n = g.n_points
    for a in range(n):
        for line_mask in covers(g, 1 << a):
            for c in range(n):
                if not line_mask >> c & 1 and c > a:
                    found.add(closure_mask(g, line_mask | 1 << c))
    return sorted((frozenset(_bits(m)) for m in found), key=lambda s: tuple(sorted(s)))


@dataclass(frozen=True)
class ContractionResult:
    """Residue geometry with the fibre (original points) behind each residue point.

    ``anomalies`` lists residue point pairs that ended up on two different
    residue lines; it is empty whenever the closure lattice behaves like a
    matroid, which holds for every embedded geometry.
    """

    geometry: Geometry
    fibers: tuple
    anomalies: tuple = field(default=())


def contraction(g: Geometry, flat: Iterable[int]) -> ContractionResult:
    f = _mask(flat)
    if f == 0 or closure_mask(g, f) != f:
        raise InvalidArguments("contraction needs a non-empty closed flat")
    if f == g.full_mask:
        raise InvalidArguments("contraction needs a proper flat")
    cov = covers(g, f)
    owner = {}
    for i, c in enumerate(cov):
        for x in _bits(c & ~f):
            owner[x] = i
    k = len(cov)
    assigned = {}
    lines = []
    anomalies = []
    for i in range(k):
        for j in range(i + 1, k):
            if (i, j) in assigned:
                continue
            span = closure_mask(g, cov[i] | cov[j])
            members = tuple(sorted({owner[x] for x in _bits(span & ~f)}))
            if len(members) < 3:
                continue
            for pair in combinations(members, 2):
                if pair in assigned and assigned[pair] != members:
                    anomalies.append(pair)
                assigned.setdefault(pair, members)
            lines.append(members)
    residue = Geometry(k, tuple(set(lines)))
    fibers = tuple(frozenset(_bits(c & ~f)) for c in cov)
    return ContractionResult(residue, fibers, tuple(sorted(set(anomalies))))


def is_k_sg(g: Geometry, k: int) -> bool:
    """Every line (2-lines included) has at least ``k`` points."""
    if k < 2:
        raise InvalidArguments("k must be >= 2")
    if any(len(line) < k for line in g.lines):
        return False
    return k <= 2 or g.two_line_count() == 0


def rich_points(g: Geometry) -> frozenset:
    """Points whose contraction has only lines of size >= 4."""
    if dimension(g) < 3:
        raise UnsupportedDimension("rich/poor points need a geometry of dimension >= 3")
    return frozenset(p for p in range(g.n_points) if is_k_sg(contraction(g, [p]).geometry, 4))


def permute(g: Geometry, perm: Sequence[int]) -> Geometry:
    """Relabel point ``p`` as ``perm[p]``."""
    return Geometry(g.n_points, tuple(tuple(perm[p] for p in line) for line in g.lines))


def restrict(g: Geometry, points: Iterable[int]) -> tuple[Geometry, tuple]:
    """Induced geometry on ``points``; returns it with the sorted list of original indices."""
    keep = tuple(sorted(set(points)))
    index = {p: i for i, p in enumerate(keep)}
    blocks = []
    for line in g.lines:
        sub = [index[p] for p in line if p in index]
        if len(sub) >= 3:
            blocks.append(sub)
    return Geometry(len(keep), tuple(blocks)), keep
