"""Isomorph-free generation of (coloured) linear spaces by canonical augmentation.

A node is a linear space on ``m`` points (2-lines allowed) that can still
grow into a target object on ``N`` points. A child adds one point ``v`` and
chooses a set of pairwise disjoint lines through which ``v`` passes; every
other old point forms a 2-line with ``v``.

Pruning. For a line ``L`` of a node let ``need(L)`` be the least number of
points any final line containing ``L`` must add: ``k - |L|`` for the size
bound, and at least 1 if the colouring of ``L`` is not yet admissible. Lines
through a point ``x`` only share ``x``, so the points they need are distinct
new points and ``sum(need(L) for L through x) <= N - m`` must hold. This is
hereditary: deleting a point never breaks it. For MR and chromatic targets
every colour is carried by at least six points in a non-collinear final
object, which caps the single-coloured points at ``N - 6``.

Acceptance. The deletion point of a structure is the point with the largest
cheap invariant (colour, sorted line sizes), ties broken by the least
canonical label. A child is kept only if ``v`` lies in the automorphism orbit
of its deletion point; accepted siblings are deduplicated by canonical form
when the parent has non-trivial automorphisms.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .canon import canonical_form, canonical_form_up_to_swap, canonical_labeling, orbits
from .errors import BudgetExhausted, InvalidArguments, UnsupportedSize
from .geometry import Geometry, validate

FILTERS = (None, "mr", "chromatic")


@dataclass(frozen=True)
class EnumSpec:
    n_points: int
    min_line_size: int = 2
    require_non_collinear: bool = False
    colour_filter: Optional[str] = None

    def __post_init__(self):
        if self.n_points < 3:
            raise InvalidArguments("n_points must be >= 3")
        if self.min_line_size < 2:
            raise InvalidArguments("min_line_size must be >= 2")
        if self.colour_filter not in FILTERS:
            raise InvalidArguments(f"unknown colour filter {self.colour_filter!r}")


@dataclass
class EnumResult:
    spec: EnumSpec
    items: list                 # (form, geometry, colouring or None), sorted by form
    nodes: list = field(default_factory=list)   # accepted nodes per level
    seconds: float = 0.0
    by_level: dict = field(default_factory=dict)  # level -> items (multi-level runs)

    @property
    def geometries(self) -> list:
        return [g for _, g, _ in self.items]

    def count(self) -> int:
        return len(self.items)

    def counts(self) -> dict:
        """Counts under the different conventions for coloured output."""
        out = {"coloured": len(self.items)}
        if self.spec.colour_filter is not None:
            out["geometries"] = len({canonical_form(g) for _, g, _ in self.items})
        if self.spec.colour_filter == "mr":
            out["swap-identified"] = len({canonical_form_up_to_swap(g, c) for _, g, c in self.items})
        return out


# -- per-line requirements -----------------------------------------------------


@lru_cache(maxsize=None)
def _need(size: int, ro: int, bo: int, rb: int, k: int, mode: Optional[str]) -> int:
    """Least number of points a final line through these points still has to gain."""
    s = max(0, k - size)
    if mode == "mr":
        if ro == 0 or bo == 0:
            s = max(s, 1)
    elif mode == "chromatic":
        nr, nb = ro + rb, bo + rb
        bad = (nr >= 2 and nb - min(2, rb) <= 0) or (nb >= 2 and nr - min(2, rb) <= 0)
        if bad:
            s = max(s, 1)
    return s


def _tally(cols, pts):
    ro = bo = rb = 0
    for x in pts:
        c = cols[x]
        if c == 1:
            ro += 1
        elif c == 2:
            bo += 1
        elif c == 3:
            rb += 1
    return ro, bo, rb


def _add_colour(t, c):
    ro, bo, rb = t
    if c == 1:
        return ro + 1, bo, rb
    if c == 2:
        return ro, bo + 1, rb
    if c == 3:
        return ro, bo, rb + 1
    return t


@dataclass
class _Node:
    m: int
    lines: tuple          # stored lines (size >= 3), sorted tuples
    cols: tuple           # colour per point, 0 when uncoloured
    aut_order: Optional[int] = None

    def geometry(self) -> Geometry:
        return Geometry(self.m, self.lines)

    def colouring(self):
        return None if not any(self.cols) else self.cols


class _Engine:
    def __init__(self, spec: EnumSpec, deadline: Optional[float], multi_level: bool):
        self.spec = spec
        self.N = spec.n_points
        self.k = spec.min_line_size
        self.mode = spec.colour_filter
        self.deadline = deadline
        self.multi = multi_level
        self.cap = self.N - 6 if (self.mode and spec.require_non_collinear) else self.N
        self.colour_options = {None: (0,), "mr": (1, 2), "chromatic": (3, 1, 2)}[self.mode]
        self.found = {}       # level -> {form: (geometry, colouring)}
        self.nodes = [0] * (self.N + 1)

    # -- node bookkeeping ----------------------------------------------------

    def _check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted(
                "enumeration budget exhausted",
                {"nodes_per_level": list(self.nodes),
                 "found_per_level": {m: len(v) for m, v in self.found.items()}},
            )

    def _colour_ok(self, cols):
        if self.cap >= self.N:
            return True
        return sum(1 for c in cols if c == 1) <= self.cap and sum(1 for c in cols if c == 2) <= self.cap

    def _limits(self, cols, B):
        """Per-point bound on the need-sum, and the bound for the newest point.

        Under the MR filter a point's unmet lines are single-coloured in its
        own colour, so each needs a new point of the other colour.
        """
        m = len(cols) - 1
        if self.mode != "mr" or self.cap >= self.N:
            return [B] * m, B
        avail = {1: self.cap - sum(1 for c in cols if c == 2), 2: self.cap - sum(1 for c in cols if c == 1)}
        lim = [min(B, avail[cols[x]]) for x in range(m)]
        return lim, min(B, avail[cols[m]])

    def _line_ok(self, tally):
        """MR: at least three points of each colour lie off every line."""
        if self.mode != "mr" or self.cap >= self.N:
            return True
        ro, bo, _ = tally
        return ro <= self.N - 9 and bo <= self.N - 9

    def _deficits(self, node):
        """need-sum per point, plus stored-line tallies and the 2-line partners."""
        m, cols, k, mode = node.m, node.cols, self.k, self.mode
        D = [0] * m
        covered = [0] * m
        tallies = []
        for L in node.lines:
            t = _tally(cols, L)
            tallies.append(t)
            nd = _need(len(L), *t, k, mode)
            mask = 0
            for x in L:
                mask |= 1 << x
            for x in L:
                D[x] += nd
                covered[x] |= mask
        partners = []
        for x in range(m):
            ps = [y for y in range(m) if y != x and not covered[x] >> y & 1]
            partners.append(ps)
            for y in ps:
                D[x] += _need(2, *_tally(cols, (x, y)), k, mode)
        return D, tallies, partners

    def is_final(self, node) -> bool:
        D, _, _ = self._deficits(node)
        if any(D):
            return False
        if self.spec.require_non_collinear:
            g = node.geometry()
            if g.is_collinear():
                return False
        return True

    # -- children ------------------------------------------------------------

    def children(self, node):
        """Yield every extension of ``node`` by one point that keeps the budget."""
        m, N, k, mode = node.m, self.N, self.k, self.mode
        B = N - m - 1
        if B < 0:
            return
        D, tallies, partners = self._deficits(node)
        cols = node.cols
        lines = node.lines
        lines_at = [[] for _ in range(m)]
        for i, L in enumerate(lines):
            for x in L:
                lines_at[x].append(i)
        line_mask = []
        for L in lines:
            mask = 0
            for x in L:
                mask |= 1 << x
            line_mask.append(mask)
        line_need = [_need(len(L), *t, k, mode) for L, t in zip(lines, tallies)]

        for cv in self.colour_options:
            new_cols = cols + (cv,)
            if not self._colour_ok(new_cols):
                continue
            lim, lim_v = self._limits(new_cols, B)
            ext_need = [_need(len(L) + 1, *_add_colour(t, cv), k, mode) for L, t in zip(lines, tallies)]
            ext_ok = [self._line_ok(_add_colour(t, cv)) for t in tallies]
            two_v = [_need(2, *_tally(new_cols, (x, m)), k, mode) for x in range(m)]
            chosen_lines = []
            chosen_pairs = []

            def rec(covered, dv):
                if covered == (1 << m) - 1:
                    yield self._build(node, cv, chosen_lines, chosen_pairs)
                    return
                x = (~covered & (covered + 1)).bit_length() - 1
                # x joins v by a new 2-line
                nd = two_v[x]
                if D[x] + nd <= lim[x] and dv + nd <= lim_v:
                    yield from rec(covered | (1 << x), dv + nd)
                # v extends a stored line through x
                for i in lines_at[x]:
                    lm = line_mask[i]
                    if lm & covered or not ext_ok[i]:
                        continue
                    en = ext_need[i]
                    if dv + en > lim_v:
                        continue
                    delta = en - line_need[i]
                    if any(D[y] + delta > lim[y] for y in lines[i]):
                        continue
                    chosen_lines.append(i)
                    yield from rec(covered | lm, dv + en)
                    chosen_lines.pop()
                # v extends the 2-line {x, y}
                for y in partners[x]:
                    if y < x or covered >> y & 1:
                        continue
                    t = _tally(new_cols, (x, y, m))
                    if not self._line_ok(t):
                        continue
                    en = _need(3, *t, k, mode)
                    if dv + en > lim_v:
                        continue
                    old = _need(2, *_tally(cols, (x, y)), k, mode)
                    if D[x] - old + en > lim[x] or D[y] - old + en > lim[y]:
                        continue
                    chosen_pairs.append((x, y))
                    yield from rec(covered | (1 << x) | (1 << y), dv + en)
                    chosen_pairs.pop()

            yield from rec(0, 0)

    def _build(self, node, cv, chosen_lines, chosen_pairs):
        m = node.m
        ext = set(chosen_lines)
        new_lines = [L + (m,) if i in ext else L for i, L in enumerate(node.lines)]
        new_lines.extend((x, y, m) for x, y in chosen_pairs)
        return _Node(m + 1, tuple(sorted(new_lines)), node.cols + (cv,))

    # -- canonical augmentation ----------------------------------------------

    @staticmethod
    def _invariants(node):
        m = node.m
        sizes = [[] for _ in range(m)]
        cov = [1] * m
        for L in node.lines:
            s = len(L)
            for x in L:
                sizes[x].append(s)
                cov[x] += s - 1
        out = []
        for x in range(m):
            two = m - cov[x]
            out.append((node.cols[x], tuple(sorted(sizes[x], reverse=True)) + (2,) * two))
        return out

    def accept(self, child):
        """Return (accepted, canon result or None)."""
        inv = self._invariants(child)
        v = child.m - 1
        best = max(inv)
        if inv[v] != best:
            return False, None
        cands = [x for x in range(child.m) if inv[x] == best]
        if len(cands) == 1:
            return True, None
        res = canonical_labeling(child.geometry(), child.colouring())
        c = min(cands, key=lambda x: res.labeling[x])
        orb = orbits(child.m, res.generators)
        return orb[c] == orb[v], res

    def expand(self, node, level_hook):
        self._check_time()
        self.nodes[node.m] += 1
        level_hook(node)
        if node.m >= self.N:
            return
        if node.aut_order is None:
            node.aut_order = canonical_labeling(node.geometry(), node.colouring()).order
        seen = set()
        for child in self.children(node):
            ok, res = self.accept(child)
            if not ok:
                continue
            if node.aut_order > 1:
                if res is None:
                    res = canonical_labeling(child.geometry(), child.colouring())
                if res.form in seen:
                    continue
                seen.add(res.form)
            if res is not None:
                child.aut_order = res.order
            self.expand(child, level_hook)

    def record(self, node):
        if node.m < 3:
            return
        if not self.multi and node.m != self.N:
            return
        if not self.is_final(node):
            return
        g = node.geometry()
        col = node.colouring() if self.mode else None
        form = canonical_form(g, col)
        self.found.setdefault(node.m, {})[form] = (g, col)

    def roots(self):
        return [_Node(1, (), (c,)) for c in self.colour_options]


def _workers():
    try:
        return max(1, int(os.environ.get("SYLGAL_WORKERS", "1")))
    except ValueError:
        return 1


def _run_subtree(args):
    spec, deadline, multi, node = args
    eng = _Engine(spec, deadline, multi)
    eng.expand(node, eng.record)
    return eng.found, eng.nodes


def _collect_frontier(eng, roots, depth):
    """Nodes at level ``depth``; shallower finals are recorded along the way."""
    frontier = []

    def hook(node):
        eng.record(node)

    def walk(node):
        if node.m == depth:
            frontier.append(node)
            return
        eng._check_time()
        eng.nodes[node.m] += 1
        hook(node)
        if node.aut_order is None:
            node.aut_order = canonical_labeling(node.geometry(), node.colouring()).order
        seen = set()
        for child in eng.children(node):
            ok, res = eng.accept(child)
            if not ok:
                continue
            if node.aut_order > 1:
                if res is None:
                    res = canonical_labeling(child.geometry(), child.colouring())
                if res.form in seen:
                    continue
                seen.add(res.form)
            if res is not None:
                child.aut_order = res.order
            walk(child)

    for r in roots:
        walk(r)
    return frontier


def enumerate_geometries(spec: EnumSpec, budget: Optional[float] = None,
                         multi_level: bool = False, workers: Optional[int] = None) -> EnumResult:
    """All geometries (with colourings, under a colour filter) meeting ``spec``.

    ``budget`` is a wall-clock limit in seconds. With ``multi_level`` every
    admissible object on fewer than ``spec.n_points`` points is reported as
    well (in ``by_level``), which is complete because the pruning for a
    larger target is weaker.
    """
    start = time.monotonic()
    deadline = None if budget is None else start + budget
    workers = workers or _workers()
    eng = _Engine(spec, deadline, multi_level)
    if workers <= 1:
        for r in eng.roots():
            eng.expand(r, eng.record)
        found, nodes = eng.found, eng.nodes
    else:
        from concurrent.futures import ProcessPoolExecutor

        depth = min(spec.n_points, 6)
        frontier = _collect_frontier(eng, eng.roots(), depth)
        found, nodes = eng.found, eng.nodes
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for f, ns in pool.map(_run_subtree, [(spec, deadline, multi_level, n) for n in frontier]):
                for lvl, d in f.items():
                    found.setdefault(lvl, {}).update(d)
                for i, c in enumerate(ns):
                    nodes[i] += c
    by_level = {}
    for lvl, d in sorted(found.items()):
        by_level[lvl] = [(form, g, c) for form, (g, c) in sorted(d.items())]
    items = by_level.get(spec.n_points, [])
    return EnumResult(spec, items, nodes, time.monotonic() - start, by_level)


# -- independent oracle ----------------------------------------------------------


def _naive_isomorphic(g1: Geometry, g2: Geometry) -> bool:
    """Backtracking search for a point bijection mapping lines onto lines."""
    n = g1.n_points
    if n != g2.n_points or sorted(map(len, g1.lines)) != sorted(map(len, g2.lines)):
        return False
    sig1 = [tuple(sorted(len(g1.lines[i]) for i in g1.lines_at[x])) for x in range(n)]
    sig2 = [tuple(sorted(len(g2.lines[i]) for i in g2.lines_at[x])) for x in range(n)]
    if sorted(sig1) != sorted(sig2):
        return False
    pl1, pl2 = g1.pair_line, g2.pair_line
    size1 = [len(L) for L in g1.lines]
    size2 = [len(L) for L in g2.lines]
    phi = [-1] * n
    used = [False] * n

    def ok(x, y):
        for a in range(x):
            b = phi[a]
            i, j = pl1[x][a], pl2[y][b]
            if (i < 0) != (j < 0):
                return False
            if i >= 0 and size1[i] != size2[j]:
                return False
        # triples: collinearity must match
        for a, c in combinations(range(x), 2):
            col1 = pl1[x][a] >= 0 and pl1[x][a] == pl1[x][c]
            col2 = pl2[y][phi[a]] >= 0 and pl2[y][phi[a]] == pl2[y][phi[c]]
            if col1 != col2:
                return False
        return True

    def rec(x):
        if x == n:
            return True
        for y in range(n):
            if used[y] or sig1[x] != sig2[y]:
                continue
            if ok(x, y):
                phi[x] = y
                used[y] = True
                if rec(x + 1):
                    return True
                used[y] = False
                phi[x] = -1
        return False

    return rec(0)


BRUTE_LIMIT = 9


def brute_enumerate(n_points: int, min_line_size: int, non_collinear: bool = False) -> list[Geometry]:
    """All linear spaces on ``n_points`` with lines of size >= ``min_line_size``.

    Labelled line families are generated by plain backtracking (the line
    through the least uncovered pair is chosen among all admissible point
    sets), then reduced to isomorphism classes with a backtracking
    isomorphism test. Independent of the canonical-augmentation code.
    """
    if n_points > BRUTE_LIMIT:
        raise UnsupportedSize(f"brute_enumerate supports at most {BRUTE_LIMIT} points")
    n, k = n_points, min_line_size
    if n < 1:
        raise InvalidArguments("n_points must be >= 1")
    pairs_left = {(a, b) for a in range(n) for b in range(a + 1, n)}
    lines = []
    out = []

    def rec():
        if not pairs_left:
            g = Geometry.from_blocks(n, lines)
            out.append(g)
            return
        a, b = min(pairs_left)
        # points that can join the line through a, b: every pair with a, b must be uncovered
        cand = [x for x in range(n) if x not in (a, b) and
                (min(a, x), max(a, x)) in pairs_left and (min(b, x), max(b, x)) in pairs_left]
        for size in range(max(0, k - 2), len(cand) + 1):
            for extra in combinations(cand, size):
                block = (a, b) + extra
                bp = [(min(p, q), max(p, q)) for p, q in combinations(block, 2)]
                if any(pq not in pairs_left for pq in bp):
                    continue
                for pq in bp:
                    pairs_left.remove(pq)
                lines.append(block)
                rec()
                lines.pop()
                pairs_left.update(bp)

    rec()
    classes = []
    buckets = {}
    for g in out:
        assert validate(g)
        if non_collinear and g.is_collinear():
            continue
        # isomorphism invariant: multiset of per-point line-size profiles
        key = tuple(sorted(tuple(sorted(len(g.lines[i]) for i in g.lines_at[x])) for x in range(n)))
        bucket = buckets.setdefault(key, [])
        if not any(_naive_isomorphic(g, h) for h in bucket):
            bucket.append(g)
            classes.append(g)
    return classes
