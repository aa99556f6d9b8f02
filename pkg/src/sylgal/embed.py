"""Embeddings of abstract geometries into PG(n,q) and the extremal sizes f_{k,n}(p).

The search assigns one abstract point at a time. For every unplaced point it
keeps a bitmask of admissible PG points: for each placed pair ``a, b`` a
point on the abstract line ``ab`` must go to the PG line through the images,
and a point off it must avoid that line. This decides every triple exactly,
so a complete assignment is an embedding.

Symmetry is removed on both sides. Projectively, while every placed image is
a basis vector ``e_0..e_d`` the pointwise stabiliser contains the diagonal
torus and every matrix moving ``e_{d+1}`` anywhere outside their span, so the
next point need only try ``e_{d+1}`` and one 0/1 vector per support inside
the span; the first n+2 points in general position thus land on the standard
frame. Abstractly, a failed choice ``y -> c`` below placed points ``P`` also
rules out ``s(y) -> c`` for every automorphism ``s`` fixing ``P`` pointwise.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional

from .canon import canonical_labeling, orbits
from .errors import InvalidArguments, UnsupportedDimension
from .galois import (
    FiniteField,
    ProjPoint,
    field_make,
    is_prime,
    projective_space,
    rank,
)
from .geometry import Geometry, _bits, dimension, is_k_sg


@dataclass(frozen=True)
class Embedding:
    n: int
    field: FiniteField
    assignment: tuple          # ProjPoint per abstract point
    span_dim: int

    @property
    def q(self) -> int:
        return self.field.q


def _span_dim(f, pts) -> int:
    return rank(f, [p.coords for p in pts]) - 1


class _Search:
    def __init__(self, g: Geometry, n: int, f: FiniteField, full_span: bool, use_aut: bool, deadline=None):
        self.g = g
        self.n = n
        self.f = f
        self.space = projective_space(n, f)
        self.full_span = full_span
        self.deadline = deadline
        self.N = g.n_points
        pl = g.pair_line
        # on_line[a][b]: bitmask of abstract points on line ab other than a, b
        self.on_line = [[0] * self.N for _ in range(self.N)]
        for a in range(self.N):
            for b in range(self.N):
                if a != b and pl[a][b] >= 0:
                    self.on_line[a][b] = g.line_masks[pl[a][b]] & ~(1 << a) & ~(1 << b)
        self.basis = [self.space.index[tuple(1 if i == j else 0 for i in range(n + 1))] for j in range(n + 1)]
        self.aut_gens = ()
        if use_aut and self.N <= 64:
            self.aut_gens = canonical_labeling(g).generators
        self.nodes = 0

    # 0/1 vectors of support inside {0..d}, one per support
    def _torus_reps(self, d):
        out = []
        for bits in product((0, 1), repeat=d + 1):
            if any(bits):
                vec = tuple(bits) + (0,) * (self.n - d)
                out.append(self.space.index[vec])
        return out

    def run(self) -> Iterator[tuple]:
        full = (1 << len(self.space)) - 1
        cand = [full] * self.N
        img = [-1] * self.N
        yield from self._rec(cand, img, [], -1)

    def _stabiliser_orbit(self, placed, y):
        gens = [s for s in self.aut_gens if all(s[p] == p for p in placed)]
        if not gens:
            return [y]
        orb = orbits(self.N, gens)
        return [z for z in range(self.N) if orb[z] == orb[y]]

    def _rec(self, cand, img, placed, frame_d):
        """``frame_d``: placed images are exactly e_0..e_d (or -2 once the frame is broken)."""
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise TimeoutError
        if len(placed) == self.N:
            if self.full_span:
                if _span_dim(self.f, [self.space.proj_point(i) for i in img]) != self.n:
                    return
            yield tuple(img)
            return
        free = [y for y in range(self.N) if img[y] < 0]
        # most constrained point first; ties prefer points tied to many placed points
        y = min(free, key=lambda z: (cand[z].bit_count(), z))
        options = cand[y]
        if frame_d > -2:
            d = frame_d
            allowed = 0
            if d + 1 <= self.n:
                allowed |= 1 << self.basis[d + 1]
            if d >= 0:
                for i in self._torus_reps(d):
                    allowed |= 1 << i
            options &= allowed
        for c in _bits(options):
            if not cand[y] >> c & 1:
                continue
            new_cand = list(cand)
            new_img = list(img)
            new_img[y] = c
            ok = True
            bit = 1 << c
            for z in free:
                if z != y:
                    new_cand[z] &= ~bit
            space = self.space
            for a in placed:
                lm = space.line_mask(img[a], c)
                on = self.on_line[a][y]
                for z in free:
                    if z == y:
                        continue
                    if on >> z & 1:
                        new_cand[z] &= lm
                    else:
                        new_cand[z] &= ~lm
                    if not new_cand[z]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                if frame_d > -2 and frame_d + 1 <= self.n and c == self.basis[frame_d + 1]:
                    nd = frame_d + 1
                else:
                    nd = -2
                found = False
                for res in self._rec(new_cand, new_img, placed + [y], nd):
                    found = True
                    yield res
                if found:
                    continue
            # no embedding extends placed + (y -> c); neither does any image of
            # y under automorphisms fixing the placed points
            if self.aut_gens:
                for z in self._stabiliser_orbit(placed, y):
                    if z != y and img[z] < 0:
                        cand[z] &= ~bit
        return


def embeds_into(g: Geometry, n: int, f: FiniteField, full_span: bool = False,
                use_aut: bool = True, deadline: Optional[float] = None) -> Optional[Embedding]:
    """An embedding of ``g`` into PG(n, f), or None.

    With ``full_span`` only embeddings whose image spans all of PG(n, f) count.
    """
    if n < 1:
        raise InvalidArguments("dimension must be >= 1")
    if dimension(g) > n:
        raise UnsupportedDimension(f"geometry of dimension {dimension(g)} cannot embed in PG({n},{f.q})")
    s = _Search(g, n, f, full_span, use_aut, deadline)
    for img in s.run():
        pts = tuple(s.space.proj_point(i) for i in img)
        return Embedding(n, f, pts, _span_dim(f, pts))
    return None


def all_embeddings(g: Geometry, n: int, f: FiniteField, limit: Optional[int] = None) -> list[Embedding]:
    """Embeddings with the frame normalisation but no automorphism pruning.

    Every embedding is projectively equivalent to one in the list.
    """
    if dimension(g) > n:
        raise UnsupportedDimension(f"geometry of dimension {dimension(g)} cannot embed in PG({n},{f.q})")
    s = _Search(g, n, f, False, False)
    out = []
    for img in s.run():
        pts = tuple(s.space.proj_point(i) for i in img)
        out.append(Embedding(n, f, pts, _span_dim(f, pts)))
        if limit is not None and len(out) >= limit:
            break
    return out


def verify_embedding(g: Geometry, e: Embedding) -> bool:
    """Injective, and a triple is collinear in ``g`` iff its images are collinear."""
    pts = e.assignment
    if len(pts) != g.n_points:
        return False
    f = e.field
    keys = [p.coords for p in pts]
    if len(set(keys)) != len(keys):
        return False
    for p in pts:
        if p.field != f or len(p.coords) != e.n + 1:
            return False
    pl = g.pair_line
    N = g.n_points
    for a, b in combinations(range(N), 2):
        for c in range(b + 1, N):
            abstract = pl[a][b] >= 0 and pl[a][b] == pl[a][c]
            concrete = rank(f, (keys[a], keys[b], keys[c])) <= 2
            if abstract != concrete:
                return False
    return _span_dim(f, pts) == e.span_dim


def unpruned_embeds(g: Geometry, n: int, f: FiniteField) -> bool:
    """Oracle: assign points in index order to every PG point, checking triples directly.

    No frame and no symmetry reduction. Collinearity of PG triples is
    tabulated once by rank computation, independently of the line tables
    used by :func:`embeds_into`.
    """
    space = projective_space(n, f)
    pts = list(space.points)
    P = len(pts)
    # on[a][b]: bitmask of PG points c with {a, b, c} of rank <= 2
    on = [[0] * P for _ in range(P)]
    for a in range(P):
        for b in range(a + 1, P):
            m = 0
            for c in range(P):
                if rank(f, (pts[a], pts[b], pts[c])) <= 2:
                    m |= 1 << c
            on[a][b] = on[b][a] = m
    pl = g.pair_line
    N = g.n_points
    img = []

    full = (1 << P) - 1

    def rec(i):
        if i == N:
            return True
        allowed = full
        for x in img:
            allowed &= ~(1 << x)
        for a in range(i):
            for b in range(a + 1, i):
                line = on[img[a]][img[b]]
                if pl[a][b] >= 0 and pl[a][b] == pl[a][i]:
                    allowed &= line
                else:
                    allowed &= ~line
        for c in range(P):
            if allowed >> c & 1:
                img.append(c)
                if rec(i + 1):
                    return True
                img.pop()
        return False

    return rec(0)


def field_embedding(small: FiniteField, big: FiniteField) -> list[int]:
    """Images of the elements of ``small`` under a field embedding into ``big``."""
    if small.p != big.p or big.k % small.k:
        raise InvalidArguments(f"{small!r} is not a subfield of {big!r}")
    mod = small.modulus
    root = None
    for x in big.elements():
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, x), c % big.p)
        if acc == 0:
            root = x
            break
    out = []
    for a in small.elements():
        acc = 0
        for c in reversed(small.to_coeffs(a)):
            acc = big.add(big.mul(acc, root), c)
        out.append(acc)
    return out


def transport(e_coords, big: FiniteField, n: Optional[int] = None) -> tuple:
    """Carry ProjPoints over a subfield into ``big`` (optionally padding to PG(n))."""
    small = e_coords[0].field
    m = field_embedding(small, big)
    out = []
    for p in e_coords:
        v = tuple(m[x] for x in p.coords)
        if n is not None and len(v) < n + 1:
            v = v + (0,) * (n + 1 - len(v))
        out.append(ProjPoint(big, v))
    return tuple(out)


# -- extremal function -----------------------------------------------------------

CITED_LOWER = {
    (3, 2): lambda p: 7 if p == 2 else 9,
    (3, 3): lambda p: {2: 15, 3: 27}.get(p, 51),
    (4, 2): lambda p: {2: 16, 3: 13}.get(p, 20),
}
CITED_EXACT = {
    (3, 2): lambda p: True,
    (3, 3): lambda p: p in (2, 3),
    (4, 2): lambda p: p in (2, 3, 5),
}
# largest size for which exhaustive k-SG enumeration is run by default
ENUM_LIMIT = {3: 14, 4: 19}


@dataclass
class FminResult:
    k: int
    n: int
    p: int
    horizon: int
    lower: Optional[int]
    lower_provenance: str            # "exhaustive" | "cited-theorem" | "none"
    upper: Optional[int]
    witness: Optional[Embedding]
    witness_name: str = ""
    horizon_limited: bool = False
    notes: list = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return self.lower is not None and self.upper is not None and self.lower == self.upper

    def tsv_header(self) -> str:
        return "\t".join(["k", "n", "p", "horizon", "lower", "lower_provenance", "upper",
                          "upper_witness", "witness_q", "resolved", "horizon_limited"])

    def tsv_row(self) -> str:
        wq = str(self.witness.q) if self.witness else "-"
        vals = [self.k, self.n, self.p, self.horizon,
                "-" if self.lower is None else self.lower, self.lower_provenance,
                "-" if self.upper is None else self.upper, self.witness_name or "-", wq,
                "yes" if self.resolved else "no", "yes" if self.horizon_limited else "no"]
        return "\t".join(str(v) for v in vals)


def _catalogue(k, n, p, size_cap):
    """Constructions that may serve as upper-bound witnesses, smallest first."""
    from . import constructions as C
    from .galois import gf

    out = []

    def add(thunk):
        try:
            cfg = thunk()
        except Exception:
            return
        if cfg.geometry.n_points <= size_cap:
            out.append(cfg)

    if n == 2:
        add(lambda: C.pg_config(2, gf(2)))
        add(lambda: C.ag_config(2, gf(3)))
        add(lambda: C.affine_plus_config(gf(3)))
        add(lambda: C.pg_config(2, gf(3)))
        add(lambda: C.ag_config(2, gf(4)))
        add(lambda: C.affine_plus_config(gf(4)))
        for name in C.TABLE4_NAMES:
            add(lambda name=name: C.table4_deletion(name))
        if p >= 5:
            add(lambda: C.parallel_lines_config(p, 4))
        add(lambda: C.pg_config(2, gf(4)))
        add(lambda: C.ag_config(2, gf(5)))
    if n == 3:
        add(lambda: C.pg_config(3, gf(2)))
        add(lambda: C.ag_config(3, gf(3)))
        if p >= 3:
            add(lambda: C.parallel_planes_config(p))
    out = [c for c in out if is_k_sg(c.geometry, k)]
    out.sort(key=lambda c: c.geometry.n_points)
    return out


def _embed_over_char(g, n, p, horizon, native=None, deadline=None):
    """First embedding of ``g`` spanning PG(n, p^j) for j = 1..horizon."""
    for j in range(1, horizon + 1):
        f = field_make(p, j)
        if native is not None and native[0].field.p == p and j % native[0].field.k == 0 \
                and len(native[0].coords) == n + 1:
            pts = transport(native, f)
            e = Embedding(n, f, pts, _span_dim(f, pts))
            if e.span_dim == n and verify_embedding(g, e):
                return e
            continue
        if dimension(g) > n:
            return None
        e = embeds_into(g, n, f, full_span=True, deadline=deadline)
        if e is not None:
            return e
    return None


def fmin(k: int, n: int, p: int, horizon: int = 2, size_cap: int = 30,
         enum_limit: Optional[int] = None, enum_budget: Optional[float] = None) -> FminResult:
    """Bounds on the least size of an n-dimensional k-SG configuration in characteristic p.

    Sizes up to ``enum_limit`` are settled exhaustively: every non-collinear
    k-SG geometry of abstract dimension >= n is tried over GF(p^j), j <= horizon.
    Beyond that the lower bound is the cited value (when one is known) and
    the upper bound comes from the construction catalogue.
    """
    from .enumeration import EnumSpec, enumerate_geometries
    from .errors import BudgetExhausted

    if k < 3 or n < 2:
        raise InvalidArguments("fmin needs k >= 3 and n >= 2")
    if not is_prime(p):
        raise InvalidArguments(f"{p} is not prime")
    if horizon < 1:
        raise InvalidArguments("horizon must be >= 1")
    limit = ENUM_LIMIT.get(k, 0) if enum_limit is None else enum_limit
    limit = min(limit, size_cap)
    res = FminResult(k, n, p, horizon, None, "none", None, None)

    exhaustive_upto = 2
    rejected = False            # some candidate failed only on the field search
    start = time.monotonic()
    for s in range(3, limit + 1):
        left = None if enum_budget is None else enum_budget - (time.monotonic() - start)
        if left is not None and left <= 0:
            res.notes.append(f"enumeration budget exhausted before size {s}")
            break
        try:
            er = enumerate_geometries(EnumSpec(s, k, True), budget=left)
        except BudgetExhausted:
            res.notes.append(f"enumeration budget exhausted at size {s}")
            break
        hit = None
        for _, g, _ in er.items:
            if dimension(g) < n:
                continue
            e = _embed_over_char(g, n, p, horizon)
            if e is not None:
                hit = e
                break
            rejected = True
        if hit is not None:
            res.lower, res.lower_provenance = s, "exhaustive"
            res.upper, res.witness, res.witness_name = s, hit, f"enumerated-{s}"
            res.horizon_limited = rejected
            return res
        exhaustive_upto = s
    if exhaustive_upto >= 3:
        res.lower, res.lower_provenance = exhaustive_upto + 1, "exhaustive"
        res.horizon_limited = rejected

    cited = CITED_LOWER.get((k, n))
    if cited is not None and (res.lower is None or cited(p) > res.lower):
        res.lower, res.lower_provenance = cited(p), "cited-theorem"
        res.horizon_limited = False

    for cfg in _catalogue(k, n, p, size_cap):
        if res.lower is not None and cfg.geometry.n_points < res.lower:
            continue
        e = _embed_over_char(cfg.geometry, n, p, horizon, native=cfg.coords)
        if e is not None:
            res.upper, res.witness, res.witness_name = cfg.geometry.n_points, e, cfg.name
            break
    if res.upper is None:
        res.notes.append(f"no witness up to size {size_cap}")
    return res
