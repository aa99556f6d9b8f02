"""Arithmetic in GF(p^k) and coordinate models of PG(n,q) and AG(n,q).

Field elements are plain ints: the element with coefficient vector
``(c0, ..., c_{k-1})`` (polynomial basis, ``c0`` the constant term) is
``c0 + c1*p + ... + c_{k-1}*p^(k-1)``. The prime subfield is ``0..p-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidArguments, UnsupportedField
from .geometry import Geometry

MAX_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**k``; raises InvalidArguments if q is not a prime power."""
    if q < 2:
        raise InvalidArguments(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise InvalidArguments(f"{q} is not a prime power")
    return p, k


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# polynomials over GF(p): coefficient lists, constant term first


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if _poly_mod(f, list(low) + [1], p) == []:
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k (leading coefficients compared first)."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        f = low + [1]
        if f[0] == 0:
            continue
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """GF(p^k) with table-driven multiplication."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise InvalidArguments(f"{p} is not prime")
        if k < 1:
            raise InvalidArguments("extension degree must be >= 1")
        q = p**k
        if q > MAX_ORDER:
            raise UnsupportedField(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.k, self.q = p, k, q
        self.modulus = least_irreducible(p, k)
        self._build_tables()

    def _from_poly(self, a: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        digits = [[(a // p**i) % p for i in range(k)] for a in range(q)]
        self._digits = digits
        if p == 2:
            self._add_table = None
        else:
            weights = [p**i for i in range(k)]
            self._add_table = [
                [sum(((da[i] + db[i]) % p) * weights[i] for i in range(k)) for db in digits] for da in digits
            ]
            self._neg = [sum(((-da[i]) % p) * weights[i] for i in range(k)) for da in digits]
        # primitive element by search; exp/log tables
        order = q - 1
        factors = _prime_factors(order) if order > 1 else []

        def mulpoly(a, b):
            prod = [0] * (len(a) + len(b))
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            return _poly_mod(prod, self.modulus, p)

        def power(a, e):
            result, base = [1], list(a)
            while e:
                if e & 1:
                    result = mulpoly(result, base)
                base = mulpoly(base, base)
                e >>= 1
            return result

        gen = None
        for cand in range(1, q):
            poly = digits[cand]
            if all(power(poly, order // r) != [1] for r in factors):
                gen = poly
                break
        exp = [0] * (2 * order)
        log = [0] * q
        cur = [1]
        for i in range(order):
            v = self._from_poly(cur)
            exp[i] = exp[i + order] = v
            log[v] = i
            cur = mulpoly(cur, gen)
        self._exp, self._log = exp, log
        self.generator = self._from_poly(gen)

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self._add_table is None:
            return a ^ b
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        if self._add_table is None:
            return a
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def order(self, a: int) -> int:
        """Multiplicative order of a non-zero element."""
        n = self.q - 1
        return n // gcd(self._log[a], n)

    def elements(self) -> range:
        return range(self.q)

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits[a])

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k or any(not 0 <= c < self.p for c in coeffs):
            raise InvalidArguments(f"bad coefficient vector {tuple(coeffs)} for GF({self.q})")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def format(self, a: int) -> str:
        return ",".join(str(c) for c in self._digits[a])

    def parse(self, text: str) -> int:
        return self.from_coeffs([int(t) for t in text.split(",")])

    def is_subfield_element(self, a: int, d: int) -> bool:
        """True if ``a`` lies in the subfield GF(p^d) (requires d | k)."""
        return self.pow(a, self.p**d) == a

    @property
    def key(self) -> tuple:
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GF({self.q})" if self.k == 1 else f"GF({self.p}^{self.k})"


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


def gf(q: int) -> FiniteField:
    """Field of order q (q a prime power)."""
    return field_make(*prime_power(q))


def elements_of_order(f: FiniteField, m: int) -> list[int]:
    if m < 1:
        raise InvalidArguments("order must be >= 1")
    n = f.q - 1
    if n % m:
        return []
    return sorted(f._exp[i] for i in range(n) if gcd(i, n) == n // m)


# projective points


@dataclass(frozen=True)
class ProjPoint:
    field: FiniteField
    coords: tuple

    def __repr__(self):
        return f"ProjPoint({self.field!r}, {self.coords})"


def normalize(f: FiniteField, vec: Sequence[int]) -> tuple:
    """Scale so the first non-zero coordinate is 1."""
    for c in vec:
        if c:
            inv = f.inv(c)
            return tuple(f.mul(inv, x) for x in vec)
    raise InvalidArguments("the zero vector is not a projective point")


def proj_point(f: FiniteField, vec: Sequence[int]) -> ProjPoint:
    return ProjPoint(f, normalize(f, vec))


def rank(f: FiniteField, rows: Iterable[Sequence[int]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    r = 0
    cols = len(m[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _common_field(pts: Sequence[ProjPoint]) -> FiniteField:
    f = pts[0].field
    n = len(pts[0].coords)
    for pt in pts:
        if pt.field != f or len(pt.coords) != n:
            raise InvalidArguments("points must share a field and a dimension")
    return f


def collinear(pts: Sequence[ProjPoint]) -> bool:
    if len(pts) < 2:
        raise InvalidArguments("collinear needs at least 2 points")
    f = _common_field(pts)
    return rank(f, [p.coords for p in pts]) <= 2


def span_dimension(pts: Sequence[ProjPoint]) -> int:
    f = _common_field(pts)
    return rank(f, [p.coords for p in pts]) - 1


class ProjectiveSpace:
    """PG(n,q) with points indexed in normalised lexicographic order.

    Lines are materialised lazily, one per requested pair, and cached for
    every pair on them.
    """

    def __init__(self, n: int, f: FiniteField):
        if n < 1:
            raise InvalidArguments("projective dimension must be >= 1")
        self.n, self.field = n, f
        q = f.q
        pts = []
        for lead in range(n + 1):
            for tail in product(range(q), repeat=n - lead):
                pts.append((0,) * lead + (1,) + tail)
        pts.sort()
        self.points = pts
        self.index = {v: i for i, v in enumerate(pts)}
        self._pair = {}
        self._lines = []
        self._line_masks = []

    def __len__(self):
        return len(self.points)

    def line_index(self, i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        li = self._pair.get(key)
        if li is not None:
            return li
        f = self.field
        u, v = self.points[i], self.points[j]
        members = {j}
        for t in range(f.q):
            w = tuple(f.add(a, f.mul(t, b)) for a, b in zip(u, v))
            members.add(self.index[normalize(f, w)])
        line = tuple(sorted(members))
        li = len(self._lines)
        self._lines.append(line)
        m = 0
        for a in line:
            m |= 1 << a
        self._line_masks.append(m)
        for x in range(len(line)):
            for y in range(x + 1, len(line)):
                self._pair[(line[x], line[y])] = li
        return li

    def line(self, i: int, j: int) -> tuple:
        return self._lines[self.line_index(i, j)]

    def line_mask(self, i: int, j: int) -> int:
        return self._line_masks[self.line_index(i, j)]

    def all_lines(self) -> list[tuple]:
        N = len(self.points)
        for i in range(N):
            for j in range(i + 1, N):
                if (i, j) not in self._pair:
                    self.line_index(i, j)
        return list(self._lines)

    def coordinate_span_mask(self, d: int) -> int:
        """Points whose coordinates after position d are all zero."""
        m = 0
        for i, v in enumerate(self.points):
            if not any(v[d + 1:]):
                m |= 1 << i
        return m

    def proj_point(self, i: int) -> ProjPoint:
        return ProjPoint(self.field, self.points[i])


@lru_cache(maxsize=64)
def projective_space(n: int, f: FiniteField) -> ProjectiveSpace:
    return ProjectiveSpace(n, f)


def geometry_from_points(space: ProjectiveSpace, idxs: Sequence[int]) -> Geometry:
    """Incidence structure induced on the given PG points (geometry index = list position)."""
    pos = {p: i for i, p in enumerate(idxs)}
    if len(pos) != len(idxs):
        raise InvalidArguments("repeated point in configuration")
    covered = set()
    blocks = []
    for a in range(len(idxs)):
        for b in range(a + 1, len(idxs)):
            if (a, b) in covered:
                continue
            line = space.line(idxs[a], idxs[b])
            members = sorted(pos[x] for x in line if x in pos)
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    covered.add((members[x], members[y]))
            if len(members) >= 3:
                blocks.append(members)
    return Geometry(len(idxs), tuple(blocks))


def geometry_from_coords(coords: Sequence[ProjPoint]) -> Geometry:
    f = _common_field(coords)
    space = projective_space(len(coords[0].coords) - 1, f)
    return geometry_from_points(space, [space.index[normalize(f, c.coords)] for c in coords])


def pg_as_geometry(n: int, f: FiniteField) -> tuple[Geometry, list[ProjPoint]]:
    space = projective_space(n, f)
    lines = space.all_lines()
    return Geometry(len(space), tuple(lines)), [space.proj_point(i) for i in range(len(space))]


def ag_as_geometry(n: int, f: FiniteField) -> tuple[Geometry, list[ProjPoint]]:
    """AG(n,q) with homogeneous coordinates ``(1, a1, ..., an)``."""
    if n < 1:
        raise InvalidArguments("affine dimension must be >= 1")
    vecs = list(product(range(f.q), repeat=n))
    coords = [ProjPoint(f, (1,) + v) for v in vecs]
    space = projective_space(n, f)
    g = geometry_from_points(space, [space.index[c.coords] for c in coords])
    return g, coords
