"""Named configurations: coordinates over a finite field, induced geometry, colouring.

Every constructor computes the geometry from the coordinates, so the
incidence structure can never drift from the point set that defines it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .chromatic import BLUE, BOTH, RED, all_bicoloured
from .errors import InvalidArguments, UnsupportedField
from .galois import (
    FiniteField,
    ProjPoint,
    elements_of_order,
    geometry_from_coords,
    gf,
    normalize,
    projective_space,
)
from .geometry import Geometry


@dataclass(frozen=True)
class NamedConfig:
    name: str
    geometry: Geometry
    coords: tuple
    coloring: Optional[tuple] = None

    @property
    def field(self) -> FiniteField:
        return self.coords[0].field

    @property
    def dim(self) -> int:
        return len(self.coords[0].coords) - 1


def config_from_vectors(name, f: FiniteField, vectors, coloring="bicoloured") -> NamedConfig:
    coords = tuple(ProjPoint(f, normalize(f, v)) for v in vectors)
    if len(set(c.coords for c in coords)) != len(coords):
        raise InvalidArguments(f"{name}: repeated point")
    g = geometry_from_coords(coords)
    if coloring == "bicoloured":
        coloring = all_bicoloured(len(coords))
    return NamedConfig(name, g, coords, coloring)


def pg_config(n: int, f: FiniteField) -> NamedConfig:
    space = projective_space(n, f)
    return config_from_vectors(f"PG({n},{f.q})", f, space.points)


def ag_config(n: int, f: FiniteField) -> NamedConfig:
    vecs = [(1,) + v for v in product(range(f.q), repeat=n)]
    return config_from_vectors(f"AG({n},{f.q})", f, vecs)


def affine_plus_config(f: FiniteField) -> NamedConfig:
    """AG(2,q) together with the point at infinity ``(0,0,1)``."""
    vecs = [(1, a, b) for a, b in product(range(f.q), repeat=2)] + [(0, 0, 1)]
    return config_from_vectors(f"AG(2,{f.q})+", f, vecs)


def inflection_config(f: FiniteField) -> NamedConfig:
    """The nine points ``(0,-1,w), (w,0,-1), (-1,w,0)`` with ``w^3 = 1``."""
    roots = elements_of_order(f, 3)
    if not roots:
        raise UnsupportedField(f"{f!r} has no primitive cube root of unity")
    ws = [1] + roots
    m1 = f.neg(1)
    vecs = [(0, m1, w) for w in ws] + [(w, 0, m1) for w in ws] + [(m1, w, 0) for w in ws]
    return config_from_vectors("inflection", f, vecs)


def additive_span(f: FiniteField, gens: Iterable[int]) -> list[int]:
    group = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = f.add(x, g)
            if y not in group:
                group.add(y)
                frontier.append(y)
    return sorted(group)


def additive_group_config(f: FiniteField, G: Optional[Sequence[int]] = None,
                          include_center: bool = False, close: bool = False) -> NamedConfig:
    """Points ``(g,0,1), (g,1,1), (-g,1,0)`` for ``g`` in an additive subgroup ``G``.

    The three lines ``y=0``, ``y=z``, ``z=0`` meet in ``(1,0,0)``, added when
    ``include_center``. ``G=None`` means the whole field; with ``close`` the
    given elements are replaced by the subgroup they generate.
    """
    if G is None:
        G = list(f.elements())
    elif close:
        G = additive_span(f, G)
    else:
        G = sorted(set(G))
        if any(f.add(a, b) not in G for a in G for b in G):
            raise InvalidArguments("G is not closed under addition")
    need = 2 if include_center else 3
    if len(G) < need:
        raise InvalidArguments(f"|G| must be at least {need}")
    vecs = [(g, 0, 1) for g in G] + [(g, 1, 1) for g in G] + [(f.neg(g), 1, 0) for g in G]
    if include_center:
        vecs.append((1, 0, 0))
    return config_from_vectors("additive", f, vecs)


def additive_residues(cfg: NamedConfig) -> list[int]:
    """Sizes of the three lines through the common point, that point excluded."""
    center = (1, 0, 0)
    tests = [lambda v: v[1] == 0, lambda v: v[1] == v[2], lambda v: v[2] == 0]
    return [sum(1 for c in cfg.coords if c.coords != center and t(c.coords)) for t in tests]


def multiplicative_subgroup(f: FiniteField, m: int) -> list[int]:
    if (f.q - 1) % m:
        raise InvalidArguments(f"{m} does not divide {f.q - 1}")
    step = (f.q - 1) // m
    return sorted(f.pow(f.generator, step * i) for i in range(m))


def multiplicative_group_config(f: FiniteField, G: Sequence[int]) -> NamedConfig:
    """Points ``(1,g,0), (1,0,g), (0,-g,1)`` for ``g`` in a multiplicative subgroup ``G``."""
    G = sorted(set(G))
    if len(G) < 3:
        raise InvalidArguments("|G| must be at least 3")
    if 0 in G or any(f.mul(a, b) not in G for a in G for b in G):
        raise InvalidArguments("G is not a subgroup of the multiplicative group")
    vecs = [(1, g, 0) for g in G] + [(1, 0, g) for g in G] + [(0, f.neg(g), 1) for g in G]
    return config_from_vectors("multiplicative", f, vecs)


def parallel_planes_config(p: int) -> NamedConfig:
    """Points of AG(3,p) whose last coordinate is 0, 1 or 2."""
    if p < 3:
        raise InvalidArguments("parallel planes need p >= 3")
    f = gf(p)
    vecs = [(1, a, b, c) for c in range(3) for a, b in product(range(p), repeat=2)]
    return config_from_vectors(f"parallel-planes({p})", f, vecs)


def parallel_lines_config(p: int, m: int = 4) -> NamedConfig:
    """Points of AG(2,p) on the ``m`` parallel lines ``y = 0..m-1``."""
    if m < 1 or m > p:
        raise InvalidArguments(f"AG(2,{p}) has no {m} distinct parallel lines")
    f = gf(p)
    vecs = [(1, a, b) for b in range(m) for a in range(p)]
    return config_from_vectors(f"parallel-lines({p},{m})", f, vecs)


TABLE4_NAMES = ("20.1", "20.2", "21.1", "21.2", "22.8", "24.1", "24.2", "AG(2,4)+")


def table4_deletion(name: str) -> NamedConfig:
    """4-SG geometries obtained from small planes by deleting points.

    Coordinates are ``(x0,x1,x2)``; where a choice is involved the deleted
    lines are ``x0 = 0`` and ``x1 = 0`` (meeting in ``(0,0,1)``) and kept
    points are the least ones in normalised lexicographic order.
    """
    if name == "AG(2,4)+":
        cfg = affine_plus_config(gf(4))
        return NamedConfig(name, cfg.geometry, cfg.coords, cfg.coloring)
    if name not in TABLE4_NAMES:
        raise InvalidArguments(f"unknown Table 4 construction {name!r}; known: {', '.join(TABLE4_NAMES)}")
    q = 4 if name == "20.1" else 5
    f = gf(q)
    pts = list(projective_space(2, f).points)
    on_l0 = lambda v: v[0] == 0      # noqa: E731
    on_l1 = lambda v: v[1] == 0      # noqa: E731
    meet = (0, 0, 1)
    if name == "20.1":
        keep = pts[1:]
    elif name == "20.2":
        keep = [v for v in pts if not on_l0(v) and v[2] != 0]
    elif name == "21.1":
        gone = {(1, a, 0) for a in range(4)}
        keep = [v for v in pts if not on_l0(v) and v not in gone]
    elif name == "21.2":
        keep = [v for v in pts if not (on_l0(v) or on_l1(v)) or v == meet]
    elif name == "22.8":
        extra = {min(v for v in pts if on_l0(v) and v != meet), min(v for v in pts if on_l1(v) and v != meet)}
        keep = [v for v in pts if not (on_l0(v) or on_l1(v)) or v in extra]
    elif name == "24.1":
        keep = [v for v in pts if not on_l0(v) and v != (1, 0, 0)]
    else:  # 24.2
        extra = set(sorted(v for v in pts if on_l0(v) and v != meet)[:3]) | {meet}
        keep = [v for v in pts if not (on_l0(v) or on_l1(v)) or v in extra]
    return config_from_vectors(name, f, keep)


def van_wamelen_11(f: FiniteField) -> NamedConfig:
    """AG(2,3) bicoloured plus two points at infinity, one blue-only and one red-only."""
    if f.p != 3:
        raise UnsupportedField("this configuration lives in characteristic 3")
    vecs = [(1, a, b) for a, b in product(range(3), repeat=2)] + [(0, 1, 0), (0, 0, 1)]
    coloring = (BOTH,) * 9 + (BLUE, RED)
    return config_from_vectors("van-wamelen-11", f, vecs, coloring)


def table2_configs(f3: Optional[FiniteField] = None) -> dict:
    """The three small chromatic geometries, with coordinates over their natural fields."""
    f3 = f3 or gf(3)
    return {
        "PG(2,2)": pg_config(2, gf(2)),
        "AG(2,3)": ag_config(2, f3),
        "AG(2,3)+": affine_plus_config(f3),
    }
