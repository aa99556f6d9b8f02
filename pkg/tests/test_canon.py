import random
from itertools import permutations

import pytest

from sylgal import constructions as C
from sylgal.canon import (
    are_isomorphic,
    automorphism_group_order,
    canonical_form,
    canonical_form_up_to_swap,
    canonical_labeling,
)
from sylgal.enumeration import EnumSpec, _naive_isomorphic, enumerate_geometries
from sylgal.errors import UnsupportedSize
from sylgal.galois import ag_as_geometry, gf, pg_as_geometry
from sylgal.geometry import Geometry, permute, validate


def _brute_aut(g, coloring=None):
    lines = set(g.all_lines())
    n = g.n_points
    count = 0
    for p in permutations(range(n)):
        if coloring is not None and any(coloring[p[x]] != coloring[x] for x in range(n)):
            continue
        if all(tuple(sorted(p[x] for x in L)) in lines for L in g.lines):
            count += 1
    return count


def _random_geometry(rng, n):
    """Random linear space: greedily add random blocks on uncovered pairs."""
    lines = []
    used = set()
    for _ in range(n * 2):
        size = rng.choice((3, 3, 4))
        if size > n:
            break
        pts = tuple(sorted(rng.sample(range(n), size)))
        pairs = {(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]}
        if pairs & used:
            continue
        used |= pairs
        lines.append(pts)
    return Geometry(n, tuple(lines))


def test_examples(fano, ag23):
    assert automorphism_group_order(fano) == 168
    assert automorphism_group_order(ag23) == 432
    assert automorphism_group_order(Geometry.collinear(4)) == 24
    assert canonical_form(fano) != canonical_form(ag23)
    inf = C.inflection_config(gf(7)).geometry
    assert canonical_form(inf) == canonical_form(ag23)
    assert _naive_isomorphic(inf, ag23)


def test_brute_force_orders(fano):
    assert _brute_aut(fano) == 168
    assert _brute_aut(Geometry.collinear(4)) == 24


def test_larger_orders():
    assert automorphism_group_order(pg_as_geometry(2, gf(3))[0]) == 5616
    assert automorphism_group_order(ag_as_geometry(2, gf(4))[0]) == 5760
    assert automorphism_group_order(pg_as_geometry(3, gf(2))[0]) == 20160
    with pytest.raises(UnsupportedSize):
        automorphism_group_order(pg_as_geometry(2, gf(8))[0])


def test_permutation_invariance(seed):
    rng = random.Random(seed)
    gs = [pg_as_geometry(2, gf(2))[0], ag_as_geometry(2, gf(3))[0], C.affine_plus_config(gf(3)).geometry,
          C.table4_deletion("20.2").geometry]
    for g in gs:
        base = canonical_form(g)
        col = tuple(rng.choice((1, 2, 3)) for _ in range(g.n_points))
        cbase = canonical_form(g, col)
        for _ in range(60):
            perm = list(range(g.n_points))
            rng.shuffle(perm)
            h = permute(g, perm)
            hc = [0] * g.n_points
            for x, y in enumerate(perm):
                hc[y] = col[x]
            assert canonical_form(h) == base
            assert canonical_form(h, hc) == cbase


def test_isomorphism_maps_lines(fano, seed):
    rng = random.Random(seed)
    perm = list(range(7))
    rng.shuffle(perm)
    h = permute(fano, perm)
    phi = are_isomorphic(fano, None, h, None)
    assert phi is not None
    assert permute(fano, phi) == h
    assert are_isomorphic(pg_as_geometry(2, gf(3))[0], None, ag_as_geometry(2, gf(4))[0], None) is None


def test_random_small_against_brute(seed):
    rng = random.Random(seed)
    for _ in range(60):
        n = rng.randint(4, 7)
        g = _random_geometry(rng, n)
        assert validate(g)
        col = tuple(rng.choice((1, 2, 3)) for _ in range(n))
        assert automorphism_group_order(g, col) == _brute_aut(g, col)
        perm = list(range(n))
        rng.shuffle(perm)
        h = permute(g, perm)
        assert canonical_form(h) == canonical_form(g)


def test_forms_agree_with_naive_iso_on_enumeration():
    items = []
    for n in range(5, 9):
        items += [g for _, g, _ in enumerate_geometries(EnumSpec(n, 2)).items if n <= 7]
        if n == 8:
            items += [g for _, g, _ in enumerate_geometries(EnumSpec(n, 3)).items]
    rng = random.Random(5)
    sample = rng.sample(items, 25)
    for a in sample:
        for b in sample:
            same = canonical_form(a) == canonical_form(b)
            assert same == (a.n_points == b.n_points and _naive_isomorphic(a, b))


def test_swap_form():
    g = Geometry.collinear(3)
    assert canonical_form_up_to_swap(g, (1, 1, 2)) == canonical_form_up_to_swap(g, (2, 2, 1))
    assert canonical_form(g, (1, 1, 2)) != canonical_form(g, (2, 2, 1))


def test_labeling_is_permutation(ag23):
    res = canonical_labeling(ag23)
    assert sorted(res.labeling) == list(range(9))
    assert res.order == 432
