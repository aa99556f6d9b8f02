import random
from itertools import product

import pytest

from sylgal.errors import InvalidArguments
from sylgal.galois import (
    ProjPoint,
    ag_as_geometry,
    collinear,
    elements_of_order,
    field_make,
    gf,
    is_prime,
    pg_as_geometry,
    rank,
)
from sylgal.geometry import validate

SMALL_Q = [q for q in range(2, 65) if sum(1 for p in range(2, q + 1) if is_prime(p) and q % p == 0) == 1]


def test_examples():
    f = field_make(2, 2)
    assert f.modulus == (1, 1, 1)
    x = f.from_coeffs((0, 1))
    assert f.mul(x, x) == f.add(x, 1)
    assert field_make(7, 1).inv(3) == 5
    f25 = field_make(5, 2)
    assert f25.q == 25 and len([a for a in f25.elements() if a]) == 24
    with pytest.raises(InvalidArguments):
        field_make(6, 1)


@pytest.mark.parametrize("q", [q for q in SMALL_Q if q <= 27])
def test_field_axioms(q):
    f = gf(q)
    E = list(f.elements())
    for a in E:
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b in product(E, E):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
    rng = random.Random(q)
    for _ in range(300):
        a, b, c = (rng.choice(E) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)


@pytest.mark.parametrize("q", [q for q in SMALL_Q if q > 27])
def test_field_axioms_sampled(q):
    f = gf(q)
    E = list(f.elements())
    rng = random.Random(q)
    for _ in range(2000):
        a, b, c = (rng.choice(E) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_elements_of_order():
    assert elements_of_order(gf(7), 3) == [2, 4]
    assert elements_of_order(gf(5), 3) == []
    f4 = gf(4)
    assert sorted(elements_of_order(f4, 3)) == [2, 3]
    for q in SMALL_Q:
        f = gf(q)
        roots = elements_of_order(f, 3)
        assert bool(roots) == ((q - 1) % 3 == 0)
        assert all(f.pow(r, 3) == 1 and r != 1 for r in roots)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (2, 7)])
def test_space_sizes(n, q):
    f = gf(q)
    g, coords = pg_as_geometry(n, f)
    assert g.n_points == (q ** (n + 1) - 1) // (q - 1) == len(coords)
    assert all(len(L) == q + 1 for L in g.lines)
    assert validate(g)
    a, _ = ag_as_geometry(n, f)
    assert a.n_points == q ** n
    if q > 2:
        assert all(len(L) == q for L in a.lines)
    assert validate(a)


def test_named_counts():
    assert len(pg_as_geometry(2, gf(2))[0].lines) == 7
    assert pg_as_geometry(2, gf(4))[0].n_points == 21
    assert len(pg_as_geometry(3, gf(2))[0].lines) == 35
    assert len(ag_as_geometry(2, gf(3))[0].lines) == 12
    assert len(ag_as_geometry(2, gf(4))[0].lines) == 20
    assert ag_as_geometry(3, gf(3))[0].n_points == 27


def test_collinear(seed):
    f5, f7 = gf(5), gf(7)
    P = lambda f, *v: ProjPoint(f, v)  # noqa: E731
    assert collinear([P(f5, 1, 0, 0), P(f5, 0, 1, 0), P(f5, 1, 1, 0)])
    assert not collinear([P(f5, 1, 0, 0), P(f5, 0, 1, 0), P(f5, 0, 0, 1)])
    assert collinear([P(f7, 1, 1, 1), P(f7, 1, 2, 4), P(f7, 1, 3, 2)]) == \
        (rank(f7, [(1, 1, 1), (1, 2, 4), (1, 3, 2)]) <= 2)
    with pytest.raises(InvalidArguments):
        collinear([P(f5, 1, 0, 0), P(f7, 0, 1, 0)])
    # invariance under an invertible linear map
    rng = random.Random(seed)
    f = gf(9)
    for _ in range(100):
        while True:
            M = [[rng.randrange(9) for _ in range(3)] for _ in range(3)]
            if rank(f, M) == 3:
                break
        pts = [[rng.randrange(9) for _ in range(3)] for _ in range(3)]
        if any(not any(v) for v in pts):
            continue
        img = [[_dot(f, row, v) for row in M] for v in pts]
        assert (rank(f, pts) <= 2) == (rank(f, img) <= 2)


def _dot(f, a, b):
    s = 0
    for x, y in zip(a, b):
        s = f.add(s, f.mul(x, y))
    return s
