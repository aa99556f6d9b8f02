import pytest

from sylgal.canon import canonical_form
from sylgal.chromatic import all_bicoloured, is_chromatic, is_mr
from sylgal.enumeration import BRUTE_LIMIT, EnumSpec, brute_enumerate, enumerate_geometries
from sylgal.errors import BudgetExhausted, InvalidArguments, UnsupportedSize
from sylgal.galois import ag_as_geometry, gf, pg_as_geometry
from sylgal.geometry import is_k_sg, validate

SG_COUNTS = {6: 0, 7: 1, 8: 0, 9: 1, 10: 1, 11: 1, 12: 3}


def _forms(items):
    return {f for f, _, _ in items}


def test_spec_validation():
    with pytest.raises(InvalidArguments):
        EnumSpec(2)
    with pytest.raises(InvalidArguments):
        EnumSpec(5, 1)
    with pytest.raises(InvalidArguments):
        EnumSpec(5, 2, False, "rainbow")


@pytest.mark.parametrize("n,count", sorted(SG_COUNTS.items()))
def test_sg_counts(n, count):
    res = enumerate_geometries(EnumSpec(n, 3, True))
    assert res.count() == count
    for _, g, _ in res.items:
        assert validate(g) and is_k_sg(g, 3) and not g.is_collinear()
        assert is_chromatic(g, all_bicoloured(n))


def test_named_results():
    fano = pg_as_geometry(2, gf(2))[0]
    ag = ag_as_geometry(2, gf(3))[0]
    assert _forms(enumerate_geometries(EnumSpec(7, 3, True)).items) == {canonical_form(fano)}
    assert _forms(enumerate_geometries(EnumSpec(9, 3, True)).items) == {canonical_form(ag)}
    pg3 = pg_as_geometry(2, gf(3))[0]
    assert _forms(enumerate_geometries(EnumSpec(13, 4, True)).items) == {canonical_form(pg3)}


@pytest.mark.parametrize("k,nmax", [(3, 9), (4, 9), (2, 7)])
def test_against_brute(k, nmax):
    for n in range(3, nmax + 1):
        brute = {canonical_form(g) for g in brute_enumerate(n, k)}
        assert _forms(enumerate_geometries(EnumSpec(n, k)).items) == brute
        brute_nc = {canonical_form(g) for g in brute_enumerate(n, k, non_collinear=True)}
        assert _forms(enumerate_geometries(EnumSpec(n, k, True)).items) == brute_nc


def test_known_linear_space_counts():
    # numbers of linear spaces on 3..7 points
    assert [enumerate_geometries(EnumSpec(n)).count() for n in range(3, 8)] == [2, 3, 5, 10, 24]


def test_brute_limits():
    assert brute_enumerate(6, 3, True) == []
    assert len(brute_enumerate(7, 3, True)) == 1
    assert len(brute_enumerate(9, 3, True)) == 1
    with pytest.raises(UnsupportedSize):
        brute_enumerate(BRUTE_LIMIT + 1, 3)


def test_chromatic_small_levels():
    res = enumerate_geometries(EnumSpec(9, 2, True, "chromatic"), multi_level=True)
    under = {canonical_form(g) for items in res.by_level.values() for _, g, _ in items}
    fano = pg_as_geometry(2, gf(2))[0]
    ag = ag_as_geometry(2, gf(3))[0]
    assert under == {canonical_form(fano), canonical_form(ag)}
    for items in res.by_level.values():
        for _, g, c in items:
            assert is_chromatic(g, c)


def test_mr_small_is_empty_and_outputs_are_mr():
    res = enumerate_geometries(EnumSpec(10, 2, True, "mr"), multi_level=True)
    assert all(not items for lvl, items in res.by_level.items() if lvl <= 10)
    col = enumerate_geometries(EnumSpec(6, 2, False, "mr"))
    assert col.count() > 0
    for _, g, c in col.items:
        assert is_mr(g, c)


def test_mr_counts_conventions():
    res = enumerate_geometries(EnumSpec(5, 2, False, "mr"))
    c = res.counts()
    assert c["swap-identified"] <= c["coloured"] and c["geometries"] <= c["swap-identified"]


def test_budget():
    with pytest.raises(BudgetExhausted) as info:
        enumerate_geometries(EnumSpec(14, 3, True), budget=0.01)
    assert isinstance(info.value.progress, dict)


def test_workers_do_not_change_output():
    a = enumerate_geometries(EnumSpec(12, 3, True), workers=1)
    b = enumerate_geometries(EnumSpec(12, 3, True), workers=2)
    assert [f for f, _, _ in a.items] == [f for f, _, _ in b.items]
