import pytest

from sylgal import constructions as C
from sylgal.canon import are_isomorphic, canonical_form
from sylgal.chromatic import check_structure_props, is_chromatic, mr_colorable
from sylgal.errors import InvalidArguments, UnsupportedField
from sylgal.galois import ag_as_geometry, geometry_from_coords, gf
from sylgal.geometry import contraction, dimension, is_k_sg

AG23 = ag_as_geometry(2, gf(3))[0]


def _sg_noncollinear(g):
    return is_k_sg(g, 3) and not g.is_collinear()


@pytest.mark.parametrize("q", [7, 4, 13])
def test_inflection(q):
    cfg = C.inflection_config(gf(q))
    assert cfg.geometry.n_points == 9 and len(cfg.geometry.lines) == 12
    assert canonical_form(cfg.geometry) == canonical_form(AG23)


def test_inflection_needs_cube_roots():
    with pytest.raises(UnsupportedField):
        C.inflection_config(gf(5))


def test_additive():
    cfg = C.additive_group_config(gf(3))
    assert cfg.geometry.n_points == 9 and _sg_noncollinear(cfg.geometry)
    fano = C.additive_group_config(gf(2), include_center=True)
    assert canonical_form(fano.geometry) == canonical_form(C.pg_config(2, gf(2)).geometry)
    g4 = C.additive_group_config(gf(4))
    assert g4.geometry.n_points == 12 and C.additive_residues(g4) == [4, 4, 4]
    with pytest.raises(InvalidArguments):
        C.additive_group_config(gf(9), [1, 3])
    closed = C.additive_group_config(gf(9), [1], close=True)
    assert closed.geometry.n_points == 9
    with pytest.raises(InvalidArguments):
        C.additive_group_config(gf(2))


def test_multiplicative():
    g7 = C.multiplicative_group_config(gf(7), [1, 2, 4])
    assert are_isomorphic(g7.geometry, None, AG23, None) is not None
    g13 = C.multiplicative_group_config(gf(13), [1, 5, 12, 8])
    assert g13.geometry.n_points == 12 and _sg_noncollinear(g13.geometry)
    f4 = gf(4)
    g4 = C.multiplicative_group_config(f4, [1, 2, 3])
    assert g4.geometry.n_points == 9 and _sg_noncollinear(g4.geometry)
    assert C.multiplicative_subgroup(gf(13), 4) == [1, 5, 8, 12]
    with pytest.raises(InvalidArguments):
        C.multiplicative_group_config(gf(7), [1, 6])


def test_parallel_planes():
    c5 = C.parallel_planes_config(5)
    assert c5.geometry.n_points == 75
    assert {len(L) for L in c5.geometry.lines} == {3, 5}
    assert is_k_sg(c5.geometry, 3) and dimension(c5.geometry) == 3
    c3 = C.parallel_planes_config(3)
    assert canonical_form(c3.geometry) == canonical_form(ag_as_geometry(3, gf(3))[0])
    with pytest.raises(InvalidArguments):
        C.parallel_planes_config(2)


def test_parallel_lines():
    for p in (5, 7):
        c = C.parallel_lines_config(p, 4)
        assert c.geometry.n_points == 4 * p and is_k_sg(c.geometry, 4) and dimension(c.geometry) == 2
    full = C.parallel_lines_config(5, 5)
    assert canonical_form(full.geometry) == canonical_form(ag_as_geometry(2, gf(5))[0])
    with pytest.raises(InvalidArguments):
        C.parallel_lines_config(5, 6)


SIZES = {"20.1": 20, "20.2": 20, "21.1": 21, "21.2": 21, "22.8": 22, "24.1": 24, "24.2": 24, "AG(2,4)+": 17}


@pytest.mark.parametrize("name", C.TABLE4_NAMES)
def test_table4(name):
    cfg = C.table4_deletion(name)
    assert cfg.geometry.n_points == SIZES[name]
    assert is_k_sg(cfg.geometry, 4)


def test_table4_unknown():
    with pytest.raises(InvalidArguments):
        C.table4_deletion("22.3")


def test_van_wamelen():
    cfg = C.van_wamelen_11(gf(3))
    assert is_chromatic(cfg.geometry, cfg.coloring)
    assert not is_k_sg(cfg.geometry, 3)
    assert mr_colorable(cfg.geometry) is None
    with pytest.raises(UnsupportedField):
        C.van_wamelen_11(gf(5))


def _all_configs():
    out = [C.pg_config(2, gf(2)), C.ag_config(2, gf(3)), C.affine_plus_config(gf(3)),
           C.pg_config(3, gf(2)), C.inflection_config(gf(7)), C.additive_group_config(gf(4)),
           C.additive_group_config(gf(3), include_center=True),
           C.multiplicative_group_config(gf(13), [1, 5, 12, 8]), C.parallel_lines_config(5),
           C.van_wamelen_11(gf(3))]
    out += [C.table4_deletion(n) for n in C.TABLE4_NAMES]
    return out


def test_round_trip_and_colourings():
    for cfg in _all_configs():
        assert geometry_from_coords(cfg.coords) == cfg.geometry
        if cfg.coloring is not None:
            assert is_chromatic(cfg.geometry, cfg.coloring), cfg.name


def test_three_line_configs():
    for cfg in (C.additive_group_config(gf(4)), C.additive_group_config(gf(3), include_center=True),
                C.multiplicative_group_config(gf(7), [1, 2, 4]),
                C.multiplicative_group_config(gf(13), [1, 5, 12, 8])):
        rep = check_structure_props(cfg.geometry, cfg.coloring)
        assert rep.ok, rep.failures()
        assert any(name == "threelines" for name, _, _ in rep.checks)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (2, 3)])
def test_deg4_power_law(p, k):
    f = gf(p ** k)
    cfg = C.additive_group_config(f, include_center=(p ** k == 2))
    assert C.additive_residues(cfg) == [p ** k] * 3


def test_deg4_subgroups():
    f = gf(9)
    sub = C.additive_group_config(f, [1], include_center=True, close=True)
    assert C.additive_residues(sub) == [3, 3, 3]


def test_contraction_of_constructions():
    g = C.pg_config(3, gf(2)).geometry
    assert canonical_form(contraction(g, [3]).geometry) == canonical_form(C.pg_config(2, gf(2)).geometry)
