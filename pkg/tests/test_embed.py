import pytest

from sylgal import constructions as C
from sylgal.embed import (
    Embedding,
    all_embeddings,
    embeds_into,
    field_embedding,
    fmin,
    transport,
    unpruned_embeds,
    verify_embedding,
)
from sylgal.enumeration import EnumSpec, enumerate_geometries
from sylgal.errors import InvalidArguments, UnsupportedDimension
from sylgal.galois import ProjPoint, ag_as_geometry, gf, pg_as_geometry, span_dimension
from sylgal.geometry import Geometry

FANO = pg_as_geometry(2, gf(2))[0]
AG23 = ag_as_geometry(2, gf(3))[0]


def test_examples():
    e = embeds_into(FANO, 2, gf(2))
    assert e is not None and verify_embedding(FANO, e)
    assert embeds_into(FANO, 2, gf(3)) is None
    assert embeds_into(AG23, 2, gf(7)) is not None
    assert embeds_into(AG23, 2, gf(5)) is None
    pg3 = pg_as_geometry(2, gf(3))[0]
    e = embeds_into(pg3, 2, gf(9))
    assert e is not None and verify_embedding(pg3, e)


def test_dimension_error(pg32):
    with pytest.raises(UnsupportedDimension):
        embeds_into(pg32, 2, gf(2))
    e = embeds_into(pg32, 3, gf(2), full_span=True)
    assert e is not None and e.span_dim == 3


def test_verify_embedding():
    g, coords = pg_as_geometry(2, gf(2))
    assert verify_embedding(g, Embedding(2, gf(2), tuple(coords), 2))
    const = Embedding(2, gf(2), (coords[0],) * 7, 0)
    assert not verify_embedding(g, const)
    cfg = C.multiplicative_group_config(gf(7), [1, 2, 4])
    assert verify_embedding(cfg.geometry, Embedding(2, cfg.field, cfg.coords, span_dimension(cfg.coords)))
    # a wrong incidence claim fails
    bad = Geometry(7, g.lines[1:])
    assert not verify_embedding(bad, Embedding(2, gf(2), tuple(coords), 2))


def test_full_span():
    line = Geometry.collinear(4)
    e = embeds_into(line, 2, gf(3))
    assert e is not None and e.span_dim == 1
    assert embeds_into(line, 2, gf(3), full_span=True) is None


def test_soundness_on_catalogue():
    cfgs = [C.affine_plus_config(gf(3)), C.table4_deletion("20.2"), C.ag_config(2, gf(4)),
            C.additive_group_config(gf(4)), C.multiplicative_group_config(gf(13), [1, 5, 12, 8])]
    for cfg in cfgs:
        e = embeds_into(cfg.geometry, 2, cfg.field)
        assert e is not None and verify_embedding(cfg.geometry, e), cfg.name


@pytest.mark.parametrize("q", [2, 3, 4])
def test_against_unpruned_small(q):
    f = gf(q)
    gs = [g for n in range(3, 7) for _, g, _ in enumerate_geometries(EnumSpec(n)).items]
    gs += [FANO, AG23]
    for g in gs:
        from sylgal.geometry import dimension
        if dimension(g) > 2:
            continue
        assert (embeds_into(g, 2, f) is not None) == unpruned_embeds(g, 2, f)


def test_aut_pruning_does_not_change_verdicts():
    for g in (FANO, AG23, C.affine_plus_config(gf(3)).geometry):
        for q in (2, 3, 4, 5, 7):
            a = embeds_into(g, 2, gf(q)) is not None
            b = embeds_into(g, 2, gf(q), use_aut=False) is not None
            assert a == b


def test_monotone_under_squaring():
    for g in (FANO, AG23, C.affine_plus_config(gf(3)).geometry):
        for q, q2 in ((2, 4), (3, 9), (4, 16), (5, 25)):
            if embeds_into(g, 2, gf(q)) is not None:
                assert embeds_into(g, 2, gf(q2)) is not None


def test_all_embeddings_fano():
    embs = all_embeddings(FANO, 2, gf(2))
    assert embs and all(verify_embedding(FANO, e) for e in embs)
    assert all_embeddings(FANO, 2, gf(3)) == []


def test_transport():
    cfg = C.pg_config(2, gf(2))
    big = gf(8)
    pts = transport(cfg.coords, big)
    e = Embedding(2, big, pts, span_dimension(pts))
    assert verify_embedding(cfg.geometry, e)
    m = field_embedding(gf(4), gf(16))
    assert len(set(m)) == 4 and m[0] == 0 and m[1] == 1
    with pytest.raises(InvalidArguments):
        field_embedding(gf(4), gf(8))
    padded = transport(cfg.coords, gf(4), n=3)
    assert all(len(p.coords) == 4 for p in padded)


def test_fmin_small():
    r = fmin(3, 2, 2, horizon=2)
    assert (r.lower, r.upper, r.lower_provenance) == (7, 7, "exhaustive") and r.resolved
    r = fmin(3, 2, 5, horizon=2)
    assert r.upper == 9 and r.witness.q == 25 and r.horizon_limited
    assert verify_embedding(AG23, r.witness) or r.witness_name.startswith("enumerated")
    r = fmin(3, 2, 5, horizon=1, enum_limit=10, size_cap=12)
    assert r.upper is None or r.upper > 9


def test_fmin_rows_and_errors():
    r = fmin(4, 2, 3, horizon=1)
    assert r.tsv_header().count("\t") == r.tsv_row().count("\t")
    with pytest.raises(InvalidArguments):
        fmin(2, 2, 3)
    with pytest.raises(InvalidArguments):
        fmin(3, 2, 4)


def test_upper_bound_witnesses():
    for p in (5, 7):
        cfg = C.parallel_lines_config(p, 4)
        e = Embedding(2, cfg.field, cfg.coords, span_dimension(cfg.coords))
        assert verify_embedding(cfg.geometry, e) and e.span_dim == 2
    cfg = C.parallel_planes_config(5)
    assert span_dimension(cfg.coords) == 3 and cfg.geometry.n_points == 75
    e = Embedding(3, cfg.field, cfg.coords, 3)
    assert verify_embedding(cfg.geometry, e)


def test_projpoint_equality():
    f = gf(3)
    assert ProjPoint(f, (1, 0, 0)) == ProjPoint(f, (1, 0, 0))
