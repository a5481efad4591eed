import pytest

from framecat import dsub, fincat, sset
from framecat.dsub import (d_of_map, d_subdivision, frame_embedding, mor_id,
                           obj_id, p_categorical, p_simplicial,
                           projection_comparison)
from framecat.fincat import is_direct, is_sieve, latching_category
from framecat.sset import SimplicialMap, chain_id, delta, mono_id, nerve


def test_d_point_cap_one():
    d = d_subdivision(delta(0, 1), 1)
    assert len(d.cat.objects) == 2
    assert len(d.cat.nonidentity()) == 2
    assert d.weq.members == frozenset(m.mid for m in d.cat.morphisms)


def test_d_interval_cap_one():
    d = d_subdivision(delta(1, 1), 1)
    assert len(d.cat.objects) == 5


def test_d_empty():
    d = d_subdivision(sset.empty_sset(2), 2)
    assert len(d.cat.objects) == 0


def test_subdivision_category_validates():
    for base in (delta(1, 2), nerve(fincat.zigzag_category(), 2)):
        d = d_subdivision(base, 2)
        assert fincat.validate_category(d.cat).passed


def test_d_is_direct_with_dimension_degree():
    d = d_subdivision(delta(1, 2), 2)
    assert is_direct(d.cat) is not None
    assert d.degree.check(d.cat)
    for o, (n, _) in d.obj_data.items():
        assert d.degree.degree[o] == n


def test_dcat_latching_involves_lower_dimension():
    d = d_subdivision(fincat.poset_category(1), 2)
    for o, (n, _) in d.obj_data.items():
        lat = latching_category(d.cat, o)
        for u in lat.category.objects:
            m, _ = d.obj_data[d.cat.src(u)]
            assert m < n


def test_p_simplicial_identity_edge():
    d = d_subdivision(delta(1, 1), 1)
    e01 = obj_id(1, mono_id((0, 1)))
    ident = d.cat.id_of(e01)
    image = p_simplicial(d, [ident])
    # degenerate edge at the last vertex of the simplex
    assert image == mono_id((1, 1))


def test_p_simplicial_vertex_inclusions():
    d = d_subdivision(delta(1, 1), 1)
    v0 = obj_id(0, mono_id((0,)))
    v1 = obj_id(0, mono_id((1,)))
    e01 = obj_id(1, mono_id((0, 1)))
    incl0 = mor_id((0,), v0, e01)
    incl1 = mor_id((1,), v1, e01)
    assert p_simplicial(d, [incl0]) == mono_id((0, 1))
    assert p_simplicial(d, [incl1]) == mono_id((1, 1))


def test_p_simplicial_is_simplicial():
    # p commutes with the face maps of the chain nerve: check all 2-chains
    d = d_subdivision(delta(1, 2), 2)
    k = d.base
    cat = d.cat
    for f in cat.morphisms:
        for g in cat.from_obj(f.tgt):
            chain = [f.mid, g]
            image = p_simplicial(d, chain)
            # d_1 of the chain composes; p of it must be the d_1-face image
            composed = p_simplicial(d, [cat.comp(g, f.mid)])
            assert k.face(image, 1) == composed
            # d_0 drops the first arrow; d_2 drops the last
            assert k.face(image, 0) == p_simplicial(d, [g])
            assert k.face(image, 2) == p_simplicial(d, [f.mid])


def test_p_naturality_along_collapse():
    k1, k0 = delta(1, 1), delta(0, 1)
    d1 = d_subdivision(k1, 1)
    d0 = d_subdivision(k0, 1)
    collapse = SimplicialMap(
        k1, k0, {x: mono_id((0,) * (k1.dim(x) + 1)) for x in k1.all_simplices()})
    df = d_of_map(collapse, d1, d0)
    for m in d1.cat.morphisms:
        lhs = p_simplicial(d0, [df.on_mor(m.mid)])
        rhs = collapse(p_simplicial(d1, [m.mid]))
        assert lhs == rhs


def test_p_categorical_point():
    d = d_subdivision(fincat.poset_category(0), 2)
    fun = p_categorical(d)
    assert set(fun.ob_map.values()) == {"0"}


def test_p_categorical_interval_values():
    d = d_subdivision(fincat.poset_category(1), 1)
    fun = p_categorical(d)
    full = obj_id(1, chain_id("0", ("0<=1",)))
    assert fun.on_obj(full) == "1"
    v0 = obj_id(0, chain_id("0", ()))
    incl0 = mor_id((0,), v0, full)
    assert fun.on_mor(incl0) == "0<=1"


@pytest.mark.parametrize("n", [1, 2])
def test_p_categorical_matches_p_simplicial(n):
    base = fincat.poset_category(n)
    d = d_subdivision(base, 2)
    fun = p_categorical(d)
    ner = d.base
    for m in d.cat.morphisms:
        edge = p_simplicial(d, [m.mid])
        start, mors = ner.chain_of[edge]
        acc = base.id_of(start)
        for mor in mors:
            acc = base.comp(mor, acc)
        assert acc == fun.on_mor(m.mid)


def test_d_weq_interval_inclusions():
    d = d_subdivision(delta(1, 1), 1)
    v0 = obj_id(0, mono_id((0,)))
    v1 = obj_id(0, mono_id((1,)))
    e01 = obj_id(1, mono_id((0, 1)))
    assert mor_id((1,), v1, e01) in d.weq.members
    assert mor_id((0,), v0, e01) not in d.weq.members


@pytest.mark.parametrize("build", [
    lambda: fincat.poset_category(1),
    lambda: fincat.poset_category(2),
    lambda: fincat.zigzag_category(),
])
def test_d_weq_agrees_with_p_iso_criterion(build):
    # d_subdivision asserts the agreement internally; getting here means it
    # held, but recompute to witness the classes coincide
    base = build()
    d = d_subdivision(base, 2)
    fun = p_categorical(d)
    isos = fincat.isomorphisms(base)
    iso_class = {m.mid for m in d.cat.morphisms if fun.on_mor(m.mid) in isos}
    assert set(d.weq.members) == iso_class


def test_d_of_identity_map():
    k = delta(1, 1)
    d = d_subdivision(k, 1)
    ident = SimplicialMap(k, k, {x: x for x in k.all_simplices()})
    fun = d_of_map(ident, d, d)
    assert fun.is_identity_functor()


def test_d_of_injective_map_is_sieve():
    k0, k1 = delta(0, 1), delta(1, 1)
    d0, d1 = d_subdivision(k0, 1), d_subdivision(k1, 1)
    incl = SimplicialMap(
        k0, k1, {x: mono_id((0,) * (k0.dim(x) + 1)) for x in k0.all_simplices()})
    fun = d_of_map(incl, d0, d1)
    assert is_sieve(fun)


def test_d_of_collapse_hits_everything():
    k1, k0 = delta(1, 1), delta(0, 1)
    d1, d0 = d_subdivision(k1, 1), d_subdivision(k0, 1)
    collapse = SimplicialMap(
        k1, k0, {x: mono_id((0,) * (k1.dim(x) + 1)) for x in k1.all_simplices()})
    fun = d_of_map(collapse, d1, d0)
    assert len(d1.cat.objects) == 5
    assert set(fun.ob_map.values()) == set(d0.cat.objects)
    assert len(d0.cat.objects) == 2


def test_frame_embedding_point():
    d = d_subdivision(fincat.poset_category(0), 1)
    emb = frame_embedding(0, d)
    assert emb.on_obj("0") == obj_id(0, chain_id("0", ()))


def test_frame_embedding_interval():
    d = d_subdivision(fincat.poset_category(1), 1)
    emb = frame_embedding(1, d)
    assert emb.on_obj("0") == obj_id(0, chain_id("0", ()))
    assert emb.on_obj("1") == obj_id(1, chain_id("0", ("0<=1",)))
    arrow = emb.on_mor("0<=1")
    assert arrow == mor_id((0,), emb.on_obj("0"), emb.on_obj("1"))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_retraction_is_asserted(n):
    d = d_subdivision(fincat.poset_category(n), 2)
    frame_embedding(n, d)  # raises if p after i is not the identity


def test_projection_comparison_counts():
    k = delta(1, 1)
    dk = d_subdivision(k, 1)
    dl = d_subdivision(k, 1)
    prod = sset.product_sset(k, k)
    dprod = d_subdivision(prod, 1)
    # enumeration: 4 vertex pairs + 9 edge pairs
    assert len(dprod.cat.objects) == 13
    fun, prod_cat = projection_comparison(dprod, dk, dl)
    assert len(prod_cat.objects) == 25
    assert fun.validate().passed
