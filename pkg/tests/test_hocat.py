import pytest

from framecat import fincat, hocat, sset
from framecat.hocat import (counit_comparison, homotopy_category,
                            primitive_factorization, primitive_simplices,
                            rank_context, rank_filtration_subset, unit_map,
                            verify_filtration)


def test_hocat_one_skeletal_spine_is_free():
    k = sset.spine(2, 2)
    res = homotopy_category(k)
    assert res.status == "ok"
    c = res.category
    assert len(c.objects) == 3
    # free on a -> b -> c: six morphisms including identities
    assert len(c.morphisms) == 6
    assert fincat.is_free(c) is not None


def test_hocat_counit_on_nerve():
    base = fincat.poset_category(2)
    n = sset.nerve(base, 2)
    res = homotopy_category(n)
    assert res.status == "ok"
    counit = counit_comparison(base, res, n)
    assert counit.validate().passed
    h = res.category
    for a in h.objects:
        for b in h.objects:
            assert len(h.hom(a, b)) == \
                len(base.hom(counit.on_obj(a), counit.on_obj(b)))


def test_presented_categories_validate():
    for k in [sset.spine(2, 2), sset.nerve(fincat.poset_category(2), 2),
              sset.parallel_pair(2)]:
        res = homotopy_category(k)
        assert res.status == "ok"
        assert fincat.validate_category(res.category).passed


def test_hocat_point():
    k = sset.delta(0, 2)
    res = homotopy_category(k)
    assert res.status == "ok"
    assert len(res.category.objects) == 1
    assert len(res.category.morphisms) == 1


def test_unit_map_interval_iso():
    ctx = rank_context(sset.spine(1, 3))
    um = unit_map(ctx)
    assert um.validate().passed
    assert um.is_injective()
    # h(interval) = [1]: the unit is onto the whole truncated nerve
    assert sorted(um.mapping.values()) == sorted(ctx.nerve.all_simplices())


def test_unit_map_spine_image_is_rank_le_one():
    ctx = rank_context(sset.spine(2, 3))
    um = unit_map(ctx)
    image = set(um.mapping.values())
    k1 = rank_filtration_subset(ctx, 1)
    assert image == set(k1.all_simplices())


def test_unit_map_parallel_edges():
    ctx = rank_context(sset.parallel_pair(2))
    um = unit_map(ctx)
    assert um.is_injective()
    h = ctx.hc
    va = ctx.k.vertex_simplex("a")
    vb = ctx.k.vertex_simplex("b")
    rank1 = [m for m in h.hom(va, vb)
             if ctx.rank_of_morphism[m] == 1]
    assert len(rank1) == 2


def test_rank_examples():
    ctx = rank_context(sset.spine(3, 3))
    # degenerate edge at a vertex has rank 0
    v = ctx.nerve.cells(0)[0]
    de = ctx.nerve.deg(v, 0)
    assert ctx.rank(de) == 0
    # composite of two generators has rank 2
    h = ctx.hc
    twos = [m.mid for m in h.morphisms if ctx.rank_of_morphism[m.mid] == 2]
    assert twos
    edge = sset.chain_id(h.src(twos[0]), (twos[0],))
    assert ctx.rank(edge) == 2
    # a primitive 3-simplex has rank 3
    prim3 = primitive_simplices(ctx, 3)
    assert prim3
    assert all(ctx.rank(c) == 3 for c in prim3)


def test_primitive_factorization_primitive_is_identity():
    ctx = rank_context(sset.spine(2, 3))
    for tau in primitive_simplices(ctx, 2):
        t, f = primitive_factorization(ctx, tau)
        assert t == tau
        assert f == (0, 1, 2)


def test_primitive_factorization_degenerate_edge():
    ctx = rank_context(sset.spine(2, 3))
    v = ctx.nerve.cells(0)[0]
    de = ctx.nerve.deg(v, 0)
    tau, f = primitive_factorization(ctx, de)
    assert ctx.nerve.dim(tau) == 0
    assert f == (0, 0)


def test_primitive_factorization_rank_two_edge():
    ctx = rank_context(sset.spine(2, 3))
    h = ctx.hc
    long = [m.mid for m in h.morphisms if ctx.rank_of_morphism[m.mid] == 2][0]
    edge = sset.chain_id(h.src(long), (long,))
    tau, f = primitive_factorization(ctx, edge)
    assert ctx.nerve.dim(tau) == 2
    assert f == (0, 2)


def test_rank_restriction_formula():
    # rank of (g^* tau)|[i,j] equals g(j) - g(i) for primitive tau
    ctx = rank_context(sset.spine(3, 3))
    for n in (1, 2, 3):
        for tau in primitive_simplices(ctx, n):
            for m in (1, 2):
                for g in sset.all_monotone(m, n):
                    pulled = ctx.nerve.pullback(tau, g)
                    for i in range(m + 1):
                        for j in range(i, m + 1):
                            env = ctx.nerve.pullback(pulled, (i, j)) \
                                if i != j else None
                            edge = ctx.nerve.pullback(pulled, (i, j))
                            assert ctx.rank(edge) == g[j] - g[i]


def test_filtration_nested_and_union():
    ctx = rank_context(sset.spine(3, 3))
    prev = None
    for n in range(1, 4):
        kn = rank_filtration_subset(ctx, n)
        if prev is not None:
            assert set(prev.all_simplices()) <= set(kn.all_simplices())
        prev = kn
    assert prev.counts() == list(ctx.nerve.counts())


def test_verify_filtration_corpus():
    for k in [sset.spine(1, 3), sset.spine(2, 3), sset.wedge(3),
              sset.parallel_pair(3)]:
        ctx = rank_context(k)
        steps = verify_filtration(ctx)
        assert all(s.passed for s in steps), [(s.n, s.witness) for s in steps]


def test_rank_context_rejects_two_skeletal():
    k = sset.delta(2, 2)
    with pytest.raises(ValueError):
        rank_context(k)


def test_hocat_requires_cap_two():
    with pytest.raises(ValueError):
        homotopy_category(sset.delta(1, 1))
