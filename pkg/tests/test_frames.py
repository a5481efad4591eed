import numpy as np
import pytest

from framecat import chaincof as cc
from framecat import dsub, fincat, frames, rand, sset
from framecat.frames import (FrameSimplex, check_triangle_coherence,
                             degenerate_edge_of_frame, e_mix, frame_of_map,
                             frame_of_object, frame_of_composable_pair,
                             ho_identity, is_equivalence_edge, lift_free_diagram,
                             phi_restrict, pr_pullback, product_subdivision,
                             standard_dcat, theta, validate_frame,
                             vertex_object)

P = 2


def test_constant_diagram_fails_validation():
    d0 = standard_dcat(0, 1)
    diagram = cc.constant_diagram(d0.cat, cc.one_dim_complex(P), weq=d0.weq)
    s = FrameSimplex(0, 1, d0, diagram)
    rep = validate_frame(s)
    assert not rep.passed
    assert any("Reedy" in v for v in rep.violations)


def test_homotopicality_violation_detected():
    d0 = standard_dcat(0, 1)
    x = cc.one_dim_complex(P)
    zero = cc.zero_complex(P)
    objs = {o: (x if d0.obj_data[o][0] == 0 else zero)
            for o in d0.cat.objects}
    maps = {}
    for m in d0.cat.morphisms:
        src, tgt = objs[m.src], objs[m.tgt]
        if d0.cat.is_identity(m.mid):
            maps[m.mid] = cc.identity_chain_map(src)
        else:
            maps[m.mid] = cc.zero_chain_map(src, tgt)
    diagram = cc.ChainDiagram(d0.cat, objs, maps, weq=d0.weq)
    s = FrameSimplex(0, 1, d0, diagram)
    rep = validate_frame(s)
    assert any("homotopical" in v for v in rep.violations)


def test_frame_of_object_passes_validation():
    fr = frame_of_object(cc.one_dim_complex(P), cap=2)
    assert validate_frame(fr).passed


def test_frame_of_zero_is_acyclic_everywhere():
    fr = frame_of_object(cc.zero_complex(P), cap=2)
    for o in fr.dcat.cat.objects:
        assert not cc.HomologyView(fr.diagram.at(o)).dims


def test_frame_homology_constant():
    rng = rand.rng_for(1, 1)
    x = rand.random_complex(rng, P)
    fr = frame_of_object(x, cap=2)
    want = cc.HomologyView(x).dims
    for o in fr.dcat.cat.objects:
        assert cc.HomologyView(fr.diagram.at(o)).dims == want


def test_frame_of_identity_theta_is_identity():
    x = rand.random_complex(rand.rng_for(2, 2), P)
    fr = frame_of_object(x, cap=2)
    edge = frame_of_map(cc.identity_chain_map(x), cap=2,
                        src_frame=fr, tgt_frame=fr)
    th = theta(edge)
    hv = cc.HomologyView(edge.diagram.at(vertex_object(0)))
    assert th == ho_identity(hv)


def test_frame_of_map_restricts_to_endpoints():
    rng = rand.rng_for(3, 3)
    x = rand.random_complex(rng, P, max_dim=2)
    y = rand.random_complex(rng, P, max_dim=2)
    f = rand.random_chain_map(rng, x, y)
    edge = frame_of_map(f, cap=2)
    src, tgt = edge.endpoints
    d0 = standard_dcat(0, 2)
    incl0 = frames._vertex_inclusion_functor(0, 1, 2)
    incl1 = frames._vertex_inclusion_functor(1, 1, 2)
    for o in d0.cat.objects:
        assert edge.diagram.at(incl0.on_obj(o)) == src.diagram.at(o)
        assert edge.diagram.at(incl1.on_obj(o)) == tgt.diagram.at(o)


def test_degenerate_edge_is_equivalence():
    fr = frame_of_object(cc.one_dim_complex(P), cap=2)
    de = degenerate_edge_of_frame(fr)
    assert is_equivalence_edge(de)
    th = theta(de)
    assert th.is_invertible()


def test_quasi_iso_edge_is_equivalence():
    rng = rand.rng_for(4, 4)
    x = rand.random_complex(rng, P, max_dim=2)
    w = rand.random_quasi_iso(rng, x)
    edge = frame_of_map(w, cap=2)
    assert is_equivalence_edge(edge)
    assert theta(edge).is_invertible()


def test_non_weq_edge_rejected():
    f = cc.zero_chain_map(cc.zero_complex(P), cc.one_dim_complex(P))
    edge = frame_of_map(f, cap=2)
    assert not is_equivalence_edge(edge)
    assert not theta(edge).is_invertible()


def test_theta_conjugation_formula():
    rng = rand.rng_for(5, 5)
    x = rand.random_complex(rng, P, max_dim=2)
    y = rand.random_complex(rng, P, max_dim=2)
    f = rand.random_chain_map(rng, x, y)
    edge = frame_of_map(f, cap=2)
    th = theta(edge)
    phi_x = frames.ho_of_chain_map(edge.comparison.at(vertex_object(0)))
    phi_y = frames.ho_of_chain_map(edge.comparison.at(vertex_object(1)))
    assert th == phi_x.then(frames.ho_of_chain_map(f)).then(phi_y.inverse())


def test_triangle_coherence_random():
    rng = rand.rng_for(6, 6)
    x, y, z = (rand.random_complex(rng, P, max_dim=2) for _ in range(3))
    f = rand.random_chain_map(rng, x, y)
    g = rand.random_chain_map(rng, y, z)
    t = frame_of_composable_pair(f, g, cap=2)
    assert validate_frame(t).passed
    rep = check_triangle_coherence(t)
    assert rep.passed


def test_triangle_degenerate_on_vertex():
    # restrict a vertex frame along the collapse [2] -> [0]
    fr = frame_of_object(cc.one_dim_complex(P), cap=2)
    p2, p0 = fincat.poset_category(2), fincat.poset_category(0)
    collapse = fincat.CatFunctor(
        p2, p0, {o: "0" for o in p2.objects},
        {m.mid: "0<=0" for m in p2.morphisms})
    d2, d0 = standard_dcat(2, 2), standard_dcat(0, 2)
    dcollapse = dsub.d_of_map(
        sset.nerve_map(collapse, d2.base, d0.base), d2, d0)
    diagram = cc.restrict_diagram(fr.diagram, dcollapse, weq=d2.weq)
    t = FrameSimplex(2, 2, d2, diagram)
    rep = check_triangle_coherence(t)
    assert rep.passed


def test_triangle_with_degenerate_inner_edge():
    # restrict an edge frame along [2] -> [1] collapsing 0,1 together:
    # d2 becomes degenerate so theta(d1) = theta(d0)
    rng = rand.rng_for(7, 7)
    x = rand.random_complex(rng, P, max_dim=2)
    y = rand.random_complex(rng, P, max_dim=2)
    f = rand.random_chain_map(rng, x, y)
    edge = frame_of_map(f, cap=2)
    p2, p1 = fincat.poset_category(2), fincat.poset_category(1)
    sigma = fincat.CatFunctor(
        p2, p1, {"0": "0", "1": "0", "2": "1"},
        {"0<=0": "0<=0", "1<=1": "0<=0", "2<=2": "1<=1",
         "0<=1": "0<=0", "0<=2": "0<=1", "1<=2": "0<=1"})
    d2, d1 = standard_dcat(2, 2), standard_dcat(1, 2)
    dsig = dsub.d_of_map(sset.nerve_map(sigma, d2.base, d1.base), d2, d1)
    t = FrameSimplex(2, 2, d2,
                     cc.restrict_diagram(edge.diagram, dsig, weq=d2.weq))
    rep = check_triangle_coherence(t)
    assert rep.passed
    t0, t1, t2 = rep.thetas
    assert t1 == t0  # theta(d2) is the identity here


def test_e_mix_left_inverse():
    d_level = standard_dcat(1, 1)
    d_i = standard_dcat(1, 1)
    d_zero = standard_dcat(0, 1)
    prod = fincat.product_category(d_level.cat, d_i.cat)
    s = rand.random_reedy_cofibrant_diagram(rand.rng_for(8, 8), prod, P,
                                            max_dim=2, max_degree=1,
                                            total_budget=8)
    assert e_mix(pr_pullback(s, d_zero), d_level, d_i, d_zero) == s


def test_e_mix_value_preserving_on_dim_zero_objects():
    d_level = standard_dcat(0, 1)
    d_i = standard_dcat(0, 1)
    d_zero = standard_dcat(0, 1)
    prod = fincat.product_category(d_level.cat, d_i.cat)
    s = rand.random_reedy_cofibrant_diagram(rand.rng_for(9, 9), prod, P,
                                            max_dim=1, max_degree=1,
                                            total_budget=4)
    pulled = pr_pullback(s, d_zero)
    back = e_mix(pulled, d_level, d_i, d_zero)
    for o in prod.objects:
        a, _ = fincat.split_pair(o)
        if d_level.obj_data[a][0] == 0:
            assert back.at(o) == s.at(o)


def test_e_mix_preserves_reedy_cofibrancy():
    # the mix-in is a restriction along comparison-style functors, so a
    # Reedy cofibrant input over the triple product stays Reedy cofibrant
    d_level = standard_dcat(0, 1)
    d_i = standard_dcat(0, 1)
    d_zero = standard_dcat(0, 1)
    inner = fincat.product_category(d_level.cat, d_i.cat)
    triple = fincat.product_category(inner, d_zero.cat)
    s = rand.random_reedy_cofibrant_diagram(rand.rng_for(14, 14), triple, P,
                                            max_dim=1, max_degree=1,
                                            total_budget=6)
    out = e_mix(s, d_level, d_i, d_zero)
    assert cc.reedy_status(out)["reedy_cofibrant"]


def test_phi_restrict_preserves_reedy():
    cap = 1
    d_k = dsub.d_subdivision(fincat.poset_category(1), cap)
    d_n = standard_dcat(0, cap)
    prod = fincat.product_category(d_k.cat, d_n.cat)
    s = rand.random_reedy_cofibrant_diagram(rand.rng_for(10, 10), prod, P,
                                            max_dim=2, max_degree=1,
                                            total_budget=8)
    d_prod = product_subdivision(d_k, d_n, cap)
    res = phi_restrict(s, d_k, d_n, d_prod)
    assert cc.reedy_status(res)["reedy_cofibrant"]


def test_phi_restrict_point_base_values():
    # K = Delta^0: the restricted diagram's values are the originals at the
    # diagonal pairs
    cap = 1
    d_k = dsub.d_subdivision(fincat.poset_category(0), cap)
    d_n = standard_dcat(0, cap)
    prod = fincat.product_category(d_k.cat, d_n.cat)
    s = rand.random_reedy_cofibrant_diagram(rand.rng_for(11, 11), prod, P,
                                            max_dim=1, max_degree=1,
                                            total_budget=4)
    d_prod = product_subdivision(d_k, d_n, cap)
    res = phi_restrict(s, d_k, d_n, d_prod)
    comparison, _ = dsub.projection_comparison(d_prod, d_k, d_n)
    for o in d_prod.cat.objects:
        assert res.at(o) == s.at(comparison.on_obj(o))


def test_lift_identity():
    x = rand.random_complex(rand.rng_for(12, 12), P)
    fx = frame_of_object(x, cap=2)
    hv = cc.HomologyView(x)
    ident = {n: np.eye(hv.dim(n), dtype=np.int64) for n in hv.dims}
    free1 = fincat.free_category_on_quiver(
        fincat.Quiver(("x", "y"), (("q", "x", "y"),)))
    fy = frame_of_object(x, cap=2)
    res = lift_free_diagram(free1, {"x": fx, "y": fy}, {"q": ident}, cap=2)
    assert res.status == "ok"
    assert theta(res.edges["q"]).is_invertible()


def test_lift_round_trip():
    rng = rand.rng_for(13, 13)
    x = rand.random_complex(rng, P, max_dim=2)
    y = rand.random_complex(rng, P, max_dim=2)
    f = rand.random_chain_map(rng, x, y)
    fx, fy = frame_of_object(x, cap=2), frame_of_object(y, cap=2)
    free1 = fincat.free_category_on_quiver(
        fincat.Quiver(("x", "y"), (("q", "x", "y"),)))
    res = lift_free_diagram(free1, {"x": fx, "y": fy},
                            {"q": cc.induced(f)}, cap=2)
    assert res.status == "ok"


def test_lift_counterexample_on_dimension_mismatch():
    x = cc.one_dim_complex(P)       # H_0 = F_2
    y = cc.zero_complex(P)          # H = 0
    fx, fy = frame_of_object(x, cap=2), frame_of_object(y, cap=2)
    free1 = fincat.free_category_on_quiver(
        fincat.Quiver(("x", "y"), (("q", "x", "y"),)))
    bad = {0: np.array([[1]], dtype=np.int64)}  # 1x1 into empty homology
    res = lift_free_diagram(free1, {"x": fx, "y": fy}, {"q": bad}, cap=2)
    assert res.status == "counterexample"
    assert "degree 0" in res.message


def test_lift_requires_free_category():
    square = fincat.product_category(fincat.poset_category(1),
                                     fincat.poset_category(1))
    with pytest.raises(ValueError):
        lift_free_diagram(square, {}, {}, cap=2)
