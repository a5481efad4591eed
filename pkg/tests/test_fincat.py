import pytest

from framecat import fincat
from framecat.fincat import (CatFunctor, FinCategory, Morphism, MorphismClass,
                             closure_two_of_six, free_category_on_quiver,
                             is_direct, is_free, is_sieve, latching_category,
                             localize_bounded, poset_category,
                             product_category, validate_category,
                             zigzag_category, Quiver, discrete_category)


def test_validate_poset_passes():
    assert validate_category(poset_category(2)).passed


def test_validate_zigzag_passes():
    assert validate_category(zigzag_category()).passed


def test_validate_detects_corrupted_compose():
    c = poset_category(2)
    table = dict(c.compose_table)
    table[("1<=2", "0<=1")] = "0<=1"  # wrong endpoints
    bad = FinCategory(c.objects, c.morphisms, c.identity, table)
    rep = validate_category(bad)
    assert not rep.passed
    assert any("1<=2" in v and "0<=1" in v for v in rep.violations)


def test_validate_detects_noncomposable_entry():
    c = poset_category(1)
    table = dict(c.compose_table)
    table[("0<=1", "0<=1")] = "0<=1"  # not composable
    bad = FinCategory(c.objects, c.morphisms, c.identity, table)
    rep = validate_category(bad)
    assert not rep.passed


def test_product_unit():
    p = product_category(poset_category(1), poset_category(0))
    assert len(p.objects) == 2
    assert len(p.morphisms) == 3
    assert validate_category(p).passed


def test_product_square_counts():
    p = product_category(poset_category(1), poset_category(1))
    assert len(p.objects) == 4
    assert len(p.morphisms) == 9
    assert validate_category(p).passed


def test_product_with_empty():
    empty = FinCategory([], [], {}, {})
    p = product_category(empty, poset_category(2))
    assert len(p.objects) == 0
    assert len(p.morphisms) == 0


def test_is_direct_poset():
    deg = is_direct(poset_category(3))
    assert deg.degree == {"0": 0, "1": 1, "2": 2, "3": 3}
    assert deg.check(poset_category(3))


def test_is_direct_rejects_endomorphism():
    c = FinCategory(
        ["x"],
        [Morphism("id_x", "x", "x"), Morphism("e", "x", "x")],
        {"x": "id_x"},
        {("id_x", "id_x"): "id_x", ("id_x", "e"): "e", ("e", "id_x"): "e",
         ("e", "e"): "id_x"},
    )
    assert validate_category(c).passed
    assert is_direct(c) is None


def test_is_direct_rejects_cycle():
    c = FinCategory(
        ["x", "y"],
        [Morphism("id_x", "x", "x"), Morphism("id_y", "y", "y"),
         Morphism("f", "x", "y"), Morphism("g", "y", "x")],
        {"x": "id_x", "y": "id_y"},
        {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y",
         ("id_y", "f"): "f", ("f", "id_x"): "f",
         ("id_x", "g"): "g", ("g", "id_y"): "g",
         ("g", "f"): "id_x", ("f", "g"): "id_y"},
    )
    assert validate_category(c).passed
    assert is_direct(c) is None


def test_latching_minimal_object_empty():
    lat = latching_category(poset_category(2), "0")
    assert len(lat.category.objects) == 0


def test_latching_poset_terminal():
    lat = latching_category(poset_category(2), "2")
    # two non-identity arrows into 2: from 0 and from 1, one triangle
    assert sorted(lat.category.objects) == ["0<=2", "1<=2"]
    assert lat.forget.validate().passed
    assert validate_category(lat.category).passed
    nonid = lat.category.nonidentity()
    assert len(nonid) == 1  # the triangle 0<=2 -> 1<=2


def test_latching_empty_iff_no_incoming():
    c = zigzag_category()
    for o in c.objects:
        lat = latching_category(c, o)
        incoming = [m for m in c.to_obj(o) if not c.is_identity(m)]
        assert (len(lat.category.objects) == 0) == (len(incoming) == 0)


def test_is_free_poset2():
    q = is_free(poset_category(2))
    assert q is not None
    assert sorted(a[0] for a in q.arrows) == ["0<=1", "1<=2"]


def test_is_free_commutative_square_fails():
    # square poset: diagonal factors two ways
    square = product_category(poset_category(1), poset_category(1))
    assert is_free(square) is None


def test_is_free_discrete():
    d = discrete_category(["a", "b"])
    q = is_free(d)
    assert q is not None and q.arrows == ()


def test_free_category_regeneration():
    q = Quiver(("a", "b", "c"), (("f", "a", "b"), ("g", "b", "c"),
                                 ("h", "a", "b")))
    c = free_category_on_quiver(q)
    assert validate_category(c).passed
    back = is_free(c)
    assert back is not None
    assert sorted(a[0] for a in back.arrows) == ["f", "g", "h"]
    # path counting: f, h, g, g.f... composites: f,h,g, gf, gh
    assert len(c.nonidentity()) == 5


def test_free_category_rejects_cycle():
    q = Quiver(("a", "b"), (("f", "a", "b"), ("g", "b", "a")))
    with pytest.raises(ValueError):
        free_category_on_quiver(q)


def test_closure_isomorphisms_fixed_point():
    c = poset_category(2)
    isos = fincat.isomorphisms(c)
    w = closure_two_of_six(c, isos, "two-of-six")
    assert w.members == frozenset(isos)


def test_closure_zigzag_seed():
    c = zigzag_category()
    w = closure_two_of_six(c, {"w"}, "two-of-six")
    assert w.members == frozenset({"w"} | set(c.identity.values()))


def test_closure_all_morphisms():
    c = poset_category(2)
    allm = {m.mid for m in c.morphisms}
    w = closure_two_of_six(c, allm, "two-of-six")
    assert w.members == frozenset(allm)


def test_closure_idempotent_monotone():
    c = zigzag_category()
    w1 = closure_two_of_six(c, {"a"}, "two-of-six")
    w2 = closure_two_of_six(c, w1, "two-of-six")
    assert w1.members == w2.members
    smaller = closure_two_of_six(c, set(), "two-of-six")
    assert smaller.members <= w1.members
    assert "a" in w1.members
    assert set(c.identity.values()) <= w1.members


def test_closure_two_of_three_scan():
    c = poset_category(2)
    w = closure_two_of_six(c, {"0<=1", "1<=2"}, "two-of-three")
    # the composite is forced
    assert "0<=2" in w.members
    for f, g in c.composable_pairs():
        gf = c.comp(g, f)
        inside = (f in w.members) + (g in w.members) + (gf in w.members)
        assert inside != 2


def test_is_sieve_vertex_inclusions():
    p1 = poset_category(1)
    p0 = poset_category(0)
    incl0 = CatFunctor(p0, p1, {"0": "0"}, {"0<=0": "0<=0"})
    incl1 = CatFunctor(p0, p1, {"0": "1"}, {"0<=0": "1<=1"})
    assert is_sieve(incl0) is True
    assert is_sieve(incl1) is False


def test_is_sieve_requires_embedding():
    p1 = poset_category(1)
    collapse = CatFunctor(p1, poset_category(0),
                          {"0": "0", "1": "0"},
                          {m.mid: "0<=0" for m in p1.morphisms})
    with pytest.raises(ValueError):
        is_sieve(collapse)


def test_localize_isos_only():
    c = poset_category(2)
    weq = MorphismClass(c, frozenset(c.identity.values()), tag="weq")
    loc = localize_bounded(c, weq, budget=5)
    assert loc.status == "ok"
    # localization at isomorphisms is the category itself up to iso
    for a in c.objects:
        for b in c.objects:
            assert loc.hom_counts.get((a, b), 0) == len(c.hom(a, b))
    assert validate_category(loc.category).passed


def test_localize_zigzag_hom_ad():
    c = zigzag_category()
    weq = MorphismClass(c, frozenset({"w"} | set(c.identity.values())),
                        tag="weq")
    loc = localize_bounded(c, weq, budget=6)
    assert loc.status == "ok"
    assert loc.hom_counts[("A", "D")] == 1


def test_localize_interval_all_weqs_chaotic():
    c = poset_category(1)
    weq = MorphismClass(c, frozenset(m.mid for m in c.morphisms), tag="weq")
    loc = localize_bounded(c, weq, budget=6)
    assert loc.status == "ok"
    for a in c.objects:
        for b in c.objects:
            assert loc.hom_counts.get((a, b), 0) == 1, (a, b)


def test_localize_inconclusive_on_tiny_budget():
    # free category on a loop-ish zig-zag of weqs keeps growing words;
    # a tiny budget must refuse to answer rather than guess
    c = zigzag_category()
    weq = MorphismClass(c, frozenset({"w"} | set(c.identity.values())),
                        tag="weq")
    loc = localize_bounded(c, weq, budget=2)
    assert loc.status in ("ok", "inconclusive")
    # with the word [a, w^{-1}, c] needing length 3, budget 2 cannot stabilize
    assert loc.status == "inconclusive"


def test_weq_class_validation():
    c = zigzag_category()
    good = MorphismClass(c, frozenset({"w"} | set(c.identity.values())),
                         tag="weq")
    assert good.validate().passed
    missing_ids = MorphismClass(c, frozenset({"w"}), tag="weq")
    assert not missing_ids.validate().passed


def test_functor_validation():
    p1 = poset_category(1)
    bad = CatFunctor(p1, p1, {"0": "0", "1": "1"},
                     {"0<=0": "0<=0", "1<=1": "1<=1", "0<=1": "0<=0"})
    assert not bad.validate().passed
