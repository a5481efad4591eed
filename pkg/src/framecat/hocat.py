"""Homotopy categories of truncated simplicial sets and the rank machinery
for nerves of free categories: unit map, primitive factorization, rank
filtration and its pushout decomposition.
"""

from dataclasses import dataclass

from . import words
from .fincat import CatFunctor, FinCategory
from .sset import (Nerve, SimplicialMap, chain_id, delta, disjoint_union,
                   generalized_inner_horn, nerve, pushout_sset,
                   simplex_classifying_map, sub_sset)


@dataclass
class HocatResult:
    status: str                   # "ok" | "inconclusive"
    category: FinCategory | None
    edge_morphism: dict | None    # nondegenerate edge id -> morphism id
    class_rep: dict | None        # morphism id -> canonical generator word


def _edge_letter(k, e):
    return words.Letter(e, False, k.face(e, 1), k.face(e, 0))


def homotopy_category(k, budget=8):
    """Free category on the nondegenerate edges modulo the relations imposed
    by 2-simplices, computed by bounded word saturation."""
    if k.cap < 2:
        raise ValueError("homotopy category needs cap >= 2")
    vertices = list(k.cells(0))
    edges = k.nondegenerate(1)
    letters = [_edge_letter(k, e) for e in edges]

    def edge_word(e):
        src = k.face(e, 1)
        if k.is_degenerate(e):
            return (src, ())
        return (src, (_edge_letter(k, e),))

    rules = []
    for t in k.nondegenerate(2):
        d0, d1, d2 = k.face(t, 0), k.face(t, 1), k.face(t, 2)
        lhs_src, lhs_a = edge_word(d2)
        _, lhs_b = edge_word(d0)
        rules.append(((lhs_src, lhs_a + lhs_b), edge_word(d1)))
    try:
        sat = words.saturate(vertices, letters, rules, budget)
    except OverflowError:
        return HocatResult("inconclusive", None, None, None)
    if not sat.stabilized:
        return HocatResult("inconclusive", None, None, None)
    category, class_rep = sat.present_category()
    if category is None:
        return HocatResult("inconclusive", None, None, None)
    edge_morphism = {}
    for e in edges:
        edge_morphism[e] = sat.class_id(edge_word(e))
    reps = {mid: tuple(l.name for l in word[1])
            for mid, word in class_rep.items()}
    return HocatResult("ok", category, edge_morphism, reps)


def counit_comparison(category, hocat_result, nerve_trunc):
    """For K = N(C): the canonical functor h(NC) -> C (composite of the
    chain of each generator)."""
    h = hocat_result.category
    ob = {}
    for v in h.objects:
        ob[v] = nerve_trunc.last_object(v)  # vertex chain -> its object
    mo = {}
    for m in h.morphisms:
        word = hocat_result.class_rep[m.mid]
        acc = category.id_of(ob[m.src])
        for e in word:
            acc = category.comp(nerve_trunc.composite(e), acc)
        mo[m.mid] = acc
    return CatFunctor(h, category, ob, mo)


# ---------------------------------------------------------------------------
# rank machinery for 1-skeletal K

@dataclass
class RankContext:
    k: object                    # the OneSkeletal source
    hc: FinCategory              # its homotopy category (free)
    hom: HocatResult
    nerve: Nerve                 # N(hK) truncated
    cap: int
    rank_of_morphism: dict       # morphism id of hc -> generator word length

    def rank(self, cid):
        """Rank of a simplex of N(hK): the rank of its long edge."""
        return self.rank_of_morphism[self.nerve.composite(cid)]

    def is_primitive(self, cid):
        start, mors = self.nerve.chain_of[cid]
        return all(self.rank_of_morphism[m] == 1 for m in mors)


def rank_context(k, cap=None, budget=8):
    """Build N(hK) and rank bookkeeping for a 1-skeletal K."""
    if any(len(k.nondegenerate(n)) for n in range(2, k.cap + 1)):
        raise ValueError("rank machinery requires a 1-skeletal set")
    if cap is None:
        cap = k.cap
    res = homotopy_category(k, budget=budget)
    if res.status != "ok":
        raise ValueError("homotopy category did not stabilize; raise budget")
    nerve_trunc = nerve(res.category, cap)
    ranks = {mid: len(word) for mid, word in res.class_rep.items()}
    return RankContext(k, res.category, res, nerve_trunc, cap, ranks)


def unit_map(ctx):
    """K -> N(hK): identity on vertices, nondegenerate edges to their rank-1
    morphisms; extended to degeneracies.  Asserts injectivity."""
    k, nerve_trunc = ctx.k, ctx.nerve
    h = ctx.hc
    mapping = {}
    for v in k.cells(0):
        # vertices of hc are the vertex ids of K
        mapping[v] = chain_id(v, ())
    for n in range(1, k.cap + 1):
        for x in k.cells(n):
            pre = None
            for y in k.cells(n - 1):
                for i in range(n):
                    if k.degeneracies.get((y, i)) == x:
                        pre = (y, i)
                        break
                if pre:
                    break
            if pre is not None:
                y, i = pre
                mapping[x] = nerve_trunc.deg(mapping[y], i)
            else:
                if n != 1:
                    raise ValueError("not 1-skeletal")
                mid = ctx.hom.edge_morphism[x]
                mapping[x] = chain_id(h.src(mid), (mid,))
    m = SimplicialMap(k, nerve_trunc, mapping)
    if not m.is_injective():
        raise AssertionError("unit map failed to be injective")
    return m


def rank_of_simplex(ctx, cid):
    return ctx.rank(cid)


def primitive_simplices(ctx, n):
    """All primitive n-simplices of N(hK) (necessarily of rank n)."""
    return [c for c in ctx.nerve.cells(n) if ctx.is_primitive(c)]


def primitive_factorization(ctx, cid):
    """The unique (primitive tau, monotone f) with f^* tau = sigma."""
    m = ctx.nerve.dim(cid)
    n = ctx.rank(cid)
    if n > ctx.cap:
        raise ValueError("rank exceeds the truncation cap")
    start, mors = ctx.nerve.chain_of[cid]
    long_word = ctx.hom.class_rep[ctx.nerve.composite(cid)]
    gen_of_edge = ctx.hom.edge_morphism
    tau_mors = tuple(gen_of_edge[e] for e in long_word)
    tau_start = start
    tau = chain_id(tau_start, tau_mors)
    f = [0]
    acc = ctx.hc.id_of(start)
    for mor in mors:
        acc = ctx.hc.comp(mor, acc)
        f.append(ctx.rank_of_morphism[acc])
    f = tuple(f)
    if ctx.nerve.pullback(tau, f) != cid:
        raise AssertionError("primitive factorization does not recover the simplex")
    return tau, f


def rank_filtration_subset(ctx, n):
    """K^(n): the simplices of N(hK) of rank at most n, as a subset."""
    gens = [c for c in ctx.nerve.all_simplices() if ctx.rank(c) <= n]
    return sub_sset(ctx.nerve, gens)[0]


@dataclass
class FiltrationStep:
    n: int
    passed: bool
    witness: str | None
    primitive_count: int


def verify_filtration_step(ctx, n):
    """Recompute the pushout X_n x horn -> X_n x simplex over K^(n-1) and
    check the canonical comparison with K^(n) is an isomorphism."""
    if n < 2:
        raise ValueError("pushout decomposition applies for n >= 2")
    if n > ctx.cap:
        raise ValueError("n beyond the cap")
    cap = ctx.cap
    kn = rank_filtration_subset(ctx, n)
    kn1 = rank_filtration_subset(ctx, n - 1)
    xn = primitive_simplices(ctx, n)
    if not xn:
        same = kn.counts() == kn1.counts()
        return FiltrationStep(n, same, None if same else "missing primitives",
                              0)
    horn, amb = generalized_inner_horn(n, cap)
    dn = delta(n, cap)
    horns, horn_incls = disjoint_union([horn] * len(xn))
    deltas, delta_incls = disjoint_union([dn] * len(xn))
    # A -> B: horn inclusion on each copy
    a_to_b = SimplicialMap(horns, deltas, {
        f"{i}/{x}": f"{i}/{x}"
        for i in range(len(xn)) for x in horn.all_simplices()
    })
    # A -> C: tautological map into K^(n-1)
    taut = {}
    for i, tau in enumerate(xn):
        cls = simplex_classifying_map(ctx.nerve, tau, cap)
        for x in horn.all_simplices():
            taut[f"{i}/{x}"] = cls(x)
    a_to_c = SimplicialMap(horns, kn1, taut)
    rep_a = a_to_b.validate()
    rep_c = a_to_c.validate()
    if not (rep_a.passed and rep_c.passed):
        return FiltrationStep(n, False, "span maps invalid", len(xn))
    p, into_b, into_c = pushout_sset(a_to_b, a_to_c)
    # canonical comparison P -> K^(n)
    comp = {}
    ok = True
    witness = None
    for i, tau in enumerate(xn):
        cls = simplex_classifying_map(ctx.nerve, tau, cap)
        for x in dn.all_simplices():
            image = cls(x)
            key = into_b(f"{i}/{x}")
            if key in comp and comp[key] != image:
                ok = False
                witness = key
            comp[key] = image
    for x in kn1.all_simplices():
        key = into_c(x)
        if key in comp and comp[key] != x:
            ok = False
            witness = key
        comp[key] = x
    if not ok:
        return FiltrationStep(n, False, f"comparison ill-defined at {witness}",
                              len(xn))
    cmp_map = SimplicialMap(p, kn, comp)
    if not cmp_map.validate().passed:
        return FiltrationStep(n, False, "comparison not simplicial", len(xn))
    if not cmp_map.is_isomorphism():
        extra = [x for x in kn.all_simplices()
                 if x not in set(comp.values())]
        return FiltrationStep(n, False,
                              f"not bijective, e.g. {extra[:1]}", len(xn))
    return FiltrationStep(n, True, None, len(xn))


def verify_filtration(ctx, upto=None):
    """All steps 2..upto plus the base identification K ~ K^(1) and the
    union property."""
    if upto is None:
        upto = ctx.cap
    results = []
    unit = unit_map(ctx)
    k1 = rank_filtration_subset(ctx, 1)
    base_ok = (sorted(unit.mapping.values()) ==
               sorted(k1.all_simplices()))
    results.append(FiltrationStep(1, base_ok,
                                  None if base_ok else "K != K^(1)",
                                  len(primitive_simplices(ctx, 1))))
    for n in range(2, upto + 1):
        results.append(verify_filtration_step(ctx, n))
    top = rank_filtration_subset(ctx, upto)
    max_rank = max(ctx.rank(c) for c in ctx.nerve.all_simplices())
    if max_rank <= upto:
        union_ok = top.counts() == list(ctx.nerve.counts())
        results.append(FiltrationStep(-1, union_ok,
                                      None if union_ok else "union misses cells",
                                      0))
    return results
