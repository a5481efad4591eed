"""The thick subdivision of a truncated simplicial set or finite category:
a finite direct category of pairs (n, simplex) with injective monotone
reindexings, its projection (simplicial and categorical forms), its
weak-equivalence class, and the structural functors used downstream.
"""

import json
from dataclasses import dataclass

from .fincat import (CatFunctor, DegreeAssignment, FinCategory, Morphism,
                     MorphismClass, closure_two_of_six, is_direct, pair_id,
                     product_category)
from .sset import Nerve, all_injective_monotone, compose_monotone, nerve


def obj_id(n, sid):
    return json.dumps([n, sid])


def mor_id(inj, src, tgt):
    return json.dumps([list(inj), src, tgt])


@dataclass
class DCat:
    base: object                 # TruncatedSSet
    base_category: object        # FinCategory when base is its nerve, else None
    cap: int
    cat: FinCategory
    obj_data: dict               # object id -> (n, simplex id)
    mor_data: dict               # morphism id -> (inj tuple, src id, tgt id)
    weq: MorphismClass
    degree: DegreeAssignment

    def object_of(self, n, sid):
        return obj_id(n, sid)

    def simplex_of(self, o):
        return self.obj_data[o]


def _build_category(base, cap):
    objects = []
    obj_data = {}
    for n in range(cap + 1):
        for sid in base.cells(n):
            o = obj_id(n, sid)
            objects.append(o)
            obj_data[o] = (n, sid)
    morphisms = []
    mor_data = {}
    identity = {}
    for o, (n, sid) in obj_data.items():
        for m in range(n + 1):
            for inj in all_injective_monotone(m, n):
                src_sid = base.pullback(sid, inj)
                src = obj_id(m, src_sid)
                mid = mor_id(inj, src, o)
                morphisms.append(Morphism(mid, src, o))
                mor_data[mid] = (tuple(inj), src, o)
                if m == n:
                    identity[o] = mid
    compose = {}
    by_tgt = {}
    for mid, (inj, src, tgt) in mor_data.items():
        by_tgt.setdefault(tgt, []).append(mid)
    for g_mid, (g_inj, g_src, g_tgt) in mor_data.items():
        for f_mid in by_tgt.get(g_src, ()):  # f into src of g
            f_inj, f_src, _ = mor_data[f_mid]
            comp_inj = compose_monotone(g_inj, f_inj)
            compose[(g_mid, f_mid)] = mor_id(comp_inj, f_src, g_tgt)
    cat = FinCategory(objects, morphisms, identity, compose)
    return cat, obj_data, mor_data


def p_simplicial(dcat, chain):
    """Project a composable chain of subdivision morphisms to a simplex of
    the base.

    chain: list of morphism ids (possibly empty) starting at start_obj.
    For the empty chain pass the object id as start; returns the simplex
    f^* sigma_n with f(j) the image of the top element of the j-th stage.
    """
    if isinstance(chain, str):  # an object: the 0-chain at it
        n, sid = dcat.obj_data[chain]
        return dcat.base.pullback(sid, (n,))
    mors = [dcat.mor_data[m] for m in chain]
    if not mors:
        raise ValueError("pass an object id for zero-length chains")
    # stage dimensions k_0 .. k_n and the injections between them
    src0 = mors[0][1]
    ks = [dcat.obj_data[src0][0]] + [dcat.obj_data[m[2]][0] for m in mors]
    top_sid = dcat.obj_data[mors[-1][2]][1]
    f = []
    for j in range(len(ks)):
        v = ks[j]
        for inj, _, _ in mors[j:]:
            v = inj[v]
        f.append(v)
    return dcat.base.pullback(top_sid, tuple(f))


def _p_degenerate_edges(dcat):
    edges = set()
    base = dcat.base
    for m in dcat.cat.morphisms:
        image = p_simplicial(dcat, [m.mid])
        if base.is_degenerate(image):
            edges.add(m.mid)
    return edges


def p_categorical(dcat):
    """The functor to the base category: a chain goes to its last object, a
    reindexing to the composite arrow between top vertices."""
    if dcat.base_category is None:
        raise ValueError("base is not the nerve of a category")
    base_cat = dcat.base_category
    nerve_trunc = dcat.base
    ob = {}
    for o, (n, sid) in dcat.obj_data.items():
        ob[o] = nerve_trunc.last_object(sid)
    mo = {}
    for mid, (inj, src, tgt) in dcat.mor_data.items():
        m = dcat.obj_data[src][0]
        n, sid = dcat.obj_data[tgt]
        start, mors = nerve_trunc.chain_of[sid]
        acc = base_cat.id_of(ob[src])
        for j in range(inj[m], n):
            acc = base_cat.comp(mors[j], acc)
        mo[mid] = acc
    fun = CatFunctor(dcat.cat, base_cat, ob, mo)
    rep = fun.validate()
    if not rep.passed:
        raise AssertionError(f"projection not functorial: {rep.violations[:3]}")
    return fun


def d_weak_equivalences(cat_only, base, obj_data, mor_data, base_category):
    """Closure of the p-degenerate edges under 2-out-of-6; for nerve bases
    also computes the p-iso class and asserts agreement."""
    stub = DCat(base, base_category, 0, cat_only, obj_data, mor_data, None, None)
    seed = _p_degenerate_edges(stub)
    weq = closure_two_of_six(cat_only, seed, mode="two-of-six")
    if base_category is not None:
        fun = p_categorical(stub)
        from .fincat import isomorphisms
        isos = isomorphisms(base_category)
        iso_class = {m.mid for m in cat_only.morphisms if fun.on_mor(m.mid) in isos}
        if set(weq.members) != iso_class:
            raise AssertionError(
                "2-out-of-6 closure disagrees with the p-iso criterion")
    return weq


def d_subdivision(base, cap):
    """Thick subdivision of a truncated simplicial set or a finite category
    (via its nerve), with weak equivalences and dimension degrees."""
    base_category = None
    if isinstance(base, FinCategory):
        base_category = base
        base = nerve(base, cap)
    elif isinstance(base, Nerve):
        base_category = base.category
    if base.cap < cap:
        raise ValueError("base truncated below the requested cap")
    cat, obj_data, mor_data = _build_category(base, cap)
    weq = d_weak_equivalences(cat, base, obj_data, mor_data, base_category)
    degree = DegreeAssignment({o: n for o, (n, _) in obj_data.items()})
    dcat = DCat(base, base_category, cap, cat, obj_data, mor_data, weq, degree)
    found = is_direct(cat)
    if found is None or not degree.check(cat):
        raise AssertionError("subdivision failed to be direct")
    return dcat


def d_of_map(f, d_src, d_tgt):
    """The functor between subdivisions induced by a simplicial map:
    (n, sigma) -> (n, f sigma), identity on the indexing injections."""
    ob = {}
    for o, (n, sid) in d_src.obj_data.items():
        ob[o] = obj_id(n, f(sid))
    mo = {}
    for mid, (inj, src, tgt) in d_src.mor_data.items():
        mo[mid] = mor_id(inj, ob[src], ob[tgt])
    fun = CatFunctor(d_src.cat, d_tgt.cat, ob, mo)
    rep = fun.validate()
    if not rep.passed:
        raise AssertionError(f"D(f) not functorial: {rep.violations[:3]}")
    for w in d_src.weq.members:
        if mo[w] not in d_tgt.weq.members:
            raise AssertionError(f"D(f) not homotopical at {w}")
    return fun


def frame_embedding(n, dcat):
    """[n] -> D[n] sending a to the front inclusion [a] -> [n].

    dcat must be the subdivision of the poset [n] (nerve model)."""
    from .fincat import poset_category
    from .sset import chain_id
    pn = poset_category(n)
    ob = {}
    for a in range(n + 1):
        sid = chain_id("0", tuple(f"{i}<={i+1}" for i in range(a)))
        ob[str(a)] = obj_id(a, sid)
    mo = {}
    for m in pn.morphisms:
        i, j = int(m.src), int(m.tgt)
        inj = tuple(range(i + 1))
        mo[m.mid] = mor_id(inj, ob[str(i)], ob[str(j)])
    fun = CatFunctor(pn, dcat.cat, ob, mo)
    rep = fun.validate()
    if not rep.passed:
        raise AssertionError(f"frame embedding invalid: {rep.violations[:3]}")
    proj = p_categorical(dcat)
    comp = fun.then(proj)
    if not comp.is_identity_functor():
        raise AssertionError("p after the frame embedding is not the identity")
    return fun


def projection_comparison(d_prod, d_k, d_l):
    """D(K x L) -> DK x DL, (n, (sigma, tau)) -> ((n, sigma), (n, tau));
    homotopical by construction (asserted)."""
    from .fincat import split_pair
    prod_cat = product_category(d_k.cat, d_l.cat)
    ob = {}
    for o, (n, sid) in d_prod.obj_data.items():
        a, b = split_pair(sid)
        ob[o] = pair_id(obj_id(n, a), obj_id(n, b))
    mo = {}
    for mid, (inj, src, tgt) in d_prod.mor_data.items():
        n_src, s_sid = d_prod.obj_data[src]
        n_tgt, t_sid = d_prod.obj_data[tgt]
        sa, sb = split_pair(s_sid)
        ta, tb = split_pair(t_sid)
        mo[mid] = pair_id(mor_id(inj, obj_id(n_src, sa), obj_id(n_tgt, ta)),
                          mor_id(inj, obj_id(n_src, sb), obj_id(n_tgt, tb)))
    fun = CatFunctor(d_prod.cat, prod_cat, ob, mo)
    rep = fun.validate()
    if not rep.passed:
        raise AssertionError(f"comparison not functorial: {rep.violations[:3]}")
    for w in d_prod.weq.members:
        a, b = split_pair(mo[w])
        if a not in d_k.weq.members or b not in d_l.weq.members:
            raise AssertionError("comparison not homotopical")
    return fun, prod_cat
