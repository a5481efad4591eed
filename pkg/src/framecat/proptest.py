"""Seeded property-test harness with shrinking.

Runs the module invariants on randomly generated inputs; on failure the
counterexample is minimized by reducing degree range first, then dimensions,
then object count, and reported in minimized form.
"""

from dataclasses import dataclass

import numpy as np

from . import chaincof as cc
from . import fincat, linmod, rand


@dataclass
class PropRecord:
    prop: str
    case: int
    passed: bool
    details: str = ""


# -- shrinkers ---------------------------------------------------------------

def shrink_complex(x):
    """Candidates: drop the top degree, then trim the last basis vector of
    some degree (submatrices keep d∘d = 0)."""
    degs = x.degrees()
    if not degs:
        return
    top = degs[-1]
    yield cc.ChainComplex(x.p, {n: d for n, d in x.dims.items() if n != top},
                          {n: m for n, m in x.d.items()
                           if n != top and n - 1 != top}, check=False)
    for n in degs:
        if x.dim(n) <= 0:
            continue
        dims = dict(x.dims)
        dims[n] -= 1
        diffs = {}
        for m, mat in x.d.items():
            mat2 = mat
            if m == n:
                mat2 = mat2[:, :-1]
            if m - 1 == n:
                mat2 = mat2[:-1, :]
            diffs[m] = mat2
        yield cc.ChainComplex(x.p, dims, diffs, check=False)


def shrink_map(f):
    """Drop the top degree of both endpoints at once."""
    degs = sorted(set(f.src.dims) | set(f.tgt.dims))
    if not degs:
        return
    top = degs[-1]

    def drop(x):
        return cc.ChainComplex(x.p,
                               {n: d for n, d in x.dims.items() if n != top},
                               {n: m for n, m in x.d.items()
                                if n != top and n - 1 != top}, check=False)

    src, tgt = drop(f.src), drop(f.tgt)
    blocks = {n: b for n, b in f.blocks.items() if n != top}
    yield cc.ChainMap(src, tgt, blocks, check=False)


def shrink_category(cat):
    """Full subcategories dropping one object at a time."""
    for o in cat.objects:
        keep = [x for x in cat.objects if x != o]
        morphisms = [m for m in cat.morphisms
                     if m.src in keep and m.tgt in keep]
        mids = {m.mid for m in morphisms}
        identity = {x: cat.identity[x] for x in keep}
        compose = {(g, f): gf for (g, f), gf in cat.compose_table.items()
                   if g in mids and f in mids}
        yield fincat.FinCategory(keep, morphisms, identity, compose)


def minimize(case, predicate, shrinker, rounds=20):
    """Greedy shrink: repeatedly take the first shrink candidate that still
    fails the predicate."""
    current = case
    for _ in range(rounds):
        for cand in shrinker(current):
            try:
                ok, _ = predicate(cand)
            except Exception:
                ok = True  # invalid shrink, skip
            if not ok:
                current = cand
                break
        else:
            break
    return current


# -- properties ---------------------------------------------------------------

def _prop_category_valid(rng, p):
    cat = rand.random_direct_category(rng)

    def pred(c):
        rep = fincat.validate_category(c)
        return rep.passed, "; ".join(rep.violations[:2])

    return cat, pred, shrink_category, _describe_cat


def _prop_mutation_detected(rng, p):
    cat = rand.random_direct_category(rng)
    keys = sorted(cat.compose_table)
    nontrivial = [k for k in keys
                  if not cat.is_identity(k[0]) or not cat.is_identity(k[1])]
    if not nontrivial:
        # nothing to corrupt; pass vacuously by corrupting an identity pair
        nontrivial = keys
    g, f = nontrivial[int(rng.integers(0, len(nontrivial)))]
    table = dict(cat.compose_table)
    mids = sorted(m.mid for m in cat.morphisms if m.mid != table[(g, f)])
    if not mids:
        return cat, (lambda c: (True, "")), shrink_category, _describe_cat
    table[(g, f)] = mids[int(rng.integers(0, len(mids)))]
    corrupted = fincat.FinCategory(cat.objects, cat.morphisms, cat.identity,
                                   table)

    def pred(c):
        rep = fincat.validate_category(c)
        return not rep.passed, "corruption went undetected"

    return corrupted, pred, lambda c: iter(()), _describe_cat


def _prop_closure(rng, p):
    cat = rand.random_direct_category(rng)
    nonid = cat.nonidentity()
    seed = {m for m in nonid if rng.random() < 0.4}

    def pred(c):
        w1 = fincat.closure_two_of_six(c, seed & {m.mid for m in c.morphisms},
                                       "two-of-six")
        w2 = fincat.closure_two_of_six(c, w1, "two-of-six")
        if w1.members != w2.members:
            return False, "closure not idempotent"
        if not (seed & {m.mid for m in c.morphisms}) <= w1.members:
            return False, "closure lost the seed"
        if not set(c.identity.values()) <= w1.members:
            return False, "closure lost identities"
        w3 = fincat.closure_two_of_six(c, set(), "two-of-six")
        if not w3.members <= w1.members:
            return False, "closure not monotone"
        return True, ""

    return cat, pred, shrink_category, _describe_cat


def _prop_homology_rank(rng, p):
    x = rand.random_complex(rng, p)

    def pred(z):
        hv = cc.HomologyView(z)
        for n in z.degrees():
            expect = z.dim(n) - linmod.rank(z.diff(n), z.p) \
                - linmod.rank(z.diff(n + 1), z.p)
            if hv.dim(n) != expect:
                return False, f"H_{n}: {hv.dim(n)} != {expect}"
        return True, ""

    return x, pred, shrink_complex, _describe_complex


def _prop_factorize(rng, p):
    x = rand.random_complex(rng, p)
    y = rand.random_complex(rng, p)
    f = rand.random_chain_map(rng, x, y)

    def pred(g):
        try:
            cyl, i, q = cc.factorize(g)
        except AssertionError as exc:
            return False, str(exc)
        if cc.compose_chain_maps(q, i) != g:
            return False, "composite differs"
        return True, ""

    return f, pred, shrink_map, _describe_map


def _prop_pushout(rng, p):
    a = rand.random_complex(rng, p, max_dim=2)
    fresh = rand.random_complex(rng, p, max_dim=2)
    b, incs, _ = cc.direct_sum([a, fresh], p=p)
    i = incs[0]
    gmap = rand.random_chain_map(rng, a, rand.random_complex(rng, p, max_dim=2))

    def pred(case):
        i_, g_ = case
        try:
            po = cc.pushout_along_cofibration(i_, g_)
        except AssertionError as exc:
            return False, str(exc)
        if cc.compose_chain_maps(po.from_b, i_) != \
           cc.compose_chain_maps(po.from_c, g_):
            return False, "pushout square does not commute"
        return True, ""

    return (i, gmap), pred, lambda c: iter(()), lambda c: "pushout case"


def _prop_reedy_oracle(rng, p):
    index = rand.random_direct_category(rng, max_objects=4, max_arrows=4)
    x = rand.random_reedy_cofibrant_diagram(rng, index, p, max_dim=2,
                                            max_degree=1, total_budget=8)

    def pred(diag):
        from .suites import _verify_colimit_characterization
        colim = cc.reedy_colimit(diag)
        return _verify_colimit_characterization(diag, colim)

    return x, pred, lambda c: iter(()), lambda c: _describe_cat(c.index)


def _prop_two_of_six(rng, p):
    """hg, gf weqs => f, g, h, hgf weqs, on a perturbed retract triple."""
    a = rand.random_complex(rng, p, max_dim=2)
    acy1 = rand.random_acyclic_complex(rng, p)
    acy2 = rand.random_acyclic_complex(rng, p)
    b, incs_b, projs_b = cc.direct_sum([a, acy1], p=p)
    c_, incs_c, projs_c = cc.direct_sum([a, acy2], p=p)
    f = incs_b[0]
    g = cc.compose_chain_maps(incs_c[0], projs_b[0])
    h = projs_c[0]

    def perturb(m, salt):
        r2 = rand.rng_for(int(rng.integers(0, 2**31)), salt)
        slots, basis = rand.chain_map_space(m.src, m.tgt)
        if basis.shape[1] == 0:
            return m
        # add a boundary-style perturbation that cannot change homology:
        # d∘xi + xi∘d for a random degree-raising xi
        xi_blocks = {}
        for n in m.src.dims:
            if m.tgt.dim(n + 1):
                xi_blocks[n] = r2.integers(
                    0, p, size=(m.tgt.dim(n + 1), m.src.dim(n))).astype(np.int64)
        pert = {}
        for n in set(m.src.dims) & set(m.tgt.dims):
            term = np.zeros((m.tgt.dim(n), m.src.dim(n)), dtype=np.int64)
            if n in xi_blocks:
                term = (term + linmod.matmul(m.tgt.diff(n + 1),
                                             xi_blocks[n], p)) % p
            if n - 1 in xi_blocks:
                term = (term + linmod.matmul(xi_blocks[n - 1],
                                             m.src.diff(n), p)) % p
            pert[n] = (m.block(n) + term) % p
        return cc.ChainMap(m.src, m.tgt, pert)

    f2, g2, h2 = perturb(f, 1), perturb(g, 2), perturb(h, 3)

    def pred(triple):
        f_, g_, h_ = triple
        hg = cc.compose_chain_maps(h_, g_)
        gf = cc.compose_chain_maps(g_, f_)
        if not (cc.is_weq(hg) and cc.is_weq(gf)):
            return False, "setup failed: premises not weqs"
        hgf = cc.compose_chain_maps(hg, f_)
        for name, m in [("f", f_), ("g", g_), ("h", h_), ("hgf", hgf)]:
            if not cc.is_weq(m):
                return False, f"{name} failed 2-out-of-6"
        return True, ""

    return (f2, g2, h2), pred, lambda c: iter(()), lambda c: "triple"


def _describe_complex(x):
    return f"complex dims={dict(sorted(x.dims.items()))}"


def _describe_map(f):
    return (f"map {_describe_complex(f.src)} -> {_describe_complex(f.tgt)}")


def _describe_cat(c):
    return f"category with {len(c.objects)} objects, {len(c.morphisms)} morphisms"


PROPERTIES = {
    "category-valid": _prop_category_valid,
    "mutation-detected": _prop_mutation_detected,
    "closure-laws": _prop_closure,
    "homology-rank": _prop_homology_rank,
    "factorize-laws": _prop_factorize,
    "pushout-laws": _prop_pushout,
    "reedy-oracle": _prop_reedy_oracle,
    "two-of-six": _prop_two_of_six,
}


def run_property_tests(seed=0, count=100, prime=2):
    """Spread `count` cases across the property families; deterministic in
    (seed, count, prime)."""
    records = []
    names = sorted(PROPERTIES)
    per = max(1, count // len(names))
    for fam_idx, name in enumerate(names):
        build = PROPERTIES[name]
        for case in range(per):
            rng = rand.rng_for(seed, 20000 + fam_idx * 1000 + case)
            try:
                obj, pred, shrinker, describe = build(rng, prime)
                ok, detail = pred(obj)
            except Exception as exc:
                records.append(PropRecord(name, case, False,
                                          f"exception: {exc}"))
                continue
            if ok:
                records.append(PropRecord(name, case, True))
            else:
                small = minimize(obj, pred, shrinker)
                try:
                    _, detail = pred(small)
                except Exception as exc:
                    detail = str(exc)
                records.append(PropRecord(
                    name, case, False,
                    f"minimized: {describe(small)}; {detail}"))
    records.sort(key=lambda r: (r.prop, r.case))
    return records
