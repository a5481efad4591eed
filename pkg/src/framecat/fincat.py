"""Finite categories as total composition tables, with the analysis
operations the rest of the package is built on: validation, products,
direct-category degrees, latching categories, freeness, weak-equivalence
closures, sieves and bounded localization.

Object and morphism ids are strings.  Categories are immutable after
construction; all operations are pure.
"""

import json
from dataclasses import dataclass, field

from . import words


def pair_id(a, b):
    """Unambiguous id for a pair (used by product categories)."""
    return json.dumps([a, b])


def split_pair(pid):
    a, b = json.loads(pid)
    return a, b


@dataclass(frozen=True)
class Morphism:
    mid: str
    src: str
    tgt: str


class FinCategory:
    def __init__(self, objects, morphisms, identity, compose):
        self.objects = tuple(objects)
        self.morphisms = tuple(
            m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms
        )
        self.identity = dict(identity)
        self.compose_table = dict(compose)
        self._mor = {m.mid: m for m in self.morphisms}
        self._by_src = {o: [] for o in self.objects}
        self._by_tgt = {o: [] for o in self.objects}
        for m in self.morphisms:
            if m.src in self._by_src:
                self._by_src[m.src].append(m.mid)
            if m.tgt in self._by_tgt:
                self._by_tgt[m.tgt].append(m.mid)
        self._identity_ids = set(self.identity.values())

    # -- lookups ------------------------------------------------------
    def mor(self, mid):
        return self._mor[mid]

    def has_mor(self, mid):
        return mid in self._mor

    def src(self, mid):
        return self._mor[mid].src

    def tgt(self, mid):
        return self._mor[mid].tgt

    def id_of(self, obj):
        return self.identity[obj]

    def is_identity(self, mid):
        return mid in self._identity_ids

    def comp(self, g, f):
        """g after f."""
        return self.compose_table[(g, f)]

    def from_obj(self, obj):
        return self._by_src[obj]

    def to_obj(self, obj):
        return self._by_tgt[obj]

    def hom(self, x, y):
        return [m for m in self._by_src[x] if self.tgt(m) == y]

    def composable_pairs(self):
        """All (f, g) with g after f defined."""
        for f in self.morphisms:
            for g in self._by_src[f.tgt]:
                yield f.mid, g

    def composable_triples(self):
        """All (f, g, h) consecutively composable."""
        for f in self.morphisms:
            for g in self._by_src[f.tgt]:
                for h in self._by_src[self.tgt(g)]:
                    yield f.mid, g, h

    def nonidentity(self):
        return [m.mid for m in self.morphisms if not self.is_identity(m.mid)]

    def __repr__(self):
        return (f"FinCategory({len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


@dataclass(frozen=True)
class MorphismClass:
    category: FinCategory
    members: frozenset
    tag: str = ""

    def __contains__(self, mid):
        return mid in self.members

    def validate(self):
        report = ValidationReport()
        for mid in self.members:
            if not self.category.has_mor(mid):
                report.fail(f"member {mid} not a morphism of the category")
        if self.tag == "weq":
            missing = [i for i in self.category.identity.values()
                       if i not in self.members]
            if missing:
                report.fail(f"weq class misses identities: {sorted(missing)}")
            for iso in isomorphisms(self.category):
                if iso not in self.members:
                    report.fail(f"weq class misses isomorphism {iso}")
            for f, g in self.category.composable_pairs():
                gf = self.category.comp(g, f)
                inside = sum(m in self.members for m in (f, g, gf))
                if inside == 2:
                    report.fail(f"weq class not 2-out-of-3 closed at ({g},{f})")
        return report


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def fail(self, msg):
        self.violations.append(msg)

    def merge(self, other):
        self.violations.extend(other.violations)


@dataclass(frozen=True)
class DegreeAssignment:
    degree: dict

    def check(self, cat):
        for mid in cat.nonidentity():
            if self.degree[cat.src(mid)] >= self.degree[cat.tgt(mid)]:
                return False
        return True


class CatFunctor:
    def __init__(self, source, target, ob_map, mor_map):
        self.source = source
        self.target = target
        self.ob_map = dict(ob_map)
        self.mor_map = dict(mor_map)

    def on_obj(self, o):
        return self.ob_map[o]

    def on_mor(self, m):
        return self.mor_map[m]

    def validate(self):
        report = ValidationReport()
        for o in self.source.objects:
            if o not in self.ob_map or self.ob_map[o] not in self.target.objects:
                report.fail(f"object {o} not mapped into the target")
                return report
        for m in self.source.morphisms:
            if m.mid not in self.mor_map:
                report.fail(f"morphism {m.mid} unmapped")
                return report
            im = self.mor_map[m.mid]
            if not self.target.has_mor(im):
                report.fail(f"morphism {m.mid} maps to unknown {im}")
                return report
            if self.target.src(im) != self.ob_map[m.src] or \
               self.target.tgt(im) != self.ob_map[m.tgt]:
                report.fail(f"functor breaks src/tgt at {m.mid}")
        if not report.passed:
            return report
        for o in self.source.objects:
            if self.mor_map[self.source.id_of(o)] != self.target.id_of(self.ob_map[o]):
                report.fail(f"functor breaks identity at {o}")
        for f, g in self.source.composable_pairs():
            lhs = self.mor_map[self.source.comp(g, f)]
            rhs = self.target.comp(self.mor_map[g], self.mor_map[f])
            if lhs != rhs:
                report.fail(f"functor breaks composition at ({g},{f})")
        return report

    def then(self, other):
        """other after self."""
        if other.source is not self.target:
            # allow structurally distinct but compatible categories
            pass
        ob = {o: other.ob_map[v] for o, v in self.ob_map.items()}
        mo = {m: other.mor_map[v] for m, v in self.mor_map.items()}
        return CatFunctor(self.source, other.target, ob, mo)

    def is_identity_functor(self):
        return (all(o == v for o, v in self.ob_map.items())
                and all(m == v for m, v in self.mor_map.items()))


def identity_functor(cat):
    return CatFunctor(cat, cat,
                      {o: o for o in cat.objects},
                      {m.mid: m.mid for m in cat.morphisms})


# ---------------------------------------------------------------------------
# constructors

def poset_category(n):
    """The poset [n] as a category; objects "0".."n", morphism i->j is "i<=j"."""
    objects = [str(i) for i in range(n + 1)]
    morphisms = []
    identity = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            mid = f"{i}<={j}"
            morphisms.append(Morphism(mid, str(i), str(j)))
            if i == j:
                identity[str(i)] = mid
    compose = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                compose[(f"{j}<={k}", f"{i}<={j}")] = f"{i}<={k}"
    return FinCategory(objects, morphisms, identity, compose)


def discrete_category(obj_ids):
    objects = list(obj_ids)
    morphisms = [Morphism(f"id_{o}", o, o) for o in objects]
    identity = {o: f"id_{o}" for o in objects}
    compose = {(f"id_{o}", f"id_{o}"): f"id_{o}" for o in objects}
    return FinCategory(objects, morphisms, identity, compose)


def zigzag_category():
    """A -> B <- C -> D, the four-object zig-zag."""
    objects = ["A", "B", "C", "D"]
    morphisms = [Morphism(f"id_{o}", o, o) for o in objects]
    morphisms += [Morphism("a", "A", "B"), Morphism("w", "C", "B"),
                  Morphism("c", "C", "D")]
    identity = {o: f"id_{o}" for o in objects}
    compose = {}
    for m in morphisms:
        compose[(f"id_{m.tgt}", m.mid)] = m.mid
        compose[(m.mid, f"id_{m.src}")] = m.mid
    # no other composable pairs exist; composing two identities is covered
    return FinCategory(objects, morphisms, identity, compose)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (aid, src, tgt)


def free_category_on_quiver(quiver, max_paths=100000):
    """Path category of a DAG quiver; morphism ids are '.'-joined arrow ids.

    Raises ValueError if the quiver has a cycle (the free category would be
    infinite).
    """
    adj = {v: [] for v in quiver.vertices}
    for aid, s, t in quiver.arrows:
        adj[s].append((aid, t))
    # cycle check by DFS colouring
    state = {v: 0 for v in quiver.vertices}

    def visit(v):
        state[v] = 1
        for _, t in adj[v]:
            if state[t] == 1:
                raise ValueError("quiver has a cycle; free category is infinite")
            if state[t] == 0:
                visit(t)
        state[v] = 2

    for v in quiver.vertices:
        if state[v] == 0:
            visit(v)

    paths = {}  # mid -> (src, tgt, tuple of arrow ids)
    identity = {v: f"id_{v}" for v in quiver.vertices}
    for v in quiver.vertices:
        paths[identity[v]] = (v, v, ())

    frontier = [((aid,), s, t) for aid, s, t in quiver.arrows]
    while frontier:
        word, s, t = frontier.pop()
        mid = ".".join(word)
        if mid in paths:
            continue
        paths[mid] = (s, t, word)
        if len(paths) > max_paths:
            raise ValueError("free category too large")
        for aid, t2 in adj[t]:
            frontier.append((word + (aid,), s, t2))

    morphisms = [Morphism(mid, s, t) for mid, (s, t, _) in sorted(paths.items())]
    cat_ids = {mid: w for mid, (_, _, w) in paths.items()}
    compose = {}
    for f in morphisms:
        for g in morphisms:
            if g.src == f.tgt:
                w = cat_ids[f.mid] + cat_ids[g.mid]
                mid = ".".join(w) if w else identity[f.src]
                compose[(g.mid, f.mid)] = mid
    return FinCategory(list(quiver.vertices), morphisms, identity, compose)


# ---------------------------------------------------------------------------
# operations

def validate_category(cat):
    report = ValidationReport()
    if len(set(cat.objects)) != len(cat.objects):
        report.fail("duplicate object ids")
    mids = [m.mid for m in cat.morphisms]
    if len(set(mids)) != len(mids):
        report.fail("duplicate morphism ids")
    for m in cat.morphisms:
        if m.src not in cat._by_src or m.tgt not in cat._by_tgt:
            report.fail(f"morphism {m.mid} has unknown endpoint")
    for o in cat.objects:
        i = cat.identity.get(o)
        if i is None or not cat.has_mor(i):
            report.fail(f"object {o} lacks an identity morphism")
        elif cat.src(i) != o or cat.tgt(i) != o:
            report.fail(f"identity of {o} is not an endomorphism at {o}")
    if not report.passed:
        return report

    # compose defined exactly on composable pairs, with correct endpoints
    seen = set()
    for f, g in cat.composable_pairs():
        seen.add((g, f))
        gf = cat.compose_table.get((g, f))
        if gf is None:
            report.fail(f"compose undefined on composable pair ({g},{f})")
        elif not cat.has_mor(gf):
            report.fail(f"compose({g},{f}) = {gf} is unknown")
        elif cat.src(gf) != cat.src(f) or cat.tgt(gf) != cat.tgt(g):
            report.fail(f"compose({g},{f}) has wrong endpoints, witness ({g},{f})")
    for key in cat.compose_table:
        if key not in seen:
            report.fail(f"compose defined on non-composable pair {key}")
    if not report.passed:
        return report

    for m in cat.morphisms:
        if cat.comp(m.mid, cat.id_of(m.src)) != m.mid:
            report.fail(f"right identity law fails at {m.mid}")
        if cat.comp(cat.id_of(m.tgt), m.mid) != m.mid:
            report.fail(f"left identity law fails at {m.mid}")
    for f, g, h in cat.composable_triples():
        if cat.comp(h, cat.comp(g, f)) != cat.comp(cat.comp(h, g), f):
            report.fail(f"associativity fails, witness ({f},{g},{h})")
    return report


def isomorphisms(cat):
    isos = set()
    for m in cat.morphisms:
        for n in cat.hom(m.tgt, m.src):
            if cat.comp(n, m.mid) == cat.id_of(m.src) and \
               cat.comp(m.mid, n) == cat.id_of(m.tgt):
                isos.add(m.mid)
                break
    return isos


def product_category(c, d):
    """Pairwise product; object/morphism ids are pair_id of the factors."""
    objects = [pair_id(x, y) for x in c.objects for y in d.objects]
    morphisms = []
    identity = {}
    for f in c.morphisms:
        for g in d.morphisms:
            mid = pair_id(f.mid, g.mid)
            morphisms.append(Morphism(mid, pair_id(f.src, g.src),
                                      pair_id(f.tgt, g.tgt)))
    for x in c.objects:
        for y in d.objects:
            identity[pair_id(x, y)] = pair_id(c.id_of(x), d.id_of(y))
    compose = {}
    for f1, g1 in c.composable_pairs():
        for f2, g2 in d.composable_pairs():
            compose[(pair_id(g1, g2), pair_id(f1, f2))] = \
                pair_id(c.comp(g1, f1), d.comp(g2, f2))
    return FinCategory(objects, morphisms, identity, compose)


def disjoint_union_category(cats, tags):
    """Coproduct of categories; returns (category, [tag functions])."""
    if len(cats) != len(tags) or len(set(tags)) != len(tags):
        raise ValueError("need one distinct tag per category")
    objects, morphisms, identity, compose = [], [], {}, {}
    tag_funs = []
    for cat, tag in zip(cats, tags):
        t = lambda x, tag=tag: f"{tag}/{x}"
        tag_funs.append(t)
        objects.extend(t(o) for o in cat.objects)
        morphisms.extend(Morphism(t(m.mid), t(m.src), t(m.tgt))
                         for m in cat.morphisms)
        identity.update({t(o): t(i) for o, i in cat.identity.items()})
        compose.update({(t(g), t(f)): t(gf)
                        for (g, f), gf in cat.compose_table.items()})
    return FinCategory(objects, morphisms, identity, compose), tag_funs


def product_projections(prod, c, d):
    pr1 = CatFunctor(prod, c,
                     {o: split_pair(o)[0] for o in prod.objects},
                     {m.mid: split_pair(m.mid)[0] for m in prod.morphisms})
    pr2 = CatFunctor(prod, d,
                     {o: split_pair(o)[1] for o in prod.objects},
                     {m.mid: split_pair(m.mid)[1] for m in prod.morphisms})
    return pr1, pr2


def is_direct(cat):
    """Longest-path degree assignment, or None if no assignment exists."""
    for mid in cat.nonidentity():
        if cat.src(mid) == cat.tgt(mid):
            return None
    # adjacency on objects by non-identity morphisms
    succ = {o: set() for o in cat.objects}
    pred_count = {o: 0 for o in cat.objects}
    for mid in cat.nonidentity():
        if cat.tgt(mid) not in succ[cat.src(mid)]:
            succ[cat.src(mid)].add(cat.tgt(mid))
            pred_count[cat.tgt(mid)] += 1
    order = [o for o in cat.objects if pred_count[o] == 0]
    degree = {o: 0 for o in order}
    queue = list(order)
    remaining = dict(pred_count)
    while queue:
        o = queue.pop(0)
        for t in sorted(succ[o]):
            remaining[t] -= 1
            if remaining[t] == 0:
                queue.append(t)
                order.append(t)
    if len(order) != len(cat.objects):
        return None  # cycle
    degree = {o: 0 for o in cat.objects}
    for o in order:
        for mid in cat.from_obj(o):
            if cat.is_identity(mid):
                continue
            t = cat.tgt(mid)
            degree[t] = max(degree[t], degree[o] + 1)
    return DegreeAssignment(degree)


@dataclass
class LatchingCategory:
    category: FinCategory
    forget: CatFunctor
    into: dict  # latching object id -> the C-morphism into i it stands for


def latching_category(cat, i):
    """Slice over i minus the identity; objects are non-identity morphisms
    into i, morphisms are commuting triangles."""
    if is_direct(cat) is None:
        raise ValueError("latching categories require a direct category")
    objs = [m for m in cat.to_obj(i) if not cat.is_identity(m)]
    morphisms = []
    identity = {}
    compose = {}
    tri = {}  # (u, v) -> list of h with v∘h = u
    for u in objs:
        for v in objs:
            hs = [h for h in cat.hom(cat.src(u), cat.src(v))
                  if cat.comp(v, h) == u]
            tri[(u, v)] = hs
            for h in hs:
                mid = pair_id(h, pair_id(u, v))
                morphisms.append(Morphism(mid, u, v))
                if u == v and cat.is_identity(h):
                    identity[u] = mid
    for u in objs:
        for v in objs:
            for h1 in tri[(u, v)]:
                for w in objs:
                    for h2 in tri[(v, w)]:
                        compose[(pair_id(h2, pair_id(v, w)),
                                 pair_id(h1, pair_id(u, v)))] = \
                            pair_id(cat.comp(h2, h1), pair_id(u, w))
    lat = FinCategory(objs, morphisms, identity, compose)
    forget = CatFunctor(lat, cat,
                        {u: cat.src(u) for u in objs},
                        {m.mid: split_pair(m.mid)[0] for m in morphisms})
    return LatchingCategory(lat, forget, {u: u for u in objs})


def is_free(cat):
    """Generating quiver if every non-identity morphism factors uniquely
    into indecomposables, else None."""
    nonid = cat.nonidentity()
    indec = []
    for m in nonid:
        decomposable = any(
            cat.comp(g, f) == m
            for f, g in cat.composable_pairs()
            if not cat.is_identity(f) and not cat.is_identity(g)
        )
        if not decomposable:
            indec.append(m)
    indec.sort()
    # a finite free category has a DAG of generators
    adj = {o: [] for o in cat.objects}
    for q in indec:
        adj[cat.src(q)].append(q)
    state = {o: 0 for o in cat.objects}

    def acyclic(v):
        state[v] = 1
        for q in adj[v]:
            t = cat.tgt(q)
            if state[t] == 1:
                return False
            if state[t] == 0 and not acyclic(t):
                return False
        state[v] = 2
        return True

    for o in cat.objects:
        if state[o] == 0 and not acyclic(o):
            return None

    # count factorizations of every morphism by DFS over generator paths
    ways = {m: 0 for m in nonid}
    total_paths = 0

    def walk(current, composite):
        nonlocal total_paths
        total_paths += 1
        if composite in ways:
            ways[composite] += 1
        for q in adj[cat.tgt(composite)]:
            walk(current + (q,), cat.comp(q, composite))

    for q in indec:
        walk((q,), q)
    if any(w != 1 for w in ways.values()) or total_paths != len(nonid):
        return None
    return Quiver(tuple(cat.objects),
                  tuple((q, cat.src(q), cat.tgt(q)) for q in indec))


def closure_two_of_six(cat, seed, mode="two-of-six"):
    """Least class containing seed and all identities, closed under the
    requested rule.  seed may be a MorphismClass or an iterable of ids."""
    if mode not in ("two-of-three", "two-of-six"):
        raise ValueError(mode)
    members = set(seed.members if isinstance(seed, MorphismClass) else seed)
    members.update(cat.identity.values())
    pairs = [(f, g, cat.comp(g, f)) for f, g in cat.composable_pairs()]
    if mode == "two-of-three":
        changed = True
        while changed:
            changed = False
            for f, g, gf in pairs:
                inside = (f in members) + (g in members) + (gf in members)
                if inside == 2:
                    members.update((f, g, gf))
                    changed = True
    else:
        triples = [(f, g, h, cat.comp(h, g), cat.comp(g, f),
                    cat.comp(h, cat.comp(g, f)))
                   for f, g, h in cat.composable_triples()]
        changed = True
        while changed:
            changed = False
            for f, g, h, hg, gf, hgf in triples:
                if hg in members and gf in members:
                    new = {f, g, h, hgf} - members
                    if new:
                        members.update(new)
                        changed = True
    return MorphismClass(cat, frozenset(members))


def is_fully_faithful_embedding(fun):
    if len(set(fun.ob_map.values())) != len(fun.ob_map):
        return False
    src, tgt = fun.source, fun.target
    for a in src.objects:
        for b in src.objects:
            images = [fun.mor_map[m] for m in src.hom(a, b)]
            if len(set(images)) != len(images):
                return False
            if set(images) != set(tgt.hom(fun.ob_map[a], fun.ob_map[b])):
                return False
    return True


def is_sieve(fun):
    """Is the fully faithful embedding a sieve? Raises if not an embedding."""
    if not is_fully_faithful_embedding(fun):
        raise ValueError("is_sieve requires a fully faithful embedding")
    image = set(fun.ob_map.values())
    for m in fun.target.morphisms:
        if m.tgt in image and m.src not in image:
            return False
    return True


# ---------------------------------------------------------------------------
# bounded localization

@dataclass
class LocalizationResult:
    status: str                # "ok" | "inconclusive"
    stabilized: bool
    hom_counts: dict           # (x, y) -> number of classes
    category: FinCategory | None
    class_rep: dict | None     # morphism id of presented cat -> canonical word
    zigzag_of: dict | None     # morphism id of C -> presented morphism id


def localize_bounded(cat, weq, budget=6):
    """Present the localization of cat at weq by bounded zig-zag saturation.

    Words are composable strings of non-identity arrows and formal inverses
    of non-identity weak equivalences; the congruence is saturated over all
    words of length <= budget.  Reports "inconclusive" instead of guessing
    whenever the saturation has not visibly stabilized below the budget.
    """
    wset = set(weq.members if isinstance(weq, MorphismClass) else weq)
    letters = []
    for m in cat.nonidentity():
        letters.append(words.Letter(m, False, cat.src(m), cat.tgt(m)))
    for m in sorted(wset):
        if not cat.is_identity(m):
            letters.append(words.Letter(m, True, cat.tgt(m), cat.src(m)))
    rules = []
    for f, g in cat.composable_pairs():
        if cat.is_identity(f) or cat.is_identity(g):
            continue
        gf = cat.comp(g, f)
        lhs = (cat.src(f), (words.Letter(f, False, cat.src(f), cat.tgt(f)),
                            words.Letter(g, False, cat.src(g), cat.tgt(g))))
        if cat.is_identity(gf):
            rhs = (cat.src(f), ())
        else:
            rhs = (cat.src(gf), (words.Letter(gf, False, cat.src(gf), cat.tgt(gf)),))
        rules.append((lhs, rhs))
        # inverse-side contraction when both factors are invertible
        if f in wset and g in wset and gf in wset and not cat.is_identity(gf):
            linv = (cat.tgt(g), (words.Letter(g, True, cat.tgt(g), cat.src(g)),
                                 words.Letter(f, True, cat.tgt(f), cat.src(f))))
            rinv = (cat.tgt(gf), (words.Letter(gf, True, cat.tgt(gf), cat.src(gf)),))
            rules.append((linv, rinv))
    for m in sorted(wset):
        if cat.is_identity(m):
            continue
        fwd = words.Letter(m, False, cat.src(m), cat.tgt(m))
        bwd = words.Letter(m, True, cat.tgt(m), cat.src(m))
        rules.append(((cat.src(m), (fwd, bwd)), (cat.src(m), ())))
        rules.append(((cat.tgt(m), (bwd, fwd)), (cat.tgt(m), ())))

    sat = words.saturate(cat.objects, letters, rules, budget)
    hom_counts = sat.hom_counts()
    if not sat.stabilized:
        return LocalizationResult("inconclusive", False, hom_counts, None,
                                  None, None)
    presented, class_rep = sat.present_category()
    if presented is None:
        return LocalizationResult("inconclusive", False, hom_counts, None,
                                  None, None)
    zigzag_of = {}
    for m in cat.morphisms:
        if cat.is_identity(m.mid):
            zigzag_of[m.mid] = presented.id_of(m.src)
        else:
            w = (m.src, (words.Letter(m.mid, False, m.src, m.tgt),))
            zigzag_of[m.mid] = sat.class_id(w)
    return LocalizationResult("ok", True, hom_counts, presented, class_rep,
                              zigzag_of)
