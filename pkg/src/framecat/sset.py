"""Dimension-truncated simplicial sets with explicit operator tables.

All simplices up to the cap are stored, degenerate ones included, so face
and degeneracy lookups are total within range.  Standard constructions
(simplices, nerves, 1-skeletal sets, products, subsets, pushouts) come with
deterministic ids; validation checks the simplicial identities among the
stored operators.
"""

import json
from dataclasses import dataclass

from .fincat import ValidationReport, pair_id, split_pair


# -- monotone map helpers (maps [m] -> [n] as value tuples) -----------------

def all_monotone(m, n):
    """Every monotone map [m] -> [n], lexicographic order."""
    out = []

    def rec(prefix, low):
        if len(prefix) == m + 1:
            out.append(tuple(prefix))
            return
        for v in range(low, n + 1):
            rec(prefix + [v], v)

    if n < 0:
        return []
    rec([], 0)
    return out


def all_injective_monotone(m, n):
    return [f for f in all_monotone(m, n) if len(set(f)) == m + 1]


def compose_monotone(g, f):
    """g after f."""
    return tuple(g[v] for v in f)


def epi_mono_factor(f):
    """f = delta . sigma with sigma surjective, delta injective.

    Returns (missing, dups): the values of the codomain skipped by delta and
    the positions duplicated by sigma, ready to feed face/degeneracy words.
    """
    image = sorted(set(f))
    pos = {v: i for i, v in enumerate(image)}
    sigma = tuple(pos[v] for v in f)
    dups = [j for j in range(len(sigma) - 1) if sigma[j] == sigma[j + 1]]
    return image, dups


class TruncatedSSet:
    def __init__(self, cap, simplices, faces, degeneracies):
        self.cap = cap
        self.simplices = tuple(tuple(level) for level in simplices)
        if len(self.simplices) != cap + 1:
            raise ValueError("need one simplex list per dimension 0..cap")
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)
        self.dim_of = {}
        for n, level in enumerate(self.simplices):
            for x in level:
                if x in self.dim_of:
                    raise ValueError(f"duplicate simplex id {x}")
                self.dim_of[x] = n
        self._degenerate = set(self.degeneracies.values())

    def dim(self, x):
        return self.dim_of[x]

    def face(self, x, i):
        return self.faces[(x, i)]

    def deg(self, x, i):
        return self.degeneracies[(x, i)]

    def cells(self, n):
        return self.simplices[n] if 0 <= n <= self.cap else ()

    def is_degenerate(self, x):
        return x in self._degenerate

    def nondegenerate(self, n):
        return [x for x in self.cells(n) if not self.is_degenerate(x)]

    def pullback(self, x, f):
        """f^* x for a monotone f: [m] -> [dim x], via faces then
        degeneracies of the epi-mono factorization."""
        n = self.dim(x)
        if f and (min(f) < 0 or max(f) > n):
            raise ValueError("map out of range")
        image, dups = epi_mono_factor(f)
        y = x
        for a in sorted(set(range(n + 1)) - set(image), reverse=True):
            y = self.face(y, a)
        for b in dups:
            y = self.deg(y, b)
        return y

    def all_simplices(self):
        for level in self.simplices:
            yield from level

    def counts(self):
        return [len(level) for level in self.simplices]

    def __repr__(self):
        return f"TruncatedSSet(cap={self.cap}, cells={self.counts()})"


def validate_sset(k):
    report = ValidationReport()
    for n in range(1, k.cap + 1):
        for x in k.cells(n):
            for i in range(n + 1):
                fx = k.faces.get((x, i))
                if fx is None or k.dim_of.get(fx) != n - 1:
                    report.fail(f"face d_{i} missing or misdimensioned at {x}")
    for n in range(0, k.cap):
        for x in k.cells(n):
            for i in range(n + 1):
                sx = k.degeneracies.get((x, i))
                if sx is None or k.dim_of.get(sx) != n + 1:
                    report.fail(f"degeneracy s_{i} missing at {x}")
    if not report.passed:
        return report

    for n in range(2, k.cap + 1):
        for x in k.cells(n):
            for j in range(n + 1):
                for i in range(j):
                    if k.face(k.face(x, j), i) != k.face(k.face(x, i), j - 1):
                        report.fail(f"d_{i} d_{j} != d_{j-1} d_{i} at {x}")
    for n in range(0, k.cap - 1):
        for x in k.cells(n):
            for j in range(n + 1):
                for i in range(j + 1):
                    if k.deg(k.deg(x, j), i) != k.deg(k.deg(x, i), j + 1):
                        report.fail(f"s_{i} s_{j} != s_{j+1} s_{i} at {x}")
    for n in range(0, k.cap):
        for x in k.cells(n):
            for j in range(n + 1):
                sx = k.deg(x, j)
                for i in range(n + 2):
                    fx = k.face(sx, i)
                    if i == j or i == j + 1:
                        ok = fx == x
                    elif i < j:
                        ok = fx == k.deg(k.face(x, i), j - 1)
                    else:
                        ok = fx == k.deg(k.face(x, i - 1), j)
                    if not ok:
                        report.fail(f"d_{i} s_{j} identity fails at {x}")
    return report


class SimplicialMap:
    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, x):
        return self.mapping[x]

    def validate(self):
        report = ValidationReport()
        if self.source.cap != self.target.cap:
            report.fail("caps differ")
            return report
        for x in self.source.all_simplices():
            y = self.mapping.get(x)
            if y is None or self.target.dim_of.get(y) != self.source.dim(x):
                report.fail(f"simplex {x} unmapped or wrong dimension")
        if not report.passed:
            return report
        for (x, i), fx in self.source.faces.items():
            if self.target.face(self.mapping[x], i) != self.mapping[fx]:
                report.fail(f"map breaks d_{i} at {x}")
        for (x, i), sx in self.source.degeneracies.items():
            if self.target.deg(self.mapping[x], i) != self.mapping[sx]:
                report.fail(f"map breaks s_{i} at {x}")
        return report

    def is_injective(self):
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_isomorphism(self):
        if not self.validate().passed or not self.is_injective():
            return False
        return all(
            len(self.source.cells(n)) == len(self.target.cells(n))
            for n in range(self.source.cap + 1)
        )

    def then(self, other):
        return SimplicialMap(self.source, other.target,
                             {x: other.mapping[y]
                              for x, y in self.mapping.items()})


def identity_map(k):
    return SimplicialMap(k, k, {x: x for x in k.all_simplices()})


# ---------------------------------------------------------------------------
# constructors

def mono_id(f):
    return ".".join(str(v) for v in f)


def delta(n, cap):
    """Standard n-simplex; k-cells are monotone maps [k] -> [n]."""
    simplices = [[mono_id(f) for f in all_monotone(k, n)] for k in range(cap + 1)]
    maps = {k: all_monotone(k, n) for k in range(cap + 1)}
    faces = {}
    degeneracies = {}
    for k in range(cap + 1):
        for f in maps[k]:
            if k >= 1:
                for i in range(k + 1):
                    faces[(mono_id(f), i)] = mono_id(f[:i] + f[i + 1:])
            if k < cap:
                for i in range(k + 1):
                    degeneracies[(mono_id(f), i)] = \
                        mono_id(f[:i] + (f[i],) + f[i:])
    return TruncatedSSet(cap, simplices, faces, degeneracies)


def empty_sset(cap):
    return TruncatedSSet(cap, [[] for _ in range(cap + 1)], {}, {})


def chain_id(start, mors):
    return json.dumps([start, list(mors)])


class Nerve(TruncatedSSet):
    """Nerve of a finite category; cells are composable chains."""

    def __init__(self, category, cap):
        self.category = category
        chains = [[(o, ()) for o in category.objects]]
        for k in range(1, cap + 1):
            level = []
            for start, mors in chains[k - 1]:
                end = category.tgt(mors[-1]) if mors else start
                for m in category.from_obj(end):
                    level.append((start, mors + (m,)))
            chains.append(level)
        self.chain_of = {}
        simplices = []
        for level in chains:
            ids = []
            for start, mors in level:
                cid = chain_id(start, mors)
                self.chain_of[cid] = (start, mors)
                ids.append(cid)
            simplices.append(ids)
        faces = {}
        degeneracies = {}
        for k in range(cap + 1):
            for start, mors in chains[k]:
                cid = chain_id(start, mors)
                if k >= 1:
                    for i in range(k + 1):
                        faces[(cid, i)] = chain_id(*self._face(start, mors, i))
                if k < cap:
                    objs = self._objects_along(start, mors)
                    for i in range(k + 1):
                        new = mors[:i] + (category.id_of(objs[i]),) + mors[i:]
                        degeneracies[(cid, i)] = chain_id(start, new)
        super().__init__(cap, simplices, faces, degeneracies)

    def _objects_along(self, start, mors):
        objs = [start]
        for m in mors:
            objs.append(self.category.tgt(m))
        return objs

    def _face(self, start, mors, i):
        k = len(mors)
        if i == 0:
            if k == 1:
                return self.category.tgt(mors[0]), ()
            return self.category.tgt(mors[0]), mors[1:]
        if i == k:
            return start, mors[:-1]
        comp = self.category.comp(mors[i], mors[i - 1])
        return start, mors[:i - 1] + (comp,) + mors[i + 1:]

    def vertex_of(self, obj):
        return chain_id(obj, ())

    def last_object(self, cid):
        start, mors = self.chain_of[cid]
        return self.category.tgt(mors[-1]) if mors else start

    def composite(self, cid):
        """Composite morphism of the whole chain (identity for vertices)."""
        start, mors = self.chain_of[cid]
        acc = self.category.id_of(start)
        for m in mors:
            acc = self.category.comp(m, acc)
        return acc


def nerve(category, cap):
    return Nerve(category, cap)


def nerve_map(functor, source_nerve, target_nerve):
    """N(F) on truncations."""
    mapping = {}
    for cid, (start, mors) in source_nerve.chain_of.items():
        image = chain_id(functor.on_obj(start),
                         tuple(functor.on_mor(m) for m in mors))
        mapping[cid] = image
    return SimplicialMap(source_nerve, target_nerve, mapping)


class OneSkeletal(TruncatedSSet):
    """1-skeletal set on a quiver: everything above dimension 1 degenerate.

    n-cells are either the total degeneracy of a vertex or a degeneracy
    (edge, surjection [n] ->> [1]) encoded by its value tuple.
    """

    def __init__(self, vertices, edges, cap):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)  # (eid, src vertex, tgt vertex)
        self._edge = {e[0]: e for e in self.edges}
        simplices = []
        for n in range(cap + 1):
            level = [self._vid(v, n) for v in self.vertices]
            if n >= 1:
                for eid, _, _ in self.edges:
                    for f in all_monotone(n, 1):
                        if 0 in f and 1 in f:
                            level.append(self._eid(eid, f))
            simplices.append(level)
        faces = {}
        degeneracies = {}
        for n in range(cap + 1):
            for v in self.vertices:
                xid = self._vid(v, n)
                if n >= 1:
                    for i in range(n + 1):
                        faces[(xid, i)] = self._vid(v, n - 1)
                if n < cap:
                    for i in range(n + 1):
                        degeneracies[(xid, i)] = self._vid(v, n + 1)
            if n >= 1:
                for eid, s, t in self.edges:
                    for f in all_monotone(n, 1):
                        if not (0 in f and 1 in f):
                            continue
                        xid = self._eid(eid, f)
                        for i in range(n + 1):
                            g = f[:i] + f[i + 1:]
                            faces[(xid, i)] = self._collapse(eid, s, t, g)
                        if n < cap:
                            for i in range(n + 1):
                                g = f[:i] + (f[i],) + f[i:]
                                degeneracies[(xid, i)] = self._eid(eid, g)
        super().__init__(cap, simplices, faces, degeneracies)

    def _vid(self, v, n):
        return f"v[{v}]" if n == 0 else f"v[{v}]*{n}"

    def _eid(self, eid, f):
        return f"e[{eid}]:{mono_id(f)}"

    def _collapse(self, eid, s, t, g):
        n = len(g) - 1
        if 0 in g and 1 in g:
            return self._eid(eid, g)
        return self._vid(s if 1 not in g else t, n)

    def vertex_simplex(self, v):
        return self._vid(v, 0)

    def edge_simplex(self, eid):
        return self._eid(eid, (0, 1))


def spine(k, cap):
    """Spine of k composable edges: vertices 0..k, edges i -> i+1."""
    return OneSkeletal([str(i) for i in range(k + 1)],
                       [(f"{i}{i+1}", str(i), str(i + 1)) for i in range(k)],
                       cap)


def wedge(cap):
    """The 1-skeletal set a -> b <- c."""
    return OneSkeletal(["a", "b", "c"],
                       [("ab", "a", "b"), ("cb", "c", "b")], cap)


def parallel_pair(cap):
    return OneSkeletal(["a", "b"],
                       [("f", "a", "b"), ("g", "a", "b")], cap)


def product_sset(k, l):
    """Dimensionwise pairs; cells are pair_id of the factors."""
    if k.cap != l.cap:
        raise ValueError("caps must agree")
    simplices = [[pair_id(x, y) for x in k.cells(n) for y in l.cells(n)]
                 for n in range(k.cap + 1)]
    faces = {}
    degeneracies = {}
    for n in range(k.cap + 1):
        for x in k.cells(n):
            for y in l.cells(n):
                xy = pair_id(x, y)
                if n >= 1:
                    for i in range(n + 1):
                        faces[(xy, i)] = pair_id(k.face(x, i), l.face(y, i))
                if n < k.cap:
                    for i in range(n + 1):
                        degeneracies[(xy, i)] = pair_id(k.deg(x, i), l.deg(y, i))
    return TruncatedSSet(k.cap, simplices, faces, degeneracies)


def product_projections_sset(prod, k, l):
    pr1 = SimplicialMap(prod, k, {x: split_pair(x)[0] for x in prod.all_simplices()})
    pr2 = SimplicialMap(prod, l, {x: split_pair(x)[1] for x in prod.all_simplices()})
    return pr1, pr2


def sub_sset(k, generators):
    """Smallest sub-simplicial-set containing the generators; keeps ids.
    Returns (subset, inclusion map)."""
    keep = set()
    frontier = list(generators)
    while frontier:
        x = frontier.pop()
        if x in keep:
            continue
        keep.add(x)
        n = k.dim(x)
        if n >= 1:
            frontier.extend(k.face(x, i) for i in range(n + 1))
        if n < k.cap:
            frontier.extend(k.deg(x, i) for i in range(n + 1))
    simplices = [[x for x in k.cells(n) if x in keep] for n in range(k.cap + 1)]
    faces = {key: v for key, v in k.faces.items() if key[0] in keep}
    degeneracies = {key: v for key, v in k.degeneracies.items() if key[0] in keep}
    sub = TruncatedSSet(k.cap, simplices, faces, degeneracies)
    incl = SimplicialMap(sub, k, {x: x for x in sub.all_simplices()})
    return sub, incl


def generalized_inner_horn(n, cap):
    """Subcomplex of the n-simplex of all cells missing the long edge.
    Returns (horn, inclusion into delta(n, cap))."""
    if n < 2:
        raise ValueError("generalized inner horns need n >= 2")
    amb = delta(n, cap)
    gens = []
    for m in range(cap + 1):
        for f in all_monotone(m, n):
            if not (0 in f and n in f):
                gens.append(mono_id(f))
    return sub_sset(amb, gens)[0], amb


def simplex_classifying_map(k, x, cap):
    """The map delta(dim x) -> k picking x (truncated at cap)."""
    n = k.dim(x)
    dn = delta(n, cap)
    mapping = {}
    for m in range(cap + 1):
        for f in all_monotone(m, n):
            mapping[mono_id(f)] = k.pullback(x, f)
    return SimplicialMap(dn, k, mapping)


def disjoint_union(pieces):
    """Tagged coproduct: piece i's simplex x becomes 'i/x'.
    Returns (union, [inclusion maps])."""
    if not pieces:
        raise ValueError("need at least one piece")
    cap = pieces[0].cap
    simplices = [[] for _ in range(cap + 1)]
    faces = {}
    degeneracies = {}
    inclusions = []
    for idx, piece in enumerate(pieces):
        if piece.cap != cap:
            raise ValueError("caps must agree")
        tag = lambda x, idx=idx: f"{idx}/{x}"
        for n in range(cap + 1):
            simplices[n].extend(tag(x) for x in piece.cells(n))
        for (x, i), v in piece.faces.items():
            faces[(tag(x), i)] = tag(v)
        for (x, i), v in piece.degeneracies.items():
            degeneracies[(tag(x), i)] = tag(v)
    union = TruncatedSSet(cap, simplices, faces, degeneracies)
    for idx, piece in enumerate(pieces):
        inclusions.append(SimplicialMap(
            piece, union, {x: f"{idx}/{x}" for x in piece.all_simplices()}))
    return union, inclusions


def pushout_sset(f, g):
    """Pushout of B <-f- A -g-> C by explicit union-find quotient.
    Returns (P, B -> P, C -> P)."""
    b, c = f.target, g.target
    cap = b.cap
    if c.cap != cap or f.source is not g.source:
        raise ValueError("pushout needs a common source and equal caps")
    amb, (inb, inc) = disjoint_union([b, c])
    parent = {x: x for x in amb.all_simplices()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    pairs = [(inb(f(x)), inc(g(x))) for x in f.source.all_simplices()]
    for x, y in pairs:
        union(x, y)
    # propagate the relation through faces and degeneracies
    changed = True
    while changed:
        changed = False
        classes = {}
        for x in amb.all_simplices():
            classes.setdefault(find(x), []).append(x)
        for members in classes.values():
            first = members[0]
            n = amb.dim(first)
            for other in members[1:]:
                if n >= 1:
                    for i in range(n + 1):
                        if union(amb.face(first, i), amb.face(other, i)):
                            changed = True
                if n < cap:
                    for i in range(n + 1):
                        if union(amb.deg(first, i), amb.deg(other, i)):
                            changed = True

    simplices = [[] for _ in range(cap + 1)]
    seen = set()
    for n in range(cap + 1):
        for x in amb.cells(n):
            r = find(x)
            if r not in seen:
                seen.add(r)
                simplices[n].append(r)
    faces = {}
    degeneracies = {}
    for n in range(cap + 1):
        for x in simplices[n]:
            if n >= 1:
                for i in range(n + 1):
                    faces[(x, i)] = find(amb.face(x, i))
            if n < cap:
                for i in range(n + 1):
                    degeneracies[(x, i)] = find(amb.deg(x, i))
    p = TruncatedSSet(cap, simplices, faces, degeneracies)
    into_b = SimplicialMap(b, p, {x: find(inb(x)) for x in b.all_simplices()})
    into_c = SimplicialMap(c, p, {x: find(inc(x)) for x in c.all_simplices()})
    return p, into_b, into_c
