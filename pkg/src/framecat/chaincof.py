"""Bounded chain complexes over F_p as a concrete cofibration category.

Weak equivalences are quasi-isomorphisms, cofibrations are degreewise
injections, and every structural operation (pushouts, mapping cylinders,
latching objects, Reedy colimits, relative replacement) is exact linear
algebra.  Complexes store dimensions and differentials sparsely by degree;
degrees outside the stored support are zero.
"""

import numpy as np

from . import linmod
from .fincat import is_direct, is_sieve, latching_category, split_pair
from .linmod import Quotient, as_mat, eye, matmul, zeros


class ChainComplex:
    def __init__(self, p, dims, diffs=None, check=True):
        self.p = p
        self.dims = {n: int(d) for n, d in dims.items() if d}
        self.d = {}
        diffs = diffs or {}
        for n, mat in diffs.items():
            if self.dim(n) and self.dim(n - 1):
                self.d[n] = as_mat(mat) % p
        if check:
            self.validate()

    def dim(self, n):
        return self.dims.get(n, 0)

    def degrees(self):
        return sorted(self.dims)

    @property
    def lo(self):
        return min(self.dims) if self.dims else 0

    @property
    def hi(self):
        return max(self.dims) if self.dims else 0

    def total_dim(self):
        return sum(self.dims.values())

    def diff(self, n):
        if n in self.d:
            return self.d[n]
        return zeros(self.dim(n - 1), self.dim(n))

    def validate(self):
        for n, mat in self.d.items():
            if mat.shape != (self.dim(n - 1), self.dim(n)):
                raise ValueError(f"differential at {n} misshaped")
        for n in list(self.dims):
            if self.dim(n) and self.dim(n - 1) and self.dim(n - 2):
                if np.any(matmul(self.diff(n - 1), self.diff(n), self.p)):
                    raise ValueError(f"d∘d != 0 at degree {n}")

    def __eq__(self, other):
        if not isinstance(other, ChainComplex) or self.p != other.p:
            return False
        if self.dims != other.dims:
            return False
        return all(np.array_equal(self.diff(n), other.diff(n))
                   for n in self.dims)

    def __hash__(self):
        return hash((self.p, tuple(sorted(self.dims.items()))))

    def __repr__(self):
        return f"ChainComplex(p={self.p}, dims={dict(sorted(self.dims.items()))})"


def zero_complex(p):
    return ChainComplex(p, {})


def one_dim_complex(p, degree=0):
    return ChainComplex(p, {degree: 1})


class ChainMap:
    def __init__(self, src, tgt, blocks=None, check=True):
        if src.p != tgt.p:
            raise ValueError("primes differ")
        self.src = src
        self.tgt = tgt
        self.p = src.p
        self.blocks = {}
        blocks = blocks or {}
        for n, mat in blocks.items():
            if src.dim(n) and tgt.dim(n):
                self.blocks[n] = as_mat(mat) % self.p
        if check:
            self.validate()

    def block(self, n):
        if n in self.blocks:
            return self.blocks[n]
        return zeros(self.tgt.dim(n), self.src.dim(n))

    def validate(self):
        for n, mat in self.blocks.items():
            if mat.shape != (self.tgt.dim(n), self.src.dim(n)):
                raise ValueError(f"block at {n} misshaped")
        for n in set(self.src.dims) | set(self.tgt.dims):
            lhs = matmul(self.tgt.diff(n), self.block(n), self.p)
            rhs = matmul(self.block(n - 1), self.src.diff(n), self.p)
            if not np.array_equal(lhs, rhs):
                raise ValueError(f"map does not commute with d at degree {n}")

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return False
        if self.src != other.src or self.tgt != other.tgt:
            return False
        degs = set(self.src.dims) | set(self.tgt.dims)
        return all(np.array_equal(self.block(n), other.block(n)) for n in degs)

    def __repr__(self):
        return f"ChainMap({self.src!r} -> {self.tgt!r})"


def identity_chain_map(x):
    return ChainMap(x, x, {n: eye(x.dim(n)) for n in x.dims}, check=False)


def zero_chain_map(x, y):
    return ChainMap(x, y, {}, check=False)


def compose_chain_maps(g, f):
    """g after f."""
    if f.tgt != g.src:
        raise ValueError("maps not composable")
    blocks = {}
    for n in set(f.src.dims) & set(g.tgt.dims):
        blocks[n] = matmul(g.block(n), f.block(n), f.p)
    return ChainMap(f.src, g.tgt, blocks, check=False)


def add_chain_maps(f, g):
    blocks = {n: (f.block(n) + g.block(n)) % f.p
              for n in set(f.src.dims) & set(f.tgt.dims)}
    return ChainMap(f.src, f.tgt, blocks, check=False)


# ---------------------------------------------------------------------------
# homology

class HomologyView:
    """Graded homology with a chosen cycle basis and reduction data."""

    def __init__(self, x):
        self.complex = x
        self.p = x.p
        self.basis = {}
        self.boundaries = {}
        self.dims = {}
        for n in x.degrees():
            ker = linmod.nullspace(x.diff(n), x.p) if x.dim(n) else zeros(0, 0)
            im = linmod.column_space(x.diff(n + 1), x.p)
            chosen = []
            cur = im
            for jcol in range(ker.shape[1]):
                v = ker[:, jcol:jcol + 1]
                cand = np.concatenate([cur, v], axis=1)
                if linmod.rank(cand, x.p) > linmod.rank(cur, x.p):
                    cur = cand
                    chosen.append(jcol)
            h = ker[:, chosen] if chosen else zeros(x.dim(n), 0)
            self.basis[n] = h
            self.boundaries[n] = im
            if h.shape[1]:
                self.dims[n] = h.shape[1]

    def dim(self, n):
        return self.dims.get(n, 0)

    def reduce(self, n, z):
        """Coordinates of cycles z (columns) in the homology basis."""
        h = self.basis.get(n, zeros(self.complex.dim(n), 0))
        b = self.boundaries.get(n, zeros(self.complex.dim(n), 0))
        if h.shape[1] == 0:
            return zeros(0, z.shape[1])
        sol = linmod.solve(np.concatenate([h, b], axis=1), z, self.p)
        if sol is None:
            raise ValueError("vector is not a cycle modulo boundaries")
        return sol[:h.shape[1], :]


def homology(x):
    return HomologyView(x)


def induced(f, hv_src=None, hv_tgt=None):
    """Graded matrices induced on homology by a chain map."""
    hs = hv_src or HomologyView(f.src)
    ht = hv_tgt or HomologyView(f.tgt)
    out = {}
    for n in sorted(set(hs.dims) | set(ht.dims)):
        src_basis = hs.basis.get(n, zeros(f.src.dim(n), 0))
        img = matmul(f.block(n), src_basis, f.p)
        out[n] = ht.reduce(n, img)
    return out


def graded_is_iso(mats, hs, ht, p):
    for n in set(hs.dims) | set(ht.dims):
        m = mats.get(n, zeros(ht.dim(n), hs.dim(n)))
        if m.shape[0] != m.shape[1] or not linmod.is_invertible(m, p):
            return False
    return True


def classify_map(f):
    """{is_weq, is_cofibration, is_acyclic_cofibration} for a chain map."""
    hs, ht = HomologyView(f.src), HomologyView(f.tgt)
    mats = induced(f, hs, ht)
    is_weq = graded_is_iso(mats, hs, ht, f.p)
    is_cof = all(linmod.full_column_rank(f.block(n), f.p)
                 for n in f.src.dims)
    return {"is_weq": is_weq, "is_cofibration": is_cof,
            "is_acyclic_cofibration": is_weq and is_cof}


def is_weq(f):
    return classify_map(f)["is_weq"]


def is_cofibration(f):
    return all(linmod.full_column_rank(f.block(n), f.p) for n in f.src.dims)


# ---------------------------------------------------------------------------
# colimit-flavoured constructions

def direct_sum(complexes, p=None):
    """Coproduct with inclusion and projection maps."""
    if complexes:
        p = complexes[0].p
    elif p is None:
        raise ValueError("empty sum needs an explicit prime")
    degrees = sorted({n for x in complexes for n in x.dims})
    dims = {n: sum(x.dim(n) for x in complexes) for n in degrees}
    diffs = {}
    for n in degrees:
        blocks = [x.diff(n) for x in complexes]
        diffs[n] = _block_diag(blocks, sum(x.dim(n - 1) for x in complexes),
                               sum(x.dim(n) for x in complexes))
    total = ChainComplex(p, dims, diffs, check=False)
    inclusions, projections = [], []
    for idx, x in enumerate(complexes):
        inc, prj = {}, {}
        for n in x.dims:
            before = sum(y.dim(n) for y in complexes[:idx])
            block = zeros(total.dim(n), x.dim(n))
            block[before:before + x.dim(n), :] = eye(x.dim(n))
            inc[n] = block
            prj[n] = block.T
        inclusions.append(ChainMap(x, total, inc, check=False))
        projections.append(ChainMap(total, x, prj, check=False))
    return total, inclusions, projections


def _block_diag(blocks, rows, cols):
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        br, bc = b.shape
        out[r:r + br, c:c + bc] = b
        r += br
        c += bc
    return out


def coproduct_map(maps, sum_src=None, sum_tgt=None):
    """The coproduct of a list of chain maps."""
    if sum_src is None:
        sum_src, _, _ = direct_sum([f.src for f in maps])
    if sum_tgt is None:
        sum_tgt, _, _ = direct_sum([f.tgt for f in maps])
    blocks = {}
    for n in set(sum_src.dims) & set(sum_tgt.dims):
        blocks[n] = _block_diag([f.block(n) for f in maps],
                                sum_tgt.dim(n), sum_src.dim(n))
    return ChainMap(sum_src, sum_tgt, blocks, check=False)


def sequential_colimit(maps):
    """Colimit of a finite chain X0 -> X1 -> ... -> Xk of cofibrations:
    the last term, with the composite cocone maps."""
    for f in maps:
        if not is_cofibration(f):
            raise ValueError("sequential colimits here require cofibrations")
    for f, g in zip(maps, maps[1:]):
        if f.tgt != g.src:
            raise ValueError("chain not composable")
    last = maps[-1].tgt if maps else None
    if last is None:
        raise ValueError("need at least one map")
    cocone = [None] * (len(maps) + 1)
    cocone[-1] = identity_chain_map(last)
    for i in range(len(maps) - 1, -1, -1):
        cocone[i] = compose_chain_maps(cocone[i + 1], maps[i])
    return last, cocone


class PushoutResult:
    def __init__(self, complex_, from_b, from_c, quotients):
        self.complex = complex_
        self.from_b = from_b
        self.from_c = from_c
        self._quot = quotients

    def induced_out(self, u, v):
        """The unique map out of the pushout with components (u, v)."""
        p = self.complex.p
        blocks = {}
        for n in self.complex.dims:
            amb = np.concatenate([u.block(n), v.block(n)], axis=1)
            blocks[n] = self._quot[n].descend(amb)
        return ChainMap(self.complex, u.tgt, blocks)


def pushout_along_cofibration(i, g):
    """Pushout of B <-i- A -g-> C with i a cofibration.

    Returns PushoutResult with maps B -> D and j: C -> D; j is asserted to
    be a cofibration, acyclic whenever i is."""
    if i.src != g.src:
        raise ValueError("span must share its source")
    if not is_cofibration(i):
        raise ValueError("pushout_along_cofibration needs a cofibration")
    a, b, c = i.src, i.tgt, g.tgt
    p = a.p
    degrees = sorted(set(b.dims) | set(c.dims))
    quotients = {}
    dims = {}
    for n in degrees:
        amb = b.dim(n) + c.dim(n)
        rel = np.concatenate([i.block(n), (-g.block(n)) % p], axis=0)
        quotients[n] = Quotient(amb, rel, p)
        dims[n] = quotients[n].dim
    diffs = {}
    for n in degrees:
        if dims.get(n) and dims.get(n - 1):
            dmat = _block_diag([b.diff(n), c.diff(n)],
                               b.dim(n - 1) + c.dim(n - 1),
                               b.dim(n) + c.dim(n))
            down = quotients[n - 1].map_from(dmat)
            diffs[n] = quotients[n].descend(down)
    d = ChainComplex(p, dims, diffs)
    fb, fc = {}, {}
    for n in degrees:
        if not dims.get(n):
            continue
        incl_b = zeros(b.dim(n) + c.dim(n), b.dim(n))
        incl_b[:b.dim(n), :] = eye(b.dim(n))
        incl_c = zeros(b.dim(n) + c.dim(n), c.dim(n))
        incl_c[b.dim(n):, :] = eye(c.dim(n))
        fb[n] = quotients[n].map_from(incl_b)
        fc[n] = quotients[n].map_from(incl_c)
    from_b = ChainMap(b, d, fb)
    from_c = ChainMap(c, d, fc)
    if not is_cofibration(from_c):
        raise AssertionError("pushout leg failed to be a cofibration")
    if is_weq(i) and not is_weq(from_c):
        raise AssertionError("pushout of an acyclic cofibration not acyclic")
    return PushoutResult(d, from_b, from_c, quotients)


def factorize(f):
    """Mapping cylinder factorization f = q∘i with i a cofibration and q a
    quasi-isomorphism.  Convention: d(x, x', y) = (dx - x', -dx', dy + f x')."""
    x, y = f.src, f.tgt
    p = f.p
    degrees = sorted(set(x.dims) | {n + 1 for n in x.dims} | set(y.dims))
    dims = {}
    for n in degrees:
        dims[n] = x.dim(n) + x.dim(n - 1) + y.dim(n)
    dims = {n: d for n, d in dims.items() if d}
    diffs = {}
    for n in dims:
        if not dims.get(n - 1):
            continue
        rows = [x.dim(n - 1), x.dim(n - 2), y.dim(n - 1)]
        cols = [x.dim(n), x.dim(n - 1), y.dim(n)]
        m = zeros(sum(rows), sum(cols))
        r0, r1, r2 = 0, rows[0], rows[0] + rows[1]
        c0, c1, c2 = 0, cols[0], cols[0] + cols[1]
        m[r0:r0 + rows[0], c0:c0 + cols[0]] = x.diff(n)
        m[r0:r0 + rows[0], c1:c1 + cols[1]] = (-eye(x.dim(n - 1))) % p
        m[r1:r1 + rows[1], c1:c1 + cols[1]] = (-x.diff(n - 1)) % p
        m[r2:r2 + rows[2], c1:c1 + cols[1]] = f.block(n - 1)
        m[r2:r2 + rows[2], c2:c2 + cols[2]] = y.diff(n)
        diffs[n] = m
    cyl = ChainComplex(p, dims, diffs)
    i_blocks, q_blocks = {}, {}
    for n in cyl.dims:
        xi = zeros(cyl.dim(n), x.dim(n))
        xi[:x.dim(n), :] = eye(x.dim(n))
        i_blocks[n] = xi
        q = zeros(y.dim(n), cyl.dim(n))
        q[:, :x.dim(n)] = f.block(n)
        q[:, x.dim(n) + x.dim(n - 1):] = eye(y.dim(n))
        q_blocks[n] = q
    i = ChainMap(x, cyl, i_blocks)
    q = ChainMap(cyl, y, q_blocks)
    if compose_chain_maps(q, i) != f:
        raise AssertionError("cylinder factorization does not recover f")
    if not is_cofibration(i):
        raise AssertionError("cylinder inclusion not a cofibration")
    if not is_weq(q):
        raise AssertionError("cylinder projection not a quasi-isomorphism")
    return cyl, i, q


# ---------------------------------------------------------------------------
# diagrams

class ChainDiagram:
    def __init__(self, index, complexes, maps, weq=None, check=True):
        self.index = index          # FinCategory
        self.complexes = dict(complexes)
        self.maps = dict(maps)      # every morphism id -> ChainMap
        self.weq = weq              # optional MorphismClass on the index
        if check:
            self.validate()

    def at(self, obj):
        return self.complexes[obj]

    def on(self, mid):
        return self.maps[mid]

    @property
    def p(self):
        return next(iter(self.complexes.values())).p

    def validate(self):
        cat = self.index
        for o in cat.objects:
            if o not in self.complexes:
                raise ValueError(f"object {o} has no complex")
        for m in cat.morphisms:
            f = self.maps.get(m.mid)
            if f is None:
                raise ValueError(f"morphism {m.mid} has no map")
            if f.src != self.complexes[m.src] or f.tgt != self.complexes[m.tgt]:
                raise ValueError(f"map at {m.mid} has wrong endpoints")
        for o in cat.objects:
            if self.maps[cat.id_of(o)] != identity_chain_map(self.complexes[o]):
                raise ValueError(f"identity at {o} is not the identity map")
        for f, g in cat.composable_pairs():
            lhs = self.maps[cat.comp(g, f)]
            rhs = compose_chain_maps(self.maps[g], self.maps[f])
            if lhs != rhs:
                raise ValueError(f"diagram not functorial at ({g},{f})")

    def is_homotopical(self):
        if self.weq is None:
            raise ValueError("diagram has no weak-equivalence class")
        for w in self.weq.members:
            if not is_weq(self.maps[w]):
                return False, w
        return True, None

    def __eq__(self, other):
        if not isinstance(other, ChainDiagram):
            return False
        return (self.index.objects == other.index.objects
                and self.complexes == other.complexes
                and self.maps == other.maps)


class ChainDiagramMap:
    """Natural transformation between diagrams over the same index."""

    def __init__(self, src, tgt, components, check=True):
        self.src = src
        self.tgt = tgt
        self.components = dict(components)
        if check:
            self.validate()

    def at(self, obj):
        return self.components[obj]

    def validate(self):
        cat = self.src.index
        for o in cat.objects:
            comp = self.components.get(o)
            if comp is None or comp.src != self.src.at(o) or \
               comp.tgt != self.tgt.at(o):
                raise ValueError(f"component at {o} missing or misplaced")
        for m in cat.morphisms:
            lhs = compose_chain_maps(self.tgt.on(m.mid), self.components[m.src])
            rhs = compose_chain_maps(self.components[m.tgt], self.src.on(m.mid))
            if lhs != rhs:
                raise ValueError(f"not natural at {m.mid}")

    def is_levelwise_weq(self):
        return all(is_weq(c) for c in self.components.values())

    def __eq__(self, other):
        return (isinstance(other, ChainDiagramMap)
                and self.components == other.components)


def identity_diagram_map(x):
    return ChainDiagramMap(x, x, {o: identity_chain_map(x.at(o))
                                  for o in x.index.objects}, check=False)


def constant_diagram(index, x, weq=None):
    maps = {}
    for m in index.morphisms:
        maps[m.mid] = identity_chain_map(x)
    return ChainDiagram(index, {o: x for o in index.objects}, maps, weq=weq,
                        check=False)


def restrict_diagram(x, functor, weq=None):
    """Restriction along a functor into the diagram's index."""
    complexes = {o: x.at(functor.on_obj(o)) for o in functor.source.objects}
    maps = {m.mid: x.on(functor.on_mor(m.mid)) for m in functor.source.morphisms}
    return ChainDiagram(functor.source, complexes, maps, weq=weq, check=False)


class Colimit:
    def __init__(self, complex_, cocone, quotients):
        self.complex = complex_
        self.cocone = cocone       # object id -> ChainMap into the colimit
        self._quot = quotients

    def induced_out(self, components, target):
        """The unique map out of the colimit with the given cocone
        components (dict object -> ChainMap into target)."""
        p = self.complex.p
        order = list(self.cocone)
        blocks = {}
        for n in self.complex.dims:
            amb = np.concatenate(
                [components[o].block(n) for o in order], axis=1) \
                if order else zeros(target.dim(n), 0)
            blocks[n] = self._quot[n].descend(amb)
        return ChainMap(self.complex, target, blocks)


def colimit_coequalizer(x, p=None):
    """One-shot colimit of a diagram: quotient of the object sum by the
    sweep of every morphism."""
    cat = x.index
    order = list(cat.objects)
    p = x.p if order else p
    if p is None:
        raise ValueError("empty diagram needs an explicit prime")
    total, incs, _ = direct_sum([x.at(o) for o in order], p=p)
    inc = dict(zip(order, incs))
    degrees = sorted(total.dims) if total.dims else []
    rel_cols = {n: [] for n in degrees}
    for m in cat.morphisms:
        if cat.is_identity(m.mid):
            continue
        f = x.on(m.mid)
        for n in degrees:
            block = (matmul(inc[m.tgt].block(n), f.block(n), p)
                     - inc[m.src].block(n)) % p
            rel_cols[n].append(block)
    quotients = {}
    dims = {}
    for n in degrees:
        rel = np.concatenate(rel_cols[n], axis=1) if rel_cols[n] \
            else zeros(total.dim(n), 0)
        quotients[n] = Quotient(total.dim(n), rel, p)
        dims[n] = quotients[n].dim
    diffs = {}
    for n in degrees:
        if dims.get(n) and dims.get(n - 1):
            down = quotients[n - 1].map_from(total.diff(n))
            diffs[n] = matmul(down, quotients[n].sect, p)
    colim = ChainComplex(p, dims, diffs)
    cocone = {}
    for o in order:
        blocks = {n: quotients[n].map_from(inc[o].block(n))
                  for n in degrees if dims.get(n)}
        cocone[o] = ChainMap(x.at(o), colim, blocks)
    for m in cat.morphisms:
        lhs = compose_chain_maps(cocone[m.tgt], x.on(m.mid))
        if lhs != cocone[m.src]:
            raise AssertionError(f"cocone not commuting at {m.mid}")
    return Colimit(colim, cocone, quotients)


def latching_object(x, i):
    """(L_i X, latching map L_i X -> X_i) over a direct index."""
    lat = latching_category(x.index, i)
    diag = restrict_diagram(x, lat.forget)
    colim = colimit_coequalizer(diag, p=x.p)
    components = {u: x.on(u) for u in lat.category.objects}
    latch = colim.induced_out(components, x.at(i)) if lat.category.objects \
        else zero_chain_map(colim.complex, x.at(i))
    return colim, latch


def reedy_status(x):
    """{reedy_cofibrant, witness} for a diagram over a direct index."""
    deg = is_direct(x.index)
    if deg is None:
        raise ValueError("index is not direct")
    order = sorted(x.index.objects, key=lambda o: (deg.degree[o], o))
    for i in order:
        _, latch = latching_object(x, i)
        if not is_cofibration(latch):
            return {"reedy_cofibrant": False, "witness": i}
    return {"reedy_cofibrant": True, "witness": None}


def latching_map_of_map(f, i):
    """L_i f : L_i X -> L_i Y for a diagram map f."""
    x, y = f.src, f.tgt
    colim_x, _ = latching_object(x, i)
    colim_y, _ = latching_object(y, i)
    lat = latching_category(x.index, i)
    components = {}
    for u in lat.category.objects:
        a = x.index.src(u)
        components[u] = compose_chain_maps(colim_y.cocone[u], f.at(a))
    if lat.category.objects:
        lf = colim_x.induced_out(components, colim_y.complex)
    else:
        lf = zero_chain_map(colim_x.complex, colim_y.complex)
    return colim_x, colim_y, lf


def reedy_status_map(f):
    """Is the diagram map a Reedy cofibration (between Reedy cofibrant
    diagrams)?  Returns {reedy_cofibration, witness}."""
    x, y = f.src, f.tgt
    deg = is_direct(x.index)
    if deg is None:
        raise ValueError("index is not direct")
    for i in sorted(x.index.objects, key=lambda o: (deg.degree[o], o)):
        colim_x, latch_x = latching_object(x, i)
        colim_y, latch_y = latching_object(y, i)
        _, _, lf = latching_map_of_map(f, i)
        if not is_cofibration(latch_x):
            raise ValueError("source not Reedy cofibrant")
        po = pushout_along_cofibration(latch_x, lf)
        rel = po.induced_out(f.at(i), latch_y)
        if not is_cofibration(rel):
            return {"reedy_cofibration": False, "witness": i}
    return {"reedy_cofibration": True, "witness": None}


def reedy_colimit(x, cross_check=True):
    """Colimit of a Reedy cofibrant diagram.

    Computed degreewise by coequalizer; the inductive-by-degree construction
    is rebuilt alongside and the canonical comparison asserted to be an
    isomorphism (cross_check=False skips that)."""
    status = reedy_status(x)
    if not status["reedy_cofibrant"]:
        raise ValueError(f"diagram not Reedy cofibrant at {status['witness']}")
    colim = colimit_coequalizer(x)
    if cross_check:
        ind_complex, ind_cocone = _reedy_colimit_inductive(x)
        u = colim.induced_out(ind_cocone, ind_complex)
        if not all(linmod.is_invertible(u.block(n), x.p)
                   for n in set(colim.complex.dims) | set(ind_complex.dims)):
            raise AssertionError("inductive and coequalizer colimits differ")
    return colim


def _reedy_colimit_inductive(x):
    """Skeletal induction: attach objects degree by degree along their
    latching maps.  Returns (complex, cocone dict)."""
    cat = x.index
    deg = is_direct(cat).degree
    degrees_present = sorted({deg[o] for o in cat.objects})
    current = zero_complex(x.p)
    cocone = {}
    for k in degrees_present:
        level = sorted(o for o in cat.objects if deg[o] == k)
        lats = []
        for i in level:
            colim_i, latch_i = latching_object(x, i)
            # map L_i X -> current colimit via the partial cocone
            lat = latching_category(cat, i)
            comps = {u: cocone[cat.src(u)] for u in lat.category.objects}
            if lat.category.objects:
                to_cur = colim_i.induced_out(comps, current)
            else:
                to_cur = zero_chain_map(colim_i.complex, current)
            lats.append((i, colim_i, latch_i, to_cur))
        sum_l, _, _ = direct_sum([c.complex for _, c, _, _ in lats], p=x.p)
        sum_xi, incs_xi, _ = direct_sum([x.at(i) for i, _, _, _ in lats], p=x.p)
        big_latch = coproduct_map([l for _, _, l, _ in lats], sum_l, sum_xi)
        big_to_cur = coproduct_map([t for _, _, _, t in lats], sum_l,
                                   direct_sum([current] * len(lats), p=x.p)[0])
        # fold the copies of current together
        fold_blocks = {}
        folded_src = big_to_cur.tgt
        for n in current.dims:
            fold_blocks[n] = np.concatenate(
                [eye(current.dim(n))] * len(lats), axis=1)
        fold = ChainMap(folded_src, current, fold_blocks, check=False)
        to_current = compose_chain_maps(fold, big_to_cur)
        po = pushout_along_cofibration(big_latch, to_current)
        new_cocone = {}
        for o in cocone:
            new_cocone[o] = compose_chain_maps(po.from_c, cocone[o])
        for idx, (i, _, _, _) in enumerate(lats):
            new_cocone[i] = compose_chain_maps(
                po.from_b, ChainMap(x.at(i), sum_xi,
                                    incs_xi[idx].blocks, check=False))
        current = po.complex
        cocone = new_cocone
    return current, cocone


def reedy_replace_rel(x, sieve_functor, h, f):
    """Relative Reedy cofibrant replacement.

    x: homotopical diagram over a direct index J carrying a weq class;
    sieve_functor: I -> J, a sieve; h: Reedy cofibrant homotopical diagram
    over I; f: dict I-object -> ChainMap (levelwise weq h_i -> x_{F i}).

    Returns (xhat, g: ChainDiagramMap xhat -> x) with xhat|_I = h and
    g|_I = f, xhat Reedy cofibrant and homotopical, g a levelwise weq."""
    cat = x.index
    if x.weq is None:
        raise ValueError("x needs a weak-equivalence class on its index")
    if not is_sieve(sieve_functor):
        raise ValueError("inclusion is not a sieve")
    image = {sieve_functor.on_obj(o): o for o in sieve_functor.source.objects}
    for i_obj, src_obj in image.items():
        fi = f[src_obj]
        if fi.src != h.at(src_obj) or fi.tgt != x.at(i_obj):
            raise ValueError(f"comparison component misplaced at {src_obj}")
        if not is_weq(fi):
            raise ValueError(f"comparison not a weq at {src_obj}")
    if not reedy_status(h)["reedy_cofibrant"]:
        raise ValueError("h is not Reedy cofibrant")

    # identity shortcut: nothing to replace
    if len(image) == len(cat.objects) and \
       all(h.at(image[j]) == x.at(j) for j in image) and \
       all(f[image[j]] == identity_chain_map(x.at(j)) for j in image):
        return x, identity_diagram_map(x)

    deg = is_direct(cat).degree
    complexes = {}
    g_comp = {}
    maps = {}
    for j, src_obj in image.items():
        complexes[j] = h.at(src_obj)
        g_comp[j] = f[src_obj]
    mor_image = {sieve_functor.on_mor(m.mid): m.mid
                 for m in sieve_functor.source.morphisms}
    for jm, im in mor_image.items():
        maps[jm] = h.on(im)

    order = sorted((o for o in cat.objects if o not in image),
                   key=lambda o: (deg[o], o))
    partial_cocones = {}
    for j in order:
        lat = latching_category(cat, j)
        lat_objs = lat.category.objects
        # colimit of the partially built diagram over the latching category
        sub_complexes = {u: complexes[cat.src(u)] for u in lat_objs}
        sub_maps = {}
        for m in lat.category.morphisms:
            arrow = split_pair(m.mid)[0]
            sub_maps[m.mid] = maps[arrow] if not cat.is_identity(arrow) \
                else identity_chain_map(complexes[cat.src(m.src)])
        sub_diag = ChainDiagram(lat.category, sub_complexes, sub_maps,
                                check=False)
        colim = colimit_coequalizer(sub_diag, p=x.p)
        # canonical map L_j xhat -> x_j through g on lower objects
        comps = {}
        for u in lat_objs:
            a = cat.src(u)
            comps[u] = compose_chain_maps(x.on(u),
                                          g_comp[a])
        canonical = colim.induced_out(comps, x.at(j)) if lat_objs \
            else zero_chain_map(colim.complex, x.at(j))
        cyl, i_c, q = factorize(canonical)
        complexes[j] = cyl
        g_comp[j] = q
        partial_cocones[j] = (colim, i_c)
        for u in lat_objs:  # structure maps into j
            maps[u] = compose_chain_maps(i_c, colim.cocone[u])

    # identities and any remaining composites
    all_maps = {}
    for m in cat.morphisms:
        if cat.is_identity(m.mid):
            all_maps[m.mid] = identity_chain_map(complexes[m.src])
        elif m.mid in maps:
            all_maps[m.mid] = maps[m.mid]
        else:
            raise AssertionError(f"unassigned structure map {m.mid}")
    xhat = ChainDiagram(cat, complexes, all_maps, weq=x.weq)
    g = ChainDiagramMap(xhat, x, g_comp)
    # postconditions
    if not g.is_levelwise_weq():
        raise AssertionError("replacement comparison not a levelwise weq")
    if not reedy_status(xhat)["reedy_cofibrant"]:
        raise AssertionError("replacement not Reedy cofibrant")
    ok, witness = xhat.is_homotopical()
    if not ok:
        raise AssertionError(f"replacement not homotopical at {witness}")
    for j, src_obj in image.items():
        if xhat.at(j) != h.at(src_obj) or g_comp[j] != f[src_obj]:
            raise AssertionError("replacement does not restrict to h")
    return xhat, g


# ---------------------------------------------------------------------------
# exact functors

def exact_functor(name, arg=1):
    """Catalog: ("shift", k) regrades by +k; ("tensor", r) tensors with
    F_p^r.  Returns (on_complex, on_map)."""
    if name == "shift":
        k = arg

        def on_complex(x):
            dims = {n + k: d for n, d in x.dims.items()}
            diffs = {n + k: (-x.d[n]) % x.p if k % 2 else x.d[n]
                     for n in x.d}
            return ChainComplex(x.p, dims, diffs, check=False)

        def on_map(fm):
            return ChainMap(on_complex(fm.src), on_complex(fm.tgt),
                            {n + k: b for n, b in fm.blocks.items()},
                            check=False)

        return on_complex, on_map
    if name == "tensor":
        r = arg

        def on_complex(x):
            dims = {n: d * r for n, d in x.dims.items()}
            diffs = {n: np.kron(x.d[n], eye(r)) for n in x.d}
            return ChainComplex(x.p, dims, diffs, check=False)

        def on_map(fm):
            return ChainMap(on_complex(fm.src), on_complex(fm.tgt),
                            {n: np.kron(b, eye(r)) for n, b in fm.blocks.items()},
                            check=False)

        return on_complex, on_map
    raise ValueError(f"unknown exact functor {name}")


def pushforward_exact(name, arg, x):
    """Apply a catalogued exact functor objectwise to a diagram."""
    on_complex, on_map = exact_functor(name, arg)
    complexes = {o: on_complex(x.at(o)) for o in x.index.objects}
    maps = {m.mid: on_map(x.on(m.mid)) for m in x.index.morphisms}
    return ChainDiagram(x.index, complexes, maps, weq=x.weq, check=False)


# ---------------------------------------------------------------------------
# split models (used by realization searches)

def split_model(x):
    """(H, u: H -> X, r: X -> H): the homology with zero differential and
    quasi-isomorphisms in both directions, ru = id."""
    hv = HomologyView(x)
    h = ChainComplex(x.p, dict(hv.dims), {}, check=False)
    u = ChainMap(h, x, {n: hv.basis[n] for n in hv.dims})
    r_blocks = {}
    for n in hv.dims:
        ker = linmod.nullspace(x.diff(n), x.p)
        chosen, full = linmod.complement_basis(ker, x.dim(n), x.p)
        finv = linmod.inv(full, x.p)
        proj_coords = finv[:ker.shape[1], :]
        proj_ker = matmul(ker, proj_coords, x.p)
        r_blocks[n] = hv.reduce(n, proj_ker)
    r = ChainMap(x, h, r_blocks)
    if compose_chain_maps(r, u) != identity_chain_map(h):
        raise AssertionError("split model retraction failed")
    return h, u, r


def realize_ho_morphism(x, y, graded):
    """A chain map X -> Y inducing the prescribed graded matrices on
    homology (via the split models)."""
    hx, ux, rx = split_model(x)
    hy, uy, ry = split_model(y)
    blocks = {}
    for n, mat in graded.items():
        if hx.dim(n) and hy.dim(n):
            blocks[n] = as_mat(mat)
    mid = ChainMap(hx, hy, blocks, check=False)  # zero differentials
    g = compose_chain_maps(uy, compose_chain_maps(mid, rx))
    got = induced(g)
    for n in set(got) | set(graded):
        want = as_mat(graded[n]) % x.p if n in graded else zeros(0, 0)
        have = got.get(n, zeros(0, 0))
        if want.size != have.size or not np.array_equal(want, have):
            raise AssertionError("realization failed to induce the matrix")
    return g
