"""Truncated frames over the chain-complex instance: levelwise frames of
the quasi-category of frames, the comparison map to homology, equivalence
edges, triangle coherence, restriction along the product comparison, the
diagonal mix-in, and realization of incoherent homology diagrams.
"""

from dataclasses import dataclass

import numpy as np

from . import dsub, linmod
from .chaincof import (ChainDiagram, ChainDiagramMap, ChainMap, HomologyView,
                       compose_chain_maps, identity_chain_map, induced,
                       is_weq, realize_ho_morphism, reedy_replace_rel,
                       reedy_status, restrict_diagram)
from .fincat import (CatFunctor, FinCategory, ValidationReport, pair_id,
                     poset_category, split_pair)
from .linmod import matmul, zeros
from .sset import chain_id, nerve, nerve_map

_dcat_cache = {}


def standard_dcat(n, cap):
    """The subdivision of the poset [n] at the given cap (cached; immutable)."""
    key = (n, cap)
    if key not in _dcat_cache:
        _dcat_cache[key] = dsub.d_subdivision(poset_category(n), cap)
    return _dcat_cache[key]


def base_object(n, level):
    """The object (n, front chain 0 -> 1 -> ... -> n) of D[level]."""
    return dsub.obj_id(n, chain_id("0", tuple(f"{i}<={i+1}" for i in range(n))))


def vertex_object(b):
    """The object (0, vertex b) of any D[n] with n >= b."""
    return dsub.obj_id(0, chain_id(str(b), ()))


@dataclass
class FrameSimplex:
    level: int
    cap: int
    dcat: object                      # DCat of [level]
    diagram: ChainDiagram
    endpoints: tuple = ()             # designated lower frames, if any
    target: ChainDiagram | None = None
    comparison: ChainDiagramMap | None = None
    source_complexes: tuple = ()      # original complexes, for provenance

    @property
    def p(self):
        return self.diagram.p


@dataclass
class HoMorphism:
    src: HomologyView
    tgt: HomologyView
    mats: dict

    def mat(self, n):
        return self.mats.get(n, zeros(self.tgt.dim(n), self.src.dim(n)))

    def degrees(self):
        return sorted(set(self.src.dims) | set(self.tgt.dims))

    def is_invertible(self):
        return all(self.mat(n).shape[0] == self.mat(n).shape[1]
                   and linmod.is_invertible(self.mat(n), self.src.p)
                   for n in self.degrees())

    def then(self, other):
        """other after self."""
        mats = {n: matmul(other.mat(n), self.mat(n), self.src.p)
                for n in set(self.degrees()) | set(other.degrees())}
        return HoMorphism(self.src, other.tgt, mats)

    def inverse(self):
        mats = {}
        for n in self.degrees():
            inv = linmod.inv(self.mat(n), self.src.p)
            if inv is None:
                raise ValueError("HoMorphism not invertible")
            mats[n] = inv
        return HoMorphism(self.tgt, self.src, mats)

    def __eq__(self, other):
        if not isinstance(other, HoMorphism):
            return False
        degs = set(self.degrees()) | set(other.degrees())
        return all(np.array_equal(self.mat(n), other.mat(n)) for n in degs)


def ho_identity(hv):
    return HoMorphism(hv, hv, {n: linmod.eye(hv.dim(n)) for n in hv.dims})


def ho_of_chain_map(f, hv_src=None, hv_tgt=None):
    hs = hv_src or HomologyView(f.src)
    ht = hv_tgt or HomologyView(f.tgt)
    return HoMorphism(hs, ht, induced(f, hs, ht))


# ---------------------------------------------------------------------------
# validation and construction

def validate_frame(s):
    """Reedy cofibrancy plus homotopicality against the subdivision weqs."""
    report = ValidationReport()
    st = reedy_status(s.diagram)
    if not st["reedy_cofibrant"]:
        report.fail(f"not Reedy cofibrant at {st['witness']}")
    for w in s.dcat.weq.members:
        if not is_weq(s.diagram.on(w)):
            report.fail(f"not homotopical at {w}")
            break
    return report


def _empty_sieve(dcat):
    empty = FinCategory([], [], {}, {})
    return (empty, CatFunctor(empty, dcat.cat, {}, {}),
            ChainDiagram(empty, {}, {}, check=False), {})


def frame_of_object(x, cap=3):
    """Level-0 frame of a complex: replace the pulled-back constant diagram."""
    d0 = standard_dcat(0, cap)
    i0 = poset_category(0)
    base = ChainDiagram(i0, {"0": x}, {"0<=0": identity_chain_map(x)},
                        check=False)
    pulled = restrict_diagram(base, dsub.p_categorical(d0), weq=d0.weq)
    _, sieve, h, comps = _empty_sieve(d0)
    xhat, g = reedy_replace_rel(pulled, sieve, h, comps)
    frame = FrameSimplex(0, cap, d0, xhat, target=pulled, comparison=g,
                         source_complexes=(x,))
    if not is_weq(g.at(base_object(0, 0))):
        raise AssertionError("frame value not weakly equivalent to the input")
    return frame


def _vertex_inclusion_functor(b, level, cap):
    """D[0] -> D[level] induced by the vertex b of the poset."""
    p0, pl = poset_category(0), poset_category(level)
    vb = CatFunctor(p0, pl, {"0": str(b)}, {"0<=0": f"{b}<={b}"})
    d0, dl = standard_dcat(0, cap), standard_dcat(level, cap)
    nm = nerve_map(vb, d0.base, dl.base)
    return dsub.d_of_map(nm, d0, dl)


def _face_functor(i, cap):
    """D[1] -> D[2] induced by the i-th coface of the poset [2]."""
    verts = {0: (1, 2), 1: (0, 2), 2: (0, 1)}[i]
    p1, p2 = poset_category(1), poset_category(2)
    ob = {"0": str(verts[0]), "1": str(verts[1])}
    mo = {m.mid: f"{verts[int(m.src)]}<={verts[int(m.tgt)]}"
          for m in p1.morphisms}
    fun = CatFunctor(p1, p2, ob, mo)
    d1, d2 = standard_dcat(1, cap), standard_dcat(2, cap)
    return dsub.d_of_map(nerve_map(fun, d1.base, d2.base), d1, d2)


def _endpoint_sieve(cap, src_frame, tgt_frame, pulled):
    """The sieve D({0}) ⊔ D({1}) -> D[1] together with the endpoint data."""
    from .fincat import disjoint_union_category
    d0 = standard_dcat(0, cap)
    incls = [_vertex_inclusion_functor(b, 1, cap) for b in (0, 1)]
    union, tags = disjoint_union_category([d0.cat, d0.cat], ["0", "1"])
    ob, mo = {}, {}
    complexes, maps, comps = {}, {}, {}
    for b, frame in ((0, src_frame), (1, tgt_frame)):
        for o in d0.cat.objects:
            to = tags[b](o)
            ob[to] = incls[b].on_obj(o)
            complexes[to] = frame.diagram.at(o)
            comps[to] = ChainMap(frame.diagram.at(o),
                                 pulled.at(ob[to]),
                                 frame.comparison.at(o).blocks, check=False)
        for m in d0.cat.morphisms:
            tm = tags[b](m.mid)
            mo[tm] = incls[b].on_mor(m.mid)
            maps[tm] = frame.diagram.on(m.mid)
    sieve = CatFunctor(union, standard_dcat(1, cap).cat, ob, mo)
    h = ChainDiagram(union, complexes, maps, check=False)
    return sieve, h, comps


def frame_of_map(f, cap=3, src_frame=None, tgt_frame=None):
    """Level-1 frame of a chain map, restricting exactly to the endpoint
    frames (built if not supplied)."""
    if src_frame is None:
        src_frame = frame_of_object(f.src, cap)
    if tgt_frame is None:
        tgt_frame = frame_of_object(f.tgt, cap)
    d1 = standard_dcat(1, cap)
    i1 = poset_category(1)
    base = ChainDiagram(i1, {"0": f.src, "1": f.tgt},
                        {"0<=0": identity_chain_map(f.src),
                         "1<=1": identity_chain_map(f.tgt),
                         "0<=1": f}, check=False)
    pulled = restrict_diagram(base, dsub.p_categorical(d1), weq=d1.weq)
    sieve, h, comps = _endpoint_sieve(cap, src_frame, tgt_frame, pulled)
    xhat, g = reedy_replace_rel(pulled, sieve, h, comps)
    return FrameSimplex(1, cap, d1, xhat, endpoints=(src_frame, tgt_frame),
                        target=pulled, comparison=g,
                        source_complexes=(f.src, f.tgt))


def frame_of_composable_pair(f, g, cap=2):
    """Level-2 frame of a composable pair (g after f), replaced relative to
    nothing (fresh frame each time)."""
    if f.tgt != g.src:
        raise ValueError("maps not composable")
    d2 = standard_dcat(2, cap)
    i2 = poset_category(2)
    gf = compose_chain_maps(g, f)
    base = ChainDiagram(i2,
                        {"0": f.src, "1": f.tgt, "2": g.tgt},
                        {"0<=0": identity_chain_map(f.src),
                         "1<=1": identity_chain_map(f.tgt),
                         "2<=2": identity_chain_map(g.tgt),
                         "0<=1": f, "1<=2": g, "0<=2": gf}, check=False)
    pulled = restrict_diagram(base, dsub.p_categorical(d2), weq=d2.weq)
    _, sieve, h, comps = _empty_sieve(d2)
    xhat, gmap = reedy_replace_rel(pulled, sieve, h, comps)
    return FrameSimplex(2, cap, d2, xhat, target=pulled, comparison=gmap,
                        source_complexes=(f.src, f.tgt, g.tgt))


# ---------------------------------------------------------------------------
# theta and friends

def edge_legs(e):
    """The two structure maps F(0) -> F(01) <- F(1) of a level-1 frame."""
    v0, v1 = vertex_object(0), vertex_object(1)
    e01 = base_object(1, 1)
    m0 = dsub.mor_id((0,), v0, e01)
    m1 = dsub.mor_id((1,), v1, e01)
    return e.diagram.on(m0), e.diagram.on(m1)


def theta(e):
    """The zig-zag image in homology: inverse of the right leg after the
    left leg.  The right leg is a weak equivalence by homotopicality."""
    left, right = edge_legs(e)
    h0 = HomologyView(left.src)
    hm = HomologyView(left.tgt)
    h1 = HomologyView(right.src)
    right_h = HoMorphism(h1, hm, induced(right, h1, hm))
    if not right_h.is_invertible():
        raise ValueError("right leg not invertible; edge is not homotopical")
    left_h = HoMorphism(h0, hm, induced(left, h0, hm))
    return left_h.then(right_h.inverse())


def degenerate_edge_of_frame(frame):
    """s_0 of a level-0 frame: restriction along D of the collapse [1]->[0]."""
    cap = frame.cap
    p1, p0 = poset_category(1), poset_category(0)
    collapse = CatFunctor(p1, p0,
                          {"0": "0", "1": "0"},
                          {m.mid: "0<=0" for m in p1.morphisms})
    d1, d0 = standard_dcat(1, cap), standard_dcat(0, cap)
    dcollapse = dsub.d_of_map(nerve_map(collapse, d1.base, d0.base), d1, d0)
    diagram = restrict_diagram(frame.diagram, dcollapse, weq=d1.weq)
    return FrameSimplex(1, cap, d1, diagram, endpoints=(frame, frame))


def is_equivalence_edge(e):
    """True iff every structure map of the truncated D[1] goes to a
    quasi-isomorphism."""
    hv = {o: HomologyView(e.diagram.at(o)) for o in e.dcat.cat.objects}
    from .chaincof import graded_is_iso
    for m in e.dcat.cat.morphisms:
        f = e.diagram.on(m.mid)
        hs, ht = hv[m.src], hv[m.tgt]
        if not graded_is_iso(induced(f, hs, ht), hs, ht, e.p):
            return False
    return True


def boundary_edges(t):
    """The three faces of a level-2 frame as level-1 frames."""
    edges = []
    for i in range(3):
        fun = _face_functor(i, t.cap)
        diagram = restrict_diagram(t.diagram, fun,
                                   weq=standard_dcat(1, t.cap).weq)
        edges.append(FrameSimplex(1, t.cap, standard_dcat(1, t.cap), diagram))
    return edges


@dataclass
class TriangleReport:
    passed: bool
    thetas: tuple
    message: str = ""


def check_triangle_coherence(t):
    """theta(d1) = theta(d0) ∘ theta(d2) as exact graded matrices."""
    d0e, d1e, d2e = boundary_edges(t)
    t0, t1, t2 = theta(d0e), theta(d1e), theta(d2e)
    composite = t2.then(t0)
    ok = composite == t1
    return TriangleReport(ok, (t0, t1, t2),
                          "" if ok else "composite differs from middle face")


# ---------------------------------------------------------------------------
# Phi restriction and the diagonal mix-in

def product_subdivision(d_k, d_n, cap):
    """D(K x L) built over the product of the factors' base sets, so that
    its simplices are pairs and the comparison functor applies."""
    from .sset import product_sset
    return dsub.d_subdivision(product_sset(d_k.base, d_n.base), cap)


def phi_restrict(diagram, d_k, d_n, d_prod, expect_reedy=True):
    """Restrict a diagram over DK x D[n] along the product comparison
    D(K x [n]) -> DK x D[n]; Reedy cofibrancy is preserved (asserted)."""
    comparison, _ = dsub.projection_comparison(d_prod, d_k, d_n)
    restricted = restrict_diagram(diagram, comparison, weq=d_prod.weq)
    if expect_reedy:
        before = reedy_status(diagram)
        after = reedy_status(restricted)
        if before["reedy_cofibrant"] and not after["reedy_cofibrant"]:
            raise AssertionError(
                f"comparison restriction lost Reedy cofibrancy at "
                f"{after['witness']}")
    return restricted


def triple_index(d_level, d_i, d_zero):
    from .fincat import product_category
    inner = product_category(d_level.cat, d_i.cat)
    return product_category(inner, d_zero.cat), inner


def diagonal_zero_object(d_level, a):
    """The D[0] object matching the dimension of the D[level] object a."""
    m = d_level.obj_data[a][0]
    return dsub.obj_id(m, chain_id("0", tuple("0<=0" for _ in range(m))))


def diagonal_zero_morphism(d_level, mid):
    inj, src, tgt = d_level.mor_data[mid]
    m_src = d_level.obj_data[src][0]
    m_tgt = d_level.obj_data[tgt][0]
    return dsub.mor_id(inj,
                       dsub.obj_id(m_src, chain_id("0", ("0<=0",) * m_src)),
                       dsub.obj_id(m_tgt, chain_id("0", ("0<=0",) * m_tgt)))


def e_mix(diagram, d_level, d_i, d_zero):
    """Diagonal reindexing D[k] x DI -> D[k] x DI x D[0]: the third
    coordinate repeats the first one's indexing simplex."""
    from .fincat import product_category
    inner = product_category(d_level.cat, d_i.cat)
    complexes = {}
    maps = {}
    for o in inner.objects:
        a, b = split_pair(o)
        complexes[o] = diagram.at(pair_id(o, diagonal_zero_object(d_level, a)))
    for m in inner.morphisms:
        am, bm = split_pair(m.mid)
        maps[m.mid] = diagram.on(pair_id(m.mid,
                                         diagonal_zero_morphism(d_level, am)))
    return ChainDiagram(inner, complexes, maps, check=False)


def pr_pullback(diagram, d_zero):
    """Pull a diagram over an index A back along A x D[0] -> A."""
    from .fincat import product_category
    outer = product_category(diagram.index, d_zero.cat)
    complexes = {}
    maps = {}
    for o in outer.objects:
        a, _ = split_pair(o)
        complexes[o] = diagram.at(a)
    for m in outer.morphisms:
        am, _ = split_pair(m.mid)
        maps[m.mid] = diagram.on(am)
    return ChainDiagram(outer, complexes, maps, check=False)


# ---------------------------------------------------------------------------
# lifting incoherent diagrams

@dataclass
class LiftResult:
    status: str              # "ok" | "counterexample"
    edges: dict              # generator arrow id -> FrameSimplex level 1
    message: str = ""


def lift_free_diagram(free_cat, vertex_frames, arrow_homs, cap=2):
    """Realize prescribed homology morphisms along the generating quiver of
    a free category as honest frame edges.

    vertex_frames: object id -> level-0 FrameSimplex (with provenance);
    arrow_homs: generator morphism id -> dict degree -> matrix, read against
    the homology of the frames' source complexes."""
    from .fincat import is_free
    quiver = is_free(free_cat)
    if quiver is None:
        raise ValueError("category is not free")
    edges = {}
    for aid, src_obj, tgt_obj in quiver.arrows:
        fx = vertex_frames[src_obj]
        fy = vertex_frames[tgt_obj]
        x = fx.source_complexes[0]
        y = fy.source_complexes[0]
        hx, hy = HomologyView(x), HomologyView(y)
        prescribed = arrow_homs[aid]
        for n in set(hx.dims) | set(hy.dims) | set(prescribed):
            mat = prescribed.get(n)
            rows = hy.dim(n)
            cols = hx.dim(n)
            got = (0, 0) if mat is None else tuple(np.asarray(mat).shape)
            if (rows or cols) and got != (rows, cols):
                return LiftResult(
                    "counterexample", edges,
                    f"arrow {aid}: degree {n} needs a {rows}x{cols} matrix, "
                    f"got {got}")
        g = realize_ho_morphism(x, y, prescribed)
        edge = frame_of_map(g, cap, src_frame=fx, tgt_frame=fy)
        # theta lands where prescribed, transported along the replacements
        phi_x = ho_of_chain_map(fx.comparison.at(base_object(0, 0)))
        phi_y = ho_of_chain_map(fy.comparison.at(base_object(0, 0)))
        got = theta(edge)
        want = phi_x.then(
            HoMorphism(hx, hy, {n: linmod.as_mat(v) % x.p
                                for n, v in prescribed.items()})).then(
            phi_y.inverse())
        if got != want:
            return LiftResult("counterexample", edges,
                              f"arrow {aid}: theta image differs")
        edges[aid] = edge
    return LiftResult("ok", edges)
