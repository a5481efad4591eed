"""Seeded random generation of categories, complexes, maps and diagrams.

Everything is driven by numpy's Generator so identical seeds give identical
objects; the property-test harness in the CLI builds on these.
"""

import numpy as np

from . import linmod
from .chaincof import (ChainComplex, ChainDiagram, ChainMap,
                       colimit_coequalizer, compose_chain_maps, direct_sum,
                       identity_chain_map, zero_chain_map)
from .fincat import Quiver, free_category_on_quiver
from .linmod import as_mat, eye, matmul, zeros


def rng_for(seed, salt=0):
    return np.random.default_rng([seed, salt])


def random_complex(rng, p, max_degree=3, max_dim=3, min_degree=0):
    """A bounded complex with d built downward by killing the image below."""
    lo = min_degree
    hi = int(rng.integers(lo, max_degree + 1))
    dims = {n: int(rng.integers(0, max_dim + 1)) for n in range(lo, hi + 1)}
    dims = {n: d for n, d in dims.items() if d}
    diffs = {}
    prev = None  # d at degree n+1, to be killed by d at n
    for n in sorted(dims, reverse=True):
        if not dims.get(n - 1):
            prev = None
            continue
        raw = rng.integers(0, p, size=(dims[n - 1], dims[n])).astype(np.int64)
        if prev is not None:
            # force raw @ prev = 0 by factoring through the cokernel of prev
            q = linmod.Quotient(prev.shape[0], prev, p)
            raw = matmul(matmul(raw, q.sect, p), q.proj, p)
        diffs[n] = raw
        prev = raw
    return ChainComplex(p, dims, diffs)


def chain_map_space(x, y):
    """Basis of the space of chain maps X -> Y as flattened vectors.

    Returns (slots, basis) where slots fixes the block layout."""
    p = x.p
    degrees = sorted(set(x.dims) | set(y.dims))
    slots = [(n, y.dim(n), x.dim(n)) for n in degrees
             if x.dim(n) and y.dim(n)]
    total = sum(r * c for _, r, c in slots)
    if total == 0:
        return slots, zeros(0, 0)
    # constraint: d_Y f_n - f_{n-1} d_X = 0 for every n
    rows = []
    for n in degrees:
        out_r, out_c = y.dim(n - 1), x.dim(n)
        if out_r == 0 or out_c == 0:
            continue
        row = zeros(out_r * out_c, total)
        off = 0
        for m, r, c in slots:
            size = r * c
            if m == n:
                # d_Y @ f_n : kron(f columns)
                dy = y.diff(n)
                for a in range(out_r):
                    for b in range(out_c):
                        for k in range(r):
                            row[a * out_c + b, off + k * c + b] = dy[a, k]
            if m == n - 1:
                dx = x.diff(n)
                for a in range(out_r):
                    for b in range(out_c):
                        for k in range(c):
                            row[a * out_c + b, off + a * c + k] -= dx[k, b]
            off += size
        rows.append(row % p)
    if not rows:
        return slots, eye(total)
    constraint = np.concatenate(rows, axis=0)
    return slots, linmod.nullspace(constraint, p)


def unflatten_map(x, y, slots, vec):
    blocks = {}
    off = 0
    for n, r, c in slots:
        blocks[n] = as_mat(vec[off:off + r * c].reshape(r, c))
        off += r * c
    return ChainMap(x, y, blocks)


def random_chain_map(rng, x, y):
    """A uniformly random chain map X -> Y (coordinates in the solution
    space of the chain-map equations)."""
    slots, basis = chain_map_space(x, y)
    if basis.shape[1] == 0:
        return zero_chain_map(x, y)
    coeff = rng.integers(0, x.p, size=(basis.shape[1], 1)).astype(np.int64)
    vec = matmul(basis, coeff, x.p)[:, 0]
    return unflatten_map(x, y, slots, vec)


def random_endo_iso(rng, x):
    """A random chain automorphism of X (triangular perturbation of the
    identity plus a random homotopy-shaped term stays invertible)."""
    f = identity_chain_map(x)
    slots, basis = chain_map_space(x, x)
    if basis.shape[1]:
        coeff = rng.integers(0, x.p, size=(basis.shape[1], 1)).astype(np.int64)
        vec = matmul(basis, coeff, x.p)[:, 0]
        cand = unflatten_map(x, x, slots, vec)
        blocks = {n: (f.block(n) + cand.block(n)) % x.p for n in x.dims}
        g = ChainMap(x, x, blocks, check=False)
        if all(linmod.is_invertible(g.block(n), x.p) for n in x.dims):
            return g
    return f


def random_acyclic_complex(rng, p, max_degree=3, max_dim=2):
    """A direct sum of elementary acyclic pieces F_p --id--> F_p."""
    pieces = []
    k = int(rng.integers(1, 3))
    for _ in range(k):
        n = int(rng.integers(1, max_degree + 1))
        d = int(rng.integers(1, max_dim + 1))
        pieces.append(ChainComplex(p, {n: d, n - 1: d}, {n: eye(d)}))
    return direct_sum(pieces, p=p)[0]


def random_quasi_iso(rng, x):
    """A quasi-isomorphism out of X: include into X ⊕ acyclic, then twist
    by a random automorphism of the target."""
    acyc = random_acyclic_complex(rng, x.p)
    total, incs, _ = direct_sum([x, acyc], p=x.p)
    f = incs[0]
    tw = random_endo_iso(rng, total)
    return compose_chain_maps(tw, f)


def random_dag_quiver(rng, max_objects=5, max_arrows=6):
    n = int(rng.integers(2, max_objects + 1))
    vertices = [f"v{i}" for i in range(n)]
    arrows = []
    tries = int(rng.integers(1, max_arrows + 1))
    for t in range(tries):
        i = int(rng.integers(0, n - 1))
        j = int(rng.integers(i + 1, n))
        arrows.append((f"q{t}", vertices[i], vertices[j]))
    return Quiver(tuple(vertices), tuple(arrows))


def random_direct_category(rng, max_objects=5, max_arrows=5):
    """Path category of a random DAG quiver: finite, direct, total table."""
    return free_category_on_quiver(random_dag_quiver(rng, max_objects,
                                                     max_arrows))


class ValueBudgetExceeded(RuntimeError):
    """Raised when the forced latching part already exceeds max_value_dim."""


def random_reedy_cofibrant_diagram(rng, index, p, max_dim=2, max_degree=2,
                                   total_budget=12, max_value_dim=None):
    """Inductive construction: at each object, the value is the latching
    object plus a fresh summand, so every latching map is a split inclusion.

    max_value_dim bounds the total dimension of every value; the latching
    part is forced, so the builder raises ValueBudgetExceeded when it alone
    is too big (callers retry with a fresh seed)."""
    from .fincat import is_direct, latching_category
    deg = is_direct(index)
    if deg is None:
        raise ValueError("index must be direct")
    order = sorted(index.objects, key=lambda o: (deg.degree[o], o))
    complexes = {}
    maps = {}
    budget = total_budget
    for obj in order:
        lat = latching_category(index, obj)
        if lat.category.objects:
            sub = ChainDiagram(lat.category,
                               {u: complexes[index.src(u)]
                                for u in lat.category.objects},
                               {m.mid: _latching_arrow_map(index, maps,
                                                           complexes, m)
                                for m in lat.category.morphisms},
                               check=False)
            colim = colimit_coequalizer(sub)
            base = colim.complex
        else:
            colim = None
            base = ChainComplex(p, {})
        room = budget
        if max_value_dim is not None:
            if base.total_dim() > max_value_dim:
                raise ValueBudgetExceeded(obj)
            room = min(room, max_value_dim - base.total_dim())
        fresh_dims = {}
        for n in range(0, max_degree + 1):
            cap_n = max(0, min(max_dim, room))
            take = int(rng.integers(0, cap_n + 1))
            if take:
                fresh_dims[n] = take
                room -= take
        fresh = ChainComplex(p, fresh_dims)
        budget -= fresh.total_dim()
        value, incs, _ = direct_sum([base, fresh], p=p)
        complexes[obj] = value
        if colim is not None:
            for u in lat.category.objects:
                maps[u] = compose_chain_maps(incs[0], colim.cocone[u])
    all_maps = {}
    for m in index.morphisms:
        if index.is_identity(m.mid):
            all_maps[m.mid] = identity_chain_map(complexes[m.src])
        else:
            all_maps[m.mid] = maps[m.mid]
    return ChainDiagram(index, complexes, all_maps)


def _latching_arrow_map(index, maps, complexes, m):
    from .fincat import split_pair
    arrow = split_pair(m.mid)[0]
    if index.is_identity(arrow):
        return identity_chain_map(complexes[index.src(m.src)])
    return maps[arrow]
