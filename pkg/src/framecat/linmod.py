"""Derived mod-p linear algebra: ranks, kernels, solving, quotients.

Everything here is built on the two kernels in ``_kernels`` and is therefore
backend-independent.  All matrices are int64 numpy arrays reduced mod p, and
every choice (pivoting, quotient bases, complements) is deterministic so that
repeated runs produce identical output.
"""

import numpy as np

from ._kernels import matmul, rref


def zeros(m, n):
    return np.zeros((m, n), dtype=np.int64)


def eye(n):
    return np.eye(n, dtype=np.int64)


def as_mat(a):
    m = np.asarray(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError(f"expected matrix, got shape {m.shape}")
    return m


def rank(a, p):
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Column basis of ker(a), in echelon order. Shape (ncols, nullity)."""
    a = as_mat(a)
    n = a.shape[1]
    r, piv = rref(a, p)
    piv = list(piv)
    free = [j for j in range(n) if j not in piv]
    basis = zeros(n, len(free))
    for k, j in enumerate(free):
        basis[j, k] = 1
        for i, pc in enumerate(piv):
            basis[pc, k] = (-r[i, j]) % p
    return basis


def solve(a, b, p):
    """One solution x of a x = b (matrix rhs), or None if inconsistent."""
    a, b = as_mat(a), as_mat(b)
    m, n = a.shape
    if b.shape[0] != m:
        raise ValueError(f"rhs rows {b.shape[0]} != {m}")
    aug = np.concatenate([a, b], axis=1)
    r, piv = rref(aug, p)
    piv = list(piv)
    if any(c >= n for c in piv):
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x


def inv(a, p):
    """Inverse of a square matrix, or None if singular."""
    a = as_mat(a)
    n = a.shape[0]
    if a.shape[1] != n:
        return None
    x = solve(a, eye(n), p)
    if x is None:
        return None
    if not np.array_equal(matmul(a, x, p), eye(n)):
        return None
    return x


def is_invertible(a, p):
    a = as_mat(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def full_column_rank(a, p):
    return rank(a, p) == a.shape[1]


def in_span(basis, v, p):
    """Is column vector v in the column span of basis?"""
    return solve(basis, v.reshape(-1, 1) if v.ndim == 1 else v, p) is not None


def column_space(a, p):
    """Independent columns of a (deterministic: pivots of rref)."""
    a = as_mat(a)
    _, piv = rref(a, p)
    return a[:, list(piv)]


def complement_basis(w, dim, p):
    """Standard basis vectors extending col(w) to all of F_p^dim.

    Greedy in index order; returns the chosen indices and the extended
    invertible matrix [w | e_js].
    """
    w = as_mat(w)
    cur = w
    chosen = []
    for j in range(dim):
        if rank(cur, p) == dim:
            break
        e = zeros(dim, 1)
        e[j, 0] = 1
        cand = np.concatenate([cur, e], axis=1)
        if rank(cand, p) > rank(cur, p):
            cur = cand
            chosen.append(j)
    return chosen, cur


class Quotient:
    """V / span(rel) with a chosen section, all over F_p.

    proj : (q x v) surjection with proj @ rel = 0
    sect : (v x q) section of proj, proj @ sect = id
    """

    def __init__(self, dim, rel, p):
        rel = as_mat(rel)
        if rel.shape[0] != dim:
            raise ValueError("relation rows must match ambient dimension")
        self.p = p
        self.dim_ambient = dim
        self.rel = column_space(rel, p)
        r = self.rel.shape[1]
        self.dim = dim - r
        if dim == 0:
            self.proj = zeros(0, 0)
            self.sect = zeros(0, 0)
            return
        chosen, full = complement_basis(self.rel, dim, p)
        finv = inv(full, p)
        assert finv is not None
        self.proj = finv[r:, :]
        sect = zeros(dim, self.dim)
        for k, j in enumerate(chosen):
            sect[j, k] = 1
        self.sect = sect

    def map_from(self, a):
        """proj @ a."""
        return matmul(self.proj, a, self.p)

    def descend(self, a):
        """The map V/rel -> Z induced by a: V -> Z killing the relations."""
        if self.rel.shape[1] and not np.all(matmul(a, self.rel, self.p) == 0):
            raise ValueError("map does not kill the relations")
        return matmul(a, self.sect, self.p)
