"""Mod-p dense linear algebra kernels.

Everything downstream (homology, Reedy checks, colimit quotients) reduces to
row reduction and matrix products over F_p, so these two loops are the hot
path of the whole package.  Both carry a numba ``@njit`` implementation and a
pure-numpy one; the active backend is chosen by the ``FRAMECAT_KERNEL``
environment variable (``numba``, ``numpy`` or ``auto``, default ``auto``).
Both backends use identical pivoting (first nonzero row, top to bottom), so
results are bit-identical.

Matrices are 2-d ``int64`` arrays with entries reduced mod p.  p is assumed
prime; inverses use Fermat exponentiation.
"""

import os

import numpy as np

_ENV_VAR = "FRAMECAT_KERNEL"
_backend = None  # resolved lazily: "numba" | "numpy"


def _resolve_backend():
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"{_ENV_VAR} must be auto, numba or numpy, got {choice!r}")
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        return "numpy"
    return "numba"


def active_backend():
    global _backend
    if _backend is None:
        _backend = _resolve_backend()
    return _backend


def set_backend(name):
    """Force a backend ("numba"/"numpy"/None to re-read the env)."""
    global _backend
    if name not in (None, "numba", "numpy"):
        raise ValueError(name)
    _backend = name


# ---------------------------------------------------------------------------
# numpy reference implementation

def _pow_mod(a, e, p):
    r = 1
    a %= p
    while e > 0:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


def _matmul_numpy(a, b, p):
    # entries < p, sums < ncols * p^2: safe in int64 for desk-scale p
    return (a @ b) % p


def _rref_numpy(a, p):
    r = a % p
    m, n = r.shape
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = _pow_mod(int(r[row, col]), p - 2, p)
        r[row] = (r[row] * inv) % p
        mask = np.ones(m, dtype=bool)
        mask[row] = False
        factors = r[mask, col]
        r[mask] = (r[mask] - np.outer(factors, r[row])) % p
        pivots.append(col)
        row += 1
    return r, np.asarray(pivots, dtype=np.int64)


# ---------------------------------------------------------------------------
# numba implementation (compiled on first use)

_numba_funcs = None


def _build_numba():
    global _numba_funcs
    if _numba_funcs is not None:
        return _numba_funcs
    from numba import njit

    @njit(cache=True)
    def pow_mod(a, e, p):
        r = 1
        a %= p
        while e > 0:
            if e & 1:
                r = (r * a) % p
            a = (a * a) % p
            e >>= 1
        return r

    @njit(cache=True)
    def matmul(a, b, p):
        m, k = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        for i in range(m):
            for l in range(k):
                ail = a[i, l]
                if ail == 0:
                    continue
                for j in range(n):
                    out[i, j] = (out[i, j] + ail * b[l, j]) % p
        return out

    @njit(cache=True)
    def rref(a, p):
        m, n = a.shape
        r = a % p
        pivots = np.empty(min(m, n), dtype=np.int64)
        npiv = 0
        row = 0
        for col in range(n):
            if row >= m:
                break
            piv = -1
            for i in range(row, m):
                if r[i, col] != 0:
                    piv = i
                    break
            if piv == -1:
                continue
            if piv != row:
                for j in range(n):
                    tmp = r[row, j]
                    r[row, j] = r[piv, j]
                    r[piv, j] = tmp
            inv = pow_mod(r[row, col], p - 2, p)
            for j in range(n):
                r[row, j] = (r[row, j] * inv) % p
            for i in range(m):
                if i == row:
                    continue
                f = r[i, col]
                if f != 0:
                    for j in range(n):
                        r[i, j] = (r[i, j] - f * r[row, j]) % p
            pivots[npiv] = col
            npiv += 1
            row += 1
        return r, pivots[:npiv]

    _numba_funcs = (matmul, rref)
    return _numba_funcs


# ---------------------------------------------------------------------------
# public entry points

def _as_mat(a):
    m = np.ascontiguousarray(np.asarray(a, dtype=np.int64))
    if m.ndim != 2:
        raise ValueError(f"expected 2-d matrix, got shape {m.shape}")
    return m


def matmul(a, b, p):
    """(a @ b) mod p."""
    a, b = _as_mat(a), _as_mat(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if active_backend() == "numba":
        return _build_numba()[0](a, b, p)
    return _matmul_numpy(a, b, p)


def rref(a, p):
    """Reduced row echelon form mod p -> (R, pivot column indices)."""
    a = _as_mat(a)
    if a.size == 0:
        return a % p if a.size else a.copy(), np.empty(0, dtype=np.int64)
    if active_backend() == "numba":
        r, piv = _build_numba()[1](a.copy(), p)
        return r, piv
    return _rref_numpy(a.copy(), p)
