"""Dense mod-p kernels for trivariate polynomials.

Each kernel has a numba ``@njit`` implementation and a vectorized numpy one
with identical results.  The numba path is used when numba imports and the
environment variable ``RAMVF_DISABLE_NUMBA`` is not set to a true value.

A polynomial is an ``int64`` array ``a`` with ``a[i, j, k]`` the coefficient
of ``x^i y^j z^k`` in ``[0, p)``.  A sparse factor is an ``int64`` array of
rows ``(c, i, j, k)``.  A derivation is given by rows ``(var, c, i, j, k)``
meaning ``c x^i y^j z^k d/d(var)``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_ENV_FLAG = "RAMVF_DISABLE_NUMBA"
_backend = "numba" if HAVE_NUMBA and os.environ.get(_ENV_FLAG, "").lower() not in ("1", "true", "yes") else "numpy"


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    _backend = name


# -- numpy implementations ----------------------------------------------

def _mul_sparse_np(a, terms, p, out):
    sa = a.shape
    for r in range(terms.shape[0]):
        c, i, j, k = terms[r]
        out[i:i + sa[0], j:j + sa[1], k:k + sa[2]] += a * c % p
        out[i:i + sa[0], j:j + sa[1], k:k + sa[2]] %= p
    return out


def _derive_np(f, terms, p, out):
    for r in range(terms.shape[0]):
        var, c, i, j, k = terms[r]
        n = f.shape[var]
        if n < 2:
            continue
        shape = [1, 1, 1]
        shape[var] = n
        idx = np.arange(n, dtype=np.int64).reshape(shape)
        d = f * idx % p
        d = np.take(d, np.arange(1, n), axis=var)
        d = d * c % p
        s = d.shape
        out[i:i + s[0], j:j + s[1], k:k + s[2]] += d
        out[i:i + s[0], j:j + s[1], k:k + s[2]] %= p
    return out


# -- numba implementations ----------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _mul_sparse_nb(a, terms, p, out):  # pragma: no cover - compiled
        n0, n1, n2 = a.shape
        nt = terms.shape[0]
        for x in range(n0):
            for y in range(n1):
                for z in range(n2):
                    v = a[x, y, z]
                    if v == 0:
                        continue
                    for r in range(nt):
                        ox = x + terms[r, 1]
                        oy = y + terms[r, 2]
                        oz = z + terms[r, 3]
                        out[ox, oy, oz] = (out[ox, oy, oz] + v * terms[r, 0]) % p
        return out

    @njit(cache=True)
    def _derive_nb(f, terms, p, out):  # pragma: no cover - compiled
        n0, n1, n2 = f.shape
        nt = terms.shape[0]
        for x in range(n0):
            for y in range(n1):
                for z in range(n2):
                    v = f[x, y, z]
                    if v == 0:
                        continue
                    for r in range(nt):
                        var = terms[r, 0]
                        if var == 0:
                            e = x
                        elif var == 1:
                            e = y
                        else:
                            e = z
                        if e == 0:
                            continue
                        ox = x + terms[r, 2]
                        oy = y + terms[r, 3]
                        oz = z + terms[r, 4]
                        if var == 0:
                            ox -= 1
                        elif var == 1:
                            oy -= 1
                        else:
                            oz -= 1
                        coef = v * e % p * terms[r, 1] % p
                        out[ox, oy, oz] = (out[ox, oy, oz] + coef) % p
        return out


# -- dispatch -------------------------------------------------------------

def mul_sparse(a: np.ndarray, terms: np.ndarray, p: int) -> np.ndarray:
    """Product of the dense ``a`` with a sparse polynomial, mod p."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    terms = np.ascontiguousarray(terms, dtype=np.int64)
    if terms.shape[0] == 0:
        return np.zeros((1, 1, 1), dtype=np.int64)
    ext = terms[:, 1:].max(axis=0)
    out = np.zeros(tuple(int(s + e) for s, e in zip(a.shape, ext)), dtype=np.int64)
    if _backend == "numba":
        return _mul_sparse_nb(a, terms, p, out)
    return _mul_sparse_np(a, terms, p, out)


def apply_derivation(f: np.ndarray, terms: np.ndarray, p: int) -> np.ndarray:
    """``sum_r c_r m_r * d f / d(var_r)`` mod p."""
    f = np.ascontiguousarray(f, dtype=np.int64)
    terms = np.ascontiguousarray(terms, dtype=np.int64)
    ext = [0, 0, 0]
    for r in range(terms.shape[0]):
        var = terms[r, 0]
        for ax in range(3):
            ext[ax] = max(ext[ax], int(terms[r, 2 + ax]) - (1 if ax == var else 0))
    out = np.zeros(tuple(s + e for s, e in zip(f.shape, ext)), dtype=np.int64)
    if _backend == "numba":
        return _derive_nb(f, terms, p, out)
    return _derive_np(f, terms, p, out)


def trim(a: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero slabs on every axis (keeps at least one entry)."""
    nz = np.nonzero(a)
    if len(nz[0]) == 0:
        return np.zeros((1,) * a.ndim, dtype=a.dtype)
    return a[tuple(slice(0, int(ix.max()) + 1) for ix in nz)]


def polymul_1d(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Univariate product mod p (coefficients low degree first)."""
    if p * p * min(len(a), len(b)) < 2 ** 62:
        return np.convolve(a, b) % p
    out = np.convolve(a.astype(object), b.astype(object)) % p
    return out.astype(np.int64)


def polypow_1d(a: np.ndarray, n: int, p: int) -> np.ndarray:
    """``a**n`` mod p by binary exponentiation."""
    result = np.ones(1, dtype=np.int64)
    base = np.asarray(a, dtype=np.int64) % p
    while n:
        if n & 1:
            result = polymul_1d(result, base, p)
        n >>= 1
        if n:
            base = polymul_1d(base, base, p)
    return result
