"""Conversion between trivariate ``MPoly`` over F_p and dense kernel arrays."""

from __future__ import annotations

import numpy as np

from .poly import MPoly, Ring


def _require(f: MPoly):
    if f.ring.modulus is None or f.ring.nvars != 3:
        raise ValueError("dense kernels need a trivariate polynomial over F_p")


def to_dense(f: MPoly) -> np.ndarray:
    _require(f)
    if not f.terms:
        return np.zeros((1, 1, 1), dtype=np.int64)
    shape = tuple(max(e[i] for e in f.terms) + 1 for i in range(3))
    a = np.zeros(shape, dtype=np.int64)
    for e, c in f.terms.items():
        a[e] = c
    return a


def from_dense(a: np.ndarray, ring: Ring) -> MPoly:
    idx = np.nonzero(a)
    vals = a[idx]
    terms = {(int(i), int(j), int(k)): int(v) for i, j, k, v in zip(*idx, vals)}
    return MPoly._raw(ring, terms)


def sparse_rows(f: MPoly) -> np.ndarray:
    """Rows ``(c, i, j, k)`` for :func:`ramvf._kernels.mul_sparse`."""
    _require(f)
    rows = [(c,) + e for e, c in f.terms.items()]
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


def derivation_rows(components) -> np.ndarray:
    """Rows ``(var, c, i, j, k)`` for :func:`ramvf._kernels.apply_derivation`."""
    rows = []
    for var, comp in enumerate(components):
        _require(comp)
        rows.extend((var, c) + e for e, c in comp.terms.items())
    return np.array(rows, dtype=np.int64).reshape(-1, 5)
