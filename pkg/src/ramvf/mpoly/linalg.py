"""Small exact matrices over Q or F_p, Jacobians and 2x2 minors."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..exactnum import FpElement, mod_p
from .poly import MPoly, partial_derivative

Matrix = list[list]


def _norm(x, p):
    if p is None:
        return Fraction(x)
    return mod_p(x, p)


def rref(M: Sequence[Sequence], p: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[_norm(x, p) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p) if p is not None else 1 / A[r][c]
        A[r] = [x * inv % p if p is not None else x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                if p is not None:
                    A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
                else:
                    A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M, p: int | None = None) -> int:
    return len(rref(M, p)[1])


def nullspace(M, p: int | None = None) -> Matrix:
    A, pivots = rref(M, p)
    cols = len(M[0])
    free = [c for c in range(cols) if c not in pivots]
    zero, one = (0, 1) if p is not None else (Fraction(0), Fraction(1))
    basis = []
    for f in free:
        vec = [zero] * cols
        vec[f] = one
        for r, c in enumerate(pivots):
            vec[c] = (-A[r][f]) % p if p is not None else -A[r][f]
        basis.append(vec)
    return basis


def solve(M, rhs, p: int | None = None):
    """Unique solution of M x = rhs, or None when M is singular."""
    n = len(M)
    aug = [list(row) + [b] for row, b in zip(M, rhs)]
    A, pivots = rref(aug, p)
    if pivots != list(range(n)):
        return None
    return [A[i][n] for i in range(n)]


def matmul(A, B, p: int | None = None) -> Matrix:
    out = [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
    return [[_norm(x, p) for x in row] for row in out]


def matpow(A, n: int, p: int | None = None) -> Matrix:
    size = len(A)
    result = [[_norm(int(i == j), p) for j in range(size)] for i in range(size)]
    base = [[_norm(x, p) for x in row] for row in A]
    while n:
        if n & 1:
            result = matmul(result, base, p)
        n >>= 1
        if n:
            base = matmul(base, base, p)
    return result


def matsub(A, B, p: int | None = None) -> Matrix:
    return [[_norm(a - b, p) for a, b in zip(r, s)] for r, s in zip(A, B)]


def inverse(A, p: int | None = None) -> Matrix:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def jacobian(gens: Sequence[MPoly]) -> list[list[MPoly]]:
    ring = gens[0].ring
    return [[partial_derivative(g, i) for i in range(ring.nvars)] for g in gens]


def jacobian_at(gens: Sequence[MPoly], point) -> Matrix:
    p = gens[0].ring.modulus
    out = []
    for row in jacobian(gens):
        vals = []
        for d in row:
            val = d.evaluate(list(point)) if d.terms else 0
            vals.append(val.value if isinstance(val, FpElement) else _norm(val, p))
        out.append(vals)
    return out


def jacobian_rank_at_point(gens: Sequence[MPoly], point) -> tuple[int, Matrix]:
    """Rank of the Jacobian of ``gens`` at ``point`` and a basis of its kernel."""
    p = gens[0].ring.modulus
    J = jacobian_at(gens, point)
    return rank(J, p), nullspace(J, p)


def parallel(u, w, p: int | None = None) -> bool:
    """True iff the vectors are linearly dependent."""
    return rank([list(u), list(w)], p) < 2


def minors_2x2(u: Sequence[MPoly], w: Sequence[MPoly]) -> tuple[MPoly, MPoly, MPoly]:
    """u_i w_j - u_j w_i for (i, j) = (1, 2), (1, 3), (2, 3)."""
    if len(u) != 3 or len(w) != 3:
        raise ValueError("expected two triples")
    return tuple(u[i] * w[j] - u[j] * w[i] for i, j in ((0, 1), (0, 2), (1, 2)))  # type: ignore[return-value]
