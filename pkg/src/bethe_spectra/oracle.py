"""Ground truth from explicit adjacency matrices.

Two unrelated routes: an exact division-free Berkowitz characteristic
polynomial over Z, and LAPACK's symmetric eigensolver for floating-point
spectra. They share no determinant code.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .graphs import Graph, adjacency_matrix
from .poly import IntPoly


class ConvergenceFailure(RuntimeError):
    pass


def _as_int_rows(a) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in np.asarray(a).tolist()]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("expected a nonempty square matrix")
    return rows


def char_poly_exact(a) -> IntPoly:
    """det(x I - A) for a square integer matrix, by Berkowitz's algorithm.

    Division-free, O(n^4) in the worst case; the inner matrix-vector products
    only touch nonzero entries, so sparse adjacency matrices are much cheaper.
    """
    rows = _as_int_rows(a)
    n = len(rows)
    # block[i] lists the nonzero (j, a_ij) with j < r, i.e. row i of A_r.
    block: list[list[tuple[int, int]]] = [[(0, rows[0][0])] if rows[0][0] else []]
    # q holds coefficients of det(xI - A_r) in descending order, A_r the leading r x r block.
    q = [1, -rows[0][0]]
    for r in range(1, n):
        # A_{r+1} = [[A_r, S], [R, a_rr]] with S = column r above the diagonal, R = row r.
        row_r = [(j, rows[r][j]) for j in range(r) if rows[r][j]]
        col = [1, -rows[r][r]]
        vec = [rows[i][r] for i in range(r)]
        for _ in range(r):
            # entry R * A_r^j * S, then advance vec = A_r * vec
            col.append(-sum(v * vec[j] for j, v in row_r))
            vec = [sum(v * vec[j] for j, v in bi) for bi in block]
        for i in range(r):
            if rows[i][r]:
                block[i].append((r, rows[i][r]))
        block.append(row_r + ([(r, rows[r][r])] if rows[r][r] else []))
        # New polynomial = lower-triangular Toeplitz(col) times q, truncated to r + 2 terms.
        new = [0] * (r + 2)
        for i in range(r + 2):
            acc = 0
            for t in range(max(0, i - r), min(i, r + 1) + 1):
                acc += col[t] * q[i - t]
            new[i] = acc
        q = new
    return IntPoly(reversed(q))


def det_bareiss(a) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    m = _as_int_rows(a)
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def eigenvalues_numeric(a, tol: float = 1e-10) -> list[float]:
    """All eigenvalues of a real symmetric matrix, ascending."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValueError("expected a nonempty square matrix")
    if not np.array_equal(arr, arr.T):
        raise ValueError("matrix is not symmetric")
    try:
        w = np.linalg.eigvalsh(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return sorted(float(x) for x in w)


def min_multiplicity(eigs: Sequence[float], tol: float) -> int:
    """How many eigenvalues lie within tol * max(1, |min|) of the minimum."""
    lo = eigs[0]
    cut = tol * max(1.0, abs(lo))
    return sum(1 for x in eigs if x - lo <= cut)


def graph_char_poly(g: Graph) -> IntPoly:
    if g.n == 0:
        return IntPoly.constant(1)
    return char_poly_exact(adjacency_matrix(g))


def graph_eigenvalues(g: Graph, tol: float = 1e-10) -> list[float]:
    return eigenvalues_numeric(adjacency_matrix(g), tol)
