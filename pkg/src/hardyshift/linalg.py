"""Exact sparse Gauss-Jordan elimination and tolerance-gated floating kernels.

The exact routines work on linear systems given as sparse rows, each row a
``{column: coefficient}`` dict over any exact field (Fraction and
GaussianRational both qualify).  The commutation systems built elsewhere in
this package have a handful of nonzeros per row, and sparse elimination with
a column index keeps them effectively linear; a dense eliminator over exact
scalars would not finish at the largest sweep sizes.

The floating routines use numpy SVD and refuse to decide a rank when any
singular value falls within one order of magnitude of the tolerance, since
such a system cannot be trusted either way.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import RankAmbiguityError

_GAP = math.sqrt(10.0)


def rref(rows: list[dict], ncols: int):
    """Reduced row echelon form of a sparse system.

    Returns ``(reduced_rows, pivots)`` where ``pivots`` maps pivot column to
    the index of the row reduced against it.  Input rows are not mutated.
    Pivot choice (sparsest candidate row, ties by index) is deterministic.
    """
    work = [dict(r) for r in rows]
    by_col: dict[int, set[int]] = {}
    for idx, row in enumerate(work):
        for c in row:
            by_col.setdefault(c, set()).add(idx)

    pivots: dict[int, int] = {}
    pivoted: set[int] = set()
    for col in range(ncols):
        holders = by_col.get(col)
        if not holders:
            continue
        candidates = [i for i in holders if i not in pivoted]
        if not candidates:
            continue
        piv = min(candidates, key=lambda i: (len(work[i]), i))
        prow = work[piv]
        pval = prow[col]
        if pval != 1:
            for c in prow:
                prow[c] = prow[c] / pval
        piv_items = [(c, v) for c, v in prow.items() if c != col]
        for i in list(holders):
            if i == piv:
                continue
            row = work[i]
            factor = row.pop(col, None)
            if factor is None:
                continue
            holders.discard(i)
            for c, v in piv_items:
                cur = row.get(c)
                if cur is None:
                    row[c] = -(factor * v)
                    by_col.setdefault(c, set()).add(i)
                else:
                    nv = cur - factor * v
                    if nv:
                        row[c] = nv
                    else:
                        del row[c]
                        by_col[c].discard(i)
        pivots[col] = piv
        pivoted.add(piv)
    return work, pivots


def rank_exact(rows: list[dict], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def kernel_basis_exact(rows: list[dict], ncols: int, one) -> list[dict]:
    """Basis of the solution space of the homogeneous system, one sparse
    vector per free column, in ascending free-column order.

    ``one`` is the multiplicative identity of the coefficient field, used to
    seed the free coordinate.
    """
    reduced, pivots = rref(rows, ncols)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: one}
        for pc, ridx in pivots.items():
            coeff = reduced[ridx].get(f)
            if coeff is not None and coeff:
                vec[pc] = -coeff
        basis.append(vec)
    return basis


def _check_gap(svals, tol: float) -> None:
    for s in svals:
        if tol / _GAP <= s <= tol * _GAP:
            raise RankAmbiguityError(
                f"singular value {s:.6e} is within an order of magnitude of "
                f"tol={tol:.6e}; the rank decision is not trustworthy "
                "(adjust tol or use exact mode)"
            )


def rank_float(mat: np.ndarray, tol: float) -> int:
    if tol is None or tol <= 0:
        raise ValueError("float-mode rank requires a positive tol")
    if mat.size == 0:
        return 0
    svals = np.linalg.svd(mat, compute_uv=False)
    _check_gap(svals, tol)
    return int(np.sum(svals > tol))


def kernel_basis_float(mat: np.ndarray, tol: float) -> list[np.ndarray]:
    """Kernel basis of a dense floating system, echelonized so the output is
    deterministic up to the SVD backend."""
    if tol is None or tol <= 0:
        raise ValueError("float-mode kernel requires a positive tol")
    nrows, ncols = mat.shape
    if nrows == 0:
        vecs = [np.zeros(ncols, dtype=complex) for _ in range(ncols)]
        for i, v in enumerate(vecs):
            v[i] = 1.0
        return vecs
    _, svals, vh = np.linalg.svd(mat)
    _check_gap(svals, tol)
    rank = int(np.sum(svals > tol))
    vecs = [np.conj(vh[i]) for i in range(rank, ncols)]
    return echelonize_float(vecs, tol)


def echelonize_float(vecs, tol: float) -> list[np.ndarray]:
    """Gauss-Jordan a small set of floating vectors into a canonical echelon
    basis of their span (pivot by largest magnitude, pivots scaled to 1)."""
    vecs = [np.array(v, dtype=complex) for v in vecs]
    if not vecs:
        return []
    n = vecs[0].shape[0]
    rowi = 0
    for col in range(n):
        if rowi == len(vecs):
            break
        best = max(range(rowi, len(vecs)), key=lambda i: abs(vecs[i][col]))
        if abs(vecs[best][col]) <= tol:
            continue
        vecs[rowi], vecs[best] = vecs[best], vecs[rowi]
        vecs[rowi] = vecs[rowi] / vecs[rowi][col]
        for i in range(len(vecs)):
            if i != rowi and abs(vecs[i][col]) > 0.0:
                vecs[i] = vecs[i] - vecs[i][col] * vecs[rowi]
        rowi += 1
    return vecs
