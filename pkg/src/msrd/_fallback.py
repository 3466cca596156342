"""Pure numpy implementation of the hot kernels.

Same contract as the compiled ``_kernels`` module: ranks over GF(q) through
dense operation tables, and per-codeword sum-rank weights of every codeword
of an F_q-linear code, in canonical coefficient order (coefficient of the
first basis element varies fastest).
"""

from __future__ import annotations

import numpy as np

CHUNK = 1 << 14


def batch_rank(mats: np.ndarray, add, mul, neg, inv) -> np.ndarray:
    """Ranks of a stack of matrices with shape ``(batch, rows, cols)``."""
    M = np.array(mats, dtype=np.int64, copy=True)
    B, rows, cols = M.shape
    rank = np.zeros(B, dtype=np.int64)
    if rows == 0 or cols == 0:
        return rank
    row_idx = np.arange(rows)
    for c in range(cols):
        cand = (M[:, :, c] != 0) & (row_idx[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = cand[b].argmax(axis=1)
        r = rank[b]
        top = M[b, r].copy()
        M[b, r] = M[b, piv]
        M[b, piv] = top
        scale = inv[M[b, r, c]]
        M[b, r] = mul[scale[:, None], M[b, r]]
        pivot_rows = M[b, r]
        f = M[b, :, c]
        f = np.where(row_idx[None, :] > r[:, None], f, 0)
        M[b] = add[M[b], mul[neg[f][:, :, None], pivot_rows[:, None, :]]]
        rank[b] += 1
    return rank


def rank(mat, add, mul, neg, inv) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return int(batch_rank(mat[None], add, mul, neg, inv)[0])


def codeword_weights(basis, layout, q, add, mul, neg, inv) -> np.ndarray:
    """Sum-rank weight of every codeword ``sum(c_i * basis[i])``.

    ``layout`` rows are ``(offset, rows, cols)`` describing where each block
    sits in the flattened (row-major) codeword.
    """
    basis = np.asarray(basis, dtype=np.int64)
    dim, N = basis.shape if basis.ndim == 2 else (0, 0)
    total = q**dim
    out = np.zeros(total, dtype=np.uint16)
    layout = [tuple(int(x) for x in row) for row in np.asarray(layout).reshape(-1, 3)]
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        words = np.zeros((idx.size, N), dtype=np.int64)
        rest = idx.copy()
        for i in range(dim):
            digit = rest % q
            rest //= q
            words = add[words, mul[digit[:, None], basis[i][None, :]]]
        w = np.zeros(idx.size, dtype=np.int64)
        for off, r, c in layout:
            block = words[:, off : off + r * c].reshape(-1, r, c)
            w += batch_rank(block, add, mul, neg, inv)
        out[start : start + idx.size] = w
    return out
