# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: table-driven GF(q) rank and exhaustive codeword weights."""

import numpy as np


cdef int _rank_inplace(int[:, ::1] M, int rows, int cols,
                       const int[:, ::1] add, const int[:, ::1] mul,
                       const int[::1] neg, const int[::1] inv) noexcept nogil:
    cdef int r = 0
    cdef int c, i, j, piv, s, f, tmp
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = tmp
        s = inv[M[r, c]]
        for j in range(c, cols):
            M[r, j] = mul[s, M[r, j]]
        for i in range(r + 1, rows):
            f = M[i, c]
            if f != 0:
                f = neg[f]
                for j in range(c, cols):
                    M[i, j] = add[M[i, j], mul[f, M[r, j]]]
        r += 1
    return r


def rank(mat, add, mul, neg, inv):
    cdef int[:, ::1] M = np.ascontiguousarray(mat, dtype=np.int32).copy()
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return _rank_inplace(M, M.shape[0], M.shape[1],
                         np.ascontiguousarray(add, dtype=np.int32),
                         np.ascontiguousarray(mul, dtype=np.int32),
                         np.ascontiguousarray(neg, dtype=np.int32),
                         np.ascontiguousarray(inv, dtype=np.int32))


def codeword_weights(basis, layout, int q, add, mul, neg, inv):
    """Weights of all ``q**dim`` codewords in canonical coefficient order."""
    cdef const int[:, ::1] A = np.ascontiguousarray(add, dtype=np.int32)
    cdef const int[:, ::1] Mu = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const int[::1] Ng = np.ascontiguousarray(neg, dtype=np.int32)
    cdef const int[::1] Iv = np.ascontiguousarray(inv, dtype=np.int32)
    basis_arr = np.ascontiguousarray(basis, dtype=np.int32)
    if basis_arr.ndim != 2:
        basis_arr = basis_arr.reshape(0, 0)
    cdef int dim = basis_arr.shape[0]
    cdef int N = basis_arr.shape[1]
    cdef const int[:, ::1] Bs = basis_arr
    cdef const int[:, ::1] L = np.ascontiguousarray(np.asarray(layout).reshape(-1, 3), dtype=np.int32)
    cdef int nblocks = L.shape[0]
    cdef Py_ssize_t total = 1
    cdef int i
    for i in range(dim):
        total *= q
    out_arr = np.zeros(total, dtype=np.uint16)
    cdef unsigned short[::1] out = out_arr

    cdef int maxr = 1, maxc = 1
    for i in range(nblocks):
        if L[i, 1] > maxr:
            maxr = L[i, 1]
        if L[i, 2] > maxc:
            maxc = L[i, 2]
    cdef int[:, ::1] scratch = np.zeros((maxr, maxc), dtype=np.int32)
    # partial[i] = sum_{j >= i} c_j * basis[j]; partial[dim] = 0
    cdef int[:, ::1] partial = np.zeros((dim + 1, max(N, 1)), dtype=np.int32)
    cdef int[::1] digit = np.zeros(max(dim, 1), dtype=np.int32)

    cdef Py_ssize_t idx
    cdef int lvl, j, b, off, r, c, rr, cc, w, x
    with nogil:
        for idx in range(total):
            if idx > 0:
                lvl = 0
                while digit[lvl] == q - 1:
                    digit[lvl] = 0
                    lvl += 1
                digit[lvl] += 1
                for j in range(N):
                    x = Mu[digit[lvl], Bs[lvl, j]]
                    partial[lvl, j] = A[partial[lvl + 1, j], x]
                for i in range(lvl - 1, -1, -1):
                    for j in range(N):
                        partial[i, j] = partial[i + 1, j]
            w = 0
            for b in range(nblocks):
                off = L[b, 0]
                r = L[b, 1]
                c = L[b, 2]
                for rr in range(r):
                    for cc in range(c):
                        scratch[rr, cc] = partial[0, off + rr * c + cc]
                w += _rank_inplace(scratch, r, c, A, Mu, Ng, Iv)
            out[idx] = w
    return out_arr
