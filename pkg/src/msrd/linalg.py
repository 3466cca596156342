"""Dense Gaussian elimination over any field exposing integer-coded ops.

The field object only needs ``zero``/``one`` codes and ``add``, ``sub``,
``mul``, ``inv`` methods on ints.  Used for GF(q^m) generator matrices and
small GF(q) systems; the per-codeword GF(q) ranks go through
:mod:`msrd.kernels` instead.
"""

from __future__ import annotations

from collections.abc import Sequence


def rref(rows: Sequence[Sequence[int]], field, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    R = [list(r) for r in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        s = field.inv(R[r][c])
        R[r] = [field.mul(s, x) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(rows: Sequence[Sequence[int]], field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, field) -> list[list[int]]:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    R, pivots = rref(rows, field, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, pc in zip(R, pivots):
            x[pc] = field.neg(row[f])
        basis.append(x)
    return basis


def inverse(mat: Sequence[Sequence[int]], field) -> list[list[int]]:
    n = len(mat)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(mat)]
    R, pivots = rref(aug, field, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def mat_vec(mat: Sequence[Sequence[int]], vec: Sequence[int], field) -> list[int]:
    out = []
    for row in mat:
        acc = field.zero
        for a, b in zip(row, vec):
            if a and b:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def same_row_space(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], field) -> bool:
    ra, rb = rank(A, field), rank(B, field)
    return ra == rb == rank(list(A) + list(B), field)
