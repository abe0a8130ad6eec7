"""GF(2) linear algebra on integer bitsets.

A vector of length n is a Python int with bit i holding coordinate i
(little-endian).  A matrix is a list of such row ints.  This keeps rank,
solve and nullspace loops branch-light and allocation-free.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

__all__ = [
    "parity",
    "rank",
    "in_span",
    "row_reduce",
    "solve",
    "nullspace",
    "invert",
    "matmul",
]


def parity(v: int) -> int:
    return bin(v).count("1") & 1


def row_reduce(rows: List[int]) -> Tuple[List[int], List[int]]:
    """Return (reduced rows, pivot columns); zero rows are dropped."""
    reduced: List[int] = []
    pivots: List[int] = []
    for row in rows:
        for piv, r in zip(pivots, reduced):
            if (row >> piv) & 1:
                row ^= r
        if row:
            piv = (row & -row).bit_length() - 1
            # keep previously reduced rows clean at the new pivot too
            for i, r in enumerate(reduced):
                if (r >> piv) & 1:
                    reduced[i] = r ^ row
            reduced.append(row)
            pivots.append(piv)
    return reduced, pivots


def rank(rows: List[int]) -> int:
    return len(row_reduce(rows)[0])


def in_span(rows: List[int], v: int) -> bool:
    reduced, pivots = row_reduce(rows)
    for piv, r in zip(pivots, reduced):
        if (v >> piv) & 1:
            v ^= r
    return v == 0


def solve(rows: List[int], rhs: List[int], ncols: int) -> Optional[int]:
    """One solution x of row_i . x = rhs_i, or None.

    Free coordinates are set to 0, so the answer is deterministic.
    """
    # Gaussian elimination on the augmented system [A | b].
    aug = [(rows[i] | (rhs[i] << ncols)) for i in range(len(rows))]
    reduced, pivots = row_reduce(aug)
    mask = (1 << ncols) - 1
    x = 0
    for piv, r in zip(pivots, reduced):
        if piv >= ncols:
            return None  # 0 = 1 row
        if (r >> ncols) & 1:
            x |= 1 << piv
    # verify (free vars at 0 make each pivot equation hold by construction,
    # but the cheap check guards against bookkeeping slips)
    for row, b in zip(rows, rhs):
        if parity(row & x) != b:
            return None
    return x


def nullspace(rows: List[int], ncols: int) -> List[int]:
    """Basis of {x : row . x = 0 for every row}, deterministic order."""
    reduced, pivots = row_reduce(rows)
    pivot_set = set(pivots)
    basis: List[int] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for piv, r in zip(pivots, reduced):
            if (r >> free) & 1:
                v |= 1 << piv
        basis.append(v)
    return basis


def invert(rows: List[int], n: int) -> Optional[List[int]]:
    """Inverse of an n x n matrix given as row ints, or None if singular."""
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    # forward elimination with partial pivoting by lowest row
    for col in range(n):
        piv = None
        for r in range(col, n):
            if (aug[r] >> col) & 1:
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and (aug[r] >> col) & 1:
                aug[r] ^= aug[col]
    return [aug[i] >> n for i in range(n)]


def matmul(a: List[int], b: List[int]) -> List[int]:
    """Row-major product: row i of result = (row i of a) . b."""
    out = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc ^= b[j]
            row >>= 1
            j += 1
        out.append(acc)
    return out
