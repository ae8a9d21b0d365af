"""
Exact integer linear algebra for representable multiplicities

Matrices are given as lists of integer columns of a common height.
"""
from itertools import combinations
from math import gcd
from typing import List, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

Column = Sequence[int]


def columns_to_rows(columns: Sequence[Column], height: int) -> List[List[int]]:
    return [[int(column[i]) for column in columns] for i in range(height)]


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """
    Rank over the rationals by fraction-free elimination

    Every division is exact: after k pivots each working entry is a
    (k+1)x(k+1) minor of the input, and the previous pivot is a k x k minor.
    """
    m = [[int(x) for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank, previous = 0, 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][col]
        for r in range(rank + 1, n_rows):
            factor = m[r][col]
            for c in range(col + 1, n_cols):
                m[r][c] = (m[r][c] * lead - factor * m[rank][c]) // previous
            m[r][col] = 0
        previous = lead
        rank += 1
        if rank == n_rows:
            break
    return rank


def smith_invariant_factors(rows: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Diagonal of the Smith normal form (zeros included)"""
    if not rows or not rows[0]:
        return ()
    matrix = DomainMatrix(
        [[ZZ(int(x)) for x in row] for row in rows], (len(rows), len(rows[0])), ZZ
    )
    return tuple(int(factor) for factor in invariant_factors(matrix))


def lattice_multiplicity(columns: Sequence[Column], height: int) -> int:
    """Product of the nonzero invariant factors; 1 for an empty or zero matrix"""
    rows = columns_to_rows(columns, height)
    if not any(x for row in rows for x in row):
        return 1
    product = 1
    for factor in smith_invariant_factors(rows):
        if factor:
            product *= abs(factor)
    return product


def _determinant(square: List[List[int]]) -> int:
    # cofactor expansion along the first row
    size = len(square)
    if size == 1:
        return square[0][0]
    total = 0
    for j, entry in enumerate(square[0]):
        if entry:
            minor = [row[:j] + row[j + 1:] for row in square[1:]]
            total += (-1) ** j * entry * _determinant(minor)
    return total


def minor_gcd_multiplicity(columns: Sequence[Column], height: int) -> Tuple[int, int]:
    """
    Rank and gcd of all rank x rank minors, by brute-force enumeration

    The largest k with a nonzero k x k minor is the rank. Returns (0, 1)
    when every entry is zero or the matrix is empty.
    """
    rows = columns_to_rows(columns, height)
    width = len(columns)
    for k in range(min(height, width), 0, -1):
        g = 0
        for row_idx in combinations(range(height), k):
            for col_idx in combinations(range(width), k):
                g = gcd(g, _determinant([[rows[i][j] for j in col_idx] for i in row_idx]))
        if g:
            return k, g
    return 0, 1
