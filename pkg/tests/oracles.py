"""Independent reference implementations used only to check the library.

Everything here is deliberately written from scratch on plain Python data
(lists of ints/Fractions, tuples of tuples) so it shares no code path with
the package under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def det_cofactor(rows):
    """Determinant by recursive cofactor expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        a = rows[0][j]
        if a == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def int_matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def apply_symmetry(grid, row_signs, col_signs, row_perm, col_perm, transpose_flag):
    """Hand-rolled action on a tuple-of-tuples grid, mirroring none of the
    package code: optional transpose, then permute, then negate."""
    n = len(grid)
    g = tuple(tuple(grid[j][i] for j in range(n)) for i in range(n)) if transpose_flag else grid
    return tuple(
        tuple(row_signs[i] * col_signs[j] * g[row_perm[i]][col_perm[j]] for j in range(n))
        for i in range(n)
    )


def full_symmetry_group(n):
    """Every (row_signs, col_signs, row_perm, col_perm, transpose) tuple."""
    signs = list(itertools.product((1, -1), repeat=n))
    perms = list(itertools.permutations(range(n)))
    return [
        (rs, cs, rp, cp, t)
        for rs in signs
        for cs in signs
        for rp in perms
        for cp in perms
        for t in (False, True)
    ]


def brute_force_orbit(grid, group):
    return {apply_symmetry(grid, *g) for g in group}


def rational_matrix_to_grid(M):
    return tuple(tuple(M[i, j] for j in range(M.cols)) for i in range(M.rows))


def grid_scale(grid, c):
    return tuple(tuple(c * e for e in row) for row in grid)


def frac_grid(rows):
    return tuple(tuple(Fraction(e) for e in row) for row in rows)
