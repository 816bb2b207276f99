"""Small exact linear algebra helpers: rational elimination and
fraction-free (Bareiss) elimination over the polynomial ring.

Pivoting is always "first nonzero in a fixed ordering" so that repeated
runs produce bit-identical results.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import Poly, exact_div


def solve_many(a_rows: list[list[Fraction]], rhs_cols: list[list[Fraction]]):
    """Solve A x = b for several right-hand sides at once over Q.

    Returns one entry per right-hand side: a particular solution with all
    free variables set to zero, or None if that system is inconsistent.
    """
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    nrhs = len(rhs_cols)
    aug = [
        [Fraction(x) for x in a_rows[i]] + [Fraction(col[i]) for col in rhs_cols]
        for i in range(nrows)
    ]
    pivot_of_col: dict[int, int] = {}
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivot_of_col[col] = row
        row += 1
        if row == nrows:
            break
    solutions = []
    for k in range(nrhs):
        # rows below the last pivot must have zero right-hand side
        if any(aug[r][ncols + k] for r in range(row, nrows)):
            solutions.append(None)
            continue
        x = [Fraction(0)] * ncols
        consistent = True
        for col, r in pivot_of_col.items():
            x[col] = aug[r][ncols + k]
        # re-check: with free variables at zero the pivot rows are exact,
        # but a pivot-free column never received a value, which is fine.
        solutions.append(x if consistent else None)
    return solutions


def rational_kernel_dimension(a_rows: list[list[Fraction]], ncols: int) -> int:
    """Dimension of the null space of A over Q."""
    rows = [[Fraction(x) for x in r] for r in a_rows if any(r)]
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return ncols - rank


def poly_matrix_rank_det(mat: list[list[Poly]], rank_of_ring: int):
    """Fraction-free elimination over Q[alpha]; returns (rank, det).

    det is None for non-square input and the zero polynomial when the
    matrix is square but singular.  Entries are never converted to
    fractions: each elimination step divides exactly by the previous
    pivot (Bareiss), which is guaranteed to be a polynomial.
    """
    work = [list(row) for row in mat]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    square = nrows == ncols
    prev = Poly.const(rank_of_ring, 1)
    sign = 1
    rank = 0
    skipped = False
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((r for r in range(rank, nrows) if work[r][col]), None)
        if pivot is None:
            skipped = True
            continue
        if pivot != rank:
            work[rank], work[pivot] = work[pivot], work[rank]
            sign = -sign
        pivot_entry = work[rank][col]
        for r in range(rank + 1, nrows):
            row_lead = work[r][col]
            for j in range(col + 1, ncols):
                num = pivot_entry * work[r][j] - row_lead * work[rank][j]
                work[r][j] = exact_div(num, prev) if num else Poly.zero(rank_of_ring)
            work[r][col] = Poly.zero(rank_of_ring)
        prev = pivot_entry
        rank += 1
    if not square:
        return rank, None
    if rank < nrows or skipped:
        return rank, Poly.zero(rank_of_ring)
    det = prev * sign
    return rank, det
