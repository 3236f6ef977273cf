"""Exact linear algebra helpers: rational ranks, solving, symbolic Bareiss."""

from __future__ import annotations

import math
from fractions import Fraction

from . import kernels
from .errors import Intractable
from .ratexpr import Poly, try_divide

__all__ = ["rank_exact", "solve_exact", "SymbolicElimination", "symbolic_bareiss"]


def _int_rows(rows):
    """Scale each row by the lcm of denominators; exact integer matrix."""
    out = []
    for row in rows:
        lcm = 1
        for v in row:
            if isinstance(v, Fraction):
                d = v.denominator
                lcm = lcm * d // math.gcd(lcm, d)
        if lcm == 1:
            out.append([int(v) for v in row])
        else:
            out.append([int(v * lcm) for v in row])
    return out


def rank_exact(rows) -> int:
    """Exact rank of a matrix of rationals."""
    if not rows or not rows[0]:
        return 0
    return kernels.bareiss_rank(_int_rows(rows))


def solve_exact(columns, target):
    """Solve sum_k c_k * columns[k] = target exactly over the rationals.

    columns: list of vectors (the candidate basis), target: vector.
    Returns {k: coefficient} with zero entries omitted, or None when the
    target is outside the span.
    """
    ncols = len(columns)
    nrows = len(target)
    aug = [[Fraction(columns[k][i]) for k in range(ncols)] + [Fraction(target[i])]
           for i in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for i in range(nrows):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    for i in range(row, nrows):
        if aug[i][ncols]:
            return None
    sol = {}
    for rr, col in enumerate(pivots):
        v = aug[rr][ncols]
        if v:
            sol[col] = v
    return sol


class SymbolicElimination:
    """Result of fraction-free elimination on a polynomial matrix."""

    def __init__(self, rank, pivots, last_pivot):
        self.rank = rank
        self.pivots = pivots
        self.last_pivot = last_pivot


def symbolic_bareiss(mat, term_guard: int = 200000) -> SymbolicElimination:
    """Fraction-free elimination with full pivoting on a matrix of Polys.

    Pivot choice: lowest total degree, then fewest terms.  Every intermediate
    entry is a minor of the original matrix and the step division is exact.
    Raises Intractable when any entry exceeds term_guard terms.
    """
    m = [list(row) for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    prev = Poly.one()
    pivots = []
    k = 0
    while k < min(nr, nc):
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                e = m[i][j]
                if e.is_zero:
                    continue
                key = (e.total_degree, len(e))
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != k:
            m[k], m[bi] = m[bi], m[k]
        if bj != k:
            for row in m:
                row[k], row[bj] = row[bj], row[k]
        piv = m[k][k]
        pivots.append(piv)
        for i in range(k + 1, nr):
            fik = m[i][k]
            for j in range(k + 1, nc):
                num = piv * m[i][j] - fik * m[k][j] if not fik.is_zero else piv * m[i][j]
                if prev.is_constant:
                    cv = prev.constant_value()
                    e = num if cv == 1 else num * (1 / cv)
                else:
                    e = try_divide(num, prev)
                    if e is None:
                        raise ArithmeticError("Bareiss division was not exact")
                if len(e) > term_guard:
                    raise Intractable(
                        f"intermediate entry grew past {term_guard} terms"
                    )
                m[i][j] = e
            m[i][k] = Poly.zero()
        prev = piv
        k += 1
    return SymbolicElimination(k, pivots, pivots[-1] if pivots else Poly.zero())
