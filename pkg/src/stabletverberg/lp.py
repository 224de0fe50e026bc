"""Exact rational simplex method (two phases, Bland's rule).

Problems are given in standard equality form::

    maximize  c.x   subject to  A x = b,  x >= 0

with rational data. No floating point is used anywhere; ties in the ratio
test and the choice of entering column follow Bland's smallest-index rule,
so the method terminates and is deterministic.

When the system ``A x = b, x >= 0`` is infeasible the result carries a
Farkas vector ``y`` with ``y^T A >= 0`` and ``y^T b < 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Number = Fraction | int


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    farkas: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def check_farkas(A: Sequence[Sequence[Number]], b: Sequence[Number], y: Sequence[Number]) -> bool:
    """True iff ``y`` proves that ``A x = b, x >= 0`` has no solution."""
    if len(y) != len(A):
        return False
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        if sum(y[i] * A[i][j] for i in range(len(A))) < 0:
            return False
    return sum(yi * bi for yi, bi in zip(y, b)) < 0


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows  # each row: coefficients..., rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        rows = self.rows
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            prow = [v / piv for v in prow]
            rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction], allowed: int) -> list[Fraction]:
        out = list(cost[:allowed])
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.rows[i]
                for j in range(allowed):
                    if row[j]:
                        out[j] -= cb * row[j]
        return out

    def optimize(self, cost: Sequence[Fraction], allowed: int) -> bool:
        """Run Bland pivots for ``max cost.x`` over columns ``< allowed``.

        Returns False if the objective is unbounded.
        """
        while True:
            rc = self.reduced_costs(cost, allowed)
            enter = next((j for j in range(allowed) if rc[j] > 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def solve(
    c: Sequence[Number],
    A: Sequence[Sequence[Number]],
    b: Sequence[Number],
) -> LPResult:
    """Maximize ``c.x`` subject to ``A x = b``, ``x >= 0`` exactly."""
    m = len(A)
    n = len(c)
    signs = [(-1 if bi < 0 else 1) for bi in b]
    rows: list[list[Fraction]] = []
    for i in range(m):
        if len(A[i]) != n:
            raise ValueError("constraint row length does not match objective")
        s = signs[i]
        row = [Fraction(s * v) for v in A[i]]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        row.append(Fraction(s * b[i]))
        rows.append(row)
    tab = _Tableau(rows, [n + i for i in range(m)])

    # phase one: maximize minus the sum of artificials
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    tab.optimize(phase1, n + m)
    infeasibility = sum(row[-1] for row, bv in zip(tab.rows, tab.basis) if bv >= n)
    if infeasibility > 0:
        rc = tab.reduced_costs(phase1, n + m)
        y = tuple(signs[i] * (-1 - rc[n + i]) for i in range(m))
        return LPResult("infeasible", farkas=y)

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            row = tab.rows[i]
            col = next((j for j in range(n) if row[j]), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    if not tab.optimize(cost, n):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for row, bv in zip(tab.rows, tab.basis):
        x[bv] = row[-1]
    value = sum(ci * xi for ci, xi in zip(cost, x))
    return LPResult("optimal", tuple(x), value)


def feasible_point(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> LPResult:
    """Find ``x >= 0`` with ``A x = b`` or a Farkas certificate."""
    n = len(A[0]) if A else 0
    return solve([0] * n, A, b)
