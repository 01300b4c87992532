"""Dense tableau simplex over an ordered field (Fractions, or mpf with a tolerance).

Only the shape the cutting-plane loop needs is supported::

    maximize c.x   subject to   A x <= b,  x >= 0,  with b >= 0.

The origin is feasible, so the slack basis starts phase 2 directly.  Pivoting
uses Bland's smallest-index rule.  Rows can be appended to a solved tableau and
re-optimised with dual simplex pivots (again smallest-index), which is how cuts
are absorbed without a cold restart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class LPError(RuntimeError):
    pass


class Unbounded(LPError):
    pass


@dataclass
class LPSolution:
    x: list
    value: object
    duals: list  # one non-negative multiplier per row
    pivots: int


class Tableau:
    """Tableau for ``max c.x, A x <= b, x >= 0``; columns are structurals then slacks."""

    def __init__(self, c: Sequence, A: Sequence[Sequence] = (), b: Sequence = (), eps=0, zero=Fraction(0)):
        self.n = len(c)
        self.eps = eps
        self.zero = zero
        self.one = zero + 1
        self.rows: list[list] = []
        self.rhs: list = []
        self.basis: list[int] = []
        self.num_slacks = 0
        # reduced costs c_j - z_j for every column, and -z
        self.obj: list = [zero + v for v in c]
        self.obj_rhs = zero
        self.pivots = 0
        for row, bi in zip(A, b):
            self.add_row(row, bi)

    # ------------------------------------------------------------------

    def _slack_col(self, i: int) -> int:
        return self.n + i

    def add_row(self, a: Sequence, bi) -> int:
        """Append ``a.x <= bi``, expressed in the current basis. Returns its index."""
        if bi < 0:
            raise LPError("rows need a non-negative right-hand side")
        idx = self.num_slacks
        self.num_slacks += 1
        for r in self.rows:
            r.append(self.zero)
        self.obj.append(self.zero)
        row = [self.zero + v for v in a] + [self.zero] * self.num_slacks
        row[self._slack_col(idx)] = self.one
        rhs = self.zero + bi
        # eliminate the current basic columns from the new row
        for r_i, col in enumerate(self.basis):
            f = row[col]
            if f != 0:
                src = self.rows[r_i]
                for j, v in enumerate(src):
                    if v != 0:
                        row[j] -= f * v
                rhs -= f * self.rhs[r_i]
        self.rows.append(row)
        self.rhs.append(rhs)
        self.basis.append(self._slack_col(idx))
        return idx

    def _pivot(self, r: int, col: int):
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            inv = self.one / piv
            for j, v in enumerate(prow):
                if v != 0:
                    prow[j] = v * inv
            self.rhs[r] *= inv
        nz = [(j, v) for j, v in enumerate(prow) if v != 0]
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[col]
            if f != 0:
                for j, v in nz:
                    row[j] -= f * v
                self.rhs[i] -= f * prhs
                if self.eps:
                    row[col] = self.zero
        f = self.obj[col]
        if f != 0:
            for j, v in nz:
                self.obj[j] -= f * v
            self.obj_rhs -= f * prhs
            if self.eps:
                self.obj[col] = self.zero
        self.basis[r] = col
        self.pivots += 1

    def primal(self, max_pivots: int = 100_000):
        eps = self.eps
        for _ in range(max_pivots):
            col = next((j for j, v in enumerate(self.obj) if v > eps), None)
            if col is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > eps:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise Unbounded(f"column {col} is an unbounded direction")
            self._pivot(best[1], col)
        raise LPError("pivot limit reached")

    def dual(self, max_pivots: int = 100_000):
        """Restore primal feasibility while keeping reduced costs non-positive."""
        eps = self.eps
        for _ in range(max_pivots):
            r = None
            for i, v in enumerate(self.rhs):
                if v < -eps and (r is None or self.basis[i] < self.basis[r]):
                    r = i
            if r is None:
                return
            row = self.rows[r]
            best = None
            for j, a in enumerate(row):
                if a < -eps:
                    key = (self.obj[j] / a, j)
                    if best is None or key < best:
                        best = key
            if best is None:
                raise LPError("infeasible after adding a row")
            self._pivot(r, best[1])
        raise LPError("pivot limit reached")

    def solve(self) -> LPSolution:
        self.dual()
        self.primal()
        x = [self.zero] * self.n
        for i, col in enumerate(self.basis):
            if col < self.n:
                x[col] = self.rhs[i]
        duals = [-self.obj[self._slack_col(i)] for i in range(self.num_slacks)]
        return LPSolution(x=x, value=-self.obj_rhs, duals=duals, pivots=self.pivots)


def simplex_max(c: Sequence, A: Sequence[Sequence], b: Sequence, eps=0, zero=Fraction(0)) -> LPSolution:
    """Solve ``max c.x, A x <= b, x >= 0`` (requires ``b >= 0``)."""
    return Tableau(c, A, b, eps=eps, zero=zero).solve()
