"""Dense two-phase simplex over ``fractions.Fraction``.

Bland's rule is used for both entering and leaving variables, so the method
terminates and, for a fixed input, always returns the same optimal vertex.
Only what the covering and packing programs need is supported: maximise
``c @ x`` subject to rows ``a @ x (<=|>=|==) b`` and ``x >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

LE, GE, EQ = "<=", ">=", "=="


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    prow = tab[row]
    p = prow[col]
    if p != 1:
        prow[:] = [a / p for a in prow]
    for r, other in enumerate(tab):
        if r == row:
            continue
        f = other[col]
        if f:
            other[:] = [a - f * b if b else a for a, b in zip(other, prow)]
    basis[row] = col


def _run(tab: list[list[Fraction]], basis: list[int], ncols: int, allowed: int) -> None:
    """Optimise the last row of ``tab`` (stored as reduced costs, minimising)."""
    m = len(basis)
    obj = tab[m]
    while True:
        enter = -1
        for j in range(allowed):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return
        best = None
        leave = -1
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave < 0:
            raise Unbounded()
        _pivot(tab, basis, leave, enter)


def maximize(
    c: Sequence,
    rows: Sequence[Sequence],
    senses: Sequence[str],
    b: Sequence,
) -> LPSolution:
    """Solve ``max c.x  s.t.  rows[i].x senses[i] b[i],  x >= 0`` exactly.

    Raises :class:`Infeasible` or :class:`Unbounded`.
    """
    n = len(c)
    m = len(rows)
    rows = [[Fraction(a) for a in r] for r in rows]
    b = [Fraction(v) for v in b]
    senses = list(senses)
    # normalise to b >= 0
    for i in range(m):
        if b[i] < 0:
            rows[i] = [-a for a in rows[i]]
            b[i] = -b[i]
            senses[i] = {LE: GE, GE: LE, EQ: EQ}[senses[i]]

    n_slack = sum(1 for s in senses if s != EQ)
    n_art = sum(1 for s in senses if s != LE)
    ncols = n + n_slack + n_art
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    zero = Fraction(0)
    si, ai = n, n + n_slack
    art_cols = []
    for i in range(m):
        row = rows[i] + [zero] * (n_slack + n_art) + [b[i]]
        if senses[i] == LE:
            row[si] = Fraction(1)
            basis.append(si)
            si += 1
        else:
            if senses[i] == GE:
                row[si] = Fraction(-1)
                si += 1
            row[ai] = Fraction(1)
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        tab.append(row)

    if art_cols:
        # phase one: minimise the sum of artificials
        obj = [zero] * (ncols + 1)
        for j in art_cols:
            obj[j] = Fraction(1)
        for r in range(m):
            if basis[r] in art_cols:
                obj = [o - a for o, a in zip(obj, tab[r])]
        tab.append(obj)
        _run(tab, basis, ncols, ncols)
        if tab[m][ncols] != 0:
            raise Infeasible()
        tab.pop()
        # drive remaining (zero-level) artificials out of the basis
        for r in range(m):
            if basis[r] >= n + n_slack:
                for j in range(n + n_slack):
                    if tab[r][j] != 0:
                        _pivot(tab, basis, r, j)
                        break

    # phase two: minimise -c.x over structural and slack columns only
    obj = [-Fraction(v) for v in c] + [zero] * (n_slack + n_art) + [zero]
    for r in range(m):
        f = obj[basis[r]]
        if f:
            obj = [o - f * a for o, a in zip(obj, tab[r])]
    tab.append(obj)
    _run(tab, basis, ncols, n + n_slack)

    x = [zero] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tab[r][ncols]
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), zero)
    return LPSolution(value, tuple(x))
