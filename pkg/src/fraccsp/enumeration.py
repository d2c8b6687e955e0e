"""Solution enumeration by growing prefixes of the variable order.

``L_j`` holds every solution of the instance induced by the first ``j``
variables.  Each step extends every member of ``L_{j-1}`` by every domain
value and keeps the extensions that satisfy the induced instance.  The size
of each ``L_j`` is bounded by ``N ** rho*`` of the whole instance, which is
what makes this simple procedure efficient; no cover is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .csp import Assignment, CspInstance
from .errors import InvalidArgument


@dataclass
class EnumerationRun:
    solutions: list[tuple[int, ...]]  # value indices, in instance variable order
    list_sizes: list[int]
    extension_checks: int


def _resolve_order(i: CspInstance, order) -> list[int]:
    n = len(i.variables)
    if order is None:
        return list(range(n))
    if isinstance(order, str):
        if order == "min-degree":
            return min_degree_order(i)
        raise InvalidArgument(f"unknown order heuristic {order!r}")
    try:
        idx = [i.var_index[v] for v in order]
    except KeyError as exc:
        raise InvalidArgument(f"order mentions unknown variable {exc.args[0]!r}") from None
    if sorted(idx) != list(range(n)):
        raise InvalidArgument("order must be a permutation of the variables")
    return idx


def min_degree_order(i: CspInstance) -> list[int]:
    """Greedy order: repeatedly take the variable sharing scopes with fewest others."""
    n = len(i.variables)
    nbrs = [set() for _ in range(n)]
    for scope, _ in i.encoded:
        for a in scope:
            nbrs[a].update(scope)
    for a in range(n):
        nbrs[a].discard(a)
    left = set(range(n))
    out = []
    while left:
        v = min(left, key=lambda a: (len(nbrs[a] & left), a))
        out.append(v)
        left.remove(v)
    return out


def run(i: CspInstance, order=None) -> EnumerationRun:
    order_idx = _resolve_order(i, order)
    n = len(order_idx)
    step_of = {v: j for j, v in enumerate(order_idx)}

    # For step j, the constraints containing order_idx[j], each with the
    # positions (into the partial tuple) of its scope entries already placed
    # and the projection of its relation onto those scope entries.
    checks_at: list[list[tuple[tuple[int, ...], frozenset]]] = [[] for _ in range(n)]
    for scope, rel in i.encoded:
        steps = sorted({step_of[v] for v in scope})
        for j in steps:
            cols = [p for p, v in enumerate(scope) if step_of[v] <= j]
            at = tuple(step_of[scope[p]] for p in cols)
            proj = frozenset(tuple(t[p] for p in cols) for t in rel)
            checks_at[j].append((at, proj))

    d = len(i.domain)
    current: list[tuple[int, ...]] = [()]
    sizes: list[int] = []
    work = 0
    for j in range(n):
        checks = checks_at[j]
        nxt = []
        for alpha in current:
            for val in range(d):
                work += 1
                cand = alpha + (val,)
                if all(tuple(cand[p] for p in at) in proj for at, proj in checks):
                    nxt.append(cand)
        current = nxt
        sizes.append(len(current))
        if not current:
            sizes.extend([0] * (n - j - 1))
            break

    # back to instance variable order
    inv = [step_of[v] for v in range(n)]
    sols = sorted(tuple(t[inv[v]] for v in range(n)) for t in current)
    return EnumerationRun(sols, sizes, work)


def enumerate_by_cover(i: CspInstance, order: Sequence | str | None = None) -> list[Assignment]:
    """All solutions of ``i``, sorted lexicographically in instance variable order.

    ``order`` is the variable order used for the prefixes; it may also be the
    string ``"min-degree"``.  It never changes the result.
    """
    return [i.decode(t) for t in run(i, order).solutions]


def intermediate_list_sizes(i: CspInstance, order: Sequence | str | None = None) -> list[int]:
    return run(i, order).list_sizes
