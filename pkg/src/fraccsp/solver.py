"""Decomposition-driven solving, enumeration and projection.

Every bag gets the list of all solutions of the instance induced by the bag.
A bottom-up pass keeps only the bag solutions that extend to the whole
subtree below; after that pass every remaining bag solution that agrees with
its parent extends to a full solution, so enumeration never backtracks out of
a dead end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .csp import Assignment, CspInstance, hypergraph_of, induced_instance
from .decomp import (
    FractionalHypertreeDecomposition,
    GeneralizedHypertreeDecomposition,
    TreeDecomposition,
    exact_width,
    validate,
)
from .enumeration import run as enumerate_run
from .errors import InvalidArgument


@dataclass
class _Bag:
    node: str
    vars: tuple[int, ...]  # variable indices, instance order
    solutions: list[tuple[int, ...]]  # lexicographically sorted
    shared: tuple[int, ...] = ()  # positions (into vars) of variables shared with the parent
    new: tuple[int, ...] = ()  # positions of variables not in the parent bag


class _Prepared:
    def __init__(self, i: CspInstance, d):
        td = _tree(d)
        report = validate(hypergraph_of(i), d)
        if not report.valid:
            raise InvalidArgument("not a valid decomposition of the instance: " + "; ".join(report.violations))
        self.instance = i
        self.td = td
        self.order = td.preorder()
        self.bags: dict[str, _Bag] = {}
        for t in self.order:
            vs = tuple(sorted(i.var_index[v] for v in td.bags[t]))
            sols = enumerate_run(induced_instance(i, td.bags[t])).solutions
            self.bags[t] = _Bag(t, vs, sols)
        for t in self.order:
            b = self.bags[t]
            p = td.parent[t]
            pvars = set(self.bags[p].vars) if p is not None else set()
            b.shared = tuple(k for k, v in enumerate(b.vars) if v in pvars)
            b.new = tuple(k for k, v in enumerate(b.vars) if v not in pvars)
        # global variable order: first appearance along the preorder
        self.var_order: list[int] = []
        for t in self.order:
            b = self.bags[t]
            self.var_order.extend(b.vars[k] for k in b.new)

    def prune(self, pinned: dict[int, int] | None = None) -> dict[str, list[tuple[int, ...]]]:
        """Bottom-up pass: bag solutions extendable to their whole subtree."""
        kept: dict[str, list[tuple[int, ...]]] = {}
        for t in reversed(self.order):
            b = self.bags[t]
            sols = b.solutions
            if pinned:
                fixed = [(k, pinned[v]) for k, v in enumerate(b.vars) if v in pinned]
                if fixed:
                    sols = [a for a in sols if all(a[k] == val for k, val in fixed)]
            for c in self.td.children[t]:
                cb = self.bags[c]
                pos_in_child = cb.shared
                keys = {tuple(a[k] for k in pos_in_child) for a in kept[c]}
                pos_in_parent = [b.vars.index(cb.vars[k]) for k in pos_in_child]
                sols = [a for a in sols if tuple(a[k] for k in pos_in_parent) in keys]
                if not sols:
                    break
            kept[t] = sols
        return kept

    def decode(self, values: dict[int, int]) -> Assignment:
        i = self.instance
        return {i.variables[v]: i.domain[values[v]] for v in sorted(values)}


def _tree(d) -> TreeDecomposition:
    if isinstance(d, TreeDecomposition):
        return d
    if isinstance(d, (FractionalHypertreeDecomposition, GeneralizedHypertreeDecomposition)):
        return d.base
    raise InvalidArgument(f"not a decomposition: {type(d).__name__}")


def solve_with_decomposition(i: CspInstance, d) -> Assignment | None:
    prep = _Prepared(i, d)
    kept = prep.prune()
    if not kept[prep.td.root]:
        return None
    values: dict[int, int] = {}
    for t in prep.order:
        b = prep.bags[t]
        want = tuple(values[b.vars[k]] for k in b.shared)
        # kept lists are sorted, so the first compatible one is the least
        alpha = next(a for a in kept[t] if tuple(a[k] for k in b.shared) == want)
        for k, v in enumerate(b.vars):
            values[v] = alpha[k]
    return prep.decode(values)


def solve(i: CspInstance) -> Assignment | None:
    """Satisfiability with an exact minimum-width fractional hypertree decomposition."""
    _, d = exact_width(hypergraph_of(i), "fractional")
    return solve_with_decomposition(i, d)


def variable_order(i: CspInstance, d) -> list:
    """Variables ordered by first appearance in a preorder walk of ``d``."""
    td = _tree(d)
    seen: dict = {}
    for t in td.preorder():
        for v in sorted(td.bags[t], key=i.var_index.__getitem__):
            seen.setdefault(v, None)
    return list(seen)


def enumerate_all(i: CspInstance, d) -> Iterator[Assignment]:
    """Every solution exactly once, lexicographically in :func:`variable_order`.

    The bag lists and the bottom-up pass are computed on the first ``next``;
    after that each step walks the tree once per emitted solution.
    """
    prep = _Prepared(i, d)
    kept = prep.prune()
    if not kept[prep.td.root]:
        return
    index: dict[str, dict[tuple, list[tuple[int, ...]]]] = {}
    for t in prep.order:
        b = prep.bags[t]
        groups: dict[tuple, list[tuple[int, ...]]] = {}
        for a in kept[t]:
            groups.setdefault(tuple(a[k] for k in b.shared), []).append(a)
        for lst in groups.values():
            lst.sort(key=lambda a: tuple(a[k] for k in b.new))
        index[t] = groups

    values: dict[int, int] = {}
    bags = [prep.bags[t] for t in prep.order]

    def walk(k: int) -> Iterator[Assignment]:
        if k == len(bags):
            yield prep.decode(values)
            return
        b = bags[k]
        key = tuple(values[b.vars[p]] for p in b.shared)
        for a in index[b.node].get(key, ()):
            for p in b.new:
                values[b.vars[p]] = a[p]
            yield from walk(k + 1)

    yield from walk(0)


def project_solutions(i: CspInstance, d, out_vars: Iterable) -> Iterator[Assignment]:
    """Distinct restrictions of the solutions to ``out_vars``, lexicographically.

    Head variables are branched on in :func:`variable_order`; a partial head
    is only followed when the pruning pass with those values pinned still
    leaves a root solution, so every branch produces output.
    """
    out = set(out_vars)
    if not out:
        raise InvalidArgument("projection needs at least one output variable")
    unknown = out - set(i.variables)
    if unknown:
        raise InvalidArgument(f"unknown output variables {sorted(map(str, unknown))}")
    prep = _Prepared(i, d)
    root = prep.td.root
    if not prep.prune()[root]:
        return
    head = [v for v in prep.var_order if i.variables[v] in out]
    pinned: dict[int, int] = {}

    def walk(k: int) -> Iterator[Assignment]:
        if k == len(head):
            yield prep.decode(pinned)
            return
        v = head[k]
        for val in range(len(i.domain)):
            pinned[v] = val
            if prep.prune(pinned)[root]:
                yield from walk(k + 1)
        del pinned[v]

    yield from walk(0)
