"""Tree, generalized hypertree and fractional hypertree decompositions.

Exact widths are computed by a memoised search over elimination orderings of
the primal graph.  Every hyperedge is a clique of the primal graph, so the tree
decompositions of a hypergraph and of its primal graph are the same objects,
and any bag cost that is monotone under inclusion (``|B|-1``, integral cover
number, fractional cover number) can be minimised the same way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import InvalidArgument, ResourceLimit
from .hypergraph import Hypergraph, _induced_by_mask, iter_bits, name_list
from .weights import (
    ZERO,
    FractionalWeighting,
    _extend,
    _restrict,
    _restricted_weight,
    as_fraction,
    cover_value,
    cover_weighting,
    integral_cover_value,
    _integral_cover,
)

EXACT_WIDTH_CAP = 13


class TreeDecomposition:
    """A rooted tree of bags.

    ``parent`` maps every node id to its parent id, or ``None`` for the root.
    Node order (insertion order of ``parent``) is kept and used for output.
    """

    def __init__(self, parent: Mapping[str, str | None], bags: Mapping[str, Iterable[str]]):
        self.parent: dict[str, str | None] = dict(parent)
        self.bags: dict[str, frozenset[str]] = {t: frozenset(b) for t, b in bags.items()}
        if set(self.parent) != set(self.bags):
            raise InvalidArgument("every node needs exactly one bag")
        roots = [t for t, p in self.parent.items() if p is None]
        if len(roots) != 1:
            raise InvalidArgument(f"a decomposition tree needs exactly one root, found {len(roots)}")
        self.root = roots[0]
        self.children: dict[str, list[str]] = {t: [] for t in self.parent}
        for t, p in self.parent.items():
            if p is not None:
                if p not in self.parent:
                    raise InvalidArgument(f"node {t!r} has unknown parent {p!r}")
                self.children[p].append(t)
        if len(self.preorder()) != len(self.parent):
            raise InvalidArgument("parent pointers do not form a tree")

    @property
    def nodes(self) -> list[str]:
        return list(self.parent)

    def preorder(self) -> list[str]:
        out, stack = [], [self.root]
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(reversed(self.children[t]))
        return out

    def subtree(self, t: str) -> list[str]:
        out, stack = [], [t]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children[u])
        return out

    def width(self) -> Fraction:
        return Fraction(max(len(b) for b in self.bags.values()) - 1)

    def to_json(self, h: Hypergraph | None = None, guards=None) -> dict:
        def order(bag):
            return [v for v in h.vertices if v in bag] if h is not None else sorted(bag)

        nodes = []
        for t in self.preorder():
            node = {"id": t, "parent": self.parent[t], "bag": order(self.bags[t])}
            if guards is not None:
                node["guard"] = guards(t)
            nodes.append(node)
        return {"nodes": nodes}


@dataclass
class GeneralizedHypertreeDecomposition:
    base: TreeDecomposition
    guards: dict[str, list[frozenset[str]]]

    def width(self) -> Fraction:
        return Fraction(max(len(g) for g in self.guards.values()))

    def to_json(self, h: Hypergraph) -> dict:
        return self.base.to_json(
            h, lambda t: [{"edge": [v for v in h.vertices if v in e], "weight": "1/1"} for e in self.guards[t]]
        )


@dataclass
class FractionalHypertreeDecomposition:
    base: TreeDecomposition
    guards: dict[str, FractionalWeighting]
    special_condition: bool | None = field(default=None)

    def width(self) -> Fraction:
        return max(g.weight() for g in self.guards.values())

    def to_json(self, h: Hypergraph | None = None) -> dict:
        host = h or next(iter(self.guards.values())).host
        return self.base.to_json(host, lambda t: self.guards[t].to_json())


Decomposition = Union[TreeDecomposition, GeneralizedHypertreeDecomposition, FractionalHypertreeDecomposition]


def decomposition_from_json(h: Hypergraph, obj: dict) -> TreeDecomposition | FractionalHypertreeDecomposition:
    """Parse the node-list format; guards present on every node make it an FHD.

    Output of ``decompose`` or ``width`` (the node list under a
    ``decomposition`` key) is accepted as well.
    """
    if isinstance(obj, dict) and "nodes" not in obj and isinstance(obj.get("decomposition"), dict):
        obj = obj["decomposition"]
    try:
        nodes = obj["nodes"]
        parent = {str(n["id"]): (None if n.get("parent") is None else str(n["parent"])) for n in nodes}
        bags = {str(n["id"]): name_list(n["bag"], "bag") for n in nodes}
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"malformed decomposition JSON: {exc}") from None
    for t, b in bags.items():
        unknown = [v for v in b if v not in h.index]
        if unknown:
            raise InvalidArgument(f"bag of node {t!r} mentions unknown vertices {unknown}")
    td = TreeDecomposition(parent, bags)
    if all("guard" in n for n in nodes) and nodes:
        guards = {str(n["id"]): FractionalWeighting.from_json(h, n["guard"]) for n in nodes}
        return FractionalHypertreeDecomposition(td, guards)
    return td


# -- validation -------------------------------------------------------------


@dataclass
class ValidationReport:
    valid: bool
    width: Fraction
    violations: list[str]
    special_condition: bool | None = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "width": f"{self.width.numerator}/{self.width.denominator}",
            "violations": self.violations,
            "special_condition": self.special_condition,
        }


def _tree_violations(h: Hypergraph, td: TreeDecomposition) -> list[str]:
    out = []
    masks = {}
    for t, bag in td.bags.items():
        unknown = [v for v in bag if v not in h.index]
        if unknown:
            raise InvalidArgument(f"bag of node {t!r} mentions unknown vertices {sorted(unknown)}")
        masks[t] = h.mask(bag)
    for e in h.edge_masks:
        if not any(e & m == e for m in masks.values()):
            out.append(f"edge coverage: edge {h.sorted_names(e)} is in no bag")
    for i, v in enumerate(h.vertices):
        holding = {t for t, m in masks.items() if m >> i & 1}
        if not holding:
            continue  # already reported through an uncovered edge
        # the nodes holding v are connected iff exactly one of them has its parent outside the set
        tops = [t for t in holding if td.parent[t] not in holding]
        if len(tops) != 1:
            out.append(f"connectedness: nodes containing vertex {v!r} do not form a subtree")
    return out


def validate(h: Hypergraph, d: Decomposition) -> ValidationReport:
    if isinstance(d, TreeDecomposition):
        violations = _tree_violations(h, d)
        return ValidationReport(not violations, d.width(), violations)

    td = d.base
    violations = _tree_violations(h, td)
    if set(d.guards) != set(td.parent):
        raise InvalidArgument("every node needs exactly one guard")
    bag_masks = {t: h.mask(b) for t, b in td.bags.items()}

    if isinstance(d, GeneralizedHypertreeDecomposition):
        cover = {}
        for t, edges in d.guards.items():
            m = 0
            for e in edges:
                m |= h.edge_mask(e)
            cover[t] = m
        width = d.width()
    elif isinstance(d, FractionalHypertreeDecomposition):
        cover = {}
        for t, g in d.guards.items():
            if g.host != h:
                raise InvalidArgument(f"guard of node {t!r} lives on a different hypergraph")
            cover[t] = _blocked_on(h, g)
        width = d.width()
    else:
        raise InvalidArgument(f"not a decomposition: {type(d).__name__}")

    for t in td.preorder():
        if bag_masks[t] & ~cover[t]:
            missing = h.sorted_names(bag_masks[t] & ~cover[t])
            violations.append(f"guard: node {t!r} does not cover bag vertices {missing}")

    special = True
    for t in td.preorder():
        below = 0
        for u in td.subtree(t):
            below |= bag_masks[u]
        if cover[t] & below & ~bag_masks[t]:
            special = False
            break
    return ValidationReport(not violations, width, violations, special)


def _blocked_on(h: Hypergraph, g: FractionalWeighting) -> int:
    if g.host is h:
        return g.blocked_mask()
    # equal but distinct host objects: remap edge masks by name
    return h.mask(g.host.names(g.blocked_mask()))


# -- exact widths -----------------------------------------------------------

_MEASURES = {
    "tree": "tree",
    "tw": "tree",
    "generalized": "generalized",
    "ghw": "generalized",
    "fractional": "fractional",
    "fhw": "fractional",
}


def _bag_cost(h: Hypergraph, measure: str):
    if measure == "tree":
        return lambda bag: Fraction(bin(bag).count("1") - 1)
    if measure == "generalized":
        return lambda bag: Fraction(integral_cover_value(h, bag))
    return lambda bag: cover_value(h, bag)


def _elimination_bag(h: Hypergraph, before: int, v: int) -> int:
    """Bag created when eliminating ``v`` after the vertices in ``before``."""
    region = h.reach_mask(v, before)
    nb = 0
    for i in iter_bits(region):
        nb |= h.neighbors_mask(i)
    return (nb & ~before) | (1 << v)


@lru_cache(maxsize=256)
def _exact(h: Hypergraph, measure: str) -> tuple[Fraction, tuple[int, ...]]:
    cost = _bag_cost(h, measure)
    bag_cost: dict[int, Fraction] = {}

    def c(bag: int) -> Fraction:
        val = bag_cost.get(bag)
        if val is None:
            val = bag_cost[bag] = cost(bag)
        return val

    best: dict[int, tuple[Fraction, int]] = {0: (Fraction(-1), -1)}

    # bottom-up over subsets by size; best[S] = width of eliminating S first
    n = len(h.vertices)
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            s = 0
            for i in combo:
                s |= 1 << i
            choice = None
            for v in combo:
                rest = s & ~(1 << v)
                w_rest = best[rest][0]
                if choice is not None and w_rest >= choice[0]:
                    continue
                w = max(w_rest, c(_elimination_bag(h, rest, v)))
                if choice is None or w < choice[0]:
                    choice = (w, v)
            best[s] = choice
    order = []
    s = h.full_mask
    while s:
        v = best[s][1]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return best[h.full_mask][0], tuple(order)


def tree_decomposition_from_order(h: Hypergraph, order: Iterable[int]) -> TreeDecomposition:
    """Tree decomposition induced by an elimination order of vertex indices.

    Bags contained in their parent's bag are merged away.
    """
    order = list(order)
    pos = {v: k for k, v in enumerate(order)}
    bags: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    before = 0
    for v in order:
        bag = _elimination_bag(h, before, v)
        bags[v] = bag
        later = [u for u in iter_bits(bag & ~(1 << v))]
        parent[v] = min(later, key=pos.__getitem__) if later else None
        before |= 1 << v
    root = order[-1]
    for v in order[:-1]:
        if parent[v] is None:
            parent[v] = root  # separate components hang off the last vertex

    # merge nodes whose bag lies inside the parent's bag
    for v in order[:-1]:
        p = parent[v]
        if bags[v] & ~bags[p] == 0:
            for u in parent:
                if parent[u] == v:
                    parent[u] = p
            del parent[v]
            del bags[v]
    # and a root swallowed by a single child
    while True:
        kids = [u for u, p in parent.items() if p == root]
        if len(kids) == 1 and bags[root] & ~bags[kids[0]] == 0:
            k = kids[0]
            del parent[root]
            del bags[root]
            parent[k] = None
            root = k
        else:
            break

    names = {v: f"t{k}" for k, v in enumerate(sorted(bags, key=lambda v: -pos[v]))}
    td_parent = {names[v]: (None if parent[v] is None else names[parent[v]]) for v in sorted(bags, key=lambda v: -pos[v])}
    td_bags = {names[v]: h.names(bags[v]) for v in bags}
    return TreeDecomposition(td_parent, td_bags)


def exact_width(h: Hypergraph, measure: str = "fractional", cap: int = EXACT_WIDTH_CAP):
    """Exact tree width, generalized hypertree width or fractional hypertree width.

    Returns ``(value, witness)`` where the witness is a decomposition of the
    matching kind achieving the value.
    """
    try:
        m = _MEASURES[measure]
    except KeyError:
        raise InvalidArgument(f"unknown width measure {measure!r}") from None
    if len(h.vertices) > cap:
        raise ResourceLimit(f"exact width search is capped at {cap} vertices, got {len(h.vertices)}")
    value, order = _exact(h, m)
    td = tree_decomposition_from_order(h, order)
    if m == "tree":
        return td.width(), td
    if m == "generalized":
        guards = {t: [h.names(e) for e in _integral_cover(h, h.mask(b))[1]] for t, b in td.bags.items()}
        return value, GeneralizedHypertreeDecomposition(td, guards)
    guards = {t: cover_weighting(h, h.mask(b)) for t, b in td.bags.items()}
    return value, FractionalHypertreeDecomposition(td, guards)


# -- balanced separators and the separator construction ----------------------


def _is_balanced(h: Hypergraph, gamma: Mapping[int, Fraction], half: Fraction, removed: int) -> bool:
    return all(_restricted_weight(gamma, comp) <= half for comp in h.component_masks(removed))


def _separator(h: Hypergraph, gamma: Mapping[int, Fraction], r: Fraction) -> FractionalWeighting | None:
    half = sum(gamma.values(), ZERO) / 2
    if _is_balanced(h, gamma, half, 0):
        return FractionalWeighting(h)
    n = len(h.vertices)
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            s = 0
            for i in combo:
                s |= 1 << i
            if cover_value(h, s) > r:
                continue
            sigma = cover_weighting(h, s)
            if _is_balanced(h, gamma, half, sigma.blocked_mask()):
                return sigma
    return None


def balanced_separator(h: Hypergraph, gamma: FractionalWeighting, r) -> FractionalWeighting | None:
    """A weighting of weight at most ``r`` whose blocked set splits ``h`` so that
    every remaining component meets at most half of ``gamma``'s weight.

    Candidate blocked sets are searched by increasing size, so the search is
    complete: ``None`` means no such weighting exists.
    """
    r = as_fraction(r)
    if r < 0:
        raise InvalidArgument("budget must be nonnegative")
    if gamma.host != h:
        raise InvalidArgument("gamma lives on a different hypergraph")
    w = gamma._w if gamma.host is h else FractionalWeighting(h, gamma.weights)._w
    return _separator(h, w, r)


class _Node:
    __slots__ = ("bag", "guard", "children")

    def __init__(self, bag: frozenset, guard: FractionalWeighting, children: list):
        self.bag, self.guard, self.children = bag, guard, children


def _lex_key(m: int) -> tuple[int, ...]:
    return tuple(iter_bits(m))


def _claim(h: Hypergraph, gamma: dict[int, Fraction], r: Fraction) -> _Node | None:
    sigma = _separator(h, gamma, r)
    if sigma is None:
        return None
    chi_w = dict(sigma._w)
    for m, v in gamma.items():
        chi_w[m] = chi_w.get(m, ZERO) + v
    chi = FractionalWeighting._from_masks(h, chi_w)
    b_chi = chi.blocked_mask()
    node = _Node(h.names(b_chi), chi, [])
    if b_chi == h.full_mask:
        return node

    b_sigma = sigma.blocked_mask()
    sigma_comps = h.component_masks(b_sigma)
    measure = bin(h.full_mask & ~_blocked_mask(h, gamma)).count("1")
    for comp in h.component_masks(b_chi):
        e_i = min((e for e in h.edge_masks if e & comp), key=_lex_key)
        s_i = next(s for s in sigma_comps if comp & s == comp)
        chi_i: dict[int, Fraction] = {}
        for e in h.edge_masks:
            if e == e_i:
                val = Fraction(1)
            elif e & s_i:
                val = sigma._w.get(e, ZERO) + gamma.get(e, ZERO)
            else:
                val = sigma._w.get(e, ZERO)
            if val:
                chi_i[e] = val
        v_i = comp | FractionalWeighting._from_masks(h, chi_i).blocked_mask()
        h_i = _induced_by_mask(h, v_i)
        gamma_i = _restrict(h, chi_i, h_i, v_i)
        sub_measure = bin(h_i.full_mask & ~gamma_i.blocked_mask()).count("1")
        if sub_measure >= measure:
            raise AssertionError(
                f"separator recursion did not shrink the unblocked part ({sub_measure} >= {measure})"
            )
        child = _claim(h_i, gamma_i._w, r)
        if child is None:
            return None
        node.children.append(_lift(child, h, v_i))
    return node


def _lift(node: _Node, host: Hypergraph, sub_mask: int) -> _Node:
    return _Node(
        node.bag,
        _extend(node.guard, host, sub_mask),
        [_lift(c, host, sub_mask) for c in node.children],
    )


def _blocked_mask(h: Hypergraph, w: Mapping[int, Fraction]) -> int:
    return FractionalWeighting._from_masks(h, w).blocked_mask()


def decompose_by_separators(h: Hypergraph, r) -> FractionalHypertreeDecomposition | None:
    """Fractional hypertree decomposition built from balanced separators of weight ``r``.

    When the general wins the robber-and-army game with budget ``r`` this
    always succeeds, with width at most ``3r + 2``; otherwise it may return
    ``None``.
    """
    r = as_fraction(r)
    if r < 0:
        raise InvalidArgument("budget must be nonnegative")
    root = _claim(h, {}, r)
    if root is None:
        return None
    parent: dict[str, str | None] = {}
    bags: dict[str, frozenset] = {}
    guards: dict[str, FractionalWeighting] = {}
    counter = itertools.count()
    stack: list[tuple[_Node, str | None]] = [(root, None)]
    while stack:
        node, par = stack.pop()
        t = f"n{next(counter)}"
        parent[t], bags[t], guards[t] = par, node.bag, node.guard
        stack.extend((c, t) for c in reversed(node.children))
    fhd = FractionalHypertreeDecomposition(TreeDecomposition(parent, bags), guards)
    fhd.special_condition = validate(h, fhd).special_condition
    return fhd
