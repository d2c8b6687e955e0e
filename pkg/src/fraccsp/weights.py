"""Fractional edge covers, fractional independent sets and edge weightings.

All arithmetic is exact (``Fraction``).  The covering program and the packing
program are solved as two separate linear programs, so that their agreement
is a genuine check of the solver rather than a tautology.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import simplex
from .errors import InvalidArgument
from .hypergraph import Hypergraph, _induced_by_mask, iter_bits

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InvalidArgument("weights must be exact rationals, not floats")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not a rational number: {x!r}") from exc


class FractionalWeighting:
    """A map from the edges of ``host`` to nonnegative rationals.

    Edges absent from the map carry weight zero; zero entries are dropped.
    """

    __slots__ = ("host", "_w")

    def __init__(self, host: Hypergraph, weights: Mapping | None = None):
        self.host = host
        self._w: dict[int, Fraction] = {}
        for edge, val in (weights or {}).items():
            m = host.edge_mask(edge)
            val = as_fraction(val)
            if val < 0:
                raise InvalidArgument("edge weights must be nonnegative")
            if val:
                self._w[m] = self._w.get(m, ZERO) + val

    @classmethod
    def _from_masks(cls, host: Hypergraph, w: Mapping[int, Fraction]) -> "FractionalWeighting":
        obj = cls.__new__(cls)
        obj.host = host
        obj._w = {m: v for m, v in w.items() if v}
        return obj

    @property
    def weights(self) -> dict[frozenset[str], Fraction]:
        return {self.host.names(m): v for m, v in self._sorted_items()}

    def _sorted_items(self):
        order = {m: i for i, m in enumerate(self.host.edge_masks)}
        return sorted(self._w.items(), key=lambda kv: order[kv[0]])

    def __getitem__(self, edge: Iterable[str]) -> Fraction:
        return self._w.get(self.host.edge_mask(edge), ZERO)

    def weight(self) -> Fraction:
        return sum(self._w.values(), ZERO)

    def blocked_mask(self) -> int:
        return _blocked(self.host, self._w)

    def __add__(self, other: "FractionalWeighting") -> "FractionalWeighting":
        if other.host is not self.host and other.host != self.host:
            raise InvalidArgument("cannot add weightings on different hypergraphs")
        w = dict(self._w)
        for m, v in other._w.items():
            w[m] = w.get(m, ZERO) + v
        return FractionalWeighting._from_masks(self.host, w)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FractionalWeighting):
            return NotImplemented
        return self.host == other.host and self.weights == other.weights

    def __repr__(self) -> str:
        parts = [
            "{" + ",".join(self.host.sorted_names(m)) + f"}}:{v}" for m, v in self._sorted_items()
        ]
        return "FractionalWeighting(" + ", ".join(parts) + ")"

    def to_json(self) -> list[dict]:
        return [
            {"edge": self.host.sorted_names(m), "weight": f"{v.numerator}/{v.denominator}"}
            for m, v in self._sorted_items()
        ]

    @classmethod
    def from_json(cls, host: Hypergraph, items: list[dict]) -> "FractionalWeighting":
        if not isinstance(items, list):
            raise InvalidArgument("a weighting is a list of {edge, weight} objects")
        w: dict[frozenset, Fraction] = {}
        for item in items:
            if not isinstance(item, dict) or not isinstance(item.get("edge"), list) or "weight" not in item:
                raise InvalidArgument(f"malformed weighting entry: {item!r}")
            e = frozenset(str(v) for v in item["edge"])
            w[e] = w.get(e, ZERO) + as_fraction(item["weight"])
        return cls(host, w)


def _blocked(h: Hypergraph, w: Mapping[int, Fraction]) -> int:
    load = [ZERO] * len(h.vertices)
    for m, v in w.items():
        for i in iter_bits(m):
            load[i] += v
    out = 0
    for i, s in enumerate(load):
        if s >= 1:
            out |= 1 << i
    return out


# -- covering and packing programs ----------------------------------------


def _relevant_projections(h: Hypergraph, target: int) -> list[tuple[int, int]]:
    """(projection onto target, representative edge) pairs, dominated ones dropped."""
    reps: dict[int, int] = {}
    for m in h.edge_masks:
        p = m & target
        if p and p not in reps:
            reps[p] = m
    projs = list(reps)
    keep = [p for p in projs if not any(q != p and p & q == p for q in projs)]
    return [(p, reps[p]) for p in keep]


@lru_cache(maxsize=1 << 16)
def _cover(h: Hypergraph, target: int) -> tuple[Fraction, tuple[tuple[int, Fraction], ...]]:
    cols = _relevant_projections(h, target)
    verts = list(iter_bits(target))
    rows = [[ONE if p >> v & 1 else ZERO for p, _ in cols] for v in verts]
    sol = simplex.maximize(
        [-ONE] * len(cols), rows, [simplex.GE] * len(verts), [ONE] * len(verts)
    )
    witness = tuple((rep, x) for (p, rep), x in zip(cols, sol.x) if x)
    return -sol.value, witness


def cover_value(h: Hypergraph, target: int) -> Fraction:
    """Fractional cover number of the vertex mask ``target`` (0 for the empty mask)."""
    if not target:
        return ZERO
    return _cover(h, target)[0]


def fractional_edge_cover(
    h: Hypergraph, target: Iterable[str] | None = None
) -> tuple[Fraction, FractionalWeighting]:
    """Minimum-weight fractional edge cover of ``target`` (default: all vertices).

    All edges of ``h`` may be used, not only those inside ``target``.
    """
    tm = h.full_mask if target is None else h.mask(target)
    if not tm:
        raise InvalidArgument("target set must be nonempty")
    value, witness = _cover(h, tm)
    return value, FractionalWeighting._from_masks(h, dict(witness))


def cover_weighting(h: Hypergraph, target: int) -> FractionalWeighting:
    if not target:
        return FractionalWeighting(h)
    return FractionalWeighting._from_masks(h, dict(_cover(h, target)[1]))


@lru_cache(maxsize=1024)
def _packing(h: Hypergraph) -> tuple[Fraction, tuple[Fraction, ...]]:
    n = len(h.vertices)
    rows = [[ONE if m >> i & 1 else ZERO for i in range(n)] for m in h.edge_masks]
    sol = simplex.maximize([ONE] * n, rows, [simplex.LE] * len(rows), [ONE] * len(rows))
    return sol.value, sol.x


def fractional_independent_set(h: Hypergraph) -> tuple[Fraction, dict[str, Fraction]]:
    value, y = _packing(h)
    return value, dict(zip(h.vertices, y))


def integral_edge_cover(h: Hypergraph, target: Iterable[str] | None = None) -> tuple[int, list[frozenset[str]]]:
    tm = h.full_mask if target is None else h.mask(target)
    if not tm:
        raise InvalidArgument("target set must be nonempty")
    size, edges = _integral_cover(h, tm)
    return size, [h.names(m) for m in edges]


@lru_cache(maxsize=1 << 16)
def _integral_cover(h: Hypergraph, target: int) -> tuple[int, tuple[int, ...]]:
    cols = _relevant_projections(h, target)
    best: list = [len(cols) + 1, ()]

    def search(uncovered: int, chosen: tuple[int, ...]) -> None:
        if not uncovered:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), chosen
            return
        if len(chosen) + 1 >= best[0]:
            return
        low = uncovered & -uncovered
        # branch on the edges covering the lowest uncovered vertex, largest gain first
        options = sorted(
            ((p, rep) for p, rep in cols if p & low),
            key=lambda pr: -bin(pr[0] & uncovered).count("1"),
        )
        for p, rep in options:
            search(uncovered & ~p, chosen + (rep,))

    search(target, ())
    return best[0], best[1]


def integral_cover_value(h: Hypergraph, target: int) -> int:
    return _integral_cover(h, target)[0] if target else 0


# -- weighting algebra ------------------------------------------------------


def blocked_set(gamma: FractionalWeighting) -> frozenset[str]:
    return gamma.host.names(gamma.blocked_mask())


def restricted_weight(gamma: FractionalWeighting, w: Iterable[str]) -> Fraction:
    wm = gamma.host.mask(w)
    return _restricted_weight(gamma._w, wm)


def _restricted_weight(w: Mapping[int, Fraction], wm: int) -> Fraction:
    return sum((v for m, v in w.items() if m & wm), ZERO)


def _check_induced(host: Hypergraph, sub: Hypergraph) -> int:
    try:
        sm = host.mask(sub.vertices)
    except InvalidArgument:
        raise InvalidArgument("subhypergraph has vertices outside the host") from None
    if not sm or _induced_by_mask(host, sm) != sub:
        raise InvalidArgument("not an induced subhypergraph of the host")
    return sm


def restrict_weighting(gamma: FractionalWeighting, sub: Hypergraph) -> FractionalWeighting:
    host = gamma.host
    sm = _check_induced(host, sub)
    return _restrict(host, gamma._w, sub, sm)


def _restrict(host: Hypergraph, w: Mapping[int, Fraction], sub: Hypergraph, sm: int) -> FractionalWeighting:
    out: dict[int, Fraction] = {}
    for m, v in w.items():
        cut = m & sm
        if cut:
            key = sub.mask(host.names(cut))
            out[key] = out.get(key, ZERO) + v
    return FractionalWeighting._from_masks(sub, out)


def extend_weighting(gamma_sub: FractionalWeighting, host: Hypergraph) -> FractionalWeighting:
    sub = gamma_sub.host
    sm = _check_induced(host, sub)
    return _extend(gamma_sub, host, sm)


def _extend(gamma_sub: FractionalWeighting, host: Hypergraph, sm: int) -> FractionalWeighting:
    sub = gamma_sub.host
    preimages: dict[int, list[int]] = {}
    for m in host.edge_masks:
        cut = m & sm
        if cut:
            preimages.setdefault(cut, []).append(m)
    out: dict[int, Fraction] = {}
    for m, v in gamma_sub._w.items():
        cut = host.mask(sub.names(m))
        pre = preimages[cut]
        share = v / len(pre)
        for e in pre:
            out[e] = out.get(e, ZERO) + share
    return FractionalWeighting._from_masks(host, out)
