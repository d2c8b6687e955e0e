"""Hypergraphs over string-named vertices, with bitset internals.

Vertices are interned to dense indices at construction time; edges are kept
as Python ints used as bitsets over those indices.  The public surface speaks
in vertex names and ``frozenset`` edges, while the hot loops in the
decomposition and game modules work on the masks directly.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InvalidArgument, UnknownVertex


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Hypergraph:
    """A finite hypergraph without isolated vertices.

    Edges are merged when equal as sets; their order is the order of first
    occurrence.  ``vertices`` may be omitted, in which case it is inferred
    from the edges in order of first appearance.
    """

    __slots__ = ("vertices", "edges", "index", "edge_masks", "full_mask", "_adj", "_hash")

    def __init__(self, edges: Iterable[Iterable[str]], vertices: Iterable[str] | None = None):
        edge_lists = [list(e) for e in edges]
        if vertices is None:
            seen: dict[str, None] = {}
            for e in edge_lists:
                for v in e:
                    seen.setdefault(v, None)
            vertices = list(seen)
        else:
            vertices = list(dict.fromkeys(vertices))
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.vertices)}

        masks: list[int] = []
        seen_masks: set[int] = set()
        for e in edge_lists:
            if not e:
                raise InvalidArgument("hyperedges must be nonempty")
            m = 0
            for v in e:
                if v not in self.index:
                    raise UnknownVertex(f"edge mentions unknown vertex {v!r}")
                m |= 1 << self.index[v]
            if m not in seen_masks:
                seen_masks.add(m)
                masks.append(m)
        self.edge_masks: tuple[int, ...] = tuple(masks)
        self.full_mask = (1 << len(self.vertices)) - 1

        covered = 0
        for m in masks:
            covered |= m
        if covered != self.full_mask:
            lonely = [self.vertices[i] for i in iter_bits(self.full_mask & ~covered)]
            raise InvalidArgument(f"isolated vertices not allowed: {lonely}")

        self.edges: tuple[frozenset[str], ...] = tuple(self.names(m) for m in masks)
        adj = [0] * len(self.vertices)
        for m in masks:
            for i in iter_bits(m):
                adj[i] |= m
        self._adj = tuple(a & ~(1 << i) for i, a in enumerate(adj))
        self._hash = hash((self.vertices, self.edge_masks))

    # -- conversions -------------------------------------------------------

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            try:
                m |= 1 << self.index[v]
            except KeyError:
                raise UnknownVertex(f"unknown vertex {v!r}") from None
        return m

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in iter_bits(mask))

    def sorted_names(self, mask: int) -> list[str]:
        """Names in vertex order (not alphabetical)."""
        return [self.vertices[i] for i in iter_bits(mask)]

    def edge_mask(self, edge: Iterable[str]) -> int:
        m = self.mask(edge)
        if m not in self.edge_masks:
            raise InvalidArgument(f"{sorted(edge)} is not an edge of the hypergraph")
        return m

    # -- structure ---------------------------------------------------------

    def neighbors_mask(self, i: int) -> int:
        return self._adj[i]

    def reach_mask(self, start: int, allowed: int) -> int:
        """Vertices reachable from index ``start`` through vertices in ``allowed``.

        ``start`` itself is always included; it need not lie in ``allowed``.
        """
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for i in iter_bits(frontier):
                nxt |= self._adj[i]
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def component_masks(self, removed: int = 0) -> list[int]:
        """Connected components of the hypergraph minus ``removed``, as masks.

        Ordered by smallest vertex index.
        """
        rest = self.full_mask & ~removed
        out = []
        while rest:
            low = rest & -rest
            comp = self.reach_mask(low.bit_length() - 1, rest)
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self) -> bool:
        return len(self.component_masks()) <= 1

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and set(self.edges) == set(other.edges)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        es = ", ".join("{" + ",".join(self.sorted_names(m)) + "}" for m in self.edge_masks)
        return f"Hypergraph([{es}])"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [self.sorted_names(m) for m in self.edge_masks],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Hypergraph":
        if not isinstance(obj, dict) or not isinstance(obj.get("edges"), list):
            raise InvalidArgument("hypergraph JSON needs an 'edges' list")
        vertices = obj.get("vertices")
        return cls([name_list(e, "edge") for e in obj["edges"]],
                   None if vertices is None else name_list(vertices, "vertices"))

    @classmethod
    def from_masks(cls, vertices: Iterable[str], masks: Iterable[int]) -> "Hypergraph":
        vs = list(vertices)
        return cls([[vs[i] for i in iter_bits(m)] for m in masks], vs)


def name_list(obj, what: str) -> list[str]:
    """A JSON list of names as strings; bare strings are not accepted as lists."""
    if not isinstance(obj, list):
        raise InvalidArgument(f"{what} must be a JSON list, got {type(obj).__name__}")
    return [str(v) for v in obj]


def induced_subhypergraph(h: Hypergraph, x: Iterable[str]) -> Hypergraph:
    """The subhypergraph induced by ``x``: every edge is cut down to ``x``."""
    xm = h.mask(x)
    if not xm:
        raise InvalidArgument("induced subhypergraph needs a nonempty vertex set")
    return _induced_by_mask(h, xm)


def _induced_by_mask(h: Hypergraph, xm: int) -> Hypergraph:
    if xm == h.full_mask:
        return h
    verts = [v for i, v in enumerate(h.vertices) if xm >> i & 1]
    cut = [m & xm for m in h.edge_masks if m & xm]
    return Hypergraph([h.sorted_names(m) for m in cut], verts)


def primal_graph(h: Hypergraph) -> Hypergraph:
    edges: list[list[str]] = []
    for i, v in enumerate(h.vertices):
        nb = h.neighbors_mask(i)
        if not nb:
            edges.append([v])
        for j in iter_bits(nb):
            if j > i:
                edges.append([v, h.vertices[j]])
    return Hypergraph(edges, h.vertices)


def components(h: Hypergraph, removed: Iterable[str] = ()) -> list[frozenset[str]]:
    rm = h.mask(removed)
    return [h.names(c) for c in h.component_masks(rm)]


def reachable(h: Hypergraph, blocked: Iterable[str], start: str) -> frozenset[str]:
    if start not in h.index:
        raise UnknownVertex(f"unknown vertex {start!r}")
    bm = h.mask(blocked)
    s = h.index[start]
    if bm >> s & 1:
        return frozenset([start])
    return h.names(h.reach_mask(s, h.full_mask & ~bm))
