"""The robber-and-army game on a hypergraph.

A general move is any weighting of total weight at most the budget, but only
its blocked set matters, and a move with a larger blocked set is never worse
for the general.  Positions are therefore pairs ``(S, v)`` with ``S`` drawn
from the inclusion-maximal blockable sets (plus the empty starting set), and
the winner is read off a least fixpoint over this finite arena.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidArgument, ResourceLimit
from .hypergraph import Hypergraph, iter_bits
from .weights import as_fraction, cover_value

GAME_CAP = 10


def _check(h: Hypergraph, cap: int) -> None:
    if len(h.vertices) > cap:
        raise ResourceLimit(f"game analysis is capped at {cap} vertices, got {len(h.vertices)}")


@lru_cache(maxsize=64)
def _all_cover_values(h: Hypergraph) -> tuple[Fraction, ...]:
    return tuple(cover_value(h, s) for s in range(h.full_mask + 1))


def _maximal_blockable(h: Hypergraph, r: Fraction) -> list[int]:
    values = _all_cover_values(h)
    ok = [s for s in range(h.full_mask + 1) if values[s] <= r]
    # downward closed family; keep sets with no blockable one-vertex extension
    okset = set(ok)
    out = []
    for s in ok:
        free = h.full_mask & ~s
        if not any((s | 1 << i) in okset for i in iter_bits(free)):
            out.append(s)
    out.sort(key=lambda s: (-bin(s).count("1"), s))
    return out


def blockable_family(h: Hypergraph, r, cap: int = GAME_CAP) -> list[frozenset[str]]:
    r = as_fraction(r)
    if r < 0:
        raise InvalidArgument("budget must be nonnegative")
    _check(h, cap)
    return [h.names(s) for s in _maximal_blockable(h, r)]


@dataclass
class GameSolution:
    host: Hypergraph
    budget: Fraction
    family: list[int]
    winning: dict[tuple[int, int], int]  # (blocked, robber) -> general's winning move
    general_wins: bool

    def winning_move(self, blocked, robber) -> frozenset[str] | None:
        """The general's winning reply from a position, or ``None`` if it is lost."""
        key = (self.host.mask(blocked), self.host.index[robber])
        mv = self.winning.get(key)
        return None if mv is None else self.host.names(mv)


def solve_game(h: Hypergraph, r, cap: int = GAME_CAP) -> GameSolution:
    r = as_fraction(r)
    if r < 0:
        raise InvalidArgument("budget must be nonnegative")
    _check(h, cap)
    family = _maximal_blockable(h, r)
    n = len(h.vertices)

    positions = [(s, v) for s in set(family) | {0} for v in range(n) if not s >> v & 1]
    # robber's escape set for every (old blocked set, new blocked set, vertex)
    escapes: dict[tuple[int, int, int], int] = {}

    def escape(s: int, s2: int, v: int) -> int:
        key = (s & s2, s2, v)
        out = escapes.get(key)
        if out is None:
            reach = h.reach_mask(v, h.full_mask & ~(s & s2))
            out = escapes[key] = reach & ~s2
        return out

    winning: dict[tuple[int, int], int] = {}
    changed = True
    while changed:
        changed = False
        for s, v in positions:
            if (s, v) in winning:
                continue
            for s2 in family:
                if all((s2, u) in winning for u in iter_bits(escape(s, s2, v))):
                    winning[(s, v)] = s2
                    changed = True
                    break
    wins = n > 0 and all((0, v) in winning for v in range(n))
    return GameSolution(h, r, family, winning, wins)


def general_wins(h: Hypergraph, r, cap: int = GAME_CAP) -> bool:
    return solve_game(h, r, cap).general_wins


def army_width(h: Hypergraph, cap: int = GAME_CAP) -> Fraction:
    """Least budget with which the general wins.

    The blockable family, and with it the winner, only changes at budgets
    equal to the fractional cover number of some vertex set, so sweeping those
    candidates in increasing order is exact.
    """
    _check(h, cap)
    candidates = sorted(set(_all_cover_values(h)))
    for r in candidates[:-1]:
        if general_wins(h, r, cap):
            return r
    return candidates[-1]  # rho*(h): blocking everything at once always wins
