from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from fraccsp import (
    Hypergraph,
    InvalidArgument,
    ResourceLimit,
    army_width,
    blockable_family,
    decompose_by_separators,
    exact_width,
    fractional_edge_cover,
    general_wins,
    generate_hn,
    generate_matching,
)
from fraccsp.game import solve_game
from conftest import corpus
from oracles import cover_lp, general_wins_unreduced, plain
from strategies import hypergraphs


def test_blockable_family_examples(triangle):
    assert blockable_family(triangle, 0) == [frozenset()]
    assert blockable_family(Hypergraph([["a", "b"]]), 1) == [frozenset("ab")]
    fam = blockable_family(triangle, 1)
    assert sorted(map(sorted, fam)) == [["a", "b"], ["a", "c"], ["b", "c"]]
    # oracle: every pair costs exactly 1, the whole triangle 3/2
    vs, es = plain(triangle)
    assert cover_lp(vs, es, {"a", "b"}) == 1 and cover_lp(vs, es) == F(3, 2)


def test_blockable_family_is_maximal_antichain(h2):
    for r in (F(1), F(3, 2), F(2)):
        fam = blockable_family(h2, r)
        vs, es = plain(h2)
        for s in fam:
            assert cover_lp(vs, es, s) <= r
            for v in set(vs) - s:
                assert cover_lp(vs, es, s | {v}) > r
        assert all(not (a < b) for a in fam for b in fam)


def test_general_wins_examples():
    assert general_wins(Hypergraph([["a", "b"]]), 1)
    assert general_wins(generate_matching(2), 1)
    assert not general_wins(generate_matching(2), F(1, 2))


def test_h2_robber_escapes_below_threshold(h2):
    # with budget < 2 the general cannot pin the robber down
    for r in (F(1), F(3, 2)):
        assert not general_wins(h2, r)
        assert not general_wins_unreduced(*plain(h2), r)
    assert general_wins(h2, 2)


def test_army_width_examples(triangle):
    assert army_width(Hypergraph([["a", "b"]])) == 1
    for k in range(1, 5):
        assert army_width(generate_matching(k)) == 1
    aw = army_width(triangle)
    assert 1 < aw <= F(3, 2)
    assert aw == F(3, 2)  # candidate budgets are 1 and 3/2, and the robber survives with 1


def test_caps_and_errors(triangle):
    with pytest.raises(ResourceLimit):
        army_width(generate_hn(3))
    with pytest.raises(InvalidArgument):
        general_wins(triangle, -1)


def test_winning_move_exposed(triangle):
    sol = solve_game(triangle, F(3, 2))
    assert sol.general_wins
    assert sol.winning_move(set(), "a") == frozenset("abc")
    assert solve_game(triangle, 1).winning_move(set(), "a") is None


@settings(max_examples=40, deadline=None)
@given(hypergraphs(max_vertices=5, max_edges=4))
def test_reduction_to_maximal_sets_matches_unreduced_game(h):
    vs, es = plain(h)
    values = sorted({cover_lp(vs, es, s) for s in [set(vs)] + [{v} for v in vs]})
    for r in values:
        assert general_wins(h, r) == general_wins_unreduced(vs, es, r)


@settings(max_examples=40, deadline=None)
@given(hypergraphs(max_vertices=5, max_edges=5))
def test_monotone_and_rho_star_wins(h):
    aw = army_width(h)
    rho = fractional_edge_cover(h)[0]
    assert general_wins(h, rho)
    assert aw <= rho
    assert general_wins(h, aw)
    assert general_wins(h, aw + F(1, 3))
    # and loses just below
    assert not general_wins(h, aw - F(1, 1000))


@pytest.mark.parametrize("name", sorted(corpus()))
def test_sandwich_and_separators_on_corpus(name):
    h = corpus()[name]
    aw = army_width(h)
    fhw = exact_width(h, "fractional")[0]
    assert aw <= fhw <= 3 * aw + 2
    assert decompose_by_separators(h, aw) is not None


@settings(max_examples=150, deadline=None)
@given(hypergraphs(max_vertices=6, max_edges=6))
def test_sandwich_on_six_vertices(h):
    aw = army_width(h)
    fhw = exact_width(h, "fractional")[0]
    assert aw <= fhw <= 3 * aw + 2
