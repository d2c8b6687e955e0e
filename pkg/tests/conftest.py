import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fraccsp import Hypergraph, generate_hn, generate_matching, generate_universal  # noqa: E402


@pytest.fixture
def triangle():
    return Hypergraph([["a", "b"], ["b", "c"], ["a", "c"]])


@pytest.fixture
def path3():
    return Hypergraph([["a", "b"], ["b", "c"]])


@pytest.fixture
def h2():
    return generate_hn(2)


def corpus():
    """Named hypergraphs shared by several modules."""
    out = {
        "H_2": generate_hn(2),
        "triangle": Hypergraph([["a", "b"], ["b", "c"], ["a", "c"]]),
        "cycle_4": Hypergraph([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]]),
        "clique_4": Hypergraph([[u, v] for u in "abcd" for v in "abcd" if u < v]),
        "fano_like": Hypergraph([["a", "b", "c"], ["c", "d", "e"], ["e", "f", "a"], ["b", "d", "f"]]),
    }
    for k in range(1, 4):
        out[f"matching_{k}"] = generate_matching(k)
    for n in range(1, 5):
        out[f"universal_{n}"] = generate_universal(n)
    for k in range(1, 5):
        out[f"path_{k}"] = Hypergraph([[f"p{j}", f"p{j + 1}"] for j in range(k)])
    return out
