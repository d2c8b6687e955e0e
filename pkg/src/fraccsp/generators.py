"""Witness hypergraphs and instances, plus a seeded random instance source."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .csp import Constraint, CspInstance, Relation
from .errors import InvalidArgument, ResourceLimit
from .hypergraph import Hypergraph
from .weights import fractional_independent_set

TIGHT_DOMAIN_CAP = 10**6
HN_CAP = 4


def generate_tight(h: Hypergraph, n0: int, cap: int = TIGHT_DOMAIN_CAP) -> CspInstance:
    """Instance on ``h`` whose relations have at most ``N`` tuples and which has
    exactly ``N ** rho*(h)`` solutions.

    With an optimal fractional independent set ``y = p/q`` (common
    denominator ``q``), ``N = n0**q`` and vertex ``v`` may take the values
    ``1 .. n0**p_v``; every edge constraint is the full product of those ranges.
    """
    if not isinstance(n0, int) or n0 < 1:
        raise InvalidArgument("n0 must be a positive integer")
    _, y = fractional_independent_set(h)
    q = math.lcm(*(Fraction(val).denominator for val in y.values()))
    if n0 > 1 and q * math.log(n0) > math.log(cap):
        raise ResourceLimit(f"domain size {n0}^{q} exceeds the cap {cap}")
    size = n0**q
    domain = [str(k) for k in range(1, size + 1)]
    allowed = {v: [str(k) for k in range(1, n0 ** int(y[v] * q) + 1)] for v in h.vertices}
    cons = []
    for e in h.edges:
        scope = tuple(v for v in h.vertices if v in e)
        cons.append(Constraint(scope, Relation(len(scope), itertools.product(*(allowed[v] for v in scope)))))
    return CspInstance(h.vertices, domain, cons)


def hn_vertex(s) -> str:
    return "v{" + ",".join(str(i) for i in sorted(s)) + "}"


def generate_hn(n: int, cap: int = HN_CAP) -> Hypergraph:
    """Vertices are the ``n``-subsets of ``{1..2n}``; edge ``e_i`` holds those containing ``i``."""
    if not isinstance(n, int) or not 1 <= n <= cap:
        raise InvalidArgument(f"n must be an integer in 1..{cap}")
    subsets = list(itertools.combinations(range(1, 2 * n + 1), n))
    verts = [hn_vertex(s) for s in subsets]
    edges = [[hn_vertex(s) for s in subsets if i in s] for i in range(1, 2 * n + 1)]
    return Hypergraph(edges, verts)


def generate_matching(k: int) -> Hypergraph:
    if not isinstance(k, int) or k < 1:
        raise InvalidArgument("k must be a positive integer")
    return Hypergraph([[f"a{j}", f"b{j}"] for j in range(1, k + 1)])


def generate_universal(n: int) -> Hypergraph:
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument("n must be a positive integer")
    return Hypergraph([[f"x{j}" for j in range(1, n + 1)]])


def generate_random(
    seed,
    num_vars: int,
    domain_size: int,
    num_constraints: int,
    max_arity: int,
    tuple_density: float,
) -> CspInstance:
    """Random instance, a pure function of its arguments.

    The first ``ceil(num_vars / max_arity)`` scopes partition a shuffled
    variable list so that every variable is covered; the remaining scopes are
    random sets of 1..max_arity distinct variables.  Each tuple of each
    relation is kept independently with probability ``tuple_density``.
    """
    for name, val in (("num_vars", num_vars), ("domain_size", domain_size),
                      ("num_constraints", num_constraints), ("max_arity", max_arity)):
        if not isinstance(val, int) or val < 1:
            raise InvalidArgument(f"{name} must be a positive integer")
    if not 0 <= tuple_density <= 1:
        raise InvalidArgument("tuple_density must lie in [0, 1]")
    need = -(-num_vars // max_arity)
    if num_constraints < need:
        raise InvalidArgument(f"{num_constraints} constraints cannot cover {num_vars} variables at arity {max_arity}")

    rng = random.Random(f"{seed}")
    variables = [f"x{j}" for j in range(num_vars)]
    domain = [str(d) for d in range(domain_size)]
    shuffled = variables[:]
    rng.shuffle(shuffled)
    scopes = [shuffled[k:k + max_arity] for k in range(0, num_vars, max_arity)]
    while len(scopes) < num_constraints:
        arity = rng.randint(1, min(max_arity, num_vars))
        scopes.append(rng.sample(variables, arity))
    cons = []
    for scope in scopes:
        scope = sorted(scope, key=variables.index)
        tuples = [t for t in itertools.product(domain, repeat=len(scope)) if rng.random() < tuple_density]
        cons.append(Constraint(tuple(scope), Relation(len(scope), tuples)))
    return CspInstance(variables, domain, cons)
