"""CSP instances with explicitly listed constraint relations.

Domain values are interned to their position in ``CspInstance.domain``;
relations are stored internally as sets of integer tuples so that joins and
projections hash small ints rather than arbitrary values.  "Lexicographic"
everywhere in the package means lexicographic in that domain order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InvalidArgument, ResourceLimit
from .hypergraph import Hypergraph, name_list

Assignment = dict  # variable -> domain value

BRUTE_FORCE_CAP = 10**7


@dataclass(frozen=True)
class Relation:
    arity: int
    tuples: frozenset

    def __init__(self, arity: int, tuples: Iterable[Sequence[Hashable]] = ()):
        ts = frozenset(tuple(t) for t in tuples)
        if arity < 1:
            raise InvalidArgument("relation arity must be positive")
        for t in ts:
            if len(t) != arity:
                raise InvalidArgument(f"tuple {t} does not have arity {arity}")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "tuples", ts)

    def __len__(self) -> int:
        return len(self.tuples)


@dataclass(frozen=True)
class Constraint:
    scope: tuple
    relation: Relation

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        if len(self.scope) != self.relation.arity:
            raise InvalidArgument(
                f"scope {self.scope} has length {len(self.scope)} but relation arity is {self.relation.arity}"
            )


@dataclass(frozen=True)
class RelationalStructure:
    universe: tuple
    relations: Mapping[str, Relation] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "relations", dict(self.relations))


class CspInstance:
    """A CSP instance ``(variables, domain, constraints)``.

    Every variable has to occur in some constraint scope, every scope variable
    has to be declared, and every tuple value has to lie in the domain.
    """

    def __init__(self, variables: Iterable, domain: Iterable, constraints: Iterable[Constraint]):
        self.variables: tuple = tuple(dict.fromkeys(variables))
        self.domain: tuple = tuple(dict.fromkeys(domain))
        self.constraints: tuple[Constraint, ...] = tuple(constraints)
        self.var_index = {v: i for i, v in enumerate(self.variables)}
        self.value_index = {d: i for i, d in enumerate(self.domain)}

        used: set = set()
        encoded = []
        for c in self.constraints:
            try:
                scope = tuple(self.var_index[v] for v in c.scope)
            except KeyError as exc:
                raise InvalidArgument(f"scope variable {exc.args[0]!r} is not declared") from None
            try:
                rel = frozenset(tuple(self.value_index[d] for d in t) for t in c.relation.tuples)
            except KeyError as exc:
                raise InvalidArgument(f"tuple value {exc.args[0]!r} is not in the domain") from None
            used.update(scope)
            encoded.append((scope, rel))
        missing = [v for i, v in enumerate(self.variables) if i not in used]
        if missing:
            raise InvalidArgument(f"variables in no constraint scope: {missing}")
        # (scope as variable indices, relation as sets of value-index tuples)
        self.encoded: tuple[tuple[tuple[int, ...], frozenset], ...] = tuple(encoded)

    def max_relation_size(self) -> int:
        return max((len(rel) for _, rel in self.encoded), default=0)

    def decode(self, values: Sequence[int], variables: Sequence[int] | None = None) -> Assignment:
        vs = range(len(self.variables)) if variables is None else variables
        return {self.variables[v]: self.domain[d] for v, d in zip(vs, values)}

    def __repr__(self) -> str:
        return (
            f"CspInstance({len(self.variables)} variables, |D|={len(self.domain)}, "
            f"{len(self.constraints)} constraints)"
        )

    def to_json(self) -> dict:
        return {
            "variables": [str(v) for v in self.variables],
            "domain": [str(d) for d in self.domain],
            "constraints": [
                {
                    "scope": [str(v) for v in c.scope],
                    "tuples": [[str(d) for d in t] for t in _sorted_tuples(self, c)],
                }
                for c in self.constraints
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CspInstance":
        try:
            cons = []
            for c in obj["constraints"]:
                scope = name_list(c["scope"], "scope")
                if not isinstance(c["tuples"], list):
                    raise InvalidArgument("tuples must be a JSON list")
                tuples = [name_list(t, "tuple") for t in c["tuples"]]
                cons.append(Constraint(tuple(scope), Relation(len(scope), tuples)))
            return cls(name_list(obj["variables"], "variables"), name_list(obj["domain"], "domain"), cons)
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed instance JSON: {exc}") from None


def _sorted_tuples(i: CspInstance, c: Constraint) -> list:
    return sorted(c.relation.tuples, key=lambda t: tuple(i.value_index[d] for d in t))


def instance_size(i: CspInstance) -> int:
    total = len(i.variables) + len(i.domain)
    for c in i.constraints:
        k = c.relation.arity
        total += k + k * len(c.relation)
    return total


def hypergraph_of(i: CspInstance) -> Hypergraph:
    return Hypergraph([list(dict.fromkeys(c.scope)) for c in i.constraints], i.variables)


def project_relation(r: Relation, indices: Sequence[int]) -> Relation:
    """Projection onto 1-based, strictly increasing positions."""
    idx = list(indices)
    if not idx or any(not 1 <= p <= r.arity for p in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
        raise InvalidArgument(f"projection indices {idx} must be strictly increasing within 1..{r.arity}")
    return Relation(len(idx), (tuple(t[p - 1] for p in idx) for t in r.tuples))


def induced_instance(i: CspInstance, sub: Iterable) -> CspInstance:
    keep = set(sub)
    if not keep:
        raise InvalidArgument("induced instance needs a nonempty variable set")
    unknown = keep - set(i.variables)
    if unknown:
        raise InvalidArgument(f"unknown variables {sorted(map(str, unknown))}")
    cons = []
    for c in i.constraints:
        pos = [p + 1 for p, v in enumerate(c.scope) if v in keep]
        if pos:
            cons.append(Constraint(tuple(c.scope[p - 1] for p in pos), project_relation(c.relation, pos)))
    return CspInstance([v for v in i.variables if v in keep], i.domain, cons)


def is_solution(i: CspInstance, a: Mapping) -> bool:
    missing = [v for v in i.variables if v not in a]
    if missing:
        raise InvalidArgument(f"assignment is not total, missing {missing}")
    for c in i.constraints:
        if tuple(a[v] for v in c.scope) not in c.relation.tuples:
            return False
    return True


def brute_force_solutions(i: CspInstance, cap: int = BRUTE_FORCE_CAP) -> list[Assignment]:
    """Every solution, by trying all ``|D|^|V|`` assignments (lexicographic order)."""
    n, d = len(i.variables), len(i.domain)
    if d**n > cap:
        raise ResourceLimit(f"{d}^{n} assignments exceed the brute-force cap {cap}")
    out = []
    for values in itertools.product(range(d), repeat=n):
        if all(tuple(values[v] for v in scope) in rel for scope, rel in i.encoded):
            out.append(i.decode(values))
    return out


def structures_to_csp(a: RelationalStructure, b: RelationalStructure) -> CspInstance:
    """Instance whose solutions are exactly the homomorphisms from ``a`` to ``b``."""
    if set(a.relations) != set(b.relations):
        raise InvalidArgument("structures have different signatures")
    for name, rel in a.relations.items():
        if rel.arity != b.relations[name].arity:
            raise InvalidArgument(f"relation {name!r} has different arities")
    cons = []
    for name in sorted(a.relations):
        rb = b.relations[name]
        for t in sorted(a.relations[name].tuples, key=lambda t: tuple(map(str, t))):
            cons.append(Constraint(t, rb))
    return CspInstance(a.universe, b.universe, cons)
