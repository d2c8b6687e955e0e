"""Acceptance criteria 1-10, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line (shown even under
captured output) before asserting.  Run directly with
``python3 tests/test_acceptance.py`` for the summary alone.
"""

import random
import sys
import time
from fractions import Fraction as F

import pytest

sys.path.insert(0, __import__("os").path.dirname(__file__))

from fraccsp import (  # noqa: E402
    Hypergraph,
    army_width,
    brute_force_solutions,
    decompose_by_separators,
    enumerate_all,
    enumerate_by_cover,
    exact_width,
    fractional_edge_cover,
    fractional_independent_set,
    generate_hn,
    generate_matching,
    generate_random,
    generate_tight,
    generate_universal,
    hypergraph_of,
    project_solutions,
    solve,
    validate,
)
from fraccsp.report import scaling_rows, scaling_spread  # noqa: E402
from conftest import corpus  # noqa: E402
from oracles import antichain_hypergraphs, cover_lp, plain  # noqa: E402

TRIANGLE = Hypergraph([["a", "b"], ["b", "c"], ["a", "c"]])


def key(a):
    return tuple(sorted(a.items()))


def power_le(count: int, n: int, rho: F) -> bool:
    """count <= n ** rho, exactly: count^q <= n^p."""
    return count**rho.denominator <= n**rho.numerator


def random_hypergraph(seed: int) -> Hypergraph:
    rng = random.Random(f"hg-{seed}")
    n = rng.randint(1, 8)
    vs = [f"v{j}" for j in range(n)]
    edges = [rng.sample(vs, rng.randint(1, n)) for _ in range(rng.randint(1, 6))]
    covered = set().union(*map(set, edges))
    edges += [[v] for v in vs if v not in covered]
    return Hypergraph(edges, vs)


def random_instance(seed: int, max_vars: int = 7, max_domain: int = 4):
    rng = random.Random(f"csp-{seed}")
    n = rng.randint(1, max_vars)
    arity = rng.randint(1, 3)
    need = -(-n // arity)
    return generate_random(seed, n, rng.randint(1, max_domain), need + rng.randint(0, 3), arity,
                           rng.choice([0.3, 0.5, 0.7, 0.9]))


# -- the ten checks; each returns (ok, detail) ---------------------------------------


def criterion_1():
    vals = {n: fractional_edge_cover(generate_hn(n))[0] for n in (2, 3)}
    return all(v == 2 for v in vals.values()), f"rho*(H_2)={vals[2]}, rho*(H_3)={vals[3]}"


def criterion_2():
    g = exact_width(generate_hn(2), "generalized")[0]
    return g == 2, f"ghw(H_2)={g}"


def criterion_3():
    hs = [generate_hn(2), TRIANGLE]
    hs += [generate_matching(k) for k in range(1, 6)]
    hs += [generate_universal(n) for n in range(1, 7)]
    hs += [random_hypergraph(s) for s in range(200)]
    bad = []
    for h in hs:
        rho = fractional_edge_cover(h)[0]
        alpha = fractional_independent_set(h)[0]
        if rho != alpha or rho != cover_lp(*plain(h)):
            bad.append((h, rho, alpha))
    return not bad, f"{len(hs)} hypergraphs, {len(bad)} with alpha* != rho*"


def criterion_4():
    bad = []
    for s in range(200):
        i = random_instance(s)
        rho = fractional_edge_cover(hypergraph_of(i))[0]
        n = i.max_relation_size()
        sols = list(enumerate_by_cover(i))
        if not power_le(len(sols), n, rho):
            bad.append((s, "bound"))
        if {key(a) for a in sols} != {key(a) for a in brute_force_solutions(i)} or len(sols) != len(set(map(key, sols))):
            bad.append((s, "oracle"))
    return not bad, f"200 instances, failures {bad[:5]}"


def criterion_5():
    details = []
    ok = True
    for h, n0, want in ((TRIANGLE, 2, 8), (Hypergraph([["a", "b"]]), 3, 3)):
        i = generate_tight(h, n0)
        n = i.max_relation_size()
        rho = fractional_edge_cover(h)[0]
        count = sum(1 for _ in enumerate_by_cover(i))
        exact_power = count**rho.denominator == n**rho.numerator
        ok &= count == want and exact_power and all(len(c.relation) <= n for c in i.constraints)
        details.append(f"N={n} count={count} (want {want})")
    return ok, "; ".join(details)


def criterion_6():
    hs = [Hypergraph([sorted(e) for e in es], vs)
          for n in range(1, 6) for vs, es in antichain_hypergraphs(n, connected_only=True)]
    hs += list(corpus().values())
    bad = []
    for h in hs:
        aw = army_width(h)
        fhw = exact_width(h, "fractional")[0]
        if not aw <= fhw <= 3 * aw + 2:
            bad.append((h, aw, fhw))
    return not bad, f"{len(hs)} hypergraphs, {len(bad)} violations"


def criterion_7():
    bad = []
    for name, h in corpus().items():
        aw = army_width(h)
        d = decompose_by_separators(h, aw)
        rep = validate(h, d) if d is not None else None
        if rep is None or not rep.valid or rep.width > 3 * aw + 2 or not rep.special_condition:
            bad.append(name)
    return not bad, f"{len(corpus())} corpus hypergraphs, failures {bad}"


def criterion_8():
    bad = []
    total = 0
    for n in range(1, 6):
        for vs, es in antichain_hypergraphs(n):
            h = Hypergraph([sorted(e) for e in es], vs)
            total += 1
            if (exact_width(h, "fractional")[0] == 1) != (exact_width(h, "generalized")[0] == 1):
                bad.append(h)
    return not bad, f"{total} hypergraphs, {len(bad)} mismatches"


def criterion_9():
    bad = []
    for s in range(200):
        i = random_instance(10_000 + s)
        oracle = brute_force_solutions(i)
        d = exact_width(hypergraph_of(i), "fractional")[1]
        if (solve(i) is None) != (not oracle):
            bad.append((s, "solve"))
        stream = list(enumerate_all(i, d))
        if len(stream) != len(set(map(key, stream))) or set(map(key, stream)) != set(map(key, oracle)):
            bad.append((s, "enumerate"))
        rng = random.Random(f"head-{s}")
        out = rng.sample(list(i.variables), rng.randint(1, len(i.variables)))
        proj = list(project_solutions(i, d, out))
        want = {tuple(sorted((v, a[v]) for v in out)) for a in oracle}
        if len(proj) != len(set(map(key, proj))) or set(map(key, proj)) != want:
            bad.append((s, "project"))
    return not bad, f"200 instances, failures {bad[:5]}"


def criterion_10():
    t0 = time.perf_counter()
    rows = scaling_rows((2, 3, 4))
    elapsed = time.perf_counter() - t0
    spread = scaling_spread(rows)
    ratios = ", ".join(f"{r['ratio']:.2f}" for r in rows)
    return spread <= 4 and elapsed < 60, f"checks/N^(3/2) = {ratios}; spread {spread:.2f} (<= 4); {elapsed:.1f}s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def report(k: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[k - 1]()
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, line = report(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report(k) for k in range(1, 11)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
