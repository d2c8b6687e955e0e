"""Command line interface.

Every command reads JSON from file arguments (``-`` or no argument means
standard input) and writes JSON to standard output.  Exit status is 0 on
success, 1 for invalid input and 2 when a search cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .csp import CspInstance, hypergraph_of
from .decomp import decompose_by_separators, decomposition_from_json, exact_width, validate
from .errors import FracCspError, InvalidArgument, ResourceLimit
from .game import army_width, solve_game
from .generators import generate_hn, generate_matching, generate_random, generate_tight, generate_universal
from .hypergraph import Hypergraph
from .solver import enumerate_all, project_solutions, solve_with_decomposition
from .weights import as_fraction, fractional_edge_cover, fractional_independent_set


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _read_json(path: str | None):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path or '<stdin>'} is not valid JSON: {exc}") from None


def _hypergraph(path):
    return Hypergraph.from_json(_read_json(path))


def _instance(path):
    return CspInstance.from_json(_read_json(path))


def _budget(text: str) -> Fraction:
    r = as_fraction(text)
    if r < 0:
        raise InvalidArgument("budget must be nonnegative")
    return r


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _decomposition(args, inst: CspInstance):
    h = hypergraph_of(inst)
    if args.decomposition:
        return decomposition_from_json(h, _read_json(args.decomposition))
    return exact_width(h, "fractional")[1]


# -- commands -----------------------------------------------------------------


def cmd_rho_star(args):
    h = _hypergraph(args.hypergraph)
    value, cover = fractional_edge_cover(h)
    _emit({"value": frac(value), "witness": cover.to_json()})


def cmd_alpha_star(args):
    h = _hypergraph(args.hypergraph)
    value, y = fractional_independent_set(h)
    _emit({"value": frac(value), "witness": {v: frac(w) for v, w in y.items()}})


def cmd_width(args):
    h = _hypergraph(args.hypergraph)
    value, d = exact_width(h, args.measure)
    _emit({"measure": args.measure, "value": frac(value), "decomposition": d.to_json(h)})


def cmd_aw(args):
    h = _hypergraph(args.hypergraph)
    _emit({"value": frac(army_width(h))})


def cmd_game(args):
    h = _hypergraph(args.hypergraph)
    sol = solve_game(h, _budget(args.budget))
    _emit({
        "budget": frac(sol.budget),
        "general_wins": sol.general_wins,
        "blockable": [h.sorted_names(s) for s in sol.family],
    })


def cmd_decompose(args):
    h = _hypergraph(args.hypergraph)
    r = _budget(args.budget)
    d = decompose_by_separators(h, r)
    if d is None:
        _emit({"success": False, "budget": frac(r),
               "reason": "no balanced separator of this weight at some step"})
        return
    _emit({"success": True, "budget": frac(r), "width": frac(d.width()),
           "bound": frac(3 * r + 2), "decomposition": d.to_json(h)})


def cmd_validate(args):
    h = _hypergraph(args.hypergraph)
    d = decomposition_from_json(h, _read_json(args.decomposition_file))
    _emit(validate(h, d).to_json())


def cmd_solve(args):
    inst = _instance(args.instance)
    sol = solve_with_decomposition(inst, _decomposition(args, inst))
    _emit({"satisfiable": sol is not None, "solution": sol})


def cmd_enumerate(args):
    inst = _instance(args.instance)
    for k, sol in enumerate(enumerate_all(inst, _decomposition(args, inst))):
        if args.limit is not None and k >= args.limit:
            break
        _emit(sol)
        sys.stdout.flush()


def cmd_count(args):
    inst = _instance(args.instance)
    _emit({"count": sum(1 for _ in enumerate_all(inst, _decomposition(args, inst)))})


def cmd_project(args):
    inst = _instance(args.instance)
    out = [v for v in args.vars.split(",") if v]
    for sol in project_solutions(inst, _decomposition(args, inst), out):
        _emit(sol)
        sys.stdout.flush()


def cmd_generate(args):
    kind = args.kind
    if kind == "tight":
        if not args.params:
            raise InvalidArgument("generate tight needs a hypergraph file")
        _emit(generate_tight(_hypergraph(args.params[0]), args.n0).to_json())
        return
    if kind == "random":
        inst = generate_random(args.seed, args.num_vars, args.domain_size, args.num_constraints,
                               args.max_arity, args.density)
        _emit(inst.to_json())
        return
    if len(args.params) != 1:
        raise InvalidArgument(f"generate {kind} takes one integer parameter")
    try:
        n = int(args.params[0])
    except ValueError:
        raise InvalidArgument(f"not an integer: {args.params[0]!r}") from None
    gen = {"hn": generate_hn, "matching": generate_matching, "universal": generate_universal}[kind]
    _emit(gen(n).to_json())


def cmd_report(args):
    from .report import write_report

    files = write_report(args.out, tuple(args.n0))
    _emit(files)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fraccsp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def hg_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("hypergraph", nargs="?", help="hypergraph JSON file (default: stdin)")
        sp.set_defaults(func=fn)
        return sp

    hg_cmd("rho-star", cmd_rho_star, "fractional edge cover number")
    hg_cmd("alpha-star", cmd_alpha_star, "fractional independent set number")
    sp = hg_cmd("width", cmd_width, "exact width with a witness decomposition")
    sp.add_argument("--measure", choices=["tree", "ghw", "fhw"], default="fhw")
    hg_cmd("aw", cmd_aw, "army width")
    sp = hg_cmd("game", cmd_game, "winner of the robber-and-army game")
    sp.add_argument("--budget", required=True, help="rational budget, e.g. 3/2")
    sp = hg_cmd("decompose", cmd_decompose, "separator-based fractional hypertree decomposition")
    sp.add_argument("--budget", required=True, help="rational budget, e.g. 3/2")

    sp = sub.add_parser("validate", help="check a decomposition")
    sp.add_argument("hypergraph")
    sp.add_argument("decomposition_file", metavar="decomposition")
    sp.set_defaults(func=cmd_validate)

    for name, fn, help_ in (
        ("solve", cmd_solve, "find one solution"),
        ("enumerate", cmd_enumerate, "stream all solutions, one JSON object per line"),
        ("count", cmd_count, "number of solutions"),
        ("project", cmd_project, "distinct projections of the solutions"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("instance", nargs="?", help="instance JSON file (default: stdin)")
        sp.add_argument("--decomposition", help="decomposition JSON; default computes an exact one")
        sp.set_defaults(func=fn)
        if name == "enumerate":
            sp.add_argument("--limit", type=int)
        if name == "project":
            sp.add_argument("--vars", required=True, help="comma separated output variables")

    sp = sub.add_parser("generate", help="emit a generated hypergraph or instance")
    sp.add_argument("kind", choices=["tight", "hn", "matching", "universal", "random"])
    sp.add_argument("params", nargs="*", help="hypergraph file for tight; n or k otherwise")
    sp.add_argument("--n0", type=int, default=2)
    sp.add_argument("--seed", default="0")
    sp.add_argument("--num-vars", type=int, default=5)
    sp.add_argument("--domain-size", type=int, default=3)
    sp.add_argument("--num-constraints", type=int, default=4)
    sp.add_argument("--max-arity", type=int, default=3)
    sp.add_argument("--density", type=float, default=0.5)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("report", help="write scaling and width tables (CSV) with figures (PNG)")
    sp.add_argument("--out", default="report")
    sp.add_argument("--n0", type=int, nargs="+", default=[2, 3, 4])
    sp.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ResourceLimit as exc:
        print(f"fraccsp: resource limit: {exc}", file=sys.stderr)
        return 2
    except FracCspError as exc:
        print(f"fraccsp: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
