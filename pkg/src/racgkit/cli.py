"""Command line front end.  Every command prints one JSON document (or CSV/DOT on request)."""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import cayley, cfs, constructions, convexity, domains
from .fixtures import default_registry
from .graph import GraphError, SimplicialGraph, enumerate_squares
from .io import GraphFormatError, graph_to_dict, graph_to_dot, load_graph, square_graph_to_dot
from .metric_lab import (
    INF, MetricGraph, QgViolation, Witness, check_appendix_bounds, closest_point_retraction,
    contraction_test, divergence, fit_loglog, generate_spirals, grid_box, model_space,
    quasigeodesic_check, spiral_constants, three_sides_path, vertical_projection,
)
from .metric_lab.divergence import DivergenceProfile

SCHEMA = 1


class CliError(Exception):
    pass


# --- helpers ----------------------------------------------------------------------


def _jsonable(x: Any) -> Any:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def emit(payload: dict, out=None) -> None:
    doc = {"schema": SCHEMA, **payload}
    (out or sys.stdout).write(json.dumps(_jsonable(doc), indent=2) + "\n")


def _graph(path: str) -> SimplicialGraph:
    reg = default_registry()
    if path.startswith("fixture:"):
        obj = reg.get(path[len("fixture:"):])
        if not isinstance(obj, SimplicialGraph):
            raise CliError(f"{path} is not a graph fixture")
        return obj
    return load_graph(path)


def _labels(g: SimplicialGraph, text: str) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    for v in items:
        if v not in g:
            raise CliError(f"unknown vertex {v!r}")
    return items


def _range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",")]


def _fractions(text: str) -> list[Fraction]:
    return [Fraction(t) for t in text.split(",")]


def parse_function(expr: str) -> Callable[[int], int]:
    """Turn an expression in ``i`` such as ``ceil(i^1.5)`` into an exact integer function."""
    from sympy import Integer, Symbol, ceiling, floor
    from sympy.parsing.sympy_parser import (
        convert_xor, parse_expr, rationalize, standard_transformations,
    )

    i = Symbol("i", integer=True, positive=True)
    try:
        e = parse_expr(
            expr,
            local_dict={"i": i, "ceil": ceiling, "floor": floor},
            transformations=standard_transformations + (convert_xor, rationalize),
        )
    except Exception as exc:  # sympy raises a zoo of types here
        raise CliError(f"cannot parse function {expr!r}: {exc}") from None
    if e.free_symbols - {i}:
        raise CliError(f"function may only use the variable i, got {sorted(map(str, e.free_symbols))}")

    @lru_cache(maxsize=None)
    def f(k: int) -> int:
        v = e.subs(i, Integer(k))
        if not v.is_integer:
            raise CliError(f"f({k}) = {v} is not an integer; wrap the expression in ceil() or floor()")
        return int(v)

    f.__name__ = expr
    return f


def _map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)


# --- commands -----------------------------------------------------------------------


def cmd_classify(a) -> int:
    g = _graph(a.graph)
    weak = cfs.is_cfs(g)
    strong = cfs.is_strongly_cfs(g)
    if a.dot:
        sg, comp = cfs.covering_component(g)
        _write(a.dot, square_graph_to_dot(sg, highlight=comp))
    emit({
        "cfs": weak.holds,
        "strongly_cfs": strong.holds,
        "reason": strong.reason.value if strong.reason else None,
        "square_components": weak.components,
        "detail": weak.to_dict(),
    })
    return 2 if a.assert_ and not strong.holds else 0


def cmd_sqc(a) -> int:
    g = _graph(a.graph)
    delta = _labels(g, a.delta)
    v = convexity.is_strongly_quasiconvex_special(g, delta)
    wit = convexity.orthogonal_dichotomy_witness(g, delta)
    emit({
        "delta": delta,
        "strongly_quasiconvex": v.strongly_quasiconvex,
        "violating_square": str(v.violating_square) if v.violating_square else None,
        "violating_pair": list(v.violating_pair) if v.violating_pair else None,
        "stable": convexity.is_stable_special(g, delta),
        "finite_index": convexity.is_finite_index_special(g, delta),
        "dichotomy_witness": None if wit is None else {"lam": list(wit.lam), "lam_prime": list(wit.lam_prime)},
        "square_closure": list(convexity.square_closure(g, delta)),
    })
    return 2 if a.assert_ and not v else 0


def cmd_domains(a) -> int:
    g = _graph(a.graph)
    out: dict[str, Any] = {}
    if a.lam:
        d1 = domains.Domain.of(g, _labels(g, a.lam))
        out["lam"] = {"vertices": list(d1.lam), "unbounded": domains.is_unbounded(d1),
                      "s_star": domains.in_s_star(d1), "s_star_witness": domains.s_star_witness(d1)}
        if a.other:
            d2 = domains.Domain.of(g, _labels(g, a.other))
            out["other"] = {"vertices": list(d2.lam), "unbounded": domains.is_unbounded(d2)}
            out["relation"] = domains.relation(d1, d2).value
    chain = domains.orthogonality_chain_check(g)
    atoms = domains.atom_graph(g)
    out["chain_check"] = {"status": chain.status.value, "vertex": chain.vertex,
                          "components": len(chain.components)}
    out["atoms"] = len(atoms)
    if a.dot:
        _write(a.dot, atoms.to_dot())
    emit(out)
    return 0


def cmd_embed(a) -> int:
    g = _graph(a.graph)
    omega, emb = constructions.cfs_embed(g)
    if a.out:
        _write(a.out, json.dumps(graph_to_dict(omega), indent=2) + "\n")
    if a.dot:
        _write(a.dot, graph_to_dot(omega, highlight=emb.image))
    image = emb.image
    emit({
        "vertex_map": emb.vertex_map,
        "ladder_n": len(omega) // 2,
        "cfs": cfs.is_cfs(omega).holds,
        "strongly_cfs": cfs.is_strongly_cfs(omega).holds,
        "image_strongly_quasiconvex": convexity.is_strongly_quasiconvex_special(omega, image).strongly_quasiconvex,
        "image_stable": convexity.is_stable_special(omega, image),
        "image_finite_index": convexity.is_finite_index_special(omega, image),
        "graph": graph_to_dict(omega),
    })
    return 0


def cmd_ladder(a) -> int:
    g = constructions.behrstock_ladder(a.n)
    if a.dot:
        _write(a.dot, graph_to_dot(g, name=f"ladder{a.n}"))
    emit({"n": a.n, "squares": len(enumerate_squares(g)), "graph": graph_to_dict(g)})
    return 0


def _metric_summary(X: MetricGraph) -> dict:
    return {"vertices": len(X), "edges": int(X.edges.shape[0]), "marked": int(X.marked.size)}


def cmd_fixture(a) -> int:
    reg = default_registry()
    if a.list or not a.name:
        emit({"fixtures": {n: {"kind": reg.entry(n)[0].kind, "provenance": reg.provenance(n)}
                           for n in reg.names()}})
        return 0
    obj = reg.get(a.name)
    body = graph_to_dict(obj) if isinstance(obj, SimplicialGraph) else _metric_summary(obj)
    emit({"name": a.name, "provenance": reg.provenance(a.name), "fixture": body})
    return 0


def cmd_cayley_dist(a) -> int:
    g = _graph(a.graph)
    x = cayley.normal_form(g, a.word)
    out: dict[str, Any] = {"word": a.word, "normal_form": list(x.word), "length": len(x)}
    if a.to:
        y = cayley.normal_form(g, a.to)
        out["to"] = list(y.word)
        out["distance"] = cayley.word_distance(x, y)
    emit(out)
    return 0


def cmd_cayley_ball(a) -> int:
    g = _graph(a.graph)
    b = cayley.Ball(g, a.radius, a.budget)
    out: dict[str, Any] = b.stats()
    if a.edges:
        _write(a.edges, "".join(f"{u}\t{v}\t{s}\n" for u, v, s in b.edge_list()))
    emit(out)
    return 0


def cmd_cayley_probe(a) -> int:
    g = _graph(a.graph)
    delta = _labels(g, a.delta)
    res = cayley.geodesic_quasiconvexity_probe(g, delta, a.radius, a.D, a.budget)
    if isinstance(res, cayley.Violation):
        emit({"verdict": "violation", "x": str(res.x), "y": str(res.y), "v": str(res.v),
              "certificate": res.certificate()})
        return 2 if a.assert_ else 0
    emit({"verdict": "pass", "delta_elements": res.pairs, "geodesic_points": res.geodesic_points,
          "max_distance": res.max_distance})
    return 0


def _profile_output(a, X: MetricGraph) -> DivergenceProfile:
    keys = [(rho, n, r) for rho in _fractions(a.rho) for n in _range(a.n) for r in _range(a.r)]
    vals = _map(lambda k: divergence(X, *k), keys, a.threads)
    prof = DivergenceProfile(dict(zip(keys, vals)))
    _write(a.csv, prof.to_csv())
    return prof


def cmd_diverge_model(a) -> int:
    f = parse_function(a.f)
    X = model_space(f, a.imax)
    prof = _profile_output(a, X)
    out: dict[str, Any] = {"f": a.f, "i_max": a.imax, **_metric_summary(X),
                           "sigma": [[str(rho), n, r, v] for rho, n, r, v in prof.rows()],
                           "invariant_problems": prof.invariant_problems()}
    ok = True
    if a.check_bounds:
        reports = []
        for rho in _fractions(a.rho):
            for n in _range(a.n):
                rep = check_appendix_bounds(f, _range(a.r), n, rho)
                ok &= rep.ok
                reports.append({"rho": rho, "n": n, "ok": rep.ok, "i_max": rep.i_max, "rows": [
                    {"r": row.r, "lower": row.lower, "sigma": row.sigma, "upper": row.upper,
                     "certified": row.certified, "ok": row.ok} for row in rep.rows]})
        out["bounds"] = reports
    if a.fit:
        window = set(_range(a.fit))
        pts = [(r, v) for rho, n, r, v in prof.rows() if r in window and v != INF]
        if pts:
            fit = fit_loglog([p[0] for p in pts], [p[1] for p in pts])
            out["fit"] = {"slope": round(fit.slope, 6), "intercept": round(fit.intercept, 6),
                          "residual": round(fit.residual, 9)}
    emit(out)
    return 2 if a.assert_ and not ok else 0


def cmd_diverge_grid(a) -> int:
    X = grid_box(a.width, a.height)
    prof = _profile_output(a, X)
    emit({"width": a.width, "height": a.height, **_metric_summary(X),
          "sigma": [[str(rho), n, r, v] for rho, n, r, v in prof.rows()],
          "invariant_problems": prof.invariant_problems()})
    return 0


def cmd_contract(a) -> int:
    reg = default_registry()
    X = reg.get(a.fixture)
    if not isinstance(X, MetricGraph):
        raise CliError(f"{a.fixture} is not a metric fixture")
    if a.retraction == "vertical":
        if "coords" not in X.meta:
            raise CliError("vertical projection needs a grid fixture")
        g = vertical_projection(X)
    else:
        g = closest_point_retraction(X)
    conds = tuple(int(c) for c in a.conditions.split(","))
    res = contraction_test(X, g, Fraction(a.A), a.D, conds)
    if isinstance(res, Witness):
        emit({"verdict": "witness", "condition": res.condition, "detail": res.describe(X),
              "observed": res.observed, "allowed": res.allowed})
        return 2 if a.assert_ else 0
    emit({"verdict": "pass", "edge_jump": res.edge_jump, "centers": res.centers,
          "note": "a pass concerns this retraction only"})
    return 0


def cmd_spiral(a) -> int:
    kk, ll = spiral_constants(a.K, a.L)
    out: dict[str, Any] = {"K": a.K, "L": a.L, "K_prime": kk, "L_prime": ll, "slope": 4 * a.K * a.K + 1}
    ok = True
    if a.check:
        specs = list(generate_spirals(a.K, a.L, a.max_segments, a.max_length))
        results = _map(lambda sp: (sp.problems(), quasigeodesic_check(sp.path(), kk, ll)), specs, a.threads)
        bad = [i for i, (probs, res) in enumerate(results) if probs or isinstance(res, QgViolation)]
        ok = not bad
        out["spirals"] = len(specs)
        out["failures"] = len(bad)
        if bad:
            sp = specs[bad[0]]
            out["first_failure"] = {"separations": sp.separations(), "problems": results[bad[0]][0]}
    if a.square:
        n = a.square
        p = three_sides_path(n)
        out["three_sides"] = {
            "side": n,
            "passes_3_0": not isinstance(quasigeodesic_check(p, 3, 0), QgViolation),
            "passes_2_0": not isinstance(quasigeodesic_check(p, 2, 0), QgViolation),
            "max_distance_from_axis": n,
        }
    emit(out)
    return 2 if a.assert_ and not ok else 0


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="racgkit", description=__doc__)
    p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps (output order is fixed)")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help_: str, fn) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_.split(".")[0], description=help_)
        sp.add_argument("graph", help="graph JSON file, or fixture:<name>")
        sp.set_defaults(func=fn)
        return sp

    sp = graph_cmd("classify", "Decide whether the defining graph is constructed from squares. After "
                   "removing universal vertices, some component of the square graph (squares adjacent when "
                   "they share a diagonal) must touch every vertex; the strong version also asks for that "
                   "square graph to be connected.", cmd_classify)
    sp.add_argument("--dot", help="write the square graph as DOT, covering component highlighted")
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 2 unless strongly CFS")

    sp = graph_cmd("sqc", "Decide strong quasiconvexity of a special subgroup: it holds exactly when every "
                   "induced 4-cycle with one diagonal inside delta lies entirely inside delta. Also reports "
                   "stability (no induced 4-cycle inside delta) and finite index.", cmd_sqc)
    sp.add_argument("--delta", required=True, help="comma separated vertices")
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 2 unless strongly quasiconvex")

    sp = graph_cmd("domains", "Relations between domains of the hierarchical structure at the identity: "
                   "nesting is containment, orthogonality is containment in the link. Also checks that "
                   "square diagonals form one orthogonality class.", cmd_domains)
    sp.add_argument("--lam", help="comma separated vertices of a domain")
    sp.add_argument("--other", help="second domain, to report the relation")
    sp.add_argument("--dot", help="write the graph of square diagonals as DOT")

    sp = graph_cmd("embed", "Glue the graph onto pairwise distance-3 vertices of a Behrstock ladder. The "
                   "result is CFS and the image generates a strongly quasiconvex, infinite index subgroup, "
                   "stable when the graph has no induced 4-cycle.", cmd_embed)
    sp.add_argument("--out", help="write the ambient graph JSON here")
    sp.add_argument("--dot", help="write the ambient graph as DOT with the image highlighted")

    sp = sub.add_parser("ladder", help="Behrstock ladder graph",
                        description="Behrstock ladder on levels {a_i, b_i}, consecutive levels fully joined.")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--dot")
    sp.set_defaults(func=cmd_ladder)

    sp = sub.add_parser("fixture", help="list or print named fixtures",
                        description="Deterministic named fixtures, each with a provenance note.")
    sp.add_argument("name", nargs="?", help="fixture name, optionally name:<int>")
    sp.add_argument("--list", action="store_true")
    sp.set_defaults(func=cmd_fixture)

    cay = sub.add_parser("cayley", help="word problem and Cayley balls",
                         description="Shortlex normal forms, word distances, balls and a geodesic "
                                     "quasiconvexity probe in the right-angled Coxeter group.")
    csub = cay.add_subparsers(dest="cayley_command", required=True)
    sp = csub.add_parser("dist", help="normal form and length of a word",
                         description="Normal form and length of a word; with --to, the word distance.")
    sp.add_argument("graph")
    sp.add_argument("-w", "--word", required=True, help='space separated letters, e.g. "a b a b"')
    sp.add_argument("--to", help="second word")
    sp.set_defaults(func=cmd_cayley_dist)
    sp = csub.add_parser("ball", help="ball statistics",
                         description="Elements of length at most R with sphere sizes; optional edge list.")
    sp.add_argument("graph")
    sp.add_argument("-r", "--radius", type=int, required=True)
    sp.add_argument("--stats", action="store_true", help="print statistics (always on)")
    sp.add_argument("--edges", help="write the ball as a tab separated edge list labelled by normal forms")
    sp.add_argument("--budget", type=int, help="element budget (default RACG_BUDGET or 2000000)")
    sp.set_defaults(func=cmd_cayley_ball)
    sp = csub.add_parser("probe", help="geodesic quasiconvexity probe",
                         description="Search geodesics between points of the special subgroup within the "
                                     "R-ball for a point farther than D from the subgroup.")
    sp.add_argument("graph")
    sp.add_argument("--delta", required=True)
    sp.add_argument("-r", "--radius", type=int, required=True)
    sp.add_argument("-d", "--D", type=int, required=True)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 2 on a violation")
    sp.set_defaults(func=cmd_cayley_probe)

    div = sub.add_parser("diverge", help="lower relative divergence",
                         description="Exact lower relative divergence: shortest detours between points on "
                                     "the r-sphere around Y that are at least nr apart, avoiding the "
                                     "rho*r-neighbourhood of Y.")
    dsub = div.add_subparsers(dest="diverge_command", required=True)

    def sweep_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--rho", default="1", help="comma separated rationals in (0,1]")
        sp.add_argument("--n", default="3", help="integers, a..b or comma separated")
        sp.add_argument("--r", default="2..8", help="integers, a..b or comma separated")
        sp.add_argument("--csv", help="write rho,n,r,sigma rows here")

    sp = dsub.add_parser("model", help="arc model over a ray",
                         description="Ray with gaps i between consecutive points and an arc of length f(i) "
                                     "over gap i. Its divergence is squeezed between f(r)-2r and f((n+3)r).")
    sp.add_argument("--f", required=True, help='expression in i, e.g. "ceil(i^1.5)"')
    sp.add_argument("--imax", type=int, required=True)
    sweep_args(sp)
    sp.add_argument("--check-bounds", action="store_true", help="compare with f(r)-2r and f((n+3)r)")
    sp.add_argument("--fit", help="r window for a log-log slope fit, e.g. 8..16")
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 2 if a bound check fails")
    sp.set_defaults(func=cmd_diverge_model)
    sp = dsub.add_parser("grid", help="Z^2 box over the x-axis",
                         description="Grid box with the x-axis marked; divergence is linear, sigma = nr.")
    sp.add_argument("--width", type=int, default=200)
    sp.add_argument("--height", type=int, default=60)
    sweep_args(sp)
    sp.set_defaults(func=cmd_diverge_grid)

    sp = sub.add_parser("contract-test", help="falsify contraction for a retraction",
                        description="Check that a retraction onto Y is coarsely Lipschitz, moves Y by at most "
                                    "D, and sends balls of radius A*d(x,Y) to sets of diameter at most D. A "
                                    "pass only concerns the chosen retraction.")
    sp.add_argument("--fixture", required=True, help="metric fixture name, e.g. model-i1.5 or comb")
    sp.add_argument("--retraction", choices=("closest", "vertical"), default="closest")
    sp.add_argument("--A", default="1")
    sp.add_argument("--D", type=int, default=2)
    sp.add_argument("--conditions", default="2,1,3", help="order of the checks")
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 2 on a witness")
    sp.set_defaults(func=cmd_contract)

    sp = sub.add_parser("spiral", help="spiral path constants",
                        description="Alternating-axis paths of slope above 4K^2 made of (K,L) pieces are "
                                    "(K',L')-quasi-geodesics; prints K', L' and optionally checks them on "
                                    "generated spirals in Z^2 with the l1 metric.")
    sp.add_argument("--K", type=int, default=1)
    sp.add_argument("--L", type=int, default=1)
    sp.add_argument("--check", action="store_true")
    sp.add_argument("--max-segments", type=int, default=6)
    sp.add_argument("--max-length", type=int, default=200)
    sp.add_argument("--square", type=int, help="also test three sides of a square of this side")
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 2 if a check fails")
    sp.set_defaults(func=cmd_spiral)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        return a.func(a)
    except (GraphFormatError, GraphError, CliError, constructions.ConstructionError,
            cayley.BudgetExceeded, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
