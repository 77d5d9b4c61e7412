"""Command-line front end: ``pluennecke <build|verify|compute|certify|export> ...``.

Exit status: 0 success or positive verdict, 1 negative verdict (including an
unmet hypothesis), 2 usage or validation error, 3 cap or budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import io
from .constructors import (
    AbelianGroup,
    GroupSet,
    addition_graph,
    cartesian_product,
    channel,
    independent_addition_graph,
    inverse_graph,
    join_construction,
)
from .errors import CapExceeded, HypothesisNotMet, PluenneckeError
from .graph import LayeredGraph, VertexId, VertexSet
from .inverse import inverse_theorem_certificate, sharpness
from .magnification import (
    DEFAULT_SUBSET_CAP,
    count_vertex_disjoint_max_paths,
    delta,
    growth_bound_check,
    magnification_ratio,
    min_weight_separating_set,
    plunnecke_inequality_check,
    pull_down,
)
from .matching import regularity, verify_degree_monotonicity, verify_plunnecke_conditions
from .ratio import format_ratio, parse_ratio
from .regular import DEFAULT_SIZE_BUDGET, build_rc, build_rk

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(PluenneckeError):
    pass


def plain(x):
    """Report-safe value: rationals as strings, vertex sets as sorted index lists."""
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return format_ratio(x)
    if isinstance(x, VertexSet):
        return x.sorted()
    if isinstance(x, VertexId):
        return str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict) and value:
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
            lines.append(f"{prefix}: {' '.join(str(v) for v in value)}")
        elif isinstance(value, list):
            for n, v in enumerate(value):
                walk(f"{prefix}.{n}", v)
        else:
            lines.append(f"{prefix}: {value}")

    walk("", report)
    return "\n".join(lines) + "\n"


def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# -- graph inputs ------------------------------------------------------


def read_graph(path: str) -> tuple[LayeredGraph, dict]:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    doc = io.loads(text)
    echo = {"graph": path, "sha256": hashlib.sha256(text.encode()).hexdigest()}
    return doc.graph, echo


# -- build -------------------------------------------------------------


def build_graph(args) -> tuple[LayeredGraph, str, dict]:
    kind = args.kind
    budget = args.size_budget
    if kind == "addition":
        grp = AbelianGroup.cyclic(args.modulus)
        a = GroupSet(grp, args.a)
        b = GroupSet(grp, args.b)
        g = addition_graph(a, b, args.level)
        params = {"modulus": args.modulus, "a": a.elements, "b": b.elements, "level": args.level}
    elif kind == "independent":
        g = independent_addition_graph(args.n, args.level)
        params = {"n": args.n, "level": args.level}
    elif kind == "rk":
        g = build_rk(args.k, args.level, budget)
        params = {"k": args.k, "level": args.level}
    elif kind == "rc":
        g = build_rc(args.p, args.q, args.level, budget)
        params = {"p": args.p, "q": args.q, "level": args.level}
    elif kind == "product":
        g1, _ = read_graph(args.first)
        g2, _ = read_graph(args.second)
        _check_product_budget(g1, g2, budget)
        g = cartesian_product(g1, g2)
        params = {"first": args.first, "second": args.second}
    elif kind == "inverse":
        g0, _ = read_graph(args.graph)
        g = inverse_graph(g0)
        params = {"graph": args.graph}
    elif kind == "channel":
        g0, _ = read_graph(args.graph)
        x = VertexSet(args.from_layer, args.sources)
        y = VertexSet(args.to_layer, args.targets)
        g = channel(g0, x, y)
        params = {
            "graph": args.graph,
            "from_layer": args.from_layer,
            "from": x.sorted(),
            "to_layer": args.to_layer,
            "to": y.sorted(),
        }
    elif kind == "join":
        g1, _ = read_graph(args.graph)
        r, _ = read_graph(args.regular)
        g = join_construction(g1, r)
        params = {"graph": args.graph, "regular": args.regular}
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown build kind {kind}")
    recipe = kind + " " + " ".join(f"{k}={_recipe_value(v)}" for k, v in params.items())
    return g, recipe, params


def _recipe_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def _check_product_budget(g1: LayeredGraph, g2: LayeredGraph, budget: int) -> None:
    total = sum(a * b for a, b in zip(g1.layer_sizes, g2.layer_sizes))
    if total > budget:
        raise CapExceeded(f"product would have {total} vertices, over the budget of {budget}")


def cmd_build(args) -> int:
    g, recipe, _ = build_graph(args)
    text = io.dumps(g, recipe)
    rep = regularity(g)
    summary = f"layers {' '.join(map(str, g.layer_sizes))}"
    if rep.regular:
        summary += f"; in-degree {rep.in_degree}, out-degree {rep.out_degree}, ratio {format_ratio(rep.ratio)}"
    else:
        summary += "; not regular"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


# -- verify ------------------------------------------------------------


def cmd_verify(args) -> tuple[int, dict]:
    g, echo = read_graph(args.graph)
    which = args.which
    if which == "plunnecke":
        rep = verify_plunnecke_conditions(g)
        results = {
            "verdict": rep.ok,
            "upward": rep.upward_ok,
            "downward": rep.downward_ok,
            "failures": [
                {
                    "edge": [str(f.edge[0]), str(f.edge[1])],
                    "direction": f.direction,
                    "violator_layer": f.violator.layer,
                    "violator": f.violator.sorted(),
                    "neighbourhood": f.view(g).neighborhood(f.violator).sorted(),
                }
                for f in rep.failures
            ],
        }
        ok = rep.ok
    elif which == "regular":
        rep = regularity(g)
        results = {"verdict": rep.regular}
        if rep.regular:
            results.update(ratio=rep.ratio, in_degree=rep.in_degree, out_degree=rep.out_degree)
        else:
            results["counterexample"] = rep.counterexample
        ok = rep.regular
    else:
        rep = verify_degree_monotonicity(g)
        results = {"verdict": rep.ok}
        if rep.edge:
            results["edge"] = [str(rep.edge[0]), str(rep.edge[1])]
        ok = rep.ok
    return (EXIT_OK if ok else EXIT_FALSE), {"inputs": echo, "results": results}


# -- compute -----------------------------------------------------------


def _sepset_fields(s) -> dict:
    return {
        "weight": s.weight,
        "weight_base": s.weight_base,
        "members": {str(i): m.sorted() for i, m in enumerate(s.members) if m.members},
    }


def cmd_compute(args) -> tuple[int, dict]:
    g, echo = read_graph(args.graph)
    cap, threads = args.subset_cap, args.threads
    which = args.which
    status = EXIT_OK
    if which == "magnification":
        echo.update(i=args.i, method=args.method)
        rep = magnification_ratio(g, args.i, cap, args.method, threads)
        results = {"i": rep.i, "value": rep.value, "witness": rep.witness}
    elif which == "inequality":
        try:
            rep = plunnecke_inequality_check(g, cap, threads)
        except HypothesisNotMet as e:
            return EXIT_FALSE, {"inputs": echo, "results": {"status": "hypothesis not met", "message": str(e)}}
        results = {"verdict": rep.holds, "table": rep.table, "failures": list(rep.failures)}
        status = EXIT_OK if rep.holds else EXIT_FALSE
    elif which in ("sepset", "pulldown"):
        c = parse_ratio(args.c)
        echo["c"] = c
        s = min_weight_separating_set(g, c)
        results = {"separating_set": _sepset_fields(s)}
        if which == "pulldown":
            trace: list = []
            try:
                out = pull_down(g, s, trace)
            except HypothesisNotMet as e:
                results.update(status="hypothesis not met", message=str(e))
                return EXIT_FALSE, {"inputs": echo, "results": results}
            results["steps"] = [
                {"layer": st.layer, "lower": st.lower, "middle": st.middle} for st in trace
            ]
            results["pulled_down"] = _sepset_fields(out)
    elif which == "disjoint-paths":
        n = count_vertex_disjoint_max_paths(g)
        results = {"paths": n, "bottom_size": g.layer_sizes[0]}
    else:
        try:
            rep = growth_bound_check(g)
        except HypothesisNotMet as e:
            return EXIT_FALSE, {"inputs": echo, "results": {"status": "hypothesis not met", "message": str(e)}}
        results = {
            "verdict": rep.holds,
            "attained": rep.attained,
            "sizes": list(rep.sizes),
            "bounds": list(rep.bounds),
        }
        status = EXIT_OK if rep.holds else EXIT_FALSE
    return status, {"inputs": echo, "results": results}


# -- certify -----------------------------------------------------------


def cmd_certify(args) -> tuple[int, dict]:
    g, echo = read_graph(args.graph)
    sharp = sharpness(g, args.subset_cap)
    results: dict = {"table": sharp.table}
    d = delta(g, sharp.table)
    results["delta"] = d if d is not None else "irrational"
    if sharp.ratio is None:
        results["status"] = "hypothesis not met"
        results["message"] = f"hypothesis not met: {sharp.reason}"
        return EXIT_FALSE, {"inputs": echo, "results": results}
    cert = inverse_theorem_certificate(g, args.subset_cap)
    results.update(
        status="certified" if cert.verdict else "refuted",
        verdict=cert.verdict,
        ratio=cert.c,
        z=cert.z,
        channel_layers=list(cert.channel_layers),
        regular_ratio=cert.regular_ratio,
    )
    return (EXIT_OK if cert.verdict else EXIT_FALSE), {"inputs": echo, "results": results}


# -- export ------------------------------------------------------------


def cmd_export(args) -> int:
    g, _ = read_graph(args.graph)
    text = io.to_dot(g) if args.to == "dot" else io.dumps_adjacency(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], default="json", help="report format")
    common.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP,
                        help="largest layer searched exhaustively (default %(default)s)")
    common.add_argument("--size-budget", type=int, default=DEFAULT_SIZE_BUDGET,
                        help="largest vertex count a builder may produce (default %(default)s)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for subset search")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock milliseconds to reports (makes them non-reproducible)")

    p = argparse.ArgumentParser(prog="pluennecke", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="construct a graph document")
    kinds = build.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("addition", parents=[common], help="addition graph over Z_n")
    k.add_argument("--modulus", type=int, required=True)
    k.add_argument("--a", type=int_list, required=True, help="comma-separated elements of A")
    k.add_argument("--b", type=int_list, required=True, help="comma-separated elements of B")
    k.add_argument("--level", type=int, required=True)
    k = kinds.add_parser("independent", parents=[common], help="independent addition graph")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--level", type=int, required=True)
    k = kinds.add_parser("rk", parents=[common], help="regular graph of integer ratio k")
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--level", type=int, required=True)
    k = kinds.add_parser("rc", parents=[common], help="regular graph of ratio p/q")
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--q", type=int, required=True)
    k.add_argument("--level", type=int, required=True)
    k = kinds.add_parser("product", parents=[common], help="Cartesian product of two graphs")
    k.add_argument("first")
    k.add_argument("second")
    k = kinds.add_parser("inverse", parents=[common], help="reverse every edge and the layer order")
    k.add_argument("graph")
    k = kinds.add_parser("channel", parents=[common], help="subgraph of all paths from X to Y")
    k.add_argument("graph")
    k.add_argument("--from-layer", type=int, default=0)
    k.add_argument("--from", dest="sources", type=int_list, required=True)
    k.add_argument("--to-layer", type=int, required=True)
    k.add_argument("--to", dest="targets", type=int_list, required=True)
    k = kinds.add_parser("join", parents=[common], help="join a level-2 graph with a ratio-1 regular graph")
    k.add_argument("graph")
    k.add_argument("regular")

    v = sub.add_parser("verify", parents=[common], help="check commutativity, regularity or monotonicity")
    v.add_argument("which", choices=["plunnecke", "regular", "monotone"])
    v.add_argument("graph")

    c = sub.add_parser("compute", parents=[common], help="magnification ratios and related quantities")
    c.add_argument("which", choices=["magnification", "inequality", "sepset", "pulldown", "disjoint-paths", "growth"])
    c.add_argument("graph")
    c.add_argument("--i", type=int, default=1, help="layer for magnification")
    c.add_argument("--method", choices=["enumerate", "flow"], default="enumerate")
    c.add_argument("--c", default="1", help="weight base as n or p/q")

    cert = sub.add_parser("certify", parents=[common], help="sharpness check and inverse-theorem certificate")
    cert.add_argument("graph")

    e = sub.add_parser("export", parents=[common], help="write DOT or adjacency text")
    e.add_argument("to", choices=["dot", "adjacency-text"])
    e.add_argument("graph")
    return p


def _emit_report(args, command: str, status: int, body: dict, started: float) -> None:
    report = {"command": command, "inputs": plain(body["inputs"]), "results": plain(body["results"])}
    if args.timing:
        report["timing_ms"] = round((time.perf_counter() - started) * 1000, 3)
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    started = time.perf_counter()
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "export":
            return cmd_export(args)
        handler = {"verify": cmd_verify, "compute": cmd_compute, "certify": cmd_certify}[args.command]
        status, body = handler(args)
        name = args.command if args.command == "certify" else f"{args.command} {args.which}"
        _emit_report(args, name, status, body, started)
        return status
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except HypothesisNotMet as e:
        print(f"hypothesis not met: {e}", file=sys.stderr)
        return EXIT_FALSE
    except (PluenneckeError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
