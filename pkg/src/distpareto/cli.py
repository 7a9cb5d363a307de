"""Command-line frontend with deterministic JSON/CSV/table output.

Exit codes: 0 success (and zero violations for verify suites), 1 verify suite
found violations, 2 parse/usage error, 3 size cap exceeded, 4 disconnected
input graph.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import __version__
from .errors import CapExceededError, DisconnectedGraphError, GraphParseError
from .graph import (
    Graph,
    FAMILY_NAMES,
    diameter,
    distance_matrix,
    make_family,
    parse_edge_list,
    parse_graph6,
)
from .laws import (
    CLOSED_FORM_IDS,
    bound_report,
    closed_form,
    closed_form_brute_force,
    closed_form_surd,
)
from .pareto import DEFAULT_DEDUP_TOL, DEFAULT_MAX_ORDER, pareto_eigenpair, pareto_spectrum, rho2_fast
from .verify import (
    check_coalescence_quasiconvexity,
    check_edge_monotonicity,
    check_eigenvector_convexity,
    check_tree_extremes,
    connected_graph_classes,
    extremal_search,
    random_connected_graph,
    trees_upto_iso,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_DISCONNECTED = 4

VERIFY_SUITES = (
    "convexity",
    "monotonicity",
    "quasiconvex",
    "tree-extremes",
    "bounds-sweep",
    "extremal",
)


def _round12(x: float) -> float:
    return float(f"{float(x):.12g}")


def _jsonable(obj):
    """Recursively convert payload values to JSON-stable types."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if v != v:  # NaN marks inapplicable numeric fields
            return None
        return _round12(v)
    return obj


def _graph_summary(g: Graph) -> dict:
    dm = distance_matrix(g)
    return {
        "order": g.n,
        "size": g.size,
        "diameter": diameter(dm),
        "name": g.name,
        "edges": [list(e) for e in g.sorted_edges()],
    }


def _document(command: str, payload: dict, graph: Graph | None = None) -> dict:
    doc = {
        "command": command,
        "payload": payload,
        "tool_version": __version__,
    }
    doc["graph_summary"] = _graph_summary(graph) if graph is not None else None
    return _jsonable(doc)


def _emit_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit_table(doc: dict) -> str:
    out = io.StringIO()
    gs = doc.get("graph_summary")
    print(f"command: {doc['command']}  (tool {doc['tool_version']})", file=out)
    if gs:
        print(
            f"graph: order={gs['order']} size={gs['size']} diameter={gs['diameter']}"
            + (f" name={gs['name']}" if gs.get("name") else ""),
            file=out,
        )

    def scalar_list(val):
        return isinstance(val, list) and not any(isinstance(v, (dict, list)) for v in val)

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for key, val in obj.items():
                if isinstance(val, dict) or (isinstance(val, list) and not scalar_list(val)):
                    print(f"{pad}{key}:", file=out)
                    walk(val, indent + 1)
                else:
                    print(f"{pad}{key}: {val}", file=out)
        elif isinstance(obj, list):
            for val in obj:
                if isinstance(val, dict):
                    walk(val, indent)
                    print(f"{pad}-", file=out)
                else:
                    print(f"{pad}{val}", file=out)

    walk(doc["payload"])
    return out.getvalue()


def _csv_rows(command: str, payload: dict) -> tuple[list[str], list[list]]:
    if command == "spectrum":
        header = ["value", "witness"]
        rows = [
            [v, " ".join(str(x) for x in w)]
            for v, w in zip(payload["values"], payload["witnesses"])
        ]
        return header, rows
    if command == "rho2":
        if "bounds" in payload:
            header = [
                "bound_id", "k", "direction", "bound_value",
                "actual_value", "slack", "tight", "applicable", "reason",
            ]
            rows = [
                [
                    b["bound_id"], b["k"] if b["k"] is not None else "",
                    b["direction"], b["bound_value"], b["actual_value"],
                    b["slack"], b["tight"], b["applicable"], b["reason"],
                ]
                for b in payload["bounds"]
            ]
            return header, rows
        return ["value", "witness_vertex"], [[payload["value"], payload["witness_vertex"]]]
    if command == "formulas":
        header = ["identifier", "params", "formula_value", "surd", "brute_force_value", "abs_diff"]
        return header, [[
            payload["identifier"],
            " ".join(str(p) for p in payload["params"]),
            payload["formula_value"],
            payload["surd"],
            payload["brute_force_value"],
            payload["abs_diff"],
        ]]
    if command == "verify":
        header = ["suite", "checked", "violations", "holds"]
        return header, [[
            payload["suite"], payload["checked"], len(payload["violations"]), payload["holds"],
        ]]
    raise ValueError(f"no csv layout for command {command!r}")


def _emit_csv(doc: dict) -> str:
    import csv as _csv

    header, rows = _csv_rows(doc["command"], doc["payload"])
    out = io.StringIO()
    writer = _csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


def _emit(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return _emit_json(doc)
    if fmt == "csv":
        return _emit_csv(doc)
    return _emit_table(doc)


# ---------------------------------------------------------------------------
# Graph source handling


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", nargs="+", metavar=("NAME", "PARAM"),
                     help=f"named family and integer parameters; one of: {', '.join(FAMILY_NAMES)}")
    src.add_argument("--edges", metavar="FILE", help="edge-list file (first line n, then 'u v' lines)")
    src.add_argument("--graph6", metavar="FILE", help="file with one graph6 line")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--jobs", type=int, default=1, help="worker count for subset enumeration")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p.add_argument("--tolerance", type=float, default=DEFAULT_DEDUP_TOL,
                   help="dedup tolerance for distinct Pareto eigenvalues")


def _load_graph(args) -> Graph:
    if args.family:
        name = args.family[0]
        params = [int(x) for x in args.family[1:]]
        return make_family(name, params)
    if args.edges:
        with open(args.edges, "r", encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    with open(args.graph6, "r", encoding="utf-8") as fh:
        return parse_graph6(fh.readline())


# ---------------------------------------------------------------------------
# Commands


def _cmd_spectrum(args) -> int:
    g = _load_graph(args)
    spec = pareto_spectrum(
        g, jobs=args.jobs, dedup_tolerance=args.tolerance, max_order=args.max_order
    )
    d = diameter(distance_matrix(g))
    ladder = list(range(d + 1))
    present = all(
        any(abs(v - t) <= 1e-8 * max(1.0, t) for v in spec.values) for t in ladder
    )
    payload = {
        "values": list(spec.values),
        "witnesses": [list(w) for w in spec.witnesses],
        "count": spec.count,
        "integer_ladder": {"integers": ladder, "all_present": present},
        "dedup_tolerance": spec.dedup_tolerance,
    }
    sys.stdout.write(_emit(_document("spectrum", payload, g), args.format))
    return EXIT_OK


def _cmd_rho2(args) -> int:
    g = _load_graph(args)
    value, witness = rho2_fast(g)
    payload = {"value": value, "witness_vertex": witness}
    if args.bounds:
        payload["bounds"] = [
            {
                "bound_id": b.bound_id,
                "k": b.k,
                "direction": b.direction,
                "bound_value": b.bound_value,
                "actual_value": b.actual_value,
                "slack": b.slack,
                "tight": b.tight,
                "applicable": b.applicable,
                "reason": b.reason,
            }
            for b in bound_report(g)
        ]
    sys.stdout.write(_emit(_document("rho2", payload, g), args.format))
    return EXIT_OK


def _cmd_formulas(args) -> int:
    ident = args.identifier
    params = [int(p) for p in args.params]
    try:
        value = closed_form(ident, *params)
        surd = closed_form_surd(ident, *params)
        brute = closed_form_brute_force(ident, *params)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if isinstance(value, list):
        diff = max(abs(a - b) for a, b in zip(value, brute)) if value else 0.0
    else:
        diff = abs(value - brute)
    payload = {
        "identifier": ident,
        "params": params,
        "formula_value": value,
        "surd": surd,
        "brute_force_value": brute,
        "abs_diff": diff,
    }
    sys.stdout.write(_emit(_document("formulas", payload), args.format))
    return EXIT_OK


def _suite_convexity(order: int) -> tuple[int, list[dict]]:
    from itertools import combinations

    checked = 0
    violations = []
    for n in range(2, order + 1):
        for t in trees_upto_iso(n):
            for k in range(1, n + 1):
                for J in combinations(range(n), k):
                    pair = pareto_eigenpair(t, J)
                    rep = check_eigenvector_convexity(t, pair)
                    checked += 1
                    if not rep.holds:
                        violations.append(
                            {"instance": rep.instance, "counterexample": rep.counterexample}
                        )
    return checked, violations


def _suite_monotonicity(order: int) -> tuple[int, list[dict]]:
    checked = 0
    violations = []
    for n in range(2, order + 1):
        for g in connected_graph_classes(n):
            for e in g.sorted_edges():
                try:
                    rep = check_edge_monotonicity(g, e)
                except DisconnectedGraphError:
                    continue
                checked += 1
                if not rep.holds:
                    violations.append(
                        {"instance": rep.instance, "counterexample": rep.counterexample}
                    )
    return checked, violations


def _suite_quasiconvex(order: int) -> tuple[int, list[dict]]:
    attachments = [
        make_family("complete", [2]),
        make_family("complete", [3]),
        make_family("path", [3]),
    ]
    checked = 0
    violations = []
    for n in range(3, order + 1):
        for t in trees_upto_iso(n):
            for h in attachments:
                rep = check_coalescence_quasiconvexity(t, h, 0)
                checked += 1
                if not rep.holds:
                    violations.append(
                        {"instance": rep.instance, "counterexample": rep.counterexample}
                    )
    return checked, violations


def _suite_tree_extremes(order: int) -> tuple[int, list[dict]]:
    checked = 0
    violations = []
    for n in range(3, order + 1):
        rep = check_tree_extremes(n)
        checked += 1
        if not rep.holds:
            violations.append({"instance": rep.instance, "counterexample": rep.counterexample})
    return checked, violations


def _suite_bounds_sweep(order: int, random_count: int, seed: int) -> tuple[int, list[dict]]:
    checked = 0
    violations = []

    def run(g: Graph) -> None:
        nonlocal checked
        for b in bound_report(g):
            if not b.applicable:
                continue
            checked += 1
            if b.slack < -1e-8:
                violations.append(
                    {
                        "instance": _describe_graph(g),
                        "bound_id": b.bound_id,
                        "k": b.k,
                        "slack": b.slack,
                    }
                )

    for n in range(2, order + 1):
        for g in connected_graph_classes(n):
            run(g)
    rng = np.random.default_rng(seed)
    for _ in range(random_count):
        n = int(rng.integers(7, 11))
        run(random_connected_graph(n, rng))
    return checked, violations


def _describe_graph(g: Graph) -> str:
    return g.name or f"n={g.n}, edges={g.sorted_edges()}"


def _cmd_verify(args) -> int:
    suite = args.suite
    order = args.order
    payload: dict = {"suite": suite, "params": {"order": order}}
    if suite == "extremal":
        result = extremal_search(order, dedup_iso=True, jobs=args.jobs)
        payload.update(
            {
                "checked": result.graphs_scanned,
                "max_count": result.max_count,
                "witnesses": [
                    {"order": w.n, "edges": [list(e) for e in w.sorted_edges()]}
                    for w in result.witnesses
                ],
                "violations": [],
                "holds": True,
            }
        )
        sys.stdout.write(_emit(_document("verify", payload), args.format))
        return EXIT_OK
    if suite == "convexity":
        checked, violations = _suite_convexity(order)
    elif suite == "monotonicity":
        checked, violations = _suite_monotonicity(order)
    elif suite == "quasiconvex":
        checked, violations = _suite_quasiconvex(order)
    elif suite == "tree-extremes":
        checked, violations = _suite_tree_extremes(order)
    elif suite == "bounds-sweep":
        checked, violations = _suite_bounds_sweep(order, args.random, args.seed)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    payload.update({"checked": checked, "violations": violations, "holds": not violations})
    sys.stdout.write(_emit(_document("verify", payload), args.format))
    return EXIT_OK if not violations else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distpareto",
        description="Distance Pareto eigenvalues of connected graphs: "
        "enumeration, closed forms, bounds, and verification suites.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="full distance Pareto spectrum with witnesses")
    _add_source_flags(p_spec)
    _add_common_flags(p_spec)
    p_spec.set_defaults(func=_cmd_spectrum)

    p_rho2 = sub.add_parser("rho2", help="second largest distance Pareto eigenvalue")
    _add_source_flags(p_rho2)
    _add_common_flags(p_rho2)
    p_rho2.add_argument("--bounds", action="store_true", help="append the bound report")
    p_rho2.set_defaults(func=_cmd_rho2)

    p_form = sub.add_parser("formulas", help="closed forms cross-checked against enumeration")
    p_form.add_argument("identifier", choices=CLOSED_FORM_IDS)
    p_form.add_argument("params", nargs="+", help="integer parameters")
    p_form.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p_form.set_defaults(func=_cmd_formulas)

    p_ver = sub.add_parser("verify", help="run a verification suite; exit 1 on violations")
    p_ver.add_argument("suite", choices=VERIFY_SUITES)
    p_ver.add_argument("--order", type=int, default=5, help="maximum graph order for the sweep")
    p_ver.add_argument("--random", type=int, default=0,
                       help="bounds-sweep: extra random connected graphs on 7..10 vertices")
    p_ver.add_argument("--seed", type=int, default=20240601, help="rng seed for --random")
    p_ver.add_argument("--jobs", type=int, default=1)
    p_ver.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DisconnectedGraphError as exc:
        print(f"disconnected input: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
