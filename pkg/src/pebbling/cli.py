"""Command-line front end.

Exit codes: 0 success or an affirmative answer, 1 a negative answer
(unreachable target, Class 1, failed audit), 2 usage error, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .generators import BlowupSpec, chh_graph, gnp_sample, named_graph, path_blowup
from .graph import GraphError, format_edge_list, read_edge_list
from .number import DisconnectedGraphError, SearchStats, classify_small, is_class0, pebbling_number
from .proof import Verdict, audit_counterexample
from .solver import (
    as_distribution,
    can_pebble,
    certificate_to_json,
    parse_distribution,
)
from .threshold import ExperimentConfig, ExperimentError, Property, parse_grid, scaling_reference, sweep

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _load_dist(path: str, n: int):
    return parse_distribution(Path(path).read_text(), n)


def cmd_gen(args) -> int:
    fam = args.family
    if fam in ("complete", "path", "cycle"):
        if args.n is None:
            raise UsageError(f"--n is required for --family {fam}")
        g = named_graph(fam, args.n)
    elif fam in ("g1", "g2"):
        g = chh_graph(fam)
    elif fam == "blowup":
        if not args.sizes:
            raise UsageError("--sizes is required for --family blowup")
        g = path_blowup(BlowupSpec(tuple(int(x) for x in args.sizes.split(","))))
    else:
        if args.n is None or args.p is None or args.seed is None:
            raise UsageError("--n, --p and --seed are required for --family gnp")
        g = gnp_sample(args.n, args.p, args.seed)
    text = format_edge_list(g, comment=f"family={fam}")
    if args.out:
        _write(args.out, text)
        print(f"wrote {g.n} vertices, {g.m} edges to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_edge_list(args.graph)
    d = _load_dist(args.dist, g.n)
    if not 0 <= args.target < g.n:
        raise GraphError(f"target {args.target} out of range")
    res = can_pebble(g, d, args.target)
    if res.reachable:
        cert = certificate_to_json(res.certificate)
        print(f"reachable in {len(res.certificate)} moves")
        print(cert)
        _write(args.out, cert + "\n")
        return EXIT_OK
    print("unreachable")
    _write(args.out, json.dumps({"reachable": False}) + "\n")
    return EXIT_NO


def cmd_number(args) -> int:
    g = read_edge_list(args.graph)
    stats = SearchStats()
    try:
        f = pebbling_number(g, stats)
    except DisconnectedGraphError as exc:
        print(exc)
        _write(args.out, json.dumps({"f": None, "disconnected": True}) + "\n")
        return EXIT_NO
    c0 = is_class0(g)
    print(f)
    doc = {
        "graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]},
        "f": f,
        "class": 0 if f == g.n else 1,
        "targets_tested": stats.targets_tested,
        "distributions_tested": stats.distributions_tested,
        "elapsed": round(stats.elapsed, 6),
    }
    if c0.witness is not None:
        doc["witness"] = c0.witness.to_json()
    _write(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_class0(args) -> int:
    g = read_edge_list(args.graph)
    res = is_class0(g)
    doc = {
        "graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]},
        "class": 0 if res.class0 else 1,
        "targets_tested": res.stats.targets_tested,
        "distributions_tested": res.stats.distributions_tested,
        "elapsed": round(res.stats.elapsed, 6),
    }
    if res.witness is not None:
        doc["witness"] = res.witness.to_json()
    if res.disconnected:
        doc["disconnected"] = True
    if res.class0:
        print("class 0")
    else:
        w = res.witness
        print(f"class 1: target {w.target}, distribution {' '.join(map(str, w.distribution))}")
    _write(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if res.class0 else EXIT_NO


def cmd_classify(args) -> int:
    found = classify_small(args.n_max, progress=lambda msg: print(msg, file=sys.stderr))
    doc = []
    for c in found:
        print(f"n={c.graph.n} m={c.graph.m} edges={c.graph.sorted_edges()} labeled={c.labeled_count}")
        doc.append(
            {
                "n": c.graph.n,
                "edges": [list(e) for e in c.graph.sorted_edges()],
                "labeled_count": c.labeled_count,
                "connectivity": c.connectivity,
                "diameter": c.diameter,
                "witness": c.witness.to_json(),
            }
        )
    print(f"{len(found)} isomorphism class(es)")
    _write(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_audit(args) -> int:
    g = read_edge_list(args.graph)
    d = as_distribution(g, _load_dist(args.dist, g.n))
    audit = audit_counterexample(g, d, args.z0)
    if audit.note:
        print(audit.note)
    for c in audit.claims:
        print(f"{c.claim:22s} {c.verdict.value}")
    _write(args.out, json.dumps(audit.to_json(), indent=2) + "\n")
    if audit.z0_reachable or not audit.claims:
        return EXIT_NO
    return EXIT_NO if any(c.verdict is Verdict.FAILS for c in audit.claims) else EXIT_OK


def cmd_sweep(args) -> int:
    props = tuple(Property.parse(p) for p in args.properties.split(","))
    cfg = ExperimentConfig(args.n, parse_grid(args.p_grid), args.trials, args.seed, props)
    result = sweep(cfg, threads=args.threads, progress=lambda msg: print(msg, file=sys.stderr))
    text = result.to_csv() if args.format == "csv" else result.to_json()
    if args.out:
        _write(args.out, text)
    for r in result.rows:
        print(f"p={r.p:<5} {r.property:12s} {r.estimate:.3f} [{r.ci_low:.3f}, {r.ci_high:.3f}]")
    if result.violations:
        print(f"{len(result.violations)} implication violation(s)", file=sys.stderr)
        return EXIT_NO
    return EXIT_OK


def cmd_scaling(args) -> int:
    rows = scaling_reference(args.d, [int(x) for x in args.n_list.split(",")])
    lines = ["n,diameter_curve,connectivity_curve"]
    lines += [f"{r.n},{r.diameter_curve!r},{r.connectivity_curve!r}" for r in rows]
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    _write(args.out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pebbling", description="Exact graph pebbling toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a graph in edge-list format")
    p.add_argument("--family", required=True, choices=["complete", "path", "cycle", "g1", "g2", "blowup", "gnp"])
    p.add_argument("--n", type=int)
    p.add_argument("--sizes", help="comma-separated class sizes for --family blowup")
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="decide whether a distribution can pebble a target")
    p.add_argument("--graph", required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    for name, func, helptext in [
        ("number", cmd_number, "compute the pebbling number"),
        ("class0", cmd_class0, "decide Class 0, printing a witness otherwise"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--graph", required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("classify-small", help="2-connected diameter-2 Class-1 graphs up to n_max vertices")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("audit", help="run the separator audit on an unpebblable instance")
    p.add_argument("--graph", required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--z0", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("sweep", help="Monte Carlo estimates over a p grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-grid", required=True, help="start:stop:step (inclusive) or a,b,c")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--properties", default="connected,class0")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scaling", help="asymptotic reference curves")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n-list", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scaling)
    return parser


def parse_and_run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ExperimentError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(parse_and_run())


if __name__ == "__main__":
    main()
