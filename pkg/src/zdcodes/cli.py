"""Command-line interface.

Exit codes are a stable contract: 0 for success or decider consensus
(either answer), 1 for usage, parse or input errors, 2 for an unexpected
decider discrepancy.  Every command prints human-readable text by default
and structured JSON under --json; outputs are deterministic for fixed
inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import config, graphs, ringexpr, suites, tables, trees, zdg
from .graphs import (
    fixture_graph8,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_path,
    make_star,
)
from .rings import RingError
from .tpc import (
    complete_bipartite_code,
    complete_decider,
    cycle_code,
    cycle_decider,
    find_tpc,
    is_total_perfect_code,
    path_code,
    path_decider,
    regular_parity_check,
    tree_tpc,
)

RING_GRAMMAR = """\
ring expression grammar (whitespace insignificant):
  Expr := Atom (("x" | "×" | "*") Atom)*
  Atom := "Z"int            ring of integers modulo n, e.g. Z12
        | "F"int            field of prime-power order, e.g. F4 (= GF(2^2))
        | "GF("int")"       same as Fq
        | "Z"int"[x]/("poly")"   univariate quotient, e.g. Z3[x]/(x^2)
        | "@"name           packaged catalog ring (see `zdcodes catalog`)
        | "table:"path      table-ring spec file
  poly := term ("+" term)*;  term := int | int"*"?"x"("^"int)? | "x"("^"int)?
Products associate left and keep the factor order, e.g. "Z2 x Z8"."""

GRAPH_SPECS = """\
graph targets: path:n cycle:n complete:n kmn:m,n star:n corona:path:n
               fig1 (8-vertex built-in fixture) file:<graph.json>
anything else is read as a ring expression"""

ENV_HELP = "\n".join(f"  {k}: {v}" for k, v in config.ENV_VARS.items())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config.set_override(None)
    if args.config:
        try:
            config.set_override(
                config.Settings().merged_with_file(args.config).merged_with_env()
            )
        except (OSError, ValueError) as exc:
            print(f"error: bad config file: {exc}", file=sys.stderr)
            return 1
    try:
        return args.func(args)
    except (ringexpr.ParseError, ringexpr.ResolveError, RingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        config.set_override(None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zdcodes",
        description="Zero-divisor graphs and total perfect codes, with exact cross-validation.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"{RING_GRAMMAR}\n\nenvironment overrides:\n{ENV_HELP}\n\n"
        "exit codes: 0 success/consensus, 1 usage or input error, 2 unexpected discrepancy",
    )
    parser.add_argument("--config", help="JSON file with cap overrides", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "ring-info",
        help="order, units, zero-divisors and structure flags of a ring",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=RING_GRAMMAR,
    )
    p.add_argument("ring")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ring_info)

    p = sub.add_parser(
        "zdg-export",
        help="export the zero-divisor graph of a ring",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=RING_GRAMMAR,
    )
    p.add_argument("ring")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=cmd_zdg_export)

    p = sub.add_parser(
        "tpc-decide",
        help="run every applicable decider on a ring or graph and report consensus",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=GRAPH_SPECS + "\n\n" + RING_GRAMMAR,
    )
    p.add_argument("target")
    p.add_argument("--json", action="store_true")
    p.add_argument("--bound", type=int, default=None, help="exact-search vertex bound override")
    p.set_defaults(func=cmd_tpc_decide)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES) + ["all"])
    p.add_argument("--max-n", type=int, default=None, help="paths/cycles/zn-sweep upper bound")
    p.add_argument("--max-order", type=int, default=512, help="mixed-products order bound")
    p.add_argument("--samples", type=int, default=1000, help="trees: random tree count")
    p.add_argument("--traces", type=int, default=500, help="trees: family trace count")
    p.add_argument("--probe-max", type=int, default=9, help="trees: reduction probe bound")
    p.add_argument("--seed", type=int, default=suites.DEFAULT_TREE_SEED)
    p.add_argument(
        "--jobs",
        type=int,
        default=0,
        help="worker processes for sweep suites (0 = one per processor)",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tree-gen", help="grow a tree from a build trace or a random seed")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--trace", help="JSON file: {\"initial\": n, \"steps\": [{op,v,n?,k?}]}")
    group.add_argument(
        "--random", nargs=2, type=int, metavar=("SEED", "BUDGET"), help="seeded random build"
    )
    p.add_argument("-o", "--output", default=None, help="write the tree JSON to a file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tree_gen)

    p = sub.add_parser("catalog", help="list the packaged table-ring fixtures")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    return parser


# -- commands --------------------------------------------------------------------


def cmd_ring_info(args) -> int:
    ring = ringexpr.ring_from_text(args.ring)
    zdivs = sorted(ring.zero_divisors_nonzero)
    ann_sizes: dict[int, int] = {}
    for x in zdivs:
        s = len(ring.annihilator(x))
        ann_sizes[s] = ann_sizes.get(s, 0) + 1
    info = {
        "ring": ring.name,
        "order": ring.order,
        "units": ring.num_units,
        "nonzero_zero_divisors": len(zdivs),
        "local": ring.is_local,
        "reduced": ring.is_reduced,
        "field": ring.is_field,
        "annihilator_size_histogram": {str(k): v for k, v in sorted(ann_sizes.items())},
    }
    if args.json:
        print(json.dumps(info, indent=2, sort_keys=True))
        return 0
    print(f"ring {info['ring']}: order {info['order']}")
    print(f"  units: {info['units']}   |Z*|: {info['nonzero_zero_divisors']}")
    print(
        f"  local: {info['local']}   reduced: {info['reduced']}   field: {info['field']}"
    )
    if ann_sizes:
        hist = ", ".join(f"|ann|={k}: {v}" for k, v in sorted(ann_sizes.items()))
        print(f"  annihilator sizes over Z*: {hist}")
    return 0


def cmd_zdg_export(args) -> int:
    ring = ringexpr.ring_from_text(args.ring)
    z = zdg.zero_divisor_graph(ring)
    text = graphs.to_dot(z.graph) if args.format == "dot" else graphs.to_json(z.graph)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _parse_graph_target(target: str) -> tuple[graphs.Graph, dict] | None:
    if target == "fig1":
        return fixture_graph8(), {}
    head, _, rest = target.partition(":")
    try:
        if head == "path":
            return make_path(int(rest)), {}
        if head == "cycle":
            return make_cycle(int(rest)), {}
        if head == "complete":
            return make_complete(int(rest)), {}
        if head == "kmn":
            m, n = (int(t) for t in rest.split(","))
            return make_complete_bipartite(m, n), {"m": m, "n": n}
        if head == "star":
            return make_star(int(rest)), {"m": 1, "n": int(rest)}
        if head == "corona" and rest.startswith("path:"):
            return trees.corona(make_path(int(rest.split(":")[1])), make_complete(1)), {}
        if head == "file":
            with open(rest, "r", encoding="utf-8") as fh:
                return graphs.from_json(fh.read(), name=rest), {}
    except (ValueError, OSError) as exc:
        raise ValueError(f"bad graph target {target!r}: {exc}") from exc
    return None


def _graph_deciders(target: str, g: graphs.Graph, meta: dict, bound: int | None) -> list[dict]:
    out = []
    head = target.split(":")[0]
    exact = find_tpc(g, bound=bound if bound is not None else max(64, g.n))
    if head == "path":
        n = g.n
        code = path_code(n) if path_decider(n) else None
        out.append({"id": "path-congruence", "admits": path_decider(n), "witness": code})
    elif head == "cycle":
        n = g.n
        code = cycle_code(n) if cycle_decider(n) else None
        out.append({"id": "cycle-congruence", "admits": cycle_decider(n), "witness": code})
    elif head == "complete":
        out.append({"id": "complete-size", "admits": complete_decider(g.n), "witness": None})
    elif head in ("kmn", "star"):
        code = complete_bipartite_code(meta["m"], meta["n"])
        out.append({"id": "complete-bipartite-construction", "admits": True, "witness": code})
    elif head == "fig1":
        known = frozenset({0, 1, 6, 7})
        out.append(
            {
                "id": "fixture-code",
                "admits": is_total_perfect_code(g, known),
                "witness": known,
            }
        )
    if g.is_tree():
        code = tree_tpc(g)
        out.append({"id": "tree-solver", "admits": code is not None, "witness": code})
    parity = regular_parity_check(g)
    if parity is not None:
        out.append({"id": "regular-parity", "admits": parity, "witness": None})
    out.append({"id": "exact-search", "admits": exact is not None, "witness": exact})
    for d in out:
        if d["witness"] is not None:
            d["witness"] = sorted(d["witness"])
    return out


def cmd_tpc_decide(args) -> int:
    parsed = _parse_graph_target(args.target)
    if parsed is not None:
        g, meta = parsed
        deciders = _graph_deciders(args.target, g, meta, args.bound)
        answers = {d["admits"] for d in deciders}
        consensus = len(answers) == 1
        witness = next((d["witness"] for d in deciders if d["admits"] and d["witness"]), None)
        result = {
            "target": args.target,
            "admits": deciders[-1]["admits"],
            "witness": witness,
            "deciders": deciders,
            "consensus": consensus,
        }
        if args.json:
            print(json.dumps(result, indent=2, sort_keys=True))
        else:
            for d in deciders:
                w = f" witness {d['witness']}" if d["witness"] else ""
                print(f"  {d['id']}: {'admits' if d['admits'] else 'no code'}{w}")
            verdictline = "admits" if result["admits"] else "does not admit"
            print(
                f"{args.target}: {verdictline} "
                f"({'consensus' if consensus else 'DISCREPANCY'})"
            )
        return 0 if consensus else 2
    return _decide_ring(args)


def _decide_ring(args) -> int:
    ring = ringexpr.ring_from_text(args.target)
    z = zdg.zero_divisor_graph(ring)
    bound = args.bound if args.bound is not None else max(config.current().solver_bound, 64)
    deciders: list[dict] = []
    if z.graph.n == 0:
        deciders.append(
            {"id": "field-vacuous", "admits": True, "witness": [], "note": "empty graph"}
        )
    else:
        pair = zdg.tpc_pair_solver(z)
        deciders.append(
            {
                "id": "exact-pair",
                "admits": pair is not None,
                "witness": sorted(ring.element_name(x) for x in pair) if pair else None,
            }
        )
        split = zdg.artinian_split(ring)
        if split is not None:
            locals_, fields_ = split
            verdict = zdg.mixed_decider(locals_, fields_)
            deciders.append(
                {
                    "id": "structural:" + "+".join(d.decider_id for d in verdict.deciders),
                    "admits": verdict.admits,
                    "witness": list(verdict.witness_names) if verdict.witness_names else None,
                    "note": "witness in decomposed coordinates" if verdict.witness_names else None,
                }
            )
        if z.graph.n <= bound:
            exact = zdg.ring_code_exact(z, bound=bound)
            deciders.append(
                {
                    "id": "exact-search",
                    "admits": exact is not None,
                    "witness": sorted(ring.element_name(x) for x in exact) if exact else None,
                }
            )
    answers = {d["admits"] for d in deciders}
    consensus = len(answers) == 1
    admits = deciders[0]["admits"]
    witness = next((d["witness"] for d in deciders if d["admits"] and d.get("witness")), None)
    result = {
        "ring": ring.name,
        "admits": admits,
        "witness": witness,
        "deciders": deciders,
        "consensus": consensus,
        "vertices": z.graph.n,
    }
    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        for d in deciders:
            w = f" witness {d['witness']}" if d.get("witness") else ""
            print(f"  {d['id']}: {'admits' if d['admits'] else 'no code'}{w}")
        print(
            f"{ring.name}: {'admits' if admits else 'does not admit'} "
            f"({'consensus' if consensus else 'DISCREPANCY'})"
        )
    return 0 if consensus else 2


def cmd_verify(args) -> int:
    names = sorted(suites.SUITES) if args.suite == "all" else [args.suite]
    worst = 0
    reports = []
    for name in names:
        fn = suites.SUITES[name]
        kwargs = {}
        if name in ("paths", "cycles") and args.max_n:
            kwargs["max_n"] = args.max_n
        if name == "zn-sweep":
            if args.max_n:
                kwargs["max_n"] = args.max_n
            kwargs["jobs"] = args.jobs
        if name == "mixed-products":
            kwargs["max_order"] = args.max_order
            kwargs["jobs"] = args.jobs
        if name == "trees":
            kwargs.update(
                samples=args.samples,
                traces=args.traces,
                probe_max=args.probe_max,
                seed=args.seed,
            )
        rep = fn(**kwargs)
        reports.append(rep)
        worst = max(worst, rep.exit_code())
    if args.json:
        print(json.dumps([r.to_obj() for r in reports], indent=2, sort_keys=True))
    else:
        for rep in reports:
            print(rep.render_text())
    return worst


def cmd_tree_gen(args) -> int:
    if args.trace:
        with open(args.trace, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        initial, steps = trees.BuildTrace.obj_steps(obj)
        try:
            trace = trees.generate_family_T(initial, steps)
        except trees.StepPreconditionError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except trees.FamilyTraceFinding as exc:
            print(f"finding: {exc}", file=sys.stderr)
            print(json.dumps(exc.trace_obj, indent=2, sort_keys=True), file=sys.stderr)
            return 2
    else:
        seed, budget = args.random
        trace = trees.random_family_T(seed, budget)
    g = trace.graph
    code = tree_tpc(g)
    text = graphs.to_json(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    result = {
        "trace": trace.to_obj(),
        "vertices": g.n,
        "admits": code is not None,
        "code": sorted(code) if code is not None else None,
    }
    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        if not args.output:
            sys.stdout.write(text)
        print(
            f"tree on {g.n} vertices: "
            f"{'admits ' + str(sorted(code)) if code is not None else 'no code'}"
        )
    return 0


def cmd_catalog(args) -> int:
    rows = []
    for slug in tables.catalog_names():
        spec = tables.load_catalog_spec(slug)
        rows.append(
            {
                "slug": slug,
                "ring": spec.name,
                "order": int.__mul__(*spec.moduli) if len(spec.moduli) == 2 else _prod(spec.moduli),
                "exceptional": slug in tables.EXCEPTIONAL_SEVEN,
            }
        )
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for r in rows:
            star = " (exceptional)" if r["exceptional"] else ""
            print(f"  @{r['slug']:26s} {r['ring']} order {r['order']}{star}")
    return 0


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


if __name__ == "__main__":
    sys.exit(main())
