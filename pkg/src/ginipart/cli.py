"""Command-line front end; every subcommand prints one JSON document on stdout.

Exit codes: 0 success, 1 domain or input error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import hardness
from .bench import run_bench
from .dataset import InstanceDocument, ingest_csv
from .impurity import (
    ContractViolation,
    DomainError,
    entropy_impurity,
    gini_impurity,
    singleton_cost,
    weighted_gini,
)
from .reduction import (
    common_norm,
    gini_gap_identity,
    gini_gap_printed_factor,
    merge_identical,
    normalize,
    squared_spread,
)
from .solvers import PtasConfig, solve_brute_force, solve_lloyd, solve_ptas

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _load(args) -> InstanceDocument:
    path = Path(args.instance)
    if not path.exists():
        raise DomainError(f"{path}: no such file")
    if path.suffix.lower() == ".csv":
        if not (args.attribute and args.class_column):
            raise UsageError("CSV input needs --attribute and --class-column")
        doc = ingest_csv(path, args.attribute, args.class_column, k=getattr(args, "k", None))
    else:
        doc = InstanceDocument.load(path)
        if getattr(args, "k", None) is not None:
            doc.k = args.k
    doc.instance()
    return doc


def cmd_ingest(args) -> dict:
    doc = ingest_csv(args.csv, args.attribute, args.class_column, k=args.k)
    doc.instance()
    if args.out:
        Path(args.out).write_text(doc.to_json() + "\n", encoding="utf-8")
    return doc.to_dict()


def cmd_impurity(args) -> dict:
    doc = _load(args)
    total = doc.vectors.sum(axis=0)
    return {
        "values": [
            {
                "value": name,
                "counts": v.tolist(),
                "gini": gini_impurity(v),
                "entropy": entropy_impurity(v, base2=args.base2),
                "weighted_gini": weighted_gini(v),
            }
            for name, v in zip(doc.values, doc.vectors)
        ],
        "total": {
            "counts": total.tolist(),
            "gini": gini_impurity(total),
            "entropy": entropy_impurity(total, base2=args.base2),
            "weighted_gini": weighted_gini(total),
        },
        "sum_weighted_gini": singleton_cost(doc.instance()),
        "entropy_base": 2 if args.base2 else "e",
    }


def cmd_solve(args) -> dict:
    doc = _load(args)
    inst = doc.instance()
    if args.solver == "brute":
        res = solve_brute_force(inst)
    elif args.solver == "lloyd":
        res = solve_lloyd(inst, seed=args.seed, restarts=args.restarts, threads=args.threads)
    else:
        res = solve_ptas(
            inst,
            PtasConfig(epsilon=args.epsilon, boost_rounds=args.rounds, rng_seed=args.seed, threads=args.threads),
        )
    groups = [[doc.values[i] for i in np.flatnonzero(res.assignment == g)] for g in range(inst.k)]
    return {
        "instance": {"n": inst.n, "d": inst.d, "k": inst.k, "classes": doc.classes, "values": doc.values},
        "solver": res.solver_name,
        "seed": res.seed,
        "assignment": res.assignment.tolist(),
        "groups": groups,
        "objective1": res.objective1,
        "objective2": res.objective2,
        "iterations": res.iterations,
        "wall_time_ms": round(res.wall_time * 1000.0, 3) if args.timing else None,
    }


def cmd_reduce(args) -> dict:
    doc = _load(args)
    km = normalize(doc.instance())
    if args.merge:
        km, _ = merge_identical(km)
    return km.to_dict()


def _parse_vectors(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in chunk.split(",")] for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise UsageError(f"--vectors expects e.g. '1,1;2,0', got {text!r}") from None


def cmd_verify_identity(args) -> dict:
    if args.vectors:
        vecs = _parse_vectors(args.vectors)
    elif args.instance:
        vecs = _load(args).vectors.tolist()
    else:
        raise UsageError("give an instance file or --vectors")
    L = common_norm(vecs)
    lhs, rhs = gini_gap_identity(vecs)
    _, printed = gini_gap_printed_factor(vecs)
    return {
        "norm": L,
        "size": len(vecs),
        "gini_gap": lhs,
        "squared_spread": squared_spread(vecs),
        "corrected": {"factor": f"1/{L}", "rhs": rhs, "gap": abs(lhs - rhs), "holds": abs(lhs - rhs) <= args.tol},
        "printed": {"factor": str(L), "rhs": printed, "gap": abs(lhs - printed), "holds": abs(lhs - printed) <= args.tol},
    }


def cmd_hardness(args) -> dict:
    if args.hardness_cmd == "gen":
        if args.preset:
            try:
                a, b = (int(x) for x in args.preset.split(","))
            except ValueError:
                raise UsageError("--bipartite expects 'a,b'") from None
            g = hardness.complete_bipartite(a, b)
        else:
            g = hardness.generate_triangle_free(args.seed, args.vertices, args.p)
        text = hardness.write_edge_list(g)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        out = {"num_vertices": g.num_vertices, "num_edges": g.num_edges, "edges": [list(e) for e in g.edges], "edge_list": text}
        if g.num_edges:
            k = args.k if args.k is not None else hardness.min_vertex_cover(g)[0]
            hi = hardness.build_hardness_instance(g, k)
            out["instance"] = InstanceDocument(
                hi.vectors.vectors,
                k,
                [f"v{i + 1}" for i in range(g.num_vertices)],
                [f"e{u + 1}-{v + 1}" for u, v in g.edges],
            ).to_dict()
        return out
    path = Path(args.graph)
    if not path.exists():
        raise DomainError(f"{path}: no such file")
    report = hardness.check_cover_bound(hardness.read_edge_list(path))
    if not report.ok:
        raise DomainError(f"cover bound check failed: {json.dumps(report.to_dict())}")
    return report.to_dict()


def cmd_bench(args) -> dict:
    solvers = [s for s in args.solvers.split(",") if s]
    for s in solvers:
        if s not in ("lloyd", "ptas", "brute"):
            raise UsageError(f"unknown solver {s!r}")
    k_choices = tuple(int(x) for x in args.k_values.split(","))
    result = run_bench(
        seed=args.seed,
        trials=args.trials,
        solvers=solvers,
        epsilon=args.epsilon,
        rounds=args.rounds,
        restarts=args.restarts,
        threads=args.threads,
        n_range=(3, args.max_n),
        d_range=(2, args.max_d),
        count_max=args.max_count,
        k_choices=k_choices,
    )
    if not args.rows:
        result.pop("rows")
    return result


def _add_input(p, with_k=True):
    p.add_argument("instance", help="instance JSON, or CSV together with --attribute/--class-column")
    p.add_argument("--attribute", help="CSV column holding the nominal attribute")
    p.add_argument("--class-column", help="CSV column holding the class label")
    if with_k:
        p.add_argument("--k", type=int, help="number of groups (overrides the instance file)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ginipart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("ingest", help="CSV -> instance JSON")
    p.add_argument("csv")
    p.add_argument("--attribute", required=True)
    p.add_argument("--class-column", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--out", help="also write the document to this file")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("impurity", help="per-value and whole-instance Gini/entropy")
    _add_input(p)
    p.add_argument("--base2", action="store_true", help="entropy in bits")
    p.set_defaults(func=cmd_impurity)

    p = sub.add_parser("solve", help="minimum weighted-Gini partition")
    _add_input(p)
    p.add_argument("--solver", choices=("brute", "lloyd", "ptas"), default="lloyd")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--rounds", type=int, default=20)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="report wall_time_ms (otherwise null, keeping output reproducible)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="weighted k-means instance of the normalized vectors")
    _add_input(p)
    p.add_argument("--merge", action="store_true", help="fold identical normalized points")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-identity", help="gap identity on a set of vectors sharing one l1 norm")
    p.add_argument("instance", nargs="?")
    p.add_argument("--attribute")
    p.add_argument("--class-column")
    p.add_argument("--vectors", help="inline vectors, e.g. '1,1;2,0'")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify_identity)

    p = sub.add_parser("hardness", help="vertex-cover reduction instances")
    hsub = p.add_subparsers(dest="hardness_cmd", required=True)
    g = hsub.add_parser("gen", help="generate a triangle-free graph and its edge vectors")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--vertices", type=int, default=6)
    g.add_argument("--p", type=float, default=0.4, help="edge probability")
    g.add_argument("--bipartite", dest="preset", help="complete bipartite preset 'a,b'")
    g.add_argument("--k", type=int, help="group count (default: minimum vertex cover size)")
    g.add_argument("--out", help="write the edge list to this file")
    g.set_defaults(func=cmd_hardness)
    c = hsub.add_parser("check", help="check the |E|-k cost bound on an edge-list graph")
    c.add_argument("graph")
    c.set_defaults(func=cmd_hardness)

    p = sub.add_parser("bench", help="solver/oracle ratio table on a seeded random corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--solvers", default="lloyd,ptas")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--rounds", type=int, default=20)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--max-d", type=int, default=4)
    p.add_argument("--max-count", type=int, default=30)
    p.add_argument("--k-values", default="2,3")
    p.add_argument("--rows", action="store_true", help="include per-instance rows")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        _emit(args.func(args))
    except UsageError as exc:
        print(f"ginipart: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        print(f"ginipart: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, OSError, UnicodeDecodeError) as exc:
        print(f"ginipart: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
