"""Command-line interface: gen | summarize | describe | matrix | tree.

JSON is the interchange format throughout; trees are additionally written
as Graphviz DOT. Exit codes: 0 success, 1 internal or convergence error,
2 usage or input error. All randomness flows through --seed, and repeated
runs with identical flags and inputs produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import align, generate, similarity
from .errors import GraphSimError, InputError, ParseError
from .graph import load_alignment, load_edge_list, save_edge_list
from .structures import (
    StructureKind,
    model_from_json,
    model_to_json,
    structure_to_json,
)
from .summarize import SummarizerConfig, summarize

GRAPH_SUFFIXES = (".txt", ".edges", ".edgelist", ".tsv")


def _write_json(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_graph(path):
    if not os.path.exists(path):
        raise InputError(f"no such file: {path}")
    return load_edge_list(path)


def _config_from_args(args) -> SummarizerConfig:
    values = {}
    config_path = getattr(args, "config", None)
    if config_path:
        if not os.path.exists(config_path):
            raise InputError(f"no such config file: {config_path}")
        with open(config_path, "r", encoding="utf-8") as fh:
            values.update(json.load(fh))
    overrides = {
        "min_component_size": getattr(args, "min_size", None),
        "max_structures": getattr(args, "max_structures", None),
        "max_rejections": getattr(args, "max_rejections", None),
        "merge_overlap": getattr(args, "merge_overlap", None),
        "rejection_mode": getattr(args, "rejection_mode", None),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return SummarizerConfig(**values)
    except TypeError as exc:
        raise InputError(f"bad config: {exc}") from None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _parse_plant_spec(text: str) -> generate.PlantSpec:
    try:
        kind_name, _, size_text = text.partition(":")
        kind = StructureKind(kind_name)
        sizes = tuple(int(tok) for tok in size_text.split("x"))
    except ValueError:
        raise InputError(
            f"bad --spec {text!r}; expected kind:size or kind:leftxright"
        ) from None
    expected = 2 if kind in (StructureKind.BICLIQUE, StructureKind.STARCLIQUE) else 1
    if len(sizes) != expected:
        raise InputError(f"--spec {text!r} needs {expected} size value(s)")
    return generate.PlantSpec(kind, sizes)


def cmd_gen(args) -> int:
    if args.model == "er":
        g = generate.er(args.n, args.p, args.seed)
        truth = []
    elif args.model == "ba":
        g = generate.ba(args.n, args.k, args.seed)
        truth = []
    else:
        specs = [_parse_plant_spec(s) for s in args.spec or []]
        if not specs:
            raise InputError("plant needs at least one --spec")
        g, truth = generate.plant(args.n, args.noise, specs, args.seed)
    save_edge_list(g, args.out)
    if args.truth:
        _write_json(args.truth, [structure_to_json(s) for s in truth])
    print(f"wrote {args.out}: n={g.n} m={g.m}")
    return 0


def cmd_summarize(args) -> int:
    g = _load_graph(args.graph)
    cfg = _config_from_args(args)
    model, report = summarize(g, cfg)
    payload = model_to_json(model, ledger=report.ledger)
    payload["report"] = {
        k: v for k, v in report.to_json().items() if k != "ledger"
    }
    payload["labels"] = g.labels
    if args.out:
        _write_json(args.out, payload)
    print(
        f"{args.graph}: |S|={report.accepted} "
        f"total={report.total_bits:.1f} bits "
        f"(baseline {report.baseline_bits:.1f}) L%={report.compression_pct:.1f}"
    )
    return 0


def _summarize_for(path, graph, cfg, cache_dir):
    return similarity.summarize_cached(graph, cfg, cache_dir)


def cmd_describe(args) -> int:
    g1, g2 = _load_graph(args.graph1), _load_graph(args.graph2)
    cfg = _config_from_args(args)
    cache_dir = similarity.cache_directory(args.cache)
    alignment = None
    if args.alignment:
        if not os.path.exists(args.alignment):
            raise InputError(f"no such file: {args.alignment}")
        alignment = load_alignment(args.alignment, g1, g2)

    def model_and_bits(path, graph, override):
        if override:
            with open(override, "r", encoding="utf-8") as fh:
                model = model_from_json(json.load(fh))
            from . import maxent

            state = maxent.fit(maxent.build_constraints(graph, model))
            return model, maxent.data_length(graph, state)
        return similarity.summarize_cached(graph, cfg, cache_dir)

    model1, data1 = model_and_bits(args.graph1, g1, args.model1)
    model2, data2 = model_and_bits(args.graph2, g2, args.model2)
    names = (os.path.basename(args.graph1), os.path.basename(args.graph2))
    desc = align.describe(
        g1, g2, alignment, model1, model2,
        data_bits=(data1, data2), no_overlap=args.no_overlap, names=names,
    )
    result = similarity.nmd(desc)
    payload = desc.to_json()
    payload["lengths"]["nmd"] = result.value
    payload["lengths"]["nmd_clamped"] = result.clamped
    if args.out:
        _write_json(args.out, payload)
    if args.trees:
        s1, s2 = desc.model1.structures, desc.model2.structures
        trees = {
            "tree1": align.overlap_tree(s1),
            "tree2": align.overlap_tree(s2),
        }
        if desc.matching:
            trees["common"] = align.common_overlap_tree(desc.matching, s1, s2)
        for tag, tree in trees.items():
            with open(f"{args.trees}.{tag}.dot", "w", encoding="utf-8") as fh:
                fh.write(align.tree_to_dot(tree, name=tag))
            _write_json(f"{args.trees}.{tag}.json", tree)

    census: dict = {k.value: 0 for k in StructureKind}
    for cs in desc.common.shared:
        census[cs.kind.value] += 1
    print(f"{desc.header['graph1']} vs {desc.header['graph2']}:")
    shared_text = ", ".join(f"{v} {k}" for k, v in census.items() if v) or "none"
    print(f"  shared structures: {shared_text}")
    print(f"  specific to {desc.header['graph1']}: {len(desc.transform.unmatched_1)}")
    print(f"  specific to {desc.header['graph2']}: {len(desc.transform.unmatched_2)}")
    print(f"  objective: {desc.lengths['objective']:.1f} bits")
    print(f"  NMD: {result.value:.4f}" + (" (clamped)" if result.clamped else ""))
    return 0


def cmd_matrix(args) -> int:
    if not os.path.isdir(args.directory):
        raise InputError(f"no such directory: {args.directory}")
    paths = sorted(
        os.path.join(args.directory, name)
        for name in os.listdir(args.directory)
        if name.endswith(GRAPH_SUFFIXES)
    )
    if len(paths) < 2:
        raise InputError("matrix needs at least 2 graph files")
    collection = [
        (os.path.splitext(os.path.basename(p))[0], _load_graph(p)) for p in paths
    ]
    cfg = _config_from_args(args)
    result = similarity.pairwise_matrix(
        collection,
        cfg=cfg,
        cache_dir=similarity.cache_directory(args.cache),
        jobs=args.jobs,
    )
    with open(f"{args.out}.csv", "w", encoding="utf-8") as fh:
        fh.write(result.to_csv())
    _write_json(f"{args.out}.json", result.to_json())
    print(f"wrote {args.out}.csv and {args.out}.json "
          f"({len(collection)} graphs, {len(result.results)} pairs)")
    return 0


def cmd_tree(args) -> int:
    if not os.path.exists(args.input):
        raise InputError(f"no such file: {args.input}")
    with open(args.input, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if args.common:
        if "shared" not in payload:
            raise InputError("--common expects a describe JSON")
        raise InputError(
            "common trees are emitted by `describe --trees`; "
            "pass a model JSON here instead"
        )
    model = model_from_json(payload)
    tree = align.overlap_tree(model.structures)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(align.tree_to_dot(tree))
    if args.json:
        _write_json(args.json, tree)
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_config_flags(parser) -> None:
    parser.add_argument("--config", help="JSON file with summarizer settings")
    parser.add_argument("--min-size", type=int, dest="min_size",
                        help="minimum component/structure size")
    parser.add_argument("--max-structures", type=int, dest="max_structures")
    parser.add_argument("--max-rejections", type=int, dest="max_rejections")
    parser.add_argument("--merge-overlap", type=float, dest="merge_overlap")
    parser.add_argument("--rejection-mode", choices=("total", "consecutive"),
                        dest="rejection_mode")
    parser.add_argument("--cache", help="model cache directory "
                        "(default: $GRAPHSIM_CACHE)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphsim",
        description="MDL graph summaries, common models, and the NMD",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate synthetic graphs")
    gen.add_argument("model", choices=("er", "ba", "plant"))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=0.01, help="ER edge probability")
    gen.add_argument("--k", type=int, default=2, help="BA attachment count")
    gen.add_argument("--noise", type=float, default=0.0,
                     help="plant background edge probability")
    gen.add_argument("--spec", action="append",
                     help="plant structure, e.g. clique:30 or biclique:8x12")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--truth", help="write planted ground truth JSON here")
    gen.set_defaults(func=cmd_gen)

    summ = sub.add_parser("summarize", help="discover a structure summary")
    summ.add_argument("graph")
    summ.add_argument("--out", help="model JSON output path")
    _add_config_flags(summ)
    summ.set_defaults(func=cmd_summarize)

    desc = sub.add_parser("describe", help="compare two graphs")
    desc.add_argument("graph1")
    desc.add_argument("graph2")
    desc.add_argument("--alignment", help="node alignment file")
    desc.add_argument("--model1", help="precomputed model JSON for graph1")
    desc.add_argument("--model2", help="precomputed model JSON for graph2")
    desc.add_argument("--out", help="description JSON output path")
    desc.add_argument("--trees", help="prefix for DOT/JSON overlap trees")
    desc.add_argument("--no-overlap", action="store_true",
                      help="skip the product-graph matching phase")
    _add_config_flags(desc)
    desc.set_defaults(func=cmd_describe)

    mat = sub.add_parser("matrix", help="pairwise NMD matrix over a directory")
    mat.add_argument("directory")
    mat.add_argument("--out", default="nmd", help="output prefix")
    mat.add_argument("--jobs", type=int, default=1)
    _add_config_flags(mat)
    mat.set_defaults(func=cmd_matrix)

    tree = sub.add_parser("tree", help="node overlap tree from a model JSON")
    tree.add_argument("input")
    tree.add_argument("--out", default="tree.dot")
    tree.add_argument("--json", help="also write the tree as JSON")
    tree.add_argument("--common", action="store_true")
    tree.set_defaults(func=cmd_tree)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GraphSimError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
