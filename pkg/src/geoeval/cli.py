"""Command-line interface.

Subcommands run the full evaluation or a single stage from a shared TOML
config; flags override config values. Exit codes: 0 success, 1 data or
validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import importlib.resources
import sys
from pathlib import Path

from . import __version__
from .config import RunConfig, apply_overrides, load_config
from .errors import GeoEvalError
from .geograph import build_graph, export_graph, load_edges
from .knn import load_neighbor_cache, write_neighbor_cache
from .manifest import load_manifest, write_manifest
from .registry import load_registry
from .report import ALL_STAGES, RunContext, _slug, run, run_pipeline
from .sampling import draw, plan, write_plan

_DATA = importlib.resources.files("geoeval") / "data"


def _packaged(name: str) -> Path:
    return Path(str(_DATA / name))


def _add_config_options(parser: argparse.ArgumentParser, tau: bool = False, k: bool = False) -> None:
    parser.add_argument("--config", required=True, help="TOML run config")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--strict-json", action="store_true", default=None,
                        help="whole raw output must be the JSON object")
    if tau:
        parser.add_argument("--tau", type=int, help="GER strong threshold (default from config)")
    if k:
        parser.add_argument("--k", type=int, help="neighborhood size (default from config)")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config)
    overrides = {}
    if args.out is not None:
        overrides["out"] = Path(args.out)
    if getattr(args, "strict_json", None) is not None:
        overrides["strict_json"] = args.strict_json
    if getattr(args, "tau", None) is not None:
        overrides["tau"] = args.tau
    if getattr(args, "k", None) is not None:
        overrides["k"] = args.k
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "target", None) is not None:
        overrides["target_total"] = args.target
    if getattr(args, "min", None) is not None:
        overrides["min_per_country"] = args.min
    return apply_overrides(config, **overrides)


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    report = run(config)
    print(f"report written to {config.out} (config {report.config_hash})")
    return 0


def _cmd_stage(stage: str):
    def handler(args: argparse.Namespace) -> int:
        config = _config_from_args(args)
        neighbor_cache = None
        if stage == "ger" and args.neighbors_dir is not None:
            neighbor_cache = {}
            for src in config.embeddings:
                cache_path = Path(args.neighbors_dir) / f"neighbors_{_slug(src.encoder)}.jsonl"
                neighbor_cache[src.encoder] = load_neighbor_cache(cache_path)
        run_pipeline(config, frozenset({stage}), neighbor_cache=neighbor_cache)
        print(f"{stage} outputs written to {config.out}")
        return 0

    return handler


def _cmd_sample(args: argparse.Namespace) -> int:
    if args.config:
        config = _config_from_args(args)
        manifest_path = config.manifest
        registry_path = config.registry
        out_dir = Path(config.out)
        target = config.target_total
        min_per = config.min_per_country
        seed = config.seed
    else:
        if not args.manifest:
            raise GeoEvalError("sample needs --config or --manifest")
        manifest_path = Path(args.manifest)
        registry_path = Path(args.registry) if args.registry else _packaged("registry.jsonl")
        out_dir = Path(args.out or "out")
        target = args.target if args.target is not None else 50000
        min_per = args.min if args.min is not None else 20
        seed = args.seed if args.seed is not None else 0
    registry = load_registry(registry_path)
    population, _ = load_manifest(manifest_path, registry)
    sampling_plan = plan(population, target_total=target, min_per_country=min_per, seed=seed)
    subset = draw(population, sampling_plan)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_manifest(subset, out_dir / "subset_manifest.csv")
    write_plan(sampling_plan, out_dir / "sampling_plan.json")
    print(f"subset of {len(subset)} samples written to {out_dir}")
    return 0


def _cmd_knn(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    config.validate(require_embeddings=True)
    ctx = RunContext(config)
    cache_dir = Path(args.cache_out) if args.cache_out else Path(config.out)
    cache_dir.mkdir(parents=True, exist_ok=True)
    for encoder, neighbor_lists in ctx.neighbor_lists().items():
        path = cache_dir / f"neighbors_{_slug(encoder)}.jsonl"
        write_neighbor_cache(neighbor_lists, path)
        print(f"wrote {path}")
    return 0


def _cmd_graph_export(args: argparse.Namespace) -> int:
    if args.config:
        config = load_config(args.config)
        registry_path = config.registry
        borders_path = config.border_edges
        specials_path = config.special_edges
        out_dir = Path(args.out or config.out)
    else:
        registry_path = Path(args.registry) if args.registry else _packaged("registry.jsonl")
        borders_path = Path(args.borders) if args.borders else _packaged("border_edges.csv")
        specials_path = Path(args.specials) if args.specials else _packaged("special_edges.csv")
        out_dir = Path(args.out or "out")
    registry = load_registry(registry_path)
    graph = build_graph(load_edges(borders_path), load_edges(specials_path), registry)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "graph.json"
    export_graph(graph, path)
    print(f"wrote {path} ({len(graph.nodes)} nodes, {len(graph.edges())} edges)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoeval",
        description="Evaluation engine for country-level image geolocalization.",
    )
    parser.add_argument("--version", action="version", version=f"geoeval {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="run the full metric pipeline")
    _add_config_options(p, tau=True, k=True)
    p.set_defaults(handler=_cmd_evaluate)

    for stage, help_text in (
        ("accuracy", "Top-1/Top-5 accuracy only"),
        ("hop", "border-hop error distribution only"),
        ("stratify", "urban/rural and biome stratification only"),
    ):
        p = sub.add_parser(stage, help=help_text)
        _add_config_options(p)
        p.set_defaults(handler=_cmd_stage(stage))

    p = sub.add_parser("ger", help="Geographic Error Reasonableness only")
    _add_config_options(p, tau=True, k=True)
    p.add_argument("--neighbors-dir", help="read neighbor caches instead of running k-NN")
    p.set_defaults(handler=_cmd_stage("ger"))

    p = sub.add_parser("sample", help="draw a stratified evaluation subset")
    p.add_argument("--config", help="TOML run config")
    p.add_argument("--manifest", help="population manifest CSV (alternative to --config)")
    p.add_argument("--registry", help="registry JSONL (default: packaged world registry)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--target", type=int, help="subset size")
    p.add_argument("--min", type=int, help="per-country floor")
    p.add_argument("--seed", type=int, help="sampling seed")
    p.add_argument("--strict-json", action="store_true", default=None, help=argparse.SUPPRESS)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("knn", help="run the k-NN kernel and cache neighbor lists")
    _add_config_options(p, k=True)
    p.add_argument("--cache-out", help="directory for neighbor caches (default: out dir)")
    p.set_defaults(handler=_cmd_knn)

    p = sub.add_parser("graph", help="country adjacency graph tools")
    graph_sub = p.add_subparsers(dest="graph_command", required=True)
    pg = graph_sub.add_parser("export", help="export the graph with provenance tags")
    pg.add_argument("--config", help="TOML run config")
    pg.add_argument("--registry", help="registry JSONL (default: packaged)")
    pg.add_argument("--borders", help="border edge CSV (default: packaged)")
    pg.add_argument("--specials", help="special edge CSV (default: packaged)")
    pg.add_argument("--out", help="output directory")
    pg.set_defaults(handler=_cmd_graph_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GeoEvalError as exc:
        print(f"geoeval: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
