"""geoeval-adapter: produce engine inputs from models and encoders."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .backends import make_backend
from .embed import run_embeddings, run_prompt_embeddings
from .encoders import make_encoder
from .formats import AdapterError, label_space_of, read_manifest, read_prompt_bank
from .labels import run_stratum_labels
from .predict import run_predictions


def _cmd_predict(args: argparse.Namespace) -> int:
    rows = read_manifest(args.manifest)
    candidates = (
        label_space_of(rows, order=args.label_order)
        if args.setting == "constrained"
        else None
    )
    backend = make_backend(args.backend, candidates=candidates)
    run_predictions(
        rows, args.image_root, backend,
        model_tag=args.model_tag, setting=args.setting,
        out_path=args.out, label_order=args.label_order,
        max_in_flight=args.max_in_flight,
    )
    print(f"wrote {args.out}")
    return 0


def _cmd_embed(args: argparse.Namespace) -> int:
    rows = read_manifest(args.manifest)
    encoder = make_encoder(args.encoder, dim=args.dim)
    run_embeddings(rows, args.image_root, encoder, args.out, args.ids)
    print(f"wrote {args.out}")
    return 0


def _cmd_prompt_embed(args: argparse.Namespace) -> int:
    encoder = make_encoder(args.encoder, dim=args.dim)
    tag = args.tag or encoder.name
    ur_path, biome_path = run_prompt_embeddings(args.prompt_bank, encoder, args.out_dir, tag)
    print(f"wrote {ur_path} and {biome_path}")
    return 0


def _cmd_label(args: argparse.Namespace) -> int:
    rows = read_manifest(args.manifest)
    _, biomes = read_prompt_bank(args.prompt_bank)
    backend = make_backend(args.backend, biomes=[name for name, _ in biomes])
    run_stratum_labels(
        rows, args.image_root, backend,
        labeller_tag=args.labeller_tag, bank_path=args.prompt_bank, out_path=args.out,
    )
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoeval-adapter",
        description="Run VLM backends and encoders to produce geoeval inputs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="emit raw predictions JSONL for one setting")
    p.add_argument("--manifest", required=True)
    p.add_argument("--image-root", required=True)
    p.add_argument("--backend", default="stub", help="'stub' or 'hf:<model_id>'")
    p.add_argument("--model-tag", required=True, help="model name recorded in the output")
    p.add_argument("--setting", choices=("unconstrained", "constrained"), required=True)
    p.add_argument("--label-order", choices=("manifest", "sorted"), default="manifest")
    p.add_argument("--max-in-flight", type=int, default=4)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_predict)

    p = sub.add_parser("embed", help="emit a GEMB matrix for the manifest images")
    p.add_argument("--manifest", required=True)
    p.add_argument("--image-root", required=True)
    p.add_argument("--encoder", default="hash", help="'hash', 'clip', 'siglip', or 'hf:<id>'")
    p.add_argument("--dim", type=int, default=512, help="dimension for the hash encoder")
    p.add_argument("--out", required=True)
    p.add_argument("--ids", help="ids sidecar path (default: <out>.ids)")
    p.set_defaults(handler=_cmd_embed)

    p = sub.add_parser("prompt-embed", help="emit prompt-bank GEMB files for one encoder")
    p.add_argument("--prompt-bank", required=True)
    p.add_argument("--encoder", default="hash")
    p.add_argument("--dim", type=int, default=512)
    p.add_argument("--tag", help="filename tag (default: encoder name)")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(handler=_cmd_prompt_embed)

    p = sub.add_parser("label", help="emit generative stratum labels JSONL")
    p.add_argument("--manifest", required=True)
    p.add_argument("--image-root", required=True)
    p.add_argument("--backend", default="stub")
    p.add_argument("--labeller-tag", required=True)
    p.add_argument("--prompt-bank", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_label)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except AdapterError as exc:
        print(f"geoeval-adapter: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
