"""Run a VLM backend over a manifest and emit raw predictions JSONL.

The adapter never parses or normalizes model output: the verbatim text
goes into raw_output and normalization stays the engine's job. A backend
failure on one image records an empty raw_output plus an error field and
the run continues (the engine scores that sample incorrect). Requests run
with a bounded number in flight; output is written in manifest order.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .backends import VlmBackend
from .formats import AdapterError, ManifestRow, label_space_of, write_jsonl
from .prompts import PromptTemplate


def resolve_image(image_root: Path, sample_id: str) -> Path:
    path = image_root / sample_id
    if not path.is_file():
        raise AdapterError(f"image for sample_id {sample_id!r} not found at {path}")
    return path


def run_predictions(
    rows: list[ManifestRow],
    image_root: str | Path,
    backend: VlmBackend,
    model_tag: str,
    setting: str,
    out_path: str | Path,
    label_order: str = "manifest",
    max_in_flight: int = 4,
) -> Path:
    image_root = Path(image_root)
    out_path = Path(out_path)
    if setting not in ("unconstrained", "constrained"):
        raise AdapterError(f"unknown setting {setting!r}")
    labels = label_space_of(rows, order=label_order) if setting == "constrained" else None
    prompt = PromptTemplate.for_setting(setting).render(labels)

    def ask(row: ManifestRow) -> tuple[str, str | None]:
        try:
            return backend.generate(resolve_image(image_root, row.sample_id), prompt), None
        except Exception as exc:  # one bad sample must not kill the run
            return "", str(exc)

    with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
        results = list(pool.map(ask, rows))

    records = []
    for row, (raw_output, error) in zip(rows, results):
        record = {
            "sample_id": row.sample_id,
            "model": model_tag,
            "setting": setting,
            "raw_output": raw_output,
        }
        if error is not None:
            record["error"] = error
        records.append(record)
    write_jsonl(records, out_path)

    meta = {
        "backend": backend.name,
        "model": model_tag,
        "setting": setting,
        "decoding": "greedy",
        "label_order": label_order if setting == "constrained" else None,
        "n_labels": len(labels) if labels else None,
        "n_samples": len(rows),
        "n_failures": sum(1 for _, err in results if err is not None),
    }
    Path(str(out_path) + ".meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return out_path
