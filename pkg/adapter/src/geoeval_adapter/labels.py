"""Generative stratum labels: prompt a VLM per image, emit labels JSONL.

Unlike the prediction path (where raw text passes through untouched), the
labeller's answers must land in the engine's structured import format, so
this module does parse the response. A response that cannot be reduced to
a valid (urban_rural, biome) pair aborts the run naming the sample:
consensus filtering needs every labeller to cover every sample.
"""

from __future__ import annotations

import json
from pathlib import Path

from .backends import VlmBackend
from .formats import AdapterError, ManifestRow, read_prompt_bank, write_jsonl
from .predict import resolve_image
from .prompts import render_label_prompt


def _extract_labels(text: str, biome_names: list[str]) -> tuple[str, str]:
    decoder = json.JSONDecoder()
    start = text.find("{")
    while start != -1:
        try:
            obj, _ = decoder.raw_decode(text, start)
        except json.JSONDecodeError:
            obj = None
        if isinstance(obj, dict) and "urban_rural" in obj and "biome" in obj:
            urban_rural = str(obj["urban_rural"]).strip().lower()
            biome = str(obj["biome"]).strip()
            if urban_rural in ("urban", "rural") and biome in biome_names:
                return urban_rural, biome
        start = text.find("{", start + 1)
    raise AdapterError(f"no valid label object in response: {text[:120]!r}")


def run_stratum_labels(
    rows: list[ManifestRow],
    image_root: str | Path,
    backend: VlmBackend,
    labeller_tag: str,
    bank_path: str | Path,
    out_path: str | Path,
) -> Path:
    image_root = Path(image_root)
    _, biomes = read_prompt_bank(bank_path)
    biome_names = [name for name, _ in biomes]
    prompt = render_label_prompt(biome_names)
    records = []
    for row in rows:
        image = resolve_image(image_root, row.sample_id)
        try:
            response = backend.generate(image, prompt)
            urban_rural, biome = _extract_labels(response, biome_names)
        except AdapterError as exc:
            raise AdapterError(f"labelling failed for sample_id {row.sample_id!r}: {exc}") from None
        records.append(
            {
                "sample_id": row.sample_id,
                "labeller": labeller_tag,
                "urban_rural": urban_rural,
                "biome": biome,
            }
        )
    write_jsonl(records, out_path)
    return Path(out_path)
