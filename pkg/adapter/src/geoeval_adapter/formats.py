"""The engine's wire formats, written independently on this side of the fence.

The adapter talks to the evaluation engine only through files: manifest
CSV in, predictions/labels JSONL and GEMB embedding matrices out. These
writers implement the published formats directly rather than importing the
engine, so the formats stay an actual contract (the engine's loaders
verify every byte in the contract tests).
"""

from __future__ import annotations

import csv
import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

GEMB_MAGIC = b"GEMB"
GEMB_VERSION = 1
_GEMB_HEADER = struct.Struct("<4sIIQ")

MANIFEST_HEADER = ["sample_id", "country", "dataset"]


class AdapterError(Exception):
    pass


@dataclass(frozen=True)
class ManifestRow:
    sample_id: str
    country: str
    dataset: str


def read_manifest(path: str | Path) -> list[ManifestRow]:
    """Read a manifest CSV, preserving row order."""
    path = Path(path)
    if not path.is_file():
        raise AdapterError(f"manifest not found: {path}")
    rows: list[ManifestRow] = []
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != MANIFEST_HEADER:
            raise AdapterError(f"{path}: bad header {header!r}")
        for row in reader:
            if len(row) != 3:
                raise AdapterError(f"{path}: bad row {row!r}")
            rows.append(ManifestRow(*row))
    if not rows:
        raise AdapterError(f"{path}: no data rows")
    return rows


def label_space_of(rows: list[ManifestRow], order: str = "manifest") -> list[str]:
    """Distinct country labels of a manifest.

    order="manifest" keeps first-appearance order (the default the engine
    run is told about); order="sorted" is alphabetical. Constrained-setting
    results are sensitive to this ordering, so it is recorded in run
    metadata.
    """
    seen: dict[str, None] = {}
    for row in rows:
        seen.setdefault(row.country)
    labels = list(seen)
    if order == "sorted":
        return sorted(labels)
    if order == "manifest":
        return labels
    raise AdapterError(f"unknown label order {order!r}")


def write_gemb(vectors: np.ndarray, ids: list[str], path: str | Path, ids_path: str | Path) -> None:
    """Write a GEMB matrix plus its id sidecar (float32 LE, row-major)."""
    vectors = np.ascontiguousarray(vectors, dtype="<f4")
    if vectors.ndim != 2:
        raise AdapterError(f"embedding matrix must be 2-D, got {vectors.shape}")
    if len(ids) != vectors.shape[0]:
        raise AdapterError(f"{len(ids)} ids for {vectors.shape[0]} rows")
    if not np.isfinite(vectors).all():
        raise AdapterError("refusing to write non-finite embeddings")
    with Path(path).open("wb") as fh:
        fh.write(_GEMB_HEADER.pack(GEMB_MAGIC, GEMB_VERSION, vectors.shape[1], vectors.shape[0]))
        fh.write(vectors.tobytes())
    Path(ids_path).write_text("".join(f"{i}\n" for i in ids), encoding="utf-8")


def write_jsonl(rows, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def read_prompt_bank(path: str | Path) -> tuple[list[str], list[tuple[str, str]]]:
    """Returns (urban_rural prompts, [(biome name, prompt), ...])."""
    path = Path(path)
    if not path.is_file():
        raise AdapterError(f"prompt bank not found: {path}")
    data = json.loads(path.read_text(encoding="utf-8"))
    urban_rural = list(data["urban_rural"])
    biomes = [(b["name"], b["prompt"]) for b in data["biomes"]]
    if len(urban_rural) != 2 or len(biomes) != 6:
        raise AdapterError(f"{path}: prompt bank must have 2 urban/rural and 6 biome prompts")
    return urban_rural, biomes
