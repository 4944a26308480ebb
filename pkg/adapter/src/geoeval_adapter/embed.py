"""Emit GEMB embedding files for manifest images and prompt banks.

Image rows are written in manifest order (the engine checks row alignment
against the manifest). An unreadable image aborts the run naming its
sample_id: neighbor metrics need a complete matrix, so a silent gap would
poison every neighborhood.
"""

from __future__ import annotations

from pathlib import Path

from .encoders import ImageTextEncoder
from .formats import AdapterError, ManifestRow, read_prompt_bank, write_gemb
from .predict import resolve_image


def run_embeddings(
    rows: list[ManifestRow],
    image_root: str | Path,
    encoder: ImageTextEncoder,
    out_path: str | Path,
    ids_path: str | Path | None = None,
    batch_size: int = 64,
) -> Path:
    image_root = Path(image_root)
    out_path = Path(out_path)
    ids_path = Path(ids_path) if ids_path else Path(str(out_path) + ".ids")
    paths = []
    for row in rows:
        try:
            paths.append(resolve_image(image_root, row.sample_id))
        except AdapterError:
            raise
        except OSError as exc:
            raise AdapterError(f"unreadable image for sample_id {row.sample_id!r}: {exc}") from None
    chunks = []
    for start in range(0, len(paths), batch_size):
        batch = paths[start:start + batch_size]
        try:
            chunks.append(encoder.embed_images(batch))
        except AdapterError:
            raise
        except Exception as exc:
            failed = rows[start].sample_id
            raise AdapterError(
                f"encoder failed on batch starting at sample_id {failed!r}: {exc}"
            ) from None
    import numpy as np

    matrix = np.concatenate(chunks, axis=0)
    write_gemb(matrix, [r.sample_id for r in rows], out_path, ids_path)
    return out_path


def run_prompt_embeddings(
    bank_path: str | Path,
    encoder: ImageTextEncoder,
    out_dir: str | Path,
    tag: str,
) -> tuple[Path, Path]:
    """Embed the prompt bank into the two prompt GEMB files.

    The urban/rural file carries ids ("urban", "rural"); the biome file
    carries the six biome names, rows in bank order, matching what the
    engine validates against its prompt bank.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    urban_rural, biomes = read_prompt_bank(bank_path)

    ur_path = out_dir / f"prompts_ur_{tag}.gemb"
    write_gemb(
        encoder.embed_texts(urban_rural), ["urban", "rural"],
        ur_path, Path(str(ur_path) + ".ids"),
    )
    biome_path = out_dir / f"prompts_biome_{tag}.gemb"
    write_gemb(
        encoder.embed_texts([prompt for _, prompt in biomes]),
        [name for name, _ in biomes],
        biome_path, Path(str(biome_path) + ".ids"),
    )
    return ur_path, biome_path
