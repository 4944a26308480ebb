"""GEMB binary embedding matrices with row-aligned id sidecars.

Layout: magic ``GEMB``, u32 LE version=1, u32 LE dim, u64 LE count,
then count*dim float32 LE row-major. The sidecar is UTF-8 text, one
sample_id per line, row-aligned.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GeoEvalError

MAGIC = b"GEMB"
VERSION = 1
_HEADER = struct.Struct("<4sIIQ")


@dataclass(frozen=True)
class EmbeddingMatrix:
    """N x D float32 matrix with row i bound to ids[i]."""

    ids: tuple[str, ...]
    vectors: np.ndarray

    def __post_init__(self) -> None:
        if self.vectors.ndim != 2:
            raise GeoEvalError(f"embedding matrix must be 2-D, got shape {self.vectors.shape}")
        if self.vectors.dtype != np.float32:
            raise GeoEvalError(f"embedding matrix must be float32, got {self.vectors.dtype}")
        if len(self.ids) != self.vectors.shape[0]:
            raise GeoEvalError(
                f"id/row count mismatch: {len(self.ids)} ids for {self.vectors.shape[0]} rows"
            )
        if len(set(self.ids)) != len(self.ids):
            raise GeoEvalError("duplicate sample_id in embedding matrix")

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def row_for(self, sample_id: str) -> np.ndarray:
        try:
            return self.vectors[self.ids.index(sample_id)]
        except ValueError:
            raise GeoEvalError(f"sample_id {sample_id!r} not in embedding matrix") from None


def load_embeddings(path: str | Path, ids_path: str | Path) -> EmbeddingMatrix:
    """Load a GEMB file plus its id sidecar, rejecting any malformed input."""
    path, ids_path = Path(path), Path(ids_path)
    if not path.is_file():
        raise GeoEvalError(f"embedding file not found: {path}")
    if not ids_path.is_file():
        raise GeoEvalError(f"embedding ids file not found: {ids_path}")
    blob = path.read_bytes()
    if len(blob) < _HEADER.size:
        raise GeoEvalError(f"{path}: truncated embedding header")
    magic, version, dim, count = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise GeoEvalError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise GeoEvalError(f"{path}: unsupported GEMB version {version}")
    if dim == 0 or count == 0:
        raise GeoEvalError(f"{path}: empty embedding file (dim={dim}, count={count})")
    payload = blob[_HEADER.size:]
    expected = count * dim * 4
    if len(payload) < expected:
        raise GeoEvalError(f"{path}: truncated embedding payload ({len(payload)} < {expected} bytes)")
    if len(payload) > expected:
        raise GeoEvalError(f"{path}: {len(payload) - expected} trailing bytes after payload")
    vectors = np.frombuffer(payload, dtype="<f4").reshape(count, dim).copy()
    if not np.isfinite(vectors).all():
        raise GeoEvalError(f"{path}: non-finite values in embedding payload")
    ids = ids_path.read_text(encoding="utf-8").splitlines()
    if len(ids) != count:
        raise GeoEvalError(
            f"{ids_path}: id/row count mismatch ({len(ids)} ids for count={count})"
        )
    if any(not i for i in ids):
        raise GeoEvalError(f"{ids_path}: blank sample_id line")
    return EmbeddingMatrix(ids=tuple(ids), vectors=vectors)


def write_embeddings(matrix: EmbeddingMatrix, path: str | Path, ids_path: str | Path) -> None:
    """Write a GEMB file and its id sidecar (bit-exact round-trip with load)."""
    path, ids_path = Path(path), Path(ids_path)
    with path.open("wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, matrix.dim, matrix.n))
        fh.write(np.ascontiguousarray(matrix.vectors, dtype="<f4").tobytes())
    ids_path.write_text("".join(f"{i}\n" for i in matrix.ids), encoding="utf-8")
