"""Exact cosine k-nearest-neighbor search over embedding matrices.

Brute-force but blocked: query rows are processed in blocks against the
whole matrix (never materializing the N x N similarity matrix), each
block's top-k is selected with tie-aware handling, and results merge into
output order. Exactness matters because downstream metrics are published
numbers: no approximate indexing, and ties in similarity break by
ascending sample_id so results are reproducible bit-for-bit regardless
of block size or worker count.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GeoEvalError
from .gemb import EmbeddingMatrix

_NORM_TOLERANCE = 1e-12
_DEFAULT_BLOCK_BYTES = 64 * 1024 * 1024


def worker_count() -> int:
    """Worker cap from GEOEVAL_THREADS, defaulting to the CPU count."""
    env = os.environ.get("GEOEVAL_THREADS")
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            raise GeoEvalError(f"GEOEVAL_THREADS={env!r} is not an integer") from None
        if n < 1:
            raise GeoEvalError("GEOEVAL_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def l2_normalize(matrix: EmbeddingMatrix, block_rows: int = 8192) -> EmbeddingMatrix:
    """Scale every row to unit Euclidean norm.

    Norms are accumulated in float64 (blocked) and a row with norm below
    1e-12 is a hard error naming its sample_id.
    """
    out = np.empty_like(matrix.vectors)
    for start in range(0, matrix.n, block_rows):
        block = matrix.vectors[start:start + block_rows]
        norms = np.sqrt(np.einsum("ij,ij->i", block.astype(np.float64), block.astype(np.float64)))
        bad = np.flatnonzero(norms <= _NORM_TOLERANCE)
        if bad.size:
            raise GeoEvalError(
                f"zero-norm embedding row for sample_id {matrix.ids[start + int(bad[0])]!r}"
            )
        out[start:start + block_rows] = (block / norms[:, None]).astype(np.float32)
    return EmbeddingMatrix(ids=matrix.ids, vectors=out)


@dataclass(frozen=True)
class NeighborList:
    """Ranked neighbors of one query row, self excluded."""

    query_id: str
    neighbors: tuple[tuple[str, float], ...]


def _topk_row(sims: np.ndarray, ids: np.ndarray, k: int) -> list[tuple[int, float]]:
    """Exact tie-aware top-k of one similarity row: by sim desc, then id asc."""
    n = sims.shape[0]
    kth = np.partition(sims, n - k)[n - k]
    cand = np.flatnonzero(sims >= kth)
    order = np.lexsort((ids[cand], -sims[cand]))
    chosen = cand[order[:k]]
    return [(int(j), float(sims[j])) for j in chosen]


def _knn_block(
    vectors: np.ndarray, ids: np.ndarray, start: int, stop: int, k: int
) -> list[list[tuple[int, float]]]:
    sims = vectors[start:stop] @ vectors.T
    for local in range(stop - start):
        sims[local, start + local] = -np.inf
    return [_topk_row(sims[local], ids, k) for local in range(stop - start)]


def knn(
    matrix: EmbeddingMatrix,
    k: int,
    block_rows: int | None = None,
    workers: int | None = None,
) -> list[NeighborList]:
    """Exact top-k neighbors by dot product for every row of a normalized matrix.

    Results are in input row order and independent of block size and
    worker count. Requires N > k >= 1.
    """
    if k < 1:
        raise GeoEvalError(f"k must be >= 1, got {k}")
    if matrix.n <= k:
        raise GeoEvalError(f"need more rows than k: N={matrix.n}, k={k}")
    if block_rows is None:
        block_rows = max(1, min(matrix.n, _DEFAULT_BLOCK_BYTES // (matrix.n * 4)))
    ids = np.asarray(matrix.ids)
    starts = list(range(0, matrix.n, block_rows))
    if workers is None:
        workers = worker_count()

    def run(start: int) -> list[list[tuple[int, float]]]:
        return _knn_block(matrix.vectors, ids, start, min(start + block_rows, matrix.n), k)

    if workers == 1 or len(starts) == 1:
        blocks = [run(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(run, starts))

    out: list[NeighborList] = []
    for block_start, block in zip(starts, blocks):
        for local, picks in enumerate(block):
            out.append(
                NeighborList(
                    query_id=matrix.ids[block_start + local],
                    neighbors=tuple((matrix.ids[j], sim) for j, sim in picks),
                )
            )
    return out


def write_neighbor_cache(neighbor_lists: list[NeighborList], path: str | Path) -> None:
    """Persist neighbor lists as JSONL so GER reruns can skip the kernel."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for nl in neighbor_lists:
            fh.write(
                json.dumps(
                    {"query": nl.query_id, "neighbors": [[i, s] for i, s in nl.neighbors]}
                )
                + "\n"
            )


def load_neighbor_cache(path: str | Path) -> list[NeighborList]:
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"neighbor cache not found: {path}")
    out: list[NeighborList] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                out.append(
                    NeighborList(
                        query_id=str(rec["query"]),
                        neighbors=tuple((str(i), float(s)) for i, s in rec["neighbors"]),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise GeoEvalError(f"{path}:{lineno}: bad neighbor cache line: {exc}") from None
    if not out:
        raise GeoEvalError(f"{path}: empty neighbor cache")
    return out
