#!/usr/bin/env python3
"""Regenerate the end-to-end fixture in tests/data/fixture12/.

Twelve samples over three countries (FR x5, ES x4, PT x3), one model in
both inference settings, two synthetic dim-8 encoders, and three
labellers (the two encoders zero-shot plus an imported generative one).

The embedding geometry is designed so every neighborhood is hand
checkable. Cluster centers are unit vectors with fixed pairwise dots:

  enc-alpha: FR.ES = 0.50, ES.PT = 0.55, FR.PT = 0.10
      -> FR neighbors {FR x4, ES x1}, ES {ES x3, PT x2}, PT {PT x2, ES x3}
  enc-beta:  FR.ES = 0.20, ES.PT = 0.50, FR.PT = 0.60
      -> FR neighbors {FR x4, PT x1}, ES {ES x3, PT x2}, PT {PT x2, FR x3}

Cluster members get a tiny unique perturbation on a spare axis so no two
similarities tie exactly; in-cluster similarity (~1.0) always dominates
the designed cross-cluster dots.

Usage: python tools/build_fixture12.py
"""

from __future__ import annotations

import json
import shutil
from pathlib import Path

import numpy as np

from geoeval import EmbeddingMatrix, write_embeddings

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "data" / "fixture12"

DIM = 8
SAMPLES = [  # (sample_id, country code), manifest order
    ("img01", "FR"), ("img02", "FR"), ("img03", "FR"), ("img04", "FR"), ("img05", "FR"),
    ("img06", "ES"), ("img07", "ES"), ("img08", "ES"), ("img09", "ES"),
    ("img10", "PT"), ("img11", "PT"), ("img12", "PT"),
]

REGISTRY = [
    {"code": "FR", "name": "France", "aliases": [], "lat": 46.23, "lon": 2.21, "island": False},
    {"code": "ES", "name": "Spain", "aliases": [], "lat": 40.46, "lon": -3.75, "island": False},
    {"code": "PT", "name": "Portugal", "aliases": [], "lat": 39.40, "lon": -8.22, "island": False},
    {"code": "IT", "name": "Italy", "aliases": [], "lat": 41.87, "lon": 12.57, "island": False},
    {"code": "DE", "name": "Germany", "aliases": [], "lat": 51.17, "lon": 10.45, "island": False},
    {"code": "MT", "name": "Malta", "aliases": [], "lat": 35.94, "lon": 14.38, "island": True},
]

BORDERS = [("FR", "ES"), ("ES", "PT"), ("FR", "IT"), ("FR", "DE")]

UNCONSTRAINED = [
    ("img01", '{"predictions": ["France", "Spain", "Portugal", "Italy", "Germany"]}'),
    ("img02", 'The scenery looks European to me. {"predictions": ["Spain", "France", "Portugal", "Italy", "Belgium"]}'),
    ("img03", '{"predictions": ["FRANCE", "france", "Spain", "Portugal", "Spain"]}'),
    ("img04", '{"answer": ["France"]}'),
    ("img05", 'France for sure!'),
    ("img06", '{"predictions": ["Spain", "Portugal", "France", "Andorra", "Morocco"]}'),
    ("img07", '{"predictions": ["Portugal", "Spain", "France", "Italy", "Malta"]}'),
    ("img08", '{"predictions": ["Narnia", "France", "Portugal", "Spain", "Italy", "Germany"]}'),
    ("img09", '{"predictions": []}'),
    ("img10", '{"predictions": ["Portugal", "Spain", "France", "Brazil", "Italy"]}'),
    ("img11", '{"predictions": ["France", "Spain", "Portugal"]}'),
    ("img12", 'I believe {"predictions": ["Spain", "Portugal", "France", "Morocco", "Andorra"]}'),
]

CONSTRAINED = [
    ("img01", '{"predictions": ["France", "Spain", "Portugal"]}'),
    ("img02", '{"predictions": ["France", "Portugal", "Spain"]}'),
    ("img03", '{"predictions": ["Spain", "France", "Portugal"]}'),
    ("img04", '{"predictions": ["France", "Spain", "Portugal"]}'),
    ("img05", '{"predictions": ["Portugal", "France", "Spain"]}'),
    ("img06", '{"predictions": ["Spain", "France", "Portugal"]}'),
    ("img07", '{"predictions": ["Spain", "Portugal", "France"]}'),
    ("img08", '{"predictions": ["France", "Spain", "Portugal"]}'),
    ("img09", '{"predictions": ["Spain", "Portugal", "France"]}'),
    ("img10", '{"predictions": ["Portugal", "Spain", "France"]}'),
    ("img11", '{"predictions": ["Spain", "Portugal", "France"]}'),
    ("img12", '{"predictions": ["Portugal", "Spain", "France"]}'),
]

# demo-llm labels: urban for FR x3 and all ES; img11 breaks biome consensus
LLM_LABELS = {
    "img01": ("urban", "Temperate"), "img02": ("urban", "Temperate"), "img03": ("urban", "Temperate"),
    "img04": ("rural", "Temperate"), "img05": ("rural", "Temperate"),
    "img06": ("urban", "Mediterranean"), "img07": ("urban", "Mediterranean"),
    "img08": ("urban", "Mediterranean"), "img09": ("urban", "Mediterranean"),
    "img10": ("rural", "Mediterranean"), "img11": ("rural", "Arid"), "img12": ("rural", "Mediterranean"),
}

BIOME_NAMES = ["Tropical", "Arid", "Temperate", "Mediterranean", "Tundra", "Boreal"]


def unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def axis(i: int, scale: float = 1.0) -> np.ndarray:
    v = np.zeros(DIM)
    v[i] = scale
    return v


def centers(fr_es: float, es_pt: float, fr_pt: float) -> dict[str, np.ndarray]:
    """Unit cluster centers on axes 0..2 with the given pairwise dots."""
    fr = axis(0)
    es = np.zeros(DIM)
    es[0] = fr_es
    es[1] = np.sqrt(1.0 - fr_es**2)
    pt = np.zeros(DIM)
    pt[0] = fr_pt
    pt[1] = (es_pt - fr_pt * fr_es) / es[1]
    pt[2] = np.sqrt(1.0 - pt[0] ** 2 - pt[1] ** 2)
    return {"FR": fr, "ES": es, "PT": pt}


def image_matrix(cluster_centers: dict[str, np.ndarray]) -> EmbeddingMatrix:
    rows = []
    member_index: dict[str, int] = {}
    for sid, code in SAMPLES:
        j = member_index.get(code, 0)
        member_index[code] = j + 1
        vec = unit(cluster_centers[code] + axis(5, 0.002 * (j + 1)))
        rows.append(vec)
    return EmbeddingMatrix(
        ids=tuple(sid for sid, _ in SAMPLES),
        vectors=np.asarray(rows, dtype=np.float32),
    )


def prompt_matrix(vectors: list[np.ndarray], ids: list[str]) -> EmbeddingMatrix:
    return EmbeddingMatrix(ids=tuple(ids), vectors=np.asarray(vectors, dtype=np.float32))


def write_jsonl(rows: list[dict], path: Path) -> None:
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8")


def main() -> None:
    if OUT.exists():
        shutil.rmtree(OUT)
    OUT.mkdir(parents=True)

    write_jsonl(REGISTRY, OUT / "registry.jsonl")
    (OUT / "border_edges.csv").write_text(
        "code_a,code_b\n" + "".join(f"{a},{b}\n" for a, b in BORDERS), encoding="utf-8"
    )
    (OUT / "special_edges.csv").write_text("code_a,code_b\n", encoding="utf-8")
    shutil.copy(ROOT / "src" / "geoeval" / "data" / "prompt_bank.json", OUT / "prompt_bank.json")

    (OUT / "manifest.csv").write_text(
        "sample_id,country,dataset\n"
        + "".join(f"{sid},{code},fixture12\n" for sid, code in SAMPLES),
        encoding="utf-8",
    )

    for setting, rows in (("unconstrained", UNCONSTRAINED), ("constrained", CONSTRAINED)):
        write_jsonl(
            [
                {"sample_id": sid, "model": "demo-vlm", "setting": setting, "raw_output": raw}
                for sid, raw in rows
            ],
            OUT / f"preds_demo-vlm_{setting}.jsonl",
        )

    write_jsonl(
        [
            {"sample_id": sid, "labeller": "demo-llm", "urban_rural": ur, "biome": biome}
            for sid, (ur, biome) in LLM_LABELS.items()
        ],
        OUT / "labels_demo-llm.jsonl",
    )

    # enc-alpha: urban prompt on the FR axis, rural on the ES axis;
    # biome prompts put Temperate on FR and Mediterranean on ES(+PT).
    alpha = centers(fr_es=0.50, es_pt=0.55, fr_pt=0.10)
    write_embeddings(image_matrix(alpha), OUT / "emb_enc-alpha.gemb", OUT / "emb_enc-alpha.gemb.ids")
    write_embeddings(
        prompt_matrix([axis(0), axis(1)], ["urban", "rural"]),
        OUT / "prompts_ur_enc-alpha.gemb", OUT / "prompts_ur_enc-alpha.gemb.ids",
    )
    alpha_biomes = [axis(4), axis(6), axis(0), axis(1), axis(7), unit(axis(4) + axis(6))]
    write_embeddings(
        prompt_matrix(alpha_biomes, BIOME_NAMES),
        OUT / "prompts_biome_enc-alpha.gemb", OUT / "prompts_biome_enc-alpha.gemb.ids",
    )

    # enc-beta: urban prompt on the ES axis; rural leans to PT's third axis
    # with a small FR component so FR is rural, not tied.
    beta = centers(fr_es=0.20, es_pt=0.50, fr_pt=0.60)
    write_embeddings(image_matrix(beta), OUT / "emb_enc-beta.gemb", OUT / "emb_enc-beta.gemb.ids")
    write_embeddings(
        prompt_matrix([axis(1), unit(axis(0, 0.1) + axis(2))], ["urban", "rural"]),
        OUT / "prompts_ur_enc-beta.gemb", OUT / "prompts_ur_enc-beta.gemb.ids",
    )
    beta_biomes = [axis(4), axis(6), axis(0), unit(axis(1, 0.7) + axis(2, 0.7141)), axis(7), unit(axis(4) + axis(7))]
    write_embeddings(
        prompt_matrix(beta_biomes, BIOME_NAMES),
        OUT / "prompts_biome_enc-beta.gemb", OUT / "prompts_biome_enc-beta.gemb.ids",
    )

    (OUT / "config.toml").write_text(
        """\
manifest = "manifest.csv"
registry = "registry.jsonl"
border_edges = "border_edges.csv"
special_edges = "special_edges.csv"
prompt_bank = "prompt_bank.json"
out = "out"
k = 5
tau = 2
seed = 7

[[predictions]]
model = "demo-vlm"
setting = "unconstrained"
path = "preds_demo-vlm_unconstrained.jsonl"

[[predictions]]
model = "demo-vlm"
setting = "constrained"
path = "preds_demo-vlm_constrained.jsonl"

[[embeddings]]
encoder = "enc-alpha"
path = "emb_enc-alpha.gemb"
prompt_urban_rural = "prompts_ur_enc-alpha.gemb"
prompt_biomes = "prompts_biome_enc-alpha.gemb"

[[embeddings]]
encoder = "enc-beta"
path = "emb_enc-beta.gemb"
prompt_urban_rural = "prompts_ur_enc-beta.gemb"
prompt_biomes = "prompts_biome_enc-beta.gemb"

[[labels]]
labeller = "demo-llm"
path = "labels_demo-llm.jsonl"
""",
        encoding="utf-8",
    )
    print(f"fixture written to {OUT}")


if __name__ == "__main__":
    main()
