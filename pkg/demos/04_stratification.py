#!/usr/bin/env python3
"""Zero-shot urban/rural + biome labelling, consensus, stratified accuracy.

Contrastive encoders label images by cosine similarity against text prompt
embeddings; a generative labeller's labels are imported from JSONL. Biome
results only use samples where all labellers agree (consensus filtering);
urban/rural keeps each labeller's partition and reports mean +- std.
"""

import numpy as np

from geoeval import (
    CountryId,
    EmbeddingMatrix,
    PromptBank,
    SampleRecord,
    StratumAssignment,
    assign_zero_shot,
    biome_table,
    l2_normalize,
    urban_rural_table,
)

rng = np.random.default_rng(4)
bank = PromptBank(
    urban_rural=("an urban city scene", "a rural countryside scene"),
    biomes=(
        ("Tropical", "a tropical rainforest or jungle scene"),
        ("Arid", "a dry desert or arid landscape"),
        ("Temperate", "a temperate forest or grassland scene"),
        ("Mediterranean", "a Mediterranean coastal or dry summer landscape"),
        ("Tundra", "a cold tundra, snow, or polar landscape"),
        ("Boreal", "a boreal forest or taiga with conifer trees"),
    ),
)

# synthetic world: axis 0 = urban-ness, axis 1 = arid-ness, axis 2 = temperate-ness
n = 30
urban_mask = rng.random(n) < 0.5
arid_mask = rng.random(n) < 0.5
vectors = 0.05 * rng.standard_normal((n, 8))
vectors[:, 0] += np.where(urban_mask, 1.0, -1.0)
vectors[:, 1] += np.where(arid_mask, 1.0, 0.0)
vectors[:, 2] += np.where(~arid_mask, 1.0, 0.0)

images = l2_normalize(EmbeddingMatrix(
    ids=tuple(f"img{i:02d}" for i in range(n)), vectors=vectors.astype(np.float32),
))

def prompt_rows(rows):
    return l2_normalize(EmbeddingMatrix(
        ids=tuple(f"p{i}" for i in range(len(rows))),
        vectors=np.asarray(rows, dtype=np.float32),
    )).vectors

ur_prompts = prompt_rows([[1, 0, 0, 0, 0, 0, 0, 0], [-1, 0, 0, 0, 0, 0, 0, 0]])
biome_prompts = prompt_rows([
    [0, 0, 0, 1, 0, 0, 0, 0],      # Tropical: nothing points here
    [0, 1, 0, 0, 0, 0, 0, 0],      # Arid
    [0, 0, 1, 0, 0, 0, 0, 0],      # Temperate
    [0, 0, 0, 0, 1, 0, 0, 0],      # Mediterranean
    [0, 0, 0, 0, 0, 1, 0, 0],      # Tundra
    [0, 0, 0, 0, 0, 0, 1, 0],      # Boreal
])

enc_a = assign_zero_shot("enc-a", images, ur_prompts, biome_prompts, bank)

# a second, noisier encoder and an imported generative labeller
noisy = l2_normalize(EmbeddingMatrix(
    ids=images.ids,
    vectors=(images.vectors + 0.15 * rng.standard_normal(images.vectors.shape)).astype(np.float32),
))
enc_b = assign_zero_shot("enc-b", noisy, ur_prompts, biome_prompts, bank)
llm = [
    StratumAssignment(
        sample_id=a.sample_id, labeller="llm",
        urban_rural=a.urban_rural, biome=a.biome,
    )
    for a in enc_a
]
assignments = enc_a + enc_b + llm

country_a, country_b = CountryId("AA", "Alphaland"), CountryId("BB", "Betaland")
samples = [
    SampleRecord(sid, country_a if urban_mask[i] else country_b, "demo")
    for i, sid in enumerate(images.ids)
]
# a model that is better on urban scenes
predictions = {
    s.sample_id: [s.country if (urban_mask[i] or rng.random() < 0.4) else country_a]
    for i, s in enumerate(samples)
}

table = urban_rural_table(samples, predictions, assignments)
print("urban/rural Top-1 across 3 labellers (mean +- population std):")
for stratum, agg in table.items():
    print(f"  {stratum:>5}: {agg.top1_mean:.2%} +- {agg.top1_std:.2%}")

biomes, consensus = biome_table(samples, predictions, assignments, bank)
print(f"\nbiome consensus retained {len(consensus)}/{n} samples:")
for name, cell in biomes.items():
    shown = f"{cell.top1:.2%}" if cell.top1 is not None else "n/a"
    print(f"  {name:>13}: n={cell.n:<3} Top-1 {shown}")
