#!/usr/bin/env python3
"""Geographic Error Reasonableness on synthetic embedding clusters.

Two visually-similar countries (their images share an embedding cluster)
and one distant country. A model that confuses the similar pair makes
"reasonable" errors: the predicted country shows up among the query's
nearest neighbors. Arbitrary errors find no such support.
"""

import numpy as np

from geoeval import (
    CountryId,
    EmbeddingMatrix,
    SampleRecord,
    aggregate_encoders,
    ger,
    knn,
    l2_normalize,
)

rng = np.random.default_rng(20)
singapore = CountryId("SG", "Singapore")
malaysia = CountryId("MY", "Malaysia")
brazil = CountryId("BR", "Brazil")

# 10 Singapore + 10 Malaysia images in one tight "shared cityscape" cluster,
# 10 Brazil images far away.
def cluster(center, n, spread=0.05):
    return center + spread * rng.standard_normal((n, 16))

city_center = np.zeros(16); city_center[0] = 1.0
brazil_center = np.zeros(16); brazil_center[1] = 1.0
vectors = np.vstack([
    cluster(city_center, 10), cluster(city_center, 10), cluster(brazil_center, 10),
]).astype(np.float32)

samples = (
    [SampleRecord(f"sg{i}", singapore, "demo") for i in range(10)]
    + [SampleRecord(f"my{i}", malaysia, "demo") for i in range(10)]
    + [SampleRecord(f"br{i}", brazil, "demo") for i in range(10)]
)
matrix = l2_normalize(EmbeddingMatrix(
    ids=tuple(s.sample_id for s in samples), vectors=vectors,
))

# the model gets every Malaysia image wrong: half "Singapore" (reasonable,
# the clusters overlap), half "Brazil" (arbitrary)
predictions = {s.sample_id: [s.country] for s in samples}
for i in range(10):
    predictions[f"my{i}"] = [singapore if i < 5 else brazil]

neighbors = knn(matrix, k=5)
result = ger(samples, predictions, neighbors, tau=2, encoder="toy-encoder")
print(f"errors: {result.n_errors}")
print(f"GER-Weak  (>=1 supporting neighbor): {result.ger_weak:.2%}")
print(f"GER-Strong (>={result.tau} supporting neighbors): {result.ger_strong:.2%}")

# a second encoder sees the same structure a little differently
vectors_b = vectors + 0.02 * rng.standard_normal(vectors.shape).astype(np.float32)
matrix_b = l2_normalize(EmbeddingMatrix(ids=matrix.ids, vectors=vectors_b))
result_b = ger(samples, predictions, knn(matrix_b, k=5), tau=2, encoder="toy-encoder-b")

agg = aggregate_encoders([result, result_b])
print(f"\nacross encoders: GER-W {agg.weak_mean:.2%} +- {agg.weak_std:.2%}, "
      f"GER-S {agg.strong_mean:.2%} +- {agg.strong_std:.2%}")
