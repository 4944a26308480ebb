"""Geographic Error Reasonableness over incorrect Top-1 predictions.

An incorrect prediction is "visually justified" when the predicted country
appears among the ground-truth countries of the query's K nearest visual
neighbors: at least once for the weak score, at least tau times (default 2)
for the strong score. Both are fractions of the incorrect predictions only.
Samples whose normalized prediction list is empty are incorrect for
accuracy but carry no concrete predicted country to justify, so they are
excluded from the error set here and counted separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import math

from .errors import GeoEvalError
from .knn import NeighborList
from .manifest import SampleRecord
from .registry import CountryId

DEFAULT_TAU = 2


@dataclass(frozen=True)
class GerResult:
    """Weak/strong scores for one encoder's neighborhoods.

    Scores are None (undefined) when there are no errors to justify,
    never 0.
    """

    encoder: str
    ger_weak: float | None
    ger_strong: float | None
    n_errors: int
    tau: int
    k: int
    n_empty_excluded: int = 0

    def __post_init__(self) -> None:
        if (self.n_errors > 0) != (self.ger_weak is not None):
            raise GeoEvalError("GER defined iff n_errors > 0")
        if self.ger_weak is not None and self.ger_strong is not None:
            if self.ger_strong > self.ger_weak + 1e-12:
                raise GeoEvalError("ger_strong cannot exceed ger_weak")

    @property
    def defined(self) -> bool:
        return self.n_errors > 0


def justification_count(
    prediction: CountryId,
    neighbors: NeighborList,
    gt_lookup: Mapping[str, CountryId],
) -> int:
    """Number of neighbors whose ground-truth country equals the prediction."""
    count = 0
    for neighbor_id, _ in neighbors.neighbors:
        try:
            neighbor_gt = gt_lookup[neighbor_id]
        except KeyError:
            raise GeoEvalError(
                f"neighbor sample_id {neighbor_id!r} has no ground-truth entry"
            ) from None
        if neighbor_gt == prediction:
            count += 1
    return count


def _error_set(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
) -> tuple[list[tuple[SampleRecord, CountryId]], int]:
    """Samples with a concrete wrong Top-1, plus the empty-prediction count."""
    errors: list[tuple[SampleRecord, CountryId]] = []
    n_empty = 0
    for sample in samples:
        try:
            ranked = predictions[sample.sample_id]
        except KeyError:
            raise GeoEvalError(
                f"no prediction entry for sample_id {sample.sample_id!r}"
            ) from None
        if len(ranked) == 0:
            n_empty += 1
        elif ranked[0] != sample.country:
            errors.append((sample, ranked[0]))
    return errors, n_empty


def ger(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
    neighbor_lists: Sequence[NeighborList],
    tau: int = DEFAULT_TAU,
    encoder: str = "",
) -> GerResult:
    """Compute weak/strong scores for one encoder's neighbor lists."""
    if tau < 1:
        raise GeoEvalError(f"tau must be >= 1, got {tau}")
    by_query = {nl.query_id: nl for nl in neighbor_lists}
    k_values = {len(nl.neighbors) for nl in neighbor_lists}
    if len(k_values) != 1:
        raise GeoEvalError(f"inconsistent neighbor list lengths: {sorted(k_values)}")
    k = k_values.pop()
    gt_lookup = {s.sample_id: s.country for s in samples}

    errors, n_empty = _error_set(samples, predictions)
    if not errors:
        return GerResult(
            encoder=encoder, ger_weak=None, ger_strong=None,
            n_errors=0, tau=tau, k=k, n_empty_excluded=n_empty,
        )
    weak = strong = 0
    for sample, predicted in errors:
        try:
            neighbors = by_query[sample.sample_id]
        except KeyError:
            raise GeoEvalError(
                f"no neighbor list for sample_id {sample.sample_id!r}"
            ) from None
        c = justification_count(predicted, neighbors, gt_lookup)
        if c >= 1:
            weak += 1
        if c >= tau:
            strong += 1
    n = len(errors)
    return GerResult(
        encoder=encoder, ger_weak=weak / n, ger_strong=strong / n,
        n_errors=n, tau=tau, k=k, n_empty_excluded=n_empty,
    )


def audit_rows(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
    neighbor_lists: Sequence[NeighborList],
    tau: int = DEFAULT_TAU,
) -> Iterator[dict]:
    """Per-error audit records for the JSONL sidecar."""
    by_query = {nl.query_id: nl for nl in neighbor_lists}
    gt_lookup = {s.sample_id: s.country for s in samples}
    errors, _ = _error_set(samples, predictions)
    for sample, predicted in errors:
        c = justification_count(predicted, by_query[sample.sample_id], gt_lookup)
        yield {
            "sample_id": sample.sample_id,
            "pred": predicted.code,
            "c": c,
            "justified_weak": c >= 1,
            "justified_strong": c >= tau,
        }


@dataclass(frozen=True)
class GerAggregate:
    """Mean and population std of weak/strong scores across encoders."""

    weak_mean: float | None
    weak_std: float | None
    strong_mean: float | None
    strong_std: float | None
    n_encoders: int
    tau: int
    k: int


def aggregate_encoders(results: Sequence[GerResult]) -> GerAggregate:
    """Cross-encoder mean +- population std (divide by n, not n-1)."""
    if len(results) < 2:
        raise GeoEvalError(f"need >= 2 encoder results to aggregate, got {len(results)}")
    taus = {r.tau for r in results}
    ks = {r.k for r in results}
    if len(taus) != 1 or len(ks) != 1:
        raise GeoEvalError(f"mixed tau {sorted(taus)} or k {sorted(ks)} in aggregation")
    defined = [r.defined for r in results]
    if not any(defined):
        return GerAggregate(None, None, None, None, len(results), taus.pop(), ks.pop())
    if not all(defined):
        raise GeoEvalError("cannot aggregate a mix of defined and undefined GER results")

    def mean_std(values: list[float]) -> tuple[float, float]:
        mean = sum(values) / len(values)
        var = sum((v - mean) ** 2 for v in values) / len(values)
        return mean, math.sqrt(var)

    weak_mean, weak_std = mean_std([r.ger_weak for r in results])  # type: ignore[misc]
    strong_mean, strong_std = mean_std([r.ger_strong for r in results])  # type: ignore[misc]
    return GerAggregate(
        weak_mean=weak_mean, weak_std=weak_std,
        strong_mean=strong_mean, strong_std=strong_std,
        n_encoders=len(results), tau=taus.pop(), k=ks.pop(),
    )
