"""Top-1 / Top-5 accuracy over normalized predictions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import GeoEvalError
from .manifest import SampleRecord
from .registry import CountryId


@dataclass(frozen=True)
class AccuracyResult:
    top1: float
    top5: float
    n_samples: int
    n_empty: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.top1 <= self.top5 <= 1.0:
            raise GeoEvalError(
                f"accuracy out of order: top1={self.top1}, top5={self.top5}"
            )
        if self.n_empty > self.n_samples:
            raise GeoEvalError("n_empty exceeds n_samples")


def evaluate(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
) -> AccuracyResult:
    """Score samples against a sample_id -> ranked-countries map.

    An empty prediction list counts as incorrect; a *missing* sample_id is
    a hard error so pipeline bugs cannot masquerade as empty model output.
    """
    if not samples:
        raise GeoEvalError("cannot evaluate accuracy over zero samples")
    hit1 = hit5 = empty = 0
    for sample in samples:
        try:
            ranked = predictions[sample.sample_id]
        except KeyError:
            raise GeoEvalError(
                f"no prediction entry for sample_id {sample.sample_id!r}"
            ) from None
        if len(ranked) == 0:
            empty += 1
            continue
        if ranked[0] == sample.country:
            hit1 += 1
        if sample.country in ranked:
            hit5 += 1
    n = len(samples)
    return AccuracyResult(top1=hit1 / n, top5=hit5 / n, n_samples=n, n_empty=empty)


def per_country(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
) -> dict[CountryId, AccuracyResult]:
    """Accuracy grouped by ground-truth country (for group-wise report tables)."""
    groups: dict[CountryId, list[SampleRecord]] = {}
    for sample in samples:
        groups.setdefault(sample.country, []).append(sample)
    return {
        country: evaluate(group, predictions)
        for country, group in sorted(groups.items(), key=lambda kv: kv[0].code)
    }
