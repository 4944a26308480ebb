"""Stratified evaluation subsets: per-country floors plus proportional remainder.

Every country gets min(min_per_country, available) samples; what remains of
the target is split over the leftover availability with largest-remainder
rounding, so the quota total hits the target exactly. Fractional-part
comparisons use exact integer arithmetic and all ties break
deterministically, making a plan a pure function of its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import GeoEvalError
from .manifest import SampleRecord
from .registry import CountryId


@dataclass(frozen=True)
class SamplingPlan:
    target_total: int
    min_per_country: int
    seed: int
    quotas: dict[CountryId, int]

    @property
    def total(self) -> int:
        return sum(self.quotas.values())


def plan(
    population: Sequence[SampleRecord],
    target_total: int,
    min_per_country: int = 20,
    seed: int = 0,
) -> SamplingPlan:
    """Allocate per-country quotas for a stratified subset.

    Phase 1 gives each country min(min_per_country, available); phase 2
    spreads the remaining budget proportionally to leftover availability
    (largest-remainder rounding; ties by descending availability, then
    code). A target below the phase-1 floor is a hard error.
    """
    if not population:
        raise GeoEvalError("empty population")
    if min_per_country < 0:
        raise GeoEvalError(f"min_per_country must be >= 0, got {min_per_country}")
    available: dict[CountryId, int] = {}
    for record in population:
        available[record.country] = available.get(record.country, 0) + 1
    countries = sorted(available, key=lambda c: c.code)

    base = {c: min(min_per_country, available[c]) for c in countries}
    floor_total = sum(base.values())
    if target_total < floor_total:
        raise GeoEvalError(
            f"target_total {target_total} is below the per-country floor {floor_total}"
        )
    effective = min(target_total, len(population))
    remainder = effective - floor_total

    leftover = {c: available[c] - base[c] for c in countries}
    leftover_total = sum(leftover.values())
    extra = {c: 0 for c in countries}
    if remainder > 0 and leftover_total > 0:
        # quota share of country c is remainder * leftover[c] / leftover_total;
        # floor it, then hand out the shortfall by largest exact fractional part.
        shortfall = remainder
        fractions: list[tuple[int, int, str]] = []
        for c in countries:
            numerator = remainder * leftover[c]
            extra[c] = numerator // leftover_total
            shortfall -= extra[c]
            fractions.append((numerator % leftover_total, available[c], c.code))
        order = sorted(
            range(len(countries)),
            key=lambda i: (-fractions[i][0], -fractions[i][1], fractions[i][2]),
        )
        for i in order[:shortfall]:
            extra[countries[i]] += 1

    quotas = {c: base[c] + extra[c] for c in countries}
    return SamplingPlan(
        target_total=target_total, min_per_country=min_per_country, seed=seed, quotas=quotas
    )


def draw(population: Sequence[SampleRecord], sampling_plan: SamplingPlan) -> list[SampleRecord]:
    """Materialize a plan by seeded per-country sampling without replacement.

    The per-country generator is keyed by (seed, country code), so a draw
    is reproducible and independent of manifest row order. Output is
    sorted by sample_id.
    """
    groups: dict[CountryId, list[SampleRecord]] = {}
    for record in population:
        groups.setdefault(record.country, []).append(record)
    if set(groups) != set(sampling_plan.quotas):
        raise GeoEvalError("plan/population mismatch: country sets differ")
    chosen: list[SampleRecord] = []
    for country in sorted(groups, key=lambda c: c.code):
        members = sorted(groups[country], key=lambda r: r.sample_id)
        quota = sampling_plan.quotas[country]
        if quota > len(members):
            raise GeoEvalError(
                f"plan/population mismatch: quota {quota} > available "
                f"{len(members)} for {country.code}"
            )
        code_key = int.from_bytes(country.code.encode("ascii"), "big")
        rng = np.random.default_rng([sampling_plan.seed, code_key])
        picks = rng.choice(len(members), size=quota, replace=False)
        chosen.extend(members[int(i)] for i in picks)
    return sorted(chosen, key=lambda r: r.sample_id)


def write_plan(sampling_plan: SamplingPlan, path: str | Path) -> None:
    """Write the plan audit JSON."""
    payload = {
        "target_total": sampling_plan.target_total,
        "min_per_country": sampling_plan.min_per_country,
        "seed": sampling_plan.seed,
        "total": sampling_plan.total,
        "quotas": {c.code: q for c, q in sorted(sampling_plan.quotas.items(), key=lambda kv: kv[0].code)},
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
