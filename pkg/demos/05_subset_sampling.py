#!/usr/bin/env python3
"""Stratified evaluation subsets: per-country floor + proportional remainder.

Every country keeps at least min(floor, available) samples; the remaining
budget is split over leftover availability with largest-remainder rounding
so the subset size is hit exactly. Same seed, same subset, every time.
"""

import numpy as np

from geoeval import CountryId, SampleRecord, draw, plan

rng = np.random.default_rng(123)

# a heavily imbalanced population, GeoGuessr-style
counts = {"US": 9500, "FR": 2200, "JP": 1800, "BR": 900, "KE": 140, "IS": 60, "BT": 9}
population = []
for code, n in counts.items():
    c = CountryId(code, code)
    population.extend(SampleRecord(f"{code}_{i:05d}", c, "demo") for i in range(n))

sampling_plan = plan(population, target_total=2000, min_per_country=20, seed=7)
print(f"population {len(population)}, target 2000, floor 20/country\n")
print(f"{'country':>8} {'available':>10} {'quota':>6} {'share of pop':>13} {'share of subset':>16}")
total = len(population)
for country, quota in sorted(sampling_plan.quotas.items(), key=lambda kv: -kv[1]):
    n = counts[country.code]
    print(f"{country.code:>8} {n:>10} {quota:>6} {n / total:>12.2%} {quota / 2000:>15.2%}")

subset = draw(population, sampling_plan)
print(f"\ndrew {len(subset)} samples; Bhutan keeps all {sampling_plan.quotas[CountryId('BT', 'BT')]} "
      "it has (under the floor), everyone else >= 20")

again = draw(population, sampling_plan)
print(f"redraw with the same plan is identical: {subset == again}")
