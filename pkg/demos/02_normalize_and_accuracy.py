#!/usr/bin/env python3
"""Normalize messy raw model outputs and score Top-1/Top-5 accuracy.

Models are asked for {"predictions": ["Country1", ..., "Country5"]} but
wrap it in prose, drop the key, or emit garbage. Normalization extracts
the object, matches names case-insensitively against the dataset's label
space, discards anything else, and failure means an empty (incorrect)
prediction, never a crash.
"""

from geoeval import CountryId, LabelSpace, SampleRecord, evaluate, normalize, parse_raw

france = CountryId("FR", "France")
spain = CountryId("ES", "Spain")
japan = CountryId("JP", "Japan")
space = LabelSpace(dataset="demo", countries=frozenset({france, spain, japan}))

raw_outputs = {
    "a": '{"predictions": ["France", "Spain", "Japan"]}',
    "b": 'Hard to say, but: {"predictions": ["spain", "SPAIN", "Portugal", "France"]}',
    "c": '{"answer": ["France"]}',
    "d": "It is France.",
}

print("raw -> normalized:")
predictions = {}
for sid, raw in raw_outputs.items():
    outcome = parse_raw(raw)
    ranked = normalize(outcome, space)
    predictions[sid] = ranked
    shown = raw if len(raw) < 58 else raw[:55] + "..."
    print(f"  [{outcome.status.value:>12}] {shown}")
    print(f"               -> {[c.display_name for c in ranked]}")

samples = [
    SampleRecord("a", france, "demo"),
    SampleRecord("b", spain, "demo"),
    SampleRecord("c", france, "demo"),
    SampleRecord("d", france, "demo"),
]
result = evaluate(samples, predictions)
print(f"\nTop-1 {result.top1:.2%}  Top-5 {result.top5:.2%}  "
      f"({result.n_empty} of {result.n_samples} empty after normalization)")
