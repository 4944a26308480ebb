#!/usr/bin/env python3
"""Run the whole engine end to end on the checked-in 12-sample fixture.

Equivalent to `geoeval evaluate --config tests/data/fixture12/config.toml`:
normalize -> accuracy -> hop -> k-NN/GER -> stratification, rendered as
report.md plus a CSV set and audit JSONL files.
"""

import tempfile
from pathlib import Path

from geoeval.config import apply_overrides, load_config
from geoeval.report import run

fixture = Path(__file__).resolve().parent.parent / "tests" / "data" / "fixture12"
out = Path(tempfile.mkdtemp(prefix="geoeval-demo-"))

config = apply_overrides(load_config(fixture / "config.toml"), out=out)
report = run(config)

print(f"dataset {report.dataset}: {report.n_samples} samples over "
      f"{report.n_countries} countries, config {report.config_hash}")
for source in report.sources:
    acc = source.accuracy
    print(f"  {source.model} [{source.setting:>13}] "
          f"top1 {acc.top1:.2%} top5 {acc.top5:.2%} "
          f"hop errors {source.hop.n_errors}")

print(f"\nfiles under {out}:")
for path in sorted(out.rglob("*")):
    if path.is_file():
        print(f"  {path.relative_to(out)}")

print("\n--- report.md ---\n")
print((out / "report.md").read_text())
