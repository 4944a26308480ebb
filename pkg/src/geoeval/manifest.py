"""Ground-truth manifests and the dataset label space."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import GeoEvalError
from .registry import CountryId, CountryRegistry

MANIFEST_HEADER = ["sample_id", "country", "dataset"]


@dataclass(frozen=True)
class SampleRecord:
    """One evaluation image: id, ground-truth country, dataset tag."""

    sample_id: str
    country: CountryId
    dataset: str


@dataclass(frozen=True)
class LabelSpace:
    """The exact set of ground-truth countries observed in one manifest."""

    dataset: str
    countries: frozenset[CountryId]

    def display_names(self) -> list[str]:
        return sorted(c.display_name for c in self.countries)


def load_manifest(
    path: str | Path, registry: CountryRegistry
) -> tuple[list[SampleRecord], LabelSpace]:
    """Load a manifest CSV, preserving row order.

    The label space is the set of distinct ground-truth countries of the
    file. Country values may be aliases; they resolve through the registry
    (ground truth is curated data, unlike model predictions).
    """
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"manifest file not found: {path}")
    records: list[SampleRecord] = []
    seen_ids: set[str] = set()
    datasets: set[str] = set()
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise GeoEvalError(f"{path}: empty manifest") from None
        if header != MANIFEST_HEADER:
            raise GeoEvalError(
                f"{path}: bad header {header!r}, expected {MANIFEST_HEADER!r}"
            )
        for row_idx, row in enumerate(reader, start=1):
            if len(row) != 3:
                raise GeoEvalError(f"{path}: row {row_idx}: expected 3 fields, got {len(row)}")
            sample_id, raw_country, dataset = row
            if not sample_id:
                raise GeoEvalError(f"{path}: row {row_idx}: empty sample_id")
            if sample_id in seen_ids:
                raise GeoEvalError(f"{path}: row {row_idx}: duplicate sample_id {sample_id!r}")
            country = registry.try_resolve(raw_country)
            if country is None:
                raise GeoEvalError(
                    f"{path}: unresolvable country {raw_country!r} at row {row_idx}"
                )
            seen_ids.add(sample_id)
            datasets.add(dataset)
            records.append(SampleRecord(sample_id=sample_id, country=country, dataset=dataset))
    if not records:
        raise GeoEvalError(f"{path}: manifest has no data rows")
    if len(datasets) > 1:
        raise GeoEvalError(f"{path}: mixed dataset tags {sorted(datasets)!r} in one manifest")
    label_space = LabelSpace(
        dataset=records[0].dataset,
        countries=frozenset(r.country for r in records),
    )
    return records, label_space


def write_manifest(records: list[SampleRecord], path: str | Path) -> None:
    """Write records in the manifest CSV format (used by the subset sampler)."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MANIFEST_HEADER)
        for rec in records:
            writer.writerow([rec.sample_id, rec.country.code, rec.dataset])
