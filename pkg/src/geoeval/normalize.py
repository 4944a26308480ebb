"""Parsing and normalization of raw model output into ranked predictions.

The contract asks models for ``{"predictions": ["Country1", ..., "Country5"]}``.
Real outputs wrap that object in prose, so by default we scan for the first
well-formed JSON object containing a ``predictions`` array of strings; strict
mode requires the whole output to be that object. Parse failures are never
exceptions: a failed sample is simply an empty prediction and scores as
incorrect downstream.

Matching against the label space is case-insensitive and string-exact.
No fuzzy matching, no alias expansion, no diacritic folding.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import GeoEvalError
from .manifest import LabelSpace
from .registry import CountryId

MAX_RANKED = 5
VALID_SETTINGS = ("unconstrained", "constrained")

# Exactly the ASCII whitespace characters; Unicode spaces are not trimmed
# (stripping them would be a form of alias expansion).
_ASCII_WS = " \t\n\r\x0b\x0c"


class ParseStatus(enum.Enum):
    OK = "ok"
    PARSE_FAILED = "parse_failed"
    KEY_MISSING = "key_missing"


@dataclass(frozen=True)
class ParseOutcome:
    status: ParseStatus
    ranked_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.status is not ParseStatus.OK and self.ranked_names:
            raise GeoEvalError("non-ok parse outcome must carry no names")


@dataclass(frozen=True)
class PredictionRecord:
    """One model output for one sample, raw and normalized."""

    sample_id: str
    model: str
    setting: str
    raw_output: str
    normalized: tuple[CountryId, ...] = field(default=())


def _valid_predictions_value(value: object) -> bool:
    return isinstance(value, list) and all(isinstance(x, str) for x in value)


def parse_raw(raw_output: str, strict: bool = False) -> ParseOutcome:
    """Extract the ranked name list from raw model text.

    Non-strict mode returns the first well-formed JSON object anywhere in
    the text whose ``predictions`` key holds an array of strings. Strict
    mode requires the whole (stripped) text to be one JSON object.
    Failures are encoded in the status, never raised.
    """
    if strict:
        try:
            obj = json.loads(raw_output.strip(_ASCII_WS))
        except json.JSONDecodeError:
            return ParseOutcome(ParseStatus.PARSE_FAILED)
        if not isinstance(obj, dict):
            return ParseOutcome(ParseStatus.PARSE_FAILED)
        if "predictions" not in obj:
            return ParseOutcome(ParseStatus.KEY_MISSING)
        if not _valid_predictions_value(obj["predictions"]):
            return ParseOutcome(ParseStatus.PARSE_FAILED)
        return ParseOutcome(ParseStatus.OK, tuple(obj["predictions"]))

    decoder = json.JSONDecoder()
    saw_object = False
    saw_bad_key = False
    start = raw_output.find("{")
    while start != -1:
        try:
            obj, _ = decoder.raw_decode(raw_output, start)
        except json.JSONDecodeError:
            obj = None
        if isinstance(obj, dict):
            saw_object = True
            if "predictions" in obj:
                if _valid_predictions_value(obj["predictions"]):
                    return ParseOutcome(ParseStatus.OK, tuple(obj["predictions"]))
                saw_bad_key = True
        start = raw_output.find("{", start + 1)
    if saw_bad_key:
        return ParseOutcome(ParseStatus.PARSE_FAILED)
    if saw_object:
        return ParseOutcome(ParseStatus.KEY_MISSING)
    return ParseOutcome(ParseStatus.PARSE_FAILED)


@functools.lru_cache(maxsize=16)
def _name_lookup(label_space: LabelSpace) -> dict[str, CountryId]:
    return {c.display_name.lower(): c for c in label_space.countries}


def normalize(outcome: ParseOutcome, label_space: LabelSpace) -> list[CountryId]:
    """Map parsed names onto the label space, keeping rank order.

    Names match case-insensitively (after trimming ASCII whitespace)
    against the canonical display names of the label space. Non-matching
    names and repeats after the first occurrence are discarded; at most
    five countries survive.
    """
    if not label_space.countries:
        raise GeoEvalError("label space is empty")
    if outcome.status is not ParseStatus.OK:
        return []
    lookup = _name_lookup(label_space)
    ranked: list[CountryId] = []
    for name in outcome.ranked_names:
        country = lookup.get(name.strip(_ASCII_WS).lower())
        if country is not None and country not in ranked:
            ranked.append(country)
        if len(ranked) == MAX_RANKED:
            break
    return ranked


def load_raw_predictions(path: str | Path) -> list[PredictionRecord]:
    """Load a raw predictions JSONL file (one model+setting per file).

    Line schema: {"sample_id":..., "model":..., "setting":..., "raw_output":"..."}.
    """
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"predictions file not found: {path}")
    records: list[PredictionRecord] = []
    seen: set[str] = set()
    tags: set[tuple[str, str]] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise GeoEvalError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            try:
                record = PredictionRecord(
                    sample_id=str(rec["sample_id"]),
                    model=str(rec["model"]),
                    setting=str(rec["setting"]),
                    raw_output=str(rec["raw_output"]),
                )
            except KeyError as exc:
                raise GeoEvalError(f"{path}:{lineno}: missing field {exc}") from None
            if record.setting not in VALID_SETTINGS:
                raise GeoEvalError(
                    f"{path}:{lineno}: setting {record.setting!r} not in {VALID_SETTINGS}"
                )
            if record.sample_id in seen:
                raise GeoEvalError(f"{path}:{lineno}: duplicate sample_id {record.sample_id!r}")
            seen.add(record.sample_id)
            tags.add((record.model, record.setting))
            records.append(record)
    if not records:
        raise GeoEvalError(f"{path}: no prediction records")
    if len(tags) > 1:
        raise GeoEvalError(f"{path}: mixed (model, setting) pairs {sorted(tags)!r} in one file")
    return records


def normalize_records(
    records: list[PredictionRecord], label_space: LabelSpace, strict: bool = False
) -> list[PredictionRecord]:
    """Parse and normalize every record, preserving order."""
    out = []
    for rec in records:
        ranked = normalize(parse_raw(rec.raw_output, strict=strict), label_space)
        out.append(
            PredictionRecord(
                sample_id=rec.sample_id,
                model=rec.model,
                setting=rec.setting,
                raw_output=rec.raw_output,
                normalized=tuple(ranked),
            )
        )
    return out


def prediction_map(records: list[PredictionRecord]) -> dict[str, tuple[CountryId, ...]]:
    return {rec.sample_id: rec.normalized for rec in records}
