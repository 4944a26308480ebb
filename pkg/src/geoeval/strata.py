"""Environmental stratification: urban/rural and biome labels, consensus, tables.

Labels come from multiple independent labellers. Contrastive encoders label
zero-shot (argmax cosine similarity against text prompt embeddings);
generative labellers are imported from JSONL. Urban/rural results keep every
labeller's partition separate and report mean +- std across labellers; biome
results are computed once on the consensus subset where every labeller
assigned the identical biome.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .accuracy import evaluate
from .errors import GeoEvalError
from .gemb import EmbeddingMatrix
from .manifest import SampleRecord
from .registry import CountryId

URBAN_RURAL = ("urban", "rural")
N_BIOMES = 6

# Softmax logit scale for reported confidence; the usual contrastive-encoder
# convention. The argmax label is invariant to this choice.
LOGIT_SCALE = 100.0


@dataclass(frozen=True)
class PromptBank:
    """The two urban/rural prompts and the six (biome name, prompt) pairs."""

    urban_rural: tuple[str, str]
    biomes: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if len(self.urban_rural) != 2:
            raise GeoEvalError(f"need exactly 2 urban/rural prompts, got {len(self.urban_rural)}")
        if len(self.biomes) != N_BIOMES:
            raise GeoEvalError(f"need exactly {N_BIOMES} biome prompts, got {len(self.biomes)}")
        names = [name for name, _ in self.biomes]
        if len(set(names)) != N_BIOMES:
            raise GeoEvalError(f"duplicate biome names: {names}")

    @property
    def biome_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.biomes)

    @property
    def biome_prompts(self) -> tuple[str, ...]:
        return tuple(prompt for _, prompt in self.biomes)


def load_prompt_bank(path: str | Path) -> PromptBank:
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"prompt bank not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return PromptBank(
            urban_rural=tuple(data["urban_rural"]),
            biomes=tuple((b["name"], b["prompt"]) for b in data["biomes"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise GeoEvalError(f"{path}: invalid prompt bank: {exc}") from None


@dataclass(frozen=True)
class StratumAssignment:
    """One labeller's environmental labels for one sample."""

    sample_id: str
    labeller: str
    urban_rural: str
    biome: str
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if self.urban_rural not in URBAN_RURAL:
            raise GeoEvalError(f"urban_rural label {self.urban_rural!r} not in {URBAN_RURAL}")
        if not 0.0 < self.confidence <= 1.0:
            raise GeoEvalError(f"confidence {self.confidence} out of (0,1]")


def zero_shot_label(
    image_embeddings: EmbeddingMatrix,
    prompt_embeddings: np.ndarray,
    category_names: Sequence[str],
) -> list[tuple[str, float]]:
    """Assign each image the argmax-cosine category; report softmax confidence.

    Both inputs must be L2-normalized. The argmax runs on raw similarities
    (softmax is monotone, so it only affects the reported confidence);
    exact ties break toward the earlier prompt-bank entry.
    """
    if prompt_embeddings.ndim != 2:
        raise GeoEvalError("prompt embeddings must be 2-D")
    if len(category_names) != prompt_embeddings.shape[0]:
        raise GeoEvalError(
            f"{len(category_names)} category names for {prompt_embeddings.shape[0]} prompts"
        )
    if prompt_embeddings.shape[0] < 2:
        raise GeoEvalError("need at least 2 prompts")
    if prompt_embeddings.shape[1] != image_embeddings.dim:
        raise GeoEvalError(
            f"dim mismatch: images {image_embeddings.dim}, prompts {prompt_embeddings.shape[1]}"
        )
    sims = image_embeddings.vectors @ prompt_embeddings.T.astype(np.float32)
    picks = np.argmax(sims, axis=1)
    logits = LOGIT_SCALE * sims.astype(np.float64)
    logits -= logits.max(axis=1, keepdims=True)
    probs = np.exp(logits)
    probs /= probs.sum(axis=1, keepdims=True)
    return [
        (category_names[int(pick)], float(probs[i, int(pick)]))
        for i, pick in enumerate(picks)
    ]


def assign_zero_shot(
    labeller: str,
    image_embeddings: EmbeddingMatrix,
    urban_rural_prompts: np.ndarray,
    biome_prompts: np.ndarray,
    bank: PromptBank,
) -> list[StratumAssignment]:
    """Full per-sample assignment for one contrastive labeller.

    The stored confidence is the biome softmax probability (the biome label
    is the one that feeds consensus filtering).
    """
    ur = zero_shot_label(image_embeddings, urban_rural_prompts, URBAN_RURAL)
    biome = zero_shot_label(image_embeddings, biome_prompts, bank.biome_names)
    return [
        StratumAssignment(
            sample_id=sid,
            labeller=labeller,
            urban_rural=ur[i][0],
            biome=biome[i][0],
            confidence=biome[i][1],
        )
        for i, sid in enumerate(image_embeddings.ids)
    ]


def import_labels(path: str | Path, bank: PromptBank) -> list[StratumAssignment]:
    """Load generative-labeller assignments from JSONL.

    Line schema: {"sample_id":..., "labeller":..., "urban_rural":..., "biome":...}
    with an optional "confidence". Unknown biome names are rejected.
    """
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"labels file not found: {path}")
    valid_biomes = set(bank.biome_names)
    out: list[StratumAssignment] = []
    seen: set[tuple[str, str]] = set()
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
                assignment = StratumAssignment(
                    sample_id=str(rec["sample_id"]),
                    labeller=str(rec["labeller"]),
                    urban_rural=str(rec["urban_rural"]),
                    biome=str(rec["biome"]),
                    confidence=float(rec.get("confidence", 1.0)),
                )
            except KeyError as exc:
                raise GeoEvalError(f"{path}:{lineno}: missing field {exc}") from None
            if assignment.biome not in valid_biomes:
                raise GeoEvalError(
                    f"{path}:{lineno}: unknown biome {assignment.biome!r} "
                    f"(bank has {sorted(valid_biomes)})"
                )
            key = (assignment.sample_id, assignment.labeller)
            if key in seen:
                raise GeoEvalError(f"{path}:{lineno}: duplicate (sample_id, labeller) {key!r}")
            seen.add(key)
            out.append(assignment)
    if not out:
        raise GeoEvalError(f"{path}: no label records")
    return out


def write_labels(assignments: Sequence[StratumAssignment], path: str | Path) -> None:
    """Write assignments in the import_labels JSONL format (audit output)."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for a in assignments:
            fh.write(
                json.dumps(
                    {
                        "sample_id": a.sample_id,
                        "labeller": a.labeller,
                        "urban_rural": a.urban_rural,
                        "biome": a.biome,
                        "confidence": a.confidence,
                    }
                )
                + "\n"
            )


def _by_labeller(
    assignments: Sequence[StratumAssignment],
) -> dict[str, dict[str, StratumAssignment]]:
    table: dict[str, dict[str, StratumAssignment]] = {}
    for a in assignments:
        per = table.setdefault(a.labeller, {})
        if a.sample_id in per:
            raise GeoEvalError(f"duplicate assignment for ({a.sample_id!r}, {a.labeller!r})")
        per[a.sample_id] = a
    return table


def consensus_filter(assignments: Sequence[StratumAssignment]) -> dict[str, str]:
    """Samples on which every labeller assigned the identical biome.

    Requires at least three labellers and a complete assignment grid; a
    sample missing any labeller is a hard error. Returns sample_id -> biome.
    """
    table = _by_labeller(assignments)
    if len(table) < 3:
        raise GeoEvalError(f"consensus filtering needs >= 3 labellers, got {len(table)}")
    labellers = sorted(table)
    all_samples = sorted({sid for per in table.values() for sid in per})
    retained: dict[str, str] = {}
    for sid in all_samples:
        biomes = []
        for labeller in labellers:
            try:
                biomes.append(table[labeller][sid].biome)
            except KeyError:
                raise GeoEvalError(
                    f"sample {sid!r} has no assignment from labeller {labeller!r}"
                ) from None
        if len(set(biomes)) == 1:
            retained[sid] = biomes[0]
    return retained


@dataclass(frozen=True)
class StratumCell:
    """Accuracy of one stratum under one partition; undefined when empty."""

    n: int
    top1: float | None
    top5: float | None
    n_empty: int = 0


@dataclass(frozen=True)
class AggregatedStratum:
    """One stratum's per-labeller cells plus cross-labeller mean +- population std."""

    stratum: str
    per_labeller: tuple[tuple[str, StratumCell], ...]
    top1_mean: float | None
    top1_std: float | None
    top5_mean: float | None
    top5_std: float | None


def _cell(
    members: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
) -> StratumCell:
    if not members:
        return StratumCell(n=0, top1=None, top5=None)
    res = evaluate(members, predictions)
    return StratumCell(n=res.n_samples, top1=res.top1, top5=res.top5, n_empty=res.n_empty)


def _mean_std(values: list[float]) -> tuple[float, float]:
    mean = sum(values) / len(values)
    var = sum((v - mean) ** 2 for v in values) / len(values)
    return mean, float(np.sqrt(var))


def urban_rural_table(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
    assignments: Sequence[StratumAssignment],
) -> dict[str, AggregatedStratum]:
    """Urban and rural accuracy under each labeller's partition, aggregated.

    Each labeller must cover every sample. Labellers whose stratum is empty
    drop out of that stratum's aggregation; a stratum empty under every
    labeller is reported undefined.
    """
    table = _by_labeller(assignments)
    if not table:
        raise GeoEvalError("no stratum assignments given")
    labellers = sorted(table)
    out: dict[str, AggregatedStratum] = {}
    for stratum in URBAN_RURAL:
        cells: list[tuple[str, StratumCell]] = []
        for labeller in labellers:
            per = table[labeller]
            members = []
            for sample in samples:
                try:
                    assignment = per[sample.sample_id]
                except KeyError:
                    raise GeoEvalError(
                        f"sample {sample.sample_id!r} has no assignment from "
                        f"labeller {labeller!r}"
                    ) from None
                if assignment.urban_rural == stratum:
                    members.append(sample)
            cells.append((labeller, _cell(members, predictions)))
        defined = [c for _, c in cells if c.n > 0]
        if defined:
            top1_mean, top1_std = _mean_std([c.top1 for c in defined])  # type: ignore[misc]
            top5_mean, top5_std = _mean_std([c.top5 for c in defined])  # type: ignore[misc]
        else:
            top1_mean = top1_std = top5_mean = top5_std = None
        out[stratum] = AggregatedStratum(
            stratum=stratum,
            per_labeller=tuple(cells),
            top1_mean=top1_mean, top1_std=top1_std,
            top5_mean=top5_mean, top5_std=top5_std,
        )
    return out


def biome_table(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
    assignments: Sequence[StratumAssignment],
    bank: PromptBank,
) -> tuple[dict[str, StratumCell], dict[str, str]]:
    """Per-biome accuracy on the consensus subset, in prompt-bank order.

    Returns (biome -> cell, sample_id -> consensus biome).
    """
    consensus = consensus_filter(assignments)
    by_id = {s.sample_id: s for s in samples}
    out: dict[str, StratumCell] = {}
    for biome in bank.biome_names:
        members = [by_id[sid] for sid, b in sorted(consensus.items()) if b == biome and sid in by_id]
        out[biome] = _cell(members, predictions)
    return out, consensus


def stratified_accuracy(
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
    assignments: Sequence[StratumAssignment],
    grouping: str,
    bank: PromptBank | None = None,
):
    """Dispatch to the urban/rural or consensus-biome stratified table."""
    if grouping == "urban_rural":
        return urban_rural_table(samples, predictions, assignments)
    if grouping == "biome_consensus":
        if bank is None:
            raise GeoEvalError("biome_consensus grouping requires a prompt bank")
        return biome_table(samples, predictions, assignments, bank)
    raise GeoEvalError(f"unknown grouping {grouping!r}")
