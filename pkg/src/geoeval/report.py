"""Pipeline orchestration and deterministic report rendering.

A full run executes normalize -> accuracy -> graph/hop -> knn/GER ->
stratification in dependency order and writes a Markdown report, a CSV
set, and per-metric audit JSONL files. Every stage can also run alone
through the CLI; stage outputs are written by the same renderers, so
composing stages over shared audit files reproduces the monolithic run
byte for byte. Wall-clock metadata goes to run_meta.json only, keeping
report and CSV outputs byte-identical across reruns. Percentages print
with two decimals, half-up.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__
from .accuracy import AccuracyResult, evaluate, per_country
from .config import RunConfig
from .errors import GeoEvalError
from .gemb import load_embeddings
from .geograph import CountryGraph, HopHistogram, build_graph, hop_histogram, load_edges
from .ger import GerAggregate, GerResult, aggregate_encoders, audit_rows, ger
from .knn import NeighborList, knn, l2_normalize
from .manifest import LabelSpace, SampleRecord, load_manifest
from .normalize import PredictionRecord, load_raw_predictions, normalize_records, parse_raw, prediction_map
from .registry import CountryId, CountryRegistry, load_registry
from .strata import (
    AggregatedStratum,
    PromptBank,
    StratumAssignment,
    StratumCell,
    assign_zero_shot,
    biome_table,
    import_labels,
    load_prompt_bank,
    urban_rural_table,
    write_labels,
)

ALL_STAGES = frozenset({"accuracy", "hop", "ger", "stratify"})


def fmt_pct(fraction: float | None) -> str:
    """Render a fraction as a percentage with 2 decimals, half-up."""
    if fraction is None:
        return ""
    value = Decimal(repr(fraction)) * Decimal(100)
    return str(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def fmt_mean_std(mean: float | None, std: float | None) -> str:
    if mean is None:
        return "n/a"
    return f"{fmt_pct(mean)}±{fmt_pct(std)}"


@dataclass(frozen=True)
class SourceReport:
    """Metric results for one (model, setting) prediction source.

    Fields are None for stages that were not requested.
    """

    model: str
    setting: str
    accuracy: AccuracyResult | None = None
    by_country: dict[CountryId, AccuracyResult] | None = None
    hop: HopHistogram | None = None
    ger_per_encoder: tuple[GerResult, ...] = ()
    ger_aggregate: GerAggregate | None = None
    urban_rural: dict[str, AggregatedStratum] | None = None
    biome: dict[str, StratumCell] | None = None


@dataclass(frozen=True)
class MetricReport:
    dataset: str
    n_samples: int
    n_countries: int
    config_hash: str
    version: str
    sources: tuple[SourceReport, ...]
    labellers: tuple[str, ...]
    consensus_counts: dict[str, int] | None
    consensus_total: int | None


class RunContext:
    """Loaded inputs shared by the pipeline stages."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.registry: CountryRegistry = load_registry(config.registry)
        self.samples: list[SampleRecord]
        self.label_space: LabelSpace
        self.samples, self.label_space = load_manifest(config.manifest, self.registry)
        self.bank: PromptBank | None = (
            load_prompt_bank(config.prompt_bank) if config.prompt_bank else None
        )
        self._graph: CountryGraph | None = None

    @property
    def graph(self) -> CountryGraph:
        if self._graph is None:
            self._graph = build_graph(
                load_edges(self.config.border_edges),
                load_edges(self.config.special_edges),
                self.registry,
            )
        return self._graph

    def normalized_predictions(self) -> dict[tuple[str, str], list[PredictionRecord]]:
        out: dict[tuple[str, str], list[PredictionRecord]] = {}
        for src in sorted(self.config.predictions, key=lambda s: (s.model, s.setting)):
            records = load_raw_predictions(src.path)
            tag = (records[0].model, records[0].setting)
            if tag != (src.model, src.setting):
                raise GeoEvalError(
                    f"{src.path}: file carries {tag}, config declares "
                    f"({src.model!r}, {src.setting!r})"
                )
            out[tag] = normalize_records(records, self.label_space, strict=self.config.strict_json)
        return out

    def encoder_matrices(self):
        """Normalized image matrices per encoder, row-aligned with the manifest."""
        out = []
        wanted = [s.sample_id for s in self.samples]
        for src in sorted(self.config.embeddings, key=lambda s: s.encoder):
            matrix = l2_normalize(load_embeddings(src.path, src.ids))
            if list(matrix.ids) != wanted:
                missing = set(wanted) - set(matrix.ids)
                raise GeoEvalError(
                    f"embeddings[{src.encoder}] ids do not match the manifest"
                    + (f" (missing {sorted(missing)[:3]}...)" if missing else " (order differs)")
                )
            out.append((src, matrix))
        return out

    def neighbor_lists(
        self, cache: Mapping[str, Sequence[NeighborList]] | None = None
    ) -> dict[str, list[NeighborList]]:
        out: dict[str, list[NeighborList]] = {}
        for src, matrix in self.encoder_matrices():
            if cache is not None and src.encoder in cache:
                out[src.encoder] = list(cache[src.encoder])
            else:
                out[src.encoder] = knn(matrix, k=self.config.k)
        return out

    def stratum_assignments(self) -> dict[str, list[StratumAssignment]]:
        """Zero-shot assignments per encoder plus imported generative labels."""
        out: dict[str, list[StratumAssignment]] = {}
        for src, matrix in self.encoder_matrices():
            if src.prompt_urban_rural is None or src.prompt_biomes is None:
                continue
            if self.bank is None:
                raise GeoEvalError("prompt embeddings given but no prompt_bank configured")
            ur = l2_normalize(load_embeddings(src.prompt_urban_rural, src.prompt_urban_rural_ids))
            biomes = l2_normalize(load_embeddings(src.prompt_biomes, src.prompt_biomes_ids))
            if ur.ids != ("urban", "rural"):
                raise GeoEvalError(
                    f"urban/rural prompt file ids must be ('urban', 'rural'), got {ur.ids}"
                )
            if biomes.ids != self.bank.biome_names:
                raise GeoEvalError(
                    f"biome prompt file ids must match the prompt bank "
                    f"{self.bank.biome_names}, got {biomes.ids}"
                )
            out[src.encoder] = assign_zero_shot(
                src.encoder, matrix, ur.vectors, biomes.vectors, self.bank
            )
        for src in sorted(self.config.labels, key=lambda s: s.labeller):
            if self.bank is None:
                raise GeoEvalError("label files given but no prompt_bank configured")
            if src.labeller in out:
                raise GeoEvalError(f"duplicate labeller {src.labeller!r}")
            out[src.labeller] = import_labels(src.path, self.bank)
        return out


def run_pipeline(
    config: RunConfig,
    stages: frozenset[str] = ALL_STAGES,
    neighbor_cache: Mapping[str, Sequence[NeighborList]] | None = None,
    full_report: bool = False,
) -> MetricReport:
    """Execute the requested stages and write their outputs under config.out."""
    unknown = stages - ALL_STAGES
    if unknown:
        raise GeoEvalError(f"unknown stages {sorted(unknown)}")
    config.validate(require_predictions=True, require_embeddings="ger" in stages)
    started = time.time()
    ctx = RunContext(config)
    out_dir = Path(config.out)
    audit_dir = out_dir / "audit"
    audit_dir.mkdir(parents=True, exist_ok=True)

    normalized = ctx.normalized_predictions()
    neighbors = ctx.neighbor_lists(cache=neighbor_cache) if "ger" in stages else {}
    assignments = ctx.stratum_assignments() if "stratify" in stages else {}
    labellers = tuple(sorted(assignments))
    flat_assignments = [a for labeller in labellers for a in assignments[labeller]]

    for labeller in labellers:
        write_labels(assignments[labeller], audit_dir / f"assignments_{_slug(labeller)}.jsonl")

    sources: list[SourceReport] = []
    consensus_counts: dict[str, int] | None = None
    consensus_total: int | None = None
    for (model, setting), records in sorted(normalized.items()):
        pred_map = prediction_map(records)
        _write_normalized_audit(
            records, config.strict_json, audit_dir / f"normalized_{_slug(model)}_{setting}.jsonl"
        )

        acc = by_country = None
        if "accuracy" in stages:
            acc = evaluate(ctx.samples, pred_map)
            by_country = per_country(ctx.samples, pred_map)

        hop = None
        if "hop" in stages:
            hop = hop_histogram(ctx.graph, ctx.samples, pred_map)

        ger_results: list[GerResult] = []
        ger_agg = None
        if "ger" in stages:
            for encoder in sorted(neighbors):
                result = ger(
                    ctx.samples, pred_map, neighbors[encoder],
                    tau=config.tau, encoder=encoder,
                )
                ger_results.append(result)
                _write_jsonl(
                    audit_rows(ctx.samples, pred_map, neighbors[encoder], tau=config.tau),
                    audit_dir / f"ger_{_slug(model)}_{setting}_{_slug(encoder)}.jsonl",
                )
            ger_agg = aggregate_encoders(ger_results) if len(ger_results) >= 2 else None

        ur_table = None
        bio_table = None
        if "stratify" in stages and labellers:
            ur_table = urban_rural_table(ctx.samples, pred_map, flat_assignments)
            if len(labellers) >= 3 and ctx.bank is not None:
                bio_table, consensus = biome_table(ctx.samples, pred_map, flat_assignments, ctx.bank)
                if consensus_counts is None:
                    consensus_counts = {
                        name: sum(1 for b in consensus.values() if b == name)
                        for name in ctx.bank.biome_names
                    }
                    consensus_total = len(consensus)

        sources.append(
            SourceReport(
                model=model, setting=setting,
                accuracy=acc, by_country=by_country, hop=hop,
                ger_per_encoder=tuple(ger_results), ger_aggregate=ger_agg,
                urban_rural=ur_table, biome=bio_table,
            )
        )

    report = MetricReport(
        dataset=ctx.label_space.dataset,
        n_samples=len(ctx.samples),
        n_countries=len(ctx.label_space.countries),
        config_hash=config.content_hash(),
        version=__version__,
        sources=tuple(sources),
        labellers=labellers,
        consensus_counts=consensus_counts,
        consensus_total=consensus_total,
    )

    if "accuracy" in stages:
        write_accuracy_csv(report, out_dir / "accuracy.csv")
        write_accuracy_by_country_csv(report, out_dir / "accuracy_by_country.csv")
    if "hop" in stages:
        write_hop_csv(report, out_dir / "hop.csv")
    if "ger" in stages and any(s.ger_per_encoder for s in report.sources):
        write_ger_csv(report, out_dir / "ger.csv")
    if "stratify" in stages and any(s.urban_rural for s in report.sources):
        write_urban_rural_csv(report, out_dir / "urban_rural.csv")
    if "stratify" in stages and any(s.biome for s in report.sources):
        write_biome_csv(report, out_dir / "biome.csv")
    if full_report:
        (out_dir / "report.md").write_text(render_markdown(report), encoding="utf-8")
        (out_dir / "run_meta.json").write_text(
            json.dumps(
                {
                    "config_hash": report.config_hash,
                    "version": report.version,
                    "started_unix": started,
                    "finished_unix": time.time(),
                },
                indent=2,
                sort_keys=True,
            )
            + "\n",
            encoding="utf-8",
        )
    return report


def run(config: RunConfig, neighbor_cache=None) -> MetricReport:
    """Full evaluation: every stage plus the Markdown report."""
    stages = set(ALL_STAGES)
    if not config.embeddings:
        stages.discard("ger")
    if not config.embeddings and not config.labels:
        stages.discard("stratify")
    return run_pipeline(
        config, frozenset(stages), neighbor_cache=neighbor_cache, full_report=True
    )


def _slug(name: str) -> str:
    return "".join(ch if ch.isalnum() else "-" for ch in name)


def _write_jsonl(rows, path: Path) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")


def _write_normalized_audit(records: list[PredictionRecord], strict: bool, path: Path) -> None:
    rows = []
    for rec in records:
        outcome = parse_raw(rec.raw_output, strict=strict)
        rows.append(
            {
                "sample_id": rec.sample_id,
                "status": outcome.status.value,
                "normalized": [c.code for c in rec.normalized],
            }
        )
    _write_jsonl(rows, path)


def _open_csv(path: Path):
    fh = path.open("w", encoding="utf-8", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def write_accuracy_csv(report: MetricReport, path: Path) -> None:
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(["model", "setting", "top1_pct", "top5_pct", "n_samples", "n_empty"])
        for s in report.sources:
            if s.accuracy is None:
                continue
            writer.writerow(
                [s.model, s.setting, fmt_pct(s.accuracy.top1), fmt_pct(s.accuracy.top5),
                 s.accuracy.n_samples, s.accuracy.n_empty]
            )


def write_accuracy_by_country_csv(report: MetricReport, path: Path) -> None:
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(["model", "setting", "country", "top1_pct", "top5_pct", "n_samples"])
        for s in report.sources:
            if s.by_country is None:
                continue
            for country, acc in s.by_country.items():
                writer.writerow(
                    [s.model, s.setting, country.code, fmt_pct(acc.top1), fmt_pct(acc.top5), acc.n_samples]
                )


def write_hop_csv(report: MetricReport, path: Path) -> None:
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(
            ["model", "setting", "h1_pct", "h2_pct", "h3plus_pct",
             "n_errors", "n_placed", "n_unplaceable"]
        )
        for s in report.sources:
            if s.hop is None:
                continue
            pcts = s.hop.percentages()
            h1, h2, h3 = (fmt_pct(p) for p in pcts) if pcts else ("", "", "")
            writer.writerow(
                [s.model, s.setting, h1, h2, h3, s.hop.n_errors, s.hop.n_placed, s.hop.n_unplaceable]
            )


def write_ger_csv(report: MetricReport, path: Path) -> None:
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(
            ["model", "setting", "encoder", "ger_weak_pct", "ger_strong_pct",
             "ger_weak_std_pct", "ger_strong_std_pct", "n_errors", "n_empty_excluded", "tau", "k"]
        )
        for s in report.sources:
            for r in s.ger_per_encoder:
                writer.writerow(
                    [s.model, s.setting, r.encoder, fmt_pct(r.ger_weak), fmt_pct(r.ger_strong),
                     "", "", r.n_errors, r.n_empty_excluded, r.tau, r.k]
                )
            if s.ger_aggregate is not None:
                agg = s.ger_aggregate
                writer.writerow(
                    [s.model, s.setting, "aggregate", fmt_pct(agg.weak_mean), fmt_pct(agg.strong_mean),
                     fmt_pct(agg.weak_std), fmt_pct(agg.strong_std), "", "", agg.tau, agg.k]
                )


def write_urban_rural_csv(report: MetricReport, path: Path) -> None:
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(
            ["model", "setting", "stratum", "labeller", "n", "top1_pct", "top5_pct",
             "top1_std_pct", "top5_std_pct"]
        )
        for s in report.sources:
            if s.urban_rural is None:
                continue
            for stratum in ("urban", "rural"):
                agg = s.urban_rural[stratum]
                for labeller, cell in agg.per_labeller:
                    writer.writerow(
                        [s.model, s.setting, stratum, labeller, cell.n,
                         fmt_pct(cell.top1), fmt_pct(cell.top5), "", ""]
                    )
                writer.writerow(
                    [s.model, s.setting, stratum, "aggregate", "",
                     fmt_pct(agg.top1_mean), fmt_pct(agg.top5_mean),
                     fmt_pct(agg.top1_std), fmt_pct(agg.top5_std)]
                )


def write_biome_csv(report: MetricReport, path: Path) -> None:
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(["model", "setting", "biome", "n", "top1_pct", "top5_pct"])
        for s in report.sources:
            if s.biome is None:
                continue
            for biome, cell in s.biome.items():
                writer.writerow(
                    [s.model, s.setting, biome, cell.n, fmt_pct(cell.top1), fmt_pct(cell.top5)]
                )


def render_markdown(report: MetricReport) -> str:
    lines: list[str] = []
    add = lines.append
    add("# Geolocalization Evaluation Report")
    add("")
    add(f"- dataset: `{report.dataset}`")
    add(f"- samples: {report.n_samples}")
    add(f"- label space: {report.n_countries} countries")
    add(f"- config hash: `{report.config_hash}`")
    add(f"- geoeval version: {report.version}")
    add("")

    if any(s.accuracy for s in report.sources):
        add("## Accuracy (%)")
        add("")
        add("| Model | Setting | Top-1 | Top-5 | Empty |")
        add("|---|---|---|---|---|")
        for s in report.sources:
            if s.accuracy is None:
                continue
            add(
                f"| {s.model} | {s.setting} | {fmt_pct(s.accuracy.top1)} "
                f"| {fmt_pct(s.accuracy.top5)} | {s.accuracy.n_empty} |"
            )
        add("")

    if any(s.hop for s in report.sources):
        add("## Hop Distance of Incorrect Top-1 Predictions (%)")
        add("")
        add("| Model | Setting | H-1 | H-2 | H-3+ | Errors | Unplaceable |")
        add("|---|---|---|---|---|---|---|")
        for s in report.sources:
            if s.hop is None:
                continue
            pcts = s.hop.percentages()
            h1, h2, h3 = ((fmt_pct(p) for p in pcts) if pcts else ("n/a", "n/a", "n/a"))
            add(
                f"| {s.model} | {s.setting} | {h1} | {h2} | {h3} "
                f"| {s.hop.n_errors} | {s.hop.n_unplaceable} |"
            )
        add("")

    if any(s.ger_per_encoder for s in report.sources):
        add("## Geographic Error Reasonableness (%)")
        add("")
        add("| Model | Setting | Encoder | GER-Weak | GER-Strong | Errors |")
        add("|---|---|---|---|---|---|")
        for s in report.sources:
            for r in s.ger_per_encoder:
                weak = fmt_pct(r.ger_weak) if r.defined else "n/a"
                strong = fmt_pct(r.ger_strong) if r.defined else "n/a"
                add(f"| {s.model} | {s.setting} | {r.encoder} | {weak} | {strong} | {r.n_errors} |")
            if s.ger_aggregate is not None:
                agg = s.ger_aggregate
                add(
                    f"| {s.model} | {s.setting} | mean±std "
                    f"| {fmt_mean_std(agg.weak_mean, agg.weak_std)} "
                    f"| {fmt_mean_std(agg.strong_mean, agg.strong_std)} | |"
                )
        add("")

    if any(s.urban_rural for s in report.sources):
        add("## Urban / Rural Accuracy (%), mean±std across labellers")
        add("")
        add(f"Labellers: {', '.join(report.labellers)}")
        add("")
        add("| Model | Setting | Urban Top-1 | Rural Top-1 | Urban Top-5 | Rural Top-5 |")
        add("|---|---|---|---|---|---|")
        for s in report.sources:
            if s.urban_rural is None:
                continue
            urban, rural = s.urban_rural["urban"], s.urban_rural["rural"]
            add(
                f"| {s.model} | {s.setting} "
                f"| {fmt_mean_std(urban.top1_mean, urban.top1_std)} "
                f"| {fmt_mean_std(rural.top1_mean, rural.top1_std)} "
                f"| {fmt_mean_std(urban.top5_mean, urban.top5_std)} "
                f"| {fmt_mean_std(rural.top5_mean, rural.top5_std)} |"
            )
        add("")

    if report.consensus_counts is not None:
        total = report.consensus_total or 0
        retained = fmt_pct(total / report.n_samples) if report.n_samples else ""
        add(f"## Biome Accuracy (%) on Consensus Subset (n={total}, {retained}% of samples)")
        add("")
        biomes = list(report.consensus_counts)
        add("| | " + " | ".join(biomes) + " |")
        add("|---|" + "---|" * len(biomes))
        add("| consensus n | " + " | ".join(str(report.consensus_counts[b]) for b in biomes) + " |")
        add("")
        add("| Model | Setting | " + " | ".join(biomes) + " |")
        add("|---|---|" + "---|" * len(biomes))
        for s in report.sources:
            if s.biome is None:
                continue
            cells = [
                fmt_pct(s.biome[b].top1) if s.biome[b].top1 is not None else "n/a"
                for b in biomes
            ]
            add(f"| {s.model} | {s.setting} | " + " | ".join(cells) + " |")
        add("")

    return "\n".join(lines) + "\n"
