"""Run configuration: a TOML file with paths and knobs, overridable by flags."""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import GeoEvalError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class PredictionsSource:
    model: str
    setting: str
    path: Path


@dataclass(frozen=True)
class EmbeddingSource:
    encoder: str
    path: Path
    ids: Path
    prompt_urban_rural: Path | None = None
    prompt_urban_rural_ids: Path | None = None
    prompt_biomes: Path | None = None
    prompt_biomes_ids: Path | None = None


@dataclass(frozen=True)
class LabelSource:
    labeller: str
    path: Path


@dataclass(frozen=True)
class RunConfig:
    manifest: Path
    registry: Path
    border_edges: Path
    special_edges: Path
    out: Path
    prompt_bank: Path | None = None
    predictions: tuple[PredictionsSource, ...] = ()
    embeddings: tuple[EmbeddingSource, ...] = ()
    labels: tuple[LabelSource, ...] = ()
    k: int = 5
    tau: int = 2
    min_per_country: int = 20
    target_total: int = 50000
    seed: int = 0
    strict_json: bool = False

    def validate(self, require_predictions: bool = False, require_embeddings: bool = False) -> None:
        if self.k < 1:
            raise GeoEvalError(f"k must be >= 1, got {self.k}")
        if self.tau < 1:
            raise GeoEvalError(f"tau must be >= 1, got {self.tau}")
        paths: list[tuple[str, Path]] = [
            ("manifest", self.manifest),
            ("registry", self.registry),
            ("border_edges", self.border_edges),
            ("special_edges", self.special_edges),
        ]
        if self.prompt_bank is not None:
            paths.append(("prompt_bank", self.prompt_bank))
        for src in self.predictions:
            paths.append((f"predictions[{src.model}/{src.setting}]", src.path))
        for src in self.embeddings:
            paths.append((f"embeddings[{src.encoder}]", src.path))
            paths.append((f"embeddings[{src.encoder}].ids", src.ids))
            for tag, p in (
                ("prompt_urban_rural", src.prompt_urban_rural),
                ("prompt_urban_rural_ids", src.prompt_urban_rural_ids),
                ("prompt_biomes", src.prompt_biomes),
                ("prompt_biomes_ids", src.prompt_biomes_ids),
            ):
                if p is not None:
                    paths.append((f"embeddings[{src.encoder}].{tag}", p))
        for src in self.labels:
            paths.append((f"labels[{src.labeller}]", src.path))
        for name, path in paths:
            if not Path(path).is_file():
                raise GeoEvalError(f"config path {name} does not exist: {path}")
        if require_predictions and not self.predictions:
            raise GeoEvalError("config declares no predictions files")
        if require_embeddings and not self.embeddings:
            raise GeoEvalError("config declares no embeddings files")

    def content_hash(self) -> str:
        """Content-addressed digest: input file bytes plus knobs.

        Identical inputs hash identically no matter where they live, so
        reruns of the same config are traceable to one stamp.
        """

        def digest(path: Path | None) -> str | None:
            if path is None:
                return None
            return hashlib.sha256(Path(path).read_bytes()).hexdigest()

        payload = {
            "manifest": digest(self.manifest),
            "registry": digest(self.registry),
            "border_edges": digest(self.border_edges),
            "special_edges": digest(self.special_edges),
            "prompt_bank": digest(self.prompt_bank),
            "predictions": [
                [s.model, s.setting, digest(s.path)] for s in self.predictions
            ],
            "embeddings": [
                [
                    s.encoder, digest(s.path), digest(s.ids),
                    digest(s.prompt_urban_rural), digest(s.prompt_urban_rural_ids),
                    digest(s.prompt_biomes), digest(s.prompt_biomes_ids),
                ]
                for s in self.embeddings
            ],
            "labels": [[s.labeller, digest(s.path)] for s in self.labels],
            "k": self.k,
            "tau": self.tau,
            "min_per_country": self.min_per_country,
            "target_total": self.target_total,
            "seed": self.seed,
            "strict_json": self.strict_json,
        }
        blob = json.dumps(payload, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]


def _sidecar(path: Path, explicit: str | None, base: Path) -> Path:
    if explicit is not None:
        return base / explicit if not Path(explicit).is_absolute() else Path(explicit)
    return path.with_name(path.name + ".ids")


def load_config(path: str | Path) -> RunConfig:
    """Parse a TOML run config; relative paths resolve against the file's directory."""
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"config file not found: {path}")
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise GeoEvalError(f"{path}: invalid TOML: {exc}") from None
    base = path.parent

    def resolve(value: str) -> Path:
        p = Path(value)
        return p if p.is_absolute() else base / p

    try:
        predictions = tuple(
            PredictionsSource(
                model=str(entry["model"]),
                setting=str(entry["setting"]),
                path=resolve(entry["path"]),
            )
            for entry in data.get("predictions", [])
        )
        embeddings = []
        for entry in data.get("embeddings", []):
            gemb_path = resolve(entry["path"])
            embeddings.append(
                EmbeddingSource(
                    encoder=str(entry["encoder"]),
                    path=gemb_path,
                    ids=_sidecar(gemb_path, entry.get("ids"), base),
                    prompt_urban_rural=resolve(entry["prompt_urban_rural"]) if "prompt_urban_rural" in entry else None,
                    prompt_urban_rural_ids=_sidecar(
                        resolve(entry["prompt_urban_rural"]), entry.get("prompt_urban_rural_ids"), base
                    ) if "prompt_urban_rural" in entry else None,
                    prompt_biomes=resolve(entry["prompt_biomes"]) if "prompt_biomes" in entry else None,
                    prompt_biomes_ids=_sidecar(
                        resolve(entry["prompt_biomes"]), entry.get("prompt_biomes_ids"), base
                    ) if "prompt_biomes" in entry else None,
                )
            )
        labels = tuple(
            LabelSource(labeller=str(entry["labeller"]), path=resolve(entry["path"]))
            for entry in data.get("labels", [])
        )
        config = RunConfig(
            manifest=resolve(data["manifest"]),
            registry=resolve(data["registry"]),
            border_edges=resolve(data["border_edges"]),
            special_edges=resolve(data["special_edges"]),
            prompt_bank=resolve(data["prompt_bank"]) if "prompt_bank" in data else None,
            out=resolve(data.get("out", "out")),
            predictions=predictions,
            embeddings=tuple(embeddings),
            labels=labels,
            k=int(data.get("k", 5)),
            tau=int(data.get("tau", 2)),
            min_per_country=int(data.get("min_per_country", 20)),
            target_total=int(data.get("target_total", 50000)),
            seed=int(data.get("seed", 0)),
            strict_json=bool(data.get("strict_json", False)),
        )
    except KeyError as exc:
        raise GeoEvalError(f"{path}: missing config field {exc}") from None
    return config


def apply_overrides(config: RunConfig, **overrides) -> RunConfig:
    """Apply non-None CLI flag values over the file config."""
    changes = {k: v for k, v in overrides.items() if v is not None}
    if not changes:
        return config
    return replace(config, **changes)
