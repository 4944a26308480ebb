"""geoeval: evaluation engine for country-level image geolocalization.

Consumes ground-truth manifests, raw model prediction logs, and image
embedding matrices; produces normalized Top-k accuracy, border-hop error
distributions, Geographic Error Reasonableness scores, environmental
stratification with multi-labeller consensus, and stratified subset
samples, as deterministic reports.
"""

from .accuracy import AccuracyResult, evaluate, per_country
from .errors import GeoEvalError
from .gemb import EmbeddingMatrix, load_embeddings, write_embeddings
from .geograph import (
    CountryGraph,
    HopHistogram,
    build_graph,
    export_graph,
    haversine_km,
    hop_distance,
    hop_histogram,
    load_edges,
)
from .ger import GerAggregate, GerResult, aggregate_encoders, ger, justification_count
from .knn import NeighborList, knn, l2_normalize, load_neighbor_cache, write_neighbor_cache
from .manifest import LabelSpace, SampleRecord, load_manifest, write_manifest
from .normalize import (
    ParseOutcome,
    ParseStatus,
    PredictionRecord,
    load_raw_predictions,
    normalize,
    normalize_records,
    parse_raw,
    prediction_map,
)
from .registry import CountryId, CountryRegistry, RegistryEntry, load_registry
from .sampling import SamplingPlan, draw, plan, write_plan
from .strata import (
    AggregatedStratum,
    PromptBank,
    StratumAssignment,
    StratumCell,
    assign_zero_shot,
    biome_table,
    consensus_filter,
    import_labels,
    load_prompt_bank,
    stratified_accuracy,
    urban_rural_table,
    write_labels,
    zero_shot_label,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyResult",
    "AggregatedStratum",
    "CountryGraph",
    "CountryId",
    "CountryRegistry",
    "EmbeddingMatrix",
    "GeoEvalError",
    "GerAggregate",
    "GerResult",
    "HopHistogram",
    "LabelSpace",
    "NeighborList",
    "ParseOutcome",
    "ParseStatus",
    "PredictionRecord",
    "PromptBank",
    "RegistryEntry",
    "SampleRecord",
    "SamplingPlan",
    "StratumAssignment",
    "StratumCell",
    "aggregate_encoders",
    "assign_zero_shot",
    "biome_table",
    "build_graph",
    "consensus_filter",
    "draw",
    "evaluate",
    "export_graph",
    "ger",
    "haversine_km",
    "hop_distance",
    "hop_histogram",
    "import_labels",
    "justification_count",
    "knn",
    "l2_normalize",
    "load_edges",
    "load_embeddings",
    "load_manifest",
    "load_neighbor_cache",
    "load_prompt_bank",
    "load_raw_predictions",
    "load_registry",
    "normalize",
    "normalize_records",
    "parse_raw",
    "per_country",
    "plan",
    "prediction_map",
    "stratified_accuracy",
    "urban_rural_table",
    "write_embeddings",
    "write_labels",
    "write_manifest",
    "write_neighbor_cache",
    "write_plan",
    "zero_shot_label",
]
