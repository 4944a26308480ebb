"""geoeval-adapter: produces the evaluation engine's inputs from real models.

Runs VLM backends with the prediction prompt templates (unconstrained and
label-constrained), image/text encoders for GEMB embedding files, and the
generative stratum labeller. Talks to the engine only through its file
formats (manifest CSV, predictions/labels JSONL, GEMB).
"""

from .backends import HfVlmBackend, StubVlmBackend, VlmBackend, make_backend
from .embed import run_embeddings, run_prompt_embeddings
from .encoders import HashEncoder, HfContrastiveEncoder, ImageTextEncoder, make_encoder
from .formats import AdapterError, ManifestRow, label_space_of, read_manifest, write_gemb
from .labels import run_stratum_labels
from .predict import run_predictions
from .prompts import JSON_INSTRUCTION, PromptTemplate, render_label_prompt

__version__ = "0.1.0"

__all__ = [
    "AdapterError",
    "HashEncoder",
    "HfContrastiveEncoder",
    "HfVlmBackend",
    "ImageTextEncoder",
    "JSON_INSTRUCTION",
    "ManifestRow",
    "PromptTemplate",
    "StubVlmBackend",
    "VlmBackend",
    "label_space_of",
    "make_backend",
    "make_encoder",
    "read_manifest",
    "render_label_prompt",
    "run_embeddings",
    "run_predictions",
    "run_prompt_embeddings",
    "run_stratum_labels",
    "write_gemb",
]
