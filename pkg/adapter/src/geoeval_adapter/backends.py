"""VLM backends: a deterministic offline stub and a HuggingFace wrapper.

A backend is anything with a name and generate(image_path, prompt) -> str.
The stub answers every prompt deterministically from a hash of the image
bytes, which makes smoke tests and format contracts runnable with no model
weights. The HF backend wraps any image-text-to-text checkpoint with
greedy decoding; credentials (HF_TOKEN) come from the environment.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Protocol

import numpy as np

from .formats import AdapterError

# Fallback candidate pool for unconstrained stub runs.
DEFAULT_COUNTRIES = [
    "United States", "France", "Japan", "Brazil", "Germany", "Italy", "Spain",
    "United Kingdom", "Canada", "Australia", "India", "Mexico", "Thailand",
    "South Africa", "Norway", "Portugal", "Argentina", "South Korea",
    "Indonesia", "Turkey",
]


class VlmBackend(Protocol):
    name: str

    def generate(self, image_path: Path, prompt: str) -> str: ...


class StubVlmBackend:
    """Deterministic canned model for offline smoke runs.

    Replies are seeded by the image bytes, so a rerun over the same files
    produces identical output. Prediction prompts get five ranked names
    drawn from the candidate pool; label prompts get an urban/rural and
    biome pick.
    """

    name = "stub"

    def __init__(self, candidates: list[str] | None = None, biomes: list[str] | None = None):
        self.candidates = list(candidates) if candidates else list(DEFAULT_COUNTRIES)
        self.biomes = list(biomes) if biomes else []

    def _rng(self, image_path: Path, salt: str) -> np.random.Generator:
        digest = hashlib.sha256(salt.encode() + image_path.read_bytes()).digest()
        return np.random.default_rng(int.from_bytes(digest[:8], "big"))

    def generate(self, image_path: Path, prompt: str) -> str:
        if '"urban_rural"' in prompt:
            if not self.biomes:
                raise AdapterError("stub backend got a label prompt but has no biome names")
            rng = self._rng(image_path, "label")
            return json.dumps(
                {
                    "urban_rural": "urban" if rng.random() < 0.5 else "rural",
                    "biome": self.biomes[int(rng.integers(len(self.biomes)))],
                }
            )
        rng = self._rng(image_path, "predict")
        k = min(5, len(self.candidates))
        picks = [self.candidates[int(i)] for i in rng.permutation(len(self.candidates))[:k]]
        return json.dumps({"predictions": picks})


class HfVlmBackend:
    """Greedy-decoding wrapper for HuggingFace image-text-to-text models."""

    def __init__(self, model_id: str, max_new_tokens: int = 128, device: str | None = None):
        try:
            import torch
            from transformers import AutoModelForImageTextToText, AutoProcessor
            from PIL import Image
        except ImportError as exc:
            raise AdapterError(
                f"HF backend needs torch, transformers and Pillow: {exc}"
            ) from None
        self._torch = torch
        self._Image = Image
        self.name = model_id
        self.max_new_tokens = max_new_tokens
        self.device = device or ("cuda" if torch.cuda.is_available() else "cpu")
        self.processor = AutoProcessor.from_pretrained(model_id)
        self.model = AutoModelForImageTextToText.from_pretrained(model_id).to(self.device).eval()

    def generate(self, image_path: Path, prompt: str) -> str:
        image = self._Image.open(image_path).convert("RGB")
        messages = [
            {
                "role": "user",
                "content": [{"type": "image"}, {"type": "text", "text": prompt}],
            }
        ]
        text = self.processor.apply_chat_template(messages, add_generation_prompt=True)
        inputs = self.processor(images=image, text=text, return_tensors="pt").to(self.device)
        with self._torch.no_grad():
            output = self.model.generate(
                **inputs, do_sample=False, max_new_tokens=self.max_new_tokens
            )
        generated = output[0, inputs["input_ids"].shape[1]:]
        return self.processor.decode(generated, skip_special_tokens=True)


def make_backend(spec: str, candidates: list[str] | None = None,
                 biomes: list[str] | None = None) -> VlmBackend:
    """Build a backend from a CLI spec: "stub" or "hf:<model_id>"."""
    if spec == "stub":
        return StubVlmBackend(candidates=candidates, biomes=biomes)
    if spec.startswith("hf:"):
        return HfVlmBackend(spec[3:])
    raise AdapterError(f"unknown backend {spec!r} (use 'stub' or 'hf:<model_id>')")
