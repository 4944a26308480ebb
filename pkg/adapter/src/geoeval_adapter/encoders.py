"""Image/text encoders emitting the embedding matrices the engine consumes.

The hash encoder is a deterministic stand-in: unit vectors seeded from the
input bytes, stable across reruns for a fixed numpy version. The CLIP and
SigLIP wrappers produce real embeddings when torch/transformers (and the
checkpoint) are available.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Protocol

import numpy as np

from .formats import AdapterError


class ImageTextEncoder(Protocol):
    name: str
    dim: int

    def embed_images(self, paths: list[Path]) -> np.ndarray: ...

    def embed_texts(self, texts: list[str]) -> np.ndarray: ...


class HashEncoder:
    """Deterministic pseudo-encoder for offline runs and contract tests."""

    def __init__(self, dim: int = 512, name: str = "hash"):
        if dim < 1:
            raise AdapterError(f"encoder dim must be >= 1, got {dim}")
        self.dim = dim
        self.name = f"{name}-{dim}"

    def _vector(self, payload: bytes) -> np.ndarray:
        digest = hashlib.sha256(payload).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        vec = rng.standard_normal(self.dim)
        return (vec / np.linalg.norm(vec)).astype(np.float32)

    def embed_images(self, paths: list[Path]) -> np.ndarray:
        return np.stack([self._vector(p.read_bytes()) for p in paths])

    def embed_texts(self, texts: list[str]) -> np.ndarray:
        return np.stack([self._vector(t.encode("utf-8")) for t in texts])


class HfContrastiveEncoder:
    """CLIP/SigLIP-style dual encoder via transformers (lazy imports)."""

    def __init__(self, model_id: str, batch_size: int = 16, device: str | None = None):
        try:
            import torch
            from transformers import AutoModel, AutoProcessor
            from PIL import Image
        except ImportError as exc:
            raise AdapterError(
                f"HF encoder needs torch, transformers and Pillow: {exc}"
            ) from None
        self._torch = torch
        self._Image = Image
        self.name = model_id
        self.batch_size = batch_size
        self.device = device or ("cuda" if torch.cuda.is_available() else "cpu")
        self.processor = AutoProcessor.from_pretrained(model_id)
        self.model = AutoModel.from_pretrained(model_id).to(self.device).eval()
        self.dim = int(getattr(self.model.config, "projection_dim", 0)) or 0

    def _batches(self, items):
        for start in range(0, len(items), self.batch_size):
            yield items[start:start + self.batch_size]

    def embed_images(self, paths: list[Path]) -> np.ndarray:
        chunks = []
        for batch in self._batches(paths):
            images = [self._Image.open(p).convert("RGB") for p in batch]
            inputs = self.processor(images=images, return_tensors="pt").to(self.device)
            with self._torch.no_grad():
                features = self.model.get_image_features(**inputs)
            chunks.append(features.cpu().numpy().astype(np.float32))
        out = np.concatenate(chunks, axis=0)
        self.dim = self.dim or out.shape[1]
        return out

    def embed_texts(self, texts: list[str]) -> np.ndarray:
        chunks = []
        for batch in self._batches(texts):
            inputs = self.processor(
                text=batch, return_tensors="pt", padding=True, truncation=True
            ).to(self.device)
            with self._torch.no_grad():
                features = self.model.get_text_features(**inputs)
            chunks.append(features.cpu().numpy().astype(np.float32))
        out = np.concatenate(chunks, axis=0)
        self.dim = self.dim or out.shape[1]
        return out


KNOWN_ENCODERS = {
    "clip": "openai/clip-vit-large-patch14",
    "siglip": "google/siglip-so400m-patch14-384",
}


def make_encoder(spec: str, dim: int = 512) -> ImageTextEncoder:
    """Build an encoder from a CLI spec: "hash", "clip", "siglip", or "hf:<id>"."""
    if spec == "hash":
        return HashEncoder(dim=dim)
    if spec in KNOWN_ENCODERS:
        return HfContrastiveEncoder(KNOWN_ENCODERS[spec])
    if spec.startswith("hf:"):
        return HfContrastiveEncoder(spec[3:])
    raise AdapterError(
        f"unknown encoder {spec!r} (use 'hash', 'clip', 'siglip', or 'hf:<model_id>')"
    )
