import importlib.resources
import shutil
from pathlib import Path

import pytest
from PIL import Image

ENGINE_DATA = importlib.resources.files("geoeval") / "data"

SMOKE_ROWS = [
    ("img00.png", "France"), ("img01.png", "France"), ("img02.png", "France"),
    ("img03.png", "France"), ("img04.png", "Spain"), ("img05.png", "Spain"),
    ("img06.png", "Spain"), ("img07.png", "Japan"), ("img08.png", "Japan"),
    ("img09.png", "Japan"),
]


@pytest.fixture(scope="session")
def smoke_workspace(tmp_path_factory):
    """A 10-image manifest with tiny PNGs and the engine's prompt bank."""
    root = tmp_path_factory.mktemp("smoke")
    images = root / "images"
    images.mkdir()
    for i, (name, _) in enumerate(SMOKE_ROWS):
        img = Image.new("RGB", (8, 8), color=(23 * i % 256, 7 * i % 256, 151 * i % 256))
        img.save(images / name)
    manifest = root / "manifest.csv"
    manifest.write_text(
        "sample_id,country,dataset\n"
        + "".join(f"{sid},{country},smoke\n" for sid, country in SMOKE_ROWS),
        encoding="utf-8",
    )
    bank = root / "prompt_bank.json"
    shutil.copy(str(ENGINE_DATA / "prompt_bank.json"), bank)
    registry = root / "registry.jsonl"
    shutil.copy(str(ENGINE_DATA / "registry.jsonl"), registry)
    return root
