"""Adapter contract: everything we emit loads through the engine cleanly.

Runs the full adapter surface over a 10-image smoke manifest with the
offline stub backend and hash encoders, then feeds every output file to
the engine - loaders first, then a complete `geoeval evaluate` run.
"""

import json

import pytest

import geoeval
from geoeval.cli import main as engine_cli
from geoeval_adapter import (
    label_space_of,
    make_backend,
    make_encoder,
    read_manifest,
    run_embeddings,
    run_predictions,
    run_prompt_embeddings,
    run_stratum_labels,
)
from geoeval_adapter.prompts import PromptTemplate


@pytest.fixture(scope="module")
def emitted(smoke_workspace, tmp_path_factory):
    """All adapter outputs for the smoke manifest, emitted once."""
    out = tmp_path_factory.mktemp("emitted")
    rows = read_manifest(smoke_workspace / "manifest.csv")
    images = smoke_workspace / "images"
    labels = label_space_of(rows)

    for setting, candidates in (("unconstrained", None), ("constrained", labels)):
        backend = make_backend("stub", candidates=candidates)
        run_predictions(
            rows, images, backend, model_tag="stub-vlm", setting=setting,
            out_path=out / f"preds_{setting}.jsonl",
        )

    for tag, dim in (("enc-a", 32), ("enc-b", 48)):
        encoder = make_encoder("hash", dim=dim)
        run_embeddings(rows, images, encoder, out / f"emb_{tag}.gemb")
        run_prompt_embeddings(smoke_workspace / "prompt_bank.json", encoder, out, tag)

    bank = json.loads((smoke_workspace / "prompt_bank.json").read_text())
    backend = make_backend("stub", biomes=[b["name"] for b in bank["biomes"]])
    run_stratum_labels(
        rows, images, backend, labeller_tag="stub-llm",
        bank_path=smoke_workspace / "prompt_bank.json",
        out_path=out / "labels_stub-llm.jsonl",
    )
    return out


def test_manifest_loads_through_engine(smoke_workspace):
    registry = geoeval.load_registry(smoke_workspace / "registry.jsonl")
    samples, space = geoeval.load_manifest(smoke_workspace / "manifest.csv", registry)
    assert len(samples) == 10
    assert {c.display_name for c in space.countries} == {"France", "Spain", "Japan"}


def test_predictions_load_and_normalize_through_engine(smoke_workspace, emitted):
    registry = geoeval.load_registry(smoke_workspace / "registry.jsonl")
    _, space = geoeval.load_manifest(smoke_workspace / "manifest.csv", registry)
    for setting in ("unconstrained", "constrained"):
        records = geoeval.load_raw_predictions(emitted / f"preds_{setting}.jsonl")
        assert len(records) == 10
        assert all(r.setting == setting for r in records)
        normalized = geoeval.normalize_records(records, space)
        assert all(len(r.normalized) <= 5 for r in normalized)
        if setting == "constrained":
            # stub answers are drawn from the label space, so none are lost
            assert all(len(r.normalized) == 3 for r in normalized)


def test_embeddings_load_through_engine_and_align(smoke_workspace, emitted):
    rows = read_manifest(smoke_workspace / "manifest.csv")
    for tag, dim in (("enc-a", 32), ("enc-b", 48)):
        matrix = geoeval.load_embeddings(
            emitted / f"emb_{tag}.gemb", emitted / f"emb_{tag}.gemb.ids"
        )
        assert matrix.dim == dim
        assert list(matrix.ids) == [r.sample_id for r in rows]
        neighbors = geoeval.knn(geoeval.l2_normalize(matrix), k=5)
        assert len(neighbors) == 10


def test_prompt_embeddings_load_through_engine(smoke_workspace, emitted):
    bank = geoeval.load_prompt_bank(smoke_workspace / "prompt_bank.json")
    for tag in ("enc-a", "enc-b"):
        ur = geoeval.load_embeddings(
            emitted / f"prompts_ur_{tag}.gemb", emitted / f"prompts_ur_{tag}.gemb.ids"
        )
        assert ur.ids == ("urban", "rural")
        biome = geoeval.load_embeddings(
            emitted / f"prompts_biome_{tag}.gemb", emitted / f"prompts_biome_{tag}.gemb.ids"
        )
        assert biome.ids == bank.biome_names


def test_labels_load_through_engine(smoke_workspace, emitted):
    bank = geoeval.load_prompt_bank(smoke_workspace / "prompt_bank.json")
    assignments = geoeval.import_labels(emitted / "labels_stub-llm.jsonl", bank)
    assert len(assignments) == 10
    assert {a.labeller for a in assignments} == {"stub-llm"}


def test_constrained_prompt_embeds_full_label_space(smoke_workspace):
    rows = read_manifest(smoke_workspace / "manifest.csv")
    labels = label_space_of(rows)
    constrained = PromptTemplate.for_setting("constrained").render(labels)
    for name in labels:
        assert name in constrained
    unconstrained = PromptTemplate.for_setting("unconstrained").render()
    for name in labels:
        assert name not in unconstrained


def test_prediction_meta_records_run_parameters(emitted):
    meta = json.loads((emitted / "preds_constrained.jsonl.meta.json").read_text())
    assert meta["setting"] == "constrained"
    assert meta["decoding"] == "greedy"
    assert meta["label_order"] == "manifest"
    assert meta["n_labels"] == 3
    assert meta["n_failures"] == 0


def test_reruns_are_bit_identical(smoke_workspace, emitted, tmp_path):
    rows = read_manifest(smoke_workspace / "manifest.csv")
    encoder = make_encoder("hash", dim=32)
    again = tmp_path / "again.gemb"
    run_embeddings(rows, smoke_workspace / "images", encoder, again)
    assert again.read_bytes() == (emitted / "emb_enc-a.gemb").read_bytes()

    backend = make_backend("stub")
    preds = tmp_path / "preds.jsonl"
    run_predictions(rows, smoke_workspace / "images", backend,
                    model_tag="stub-vlm", setting="unconstrained", out_path=preds)
    assert preds.read_bytes() == (emitted / "preds_unconstrained.jsonl").read_bytes()


def test_backend_failure_yields_empty_raw_output(smoke_workspace, tmp_path):
    rows = read_manifest(smoke_workspace / "manifest.csv")

    class FlakyBackend:
        name = "flaky"

        def generate(self, image_path, prompt):
            if image_path.name == "img03.png":
                raise RuntimeError("backend timeout")
            return '{"predictions": ["France"]}'

    out = tmp_path / "preds.jsonl"
    run_predictions(rows, smoke_workspace / "images", FlakyBackend(),
                    model_tag="flaky", setting="unconstrained", out_path=out)
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 10
    failed = [r for r in records if r["sample_id"] == "img03.png"]
    assert failed[0]["raw_output"] == ""
    assert "timeout" in failed[0]["error"]
    # the engine scores it as an ordinary empty (incorrect) prediction
    assert geoeval.parse_raw(failed[0]["raw_output"]).status.value == "parse_failed"


def test_full_engine_evaluate_over_adapter_outputs(smoke_workspace, emitted, tmp_path):
    """The ultimate contract check: a complete engine run, exit code 0."""
    config = tmp_path / "run.toml"
    data = geoeval.__name__  # engine package data dir
    import importlib.resources

    engine_data = importlib.resources.files(data) / "data"
    config.write_text(
        f"""\
manifest = "{smoke_workspace / 'manifest.csv'}"
registry = "{smoke_workspace / 'registry.jsonl'}"
border_edges = "{engine_data / 'border_edges.csv'}"
special_edges = "{engine_data / 'special_edges.csv'}"
prompt_bank = "{smoke_workspace / 'prompt_bank.json'}"
out = "{tmp_path / 'out'}"

[[predictions]]
model = "stub-vlm"
setting = "unconstrained"
path = "{emitted / 'preds_unconstrained.jsonl'}"

[[predictions]]
model = "stub-vlm"
setting = "constrained"
path = "{emitted / 'preds_constrained.jsonl'}"

[[embeddings]]
encoder = "enc-a"
path = "{emitted / 'emb_enc-a.gemb'}"
prompt_urban_rural = "{emitted / 'prompts_ur_enc-a.gemb'}"
prompt_biomes = "{emitted / 'prompts_biome_enc-a.gemb'}"

[[embeddings]]
encoder = "enc-b"
path = "{emitted / 'emb_enc-b.gemb'}"
prompt_urban_rural = "{emitted / 'prompts_ur_enc-b.gemb'}"
prompt_biomes = "{emitted / 'prompts_biome_enc-b.gemb'}"

[[labels]]
labeller = "stub-llm"
path = "{emitted / 'labels_stub-llm.jsonl'}"
""",
        encoding="utf-8",
    )
    assert engine_cli(["evaluate", "--config", str(config)]) == 0
    report = (tmp_path / "out" / "report.md").read_text()
    assert "stub-vlm" in report
    assert "Urban / Rural" in report
