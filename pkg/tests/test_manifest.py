import random

import pytest

from geoeval import GeoEvalError, load_manifest, write_manifest

from helpers import make_registry


@pytest.fixture
def registry():
    return make_registry(
        [
            ("US", "United States", ["USA"], 37.0, -95.0, False),
            ("FR", "France", [], 46.2, 2.2, False),
            ("JP", "Japan", [], 36.2, 138.2, True),
        ]
    )


def write(tmp_path, rows):
    path = tmp_path / "manifest.csv"
    path.write_text("sample_id,country,dataset\n" + "".join(f"{r}\n" for r in rows), encoding="utf-8")
    return path


def test_label_space_is_set_of_observed_labels(tmp_path, registry):
    path = write(tmp_path, ["a,US,demo", "b,US,demo", "c,FR,demo"])
    records, space = load_manifest(path, registry)
    assert [r.sample_id for r in records] == ["a", "b", "c"]
    assert {c.code for c in space.countries} == {"US", "FR"}
    assert space.dataset == "demo"


def test_aliases_resolve_in_ground_truth(tmp_path, registry):
    path = write(tmp_path, ["a,usa,demo"])
    records, _ = load_manifest(path, registry)
    assert records[0].country.code == "US"


def test_unknown_country_names_row(tmp_path, registry):
    path = write(tmp_path, ["a,US,demo", "b,Atlantis,demo"])
    with pytest.raises(GeoEvalError, match=r"unresolvable country 'Atlantis' at row 2"):
        load_manifest(path, registry)


def test_duplicate_sample_id_rejected(tmp_path, registry):
    path = write(tmp_path, ["a,US,demo", "a,FR,demo"])
    with pytest.raises(GeoEvalError, match="duplicate sample_id"):
        load_manifest(path, registry)


def test_header_and_empty_manifest_rejected(tmp_path, registry):
    bad = tmp_path / "bad.csv"
    bad.write_text("id,country\n", encoding="utf-8")
    with pytest.raises(GeoEvalError, match="bad header"):
        load_manifest(bad, registry)
    empty = write(tmp_path, [])
    with pytest.raises(GeoEvalError, match="no data rows"):
        load_manifest(empty, registry)


def test_loading_is_order_stable(tmp_path, registry):
    path = write(tmp_path, ["x,FR,demo", "a,US,demo", "m,JP,demo"])
    first, _ = load_manifest(path, registry)
    second, _ = load_manifest(path, registry)
    assert first == second
    assert [r.sample_id for r in first] == ["x", "a", "m"]


def test_label_space_invariant_under_row_permutation(tmp_path, registry):
    rows = ["a,US,demo", "b,FR,demo", "c,JP,demo", "d,US,demo"]
    _, space = load_manifest(write(tmp_path, rows), registry)
    shuffled = rows[:]
    random.Random(7).shuffle(shuffled)
    _, space2 = load_manifest(write(tmp_path, shuffled), registry)
    assert space == space2


def test_full_world_label_space(tmp_path, world_registry):
    # A manifest spanning every shipped country yields a label space of the
    # same size; with 219 distinct countries it would be exactly 219.
    codes = world_registry.codes()
    rows = [f"s{i},{code},world" for i, code in enumerate(codes)]
    _, space = load_manifest(write(tmp_path, rows), world_registry)
    assert len(space.countries) == len(codes)


def test_write_then_load_round_trip(tmp_path, registry):
    path = write(tmp_path, ["a,US,demo", "b,FR,demo"])
    records, _ = load_manifest(path, registry)
    out = tmp_path / "copy.csv"
    write_manifest(records, out)
    records2, _ = load_manifest(out, registry)
    assert records == records2
