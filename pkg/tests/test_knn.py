import numpy as np
import pytest

from geoeval import EmbeddingMatrix, GeoEvalError, knn, l2_normalize
from geoeval import load_neighbor_cache, write_neighbor_cache


def matrix_from(vectors, ids=None):
    vectors = np.asarray(vectors, dtype=np.float32)
    if ids is None:
        ids = tuple(f"q{i:04d}" for i in range(vectors.shape[0]))
    return EmbeddingMatrix(ids=tuple(ids), vectors=vectors)


def naive_knn(matrix, k):
    """O(N^2 D) double-loop reference; same tie rule (sim desc, id asc)."""
    out = []
    for i in range(matrix.n):
        sims = []
        for j in range(matrix.n):
            if j == i:
                continue
            sims.append((float(np.dot(matrix.vectors[i], matrix.vectors[j])), matrix.ids[j]))
        sims.sort(key=lambda t: (-t[0], t[1]))
        out.append([(sid, s) for s, sid in sims[:k]])
    return out


# --- normalization -------------------------------------------------------------

def test_normalize_3_4_5_row():
    m = matrix_from([[3.0, 4.0]])
    normed = l2_normalize(m)
    assert normed.vectors[0] == pytest.approx([0.6, 0.8])


def test_normalize_unit_rows_unchanged():
    rng = np.random.default_rng(5)
    raw = rng.standard_normal((20, 8)).astype(np.float32)
    unit = l2_normalize(matrix_from(raw))
    again = l2_normalize(unit)
    assert np.abs(again.vectors - unit.vectors).max() < 1e-6
    norms = np.linalg.norm(unit.vectors, axis=1)
    assert np.abs(norms - 1.0).max() < 1e-6


def test_normalize_zero_row_names_sample():
    vecs = np.ones((3, 4), dtype=np.float32)
    vecs[1] = 0.0
    with pytest.raises(GeoEvalError, match="zr1"):
        l2_normalize(matrix_from(vecs, ids=("zr0", "zr1", "zr2")))


# --- knn exactness ---------------------------------------------------------------

def test_orthogonal_rows_tie_break_by_id():
    m = l2_normalize(matrix_from(np.eye(3, dtype=np.float32), ids=("a", "b", "c")))
    result = knn(m, k=1)
    # all similarities are 0; tie breaks to the lexicographically first id
    assert result[0].neighbors[0][0] == "b"  # query a: tie b/c -> b
    assert result[1].neighbors[0][0] == "a"  # query b: tie a/c -> a
    assert result[2].neighbors[0][0] == "a"  # query c: tie a/b -> a
    for nl in result:
        assert nl.neighbors[0][1] == pytest.approx(0.0)


def test_duplicate_rows_pick_each_other():
    u = np.array([1.0, 0.0, 0.0, 0.0], dtype=np.float32)
    v = np.array([0.0, 1.0, 0.0, 0.0], dtype=np.float32)
    m = l2_normalize(matrix_from([u, u, v], ids=("u1", "u2", "far")))
    result = knn(m, k=1)
    assert result[0].neighbors[0] == ("u2", pytest.approx(1.0))
    assert result[1].neighbors[0] == ("u1", pytest.approx(1.0))


def test_matches_naive_oracle_random_64x8():
    rng = np.random.default_rng(808)
    m = l2_normalize(matrix_from(rng.standard_normal((64, 8)).astype(np.float32)))
    result = knn(m, k=5)
    oracle = naive_knn(m, k=5)
    for nl, expected in zip(result, oracle):
        assert [sid for sid, _ in nl.neighbors] == [sid for sid, _ in expected]
        for (_, s_got), (_, s_want) in zip(nl.neighbors, expected):
            assert s_got == pytest.approx(s_want, abs=1e-6)


def test_matches_naive_oracle_100_random_matrices():
    rng = np.random.default_rng(909)
    for trial in range(100):
        n = int(rng.integers(3, 257))
        d = int(rng.integers(2, 33))
        k = int(rng.integers(1, min(6, n)))
        raw = rng.standard_normal((n, d)).astype(np.float32)
        if trial % 7 == 0:  # plant duplicate rows to force exact ties
            raw[1] = raw[0]
        m = l2_normalize(matrix_from(raw))
        result = knn(m, k=k)
        oracle = naive_knn(m, k=k)
        for nl, expected in zip(result, oracle):
            assert [sid for sid, _ in nl.neighbors] == [sid for sid, _ in expected], (
                f"trial={trial} n={n} d={d} k={k} query={nl.query_id}"
            )
            for (_, s_got), (_, s_want) in zip(nl.neighbors, expected):
                assert s_got == pytest.approx(s_want, abs=1e-6)


def test_self_never_in_neighbors():
    rng = np.random.default_rng(11)
    m = l2_normalize(matrix_from(rng.standard_normal((40, 6)).astype(np.float32)))
    for nl in knn(m, k=5):
        assert nl.query_id not in [sid for sid, _ in nl.neighbors]
        sims = [s for _, s in nl.neighbors]
        assert sims == sorted(sims, reverse=True)
        assert len(nl.neighbors) == 5


def test_worker_count_does_not_change_result():
    rng = np.random.default_rng(77)
    m = l2_normalize(matrix_from(rng.standard_normal((101, 16)).astype(np.float32)))
    baseline = knn(m, k=4, block_rows=16, workers=1)
    for workers in (2, 3, 8):
        assert knn(m, k=4, block_rows=16, workers=workers) == baseline


def test_block_size_does_not_change_neighbor_ids():
    # float32 matmul kernels differ by ulps across block shapes, so ids must
    # agree exactly and similarities within the documented 1e-6.
    rng = np.random.default_rng(78)
    m = l2_normalize(matrix_from(rng.standard_normal((101, 16)).astype(np.float32)))
    baseline = knn(m, k=4, block_rows=101, workers=1)
    for block_rows in (1, 7, 32, 100):
        result = knn(m, k=4, block_rows=block_rows, workers=1)
        for got, want in zip(result, baseline):
            assert got.query_id == want.query_id
            assert [sid for sid, _ in got.neighbors] == [sid for sid, _ in want.neighbors]
            for (_, sa), (_, sb) in zip(got.neighbors, want.neighbors):
                assert sa == pytest.approx(sb, abs=1e-6)


def test_n_must_exceed_k():
    m = l2_normalize(matrix_from(np.eye(3, dtype=np.float32)))
    with pytest.raises(GeoEvalError, match="more rows than k"):
        knn(m, k=3)
    with pytest.raises(GeoEvalError, match="k must be"):
        knn(m, k=0)


def test_geoeval_threads_env_controls_workers(monkeypatch):
    from geoeval.knn import worker_count

    monkeypatch.delenv("GEOEVAL_THREADS", raising=False)
    assert worker_count() >= 1
    monkeypatch.setenv("GEOEVAL_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("GEOEVAL_THREADS", "0")
    with pytest.raises(GeoEvalError, match=">= 1"):
        worker_count()
    monkeypatch.setenv("GEOEVAL_THREADS", "lots")
    with pytest.raises(GeoEvalError, match="not an integer"):
        worker_count()
    # capped run still yields identical results
    monkeypatch.setenv("GEOEVAL_THREADS", "1")
    rng = np.random.default_rng(99)
    m = l2_normalize(matrix_from(rng.standard_normal((33, 8)).astype(np.float32)))
    single = knn(m, k=3)
    monkeypatch.setenv("GEOEVAL_THREADS", "4")
    assert knn(m, k=3) == single


def test_neighbor_cache_round_trip(tmp_path):
    rng = np.random.default_rng(31)
    m = l2_normalize(matrix_from(rng.standard_normal((12, 4)).astype(np.float32)))
    result = knn(m, k=3)
    path = tmp_path / "cache.jsonl"
    write_neighbor_cache(result, path)
    loaded = load_neighbor_cache(path)
    assert [nl.query_id for nl in loaded] == [nl.query_id for nl in result]
    for a, b in zip(loaded, result):
        assert [sid for sid, _ in a.neighbors] == [sid for sid, _ in b.neighbors]
        for (_, sa), (_, sb) in zip(a.neighbors, b.neighbors):
            assert sa == pytest.approx(sb, abs=1e-9)
