import pytest

from hitprob import cache, fixtures
from hitprob.fixtures import FixtureError, parse_fixture
from hitprob.solver import admissible_basis, clear_memo, column_index, hit_space


@pytest.fixture
def cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    clear_memo()
    yield tmp_path
    clear_memo()


def test_encode_decode_roundtrip():
    b = hit_space(4, 9, use_cache=False)
    k, n, mode, w, b2 = cache.decode(cache.encode(4, 9, "pow2", b, weight=(3, 1)), column_index(4, 9))
    assert (k, n, mode, w) == (4, 9, "pow2", (3, 1))
    assert b2 == b


def test_decode_rejects_bad_blobs():
    blob = cache.encode(4, 9, "pow2", hit_space(4, 9, use_cache=False))
    with pytest.raises(ValueError):
        cache.decode(b"XXXX" + blob[4:])
    with pytest.raises(ValueError):
        cache.decode(blob[:-8])
    with pytest.raises(ValueError):
        cache.decode(cache.encode(4, 9, "pow2", hit_space(4, 9, use_cache=False), version=99))


def test_store_and_load(cache_env):
    ref = admissible_basis(4, 10).admissible
    entries = cache.list_entries()
    assert len(entries) == 1 and entries[0]["k"] == 4 and entries[0]["n"] == 10
    clear_memo()
    loaded = cache.load_basis(4, 10, "pow2", column_index(4, 10))
    assert loaded == hit_space(4, 10, use_cache=False)
    clear_memo()
    assert admissible_basis(4, 10).admissible == ref
    assert cache.clear() == 1
    assert cache.list_entries() == []


def test_stale_entry_is_a_miss(cache_env):
    admissible_basis(4, 9)
    path = next(cache_env.glob("*.bin"))
    b = hit_space(4, 9, use_cache=False)
    path.write_bytes(cache.encode(4, 9, "pow2", b, version=cache.VERSION + 1))
    assert cache.load_basis(4, 9, "pow2", column_index(4, 9)) is None
    assert cache.list_entries()[0].get("stale")
    clear_memo()
    # a miss recomputes and overwrites
    assert admissible_basis(4, 9).dim == 46
    assert cache.load_basis(4, 9, "pow2", column_index(4, 9)) is not None


def test_no_cache_without_env():
    assert cache.cache_dir() is None
    assert cache.store_basis(4, 9, "pow2", hit_space(4, 9, use_cache=False)) is None


def test_fixture_roundtrip():
    for fid in fixtures.available():
        f = fixtures.load(fid)
        g = parse_fixture(f.to_text(), fid)
        assert g.monomials == f.monomials and g.labels == f.labels
        assert f.size == len(f.as_set())


def test_fixture_labels():
    u = fixtures.load("named_u_deg9").named()
    assert sorted(u) == [f"u{i}" for i in range(1, 7)]
    assert all(m.degree == 9 for m in u.values())


def test_fixture_errors(tmp_path):
    with pytest.raises(FixtureError):
        fixtures.load("nope")
    with pytest.raises(FixtureError):
        parse_fixture("# k: 2\n# degree: 3\nx1^2\n")
    with pytest.raises(FixtureError):
        parse_fixture("# k: 2\n# degree: 2\n# size: 2\nx1 x2\n")
    with pytest.raises(FixtureError):
        parse_fixture("x1 x2\n")
    (tmp_path / "mine.txt").write_text("# k: 2\n# degree: 2\nx1 x2\n")
    assert fixtures.load("mine", tmp_path).as_polynomial().terms == {(1, 1)}
