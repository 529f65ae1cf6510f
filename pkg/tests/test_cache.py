import json

import mpmath
import pytest

from colpart import cache as cache_mod
from colpart.cache import Cache, cached_eigenforms, cached_partition_table, default_cache_dir
from colpart.modular import cusp_eigenform_1dim, eigenforms_numeric
from colpart.partitions import oracle_for


@pytest.fixture
def store(tmp_path):
    return Cache(tmp_path)


def test_partition_table_round_trip(store):
    first = cached_partition_table(store, "colored", 3, 300)
    again = cached_partition_table(Cache(store.directory), "colored", 3, 300)
    assert again == first == oracle_for("colored", 3, 300)
    assert (store.hits, store.misses) == (0, 1)


def test_numeric_table_is_bit_identical(store):
    fresh = eigenforms_numeric(24, 60, 40)
    cached_eigenforms(store, 24, 60, 40)
    reread = Cache(store.directory)
    loaded = cached_eigenforms(reread, 24, 60, 40)
    assert reread.hits == 1
    assert loaded.labels == fresh.labels
    for a, b in zip(loaded.forms, fresh.forms):
        assert [x.man_exp for x in map(mpmath.mpf, a)] == [x.man_exp for x in map(mpmath.mpf, b)]


def test_exact_table_round_trip(store):
    table = cusp_eigenform_1dim(16, 40)
    out = store.get_or_compute("exact", {"w": 16}, lambda: table, cache_mod._encode_table, cache_mod._decode_table)
    back = Cache(store.directory).get_or_compute(
        "exact", {"w": 16}, lambda: pytest.fail("recomputed"), cache_mod._encode_table, cache_mod._decode_table
    )
    assert back.forms == out.forms == table.forms


@pytest.mark.parametrize("damage", ["truncate", "payload", "garbage"])
def test_corrupt_entry_is_recomputed(store, damage):
    params = {"kind": "colored", "t": 2, "N": 50}
    cached_partition_table(store, "colored", 2, 50)
    path = store.path("partitions", params)
    text = path.read_text()
    if damage == "truncate":
        path.write_text(text[: len(text) // 2])
    elif damage == "payload":
        entry = json.loads(text)
        entry["payload"]["values"][7] = str(int(entry["payload"]["values"][7]) + 1)
        path.write_text(json.dumps(entry))
    else:
        path.write_bytes(b"\x00\xff not json")
    reread = Cache(store.directory)
    assert cached_partition_table(reread, "colored", 2, 50) == oracle_for("colored", 2, 50)
    assert reread.misses == 1
    assert json.loads(path.read_text())["payload"] == json.loads(text)["payload"]


def test_version_bump_changes_key(store, monkeypatch):
    before = store.key("partitions", {"N": 1})
    monkeypatch.setattr(cache_mod, "FORMAT_VERSION", cache_mod.FORMAT_VERSION + 1)
    assert store.key("partitions", {"N": 1}) != before


def test_key_ignores_dict_order(store):
    assert store.key("k", {"a": 1, "b": 2}) == store.key("k", {"b": 2, "a": 1})


def test_no_temporary_files_left(store):
    cached_partition_table(store, "regular", 5, 100)
    assert [p.suffix for p in store.directory.iterdir()] == [".json"]


def test_failed_write_leaves_nothing(store, monkeypatch):
    def boom(*_):
        raise OSError("disk full")

    monkeypatch.setattr(cache_mod.os, "replace", boom)
    with pytest.raises(OSError):
        store.store("x", {}, {"a": 1})
    assert list(store.directory.iterdir()) == []


def test_disabled_cache_touches_nothing(tmp_path):
    off = Cache(tmp_path / "c", enabled=False)
    cached_partition_table(off, "colored", 3, 20)
    assert not (tmp_path / "c").exists()


def test_env_var_sets_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("COLPART_CACHE_DIR", str(tmp_path))
    assert default_cache_dir() == tmp_path
    monkeypatch.delenv("COLPART_CACHE_DIR")
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "xdg"))
    assert default_cache_dir() == tmp_path / "xdg" / "colpart"
