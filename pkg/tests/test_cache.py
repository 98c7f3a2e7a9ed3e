import json
import os
from io import StringIO

from ufrlab.cache import CACHE_ENV, ResultCache, cache_key, default_cache_dir
from ufrlab.cli import main


def factor_json(*extra):
    out = StringIO()
    assert main(["factor", "Z(4)", "X^3", "--format", "json", *extra], out=out) == 0
    return json.loads(out.getvalue())


def test_cached_result_equals_fresh_result(tmp_path):
    cached_dir = str(tmp_path / "c")
    first = factor_json("--cache-dir", cached_dir)
    files = list((tmp_path / "c").rglob("*.json"))
    assert len(files) == 1
    second = factor_json("--cache-dir", cached_dir)
    assert first == second == factor_json("--no-cache")


def test_cache_hit_is_served_from_disk(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache_key("factor", "Z(4)", "X^3", {"deg_bound": None, "len_cap": None, "zero": False})
    fresh = factor_json("--cache-dir", str(tmp_path))
    stored = cache.get(key)
    assert stored == fresh
    stored["factorizations"] = []
    cache.put(key, stored)
    assert factor_json("--cache-dir", str(tmp_path))["factorizations"] == []
    assert factor_json("--no-cache")["factorizations"] == fresh["factorizations"]


def test_no_cache_writes_nothing(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "env"))
    assert default_cache_dir() == tmp_path / "env"
    factor_json("--no-cache")
    assert not (tmp_path / "env").exists()
    factor_json()
    assert list((tmp_path / "env").rglob("*.json"))


def test_key_depends_on_every_component():
    base = cache_key("factor", "Z(4)", "X^2", {"deg_bound": None})
    assert base == cache_key("factor", "Z(4)", "X^2", {"deg_bound": None})
    assert base != cache_key("factor", "Z(4)", "X^2", {"deg_bound": 3})
    assert base != cache_key("factor", "Z(8)", "X^2", {"deg_bound": None})
    assert base != cache_key("factor", "Z(4)", "X^3", {"deg_bound": None})
    assert base != cache_key("lengths", "Z(4)", "X^2", {"deg_bound": None})


def test_writes_are_atomic_and_leave_no_temporaries(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache_key("k", "r", "s", {})
    cache.put(key, {"a": 1})
    cache.put(key, {"a": 2})
    assert cache.get(key) == {"a": 2}
    assert [p.name for p in cache.path(key).parent.iterdir()] == [f"{key}.json"]


def test_corrupt_entries_are_recomputed(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache_key("k", "r", "s", {})
    cache.path(key).parent.mkdir(parents=True)
    cache.path(key).write_text("{not json")
    assert cache.get(key) is None
    assert cache.get_or_compute(key, lambda: [1, 2]) == [1, 2]
    assert json.loads(cache.path(key).read_text()) == [1, 2]
    assert not any(name.startswith(".tmp-") for name in os.listdir(cache.path(key).parent))
