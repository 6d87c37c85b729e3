from modules.cache import CACHE_FILENAME, ResultCache, cache_key


def test_cache_key_layout():
    assert cache_key("abc", 2, 0, "symbolic", "1.0") == "abc|2|0|symbolic|1.0"


def test_cache_persists_between_instances(tmp_path):
    cache = ResultCache(str(tmp_path / "cache"))
    key = cache_key("abc", 2, 0, "symbolic")
    assert cache.get(key) is None
    cache.put(key, 5)
    cache.put(key, 7)

    reopened = ResultCache(str(tmp_path / "cache"))
    assert reopened.get(key) == 5
    assert reopened.hits == 1
    assert len(reopened) == 1
    lines = (tmp_path / "cache" / CACHE_FILENAME).read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1


def test_cache_skips_damaged_lines(tmp_path):
    path = tmp_path / CACHE_FILENAME
    path.write_text('{"key": "a|1|0|symbolic|0.1.0", "value": 3}\n{"key": "b|1|0|sym\n\nnot json\n', encoding="utf-8")
    cache = ResultCache(str(tmp_path))
    assert len(cache) == 1
    assert cache.get("a|1|0|symbolic|0.1.0") == 3
