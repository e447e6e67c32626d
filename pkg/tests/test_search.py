import json

import pytest

from drgtight import catalog, tightness as T
from drgtight.core import IntersectionArray
from drgtight.errors import BudgetExceeded, ParamOutOfRange
from drgtight.search import SearchConfig, run_search, search_tight_arrays


def _arrays(cfg):
    return [str(a) for a, _ in search_tight_arrays(cfg)]


def test_icosahedron_found():
    assert "5,2,1;1,2,5" in _arrays(SearchConfig(d=3, max_k=5))


def test_empty_box():
    assert _arrays(SearchConfig(d=4, max_k=4)) == []


def test_johnson_and_conway_smith_found():
    res = run_search(SearchConfig(d=4, max_k=16))
    found = [str(a) for a in res.arrays()]
    assert "16,9,4,1;1,4,9,16" in found and "10,6,4,1;1,2,6,10" in found
    assert found == sorted(found, key=lambda s: [list(map(int, p.split(","))) for p in s.split(";")])
    for arr, rep in res.hits:
        assert T.classify(arr).label == T.TIGHT and rep.tight


@pytest.mark.parametrize("d, k", [(3, 8), (4, 6)])
def test_pruner_matches_exhaustive_box(d, k):
    assert _arrays(SearchConfig(d=d, max_k=k)) == _arrays(SearchConfig(d=d, max_k=k, prune=False))


def test_rediscovers_catalog_rows_in_range():
    found = set(_arrays(SearchConfig(d=3, max_k=12))) | set(_arrays(SearchConfig(d=4, max_k=16)))
    for e in catalog.ENTRIES:
        if e.array.k <= (12 if e.array.d == 3 else 16) and e.array.d in (3, 4):
            assert str(e.array) in found


def test_antipodal_filter():
    for a in _arrays(SearchConfig(d=4, max_k=16, require_antipodal=True)):
        assert IntersectionArray.parse(a).is_antipodal()


def test_feasible_filter_drops_johnson():
    got = _arrays(SearchConfig(d=4, max_k=16, require_feasible=True))
    assert "16,9,4,1;1,4,9,16" not in got


def test_deterministic_ndjson():
    a = run_search(SearchConfig(d=4, max_k=12)).to_ndjson()
    b = run_search(SearchConfig(d=4, max_k=12)).to_ndjson()
    assert a == b
    for line in a.splitlines():
        obj = json.loads(line)
        assert set(obj) == {"array", "slack", "epsilon", "theta1", "thetad", "exact_pair"}


def test_parallel_equals_serial():
    serial = run_search(SearchConfig(d=4, max_k=12, workers=1)).to_ndjson()
    parallel = run_search(SearchConfig(d=4, max_k=12, workers=2)).to_ndjson()
    assert serial == parallel


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as info:
        run_search(SearchConfig(d=4, max_k=16, cap=100))
    assert info.value.count >= 100


def test_config_validation():
    with pytest.raises(ParamOutOfRange):
        SearchConfig(d=2, max_k=10)
    with pytest.raises(ParamOutOfRange):
        SearchConfig(d=3, max_k=2)
    with pytest.raises(ParamOutOfRange):
        SearchConfig(d=3, max_k=5, tolerance="fuzzy")


def test_worker_count_from_env(monkeypatch):
    monkeypatch.setenv("DRGT_THREADS", "3")
    assert SearchConfig(d=3, max_k=5).worker_count() == 3
    monkeypatch.delenv("DRGT_THREADS")
    assert SearchConfig(d=3, max_k=5).worker_count() == 1
