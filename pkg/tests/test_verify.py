import pytest

from mvspec.corpus import CorpusSpec
from mvspec.errors import MvsError
from mvspec.verify import registry, run_verify

SMALL = CorpusSpec(max_algebra_size=4, max_product_size=6, max_lattice_size=4)


def test_registry_is_nonempty_and_sorted():
    ids = list(registry())
    assert ids == sorted(ids) and len(ids) >= 30


def test_empty_selection():
    report = run_verify(SMALL, [])
    assert report.ok and report.entries == []


def test_unknown_id():
    with pytest.raises(MvsError):
        run_verify(SMALL, ["nope"])


def test_open_sum_passes():
    (entry,) = run_verify(SMALL, ["open-sum"]).entries
    assert entry.passed and entry.counterexample is None


def test_chain_counterexample_reports_witness():
    (entry,) = run_verify(SMALL, ["chain-counterexample"]).entries
    assert entry.counterexample["witness"] == [0, 1, 2]
    assert entry.counterexample["preserves_closed"] is False


def test_stable_output():
    ids = ["ideal-sum-closed-sets", "closed-epi-equivalence", "rank-convention"]
    a = run_verify(SMALL, ids).as_dict(timings=False)
    b = run_verify(SMALL, ids).as_dict(timings=False)
    assert a == b
    assert [r["id"] for r in a["results"]] == sorted(ids)


def test_parallel_matches_serial():
    ids = ["open-sum", "spectrum-sober", "chang-table"]
    serial = run_verify(SMALL, ids).as_dict(timings=False)
    assert run_verify(SMALL, ids, jobs=2).as_dict(timings=False) == serial
