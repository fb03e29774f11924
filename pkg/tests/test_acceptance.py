"""Acceptance criteria, one test each, with pinned time budgets.

Each criterion runs a group of registered suites over the default corpus
and prints a single PASS/FAIL line.  Run directly for just the summary:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import json
import sys
import time

import pytest

from mvspec.corpus import default_corpus
from mvspec.verify import run_suite

# (name, suite ids, budget in seconds)
CRITERIA = [
    ("ideal-lattice laws", ["ideal-sum-closed-sets", "open-sum"], 60),
    ("spectrality", ["spectrum-sober", "spectrum-spectral"], 60),
    ("functor isomorphisms", ["belluce-idc", "compact-opens"], 60),
    ("closedness equivalence", ["closed-epi-equivalence", "closed-epi-dual"], 300),
    ("chain counterexample", ["chain-counterexample"], 1),
    ("classification equivalences",
     ["chang-variety", "komori-variety", "perfect-prime-supermaximal", "local-spectrum",
      "rank-convention"], 120),
    ("l-group spectrum instance", ["lgroup-spectrum", "komori-spectra"], 5),
    ("Chang table vs gamma", ["chang-table"], 5),
    ("McNaughton suite",
     ["rho-zero", "zero-at-origin", "local-homogeneity", "non-homogeneous-witness",
      "homogenization", "zeroset-1d", "homogeneous-cones"], 120),
    ("Delta(Q) term zerosets", ["form1-zerosets"], 120),
]

RESULTS: list[str] = []


def evaluate(name, ids, budget, corpus):
    start = time.perf_counter()
    entries = [run_suite(i, corpus) for i in ids]
    elapsed = time.perf_counter() - start
    failed = [e for e in entries if not e.passed]
    ok = not failed and elapsed < budget
    line = f"{'PASS' if ok else 'FAIL'}  {name:<30} {elapsed:7.2f} s (budget {budget} s)"
    for e in failed:
        line += f"\n      {e.ident}: {json.dumps(e.counterexample, ensure_ascii=False, default=str)[:240]}"
    return ok, elapsed, failed, line


@pytest.fixture(scope="module")
def corpus():
    return default_corpus()


@pytest.mark.parametrize("name, ids, budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, ids, budget, corpus):
    ok, elapsed, failed, line = evaluate(name, ids, budget, corpus)
    RESULTS.append(line)
    print("\n" + line)
    assert not failed, f"{[e.ident for e in failed]} failed: {failed[0].counterexample}"
    assert elapsed < budget, f"{elapsed:.2f} s exceeds the {budget} s budget"


if __name__ == "__main__":
    c = default_corpus()
    passed = 0
    for crit in CRITERIA:
        ok, _, _, line = evaluate(*crit, c)
        passed += ok
        print(line)
    print(f"{passed}/{len(CRITERIA)} criteria pass")
    sys.exit(0 if passed == len(CRITERIA) else 1)
