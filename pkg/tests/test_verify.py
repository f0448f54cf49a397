"""The gate battery itself, plus a mutation canary on the selection walk."""

import json
import subprocess
import sys

import pytest

from botchain import verify_suite
from botchain.erasure import erasure_chain
from botchain.sampling import preimage_census
from botchain.verify import (
    census_verdict,
    chains_equal,
    propagation_verdict,
    run_censuses,
)


def test_quick_battery_green():
    status, report = verify_suite("quick")
    assert status == 0
    assert report["ok"] is True
    assert all(c["ok"] for c in report["checks"])
    names = [c["name"] for c in report["checks"]]
    assert names == [
        "roundtrip",
        "census-small",
        "growth-inverse",
        "fastpath-enumerated",
        "fastpath-random",
        "compat-random",
        "theta-coherence",
        "sampler-chi2",
        "grow-chi2",
    ]
    # the report must survive serialization for the CLI's --json path
    json.dumps(report)


def test_unknown_level_rejected():
    with pytest.raises(ValueError, match="unknown level"):
        verify_suite("thorough")


def test_chains_equal_discriminates(w, recon):
    a = erasure_chain(w)
    assert chains_equal(a, erasure_chain(w))
    assert not chains_equal(a, erasure_chain(recon))


def test_census_verdict_rejects_doctored_counts():
    censuses = run_censuses(2, 2)
    ok, _ = census_verdict(censuses)
    assert ok
    doctored = {k: dict(v) for k, v in censuses.items()}
    key = next(iter(doctored[2]))
    doctored[2][key] += 1
    ok, detail = census_verdict(doctored)
    assert not ok
    assert "BAD" in detail


def test_propagation_verdict_small():
    ok, detail = propagation_verdict(preimage_census(3), 3)
    assert ok
    assert "n=3->2" in detail


_MUTANT_PROGRAM = """
import signal
signal.alarm(5)  # a wandering walk dies here instead of spinning forever

import botchain.erasure as erasure
from botchain.tree import LEAF

def minority_walk(t, min3):
    kind, left, right, label = t.kind, t.left, t.right, t.label
    v = t.top
    while True:
        l, r = left[v], right[v]
        if kind[l] == LEAF and kind[r] == LEAF:
            return v
        a = [label[l]] if kind[l] == LEAF else min3[l]
        b = [label[r]] if kind[r] == LEAF else min3[r]
        i = j = from_left = 0
        for _ in range(3):
            if j >= len(b) or (i < len(a) and a[i] < b[j]):
                from_left += 1
                i += 1
            else:
                j += 1
        v = r if from_left >= 2 else l

erasure._walk = minority_walk
from botchain.sampling import preimage_census
from botchain.verify import census_verdict
ok, _ = census_verdict({2: preimage_census(2)})
print("VERDICT_OK" if ok else "VERDICT_RED")
"""


def test_walk_mutation_is_caught():
    # steering toward the minority child must never survive the census gate;
    # the mutant may miscount, crash, or wander a corrupted arena forever,
    # so the experiment runs out of process under a time budget
    try:
        proc = subprocess.run(
            [sys.executable, "-c", _MUTANT_PROGRAM],
            capture_output=True,
            text=True,
            timeout=30,
        )
        came_back_green = proc.returncode == 0 and "VERDICT_OK" in proc.stdout
    except subprocess.TimeoutExpired:
        came_back_green = False
    assert not came_back_green
