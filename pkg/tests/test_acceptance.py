"""Acceptance criteria 1-10.

Two ``plathom selftest`` runs are started side by side.  Criteria 1-9 are
read from the structured output of the first; criterion 10 is byte identity
of the two outputs.  One PASS/FAIL line per criterion is printed to the
terminal (also when run directly with ``python3 tests/test_acceptance.py``).
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

TITLES = {
    1: "d^2 = 0 for d0 and d0 + d1",
    2: "vertex homology free of rank one",
    3: "E2 page equals Khovanov homology",
    4: "edge-map identity d+d- = d-d+ = U1 - U4",
    5: "U_i = -U_j and U_i^2 = 0 on homology",
    6: "MOY suite",
    7: "invariance of total homology",
    8: "sl1 homology and composition product",
    9: "strands algebra relations and isomorphism",
    10: "determinism of structured selftest output",
}

COMMAND = [sys.executable, "-m", "plathom", "selftest", "--format", "json-like", "--no-cache"]


def run_twice() -> tuple[str, str, list[int]]:
    env = dict(os.environ, PYTHONHASHSEED="random")
    procs = [subprocess.Popen(COMMAND, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                              text=True, env=env) for _ in range(2)]
    outs = [p.communicate(timeout=3600) for p in procs]
    return outs[0][0], outs[1][0], [p.returncode for p in procs]


def verdicts(first: str, second: str) -> dict[int, tuple[bool, str]]:
    out = {}
    try:
        checks = json.loads(first)["checks"]
    except ValueError:
        checks = {}
    for n in range(1, 10):
        got = [c for name, c in checks.items() if name.startswith(f"criterion {n:02d} ")]
        if len(got) != 1:
            out[n] = (False, "missing from selftest output")
        else:
            c = got[0]
            out[n] = (c["ok"] and c["checked"] > 0,
                      f"{c['checked']} checked, {c['failed']} failed")
    same = bool(first) and first == second
    out[10] = (same, "outputs byte-identical" if same else "outputs differ")
    return out


def report_lines(results: dict[int, tuple[bool, str]]) -> list[str]:
    return [f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {TITLES[n]} ({detail})"
            for n, (ok, detail) in sorted(results.items())]


@pytest.fixture(scope="module")
def results(request):
    first, second, codes = run_twice()
    res = verdicts(first, second)
    capman = request.config.pluginmanager.getplugin("capturemanager")
    with capman.global_and_fixture_disabled():
        print()
        for line in report_lines(res):
            print(line)
    return res, codes


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(results, number):
    res, _ = results
    ok, detail = res[number]
    assert ok, f"criterion {number}: {detail}"


def test_selftest_exit_codes(results):
    _, codes = results
    assert codes == [0, 0]


if __name__ == "__main__":
    first, second, _ = run_twice()
    res = verdicts(first, second)
    print("\n".join(report_lines(res)))
    sys.exit(0 if all(ok for ok, _ in res.values()) else 1)
