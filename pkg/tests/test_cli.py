from __future__ import annotations

import json

import pytest

from plathom import cli
from plathom.report import Report

TREFOIL = "n=2; word=[+2,+2,+2]"
UNKNOT = "n=1; word=[]"


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("PLATHOM_CACHE_DIR", str(d))
    monkeypatch.chdir(tmp_path)
    return d


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json-like")
    return code, json.loads(out), err


def test_total_unknot(capsys):
    code, obj, _ = as_json(capsys, "total", UNKNOT)
    assert code == 0
    assert obj["dims"] == {"delta": [[-1, 1], [1, 1]]}
    assert set(obj) == {"dims", "checks", "meta"}
    assert obj["meta"]["word"] == UNKNOT


def test_table_format(capsys):
    code, out, _ = run(capsys, "total", UNKNOT)
    assert code == 0 and "[delta]" in out


def test_compare_trefoil(capsys):
    code, obj, _ = as_json(capsys, "compare", TREFOIL)
    assert code == 0
    assert all(row[-1] == 0 for row in obj["dims"]["diff"])
    assert obj["checks"]["e2 == kh"]["ok"]


def test_kh_and_e2(capsys):
    _, kh, _ = as_json(capsys, "kh", TREFOIL)
    _, e2, _ = as_json(capsys, "e2", TREFOIL)
    assert kh["dims"]["h,q"] == e2["dims"]["h,q"] == [[0, 1, 1], [0, 3, 1], [2, 5, 1], [3, 9, 1]]


def test_check_d2(capsys):
    code, obj, _ = as_json(capsys, "check", "d2", TREFOIL)
    assert code == 0 and all(c["ok"] for c in obj["checks"].values())


def test_resolution(capsys):
    code, obj, _ = as_json(capsys, "resolution", TREFOIL, "111")
    assert code == 0
    assert sum(row[-1] for row in obj["dims"]["q"]) == 2 ** obj["meta"]["params"]["circles"]


@pytest.mark.parametrize("argv", [("total", "n=1; word=[+9]"), ("resolution", TREFOIL, "10"),
                                  ("check", "d2"), ("total", "garbage")])
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("error kind=")


def test_window_error(capsys):
    code, _, err = run(capsys, "total", TREFOIL, "--window-margin", "0", "--no-cache")
    assert code == 3 and "kind=window" in err


def test_failed_check_exit_code(capsys, monkeypatch):
    def failing(w, margin):
        r = cli.RunResult("total", cli.format_plat(w))
        rep = Report("always fails")
        rep.check(False, "witness")
        r.add_report(rep)
        return r
    monkeypatch.setattr(cli, "cmd_total", failing)
    code, out, _ = run(capsys, "total", UNKNOT, "--no-cache")
    assert code == 1 and "FAIL always fails" in out


def test_cache_hit_and_corruption(capsys, cache_dir):
    _, first, _ = run(capsys, "total", TREFOIL, "--format", "json-like")
    files = list(cache_dir.glob("*.json"))
    assert len(files) == 1
    blob = json.loads(files[0].read_text())
    assert cli.cache_read(cache_dir, files[0].stem).to_json() == blob["payload"]
    # a tampered payload fails the checksum and is recomputed
    blob["payload"] = blob["payload"].replace('"delta"', '"bogus"')
    files[0].write_text(json.dumps(blob))
    assert cli.cache_read(cache_dir, files[0].stem) is None
    _, again, _ = run(capsys, "total", TREFOIL, "--format", "json-like")
    assert again == first
    files[0].write_text("not json")
    _, third, _ = run(capsys, "total", TREFOIL, "--format", "json-like")
    assert third == first


def test_no_cache_writes_nothing(capsys, cache_dir):
    run(capsys, "total", UNKNOT, "--no-cache")
    assert not cache_dir.exists()


def test_config_file_and_flag_precedence(capsys, tmp_path):
    (tmp_path / "plathom.conf").write_text("format = json-like\nno-cache = true\n")
    code, out, _ = run(capsys, "total", UNKNOT)
    assert code == 0 and json.loads(out)["dims"]["delta"] == [[-1, 1], [1, 1]]
    code, out, _ = run(capsys, "total", UNKNOT, "--format", "table")
    assert out.startswith("# total")


def test_bad_config(capsys, tmp_path):
    (tmp_path / "plathom.conf").write_text("colour = blue\n")
    code, _, err = run(capsys, "total", UNKNOT)
    assert code == 2 and "kind=config" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "kh", UNKNOT, "--format", "json-like", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["dims"]["h,q"] == [[0, -1, 1], [0, 1, 1]]


def test_structured_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "compare", TREFOIL, "--format", "json-like", "--no-cache")
    _, b, _ = run(capsys, "compare", TREFOIL, "--format", "json-like", "--no-cache")
    assert a == b


def test_run_result_round_trip():
    r = cli.RunResult("kh", UNKNOT, {"h,q": [[0, 1, 1]]}, params={"x": 1})
    rep = Report("r")
    rep.check(True, "unused")
    r.add_report(rep)
    back = cli.RunResult.from_json(r.to_json())
    assert back.to_json() == r.to_json()
    assert back.word_hash == r.word_hash


def test_check_suites_parallel(capsys):
    code, obj, _ = as_json(capsys, "check", "moy", "--jobs", "2", "--no-cache")
    code1, obj1, _ = as_json(capsys, "check", "moy", "--no-cache")
    assert code == code1 == 0
    assert obj == obj1


def test_check_u_action(capsys):
    code, obj, _ = as_json(capsys, "check", "u-action", "n=2; word=[+2,+2]")
    assert code == 0 and len(obj["checks"]) == 4


def test_flags_before_verb(capsys):
    code, out, _ = run(capsys, "--format", "json-like", "--no-cache", "total", UNKNOT)
    assert code == 0 and json.loads(out)["dims"]["delta"] == [[-1, 1], [1, 1]]
    code, _, err = run(capsys, "--window-margin", "0", "total", TREFOIL, "--no-cache")
    assert code == 3 and "kind=window" in err
