"""Command-line interface: ``plathom <verb> [args]``.

Verbs: total, e2, kh, compare, resolution, check, selftest.  Results are
printed as a table (default) or as one JSON object with ``dims``,
``checks`` and ``meta`` keys (``--format json-like``).  Structured output
carries no timings so identical runs are byte-identical.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .diagram import DiagramError, PlatWord, format_plat, parse_plat, resolve
from .homology import WindowError
from .report import Report

DEFAULTS = {
    "window-margin": 4,
    "format": "table",
    "jobs": 1,
    "degree-bound": 3,
    "no-cache": False,
    "cache-dir": None,
}

SUITES = ("d2", "moy", "invariance", "algebra", "sl1", "u-action", "commutativity")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_WINDOW, EXIT_INTERNAL = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.kind, self.code = kind, code


@dataclass
class RunResult:
    command: str
    word: str | None = None
    dims: dict = field(default_factory=dict)      # table name -> rows [keys..., dim]
    checks: dict = field(default_factory=dict)    # name -> {ok, checked, failed, witnesses}
    params: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks.values())

    @property
    def word_hash(self) -> str | None:
        if self.word is None:
            return None
        return hashlib.sha256(self.word.encode()).hexdigest()[:16]

    def add_report(self, rep: Report, key: str | None = None) -> None:
        self.checks[key or rep.name] = {
            "ok": rep.ok, "checked": rep.checked, "failed": rep.n_failed,
            "witnesses": [repr(w) for w in rep.failures[:5]],
        }

    def to_json(self) -> str:
        obj = {
            "dims": self.dims,
            "checks": self.checks,
            "meta": {"command": self.command, "word": self.word,
                     "word_hash": self.word_hash, "params": self.params,
                     "version": __version__},
        }
        return json.dumps(obj, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunResult":
        obj = json.loads(text)
        meta = obj["meta"]
        return cls(meta["command"], meta["word"], obj["dims"], obj["checks"], meta["params"])

    def to_table(self) -> str:
        lines = [f"# {self.command}" + (f"  {self.word}" if self.word else "")]
        for name in sorted(self.dims):
            lines.append(f"[{name}]")
            rows = self.dims[name]
            if not rows:
                lines.append("  (zero)")
            for row in rows:
                keys = " ".join(f"{k:>4}" for k in row[:-1])
                lines.append(f"  {keys} : {row[-1]}")
        for name in sorted(self.checks):
            c = self.checks[name]
            status = "PASS" if c["ok"] else "FAIL"
            lines.append(f"{status} {name} ({c['checked']} checked, {c['failed']} failed)")
            for w in c["witnesses"]:
                lines.append(f"    witness: {w}")
        return "\n".join(lines)


def _rows(d) -> list:
    return [list(k) + [v] if isinstance(k, tuple) else [k, v] for k, v in sorted(d.items())]


# -- configuration and cache --------------------------------------------------------------

def load_config(path: str | None) -> dict:
    """Read ``key = value`` lines; missing file means no settings."""
    p = Path(path) if path else Path("plathom.conf")
    if not p.exists():
        if path:
            raise CliError("config", f"config file {path} not found")
        return {}
    parser = configparser.ConfigParser()
    try:
        parser.read_string("[plathom]\n" + p.read_text())
    except configparser.Error as exc:
        raise CliError("config", f"bad config file: {exc}") from exc
    out = {}
    for key, raw in parser["plathom"].items():
        if key not in DEFAULTS:
            raise CliError("config", f"unknown config key {key!r}")
        if key in ("window-margin", "jobs", "degree-bound"):
            out[key] = int(raw)
        elif key == "no-cache":
            out[key] = parser["plathom"].getboolean(key)
        else:
            out[key] = raw
    return out


def cache_dir(settings: dict) -> Path:
    env = os.environ.get("PLATHOM_CACHE_DIR")
    if env:
        return Path(env)
    if settings.get("cache-dir"):
        return Path(settings["cache-dir"])
    return Path.home() / ".cache" / "plathom"


def cache_key(command: str, word: str | None, params: dict) -> str:
    text = json.dumps([__version__, command, word, params], sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()


def cache_read(root: Path, key: str) -> RunResult | None:
    path = root / f"{key}.json"
    try:
        blob = json.loads(path.read_text())
        payload = blob["payload"]
        if hashlib.sha256(payload.encode()).hexdigest() != blob["checksum"]:
            return None
        return RunResult.from_json(payload)
    except (OSError, ValueError, KeyError, TypeError):
        return None


def cache_write(root: Path, key: str, result: RunResult) -> None:
    payload = result.to_json()
    blob = {"checksum": hashlib.sha256(payload.encode()).hexdigest(), "payload": payload}
    try:
        root.mkdir(parents=True, exist_ok=True)
        tmp = root / f"{key}.tmp{os.getpid()}"
        tmp.write_text(json.dumps(blob))
        tmp.replace(root / f"{key}.json")
    except OSError:
        pass


# -- commands -----------------------------------------------------------------------------

def _word(text: str) -> PlatWord:
    try:
        return parse_plat(text)
    except DiagramError as exc:
        raise CliError("parse", str(exc)) from exc


def cmd_total(w: PlatWord, margin: int) -> RunResult:
    from .homology import total_homology
    r = RunResult("total", format_plat(w), params={"window_margin": margin})
    r.dims["delta"] = _rows(total_homology(w, margin))
    return r


def cmd_e2(w: PlatWord, margin: int) -> RunResult:
    from .homology import e2_page
    r = RunResult("e2", format_plat(w), params={"window_margin": margin})
    r.dims["h,q"] = _rows(e2_page(w, margin))
    return r


def cmd_kh(w: PlatWord) -> RunResult:
    from .khovanov import kh_delta, kh_homology
    r = RunResult("kh", format_plat(w))
    r.dims["h,q"] = _rows(kh_homology(w))
    r.dims["delta"] = _rows(kh_delta(w))
    return r


def cmd_compare(w: PlatWord, margin: int) -> RunResult:
    from .homology import e2_page
    from .khovanov import kh_homology
    r = RunResult("compare", format_plat(w), params={"window_margin": margin})
    e2, kh = e2_page(w, margin), kh_homology(w)
    keys = sorted(set(e2) | set(kh))
    r.dims["e2"] = _rows(e2)
    r.dims["kh"] = _rows(kh)
    r.dims["diff"] = [list(k) + [e2.get(k, 0) - kh.get(k, 0)] for k in keys]
    rep = Report("e2 == kh")
    for k in keys:
        rep.check(e2.get(k, 0) == kh.get(k, 0), k)
    r.add_report(rep)
    return r


def _bits(text: str, w: PlatWord) -> tuple:
    text = text.strip().replace(",", "")
    if len(text) != len(w) or any(c not in "01" for c in text):
        raise CliError("parse", f"resolution vector must be {len(w)} binary digits")
    return tuple(int(c) for c in text)


def cmd_resolution(w: PlatWord, bits: tuple, margin: int) -> RunResult:
    from .homology import resolution_homology, u_action_identities
    r = RunResult("resolution", format_plat(w),
                  params={"bits": "".join(map(str, bits)), "window_margin": margin})
    vh, mr = resolution_homology(resolve(w, bits), margin)
    r.dims["q"] = _rows(vh.dims)
    rep = Report("free rank-one module")
    rep.check(mr.total_ok, f"total dim {mr.dims.total} != 2^{mr.k}")
    rep.check(mr.binomial_ok, "q-support is not binomial")
    rep.check(mr.free_ok, "square-free products of X_i are dependent")
    r.add_report(rep)
    ua = u_action_identities(vh)
    rep2 = Report("u-action")
    rep2.checked = ua.checked
    for f in ua.failures:
        rep2.check(False, f)
    r.add_report(rep2)
    r.params["circles"] = mr.k
    return r


def _suite_jobs(suite: str, w: PlatWord | None, bits, margin: int, degree: int) -> list:
    """Independent units of a check suite, as picklable (fn name, args)."""
    from .acceptance import MOVE_CASES, MOY_CASES
    if suite in ("d2", "u-action", "commutativity") and w is None:
        raise CliError("usage", f"suite {suite} needs a word")
    if suite == "d2":
        return [("d2", (w, margin))]
    if suite in ("u-action", "commutativity"):
        from itertools import product
        all_bits = [bits] if bits is not None else list(product((0, 1), repeat=len(w)))
        return [(suite, (w, b, margin)) for b in all_bits]
    if suite == "moy":
        return [("moy", (c, margin)) for c in MOY_CASES]
    if suite == "invariance":
        if w is not None:
            from .homology import MOVES
            cases = [(m, w, None, 1) for m in MOVES
                     if m not in ("RII", "RIII", "cap_swap", "cup_swap") or
                     (m in ("cap_swap", "cup_swap") and w.n_pairs >= 2)]
            cases += [("RII", w, (len(w), 1), 1)]
        else:
            cases = MOVE_CASES
        return [("invariance", (c, margin)) for c in cases]
    if suite == "algebra":
        return [("relations", (n, degree)) for n in (1, 2, 3)] + \
               [("associativity", (n, degree)) for n in (1, 2)] + \
               [("iso", (n, degree)) for n in (1, 2)]
    if suite == "sl1":
        return [("sl1", (margin,))]
    raise CliError("usage", f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def _run_unit(unit) -> tuple[list, dict]:
    """Run one check unit; returns (reports, dims tables)."""
    kind, args = unit
    if kind == "d2":
        from .chain import d_squared_check
        return [d_squared_check(*args)], {}
    if kind == "u-action":
        from .homology import resolution_homology, u_action_identities
        w, b, margin = args
        vh, _ = resolution_homology(resolve(w, b), margin)
        ua = u_action_identities(vh)
        rep = Report(f"u-action {''.join(map(str, b))}")
        rep.checked = ua.checked
        for f in ua.failures:
            rep.check(False, f)
        return [rep], {}
    if kind == "commutativity":
        from .chain import module_relations_check
        w, b, _ = args
        rep = module_relations_check(resolve(w, b))
        rep.name = f"module relations {''.join(map(str, b))}"
        return [rep], {}
    if kind == "moy":
        from .homology import moy_check
        (k, n, levels, site), margin = args
        res = moy_check(k, n, levels, site, margin)
        tag = f"MOY {k} n={n} levels={list(levels)} site={site}"
        rep = Report(tag)
        rep.check(res.ok, (dict(res.after), dict(res.expected)))
        return [rep], {tag: _rows(res.after)}
    if kind == "invariance":
        from .homology import invariance_check
        (move, w, site, sign), margin = args
        res = invariance_check(move, w, site, sign, margin)
        tag = f"{move} {format_plat(w)} -> {format_plat(res.partner)}"
        rep = Report(tag)
        rep.check(res.ok, (dict(res.dims), dict(res.partner_dims)))
        return [rep], {f"total {format_plat(w)}": _rows(res.dims),
                       f"total {format_plat(res.partner)}": _rows(res.partner_dims)}
    if kind == "relations":
        from .strands import relation_suite
        n, degree = args
        reps = relation_suite(n, degree)
        for name, rep in reps.items():
            rep.name = f"A_{n} {name}"
        return list(reps.values()), {}
    if kind == "associativity":
        from .strands import StrandsAlgebra, associativity_check
        n, degree = args
        return [associativity_check(StrandsAlgebra(n, k, q), degree)
                for k, q in (("A", False), ("A", True), ("B", False), ("B", True))], {}
    if kind == "iso":
        from .strands import iso_check
        n, degree = args
        reps = iso_check(n, degree)
        for name, rep in reps.items():
            rep.name = f"h n={n} {name}"
        return list(reps.values()), {}
    if kind == "sl1":
        from .acceptance import criterion_8
        out = criterion_8(*args)
        return [out.report], out.tables
    if kind == "criterion":
        from .acceptance import run_criterion
        number, margin, degree = args
        out = run_criterion(number, margin, degree)
        out.report.name = f"criterion {number:02d} {out.title}"
        return [out.report], {f"c{number:02d} {k}": v for k, v in out.tables.items()}
    raise ValueError(f"unknown unit {kind}")


def _run_units(units: list, jobs: int) -> list:
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_unit, units))
    return [_run_unit(u) for u in units]


def cmd_check(suite: str, w: PlatWord | None, bits, margin: int, degree: int,
              jobs: int) -> RunResult:
    r = RunResult(f"check {suite}", format_plat(w) if w is not None else None,
                  params={"window_margin": margin, "degree_bound": degree,
                          "bits": "".join(map(str, bits)) if bits else None})
    for reps, tables in _run_units(_suite_jobs(suite, w, bits, margin, degree), jobs):
        for rep in reps:
            r.add_report(rep)
        r.dims.update(tables)
    return r


def cmd_selftest(margin: int, degree: int, jobs: int) -> RunResult:
    r = RunResult("selftest", params={"window_margin": margin, "degree_bound": degree})
    units = [("criterion", (i, margin, degree)) for i in range(1, 10)]
    for reps, tables in _run_units(units, jobs):
        for rep in reps:
            r.add_report(rep)
        r.dims.update(tables)
    return r


# -- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # unset options are left out of the namespace so a flag given before the
    # verb is not overwritten by the subcommand's copy of the same option
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--window-margin", type=int,
                        help="padding of homology windows (default 4)")
    common.add_argument("--format", choices=("table", "json-like"))
    common.add_argument("--jobs", type=int, help="worker processes")
    common.add_argument("--degree-bound", type=int,
                        help="u-degree bound for the algebra suites (default 3)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--config", help="config file (default ./plathom.conf)")
    common.add_argument("--output", help="write the result to this file")
    common.add_argument("--timing", action="store_true", help="report elapsed time on stderr")

    p = argparse.ArgumentParser(prog="plathom", parents=[common],
                                description="Singular-resolution link homology of plat closures.")
    p.add_argument("--version", action="version", version=f"plathom {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb, helptext in (("total", "delta-graded total homology"),
                           ("e2", "(h, q)-graded E2 page"),
                           ("kh", "Khovanov homology oracle"),
                           ("compare", "E2 page against the Khovanov oracle")):
        sp = sub.add_parser(verb, parents=[common], help=helptext)
        sp.add_argument("word", help='plat word, e.g. "n=2; word=[+2,+2,+2]"')
    sp = sub.add_parser("resolution", parents=[common], help="vertex homology of one resolution")
    sp.add_argument("word")
    sp.add_argument("bits", help="resolution vector, e.g. 101")
    sp = sub.add_parser("check", parents=[common], help="run a check suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("word", nargs="?")
    sp.add_argument("--bits", default=None)
    sub.add_parser("selftest", parents=[common], help="run the acceptance corpus")
    return p


def _settings(args, config: dict) -> dict:
    out = dict(DEFAULTS)
    out.update(config)
    for key in ("window-margin", "format", "jobs", "degree-bound", "no-cache"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            out[key] = val
    if out["format"] not in ("table", "json-like"):
        raise CliError("config", f"bad format {out['format']!r}")
    if out["jobs"] < 1 or out["window-margin"] < 0 or out["degree-bound"] < 0:
        raise CliError("usage", "jobs must be positive and bounds nonnegative")
    return out


def run(args, settings: dict) -> RunResult:
    margin, degree, jobs = settings["window-margin"], settings["degree-bound"], settings["jobs"]
    verb = args.verb
    w = _word(args.word) if getattr(args, "word", None) else None
    bits = None
    if verb == "resolution":
        bits = _bits(args.bits, w)
    elif verb == "check" and getattr(args, "bits", None) is not None:
        if w is None:
            raise CliError("usage", "--bits needs a word")
        bits = _bits(args.bits, w)
    key_params = {"verb": verb, "suite": getattr(args, "suite", None), "bits": bits,
                  "margin": margin, "degree": degree}
    root = cache_dir(settings)
    key = cache_key(verb, format_plat(w) if w else None, key_params)
    if not settings["no-cache"] and verb != "selftest":
        hit = cache_read(root, key)
        if hit is not None:
            return hit
    if verb == "total":
        result = cmd_total(w, margin)
    elif verb == "e2":
        result = cmd_e2(w, margin)
    elif verb == "kh":
        result = cmd_kh(w)
    elif verb == "compare":
        result = cmd_compare(w, margin)
    elif verb == "resolution":
        result = cmd_resolution(w, bits, margin)
    elif verb == "check":
        result = cmd_check(args.suite, w, bits, margin, degree, jobs)
    else:
        result = cmd_selftest(margin, degree, jobs)
    if not settings["no-cache"] and verb != "selftest":
        cache_write(root, key, result)
    return result


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        settings = _settings(args, load_config(getattr(args, "config", None)))
        result = run(args, settings)
    except CliError as exc:
        print(f"error kind={exc.kind}: {exc}", file=sys.stderr)
        return exc.code
    except WindowError as exc:
        print(f"error kind=window: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except (ValueError, AssertionError) as exc:
        print(f"error kind=internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = result.to_json() if settings["format"] == "json-like" else result.to_table()
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    if getattr(args, "timing", False):
        print(f"elapsed {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
