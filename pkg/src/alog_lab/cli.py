"""Command-line front end: ``alog-lab {solve,check,ground,compare,stratify} FILE``."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from typing import Optional, TextIO

from . import alog, asolver, flog, slog
from .analysis import compare_semantics, stratify_report
from .errors import AlogError, CapExceeded, FragmentError
from .grounder import ground_alog, ground_flog
from .parser import parse_literals, parse_program
from .syntax import sorted_literals

log = logging.getLogger(__name__)

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: str
    semantics: str = "alog"
    dialect: str = "alog"
    int_range: Optional[tuple] = None
    caps: alog.Caps = alog.DEFAULT_CAPS
    mode: str = "oracle"
    all: bool = False
    json: bool = False
    trace: bool = False
    seed: Optional[int] = None
    candidate: Optional[str] = None
    unsafe: bool = False


def parse_int_range(text: str) -> tuple:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN..MAX, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_i, hi_i


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alog-lab", description="Answer sets for logic programs with aggregates.")
    ap.add_argument("command", choices=("solve", "check", "ground", "compare", "stratify"))
    ap.add_argument("path", help="program file, or - for stdin")
    ap.add_argument("--semantics", choices=("alog", "flog", "slog"), default="alog")
    ap.add_argument("--dialect", choices=("alog", "flog"), default="alog", help="grounding used by `ground`")
    ap.add_argument("--int-range", type=parse_int_range, metavar="MIN..MAX")
    ap.add_argument("--mode", choices=("oracle", "solver"), default="oracle")
    ap.add_argument("--all", action="store_true", help="print every answer set")
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--trace", action="store_true", help="log solver decisions (solver mode)")
    ap.add_argument("--seed", type=int, help="shuffle propagation order in solver mode")
    ap.add_argument("--candidate", help="literals to check, e.g. 'p(0),p(1)'")
    ap.add_argument("--unsafe", action="store_true", help="let unsafe variables range over all constants")
    ap.add_argument("--max-minimality-atoms", type=_positive, default=alog.DEFAULT_CAPS.max_minimality_atoms)
    ap.add_argument("--max-completion-atoms", type=_positive, default=alog.DEFAULT_CAPS.max_completion_atoms)
    ap.add_argument("--max-candidates", type=_positive, default=alog.DEFAULT_CAPS.max_candidates)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    caps = alog.Caps(ns.max_minimality_atoms, ns.max_completion_atoms, ns.max_candidates)
    return RunConfig(
        command=ns.command,
        path=ns.path,
        semantics=ns.semantics,
        dialect=ns.dialect,
        int_range=ns.int_range,
        caps=caps,
        mode=ns.mode,
        all=ns.all,
        json=ns.json,
        trace=ns.trace,
        seed=ns.seed,
        candidate=ns.candidate,
        unsafe=ns.unsafe,
    )


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _fmt(s) -> str:
    return " ".join(str(l) for l in sorted_literals(s))


def _sort_sets(sets) -> list:
    rows = [sorted_literals(s) for s in sets]
    return sorted(rows, key=lambda row: (len(row), [str(l) for l in row]))


def _answer_sets(cfg: RunConfig, program, out: TextIO) -> list:
    safe = not cfg.unsafe
    if cfg.semantics == "flog":
        return _sort_sets(flog.enumerate_answer_sets_flog(ground_flog(program, cfg.int_range, safe), cfg.caps))
    ground = ground_alog(program, cfg.int_range, safe)
    if cfg.semantics == "slog":
        return _sort_sets(slog.enumerate_answer_sets_slog(ground, cfg.caps))
    if cfg.mode == "solver":
        try:
            asolver.check_asolver_fragment(ground)
        except FragmentError as exc:
            log.warning("solver mode unavailable (%s); using the oracle", exc)
            return _sort_sets(alog.enumerate_answer_sets(ground, cfg.caps))
    if cfg.mode == "oracle":
        return _sort_sets(alog.enumerate_answer_sets(ground, cfg.caps))
    trace: Optional[list] = [] if cfg.trace else None
    rng = random.Random(cfg.seed) if cfg.seed is not None else None
    found = []
    try:
        for a in asolver.iter_solutions(ground, caps=cfg.caps, trace=trace, rng=rng):
            found.append(sorted_literals(a))
            if not cfg.all:
                break
    finally:
        if trace is not None and not cfg.json:
            for line in trace:
                out.write(f"% {line}\n")
    return found


def run(cfg: RunConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        program = parse_program(_read(cfg.path))
        if cfg.command == "ground":
            ground = (ground_flog if cfg.dialect == "flog" else ground_alog)(program, cfg.int_range, not cfg.unsafe)
            out.write(str(ground))
            return EXIT_OK
        if cfg.command == "stratify":
            out.write(json.dumps(stratify_report(program, cfg.int_range), indent=2) + "\n")
            return EXIT_OK
        if cfg.command == "compare":
            report = compare_semantics(program, cfg.caps, cfg.int_range, not cfg.unsafe)
            out.write(json.dumps(report.to_json(), indent=2) + "\n")
            return EXIT_OK
        if cfg.command == "check":
            if cfg.candidate is None:
                err.write("check needs --candidate\n")
                return EXIT_USAGE
            s = frozenset(parse_literals(cfg.candidate))
            safe = not cfg.unsafe
            if cfg.semantics == "flog":
                ok = flog.is_answer_set_flog(ground_flog(program, cfg.int_range, safe), s, cfg.caps)
            elif cfg.semantics == "slog":
                ok = slog.is_answer_set_slog(ground_alog(program, cfg.int_range, safe), s, cfg.caps)
            else:
                ok = alog.is_answer_set(ground_alog(program, cfg.int_range, safe), s, cfg.caps)
            if cfg.json:
                out.write(json.dumps({"schema": "alog-lab/1", "candidate": _fmt(s).split(), "answer_set": ok}) + "\n")
            else:
                out.write(f"{str(ok).lower()}\n")
            return EXIT_OK
        sets = _answer_sets(cfg, program, out)
        if not cfg.all:
            sets = sets[:1]
        if cfg.json:
            body = {"schema": "alog-lab/1", "semantics": cfg.semantics, "answer_sets": [[str(l) for l in s] for s in sets]}
            out.write(json.dumps(body) + "\n")
        elif not sets:
            out.write("INCONSISTENT\n")
        else:
            for s in sets:
                out.write(_fmt(s) + "\n")
        return EXIT_OK if sets else EXIT_INCONSISTENT
    except CapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except (AlogError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
        cfg = config_from_args(ns)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
