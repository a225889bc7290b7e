import io
import json
import subprocess
import sys

import pytest

from alog_lab.cli import main, parse_int_range, run, RunConfig
from helpers import P3, P4, P6, P7, P8, TRACE


@pytest.fixture
def prog(tmp_path):
    def write(text, name="prog.lp"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    from alog_lab.cli import build_parser, config_from_args

    cfg = config_from_args(build_parser().parse_args(list(argv)))
    code = run(cfg, out, err)
    return code, out.getvalue(), err.getvalue()


def test_solve_p3(prog):
    assert call("solve", prog(P3)) == (0, "p(a) p(b) q(a) r\n", "")


def test_solve_p3_flog(prog):
    assert call("solve", prog(P3), "--semantics", "flog")[1] == "p(a) p(b) q(a)\n"


def test_check_p6(prog):
    path = prog(P6)
    assert call("check", path, "--semantics", "flog", "--candidate", "p(0),p(1)", "--int-range", "0..1")[1] == "true\n"
    assert call("check", path, "--semantics", "alog", "--candidate", "p(0),p(1)", "--int-range", "0..1")[1] == "false\n"


def test_solve_inconsistent(prog):
    assert call("solve", prog(P4)) == (1, "INCONSISTENT\n", "")
    assert call("solve", prog(P4), "--mode", "solver")[:2] == (1, "INCONSISTENT\n")


def test_solve_all_sorted(prog):
    code, out, _ = call("solve", prog(P7), "--semantics", "slog", "--all")
    assert code == 0 and out == "q\np(a) p(b)\n"


def test_solve_json(prog):
    _, out, _ = call("solve", prog(P7), "--all", "--json", "--semantics", "slog")
    assert json.loads(out) == {"schema": "alog-lab/1", "semantics": "slog", "answer_sets": [["q"], ["p(a)", "p(b)"]]}


def test_solver_trace_output(prog):
    code, out, _ = call("solve", prog(TRACE), "--mode", "solver", "--trace")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "p(b)"
    assert lines[0] == "% cons: not p(a) [rule 3]"
    assert all(l.startswith("% ") for l in lines[:-1])


def test_solver_falls_back_to_oracle(prog, caplog):
    assert call("solve", prog(P8), "--mode", "solver")[:2] == (1, "INCONSISTENT\n")
    assert "using the oracle" in caplog.text


def test_ground_dialects(prog):
    path = prog("q(Y) :- card{X:p(X,Y)} = 1, r(Y). r(a).")
    _, out, _ = call("ground", path)
    assert "q(a) :- count{X:p(X,a)} = 1, r(a)." in out
    _, out, _ = call("ground", path, "--dialect", "flog")
    assert "count{a:p(a,a)} = 1" in out


def test_compare_and_stratify(prog):
    _, out, _ = call("compare", prog(P6), "--int-range", "0..1")
    data = json.loads(out)
    assert data["flog"] == [["p(0)", "p(1)"]] and data["alog"] == [] and data["inclusion_af"] is True
    _, out, _ = call("stratify", prog(P6))
    assert json.loads(out)["stratified"] is False


def test_usage_errors(prog, capsys):
    assert call("check", prog(P3))[0] == 2
    assert call("solve", prog("p(a"))[0] == 2
    assert call("solve", "/nonexistent/file.lp")[0] == 2
    assert main(["solve"]) == 2
    assert main(["solve", prog(P3), "--int-range", "3..1"]) == 2
    assert main(["solve", prog(P3), "--max-candidates", "0"]) == 2


def test_cap_exit_code(prog):
    text = " ".join(f"p({i}) :- not q({i}). q({i}) :- not p({i})." for i in range(6))
    code, _, err = call("solve", prog(text), "--max-candidates", "100")
    assert code == 3
    assert err == "error: candidate answer sets: 4096 exceeds cap 100\n"


def test_parse_int_range():
    assert parse_int_range("0..3") == (0, 3)
    assert parse_int_range("-2..2") == (-2, 2)


def test_runconfig_defaults():
    cfg = RunConfig("solve", "x")
    assert cfg.semantics == "alog" and cfg.mode == "oracle" and cfg.caps.max_minimality_atoms == 20


def test_deterministic_output(prog):
    path = prog(TRACE)
    argv = [sys.executable, "-m", "alog_lab", "solve", path, "--mode", "solver", "--trace", "--seed", "7", "--all"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0].endswith(b"p(b)\n")
