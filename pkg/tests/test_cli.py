import subprocess
import sys

import pytest

from tracealg import cli, imp


@pytest.fixture
def run_cli(capsys, fixtures, monkeypatch):
    monkeypatch.chdir(fixtures)

    def invoke(*argv):
        code = cli.main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err
    return invoke


def test_run_imp_matches_golden(run_cli, golden):
    code, out, _ = run_cli("run", "--lang", "imp", "--program", "halve.imp", "--input", "x=12")
    assert code == 0
    assert out == golden.joinpath("imp_halve_x12.txt").read_text(encoding="utf-8")


def test_run_lam_square(run_cli, golden):
    code, out, _ = run_cli("run", "--lang", "lam", "--program", "square_plus_one.lam", "--input", "7")
    assert code == 0
    assert out == golden.joinpath("lam_square_7.txt").read_text(encoding="utf-8")


def test_run_eqn(run_cli, golden):
    code, out, _ = run_cli("run", "--lang", "eqn", "--program", "halve.eqn", "--input", "12")
    assert code == 0
    assert out == golden.joinpath("eqn_halve_f12.txt").read_text(encoding="utf-8")


def test_run_nondeterministic_prints_every_sequence(run_cli):
    code, out, _ = run_cli("run", "--lang", "imp", "--program", "halve_nondet.imp", "--input", "x=8")
    assert code == 0
    assert out.count("\n\n") == 3


def test_malformed_program_exit_1(run_cli):
    code, _, err = run_cli("run", "--lang", "eqn", "--program", "malformed.eqn", "--input", "3")
    assert code == cli.EXIT_PARSE and "line 1" in err


def test_missing_file_and_usage_errors_exit_1(run_cli):
    assert run_cli("run", "--lang", "imp", "--program", "nope.imp", "--input", "x=1")[0] == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--lang", "cobol"])
    assert exc.value.code == 1


def test_stuck_exit_2(run_cli):
    code, _, err = run_cli("run", "--lang", "eqn", "--program", "bool_id_cases.eqn", "--input", "3")
    assert code == cli.EXIT_STUCK and "stuck" in err


def test_step_limit_exit_3(run_cli, tmp_path):
    prog = tmp_path / "loop.imp"
    prog.write_text("while true do skip")
    code, out, _ = run_cli("run", "--lang", "imp", "--program", str(prog), "--input", "x=0",
                           "--max-steps", "10")
    assert code == cli.EXIT_LIMIT and "truncated" in out
    code, _, _ = run_cli("enumerate", "--lang", "imp", "--program", str(prog), "--inputs", "x=0",
                         "--max-steps", "10")
    assert code == cli.EXIT_LIMIT


def test_sequence_limit_exit_3(run_cli):
    code, _, _ = run_cli("enumerate", "--lang", "imp", "--program", "halve_nondet.imp",
                         "--inputs", "x=8", "--max-seqs", "3")
    assert code == cli.EXIT_LIMIT


def _traces(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_enumerate_reproduces_long_traces(run_cli, golden):
    code, out, _ = run_cli("enumerate", "--lang", "imp", "--program", "halve.imp",
                           "--inputs", "x=7,8,12")
    assert code == 0
    assert _traces(out) == golden.joinpath("halve_7_8_12.traces").read_text().splitlines()


def test_enumerate_dedup(run_cli, golden):
    _, out, _ = run_cli("enumerate", "--lang", "imp", "--program", "halve.imp",
                        "--inputs", "x=7,8,12", "--dedup")
    assert _traces(out) == golden.joinpath("halve_7_8_12_dedup.traces").read_text().splitlines()


def test_enumerate_nondeterministic(run_cli):
    _, out, _ = run_cli("enumerate", "--lang", "imp", "--program", "halve_nondet.imp",
                        "--inputs", "x=8", "--dedup", "--keep", "x")
    assert _traces(out) == ["(8)|(1)", "(8)|(2)|(1)", "(8)|(4)|(1)", "(8)|(4)|(2)|(1)"]


def test_enumerate_writes_identical_files(run_cli, tmp_path):
    outs = []
    for name in ("a.traces", "b.traces"):
        path = tmp_path / name
        assert run_cli("enumerate", "--lang", "eqn", "--program", "halve.eqn",
                       "--inputs", "1..20", "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert list(tmp_path.iterdir()) and not any(p.name.startswith(".tmp-") for p in tmp_path.iterdir())


@pytest.fixture
def halve_sets(run_cli, tmp_path):
    short, long = tmp_path / "short.traces", tmp_path / "long.traces"
    run_cli("enumerate", "--lang", "imp", "--program", "halve.imp", "--inputs", "x=7,8,12",
            "--dedup", "--out", str(short))
    run_cli("enumerate", "--lang", "imp", "--program", "halve.imp", "--inputs", "x=7,8,12",
            "--out", str(long))
    return str(short), str(long)


def test_speedup(run_cli, halve_sets):
    short, long = halve_sets
    assert run_cli("speedup", short, long)[:2] == (0, "k=3\n")
    assert run_cli("speedup", long, long)[:2] == (0, "k=0\n")
    assert run_cli("speedup", long, short)[:2] == (cli.EXIT_NOT_SPEEDUP, "not-a-speedup\n")


def test_speedup_parse_error(run_cli, tmp_path):
    bad = tmp_path / "bad.traces"
    bad.write_text("(1)|(2\n")
    assert run_cli("speedup", str(bad), str(bad))[0] == cli.EXIT_PARSE


def test_equal_files(run_cli, halve_sets, fixtures):
    short, long = halve_sets
    assert run_cli("equal", short, short)[:2] == (0, "equal\n")
    assert run_cli("equal", short, str(fixtures / "odd_factor_pairs.traces"))[:2] == \
        (cli.EXIT_DIFFERENT, "different\n")


@pytest.mark.parametrize("argv,verdict", [
    (["--lang", "eqn", "--program", "bool_id_cases.eqn",
      "--vs-lang", "eqn", "--vs-program", "bool_id_var.eqn", "--inputs", "true,false"], 0),
    (["--lang", "eqn", "--program", "halve.eqn",
      "--vs-lang", "lam", "--vs-program", "halve.lam", "--inputs", "1..20"], 0),
    (["--lang", "imp", "--program", "halve.imp", "--keep", "x", "--dedup",
      "--vs-lang", "imp", "--vs-program", "halve_nondet.imp", "--vs-keep", "x",
      "--inputs", "x=7,8,12"], 5),
    (["--lang", "imp", "--program", "halve.imp",
      "--vs-lang", "eqn", "--vs-program", "halve.eqn", "--inputs", "1..5"], 5),
])
def test_compare(run_cli, argv, verdict):
    code, out, _ = run_cli("compare", *argv)
    assert code == verdict
    assert out == ("equal\n" if verdict == 0 else "different\n")


def test_store_inputs_expand_as_product():
    stores = cli.parse_store_inputs("x=1..2,y=5,6")
    assert [s.bindings for s in stores] == [
        (("x", 1), ("y", 5)), (("x", 1), ("y", 6)), (("x", 2), ("y", 5)), (("x", 2), ("y", 6))]
    assert cli.parse_store_inputs("3,4", "n")[1] == imp.Store.of(n=4)


def test_values():
    assert cli.parse_values("true,false") == [True, False]
    assert cli.parse_values("1..3,9") == [1, 2, 3, 9]


def test_module_entry_point(fixtures):
    proc = subprocess.run([sys.executable, "-m", "tracealg", "run", "--lang", "lam",
                           "--program", str(fixtures / "square_plus_one.lam"), "--input", "7"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "50"
