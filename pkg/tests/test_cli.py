import json

import pytest

from higherlim import cli


def run(argv):
    args = cli.build_parser().parse_args(argv)
    return cli.run(args)


def test_lambda_example():
    status, rep = run(["lambda", "--group", "S3", "--p", "3", "--module", "trivial1", "--N", "4"])
    assert status == cli.EXIT_OK and rep["status"] == "ok"
    assert rep["result"]["dims"] == [0, 0, 0, 0]
    assert rep["schema"] == cli.SCHEMA and rep["input"]["group"] == "S3"
    assert "wall_s" in rep["timings"]


def test_corpus_example():
    status, rep = run(["corpus", "--family", "hgm-gamma0", "--truncate", "2", "--op", "lambda",
                       "--N", "3"])
    assert status == cli.EXIT_OK
    assert rep["result"]["dims"] == [0, 4, 0]


def test_verify_suite():
    status, rep = run(["verify", "--suite", "reduction"])
    assert status == cli.EXIT_OK and rep["result"]["pass"]
    status, rep = run(["verify", "--suite", "bogus"])
    assert status != cli.EXIT_OK


def test_describe(capsys):
    assert cli.main(["describe"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    for c in cli.COMMANDS:
        assert c in out
    assert "extrapolation" in out
    assert len(cli.COMMANDS) == 7
    sample = next(l for l in out.splitlines() if l.startswith("sample:")).split()[1:]
    status, rep = run(sample)
    assert status == cli.EXIT_OK and rep["input"]["group"] == "S3"


def test_deterministic_reports():
    a = run(["higher-limits", "--group", "S4", "--p", "2", "--module", "perm",
             "--functor", "fixed-point", "--N", "3"])[1]
    b = run(["higher-limits", "--group", "S4", "--p", "2", "--module", "perm",
             "--functor", "fixed-point", "--N", "3"])[1]
    assert cli.report_body(a) == cli.report_body(b)


@pytest.mark.parametrize("argv, field", [
    (["lambda", "--group", "Q7", "--p", "2"], "group"),
    (["lambda", "--group", "S3", "--p", "4"], "p"),
    (["lambda", "--group", "S3", "--p", "3", "--module", "weird"], "module"),
    (["lambda", "--group", "S3", "--p", "3", "--N", "-1"], "N"),
    (["higher-limits", "--group", "S3", "--p", "3", "--functor", "nope"], "functor"),
])
def test_spec_errors(argv, field, capsys):
    status, rep = run(argv)
    assert status == cli.EXIT_SPEC and rep["error"]["field"] == field
    assert cli.main(argv) == cli.EXIT_SPEC
    assert field in capsys.readouterr().err


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["cohomology", "--group", "C2", "--p", "2", "--N", "3", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["result"]["dims"] == [1, 1, 1]
    assert "cohomology" in capsys.readouterr().out


def test_tower_reports_extrapolation():
    status, rep = run(["tower", "--family", "hgm-gamma0", "--degree", "1", "--N-max", "2"])
    assert status == cli.EXIT_OK
    assert rep["result"]["tower"]["dims"] == [0, 2, 4]
    assert rep["extrapolation"]
