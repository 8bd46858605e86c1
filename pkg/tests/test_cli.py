import pytest

from mf_reduction.cli import Config, main, render, str2bool
from mf_reduction.diagram import gamma_shape, render_dot
from mf_reduction.errors import EXIT_CAP_EXCEEDED, EXIT_ORE_FAILURE, EXIT_UNDECIDED, EXIT_VALIDATION


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out.splitlines()


def test_config_defaults():
    config = Config(["nf", "braid:3", "ab"])
    assert config.command == "nf" and config.word == "ab"
    assert config.class_cap == 100000 and config.node_cap == 20000
    assert config.assert_3ore is False and config.output is None
    assert Config(["check", "braid:3", "--assert_3ore"]).assert_3ore is True
    assert str2bool("True") and not str2bool("no")


def test_render_formats():
    report = [("identity", "true"), ("method", "universal")]
    assert render(report, "keyvalue") == ["identity: true", "method: universal"]
    assert render(report, "text") == ["identity: true", "method:   universal"]


def test_solve(capsys):
    assert run(capsys, "solve", "braid:3", "a b a B A B") == (0, ["identity: true", "method:   universal"])
    status, out = run(capsys, "solve", "free:2", "a A", "--format", "keyvalue")
    assert status == 0 and "identity: true" in out
    status, out = run(capsys, "solve", "affine-A2", "a B", "--format", "keyvalue")
    assert status == 0 and out == ["identity: false", "method: naive"]
    status, out = run(capsys, "solve", "affine-A2", "C a b a", "--format", "keyvalue")
    assert status == EXIT_UNDECIDED and "identity: undecided" in out


def test_normal_forms(capsys):
    status, out = run(capsys, "nf", "braid:3", "a b a", "--format", "keyvalue")
    assert status == 0 and out == ["normal_form: aba", "depth: 1", "denominator: aba"]
    status, out = run(capsys, "nf", "free:2", "a b B", "--format", "keyvalue")
    assert out[:2] == ["normal_form: a", "depth: 1"]
    status, out = run(capsys, "nf", "raag-abc", "b A c A", "--format", "keyvalue")
    assert out == ["normal_form: b/a/c/a", "depth: 4", "denominator: a"]
    status, out = run(capsys, "nf", "braid:3", "a A", "--format", "keyvalue")
    assert out == ["normal_form: []", "depth: 0", "denominator: none"]
    status, out = run(capsys, "equal", "braid:3", "aba", "bab", "--format", "keyvalue")
    assert out == ["equal: true"]


def test_three_ore_failure_exit(capsys):
    status, out = run(capsys, "nf", "affine-A2", "a")
    assert status == EXIT_ORE_FAILURE
    assert out[0].startswith("error: ") and out[-1] == "witness: a b c"
    status, out = run(capsys, "reduce", "affine-A2", "1/c/aba")
    assert status == EXIT_ORE_FAILURE


def test_reduce(capsys):
    status, out = run(capsys, "reduce", "braid:3", "a/aba/b", "--format", "keyvalue")
    assert status == 0
    assert out == ["initial: a/aba/b", "final: a/ab", "steps: 3", "R 1 a 1/ab/b", "R 2 b a/ab/1", "Rx a/ab"]
    status, out = run(capsys, "reduce", "affine-A2", "1/c/aba", "--all", "--format", "keyvalue")
    assert status == 0
    assert out == ["initial: 1/c/aba", "reducts: ac/ca/ba bc/cb/ab", "confluent: no"]


def test_check_and_basics(capsys):
    status, out = run(capsys, "check", "affine-A2", "--format", "keyvalue")
    assert status == 0
    assert {"3ore: fail", "witness: a b c", "fc: no", "conditional: no"} <= set(out)
    status, out = run(capsys, "check", "braid:3", "--format", "keyvalue")
    assert {"3ore: pass", "2ore: pass", "witness: none", "fc: yes"} <= set(out)
    status, out = run(capsys, "basics", "affine-A2", "--format", "keyvalue")
    assert {"count: 10", "c: 2"} <= set(out)


def test_class_lcm_gcd(capsys):
    status, out = run(capsys, "class", "braid:3", "bab", "--format", "keyvalue")
    assert out == ["canonical: aba", "size: 2", "class: aba bab"]
    status, out = run(capsys, "lcm", "braid:3", "a", "b", "--format", "keyvalue")
    assert out == ["right_lcm: aba", "right_lcm_factors: a*ba = b*ab", "left_lcm: aba", "left_lcm_factors: ab*a = ba*b"]
    status, out = run(capsys, "lcm", "free:2", "a", "b", "--format", "keyvalue")
    assert out == ["right_lcm: none", "left_lcm: none"]
    status, out = run(capsys, "gcd", "braid:3", "aba", "ba", "--format", "keyvalue")
    assert out == ["right_gcd: ba", "left_gcd: ba"]


def test_diagram(capsys, tmp_path):
    status, out = run(capsys, "diagram", "braid:3", "gamma:4")
    assert status == 0 and out == render_dot(gamma_shape(4)).splitlines()
    target = tmp_path / "gamma6.dot"
    status, out = run(capsys, "diagram", "braid:3", "gamma:6", "--output", str(target), "--format", "keyvalue")
    assert status == 0 and "copies: 5" in out and target.is_file()
    status, out = run(capsys, "diagram", "braid:3", "a/a/1/1/1/1", "--output", str(tmp_path / "u6.dot"), "--format", "keyvalue")
    assert "tiles: 9" in out
    status, out = run(capsys, "diagram", "braid:3", "gamma:5")
    assert status == EXIT_VALIDATION and out[0].startswith("error: ")


def test_stats(capsys, tmp_path):
    table = tmp_path / "depths.csv"
    status, out = run(capsys, "stats", "braid:3", "--samples", "12", "--max_length", "6", "--stats_path", str(table),
                      "--format", "keyvalue")
    assert status == 0
    assert "samples: 12" in out and "inverse_depth_ok: True" in out
    assert len(table.read_text(encoding="utf-8").splitlines()) == 13


def test_validation_and_cap_errors(capsys):
    status, out = run(capsys, "nf", "braid:3", "a", "--class_cap", "0")
    assert status == EXIT_VALIDATION and out[0].startswith("error: ")
    status, _ = run(capsys, "nf", "hecke:3", "a")
    assert status == EXIT_VALIDATION
    status, _ = run(capsys, "nf", "braid:3", "az")
    assert status == EXIT_VALIDATION
    status, _ = run(capsys, "class", "braid:3", "aba", "--class_cap", "1")
    assert status == EXIT_CAP_EXCEEDED
    status, _ = run(capsys, "reduce", "affine-A2", "1/c/aba", "--all", "--node_cap", "1")
    assert status == EXIT_CAP_EXCEEDED
    assert main(["frobnicate"]) == 2
