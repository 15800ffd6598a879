import math

import pytest

from src.cli import main, resolve_options, build_parser


def _values(out):
    values = {}
    for line in out.strip().splitlines():
        name, rest = line.split(" = ", 1)
        values[name] = rest.split(" ")[0]
    return values


def test_eval_aloha_limit(capsys):
    assert main(["eval", "aloha", "--lambda", "1"]) == 0
    out = capsys.readouterr().out
    assert "tp = 0.36787944117144233 (exact)" in out


def test_eval_basic_op(capsys):
    assert main(["eval", "basic-op", "--tau", "1", "--lam", "0.1"]) == 0
    values = _values(capsys.readouterr().out)
    assert float(values["op"]) == pytest.approx(0.306, abs=1e-3)


def test_infeasible_pzf_bounds_are_explained(capsys):
    assert main(["eval", "pzf", "--alpha", "4", "--nr", "8", "--z", "1"]) == 0
    lines = {line.split(" = ", 1)[0]: line for line in capsys.readouterr().out.strip().splitlines()}
    assert "infeasible" in lines["op_ub"]
    assert "infeasible" in lines["tc_lb"]
    assert "infeasible" not in lines["tc_ub"]


def test_config_file_is_overridden_by_flags(tmp_path, capsys):
    config = tmp_path / "run.conf"
    config.write_text("# 示例\nlambda = 0.5\ntau = 1\n", encoding="utf-8")
    assert main(["eval", "basic-op", "--config", str(config), "--lambda", "0.1"]) == 0
    assert float(_values(capsys.readouterr().out)["op"]) == pytest.approx(0.306, abs=1e-3)
    args = build_parser().parse_args(["eval", "basic-op", "--config", str(config)])
    assert resolve_options(args)["lam"] == 0.5


def test_parameter_errors_exit_2(tmp_path, capsys):
    assert main(["mc", "basic", "--trials", "0"]) == 2
    assert main(["eval", "no-such-quantity"]) == 2
    assert main(["eval", "basic-op", "--preset", "no-such-preset"]) == 2
    assert main(["eval", "basic-op", "--alpha", "abc"]) == 2
    config = tmp_path / "bad.conf"
    config.write_text("bogus = 1\n", encoding="utf-8")
    assert main(["eval", "basic-op", "--config", str(config)]) == 2
    assert "error:" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["eval"])
    assert info.value.code == 2


def test_numerical_failure_exits_3(capsys):
    assert main(["eval", "basic-tc", "--alpha", "5", "--qstar", "0.99"]) == 3
    assert "error:" in capsys.readouterr().err


def test_figure_output_is_reproducible(tmp_path, capsys):
    first, second = tmp_path / "a", tmp_path / "b"
    assert main(["figure", "tp-tc", "--out", str(first)]) == 0
    assert main(["figure", "tp-tc", "--out", str(second)]) == 0
    printed = capsys.readouterr().out
    assert str(first / "tp-tc-tp.csv") in printed
    data = (first / "tp-tc-tp.csv").read_bytes()
    assert data.startswith(b"lambda,")
    assert b"\r\n" in data
    for name in ("tp-tc-tp.csv", "tp-tc-tc.csv", "tp-tc-tp.meta.yaml"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_unknown_figure(capsys):
    assert main(["figure", "no-such-figure"]) == 2


def test_mc_output_is_deterministic(capsys):
    argv = ["mc", "basic", "--trials", "2000", "--seed", "3", "--lambda", "0.05"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    values = _values(first)
    assert 0.0 <= float(values["op"]) <= 1.0
    assert values["trials"] == "2000"
    assert values["seed"] == "3"
    assert "(empirical)" in first


def test_mc_needs_model():
    assert main(["mc"]) == 2


def test_mc_writes_series(tmp_path, capsys):
    assert main(["mc", "--model", "basic", "--trials", "1000", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "mc-basic-op.csv").exists()
    assert (tmp_path / "mc-basic-op.meta.yaml").exists()


def test_aloha_finite_population(capsys):
    assert main(["eval", "aloha", "--lambda", "1", "--n", "10000"]) == 0
    tp = float(_values(capsys.readouterr().out)["tp"])
    assert tp == pytest.approx(math.exp(-1.0), abs=1e-4)
