import io
import json

import pytest

from cmcount.cli import RunConfig, run_command


def run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_count_json():
    code, out, _ = run("count", "-D", "-7", "-p", "11", "-a", "9", "-b", "10")
    data = json.loads(out)
    assert code == 0 and data["count"] == 16
    assert set(data) == {"lambda", "epsilon", "W", "trace", "count", "branch"}


def test_count_special_routes():
    code, out, _ = run("count", "-D", "-4", "-p", "5", "-a", "-1", "-b", "0")
    assert code == 0 and json.loads(out)["count"] == 8


def test_epsilon_table_rows():
    code, out, _ = run("epsilon-table", "-D", "-8")
    rows = out.strip().splitlines()
    assert code == 0 and len(rows) == 8 and "1 → i^0" in rows


def test_class_poly_lines():
    code, out, _ = run("class-poly", "-D", "-23")
    assert out.split() == ["1", "3491750", "-5151296875", "12771880859375"]
    code, out, _ = run("class-poly", "-D", "-23", "--json")
    assert json.loads(out)["degree"] == 3


def test_weber():
    code, out, _ = run("weber", "--tau", "0", "1", "--prec", "128")
    data = json.loads(out)
    assert code == 0 and data["j"][0].startswith("1728")


@pytest.mark.parametrize("argv,code", [
    (["bogus"], 64),
    ([], 64),
    (["count", "-D", "-7"], 64),
    (["count", "-D", "-7", "-p", "3", "-a", "0", "-b", "1"], 2),
    (["construct", "-D", "-7", "-p", "11", "--count", "24"], 3),
    (["construct", "-D", "-23", "-p", "13", "--count", "14"], 3),
    (["qcurve", "-d", "5"], 2),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_selftest_quick():
    code, out, _ = run("selftest", "--quick")
    assert code == 0 and "FAIL" not in out


def test_determinism():
    argv = ["construct", "-D", "-40", "-p", "1009", "--trace", "6", "--seed", "3"]
    first, second = run(*argv), run(*argv)
    assert first[0] == 0 and first == second
    assert json.loads(first[1])["certificate"]["oracle_count"] == 1004


def test_precision_env(monkeypatch):
    monkeypatch.setenv("CM_COUNTER_PREC", "32")
    assert run("weber", "--tau", "0", "1")[0] == 2
    monkeypatch.setenv("CM_COUNTER_PREC", "160")
    assert RunConfig.from_env().prec == 160


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(sweep_bound=0)
    with pytest.raises(ValueError):
        RunConfig(output="xml")
