import io
import json
from dataclasses import asdict

import pytest

from linext import config
from linext.cli import main


@pytest.fixture(autouse=True)
def _restore_caps():
    saved = asdict(config.CAPS)
    yield
    config.set_caps(**saved)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_count(capsys):
    assert run(capsys, "count", "--n", "3", "--rel", "0<1") == (0, "3", "")


def test_json_flag_either_side(capsys):
    code, out, _ = run(capsys, "--format", "json", "count", "--n", "3")
    assert code == 0 and json.loads(out) == {"e": 6}
    code, out2, _ = run(capsys, "count", "--n", "3", "--format", "json")
    assert out2 == out


def test_rho_and_defect(capsys):
    assert run(capsys, "rho", "--n", "3", "--rel", "0<1", "--x", "2")[1] == "3"
    code, out, _ = run(capsys, "defect", "--n", "3", "--x", "0", "--a", "2")
    assert code == 0 and out.startswith("0")


def test_decide_exit_codes(capsys):
    assert run(capsys, "decide", "verrle", "--n", "2", "--x", "0", "--target", "2/1")[:2] == (0, "true")
    assert run(capsys, "decide", "verrle", "--n", "2", "--x", "0", "--target", "3/2")[:2] == (1, "false")
    code, out, _ = run(capsys, "decide", "sta", "--k", "1", "--n", "4", "--fixed", "1:1",
                       "--x", "0", "--a", "3")
    assert (code, out) == (0, "equal")
    code, _, _ = run(capsys, "decide", "sta", "--n", "3", "--rel", "0<1,0<2", "--x", "0", "--a", "1")
    assert code == 1


def test_witness_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "decide", "witness", "--n", "2", "--x", "0",
                       "--target", "2/1", "--evaluate")
    data = json.loads(out)
    assert code == 0 and data["verdict"]["equal"] and data["size"] == 14
    assert len(data["instance"]["fixed"]) == 2


def test_errors_exit_two(capsys):
    code, out, err = run(capsys, "count", "--n", "3", "--rel", "0<9")
    assert code == 2 and "LabelOutOfRange" in err
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_cap_flag(capsys):
    code, _, err = run(capsys, "--cap-n", "3", "count", "--n", "5")
    assert code == 2 and "CapExceeded" in err


def test_stdin_input(capsys, monkeypatch):
    code, out, _ = run(capsys, "random-poset", "--n", "4", "--density", "1", "--format", "json")
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    assert run(capsys, "count", "--input", "-") == (0, "1", "")


def test_cf_and_poly(capsys):
    assert run(capsys, "cf", "expand", "7", "3")[1] == "[2; 3]"
    assert run(capsys, "poly", "volume", "--n", "2", "--rel", "0<1")[1] == "1/2"


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "quick")
    assert code == 0 and "FAIL" not in out
