import json
import subprocess
import sys
from pathlib import Path

import pytest

from mackeylab.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "marks_cyclic4.txt": ["marks", "cyclic:4"],
    "zhat_idem_p2_l1_N5.txt": ["zhat", "idem", "-p", "2", "-l", "1", "-N", "5"],
    "dbh_N6_deg1.txt": ["dbh", "-N", "6", "--deg", "1"],
}


def run(args):
    return subprocess.run([sys.executable, "-m", "mackeylab", *args], capture_output=True)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output_byte_stable(name):
    want = (GOLDEN / name).read_bytes()
    first, second = run(CASES[name]), run(CASES[name])
    assert first.returncode == 0
    assert first.stdout == want
    assert second.stdout == first.stdout


def call(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_json_is_single_sorted_line(capsys):
    code, out, _ = call(capsys, "zhat", "idem", "-p", "2", "-l", "1", "-N", "5", "--json")
    assert code == 0
    assert out.count("\n") == 1
    data = json.loads(out)
    assert data["coeffs"] == {"1": "1", "3": "-1/3", "5": "-1/5"}
    assert out.strip() == json.dumps(data, sort_keys=True)


def test_malformed_input_exit_2(capsys):
    code, _, err = call(capsys, "marks", "cyclic:x")
    assert code == 2
    assert json.loads(err)["kind"] == "malformed"


def test_unknown_option_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["marks", "--nope"])
    assert exc.value.code == 2
    last = capsys.readouterr().err.strip().splitlines()[-1]
    assert json.loads(last)["kind"] == "malformed"


def test_domain_error_exit_1(capsys):
    code, _, err = call(capsys, "zhat", "idem", "-p", "4", "-l", "1", "-N", "5")
    assert code == 1
    assert json.loads(err)["kind"] == "DomainError"


def test_mackey_check_and_tate(capsys):
    code, out, _ = call(capsys, "mackey", "check", "--group", "cyclic:4", "--json")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = call(capsys, "tate", "--n", "4", "--module", "trivZ", "--json")
    data = json.loads(out)
    assert data["even"]["torsion"] == [4] and data["odd"]["text"] == "0"


def test_mackey_check_on_input_file(capsys, tmp_path):
    from mackeylab.groups import cyclic
    from mackeylab.mackey import burnside_mackey
    from mackeylab.serialize import mackey_to_json
    A = burnside_mackey(cyclic(2))
    good = tmp_path / "good.json"
    good.write_text(json.dumps(mackey_to_json(A)))
    assert call(capsys, "mackey", "check", "--input", str(good))[0] == 0
    bad = mackey_to_json(A)
    bad["tr"][0]["matrix"][0][0] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = call(capsys, "mackey", "check", "--input", str(path), "--json")
    assert code == 1 and json.loads(out)["violations"]


def test_zhat_mul_and_ghost(capsys):
    for args in (["-N", "12", "e2", "e4"], ["e2", "e4", "-N", "12"]):
        code, out, _ = call(capsys, "zhat", "mul", *args)
        assert code == 0 and out.strip() == "2*e4"
    code, out, _ = call(capsys, "zhat", "ghost", "-N", "6", "e2", "--json")
    assert json.loads(out)["ghost"] == [0, 2, 0, 2, 0, 2]


def test_bmul(capsys):
    code, out, _ = call(capsys, "bmul", "--group", "cyclic:4", "[0,1,0]", "[0,1,0]")
    assert code == 0 and out.strip() == "2*[G/H1]"
