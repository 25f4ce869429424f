import json
import math

import pytest

from tqf.cli import main, parse_family, CliError
from tqf.corpus import s_p
from tqf.tensor import Tensor


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def assert_single_error(code, err):
    assert code != 0
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith("error: ")


# ------------------------------------------------------------------ info

def test_info_sp(capsys):
    code, out, _ = run(capsys, "info", "sp:p=0.5")
    assert code == 0
    row = next(l for l in out.splitlines() if l.startswith("AB|CD"))
    _, rank, ent = row.split()
    assert int(rank) == 4
    assert float(ent) == pytest.approx(2.0, abs=1e-11)
    assert "moment_residual:" in out


def test_info_w4(capsys):
    code, out, _ = run(capsys, "info", "w:k=4")
    row = next(l for l in out.splitlines() if l.startswith("A|BCD"))
    assert float(row.split()[2]) == pytest.approx(0.811278124459, abs=1e-11)


def test_info_json_file(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text(s_p(0.3).to_json())
    code, out, _ = run(capsys, "info", str(f))
    assert code == 0 and "shape: [2, 2, 2, 2]" in out


def test_info_zero_tensor(tmp_path, capsys):
    f = tmp_path / "zero.json"
    f.write_text(Tensor.from_entries((2, 2), [0, 0, 0, 0]).to_json())
    code, _, err = run(capsys, "info", str(f))
    assert_single_error(code, err)
    assert "nonzero tensor required" in err


def test_info_bad_json(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"shape": [2], "entries": [1, ')
    code, _, err = run(capsys, "info", str(f))
    assert_single_error(code, err)
    assert "line 1 column" in err


def test_info_unknown_source(capsys):
    code, _, err = run(capsys, "info", "nosuch:k=2")
    assert_single_error(code, err)


# ------------------------------------------------------------------ functional

def test_functional_lower_unit(capsys):
    code, out, _ = run(capsys, "functional", "lower", "unit:n=3,k=4", "AB:0.5,C:0.5", "--restarts", "1")
    assert code == 0
    assert float(out.splitlines()[0]) == pytest.approx(math.log2(3), abs=1e-6)
    assert json.loads(out.splitlines()[1])["status"] == "converged"


def test_functional_upper_sp(capsys):
    code, out, _ = run(
        capsys, "functional", "upper", "sp:p=0.333", "AB:0.5,A:0.125,B:0.125,C:0.125,D:0.125", "--n", "4"
    )
    assert code == 0
    assert float(out.splitlines()[0]) == pytest.approx(1.5, abs=1e-11)
    report = json.loads(out.splitlines()[1])
    assert report["best_tuple"]["AB|CD"] == "(1,1,1,1)"


def test_functional_detbound(capsys):
    code, out, _ = run(capsys, "functional", "detbound", "sp:p=0.333", "AB")
    assert code == 0
    assert float(out.splitlines()[0]) == pytest.approx(1.93, abs=5e-3)


def test_functional_mtheta_and_capacity(capsys):
    code, out, _ = run(capsys, "functional", "mtheta", "sp:p=0.3", "AB:0.5,A:0.5")
    assert float(out.splitlines()[0]) == pytest.approx(1.5)
    code, out, _ = run(capsys, "functional", "capacity", "w:k=4")
    assert code == 0
    assert float(out.splitlines()[0]) == 0.0
    assert json.loads(out.splitlines()[1])["semistable"] is False


def test_functional_crossing_needs_order(capsys):
    code, _, err = run(capsys, "functional", "upper", "unit:n=2,k=4", "AB:0.5,BC:0.5")
    assert_single_error(code, err)
    assert "order" in err
    code, out, _ = run(capsys, "functional", "upper", "unit:n=2,k=4", "AB:0.5,BC:0.5", "--order", "AB,BC")
    assert code == 0 and float(out.splitlines()[0]) >= 1.25


def test_functional_unbalanced_detbound(capsys):
    code, _, err = run(capsys, "functional", "detbound", "sp:p=0.3", "A")
    assert_single_error(code, err)
    assert "unbalanced" in err


def test_functional_missing_theta(capsys):
    code, _, err = run(capsys, "functional", "lower", "sp:p=0.3")
    assert_single_error(code, err)


def test_functional_bad_theta(capsys):
    code, _, err = run(capsys, "functional", "mtheta", "sp:p=0.3", "AB:0.5,ab:0.5")
    assert_single_error(code, err)
    assert "position" in err


# ------------------------------------------------------------------ verify

def test_verify_crossing(capsys):
    code, out, _ = run(capsys, "verify", "crossing")
    assert code == 0
    verdict = json.loads(out.strip())
    assert verdict["passed"] and verdict["computed"]["target_bound"] == 1.25


def test_verify_out_file(tmp_path, capsys):
    f = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify", "recognition", "--out", str(f))
    assert code == 0
    assert json.loads(f.read_text())[0]["claim_id"] == "recognition"


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert_single_error(code, err)
    assert "crossing" in err and "all" in err


# ------------------------------------------------------------------ sweep

def sweep_rows(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return header, [dict(zip(header, map(float, l.split(",")))) for l in lines[1:]]


def test_sweep_sp(capsys):
    code, out, _ = run(
        capsys, "sweep", "sp:p", "--start", "0.05", "--stop", "0.95", "--steps", "19",
        "--theta", "AB:0.5,A:0.125,B:0.125,C:0.125,D:0.125", "--quantities", "H_theta,m_theta",
    )
    assert code == 0
    header, rows = sweep_rows(out)
    assert header == ["p", "H_theta", "m_theta"]
    assert len(rows) == 19
    for r in rows:
        if abs(r["p"] - 0.5) < 1e-9:
            assert r["H_theta"] == pytest.approx(r["m_theta"], abs=1e-10)
        else:
            assert r["H_theta"] < r["m_theta"]


def test_sweep_qgamma_detbound(capsys):
    code, out, _ = run(
        capsys, "sweep", "qgamma:g", "--start", "0.75", "--stop", "1.0", "--steps", "6",
        "--theta", "AB", "--quantities", "detbound,H_theta,capacity",
    )
    assert code == 0
    _, rows = sweep_rows(out)
    for r in rows:
        assert r["detbound"] == pytest.approx(r["H_theta"], abs=1e-6)
        assert r["capacity"] == pytest.approx(1.0, abs=1e-9)


def test_sweep_csv_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code, _, _ = run(
            capsys, "sweep", "sp:p", "--start", "0.1", "--stop", "0.9", "--steps", "3",
            "--theta", "AB:0.5,A:0.5", "--quantities", "H_theta,lower,detbound",
            "--restarts", "1", "--seed", "7", "--out", str(p),
        )
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_sweep_integer_symbol(capsys):
    code, out, _ = run(
        capsys, "sweep", "unit:n,k=3", "--start", "1", "--stop", "3", "--steps", "3",
        "--theta", "A", "--quantities", "m_theta",
    )
    assert code == 0
    _, rows = sweep_rows(out)
    assert [r["m_theta"] for r in rows] == pytest.approx([0, 1, math.log2(3)])


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["--quantities", ""], "empty quantity"),
        (["--quantities", "bogus"], "unknown quantities"),
        (["--quantities", "H_theta", "--steps", "1"], "steps"),
    ],
)
def test_sweep_errors(capsys, argv, needle):
    base = ["sweep", "sp:p", "--start", "0.1", "--stop", "0.9", "--steps", "3"]
    # later flags override earlier ones
    code, _, err = run(capsys, *(base + argv))
    assert_single_error(code, err)
    assert needle in err


def test_sweep_domain_violation(capsys):
    code, _, err = run(capsys, "sweep", "sp:p", "--start", "0.5", "--stop", "1.5", "--steps", "3",
                       "--quantities", "H_theta")
    assert_single_error(code, err)
    assert "p=" in err


def test_parse_family():
    sym, build = parse_family("unit:n,k=4")
    assert sym == "n" and build(2.0).shape == (2, 2, 2, 2)
    with pytest.raises(CliError):
        parse_family("sp:p,q")
    with pytest.raises(CliError):
        parse_family("sp:q")


def test_argparse_errors_single_line(capsys):
    code, _, err = run(capsys, "functional", "sideways", "sp:p=0.1")
    assert_single_error(code, err)
    code, _, err = run(capsys)
    assert_single_error(code, err)
