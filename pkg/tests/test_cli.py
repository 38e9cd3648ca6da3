import csv
import io
import json

import pytest

from idealarr import cli
from idealarr.matengine import MatCertificate


def run(args):
    buf = io.StringIO()
    code = cli.main(args, out=buf)
    return code, buf.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize(
    "rtype,t,expected",
    [("G2", 6, [1, 5]), ("A1", 0, [0]), ("A2xA1", 4, [1, 1, 2]), ("B3", 9, [1, 3, 5])],
)
def test_exponents_examples(rtype, t, expected):
    code, text = run(["exponents", "--type", rtype, "--truncate", str(t)])
    assert code == 0
    assert f"exponents={expected}" in text


def test_exponents_with_lattice_check():
    code, text = run(["exponents", "--type", "A2", "--truncate", "3", "--lattice-check"])
    assert code == 0 and "charpoly=t^2 - 3t + 2" in text


def test_generators():
    code, text = run(["exponents", "--type", "B2", "--generators", "[[1,1]]", "--format", "json"])
    assert code == 0
    rec = json_lines(text)[0]
    assert rec["ideal"]["members"] == [0, 1, 2] and rec["exponents"] == [1, 2]


def test_roots_json():
    code, text = run(["roots", "--type", "B2", "--format", "json"])
    data = json.loads(text)
    assert code == 0 and data["cartan"] == [[2, -2], [-1, 2]]
    code, text = run(["roots", "--type", "D3", "--format", "json"])
    assert "note" in json.loads(text)


def test_ideals_counts_and_csv():
    code, text = run(["ideals", "--type", "B3", "--format", "json"])
    lines = json_lines(text)
    assert lines[-1] == {"summary": {"ideals": 20, "type": "B3"}}
    code, text = run(["ideals", "--type", "A2", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["type", "ideal_id", "size", "members"] and len(rows) == 6


def test_verify_suites():
    code, text = run(["verify", "main", "--type", "B3", "--all-ideals", "--format", "json"])
    assert code == 0
    lines = json_lines(text)
    assert lines[-1]["summary"] == {"failures": 0, "ideals": 20, "suite": "main", "type": "B3"}
    assert all(r["pass"] and r["certificate"]["pass"] for r in lines[:-1])

    code, text = run(["verify", "local-global", "--type", "A1"])
    assert code == 0 and "roots=1 failures=0" in text
    code, text = run(["verify", "charpoly", "--type", "G2", "--all-ideals", "--point-count"])
    assert code == 0 and "ideals=8 failures=0" in text
    code, text = run(["verify", "saito", "--type", "B2", "--all-ideals"])
    assert code == 0 and "ideals=6 failures=0" in text


def test_charpoly_csv_schema():
    code, text = run(["charpoly", "--type", "A2", "--all-ideals", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["type", "ideal_id", "size", "exp_1", "exp_2", "chi_0", "chi_1", "chi_2"]
    assert rows[-1] == ["A2", "4", "3", "1", "2", "2", "-3", "1"]


def test_usage_errors_exit_2(capsys):
    assert run(["exponents", "--type", "Q7", "--truncate", "1"])[0] == 2
    assert run(["exponents", "--type", "E9", "--truncate", "1"])[0] == 2
    assert run(["exponents", "--type", "A2", "--truncate", "9"])[0] == 2
    assert run(["exponents", "--type", "A2", "--truncate", "1", "--all-ideals"])[0] == 2
    assert run(["exponents", "--type", "A2", "--generators", "[[1,"])[0] == 2
    assert run(["exponents", "--type", "A2", "--generators", "[[1,0,0]]"])[0] == 2
    assert run(["basis", "--type", "A2", "--all-ideals"])[0] == 2
    assert run(["basis", "--type", "A5", "--truncate", "3"])[0] == 2
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "nonsense", "--type", "A2"])
    assert exc.value.code == 2


def test_verification_failure_exits_1(monkeypatch):
    real = cli.run_induction

    def broken(rs, ideal):
        cert = real(rs, ideal)
        return MatCertificate(cert.rtype, cert.ideal, cert.layers, cert.exponents, [99] * rs.rank)

    monkeypatch.setattr(cli, "run_induction", broken)
    code, text = run(["verify", "main", "--type", "A2", "--all-ideals"])
    assert code == 1 and "failures=5" in text


def test_output_is_deterministic_and_parallel_safe():
    args = ["verify", "main", "--type", "C3", "--all-ideals", "--format", "json"]
    a = run(args)
    b = run(args)
    c = run(args + ["--jobs", "2"])
    assert a == b == c


def test_basis_emit(tmp_path):
    path = tmp_path / "basis.json"
    code, text = run(["basis", "--type", "A3", "--truncate", "6", "--emit-derivations", str(path)])
    assert code == 0 and "degrees=[1, 2, 3] saito=True" in text
    data = json.loads(path.read_text())
    assert data["degrees"] == [1, 2, 3] and len(data["derivations"]) == 3
    code, _ = run(["basis", "--type", "A3", "--truncate", "6", "--nu", "last"])
    assert code == 0


def test_rank_limit_flag():
    code, text = run(["basis", "--type", "A5", "--truncate", "5", "--rank-limit", "5"])
    assert code == 0 and "degrees=[1, 1, 1, 1, 1]" in text
