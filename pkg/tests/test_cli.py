import json
import subprocess
import sys

import pytest

from etaq.cli import main
from etaq.hauptmodul import Certificate
from etaq.series import QSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cusps_text(capsys):
    code, out, _ = run(capsys, "cusps", "12")
    assert code == 0
    assert "1/6 width 1" in out.splitlines()
    assert out.splitlines()[0] == "inf width 1"


def test_cusps_json(capsys):
    code, out, _ = run(capsys, "cusps", "16", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [row["cusp"] for row in data] == ["inf", "0", "1/2", "1/4", "3/4", "1/8"]


def test_cusps_bad_level(capsys):
    code, out, err = run(capsys, "cusps", "0", "--format", "json")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "UsageError"


def test_orders_table2_row(capsys):
    code, out, _ = run(capsys, "orders", "eta(12)^12*eta(6)^-4*eta(24)^-8", "24", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    values = [row["values"][c]["value"] for c in ("1/4", "1/6", "1/8", "1/12", "inf")]
    assert values == ["1", "0", "-1", "3", "-3"]


def test_orders_malformed_spec(capsys):
    code, out, err = run(capsys, "orders", "eta(4)^2 * zeta(3)", "12", "--format", "json")
    assert code == 2
    e = json.loads(out)["error"]
    assert e["type"] == "QuotientParseError" and e["position"] == 11
    assert "error:" in err


def test_expand_json_round_trip(capsys):
    code, out, _ = run(capsys, "expand", "pi(2)/pi(6)", "--depth", "4", "--format", "json")
    data = json.loads(out)
    s = QSeries.from_json(data["series"])
    assert code == 0
    assert s.terms() == [(-1, 1), (1, 2), (3, 1)]
    assert data["text"] == "q^(-1) + 2*q + q^3 + O(q^4)"


def test_expand_parse_error(capsys):
    code, _, err = run(capsys, "expand", "pi(2) +")
    assert code == 2 and "error" in err


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "pi(8)^2/pi(16)^2 + 16*pi(16)^2/pi(8)^2", "pi(4)/pi(8)", "4", "--depth", "60", "--format", "json")
    assert code == 0
    assert json.loads(out)["coeffs"] == [-8, 0, 0, 0, 1]


def test_solve_degree_too_small(capsys):
    code, out, _ = run(capsys, "solve", "(pi(2)/pi(6))^3", "pi(2)/pi(6)", "2", "--depth", "40")
    assert code == 1 and "degree bound" in out


def test_verify_headline_certificate_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "eq1.4", "--format", "json")
    cert = Certificate.from_json(json.loads(out))
    assert code == 0
    assert cert.verdict == "proved-conditional"
    assert cert.poly.to_json() == [-1, 2, 1]


def test_verify_text_lists_axioms(capsys):
    code, out, _ = run(capsys, "verify", "eq1.9", "--depth", "80")
    assert code == 0
    assert "proved-conditional" in out and "axioms:" in out


def test_verify_heuristic_and_adhoc(capsys):
    assert run(capsys, "verify", "eq1.5", "--depth", "100")[0] == 0
    code, out, _ = run(capsys, "verify", "L(1) - L(2)", "A(2,1)", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "verified-to-depth"
    code, out, _ = run(capsys, "verify", "L(1)", "A(2,1)", "--format", "json")
    assert code == 1 and json.loads(out)["failure"]["exponent"] == "2"


def test_verify_inconclusive(capsys):
    code, _, _ = run(capsys, "verify", "sqrt(2 + q)", "1", "--depth", "10")
    assert code == 3


def test_verify_unknown_id(capsys):
    assert run(capsys, "verify", "eq7.7")[0] == 2
    assert run(capsys, "verify", "a", "b", "c")[0] == 2


def test_bad_depth_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["expand", "pi(1)", "--depth", "-3"])
    assert exc.value.code == 2


def test_registry_listing(capsys):
    code, out, _ = run(capsys, "registry", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and rows[0]["id"] == "eq1.1"
    assert sum(r["kind"] == "headline" for r in rows) == 9


def test_reproduce_to_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "reproduce", "--depth", "60", "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["ok"] is True
    assert run(capsys, "reproduce", "--depth", "20")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "etaq.cli", "cusps", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.split("\n")[:3] == ["inf width 1", "0 width 4", "1/2 width 1"]
