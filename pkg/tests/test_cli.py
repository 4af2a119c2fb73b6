import csv
import io
import json
import subprocess
import sys

import pytest

from blockprimes import acceptance
from blockprimes.cli import main, parse_count
from blockprimes.primes import cache_load


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text, value", [("100000", 10**5), ("1e5", 10**5), ("10**5", 10**5), ("1_000", 1000),
                                         ("2.5e3", 2500)])
def test_parse_count(text, value):
    assert parse_count(text) == value


@pytest.mark.parametrize("text", ["1.5", "-3", "abc", "inf", "1e-3"])
def test_parse_count_rejects(text):
    with pytest.raises(Exception):
        parse_count(text)


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n-max", "9", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 20
    assert rows[0] == {"n": 2, "r": 3, "polynomial": "32t^2+20t+1", "reducible": False}
    code, out, _ = run(capsys, "enumerate", "--n-max", "2", "--format", "csv")
    assert len(list(csv.DictReader(io.StringIO(out)))) == 2
    code, out, _ = run(capsys, "enumerate", "--n-max", "9", "--include-triangular", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 24 and sum(r["reducible"] for r in rows) == 4


def test_enumerate_table_format(capsys):
    code, out, _ = run(capsys, "enumerate", "--n-max", "2")
    lines = out.splitlines()
    assert [c.strip() for c in lines[0].split("|")] == ["n", "r", "polynomial", "reducible"]
    assert len(lines) == 4


def test_constant_deterministic(capsys):
    first = run(capsys, "constant", "--pair", "2,3", "--P", "1e3")
    second = run(capsys, "constant", "--pair", "2,3", "--P", "1e3")
    assert first == second and first[0] == 0
    fields = {k.strip(): v for k, v in (line.split(" : ") for line in first[1].splitlines())}
    assert set(fields) == {"polynomials", "P", "k", "C", "C_over_deg"}
    assert fields["P"] == "1000" and float(fields["C"]) > 0


def test_constant_json_and_poly(capsys):
    code, out, _ = run(capsys, "constant", "--poly", "[41,1,1]", "--P", "1e6", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["polynomials"] == "[41,1,1]" and rec["P"] == 10**6 and rec["k"] == 1
    assert float(rec["C_over_deg"]) == pytest.approx(3.3198, abs=1e-3)
    assert float(rec["C"]) == pytest.approx(2 * float(rec["C_over_deg"]), rel=1e-12)


def test_constant_tuple_and_trace(capsys):
    code, out, _ = run(capsys, "constant", "--poly", "[0,1]", "--poly", "[2,1]", "--P", "1e5", "--format", "json")
    assert float(json.loads(out)["C"]) == pytest.approx(1.3203, abs=1e-3)
    code, out, _ = run(capsys, "constant", "--pair", "2,3", "--trace", "1e3,1e4", "--format", "json")
    assert [r["P"] for r in json.loads(out)] == [1000, 10000]


def test_constant_needs_polynomial(capsys):
    code, _, err = run(capsys, "constant", "--P", "1e3")
    assert code == 1 and "usage" in err


def test_ledger_written(capsys, tmp_path):
    ledger = tmp_path / "ledger.tsv"
    code, out, _ = run(capsys, "constant", "--pair", "2,3", "--P", "1e4", "--ledger", str(ledger))
    assert code == 0 and ledger.read_text().startswith("[1,20,32]\t10000\t1\t")
    again = run(capsys, "constant", "--ledger", str(ledger), "--pair", "2,3", "--P", "1e4")
    assert again[1] == out


def test_prime_cache_written_and_reused(capsys, tmp_path):
    cache = tmp_path / "primes.bin"
    assert run(capsys, "--prime-cache", str(cache), "constant", "--pair", "2,3", "--P", "1e5")[0] == 0
    assert cache_load(cache).bound >= 10**5
    assert run(capsys, "constant", "--pair", "2,3", "--P", "1e4", "--prime-cache", str(cache))[0] == 0
    cache.write_bytes(b"junk")
    assert run(capsys, "constant", "--pair", "2,3", "--P", "1e4", "--prime-cache", str(cache))[0] == 2


def test_table1(capsys):
    code, out, _ = run(capsys, "table1", "--pair", "2,3", "--x", "1e1,1e3", "--P", "1e4", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["Q"] for r in rows] == [4, 325]
    assert rows[1]["relative_error"] == pytest.approx((rows[1]["E"] - 325) / 325)
    code, out, _ = run(capsys, "table1", "--x", "1e3", "--P", "1e4")
    assert [c.strip() for c in out.splitlines()[0].split("|")] == ["x", "Q(x)", "E(x)", "relative error"]


def test_table1_empty_x(capsys):
    assert run(capsys, "table1", "--x", ",")[0] == 1
    assert run(capsys, "table1")[0] == 1


def test_scan_powers(capsys):
    code, out, _ = run(capsys, "scan-powers", "--pair", "2,3", "--x", "1e4", "--format", "json")
    assert code == 0 and [h["t"] for h in json.loads(out)] == [2, 8, 78, 282, 9590]
    code, out, _ = run(capsys, "scan-powers", "--pair", "9,29", "--x", "1e4", "--format", "json")
    assert json.loads(out) == [{"t": 2, "value": 5041, "base": 71, "exponent": 2, "power": "71^2"}]
    code, out, _ = run(capsys, "scan-powers", "--pair", "4,7", "--x", "1e4")
    assert code == 0 and out == "no proper prime power values\n"


def test_scan_powers_journal(capsys, tmp_path):
    journal = tmp_path / "j.tsv"
    first = run(capsys, "scan-powers", "--pair", "2,3", "--x", "1e4", "--journal", str(journal))
    assert journal.exists()
    assert run(capsys, "scan-powers", "--pair", "2,3", "--x", "1e4", "--journal", str(journal)) == first


def test_design(capsys):
    code, out, _ = run(capsys, "design", "--pair", "2,6", "--t", "0", "--format", "json")
    assert code == 0 and json.loads(out) == {"n": 2, "c": 13, "d": 7, "k_block": 6, "v": 91, "t": 0}
    code, out, _ = run(capsys, "design", "--pair", "2,6", "--t", "2", "--format", "json")
    assert json.loads(out)["v"] == 26335  # f_{2,6}(2) = 229 is prime
    code, out, _ = run(capsys, "design", "--pair", "8,18", "--t", "0")
    assert code == 0 and "not a prime power" in out
    code, out, _ = run(capsys, "design", "--pair", "8,18", "--t", "0", "--format", "json")
    assert json.loads(out)["design"] is None


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--p", "13", "--i", "2", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and (rec["n"], rec["r"], rec["a"], rec["f(0)"]) == (3570, 254, 84, 28561)
    assert run(capsys, "realize", "--p", "2", "--i", "1")[0] == 2


def test_exit_codes(capsys):
    assert run(capsys, "enumerate")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "verify", "--profile", "nope")[0] == 1
    assert run(capsys, "design", "--pair", "2,4", "--t", "0")[0] == 2
    assert run(capsys, "constant", "--pair", "3,5", "--P", "100")[0] == 2
    assert run(capsys, "constant", "--poly", "[2,1,1]", "--P", "100")[0] == 2


def test_config_file_and_precedence(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json", "P": "1e3", "pair": [2, 3]}))
    code, out, _ = run(capsys, "constant", "--config", str(cfg))
    assert code == 0 and json.loads(out)["P"] == 1000
    code, out, _ = run(capsys, "constant", "--config", str(cfg), "--P", "1e4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["P"] == "10000"
    cfg.write_text("[1, 2]")
    assert run(capsys, "constant", "--config", str(cfg))[0] == 1


def test_verify_subset(capsys, monkeypatch):
    def fake(profile):
        return [acceptance.Check(9, "always", True, "")]

    monkeypatch.setitem(acceptance.CRITERIA, 9, ("stub", fake))
    code, out, _ = run(capsys, "verify", "--criteria", "9")
    assert code == 0 and out.startswith("criterion  9 PASS: stub")

    def failing(profile):
        return [acceptance.Check(9, "never", False, "")]

    monkeypatch.setitem(acceptance.CRITERIA, 9, ("stub", failing))
    code, out, _ = run(capsys, "verify", "--criteria", "9", "--format", "json")
    assert code == 2 and json.loads(out)[0]["passed"] is False


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "blockprimes", "realize", "--p", "5", "--i", "1", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["f(0)"] == 25
    proc = subprocess.run([sys.executable, "-m", "blockprimes", "enumerate"], capture_output=True, text=True)
    assert proc.returncode == 1 and "usage" in proc.stderr
