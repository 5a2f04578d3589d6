"""Command line behaviour: JSON records, exit codes, argument validation.

Everything runs in-process through packcol.cli.main so coverage tools see it
and no subprocess startup cost is paid.
"""

import json

import pytest

from packcol.cli import main
from packcol.families import circular_ladder
from packcol.graphs import graph_content_hash, parse_graph_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    lines = [json.loads(line) for line in out.splitlines() if line]
    return code, lines


def usage_error(*argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2


# ---------------------------------------------------------------- generate

def test_generate_writes_commented_text(capsys):
    code, out = run(capsys, "generate", "--family", "CL", "--n", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "c family=CL n=7"
    assert lines[1] == "p 14 21"


def test_generate_round_trips_through_a_file(tmp_path, capsys):
    path = tmp_path / "cl7.txt"
    code, _ = run(capsys, "generate", "--family", "CL", "--n", "7",
                  "--out", str(path))
    assert code == 0
    g, comments = parse_graph_text(path.read_text())
    assert comments == ("family=CL n=7",)
    assert g.adjacency == circular_ladder(7).adjacency


def test_generate_rejects_wrong_params():
    usage_error("generate", "--family", "CL", "--r", "3")
    usage_error("generate", "--family", "X", "--n", "3")
    usage_error("generate", "--family", "GENH", "--l", "2")


# ---------------------------------------------------------------- decide

def test_decide_sat_certificate(capsys):
    code, (cert,) = run_json(capsys, "decide", "--family", "CL", "--n", "6",
                             "--k", "5")
    assert code == 0
    assert cert["schema"] == "packcol-certificate/1"
    assert cert["status"] == "SAT"
    assert cert["check"] == "revalidated"
    assert len(cert["colouring"]) == 12
    assert cert["graph"]["content_hash"] == graph_content_hash(circular_ladder(6))
    assert cert["stats"]["nodes"] > 0


def test_decide_unsat_certificate(capsys):
    code, (cert,) = run_json(capsys, "decide", "--family", "CL", "--n", "7",
                             "--k", "6")
    assert code == 0  # UNSAT is a successful decision, not a failure
    assert cert["status"] == "UNSAT"
    assert cert["colouring"] is None
    assert cert["check"] is None


def test_decide_records_constraints(capsys):
    code, (cert,) = run_json(
        capsys, "decide", "--family", "H", "--r", "4", "--k", "5",
        "--fix", "0=1", "--forbid", "1=1", "--forbid", "1=2",
        "--edge-require-one", "rungs",
    )
    assert code == 0
    stored = cert["constraints"]
    assert stored["fixed"] == {"0": 1}
    assert sorted(stored["forbidden"]["1"]) == [1, 2]
    assert len(stored["edge_require_one"]) == 4  # H(4) has four middle rungs
    assert cert["status"] == "SAT"


def test_decide_budget_exit_code(capsys):
    code, (cert,) = run_json(capsys, "decide", "--family", "CL", "--n", "9",
                             "--k", "6", "--max-nodes", "5")
    assert code == 3
    assert cert["status"] == "TIMEOUT"


def test_decide_usage_errors():
    usage_error("decide", "--family", "CL", "--n", "6")  # no --k
    usage_error("decide", "--k", "5")  # no graph at all
    usage_error("decide", "--family", "CL", "--n", "6", "--k", "5",
                "--fix", "0=9")  # colour above k
    usage_error("decide", "--family", "CL", "--n", "6", "--k", "5",
                "--fix", "0=1", "--fix", "0=2")  # conflicting fixes


# ---------------------------------------------------------------- chi

def test_chi_embeds_both_certificates(capsys):
    code, (rec,) = run_json(capsys, "chi", "--family", "CL", "--n", "5")
    assert code == 0
    assert rec["schema"] == "packcol-chi/1"
    assert rec["status"] == "OK"
    assert rec["value"] == 6
    assert rec["sat"]["status"] == "SAT"
    assert rec["sat"]["k"] == 6
    assert rec["sat"]["check"] == "revalidated"
    assert rec["unsat"]["status"] == "UNSAT"
    assert rec["unsat"]["k"] == 5


def test_chi_budget_reports_bracket(capsys):
    code, (rec,) = run_json(capsys, "chi", "--family", "CL", "--n", "9",
                            "--max-nodes", "50")
    assert code == 3
    assert rec["status"] == "TIMEOUT"
    assert rec["value"] is None
    assert rec["bracket"] == [6, None]  # counting bound starts the search at 6
    assert rec["unsat"] is None


# ---------------------------------------------------------------- rho

def test_rho_table_output(capsys):
    code, (rec,) = run_json(capsys, "rho", "--family", "CL", "--n", "8",
                            "--max-i", "5")
    assert code == 0
    assert rec["schema"] == "packcol-rho/1"
    assert rec["rho"] == [8, 4, 2, 2, 1]
    assert rec["all_proven"] is True
    assert len(rec["witnesses"][0]) == 8


def test_rho_budget_exit_code(capsys):
    code, (rec,) = run_json(capsys, "rho", "--family", "CL", "--n", "8",
                            "--max-i", "3", "--max-nodes", "1")
    assert code == 3
    assert rec["proven"] == [True, False, False]


# ---------------------------------------------------------------- verify

def test_verify_round_trip(tmp_path, capsys):
    cert_path = tmp_path / "cl7.json"
    run_json(capsys, "decide", "--family", "CL", "--n", "7", "--k", "6",
             "--cert", str(cert_path))
    code, (rec,) = run_json(capsys, "verify", "--cert", str(cert_path))
    assert code == 0
    assert rec["schema"] == "packcol-verify/1"
    assert rec["status"] == "VALID"
    assert rec["reason"] is None


def test_verify_recompute_reruns_unsat(tmp_path, capsys):
    cert_path = tmp_path / "cl7.json"
    run_json(capsys, "decide", "--family", "CL", "--n", "7", "--k", "6",
             "--cert", str(cert_path))
    code, (rec,) = run_json(capsys, "verify", "--cert", str(cert_path),
                            "--recompute")
    assert code == 0
    assert rec["status"] == "VALID"
    assert rec["recomputed_status"] == "UNSAT"


def test_verify_catches_tampered_colouring(tmp_path, capsys):
    cert_path = tmp_path / "cl6.json"
    run_json(capsys, "decide", "--family", "CL", "--n", "6", "--k", "5",
             "--cert", str(cert_path))
    data = json.loads(cert_path.read_text())
    # adjacent vertices 0 and 1 with equal colours violate every colour
    data["colouring"][0] = data["colouring"][1]
    cert_path.write_text(json.dumps(data))
    code, (rec,) = run_json(capsys, "verify", "--cert", str(cert_path))
    assert code == 1
    assert rec["status"] == "INVALID"
    assert "violates packing" in rec["reason"]


def test_verify_catches_tampered_hash(tmp_path, capsys):
    cert_path = tmp_path / "cl7.json"
    run_json(capsys, "decide", "--family", "CL", "--n", "7", "--k", "6",
             "--cert", str(cert_path))
    data = json.loads(cert_path.read_text())
    data["graph"]["content_hash"] = "0" * 64
    cert_path.write_text(json.dumps(data))
    code, (rec,) = run_json(capsys, "verify", "--cert", str(cert_path))
    assert code == 1
    assert rec["reason"] == "content hash mismatch"


def test_verify_chi_record(tmp_path, capsys):
    _, out = run(capsys, "chi", "--family", "CL", "--n", "5")
    rec_path = tmp_path / "chi.json"
    rec_path.write_text(out)
    code, (rec,) = run_json(capsys, "verify", "--cert", str(rec_path))
    assert code == 0
    assert rec["status"] == "VALID"


def test_verify_rejects_non_json(tmp_path):
    path = tmp_path / "junk.txt"
    path.write_text("p 4 4\n")
    usage_error("verify", "--cert", str(path))


def test_verify_rejects_unknown_schema(tmp_path):
    path = tmp_path / "odd.json"
    path.write_text(json.dumps({"schema": "other/1"}))
    usage_error("verify", "--cert", str(path))


# ---------------------------------------------------------------- pattern

def test_pattern_verify_single_case(capsys):
    code, (rec,) = run_json(capsys, "pattern", "verify", "--family", "CL",
                            "--n", "10")
    assert code == 0
    assert rec["schema"] == "packcol-pattern-report/1"
    assert rec["case"] == "n == 4 (mod 6)"
    assert rec["k"] == 5
    assert rec["claimed"] == 5
    assert rec["valid"] is True


def test_pattern_verify_reports_lookup_miss(capsys):
    code, (rec,) = run_json(capsys, "pattern", "verify", "--family", "CL",
                            "--n", "2")
    assert code == 1
    assert "error" in rec


def test_pattern_sweep_streams_rows(capsys):
    code, rows = run_json(capsys, "pattern", "sweep", "--family", "CL",
                          "--n", "6..10")
    assert code == 0
    assert len(rows) == 5
    assert [r["params"]["n"] for r in rows] == [6, 7, 8, 9, 10]
    assert all(r["valid"] for r in rows)


def test_pattern_usage_errors():
    usage_error("pattern", "verify", "--family", "GENH", "--r", "4")  # no --l
    usage_error("pattern", "verify", "--family", "CL", "--n", "3..5")  # range
    usage_error("pattern", "sweep", "--family", "H")  # no range
    usage_error("pattern", "verify", "--family", "CL", "--n", "10",
                "--registry", "/no/such/file.json")


# ---------------------------------------------------------------- claims

def test_claims_lemma3(capsys):
    code, (rec,) = run_json(capsys, "claims", "run", "--name", "lemma3")
    assert code == 0
    assert rec["schema"] == "packcol-claim-report/1"
    assert rec["claim"] == "lemma3"
    assert rec["status"] == "VERIFIED"
    assert rec["vacuity"] is None


def test_claims_lemma6_vacuous_odd_r(capsys):
    code, (rec,) = run_json(capsys, "claims", "run", "--name", "lemma6",
                            "--r", "3")
    assert code == 0
    assert rec["status"] == "VERIFIED"
    assert rec["vacuity"] == "VACUOUS"


def test_claims_budget_exit_code(capsys):
    code, (rec,) = run_json(capsys, "claims", "run", "--name", "lemma3",
                            "--max-nodes", "3")
    assert code == 3
    assert rec["status"] == "TIMEOUT"


def test_claims_lemma7_all_edges(capsys):
    code, (rec,) = run_json(capsys, "claims", "run", "--name", "lemma7",
                            "--all-edges")
    assert code == 0
    assert rec["status"] == "VERIFIED"
    assert len(rec["subchecks"]) == 13  # unconstrained run plus 12 rungs


def test_claims_usage_errors():
    usage_error("claims", "run", "--name", "lemma3", "--r", "4")
    usage_error("claims", "run", "--name", "lemma6", "--l", "3")
    usage_error("claims", "run", "--name", "lemma7", "--l", "2")  # l below range
    usage_error("claims", "run", "--name", "nope")


# ---------------------------------------------------------------- table

def test_table_theorem4_rows_agree(capsys):
    code, rows = run_json(capsys, "table", "--theorem", "4", "--n", "7..9")
    assert code == 0
    assert len(rows) == 3
    for row in rows:
        assert row["schema"] == "packcol-theorem-row/1"
        assert row["claimed"] == 7
        assert row["agreement"] is True
        assert row["upper"]["source"] == "pattern"
        assert row["lower"]["source"] == "unsat-certificate"


def test_table_theorem5_bracket_row(capsys):
    code, rows = run_json(capsys, "table", "--theorem", "5", "--r", "3..3")
    assert code == 0
    (row,) = rows
    assert row["claimed"] == {"min": 6, "max": 7}
    assert row["agreement"] is True
    # r = 3 resolves exactly inside the bracket: both 5 and 6 are unsat
    assert row["lower"]["value"] == 7
    assert row["upper"]["value"] == 7


def test_table_budget_exit_code(capsys):
    code, rows = run_json(capsys, "table", "--theorem", "4", "--n", "9..9",
                          "--max-millis", "1")
    assert code == 3
    assert rows[0]["agreement"] is False


def test_table_pretty_output(capsys):
    code, out = run(capsys, "table", "--theorem", "8", "--pretty")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("params")
    assert "agreement" in lines[0]
    assert all("yes" in line for line in lines[1:])


def test_table_usage_errors():
    usage_error("table", "--theorem", "3", "--r", "2..3")
    usage_error("table", "--theorem", "7", "--l", "3..3")
    usage_error("table", "--theorem", "9")
    usage_error("table", "--theorem", "4", "--n", "9..7")  # reversed range
