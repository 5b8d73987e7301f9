import json
import subprocess
import sys

import pytest

from bicayley.bci import is_bci_graph, is_m_bci_group, parse_set
from bicayley.claims import (CLAIMS, DEFAULT_SEED, SUITE_VERSION, ClaimRecord, claim_by_id,
                             run_claim_suite)
from bicayley.cli import dumps, graph_info, group_info, main
from bicayley.graphs import LCF_CODES, bcay, graph6_encode, named_graph, write_graph6_file
from bicayley.groups import build_group


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_info(capsys):
    code, out, _ = run(capsys, "group", "info", "C9^2xQ8", "--json")
    d = json.loads(out)
    assert code == 0 and d["order"] == 648 and d["class_C"]["in_C"]
    code, out, _ = run(capsys, "group", "info", "Q8", "--json")
    assert out == dumps(group_info(build_group("Q8"))) + "\n"
    assert json.loads(out)["aut_order"] == 24


@pytest.mark.parametrize("spec", ["C0", "C1", "Q9", "C3x", "C3 x C5"])
def test_group_info_rejects_bad_specs(capsys, spec):
    code, _, err = run(capsys, "group", "info", spec)
    assert code == 2 and "error" in err


def test_check_mbci(capsys):
    code, out, _ = run(capsys, "check", "mbci", "--group", "C9", "--m", "3")
    assert (code, out) == (0, "true\n")
    code, out, _ = run(capsys, "check", "mbci", "--group", "C2xC4", "--m", "3")
    assert (code, out) == (0, "false\n")
    code, out, _ = run(capsys, "check", "mbci", "--group", "C9", "--m", "3", "--json")
    assert out == dumps(is_m_bci_group(build_group("C9"), 3).to_json()) + "\n"
    assert run(capsys, "check", "mbci", "--group", "C3", "--m", "4")[0] == 2
    assert run(capsys, "check", "mbci", "--group", "C3")[0] == 2


def test_check_bci_json_matches_library(capsys):
    G = build_group("C3xQ8")
    code, out, _ = run(capsys, "check", "bci", "--group", "C3xQ8", "--set", "(0:1),(1:i),(0:j)", "--json")
    lib = is_bci_graph(G, parse_set(G, "(0:1),(1:i),(0:j)")).to_json()
    got = json.loads(out)
    got.pop("elapsed_ms")
    lib.pop("elapsed_ms")
    assert code == 0 and got == lib


def test_check_ci(capsys):
    assert run(capsys, "check", "ci", "--group", "C4", "--set", "1")[:2] == (0, "true\n")
    code, _, err = run(capsys, "check", "ci", "--group", "C4", "--set", "0,1")
    assert code == 2 and "identity" in err
    assert run(capsys, "check", "ci", "--group", "C4", "--set", "7")[0] == 2
    assert run(capsys, "check", "bci", "--group", "C4")[0] == 2


def test_bcay_then_graph_info(capsys, tmp_path):
    f = tmp_path / "k33.g6"
    code, out, _ = run(capsys, "bcay", "--group", "C3", "--set", "0,1,2", "--g6-out", str(f))
    assert code == 0 and out.strip() == graph6_encode(bcay(build_group("C3"), (0, 1, 2))).decode()
    code, out, _ = run(capsys, "graph", "info", "--in", str(f), "--json")
    d = json.loads(out)
    assert (d["order"], d["edges"], d["girth"], d["aut_order"]) == (6, 9, 4, 72)
    assert d["connected"] and d["s_regularity"]["regular_at"] == 3


def test_graph_info_heawood(capsys, tmp_path):
    f = tmp_path / "h.g6"
    write_graph6_file(named_graph("heawood"), f)
    code, out, _ = run(capsys, "graph", "info", "--in", str(f), "--json")
    d = json.loads(out)
    assert d["girth"] == 6 and d["s_regularity"]["regular_at"] == 4 and d["aut_order"] == 336
    assert out == dumps(graph_info(named_graph("heawood"))) + "\n"
    code, out, _ = run(capsys, "graph", "info", "--in", str(f))
    assert "girth: 6" in out.splitlines()


def test_graph_info_bad_file(capsys, tmp_path):
    f = tmp_path / "bad.g6"
    f.write_text("D?\n")
    assert run(capsys, "graph", "info", "--in", str(f))[0] == 2
    assert run(capsys, "graph", "info", "--in", str(tmp_path / "missing.g6"))[0] == 2


def test_bad_tier_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify-paper", "--tier", "4"])
    assert info.value.code == 2
    with pytest.raises(ValueError):
        run_claim_suite(4)


def test_help_documents_naming(capsys):
    with pytest.raises(SystemExit):
        main(["check", "--help"])
    out = capsys.readouterr().out
    assert "(2:-i)" in out and "BCI_MAX_ELEMENTS" in out


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "bicayley.cli", "bcay", "--group", "C4", "--set", "0,1,3"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == graph6_encode(bcay(build_group("C4"), (0, 1, 3))).decode()


def test_claim_records_have_anchors():
    ids = [c.id for c in CLAIMS]
    assert ids == [f"A{i}" for i in range(1, 19)]
    for c in CLAIMS:
        assert c.anchor and c.tier in (1, 2, 3) and c.expected


def test_lcf_fault_injection():
    report = run_claim_suite(1, only=["A1"], lcf_overrides={"cube": ((3, 3), 4)})
    (rec,) = report.records
    assert rec.status == "fail" and report.exit_code == 1
    assert "cube" in rec.witness
    clean = run_claim_suite(1, only=["A1"])
    assert clean.records[0].status == "pass" and clean.exit_code == 0
    assert LCF_CODES["cube"] != ((3, 3), 4)


def test_report_schema_and_determinism(capsys, tmp_path):
    f = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-paper", "--tier", "1", "--only", "A2,A5", "--report", str(f), "--quiet")
    d = json.loads(f.read_text())
    assert code == 0 and f"seed {DEFAULT_SEED}" in out
    assert set(d) == {"suite_version", "seed", "claims", "summary"}
    assert d["suite_version"] == SUITE_VERSION and d["seed"] == DEFAULT_SEED
    assert d["summary"] == {"pass": 2, "fail": 0, "skipped": 0}
    fields = set(ClaimRecord.__dataclass_fields__)
    assert all(set(c) == fields for c in d["claims"])
    again = run_claim_suite(1, only=["A2", "A5"]).to_json()

    def strip(rep):
        return [{k: v for k, v in c.items() if k != "elapsed_ms"} for c in rep["claims"]]

    assert strip(again) == strip(d)


def test_claim_by_id():
    assert claim_by_id("A4").tier == 1
    with pytest.raises(KeyError):
        claim_by_id("A99")
