"""Claim registry and CLI behaviour: statuses, determinism, exit codes."""

import json

import pytest

from qcorr import claims, witnesses
from qcorr.cli import main


class TestRegistry:
    def test_ids_unique_and_labelled(self):
        ids = [c.claim_id for c in claims.REGISTRY]
        assert len(ids) == len(set(ids))
        for claim in claims.REGISTRY:
            assert claim.provenance in ("paper", "derived", "trivial")
            assert claim.kind in ("match", "reinterpreted", "unverifiable")

    def test_full_run_has_no_mismatch(self):
        report = claims.run_claims()
        statuses = {e["claim_id"]: e["status"] for e in report.entries}
        assert claims.STATUS_MISMATCH not in statuses.values()
        assert report.exit_status == 0

    def test_reinterpreted_entries_are_the_dichotomic_tolerances(self):
        report = claims.run_claims()
        reinterpreted = {
            e["claim_id"] for e in report.entries if e["status"] == claims.STATUS_REINTERPRETED
        }
        assert reinterpreted == {"w6ii_noise_tolerance", "w8ii_noise_tolerance"}

    def test_unverifiable_entries_record_findings(self):
        report = claims.run_claims()
        unverifiable = {
            e["claim_id"]: e for e in report.entries if e["status"] == claims.STATUS_UNVERIFIABLE
        }
        assert set(unverifiable) == {"w6ii_gamma_existence", "w8ii_gamma_existence"}
        for entry in unverifiable.values():
            assert entry["paper_value"] is None

    def test_every_entry_appears_once(self):
        report = claims.run_claims()
        assert len(report.entries) == len(claims.REGISTRY)
        assert [e["claim_id"] for e in report.entries] == sorted(
            c.claim_id for c in claims.REGISTRY
        )

    def test_deterministic_reports(self):
        a = json.dumps(claims.run_claims().to_dict(), sort_keys=True)
        b = json.dumps(claims.run_claims().to_dict(), sort_keys=True)
        assert a == b

    def test_tolerance_override_forces_mismatch(self):
        config = claims.RunConfig(
            tolerance_overrides=(("ghz_witness_noise_threshold", 0.0),)
        )
        report = claims.run_claims(config)
        entry = next(
            e for e in report.entries if e["claim_id"] == "ghz_witness_noise_threshold"
        )
        assert entry["status"] == claims.STATUS_MISMATCH
        assert report.exit_status == 1


class TestCli:
    def test_reproduce_all_exit_zero(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["--out", str(out), "reproduce-all"])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["exit_status"] == 0
        assert {e["claim_id"] for e in doc["entries"]} == {
            c.claim_id for c in claims.REGISTRY
        }
        stdout = capsys.readouterr().out
        assert "ghz_witness_noise_threshold" in stdout

    def test_reproduce_all_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["--out", str(out1), "reproduce-all"]) == 0
        assert main(["--out", str(out2), "reproduce-all"]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_reproduce_all_tolerance_override_fails_run(self, capsys):
        code = main(["--tol", "bell_c3_quantum_value=0", "reproduce-all"])
        assert code == 1
        assert "MISMATCH" in capsys.readouterr().out

    def test_witness_detects_below_threshold(self, capsys):
        assert main(["--json", "witness", "W_GHZ", "--p", "0.3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["witness_value_at_p"] < 0

    def test_witness_blind_above_threshold(self, capsys):
        assert main(["--json", "witness", "W_GHZ", "--p", "0.4"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["witness_value_at_p"] > 0

    def test_witness_report_fields(self, capsys):
        assert main(["--json", "witness", "W_GHZ4X3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert abs(doc["p_star"] - 0.368) <= 5e-4
        assert doc["match"] is True
        assert abs(doc["alpha"] - 0.25) <= 1e-12

    def test_witness_gamma_check(self, capsys):
        assert main(["--json", "witness", "W_GHZ", "--gamma", "8"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["validate_at_gamma"] is True
        assert abs(doc["find_gamma"] - 8.0) <= 1e-5

    def test_witness_rejects_unknown_name(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["witness", "W_NOPE"])
        assert excinfo.value.code == 2

    def test_bell_scan_record_count(self, tmp_path, capsys):
        out = tmp_path / "scan.jsonl"
        assert main(["--out", str(out), "bell", "--d-range", "2..8"]) == 0
        lines = [json.loads(line) for line in out.read_text().splitlines()]
        capsys.readouterr()
        assert len(lines) == 8  # seven dimensions plus the limit summary
        assert [rec["d"] for rec in lines[:-1]] == list(range(2, 9))
        assert all(rec["lhv_max"] == 2 for rec in lines[:-1])
        assert "limit_constant" in lines[-1]

    def test_bell_d3_record_values(self, capsys):
        assert main(["bell", "--d-range", "3..3"]) == 0
        first = json.loads(capsys.readouterr().out.splitlines()[0])
        assert abs(first["C_d_numeric"] - 2.87293) <= 1e-5
        assert abs(first["noise_threshold"] - 0.30385) <= 1e-5

    def test_lhv_bipartite(self, capsys):
        assert main(["lhv", "--d", "2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["lhv_max"] == 2

    def test_lhv_mermin(self, capsys):
        assert main(["lhv", "--mermin", "4"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["lhv_max"] == 4.0
        assert doc["word_count"] == 8

    def test_lhv_requires_exactly_one_mode(self, capsys):
        assert main(["lhv"]) == 2
        assert main(["lhv", "--d", "2", "--mermin", "4"]) == 2
        capsys.readouterr()

    @pytest.mark.parametrize(
        "family,count",
        [
            ("ghz-single", 8),
            ("ghz-pair", 12),
            ("ghz-x-parity", 8),
            ("mermin", 8),
            ("stabilizer", 2),
            ("singlet4-y", 16),
            ("ghz4x3-z", 27),
        ],
    )
    def test_correlator_export(self, family, count, capsys):
        assert main(["correlators", family]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["operators"]) == count
        assert len(doc["metadata"]) == count
        dim = len(doc["operators"][0])
        assert all(len(row) == dim for row in doc["operators"][0])
        assert isinstance(doc["operators"][0][0][0], list)

    def test_bell_qudit_export(self, capsys):
        assert main(["correlators", "bell-qudit", "--d", "3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["family"] == "bell_qudit"
        assert len(doc["operators"]) == 12

    def test_witness_name_listing_matches_registry(self):
        assert set(witnesses.WITNESS_NAMES) == {
            "W_GHZ",
            "W_2II",
            "W_6II",
            "W_8II",
            "W_PSI4",
            "W_GHZ4X3",
            "W_PSI_D4",
        }
