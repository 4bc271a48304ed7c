import json
import subprocess
import sys

import numpy as np
import pytest

from coherence_kit import (
    SetupConfig,
    build_minimal_setup,
    certifies_coherence,
    coherence_from_data,
    noisy_max_coherent_state,
    random_density_matrix,
    simulate_probabilities,
)
from coherence_kit.cli import main
from coherence_kit.serialize import (
    complex_matrix_from_json,
    complex_matrix_to_json,
    load_json,
    save_json,
    setup_from_json,
    table_from_json,
    table_to_json,
)


def run_cli(*argv):
    return main(list(argv))


class TestBuildVerifyPipeline:
    def test_build_then_verify(self, tmp_path, capsys):
        setup_path = tmp_path / "s.json"
        report_path = tmp_path / "r.json"
        assert run_cli("build-setup", "--dim", "4", "--out", str(setup_path)) == 0
        assert run_cli("verify", "--setup", str(setup_path), "--report", str(report_path)) == 0
        report = load_json(report_path)
        assert report["all_undetected_diagonal"] is True
        assert report["undetected_dim"] == 3
        assert report["min_vandermonde_node_distance"] > 1e-8
        # the CLI must match the library verbatim
        library = certifies_coherence(setup_from_json(load_json(setup_path)))
        assert report["span_dim"] == library.span_dim
        assert report["max_offdiag_leak"] == library.max_offdiag_leak

    def test_verify_prints_report_without_file(self, tmp_path, capsys):
        setup_path = tmp_path / "s.json"
        run_cli("build-setup", "--dim", "3", "--out", str(setup_path))
        capsys.readouterr()
        assert run_cli("verify", "--setup", str(setup_path)) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["all_undetected_diagonal"] is True
        assert out["undetected_dim"] == 2


class TestSimulateReconstructCoherence:
    @pytest.fixture
    def artifacts(self, tmp_path, rng):
        d = 5
        setup_path = tmp_path / "s.json"
        state_path = tmp_path / "rho.json"
        table_path = tmp_path / "t.json"
        run_cli("build-setup", "--dim", str(d), "--out", str(setup_path))
        rho = noisy_max_coherent_state(rng.uniform(0, 2 * np.pi, d), 0.6)
        save_json(state_path, complex_matrix_to_json(rho, kind="density"))
        run_cli(
            "simulate", "--state", str(state_path), "--setup", str(setup_path),
            "--out", str(table_path),
        )
        return d, rho, setup_path, state_path, table_path

    def test_simulate_matches_library(self, artifacts):
        d, rho, setup_path, _, table_path = artifacts
        table = table_from_json(load_json(table_path))
        direct = simulate_probabilities(rho, setup_from_json(load_json(setup_path)))
        assert np.max(np.abs(table.probs - direct.probs)) == 0.0

    def test_reconstruct_roundtrip(self, artifacts, tmp_path):
        d, rho, _, _, table_path = artifacts
        out_path = tmp_path / "rec.json"
        assert run_cli(
            "reconstruct", "--table", str(table_path), "--dim", str(d),
            "--out", str(out_path),
        ) == 0
        obj = load_json(out_path)
        matrix = complex_matrix_from_json(obj["matrix"], expected_kind="offdiagonal")
        off = rho - np.diag(np.diag(rho))
        assert np.max(np.abs(matrix - off)) < 1e-8
        assert obj["diagonal_filled"] is False
        assert len(obj["condition_numbers"]) == d - 1

    def test_reconstruct_with_reference_table(self, artifacts, tmp_path):
        d, rho, _, _, table_path = artifacts
        ref_path = tmp_path / "ref.json"
        out_path = tmp_path / "rec_full.json"
        from coherence_kit import ProbabilityTable

        save_json(ref_path, table_to_json(ProbabilityTable(np.diag(rho).real[None, :])))
        run_cli(
            "reconstruct", "--table", str(table_path), "--dim", str(d),
            "--with-reference", str(ref_path), "--out", str(out_path),
        )
        obj = load_json(out_path)
        matrix = complex_matrix_from_json(obj["matrix"], expected_kind="offdiagonal")
        assert obj["diagonal_filled"] is True
        assert np.max(np.abs(matrix - rho)) < 1e-8

    def test_coherence_with_threshold(self, artifacts, capsys):
        d, rho, _, _, table_path = artifacts
        capsys.readouterr()
        assert run_cli(
            "coherence", "--table", str(table_path), "--dim", str(d),
            "--threshold", "0.4",
        ) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "above"
        assert out["threshold_value"] == pytest.approx(0.4 * (d - 1))
        table = table_from_json(load_json(table_path))
        assert out["c1_estimate"] == coherence_from_data(table, SetupConfig(dim=d))

    def test_coherence_without_threshold(self, artifacts, capsys):
        d, _, _, _, table_path = artifacts
        capsys.readouterr()
        run_cli("coherence", "--table", str(table_path), "--dim", str(d))
        out = json.loads(capsys.readouterr().out)
        assert "verdict" not in out
        assert out["c1_estimate"] == pytest.approx(0.6 * (d - 1), abs=1e-8)


class TestCheckProposition:
    def test_all_pass(self, capsys):
        assert run_cli("check-proposition", "--max-dim", "12") == 0
        out = capsys.readouterr().out
        assert "d=2: ok" in out and "d=12: ok" in out

    def test_counterexample_branch(self, capsys, monkeypatch):
        import coherence_kit.cli as cli_mod

        monkeypatch.setattr(
            cli_mod, "proposition_counterexample", lambda d: (1, 0, 2) if d == 3 else None
        )
        assert run_cli("check-proposition", "--max-dim", "4") == 1
        out = capsys.readouterr().out
        assert "d=3: FAILED at shift x=1 with indices i=0, j=2" in out


class TestDemoQubit:
    def test_deterministic_output(self, capsys):
        run_cli("demo-qubit", "--seed", "3")
        first = capsys.readouterr().out
        run_cli("demo-qubit", "--seed", "3")
        second = capsys.readouterr().out
        assert first == second
        assert "blind spot" in first
        assert "reconstructed from probs" in first

    def test_reconstruction_in_demo_is_accurate(self, capsys):
        run_cli("demo-qubit", "--seed", "11")
        out = capsys.readouterr().out
        lines = {l.split(":")[0].strip(): l.split(":", 1)[1] for l in out.splitlines() if ":" in l}
        true_entry = complex(lines["true offdiag entry"].strip().replace("j", "j"))
        rec_entry = complex(lines["reconstructed from probs"].strip())
        assert abs(true_entry - rec_entry) < 1e-10


class TestErrorHandling:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as info:
            run_cli("frobnicate")
        assert info.value.code == 2

    def test_missing_file_is_domain_error(self, tmp_path, capsys):
        assert run_cli("verify", "--setup", str(tmp_path / "missing.json")) == 1
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "ValidationError"

    def test_malformed_json_is_domain_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        assert run_cli("verify", "--setup", str(bad)) == 1
        err = json.loads(capsys.readouterr().err)
        assert "malformed JSON" in err["message"]

    def test_wrong_table_shape_is_domain_error(self, tmp_path, capsys, rng):
        d = 4
        setup = build_minimal_setup(SetupConfig(dim=d))
        table = simulate_probabilities(random_density_matrix(d, rng), setup)
        table_path = tmp_path / "t.json"
        save_json(table_path, table_to_json(table))
        assert run_cli(
            "reconstruct", "--table", str(table_path), "--dim", "5",
            "--out", str(tmp_path / "o.json"),
        ) == 1
        err = json.loads(capsys.readouterr().err)
        assert err["error"] in ("DimensionMismatch", "ValidationError")

    def test_invalid_dim_is_domain_error(self, tmp_path, capsys):
        assert run_cli("build-setup", "--dim", "1", "--out", str(tmp_path / "s.json")) == 1
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "ValidationError"


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "coherence_kit", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "build-setup" in proc.stdout
