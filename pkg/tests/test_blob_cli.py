import hashlib
import json
import math
import os

import numpy as np
import pytest

import BlobCntlr
import BlobErrors
import BlobRunFlat
import BlobSymplectic
from conftest import FIXTURE_DIR

def fixture(name):
    return os.path.join(FIXTURE_DIR, name)

@pytest.fixture(autouse = True)
def log_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("SDK_LOG", raising = False)
    monkeypatch.setattr(BlobRunFlat, "Global_log_dir", str(tmp_path / "log"))
    return tmp_path / "log"

def run(capsys, *argv):
    code = BlobRunFlat.main([str(arg) for arg in argv])
    out, err = capsys.readouterr()
    return code, out, err

def runReport(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == BlobErrors.EXIT_OK, err
    return json.loads(out)

def diagnostic(err):
    return json.loads(err.strip().splitlines()[-1])

def assertMatchesGolden(actual, expected, path = "report"):
    """Same keys, lengths, booleans and strings; numbers within 1e-9."""
    if isinstance(expected, dict):
        assert isinstance(actual, dict) and set(actual) == set(expected), path
        for key in expected:
            assertMatchesGolden(actual[key], expected[key], "{0}.{1}".format(path, key))
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), path
        for i, (a, e) in enumerate(zip(actual, expected)):
            assertMatchesGolden(a, e, "{0}[{1}]".format(path, i))
    elif isinstance(expected, bool) or expected is None or isinstance(expected, str):
        assert actual == expected, path
    else:
        assert not isinstance(actual, bool), path
        assert actual == pytest.approx(expected, rel = 1e-9, abs = 1e-9), path

class TestSubcommands:
    def test_williamson(self, capsys):
        report = runReport(capsys, "williamson", fixture("williamson.json"))
        assert report["spectrum"] == pytest.approx([2.0], abs = 1e-9)
        S = np.array(report["S"])
        assert BlobSymplectic.symplecticResidual(S) <= 1e-9
        assert np.allclose(S.T @ (2.0 * np.eye(2)) @ S, np.diag([4.0, 1.0]), atol = 1e-9)

    def test_admissible(self, capsys):
        report = runReport(capsys, "admissible", fixture("admissible.json"), "--planes", "8")
        assert report["by_spectrum"] and report["by_inclusion"] and report["by_positivity"]
        assert report["agree"]
        assert report["purity"] == pytest.approx(1.0, abs = 1e-9)
        assert report["narcowich"]["c_cov"] == pytest.approx(math.pi, abs = 1e-9)

    def test_admissible_at_another_hbar(self, capsys):
        # (1/2) I is below the bound once hbar = 2
        report = runReport(capsys, "admissible", fixture("admissible.json"), "--hbar", "2", "--planes", "8")
        assert not report["by_spectrum"]
        assert report["agree"]

    def test_dual(self, capsys):
        report = runReport(capsys, "dual", fixture("dual.json"))
        assert report["is_quantum_blob"] and report["self_dual"]
        assert np.allclose(report["polar_dual"], np.diag([0.5, 2.0, 2.0, 0.5]), atol = 1e-9)
        assert report["volume_product_ratio"] == pytest.approx(1.0, abs = 1e-9)
        assert report["mahler_volume"] == pytest.approx(math.pi ** 4 / 4.0, rel = 1e-9)
        assert report["subspace"]["residual"] <= 1e-9

    def test_capacity_of_an_ellipsoid(self, capsys):
        report = runReport(capsys, "capacity", fixture("capacity.json"))
        assert report["source"] == "ellipsoid"
        assert report["capacity"] == pytest.approx(math.pi / 2.0, abs = 1e-9)
        assert report["dual"]["capacity"] == pytest.approx(2.0 * math.pi, abs = 1e-9)
        assert report["product_bound"]["round"] and report["product_bound"]["holds"]
        assert report["orbit"]["capacity"] == pytest.approx(math.pi / 2.0, rel = 1e-7)

    def test_capacity_of_a_product(self, capsys):
        assert runReport(capsys, "capacity", fixture("capacity_product.json"))["capacity"] == pytest.approx(8.0, abs = 1e-9)
        assert runReport(capsys, "capacity", fixture("capacity_product.json"), "--hbar", "2")["capacity"] == pytest.approx(16.0, abs = 1e-9)

    def test_capacity_of_a_state(self, capsys):
        report = runReport(capsys, "capacity", fixture("capacity_state.json"), "--hbar", "0.5")
        assert report["source"] == "state"
        assert report["capacity"] == pytest.approx(2.0, abs = 1e-9)
        assert report["witness"]["c_min_lin"] == pytest.approx(0.5 * math.pi, abs = 1e-9)

    def test_gaussian_state(self, capsys):
        report = runReport(capsys, "state", fixture("state_gaussian.json"))
        assert report["det_wigner_matrix"] == pytest.approx(1.0, abs = 1e-9)
        assert report["roundtrip"]["identity"]
        assert report["john_admissible"]
        A = np.array([[2.0, 0.3], [0.3, 1.0]])
        assert np.allclose(report["marginals"]["sigma_xx"], 0.5 * np.linalg.inv(A), atol = 1e-9)
        assert report["geometric"]["center"] == pytest.approx([0.5, 0.0, 0.0, -1.0])

    def test_geometric_state(self, capsys):
        report = runReport(capsys, "state", fixture("state_geometric.json"))
        assert report["capacity"]["capacity"] == pytest.approx(4.0, abs = 1e-9)
        assert report["john_capacity"] == pytest.approx(math.pi, abs = 1e-9)
        assert report["pure"]
        # the second plane is not l_P, so only the Gaussian survives the roundtrip
        assert not report["roundtrip"]["identity"]
        assert report["roundtrip"]["gaussian_preserved"]

    def test_mixed_state(self, capsys):
        report = runReport(capsys, "state", fixture("state_mixed.json"))
        assert not report["pure"]
        assert report["purity"] == pytest.approx(0.5, abs = 1e-9)
        assert report["capacity"]["capacity"] == pytest.approx(8.0, abs = 1e-9)
        assert report["input"]["kind"] == "mixed"

class TestBeam:
    def test_harmonic_period(self, capsys):
        code, out, err = run(capsys, "beam", fixture("beam_harmonic.json"))
        assert code == BlobErrors.EXIT_OK, err
        records = [json.loads(line) for line in out.splitlines()]
        summary = records[-1]["summary"]
        assert records[0]["t"] == 0.0
        assert summary["snapshots"] == len(records) - 1 == 64
        assert summary["t_end"] == pytest.approx(2.0 * math.pi)
        assert summary["payload_invariant"]
        assert summary["gamma"] == pytest.approx(0.0, abs = 1e-9)
        assert summary["transport"]["linear"]["contained"]
        assert summary["transport"]["samples"] == 50
        for record in records[:-1]:
            c, s = math.cos(record["t"]), math.sin(record["t"])
            assert record["z"] == pytest.approx([0.5 * c - 0.3 * s, -0.5 * s - 0.3 * c], abs = 1e-9)
            assert np.allclose(record["S"], [[c, s], [-s, c]], atol = 1e-9)

    def test_quartic_with_flags(self, capsys):
        code, out, err = run(capsys, "beam", fixture("beam_quartic.json"), "--hbar", "0.01", "--every", "250", "--t-end", "0.5")
        assert code == BlobErrors.EXIT_OK, err
        records = [json.loads(line) for line in out.splitlines()]
        summary = records[-1]["summary"]
        assert [record["t"] for record in records[:-1]] == pytest.approx([0.0, 0.25, 0.5])
        assert summary["max_drift"] <= 1e-8
        assert summary["john_admissible"]
        assert records[1]["payload"]["kind"] == "geometric"

    def test_blow_up(self, capsys):
        code, out, err = run(capsys, "beam", fixture("beam_blowup.json"))
        assert code == BlobErrors.EXIT_NUMERICAL
        assert out == ""
        report = diagnostic(err)
        assert report["error"] == "BlowUpError"
        assert 0.0 < report["last_t"] < 10.0

    def test_needs_a_final_time(self, tmp_path, capsys):
        doc = json.load(open(fixture("beam_quartic.json")))
        del doc["tEnd"]
        path = tmp_path / "no_end.json"
        path.write_text(json.dumps(doc))
        code, _, err = run(capsys, "beam", path)
        assert code == BlobErrors.EXIT_PARSE
        assert diagnostic(err)["error"] == "ParseError"

class TestErrors:
    def test_malformed_json(self, capsys):
        code, out, err = run(capsys, "williamson", fixture("malformed.json"))
        assert code == BlobErrors.EXIT_PARSE
        assert out == ""
        assert diagnostic(err)["exit_code"] == BlobErrors.EXIT_PARSE

    def test_missing_input(self, tmp_path, capsys):
        code, _, _ = run(capsys, "williamson", tmp_path / "absent.json")
        assert code == BlobErrors.EXIT_PARSE

    def test_missing_key(self, capsys):
        code, _, err = run(capsys, "williamson", fixture("admissible.json"))
        assert code == BlobErrors.EXIT_PARSE
        assert "'M'" in diagnostic(err)["message"]

    def test_not_positive_definite(self, capsys):
        code, _, err = run(capsys, "williamson", fixture("not_pd.json"))
        assert code == BlobErrors.EXIT_DOMAIN
        assert diagnostic(err)["error"] == "NotPositiveDefiniteError"

    def test_invalid_flag_values(self, capsys):
        code, _, _ = run(capsys, "williamson", fixture("williamson.json"), "--hbar", "-1")
        assert code == BlobErrors.EXIT_PARSE

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            BlobRunFlat.main(["integrate", fixture("williamson.json")])
        assert info.value.code == 2

    def test_run_config_validation(self):
        with pytest.raises(BlobErrors.ParseError):
            BlobCntlr.RunConfig("history").validate()
        with pytest.raises(BlobErrors.ParseError):
            BlobCntlr.RunConfig("beam", "x.json", every = 0).validate()
        assert BlobCntlr.RunConfig("beam", "x.json", dt = 0.01).validate()

class TestOutput:
    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "capacity", fixture("capacity.json"), "--output", target)
        assert code == BlobErrors.EXIT_OK
        assert out == ""
        assert json.loads(target.read_text())["capacity"] == pytest.approx(math.pi / 2.0)
        assert [p.name for p in tmp_path.iterdir() if p.name.startswith(".blob-")] == []

    @pytest.mark.parametrize("subcommand,name", [("williamson", "williamson.json"),
                                                 ("admissible", "admissible.json"),
                                                 ("dual", "dual.json"),
                                                 ("capacity", "capacity.json"),
                                                 ("state", "state_geometric.json"),
                                                 ("beam", "beam_quartic.json")])
    def test_runs_are_byte_identical(self, tmp_path, capsys, subcommand, name):
        first, second = tmp_path / "first.out", tmp_path / "second.out"
        run(capsys, subcommand, fixture(name), "--output", first)
        run(capsys, subcommand, fixture(name), "--output", second)
        assert first.read_bytes() == second.read_bytes()
        assert first.read_bytes().endswith(b"\n")

    @pytest.mark.parametrize("subcommand,name", [("williamson", "williamson.json"),
                                                 ("admissible", "admissible.json"),
                                                 ("dual", "dual.json"),
                                                 ("capacity", "capacity_product.json"),
                                                 ("capacity", "capacity_state.json"),
                                                 ("state", "state_mixed.json")])
    def test_matches_golden_report(self, tmp_path, capsys, subcommand, name):
        target = tmp_path / "report.json"
        code, _, err = run(capsys, subcommand, fixture(name), "--output", target)
        assert code == BlobErrors.EXIT_OK, err
        text = target.read_text()
        with open(fixture(os.path.join("golden", name))) as fh:
            expected = json.load(fh)
        assertMatchesGolden(json.loads(text), expected)
        assert text == json.dumps(json.loads(text), sort_keys = True, indent = 2) + "\n"

    def test_sdk_log_echoes_to_stderr(self, monkeypatch, capsys, log_dir):
        monkeypatch.setenv("SDK_LOG", "INFO")
        code, _, err = run(capsys, "williamson", fixture("williamson.json"))
        assert code == BlobErrors.EXIT_OK
        assert "Initializing BlobCntlr" in err
        assert (log_dir / "blobstudio.log").exists()

class TestArchive:
    def test_history(self, tmp_path, capsys):
        db = tmp_path / "runs.db"
        runReport(capsys, "williamson", fixture("williamson.json"), "--db", db)
        code, _, _ = run(capsys, "williamson", fixture("not_pd.json"), "--db", db)
        assert code == BlobErrors.EXIT_DOMAIN
        history = runReport(capsys, "history", "--db", db)
        runs = history["runs"]
        assert [r["subcommand"] for r in runs] == ["williamson", "williamson"]
        assert [r["exit_code"] for r in runs] == [0, 3]
        with open(fixture("williamson.json"), "rb") as fh:
            assert runs[0]["input_digest"] == hashlib.sha256(fh.read()).hexdigest()

    def test_archived_report(self, tmp_path, capsys):
        import BlobDatabaseUtility
        db = tmp_path / "runs.db"
        runReport(capsys, "capacity", fixture("capacity_product.json"), "--db", db)
        BlobDatabaseUtility.buildEngine(str(db))
        try:
            assert BlobDatabaseUtility.tableExists("runs")
            assert BlobDatabaseUtility.getReport(1)["capacity"] == pytest.approx(8.0)
            assert BlobDatabaseUtility.getReport(99) is None
        finally:
            BlobDatabaseUtility.disposeEngine()
