import json
import math

import numpy as np
import pytest

from unimetric import cli
from unimetric.linalg import matrix_to_json, save_matrix
from unimetric.metrics import sup_distance

CNOT = np.eye(4)[[0, 1, 3, 2]].astype(complex)


@pytest.fixture
def matrix_files(tmp_path):
    paths = {}
    mats = {
        "I2": np.eye(2),
        "I3": np.eye(3),
        "I4": np.eye(4),
        "rot": np.diag([1.0, np.exp(1j * math.pi / 2)]),
        "cnot": CNOT,
        "swap": np.eye(4)[[0, 2, 1, 3]],
        "basis": np.eye(3)[:, :2],
        "bad": np.ones((2, 2)),
    }
    for name, m in mats.items():
        p = tmp_path / f"{name}.json"
        save_matrix(p, m)
        paths[name] = str(p)
    return paths


def run_json(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestDist:
    def test_quarter_rotation(self, matrix_files, capsys):
        code, payload = run_json(capsys, ["dist", matrix_files["I2"], matrix_files["rot"]])
        assert code == 0
        assert payload["value"] == pytest.approx(0.70710678118, abs=1e-9)
        assert payload["alpha"] == pytest.approx(math.pi / 2, abs=1e-12)
        assert payload["maximizer"]["rows"] == 2

    def test_cli_matches_api_exactly(self, matrix_files, capsys):
        code, payload = run_json(capsys, ["dist", matrix_files["I4"], matrix_files["cnot"]])
        assert code == 0
        api = sup_distance(np.eye(4), CNOT).value
        assert payload["value"] == api  # repr round trip is exact

    def test_same_operator(self, matrix_files, capsys):
        code, payload = run_json(capsys, ["dist", matrix_files["I2"], matrix_files["I2"]])
        assert code == 0 and payload["value"] == 0.0

    def test_dimension_mismatch_exit_3(self, matrix_files, capsys):
        assert cli.main(["dist", matrix_files["I2"], matrix_files["I3"]]) == 3
        assert "error" in capsys.readouterr().err

    def test_not_unitary_exit_4(self, matrix_files, capsys):
        assert cli.main(["dist", matrix_files["I2"], matrix_files["bad"]]) == 4

    def test_parse_error_exit_2(self, tmp_path, matrix_files, capsys):
        junk = tmp_path / "junk.json"
        junk.write_text("{not json")
        assert cli.main(["dist", str(junk), matrix_files["I2"]]) == 2

    def test_missing_file_exit_2(self, matrix_files, capsys):
        assert cli.main(["dist", "/nonexistent.json", matrix_files["I2"]]) == 2

    def test_output_file(self, matrix_files, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = cli.main(
            ["dist", matrix_files["I2"], matrix_files["rot"], "--output", str(out)]
        )
        assert code == 0
        assert json.loads(out.read_text())["value"] == pytest.approx(0.7071067811865475)


class TestDistinguish:
    def test_cnot(self, matrix_files, capsys):
        code, payload = run_json(
            capsys, ["distinguish", matrix_files["I4"], matrix_files["cnot"]]
        )
        assert code == 0
        assert payload["distinguishable"] is True
        assert payload["residual"] <= 1e-8
        assert payload["witness"]["rows"] == 4

    def test_small_rotation(self, tmp_path, matrix_files, capsys):
        p = tmp_path / "eighth.json"
        save_matrix(p, np.diag([1.0, np.exp(1j * math.pi / 4)]))
        code, payload = run_json(capsys, ["distinguish", matrix_files["I2"], str(p)])
        assert code == 0
        assert payload["distinguishable"] is False
        assert payload["min_overlap_bound"] == pytest.approx(math.cos(math.pi / 8), abs=1e-10)


class TestOtherCommands:
    def test_tensor(self, capsys):
        code, payload = run_json(capsys, ["tensor", "--d1", "0.5", "--d2", "0.5"])
        assert code == 0
        assert payload["value"] == pytest.approx(math.sqrt(3) / 2, abs=1e-12)

    def test_tensor_out_of_range_exit_5(self, capsys):
        assert cli.main(["tensor", "--d1", "1.5", "--d2", "0.2"]) == 5

    def test_face_dist(self, matrix_files, tmp_path, capsys):
        w = tmp_path / "w.json"
        save_matrix(w, np.diag([1.0, 1j, -1.0]))
        code, payload = run_json(
            capsys,
            ["face-dist", matrix_files["I3"], str(w), "--basis", matrix_files["basis"]],
        )
        assert code == 0
        assert payload["value"] == pytest.approx(math.sin(math.pi / 4), abs=1e-6)

    def test_sep_dist_swap(self, matrix_files, capsys):
        code, payload = run_json(
            capsys,
            [
                "sep-dist",
                matrix_files["I4"],
                matrix_files["swap"],
                "--dims",
                "2,2",
                "--restarts",
                "6",
                "--seed",
                "5",
            ],
        )
        assert code == 0
        assert payload["value"] == pytest.approx(1.0, abs=1e-6)
        assert payload["dims"] == [2, 2]

    def test_sep_dist_seed_env_override(self, matrix_files, capsys, monkeypatch):
        monkeypatch.setenv("UNIMETRIC_SEED", "99")
        code, payload = run_json(
            capsys,
            ["sep-dist", matrix_files["I4"], matrix_files["swap"], "--dims", "2,2",
             "--restarts", "2"],
        )
        assert code == 0 and payload["seed"] == 99

    def test_nullspace(self, capsys):
        code, payload = run_json(capsys, ["nullspace", "--gens", "+ZZ,+XX"])
        assert code == 0
        assert len(payload["blocks"]) == 4
        assert payload["generators"] == ["+ZZ", "+XX"]

    def test_nullspace_bad_pauli_exit_2(self, capsys):
        assert cli.main(["nullspace", "--gens", "+ZQ"]) == 2

    def test_stabilizer(self, capsys):
        code, payload = run_json(capsys, ["stabilizer", "--gens", "+ZZ,+XX"])
        assert code == 0
        assert payload["abelian"] is True
        assert len(payload["faces"]) == 4

    def test_stabilizer_nonabelian(self, capsys):
        code, payload = run_json(capsys, ["stabilizer", "--gens", "+X,+Z"])
        assert code == 0
        assert payload["abelian"] is False and payload["faces"] == []

    def test_search_by_size(self, capsys):
        code, payload = run_json(capsys, ["search", "--N", "1024", "--epsilon", "0.1"])
        assert code == 0
        assert payload["k"] == 47
        assert payload["achieved"] <= 0.1
        assert payload["bound_sqrtN"] == math.ceil(math.pi / 2 * 32)

    def test_search_by_alpha(self, capsys):
        code, payload = run_json(
            capsys,
            ["search", "--alpha", str(math.pi / 6), "--gamma", str(math.pi / 6),
             "--epsilon", "0.01"],
        )
        assert code == 0
        assert payload["k"] == 2 and payload["achieved"] <= 1e-12
        assert payload["bound_sqrtN"] is None

    def test_search_requires_exactly_one_of_alpha_or_n(self, capsys):
        assert cli.main(["search", "--epsilon", "0.1"]) == 2
        assert (
            cli.main(["search", "--alpha", "0.2", "--N", "16", "--epsilon", "0.1"]) == 2
        )

    def test_search_unreachable_exit_5(self, capsys):
        code = cli.main(
            ["search", "--alpha", "0.7", "--gamma", "1.4", "--epsilon", "0.01"]
        )
        assert code == 5
        assert "best k" in capsys.readouterr().err

    def test_numrange_rejects_nonunitary(self, matrix_files, capsys):
        assert cli.main(["numrange", matrix_files["bad"]]) == 4

    def test_numrange_with_csv(self, matrix_files, tmp_path, capsys):
        csv_path = tmp_path / "poly.csv"
        code, payload = run_json(
            capsys, ["numrange", matrix_files["rot"], "--emit", str(csv_path)]
        )
        assert code == 0
        assert payload["polygon_distance"] == pytest.approx(math.cos(math.pi / 4), abs=1e-12)
        assert payload["numrange_distance"] == pytest.approx(math.cos(math.pi / 4), abs=1e-6)
        lines = csv_path.read_text().strip().split("\n")
        assert lines[0] == "theta,re,im,multiplicity"
        assert len(lines) == 3


class TestSelftest:
    def test_subset_passes(self, capsys):
        code = cli.main(["selftest", "--criteria", "1,2"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("[PASS]") == 2
        assert "2/2 checks passed" in out

    def test_corrupt_hook_fails(self, capsys, monkeypatch):
        monkeypatch.setenv("UNIMETRIC_SELFTEST_CORRUPT", "1")
        code = cli.main(["selftest", "--criteria", "1"])
        out = capsys.readouterr().out
        assert code == 1
        assert "[FAIL]" in out

    def test_reports_timing(self, capsys):
        cli.main(["selftest", "--criteria", "1"])
        out = capsys.readouterr().out
        assert "s " in out and "arc formula" in out

    def test_unknown_criterion_exit_2(self, capsys):
        assert cli.main(["selftest", "--criteria", "99"]) == 2


class TestMatrixFormat:
    def test_round_trip_through_cli_files(self, tmp_path, capsys):
        rng = np.random.default_rng(4)
        z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        q, _ = np.linalg.qr(z)
        p = tmp_path / "u.json"
        save_matrix(p, q)
        obj = json.loads(p.read_text())
        assert obj == matrix_to_json(q)
