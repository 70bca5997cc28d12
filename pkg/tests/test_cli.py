import csv
import json
import shutil
from importlib import resources

import numpy as np
import pytest

from circwalk.cli import main, parse_time_expr, parse_complex_list


def read_csv_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


class TestTimeExpressions:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("0", 0.0),
            ("0.75", 0.75),
            ("pi", np.pi),
            ("2pi", 2 * np.pi),
            ("7/8pi", 7 * np.pi / 8),
            ("1/8 pi", np.pi / 8),
            ("pi/2", np.pi / 2),
            ("-pi", -np.pi),
            ("0.5pi", np.pi / 2),
        ],
    )
    def test_valid(self, text, value):
        assert parse_time_expr(text) == pytest.approx(value)

    @pytest.mark.parametrize("text", ["", "pi/pi", "one", "pi*2"])
    def test_invalid(self, text):
        with pytest.raises(ValueError):
            parse_time_expr(text)

    def test_complex_list(self):
        amps = parse_complex_list("1, -i, 0, 0")
        assert amps[1] == -1j


class TestGraphCommand:
    def test_paley_13(self, tmp_path, capsys):
        assert main(["graph", "--kind", "paley", "--p", "13", "--out", str(tmp_path)]) == 0
        rows = read_csv_rows(tmp_path / "groups.csv")
        mults = [int(r["multiplicity"]) for r in rows]
        values = [float(r["value"]) for r in rows]
        assert mults == [1, 6, 6]
        assert values[0] == pytest.approx(6.0)
        assert values[1] == pytest.approx((-1 + np.sqrt(13)) / 2)
        spectrum_rows = read_csv_rows(tmp_path / "spectrum.csv")
        assert len(spectrum_rows) == 13

    def test_single_vertex(self, tmp_path):
        assert main(["graph", "--row", "0", "--gamma", "1", "--out", str(tmp_path)]) == 0
        rows = read_csv_rows(tmp_path / "spectrum.csv")
        assert float(rows[0]["lambda"]) == 0.0

    def test_cycle4_row(self, tmp_path):
        assert main(["graph", "--row", "0,1,0,1", "--out", str(tmp_path)]) == 0
        lams = sorted(float(r["lambda"]) for r in read_csv_rows(tmp_path / "spectrum.csv"))
        assert lams == pytest.approx([-2, 0, 0, 2])

    def test_invalid_row_exit_2_names_invariant(self, tmp_path, capsys):
        assert main(["graph", "--row", "0,1,0,0", "--out", str(tmp_path)]) == 2
        err = capsys.readouterr().err
        assert "SymmetryViolation" in err

    def test_plot_writes_png(self, tmp_path):
        assert main(["graph", "--row", "0,1,0,1", "--plot", "--out", str(tmp_path)]) == 0
        assert (tmp_path / "spectrum.png").exists()

    def test_json_format(self, tmp_path):
        assert main(["graph", "--row", "1,1,1,1", "--format", "json",
                     "--out", str(tmp_path)]) == 0
        data = json.loads((tmp_path / "spectrum.json").read_text())
        assert data["schema_version"] == 1

    def test_spec_file_source(self, tmp_path):
        spec = tmp_path / "graph.json"
        spec.write_text(json.dumps({"kind": "paley", "params": {"p": 13}, "gamma": 1.0}))
        assert main(["graph", "--spec", str(spec), "--out", str(tmp_path / "out")]) == 0
        rows = read_csv_rows(tmp_path / "out" / "groups.csv")
        assert [int(r["multiplicity"]) for r in rows] == [1, 6, 6]

    def test_two_sources_rejected(self, tmp_path, capsys):
        assert main(["graph", "--row", "1,1", "--kind", "cycle", "--n", "4",
                     "--out", str(tmp_path)]) == 2


class TestCompileCommand:
    def test_k4_single_phase_gate(self, tmp_path):
        assert main(["compile", "--row", "1,1,1,1", "--t", "1/8pi",
                     "--out", str(tmp_path)]) == 0
        circ = json.loads((tmp_path / "circuit.json").read_text())
        mcp = [g for g in circ["gates"] if g["kind"] == "mcphase"]
        assert len(mcp) == 1
        assert mcp[0]["theta"] == pytest.approx(-np.pi / 2)
        assert (tmp_path / "circuit.qasm").exists()
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["total_gates"] <= 11

    def test_t_zero_all_angles_zero(self, tmp_path):
        assert main(["compile", "--row", "1,1,1,1", "--t", "0",
                     "--out", str(tmp_path)]) == 0
        circ = json.loads((tmp_path / "circuit.json").read_text())
        thetas = [g["theta"] for g in circ["gates"] if "theta" in g]
        assert thetas and all(th == 0.0 for th in thetas)

    def test_oracle_ancilla_count(self, tmp_path):
        assert main(["compile", "--kind", "cycle", "--n", "16", "--t", "0.5",
                     "--strategy", "oracle", "--k-frac", "10", "--k-int", "4",
                     "--out", str(tmp_path)]) == 0
        circ = json.loads((tmp_path / "circuit.json").read_text())
        assert circ["n_ancilla"] == 14
        assert not (tmp_path / "circuit.qasm").exists()  # oracle: no QASM

    def test_not_power_of_two_exit_3(self, tmp_path, capsys):
        assert main(["compile", "--kind", "paley", "--p", "13", "--t", "1",
                     "--out", str(tmp_path)]) == 3
        assert "NotPowerOfTwo" in capsys.readouterr().err


class TestSimulateCommand:
    def test_k4_distribution(self, tmp_path, capsys):
        assert main(["simulate", "--row", "1,1,1,1", "--t", "1/8pi",
                     "--initial", "0", "--out", str(tmp_path)]) == 0
        stdout = capsys.readouterr().out
        assert "0.6250000000" in stdout
        rows = read_csv_rows(tmp_path / "distribution.csv")
        assert float(rows[0]["value"]) == pytest.approx(0.625)
        assert (tmp_path / "state.json").exists()
        assert not (tmp_path / "counts.csv").exists()

    def test_shots_write_counts(self, tmp_path):
        assert main(["simulate", "--row", "1,1,1,1", "--t", "1/8pi",
                     "--shots", "1000", "--seed", "7", "--out", str(tmp_path)]) == 0
        rows = read_csv_rows(tmp_path / "counts.csv")
        assert sum(int(r["value"]) for r in rows) == 1000

    def test_shots_without_seed_exit_2(self, tmp_path, capsys):
        assert main(["simulate", "--row", "1,1,1,1", "--t", "0",
                     "--shots", "10", "--out", str(tmp_path)]) == 2
        assert "seed" in capsys.readouterr().err

    def test_verify_prints_fidelity(self, tmp_path, capsys):
        assert main(["simulate", "--kind", "cycle", "--n", "8", "--t", "0.9",
                     "--verify", "--out", str(tmp_path)]) == 0
        line = [l for l in capsys.readouterr().out.splitlines() if "verify" in l][0]
        assert float(line.split("=")[1]) >= 1 - 1e-9

    def test_initial_amplitudes(self, tmp_path):
        assert main(["simulate", "--row", "1,1,1,1", "--t", "7/8pi",
                     "--initial", "1,1,0,0", "--out", str(tmp_path)]) == 0
        state = json.loads((tmp_path / "state.json").read_text())
        assert state["re"][0] == pytest.approx(0.35355339059327373)

    def test_simulate_saved_circuit(self, tmp_path):
        assert main(["compile", "--row", "1,1,1,1", "--t", "1/8pi",
                     "--out", str(tmp_path)]) == 0
        assert main(["simulate", "--circuit", str(tmp_path / "circuit.json"),
                     "--out", str(tmp_path / "sim")]) == 0
        rows = read_csv_rows(tmp_path / "sim" / "distribution.csv")
        assert float(rows[0]["value"]) == pytest.approx(0.625)

    def test_wrong_width_initial_exit_4(self, tmp_path, capsys):
        assert main(["simulate", "--row", "1,1,1,1", "--t", "0",
                     "--initial", "1,0,0,0,0,0,0,0", "--out", str(tmp_path)]) == 4

    def test_byte_identical_reruns(self, tmp_path):
        args = ["simulate", "--row", "1,1,1,1", "--t", "1/8pi", "--shots", "500",
                "--seed", "11"]
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        for name in ("state.json", "distribution.csv", "counts.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_plot(self, tmp_path):
        assert main(["simulate", "--row", "1,1,1,1", "--t", "1/8pi", "--plot",
                     "--out", str(tmp_path)]) == 0
        assert (tmp_path / "distribution.png").exists()


class TestSwapTestCommand:
    def test_identical_specs(self, tmp_path):
        assert main(["swap-test", "--row-a", "1,1,1,1", "--t-a", "1/8pi",
                     "--row-b", "1,1,1,1", "--t-b", "1/8pi",
                     "--out", str(tmp_path)]) == 0
        rep = json.loads((tmp_path / "swap_test.json").read_text())
        assert rep["overlap"] == pytest.approx(1.0)

    def test_k4_vs_initial_vertex(self, tmp_path):
        assert main(["swap-test", "--row-a", "1,1,1,1", "--t-a", "1/8pi",
                     "--row-b", "1,1,1,1", "--t-b", "0",
                     "--out", str(tmp_path)]) == 0
        rep = json.loads((tmp_path / "swap_test.json").read_text())
        assert rep["overlap"] == pytest.approx(0.625)
        assert rep["p_one"] == pytest.approx(0.1875)

    def test_orthogonal_basis_states(self, tmp_path):
        assert main(["swap-test", "--row-a", "1,1,1,1", "--t-a", "0",
                     "--initial-a", "0", "--row-b", "1,1,1,1", "--t-b", "0",
                     "--initial-b", "1", "--out", str(tmp_path)]) == 0
        rep = json.loads((tmp_path / "swap_test.json").read_text())
        assert rep["p_one"] == pytest.approx(0.5)

    def test_sampled_section(self, tmp_path):
        assert main(["swap-test", "--row-a", "1,1,1,1", "--t-a", "1/8pi",
                     "--row-b", "1,1,1,1", "--t-b", "0", "--shots", "20000",
                     "--seed", "3", "--out", str(tmp_path)]) == 0
        rep = json.loads((tmp_path / "swap_test.json").read_text())
        assert abs(rep["sampled"]["overlap"] - 0.625) < 4 / np.sqrt(20000)

    def test_state_file_arm(self, tmp_path):
        assert main(["simulate", "--row", "1,1,1,1", "--t", "1/8pi",
                     "--out", str(tmp_path)]) == 0
        assert main(["swap-test", "--state-a", str(tmp_path / "state.json"),
                     "--row-b", "1,1,1,1", "--t-b", "1/8pi",
                     "--out", str(tmp_path / "swap")]) == 0
        rep = json.loads((tmp_path / "swap" / "swap_test.json").read_text())
        assert rep["overlap"] == pytest.approx(1.0)


class TestReproduceTables:
    def test_full_run_passes(self, tmp_path, capsys):
        assert main(["reproduce-tables", "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "PASS: all reference checks within tolerance" in out
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["pass"] is True
        assert report["max_ideal_diff"] <= 1e-9
        assert report["density_convention"] == "sqrt"
        assert len(report["f_averages"]) == 6
        for s in range(1, 7):
            assert (tmp_path / "tables" / f"state{s}.csv").exists()
            assert (tmp_path / "figures" / f"state{s}.png").exists()
        for i in range(1, 5):
            assert (tmp_path / "figures" / f"density_rho{i}.png").exists()

    def test_ideal_only(self, tmp_path):
        assert main(["reproduce-tables", "--ideal-only", "--out", str(tmp_path)]) == 0
        for s in range(1, 7):
            rows = read_csv_rows(tmp_path / "tables" / f"state{s}_ideal.csv")
            assert len(rows) == 36
            for row in rows:
                assert abs(float(row["p_ideal"]) - float(row["p_recomputed"])) <= 1e-9

    def test_tampered_fixture_exit_5_names_cell(self, tmp_path, capsys):
        fixdir = tmp_path / "fixtures"
        fixdir.mkdir()
        data = resources.files("circwalk") / "data"
        for name in ("table1.csv", "density_matrices.json", "output_states.json"):
            shutil.copy(str(data / name), fixdir / name)
        # tamper one ideal cell: state 3, t=2/8 pi, vertex 1
        lines = (fixdir / "table1.csv").read_text().splitlines()
        idx = lines.index("3,2,1,0.5,0.4679")
        lines[idx] = "3,2,1,0.9,0.4679"
        (fixdir / "table1.csv").write_text("\n".join(lines) + "\n")
        code = main(["reproduce-tables", "--fixtures", str(fixdir),
                     "--out", str(tmp_path / "out")])
        captured = capsys.readouterr()
        assert code == 5
        assert "state 3, t = 2/8 pi, vertex 1" in captured.err
