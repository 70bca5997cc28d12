import numpy as np
import pytest

from circwalk.analysis import density_fidelity
from circwalk.fixtures import (
    DENSITY_FIDELITY_CONVENTION,
    PUBLISHED_DENSITY_FIDELITIES,
    PUBLISHED_F_AVERAGES,
    initial_states,
    k4_graph,
    load_density_fixtures,
    load_output_states,
    load_table1,
    time_grid,
)


class TestTable1:
    def test_shapes(self):
        table = load_table1()
        assert table.ideal.shape == (6, 9, 4)
        assert table.exp.shape == (6, 9, 4)

    def test_ideal_columns_sum_to_one(self):
        table = load_table1()
        assert np.allclose(table.ideal.sum(axis=2), 1.0, atol=1e-12)

    def test_experimental_columns_near_one(self):
        # raw photon-count normalization drifts a little; sanity band only
        table = load_table1()
        sums = table.exp.sum(axis=2)
        assert sums.min() > 0.9 and sums.max() < 1.1

    def test_known_cells(self):
        table = load_table1()
        assert table.ideal_row(1, 1)[0] == 0.625
        assert table.exp_row(1, 0)[0] == 0.8225
        assert table.ideal_text[0][1][0] == "0.625"

    def test_override_path(self, tmp_path):
        from importlib import resources

        src = (resources.files("circwalk") / "data" / "table1.csv").read_text()
        p = tmp_path / "table1.csv"
        p.write_text(src)
        table = load_table1(p)
        assert table.ideal.shape == (6, 9, 4)


class TestInitialStates:
    def test_six_unit_states(self):
        states = initial_states()
        assert len(states) == 6
        for s in states:
            assert np.linalg.norm(s) == pytest.approx(1.0, abs=1e-15)

    def test_vertex_zero_start(self):
        assert np.array_equal(initial_states()[0], [1, 0, 0, 0])

    def test_time_grid(self):
        t = time_grid()
        assert len(t) == 9
        assert t[0] == 0.0 and t[-1] == pytest.approx(np.pi)

    def test_k4_graph(self):
        g = k4_graph()
        assert g.first_row == (1.0, 1.0, 1.0, 1.0)


class TestOutputStates:
    def test_four_fixtures(self):
        fx = load_output_states()
        assert [f.id for f in fx] == [1, 2, 3, 4]
        assert [f.time_eighths for f in fx] == [7, 7, 6, 6]
        assert [f.initial_state_id for f in fx] == [1, 2, 1, 2]

    def test_first_state_values(self):
        f = load_output_states()[0]
        assert f.amplitudes[0] == 0.75 + 0.25j
        assert f.match_tol == 1e-9

    def test_rounded_state_tolerance(self):
        f = load_output_states()[1]
        assert f.precision == "4dp"
        assert f.match_tol == 1e-4


class TestDensityFixtures:
    def test_all_pass_type_invariants(self):
        for rho in load_density_fixtures():
            assert rho.dim == 4
            assert rho.hermiticity_defect() <= 1e-6
            assert abs(np.trace(rho.entries).real - 1.0) <= 2e-3
            assert rho.min_eigenvalue() >= -5e-3

    def test_sqrt_convention_reproduces_published(self):
        assert DENSITY_FIDELITY_CONVENTION == "sqrt"
        rhos = load_density_fixtures()
        targets = load_output_states()
        for rho, target, published in zip(rhos, targets, PUBLISHED_DENSITY_FIDELITIES):
            fid = density_fidelity(rho, target.amplitudes)
            assert abs(fid.f_sqrt - published) <= 0.01
            # the linear convention is far off; this is what pins the choice
            assert abs(fid.f_linear - published) > 0.02

    def test_published_constants(self):
        assert len(PUBLISHED_F_AVERAGES) == 6
        assert len(PUBLISHED_DENSITY_FIDELITIES) == 4
        assert PUBLISHED_F_AVERAGES[0] == 0.9668
