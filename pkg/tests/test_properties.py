"""Cross-module invariants: unitarity, oracle agreement, composition,
ancilla restoration, truncation bounds, and the K4 period."""
import numpy as np
import pytest

from circwalk.analysis import dense_evolution, state_fidelity
from circwalk.compiler import (
    CompilerOptions,
    compile_ctqw,
    diagonal_circuit_oracle,
    qft_circuit,
)
from circwalk.graph import circulant_from_row, eigenvalue_oracle, standard_graph
from circwalk.simulator import (
    basis_state,
    circuit_unitary,
    output_state,
    probabilities,
    run,
    sample,
    state_from_amplitudes,
)
from circwalk.fixtures import initial_states, k4_graph, time_grid

from conftest import random_symmetric_row


def random_graphs(rng, sizes=(4, 8, 16), per_size=2):
    for n in sizes:
        for _ in range(per_size):
            yield circulant_from_row(
                random_symmetric_row(n, rng), gamma=float(rng.uniform(0.3, 1.8))
            )


class TestUnitarity:
    def test_qft_unitary(self):
        for n in (1, 2, 3, 4):
            u = circuit_unitary(qft_circuit(n))
            assert np.abs(u.conj().T @ u - np.eye(2 ** n)).max() <= 1e-10

    def test_compiled_circuits_unitary(self, rng):
        for g in random_graphs(rng, sizes=(4, 8)):
            t = float(rng.uniform(0, 2 * np.pi))
            for opts in (
                CompilerOptions(strategy="few_eigenvalues"),
                CompilerOptions(strategy="oracle", k_frac=5),
            ):
                u = circuit_unitary(compile_ctqw(g, t, opts))
                dim = u.shape[0]
                assert np.abs(u.conj().T @ u - np.eye(dim)).max() <= 1e-10

    def test_hadamard_complete_unitary(self):
        u = circuit_unitary(compile_ctqw(standard_graph("complete", 8), 1.234))
        assert np.abs(u.conj().T @ u - np.eye(8)).max() <= 1e-10


class TestCompilerEquivalence:
    @pytest.mark.parametrize("n", [4, 8, 16, 32, 64])
    def test_few_eigenvalues_matches_dense(self, n, rng):
        for _ in range(2):
            g = circulant_from_row(random_symmetric_row(n, rng))
            t = float(rng.uniform(0, 2 * np.pi))
            circ = compile_ctqw(g, t, CompilerOptions(strategy="few_eigenvalues"))
            x = int(rng.integers(n))
            out = output_state(circ, basis_state(x, circ.n_data)).amplitudes
            ref = dense_evolution(g, t, basis_state(x, circ.n_data))
            assert state_fidelity(out, ref) >= 1 - 1e-9

    @pytest.mark.parametrize("n", [4, 8, 16])
    def test_oracle_matches_dense(self, n, rng):
        for _ in range(2):
            g = circulant_from_row(random_symmetric_row(n, rng))
            t = float(rng.uniform(0, 2 * np.pi))
            circ = compile_ctqw(g, t, CompilerOptions(strategy="oracle", k_frac=24))
            x = int(rng.integers(n))
            out = output_state(circ, basis_state(x, circ.n_data)).amplitudes
            ref = dense_evolution(g, t, basis_state(x, circ.n_data))
            assert state_fidelity(out, ref) >= 1 - 1e-6

    def test_hadamard_matches_dense(self, rng):
        for n_q in (1, 2, 3):
            g = standard_graph("complete", 2 ** n_q)
            t = float(rng.uniform(0, 2 * np.pi))
            circ = compile_ctqw(g, t)
            out = output_state(circ, basis_state(0, n_q)).amplitudes
            ref = dense_evolution(g, t, basis_state(0, n_q))
            assert state_fidelity(out, ref) >= 1 - 1e-9

    def test_strategy_agreement_within_truncation(self, rng):
        g = circulant_from_row(random_symmetric_row(16, rng))
        t = 1.1
        k_frac = 16
        few = compile_ctqw(g, t, CompilerOptions(strategy="few_eigenvalues"))
        orc = compile_ctqw(g, t, CompilerOptions(strategy="oracle", k_frac=k_frac))
        s = state_from_amplitudes(rng.normal(size=16) + 1j * rng.normal(size=16))
        a = output_state(few, s).amplitudes
        b = output_state(orc, s).amplitudes
        # per-amplitude phase deviation is bounded by the truncation grid
        assert np.abs(a - b).max() <= t * 2.0 ** (-k_frac) + 1e-12


class TestAncillaRestoration:
    def test_every_basis_input_restores_ancilla(self):
        g = standard_graph("cycle", 8)
        circ = compile_ctqw(g, 0.9, CompilerOptions(strategy="oracle", k_frac=6))
        n, k = circ.n_data, circ.n_ancilla
        for x in range(2 ** n):
            full = run(circ, basis_state(x, n))
            block = np.abs(full.amplitudes.reshape(2 ** n, 2 ** k)) ** 2
            assert block[:, 1:].sum() <= 1e-12


class TestPhaseErrorBound:
    @pytest.mark.parametrize("n", [8, 16, 64])
    def test_oracle_diagonal_entrywise(self, n, rng):
        g = circulant_from_row(random_symmetric_row(n, rng))
        t = float(rng.uniform(0.1, 2.0))
        k_frac = 12
        oracle = eigenvalue_oracle(g)
        circ = diagonal_circuit_oracle(oracle, t, CompilerOptions(k_frac=k_frac))
        lams = oracle.evaluate_all()
        n_q = circ.n_data
        for x in range(n):
            amp = output_state(circ, basis_state(x, n_q)).amplitudes[x]
            # phase deviation, not amplitude deviation
            dev = np.angle(amp * np.exp(1j * t * lams[x]))
            assert abs(dev) <= t * 2.0 ** (-k_frac) + 1e-12


class TestComposition:
    def test_two_steps_equal_one(self, rng):
        for g in random_graphs(rng, sizes=(8, 16), per_size=1):
            t1, t2 = rng.uniform(0, np.pi, 2)
            c1 = compile_ctqw(g, float(t1))
            c2 = compile_ctqw(g, float(t2))
            c12 = compile_ctqw(g, float(t1 + t2))
            s = basis_state(1, c1.n_data)
            step = output_state(c2, output_state(c1, s))
            direct = output_state(c12, s)
            assert state_fidelity(step.amplitudes, direct.amplitudes) >= 1 - 1e-9


class TestK4Periodicity:
    def test_distributions_repeat_every_half_pi(self):
        g = k4_graph()
        for ini in initial_states():
            s = state_from_amplitudes(ini)
            for t in time_grid()[:5]:
                p1 = probabilities(
                    output_state(compile_ctqw(g, float(t)), s), 2
                ).probabilities
                p2 = probabilities(
                    output_state(compile_ctqw(g, float(t) + np.pi / 2), s), 2
                ).probabilities
                assert np.abs(p1 - p2).max() <= 1e-9


class TestDeterminism:
    def test_identical_triples_bit_identical(self):
        g = k4_graph()
        circ = compile_ctqw(g, np.pi / 8)
        dist = probabilities(output_state(circ, basis_state(0, 2)), 2)
        a = sample(dist, 5000, seed=99)
        b = sample(dist, 5000, seed=99)
        assert a.counts == b.counts and a == b
